use clap::{Args, Parser, Subcommand, ValueEnum};

use palword::cli::{self, CliOutcome, Command, InputSource, OutputFormat, RunConfig};

/// Palindromic analysis of substitutive words: richness, defect, return
/// words, morphism classification and class P decompositions.
#[derive(Parser)]
#[command(name = "palword", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// One way of naming a morphic word: an inline morphism literal, a file
/// holding one, or a bundled example.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpecSource {
    /// Substitution literal, e.g. "a->ac;b->acab;c->ab".
    #[arg(long)]
    spec: Option<String>,
    /// File containing a substitution literal.
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    /// Name of a bundled example (see `palword examples`).
    #[arg(long)]
    example: Option<String>,
}

impl SpecSource {
    fn into_input(self) -> InputSource {
        if let Some(s) = self.spec {
            InputSource::Literal(s)
        } else if let Some(f) = self.file {
            InputSource::File(f)
        } else {
            InputSource::Example(self.example.unwrap())
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Palindrome count, defect and richness of a word or generated prefix.
    Analyze {
        /// Word literal ("aababbab") or substitution literal (with --seed).
        #[arg(group = "input")]
        literal: Option<String>,
        #[arg(long, group = "input")]
        file: Option<std::path::PathBuf>,
        #[arg(long, group = "input")]
        example: Option<String>,
        /// Seed letter when the input is a substitution.
        #[arg(long)]
        seed: Option<char>,
        /// Outer morphism literal applied to the fixed point.
        #[arg(long)]
        outer: Option<String>,
        /// Prefix length to inspect for substitution inputs.
        #[arg(short = 'n', long = "length", default_value_t = cli::DEFAULT_PREFIX_LENGTH)]
        n: usize,
    },
    /// Classify a morphism into P, extended P, P_ret and P'.
    Classify {
        /// Morphism literal, e.g. "0->0;1->01".
        #[arg(group = "input")]
        literal: Option<String>,
        #[arg(long, group = "input")]
        file: Option<std::path::PathBuf>,
        /// Conjugator/marker search bound; defaults to the total image length.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Return words and derived word of a morphic word at a prefix.
    Derive {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long)]
        seed: Option<char>,
        #[arg(long)]
        outer: Option<String>,
        /// Prefix to derive at (word literal); defaults to the first letter.
        #[arg(long)]
        at: Option<String>,
        /// Length of the derived prefix to emit.
        #[arg(short = 'n', long = "length", default_value_t = cli::DEFAULT_PREFIX_LENGTH)]
        n: usize,
    },
    /// Decompose a morphic word as y = g(x) with x fixed by a P' substitution.
    Decompose {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long)]
        seed: Option<char>,
        #[arg(long)]
        outer: Option<String>,
        /// Maximum derivation depth.
        #[arg(long, default_value_t = cli::DEFAULT_DEPTH)]
        depth: usize,
        /// Prefix length at which derived words are compared.
        #[arg(long, default_value_t = cli::DEFAULT_CMP_LEN)]
        cmp_len: usize,
        /// Route through the finite-defect reduction instead of requiring
        /// richness.
        #[arg(long)]
        finite_defect: bool,
        /// Palindromic-prefix search bound for the finite-defect route.
        #[arg(long, default_value_t = cli::DEFAULT_MARKER_BOUND)]
        marker_bound: usize,
        /// Also re-verify the certificate at this prefix length.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Generate a fixed-point (or morphic image) prefix.
    Generate {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long)]
        seed: Option<char>,
        #[arg(long)]
        outer: Option<String>,
        #[arg(short = 'n', long = "length", default_value_t = cli::DEFAULT_PREFIX_LENGTH)]
        n: usize,
    },
    /// List the bundled example specs.
    Examples,
}

fn pick_input(
    literal: Option<String>,
    file: Option<std::path::PathBuf>,
    example: Option<String>,
) -> Option<InputSource> {
    literal
        .map(InputSource::Literal)
        .or(file.map(InputSource::File))
        .or(example.map(InputSource::Example))
}

fn main() {
    let cli = Cli::parse();
    let format = match cli.format {
        Format::Json => OutputFormat::Json,
        Format::Text => OutputFormat::Text,
    };
    let mut config = match cli.command {
        Cmd::Analyze {
            literal,
            file,
            example,
            seed,
            outer,
            n,
        } => {
            let mut c = RunConfig::new(Command::Analyze);
            c.input = pick_input(literal, file, example);
            c.seed = seed;
            c.outer = outer;
            c.prefix_length = n;
            c
        }
        Cmd::Classify {
            literal,
            file,
            bound,
        } => {
            let mut c = RunConfig::new(Command::Classify);
            c.input = pick_input(literal, file, None);
            c.conjugator_bound = bound;
            c
        }
        Cmd::Derive {
            source,
            seed,
            outer,
            at,
            n,
        } => {
            let mut c = RunConfig::new(Command::Derive);
            c.input = Some(source.into_input());
            c.seed = seed;
            c.outer = outer;
            c.at = at;
            c.prefix_length = n;
            c
        }
        Cmd::Decompose {
            source,
            seed,
            outer,
            depth,
            cmp_len,
            finite_defect,
            marker_bound,
            verify,
        } => {
            let mut c = RunConfig::new(Command::Decompose);
            c.input = Some(source.into_input());
            c.seed = seed;
            c.outer = outer;
            c.depth = depth;
            c.cmp_len = cmp_len;
            c.finite_defect = finite_defect;
            c.marker_bound = marker_bound;
            c.verify_length = verify;
            c
        }
        Cmd::Generate {
            source,
            seed,
            outer,
            n,
        } => {
            let mut c = RunConfig::new(Command::Generate);
            c.input = Some(source.into_input());
            c.seed = seed;
            c.outer = outer;
            c.prefix_length = n;
            c
        }
        Cmd::Examples => RunConfig::new(Command::Examples),
    };
    config.format = format;
    let CliOutcome { exit_code, output } = cli::run(&config);
    println!("{output}");
    std::process::exit(exit_code);
}
