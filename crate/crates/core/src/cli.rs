//! Command dispatch behind the `palword` binary. Parsing of process
//! arguments lives in the binary; everything here is plain data in, exit
//! code and serialized output out, which keeps the whole surface testable.

use std::path::PathBuf;

use serde_json::{json, Value};

use crate::corpus;
use crate::decompose::{decompose_finite_defect, decompose_rich, verify_certificate};
use crate::derived::{first_returns, MorphicWordSpec, DEFAULT_STABILITY_SEED};
use crate::error::{Error, Result};
use crate::morphisms::Morphism;
use crate::palindromes::{
    defect, eertree_count, richness_check_returns, richness_check_word, RichnessReport,
};
use crate::words::Word;

pub const DEFAULT_PREFIX_LENGTH: usize = 4096;
pub const DEFAULT_CMP_LEN: usize = 4096;
pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_MARKER_BOUND: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone)]
pub enum InputSource {
    Literal(String),
    File(PathBuf),
    Example(String),
}

impl InputSource {
    fn resolve_literal(&self) -> Result<String> {
        match self {
            InputSource::Literal(s) => Ok(s.clone()),
            InputSource::File(path) => std::fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display()))),
            InputSource::Example(_) => Err(Error::InvalidInput(
                "example names do not resolve to a literal".into(),
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Command {
    /// Palindrome counting, defect and richness for a finite word or a
    /// generated prefix.
    Analyze,
    /// Class P / extended P / P_ret / P' classification of a morphism.
    Classify,
    /// Return words and the derived word at a prefix.
    Derive,
    /// Full decomposition certificate.
    Decompose,
    /// Fixed-point prefix generation.
    Generate,
    /// List the bundled example specs.
    Examples,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<InputSource>,
    pub seed: Option<char>,
    pub outer: Option<String>,
    /// Prefix literal for `derive`; defaults to the first letter.
    pub at: Option<String>,
    pub prefix_length: usize,
    pub conjugator_bound: Option<usize>,
    pub marker_bound: usize,
    pub cmp_len: usize,
    pub depth: usize,
    /// Route `decompose` through the finite-defect reduction.
    pub finite_defect: bool,
    /// Re-verify the emitted certificate at this length.
    pub verify_length: Option<usize>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            seed: None,
            outer: None,
            at: None,
            prefix_length: DEFAULT_PREFIX_LENGTH,
            conjugator_bound: None,
            marker_bound: DEFAULT_MARKER_BOUND,
            cmp_len: DEFAULT_CMP_LEN,
            depth: DEFAULT_DEPTH,
            finite_defect: false,
            verify_length: None,
            format: OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliOutcome {
    pub exit_code: i32,
    pub output: String,
}

/// Dispatches a parsed configuration. Exit code 0 on success, 1 on domain
/// errors, 2 on parse errors.
pub fn run(config: &RunConfig) -> CliOutcome {
    match execute(config) {
        Ok(value) => CliOutcome {
            exit_code: 0,
            output: render(config, &value),
        },
        Err(e) => {
            let code = if e.is_parse() { 2 } else { 1 };
            let value = error_value(&e, matches!(config.command, Command::Decompose));
            CliOutcome {
                exit_code: code,
                output: render(config, &value),
            }
        }
    }
}

fn error_value(e: &Error, decompose: bool) -> Value {
    let mut obj = json!({ "error": e.to_string() });
    if let Error::Parse { line, column, .. } = e {
        obj["line"] = json!(line);
        obj["column"] = json!(column);
    }
    if decompose && !e.is_parse() {
        obj["status"] = json!("failed");
        obj["reason"] = json!(e.to_string());
    }
    obj
}

fn render(config: &RunConfig, value: &Value) -> String {
    match config.format {
        OutputFormat::Json => serde_json::to_string_pretty(value).unwrap(),
        OutputFormat::Text => render_text(value),
    }
}

fn render_text(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, v, out);
                }
            }
            Value::Array(items) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), v, out);
                }
            }
            other => {
                let shown = match other {
                    Value::String(s) => s.clone(),
                    v => v.to_string(),
                };
                out.push_str(&format!("{prefix}: {shown}\n"));
            }
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

fn execute(config: &RunConfig) -> Result<Value> {
    match config.command {
        Command::Analyze => analyze(config),
        Command::Classify => classify(config),
        Command::Derive => derive(config),
        Command::Decompose => decompose(config),
        Command::Generate => generate(config),
        Command::Examples => examples(),
    }
}

fn required_input(config: &RunConfig) -> Result<&InputSource> {
    config
        .input
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("an input is required".into()))
}

/// Builds a spec from the configured input: a bundled example or a morphism
/// literal plus seed (plus optional outer morphism).
fn spec_input(config: &RunConfig) -> Result<MorphicWordSpec> {
    match required_input(config)? {
        InputSource::Example(name) => corpus::load(name),
        other => {
            let literal = other.resolve_literal()?;
            let inner = Morphism::parse(&literal)?;
            let seed_char = config
                .seed
                .ok_or_else(|| Error::InvalidInput("--seed is required with --spec".into()))?;
            let seed = inner.domain().letter_named(seed_char).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "seed '{seed_char}' is not a letter of the alphabet"
                ))
            })?;
            let outer = config.outer.as_deref().map(Morphism::parse).transpose()?;
            MorphicWordSpec::new(inner, seed, outer)
        }
    }
}

fn richness_json(report: &RichnessReport) -> (bool, Value) {
    let rich = report.is_rich();
    let witness = report
        .witness
        .as_ref()
        .map(|v| {
            json!({
                "factor": v.factor.to_string(),
                "complete_return": v.complete_return.to_string(),
            })
        })
        .unwrap_or(Value::Null);
    (rich, witness)
}

fn analyze(config: &RunConfig) -> Result<Value> {
    // word literals analyze directly; morphism literals and examples are
    // specs whose length-n prefix is analyzed
    let is_spec = match required_input(config)? {
        InputSource::Example(_) => true,
        other => other.resolve_literal()?.contains("->"),
    };
    let (word, report) = if is_spec {
        let spec = spec_input(config)?;
        let report = richness_check_returns(&spec, config.prefix_length);
        (spec.generate_prefix(config.prefix_length), report)
    } else {
        let literal = required_input(config)?.resolve_literal()?;
        let word = Word::parse_infer(&literal)?;
        let report = richness_check_word(&word);
        (word, report)
    };
    let counts = eertree_count(&word);
    let (rich, witness) = richness_json(&report);
    Ok(json!({
        "length": word.len(),
        "pal_count": counts.last().copied().unwrap_or(1),
        "defect": defect(&word),
        "rich_up_to_length": rich,
        "witness": witness,
    }))
}

fn classify(config: &RunConfig) -> Result<Value> {
    let literal = required_input(config)?.resolve_literal()?;
    let morphism = Morphism::parse(&literal)?;
    let bound = config
        .conjugator_bound
        .unwrap_or_else(|| morphism.total_image_len());
    let result = morphism.classify(bound);
    Ok(serde_json::to_value(&result).unwrap())
}

fn derive(config: &RunConfig) -> Result<Value> {
    let spec = spec_input(config)?;
    let at = match &config.at {
        Some(literal) => Word::parse(spec.alphabet(), literal)?,
        None => spec.generate_prefix(1),
    };
    let structure = first_returns(&spec, &at, DEFAULT_STABILITY_SEED)?;
    let f_u = structure.morphism();
    // extend the derived prefix to the requested length
    let chain = crate::derived::DerivationChain::with_root(&spec, &at)?;
    let derived_prefix = chain.level_prefix(0, config.prefix_length)?;
    let rules: serde_json::Map<String, Value> = (0..f_u.domain().size())
        .map(|a| {
            (
                f_u.domain().name(a),
                Value::String(f_u.image(a).to_string()),
            )
        })
        .collect();
    Ok(json!({
        "prefix_u": structure.u.to_string(),
        "returns": structure.returns.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "derived_prefix": derived_prefix.to_string(),
        "f_u": rules,
        "stability": { "n1": structure.stability.n1, "n2": structure.stability.n2 },
    }))
}

fn decompose(config: &RunConfig) -> Result<Value> {
    let spec = spec_input(config)?;
    let cert = if config.finite_defect {
        decompose_finite_defect(&spec, config.depth, config.cmp_len, config.marker_bound)?
    } else {
        decompose_rich(&spec, config.depth, config.cmp_len)?
    };
    let mut value = cert.to_json();
    if let Some(len) = config.verify_length {
        value["verify"] = verify_certificate(&cert, len).to_json();
    }
    Ok(value)
}

fn generate(config: &RunConfig) -> Result<Value> {
    let spec = spec_input(config)?;
    let prefix = spec.generate_prefix(config.prefix_length);
    Ok(json!({
        "length": prefix.len(),
        "prefix": prefix.to_string(),
    }))
}

fn examples() -> Result<Value> {
    let list: Vec<Value> = corpus::entries()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "inner": e.inner,
                "seed": e.seed.to_string(),
                "outer": e.outer,
                "description": e.description,
            })
        })
        .collect();
    Ok(Value::Array(list))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_example() {
        let mut config = RunConfig::new(Command::Classify);
        config.input = Some(InputSource::Literal("0->0;1->01".into()));
        let outcome = run(&config);
        assert_eq!(outcome.exit_code, 0);
        let v: Value = serde_json::from_str(&outcome.output).unwrap();
        assert_eq!(v["in_p"], json!(true));
        assert_eq!(v["p_ret_marker"], json!("0"));
        assert_eq!(v["in_p_prime"], json!("yes"));
    }

    #[test]
    fn generate_example() {
        let mut config = RunConfig::new(Command::Generate);
        config.input = Some(InputSource::Literal("a->ac;b->acab;c->ab".into()));
        config.seed = Some('a');
        config.prefix_length = 26;
        let outcome = run(&config);
        assert_eq!(outcome.exit_code, 0);
        let v: Value = serde_json::from_str(&outcome.output).unwrap();
        assert_eq!(v["prefix"], json!("acabacacabacabacabacacabac"));
    }

    #[test]
    fn parse_errors_exit_2() {
        let mut config = RunConfig::new(Command::Classify);
        config.input = Some(InputSource::Literal("a->".into()));
        let outcome = run(&config);
        assert_eq!(outcome.exit_code, 2);
        let v: Value = serde_json::from_str(&outcome.output).unwrap();
        assert!(v["error"].as_str().unwrap().contains("parse error"));
        assert!(v["column"].is_number());
    }

    #[test]
    fn domain_errors_exit_1() {
        let mut config = RunConfig::new(Command::Generate);
        config.input = Some(InputSource::Literal("0->0;1->1".into()));
        config.seed = Some('0');
        let outcome = run(&config);
        assert_eq!(outcome.exit_code, 1);
    }

    #[test]
    fn decompose_failure_reports_status() {
        let mut config = RunConfig::new(Command::Decompose);
        config.input = Some(InputSource::Example("thue-morse".into()));
        config.cmp_len = 512;
        let outcome = run(&config);
        assert_eq!(outcome.exit_code, 1);
        let v: Value = serde_json::from_str(&outcome.output).unwrap();
        assert_eq!(v["status"], json!("failed"));
        assert!(v["reason"].as_str().is_some());
    }
}
