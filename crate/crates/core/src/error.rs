use thiserror::Error;

/// Errors surfaced by the word, morphism and decomposition machinery.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("letter {letter} out of range for alphabet of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },

    #[error("occurrence counting requires a nonempty pattern")]
    EmptyPattern,

    #[error("oracle cap exceeded: word length {len} > cap {cap}")]
    OracleCapExceeded { len: usize, cap: usize },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("not an endomorphism: domain and codomain differ")]
    NotEndomorphism,

    #[error("morphism is not prolongable at letter '{letter}'")]
    NotProlongable { letter: String },

    #[error("substitution is not primitive")]
    NotPrimitive,

    #[error("invalid conjugator '{conjugator}': {reason}")]
    InvalidConjugator { conjugator: String, reason: String },

    #[error("'{u}' is not a prefix of the inspected word")]
    NotAPrefix { u: String },

    #[error(
        "return structure did not stabilize below the cap (last inspected prefix length: {n})"
    )]
    StabilityNotReached { n: usize },

    #[error("source cap exceeded while growing level {level} to {requested} letters")]
    PrefixCapExceeded { level: usize, requested: usize },

    #[error("return words at level {level} changed under prefix extension")]
    UnstableReturns { level: usize },

    #[error("no repetition among iterated derived words within depth {depth}")]
    DepthExhausted { depth: usize },

    #[error("input fails the richness check: complete first return '{complete_return}' to '{factor}' is not a palindrome")]
    NotRichInput {
        factor: String,
        complete_return: String,
    },

    #[error("derived word failed the richness check at prefix scale")]
    DerivedNotRich,

    #[error("defect has not stabilized: {at_half} at length {half} vs {at_full} at length {full}")]
    DefectNotStabilized {
        half: usize,
        at_half: usize,
        full: usize,
        at_full: usize,
    },

    #[error("no palindromic prefix up to length {bound} qualifies")]
    NoQualifyingPrefix { bound: usize },

    #[error("prefix verification failed: {0}")]
    PrefixMismatch(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown example '{0}'")]
    UnknownExample(String),

    #[error("{0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn parse_at(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Parse errors map to exit code 2 in the CLI; everything else is a domain error.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
