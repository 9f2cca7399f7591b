use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: item `{code}` appears more than once in the transaction")]
    DuplicateItemInTransaction { line: usize, code: String },

    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("line {line}: respondent `{id}` already seen")]
    DuplicateRespondent { line: usize, id: String },

    #[error("invalid item code `{0}`")]
    InvalidItemCode(String),

    #[error("item `{0}` is not in the item universe")]
    UnknownItem(String),

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("invalid itemset: {0}")]
    InvalidItemset(String),

    #[error("database has no transactions")]
    EmptyDatabase,

    #[error("confidence of {0} is undefined: the antecedent never occurs")]
    UndefinedConfidence(String),

    #[error("cosine is undefined: itemset {0} never occurs")]
    UndefinedCosine(String),

    #[error("lift of {0} is undefined: an itemset never occurs")]
    UndefinedLift(String),

    #[error("unknown measure `{0}` (expected one of support, confidence, cosine, lift)")]
    UnknownMeasure(String),

    #[error("invalid threshold `{0}`: expected a decimal fraction in [0, 1]")]
    InvalidThreshold(String),

    #[error("value {0} is outside [0, 1]")]
    OutOfRange(f64),

    #[error("format `{0}` is not supported here")]
    UnsupportedFormat(String),

    #[error("invalid synthetic spec: {0}")]
    InvalidSpec(String),

    #[error("universe has {0} items; brute-force enumeration is limited to 20")]
    UniverseTooLarge(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
