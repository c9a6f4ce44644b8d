use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("pattern pair {pair} is not supported by {operation}")]
    UnsupportedPair { pair: String, operation: &'static str },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("{input} is outside the domain of {operation}")]
    Domain { input: String, operation: &'static str },

    #[error("auxiliary degree {degree} at x^{order} exceeds the guard {limit}")]
    GuardOverflow { order: usize, degree: u32, limit: u32 },

    #[error("leading coefficient {0} is not the constant 1")]
    NonUnitLead(String),

    #[error("substituted x-series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("exact division failed at x^{order}: {detail}")]
    InexactDivision { order: usize, detail: String },

    #[error("series use different variable bindings ({0} vs {1})")]
    BindingMismatch(String, String),

    #[error("unknown closed form `{0}`")]
    UnknownForm(String),

    #[error("unknown verification case `{0}`")]
    UnknownCase(String),

    #[error("cannot parse polynomial `{input}`: {reason}")]
    PolyParse { input: String, reason: String },

    #[error("closed-form data: {0}")]
    FormData(String),
}
