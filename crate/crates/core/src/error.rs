use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("{what} exceeds the configured cap: {requested} > {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    #[error("distribution is not constant on conjugacy classes")]
    NotClassInvariant,

    #[error("element list is not a subgroup (not closed or missing identity/inverses)")]
    NotASubgroup,

    #[error("multiplicity average is not an integer (character bug?): {0}")]
    NonIntegralMultiplicity(f64),

    #[error("estimation plan infeasible: {0}")]
    InvalidPlan(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for `Error::Invalid` with a formatted reason.
    pub fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            why: why.into(),
        }
    }
}
