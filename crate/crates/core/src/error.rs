use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two morphisms or cells do not share the boundary an operation needs.
    #[error("boundary mismatch: {0}")]
    Boundary(String),

    #[error("label `{label}` is not a member of {context}")]
    UnknownLabel { label: String, context: String },

    #[error("malformed label `{0}`")]
    InvalidLabel(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("enumeration of {what} would produce {count} items (cap {cap})")]
    ResourceCap { what: String, count: u128, cap: usize },

    /// A construction that must succeed by a structural invariant did not.
    #[error("internal consistency violated: {0}")]
    Internal(String),

    #[error("base category lacks a required capability: {0}")]
    Capability(String),

    #[error("unsupported on this base: {0}")]
    Unsupported(String),

    #[error("invalid finite category: {0}")]
    InvalidCategory(String),

    #[error("encoding produced an unlawful monad: {0}")]
    Encoding(String),
}

impl Error {
    pub(crate) fn boundary(msg: impl Into<String>) -> Self {
        Error::Boundary(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
