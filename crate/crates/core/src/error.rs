use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// An exhaustive search failed where a theorem guarantees success.
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
    /// A graph or coloring file did not match its schema.
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Schema violations found while loading graph or coloring JSON.
///
/// Each variant carries a stable code (see [`FormatError::code`]) so scripts can
/// tell the failures apart without parsing messages.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("[{code}] malformed JSON: {0}", code = "E_SYNTAX")]
    Syntax(String),
    #[error("[{code}] {0} vertices exceeds the cap of {max}", code = "E_TOO_LARGE", max = crate::graphs::MAX_VERTICES)]
    TooLarge(usize),
    #[error("[{code}] invalid vertex pair ({0}, {1}) for n = {2}", code = "E_BAD_PAIR")]
    BadPair(usize, usize, usize),
    #[error("[{code}] pair ({0}, {1}) listed more than once", code = "E_DUPLICATE_PAIR")]
    DuplicatePair(usize, usize),
    #[error("[{code}] pair ({0}, {1}) has no color", code = "E_MISSING_PAIR")]
    MissingPair(usize, usize),
    #[error("[{code}] color ids must be exactly 1..={max}; {missing} never appears", code = "E_GAPPED_COLORS")]
    GappedColors { max: u32, missing: u32 },
}

impl FormatError {
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Syntax(_) => "E_SYNTAX",
            FormatError::TooLarge(_) => "E_TOO_LARGE",
            FormatError::BadPair(..) => "E_BAD_PAIR",
            FormatError::DuplicatePair(..) => "E_DUPLICATE_PAIR",
            FormatError::MissingPair(..) => "E_MISSING_PAIR",
            FormatError::GappedColors { .. } => "E_GAPPED_COLORS",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
