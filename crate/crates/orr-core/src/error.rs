use thiserror::Error;

/// Errors surfaced by group construction, search, and verification.
#[derive(Debug, Error)]
pub enum OrrError {
    /// The input table or permutation set fails a group axiom.
    #[error("not a group: {0}")]
    NotAGroup(String),
    /// Closing the input would exceed the configured order bound.
    #[error("group order exceeds the configured bound of {bound} elements")]
    ClosureTooLarge { bound: usize },
    /// A set that was required to generate the whole group does not.
    #[error("set does not generate the group")]
    NotGenerating,
    /// A search ran out of its node or candidate budget.
    #[error("search budget of {budget} {unit} exhausted")]
    BudgetExhausted { budget: u64, unit: &'static str },
    /// Connection sets may never contain the identity.
    #[error("identity element in connection set")]
    IdentityInSet,
    /// A routine was handed a group of the wrong minimum generating size.
    #[error("expected minimum generating size {expected}, found {found}")]
    WrongRank { expected: usize, found: usize },
    /// Chain-based construction needs a minimum chain length.
    #[error("chain has {found} elements, need at least {need}")]
    ChainTooShort { found: usize, need: usize },
    /// A construction whose success is guaranteed failed its check; a bug.
    #[error("construction failed verification: {0}")]
    VerificationFailed(String),
    /// Two objects that must agree on group order do not.
    #[error("order mismatch: {0}")]
    OrderMismatch(String),
    /// A connection set is malformed (duplicates, out-of-range indices).
    #[error("bad connection set: {0}")]
    BadSet(String),
    /// Input file or JSON structure is malformed.
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, OrrError>;
