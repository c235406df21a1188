use thiserror::Error;

/// Everything that can go wrong inside the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("arity mismatch: expected {expected} variables, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("colon by the zero ideal is undefined")]
    ColonByZero,

    #[error("ideal is not m-primary: no pure power of {variable}")]
    NotPrimary { variable: String },

    #[error("quotient has infinite length: component {component} is not m-primary after adding the ideal")]
    InfiniteLength { component: usize },

    #[error("the unit ideal is not allowed here")]
    UnitIdeal,

    #[error("module presentation needs at least one component")]
    NoComponents,

    #[error("component index {index} out of range (module has {len} components)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("staircase box of {cells} cells exceeds the budget of {limit}")]
    BoxTooLarge { cells: u128, limit: u128 },

    #[error("invalid ambient ring: {0}")]
    InvalidRing(String),

    #[error("growth table not stabilized: {0}")]
    NotStabilized(String),

    #[error("degree exceeded: {0}")]
    DegreeExceeded(String),

    #[error("growth table has {len} entries, needs at least {needed}")]
    TableTooShort { len: usize, needed: usize },

    #[error("no Artin-Rees exponent k <= {k_max} found")]
    NotFoundWithinBound { k_max: usize },

    #[error("not a parameter ideal: {0}")]
    NotParameterIdeal(String),
}

impl AlgebraError {
    /// True for errors that signal an exhausted search or sampling budget.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            AlgebraError::NotStabilized(_)
                | AlgebraError::NotFoundWithinBound { .. }
                | AlgebraError::BoxTooLarge { .. }
                | AlgebraError::TableTooShort { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
