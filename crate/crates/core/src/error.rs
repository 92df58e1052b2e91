use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is too large (primes must be below 2^32)")]
    PrimeTooLarge(u64),

    #[error("precision {precision} outside the supported range 1..={max}")]
    InvalidPrecision { precision: u32, max: u32 },

    #[error("cannot reduce to precision {requested}: value only known to {available} digits")]
    PrecisionOutOfRange { requested: u32, available: u32 },

    #[error("operands live over different primes ({left} and {right})")]
    PrimeMismatch { left: u64, right: u64 },

    #[error("operands have different precisions ({left} and {right})")]
    PrecisionMismatch { left: u32, right: u32 },

    #[error("{value} is divisible by {prime}, so it has no inverse")]
    NotAUnit { value: String, prime: u64 },

    #[error("constant term is divisible by {prime}: 0 is a fixed point mod {prime}")]
    ConstantTermNotUnit { prime: u64 },

    #[error("polynomial must have degree at least 1")]
    DegeneratePolynomial,

    #[error("cannot parse coefficients: {0}")]
    Parse(String),

    #[error("{prime}^{level} residues exceed the table bound of {bound}")]
    TableBoundExceeded { prime: u64, level: u32, bound: u64 },

    #[error("base point is not fixed by f^(p^{level}) modulo p^{level}")]
    NotPeriodic { level: u32 },

    #[error("reduced map has no full cycle at level {level}")]
    NotFullCycle { level: u32 },

    #[error("this decider requires p = {expected}, got p = {found}")]
    WrongPrime { expected: u64, found: u64 },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("inconsistent results: {0}")]
    Inconsistent(String),

    #[error("work budget exceeded: {requested} checks requested, budget is {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
