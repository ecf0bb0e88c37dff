use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Variants are grouped by the layer that raises them; the CLI maps them onto
/// exit codes (see `Error::exit_code`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // finite fields
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is not irreducible (or not monic of degree {degree}) over GF({p})")]
    ReducibleModulus { p: u32, degree: u32 },
    #[error("no built-in modulus for GF({p}^{k}); supply one explicitly")]
    NoBuiltinModulus { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    MixedContexts,
    #[error("invalid field element encoding: {0}")]
    BadElement(String),

    // linear algebra
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,

    // polynomials
    #[error("bad degree: {0}")]
    BadDegree(String),

    // groups
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("group order exceeds the cap of {0}")]
    OrderCapExceeded(usize),
    #[error("parameter set is not an additive subgroup")]
    NotAdditivelyClosed,
    #[error("family not defined in characteristic {0}")]
    BadCharacteristic(u32),

    // modules and cohomology
    #[error("modules are defined over different groups")]
    GroupMismatch,
    #[error("subspace is not invariant under the group action")]
    NotSubmodule,
    #[error("values do not satisfy the cocycle identity (first failure at pair {0}, {1})")]
    NotACocycle(usize, usize),
    #[error("bad projection: {0}")]
    BadProjection(String),
    #[error("map does not intertwine the actions (generator {0})")]
    NotEquivariant(usize),
    #[error("vector is not fixed by the group (generator {0})")]
    NotFixed(usize),

    // pipeline
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),
    #[error("internal consistency violation: {0}")]
    TheoremViolation(String),
    #[error("witness not found: {0}")]
    WitnessNotFound(String),

    // input and certificates
    #[error("i/o error: {0}")]
    Io(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("corrupt report: {0}")]
    CorruptReport(String),
    #[error("failed check: {0}")]
    FailedCheck(String),
}

impl Error {
    /// Process exit code: 0 ok, 1 usage/input, 2 hypothesis, 3 internal
    /// consistency violation, 4 failed certificate check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::HypothesisNotSatisfied(_) => 2,
            Error::TheoremViolation(_) | Error::WitnessNotFound(_) => 3,
            Error::FailedCheck(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
