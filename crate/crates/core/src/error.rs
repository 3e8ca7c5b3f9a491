use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
    #[error("root moduli could not be separated from 1 within {bits} bits of precision")]
    EscalationCapExceeded { bits: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("inconsistent seeds: the equation forces a different value at coefficient index {index}")]
    InconsistentSeeds { index: usize },
    #[error("underdetermined seeds: {required} initial coefficients are required, {given} given")]
    UnderdeterminedSeeds { required: usize, given: usize },
    #[error("all equation coefficients are zero")]
    AllZero,
    #[error("the series is identically zero")]
    ZeroSeries,
    #[error("no relation found up to order {order} and degree {degree}")]
    NoRelation { order: usize, degree: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unknown zoo entry {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Equation(#[from] EquationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinrepError {
    #[error("radix mismatch: {0} vs {1}")]
    RadixMismatch(u64, u64),
    #[error("equation is not in Becker form (p0 must be 1)")]
    MalformedBecker,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("exact division check failed: {0}")]
    DivisionCheckFailed(String),
    #[error("orbit closure exceeded {cap} states")]
    OrbitNotFinite { cap: usize },
    #[error("malformed representation: {0}")]
    Malformed(String),
    #[error(transparent)]
    Equation(#[from] EquationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("too few terms: {given} given, at least {required} required")]
    TooFewTerms { given: usize, required: usize },
    #[error(transparent)]
    Linrep(#[from] LinrepError),
    #[error(transparent)]
    Equation(#[from] EquationError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
