use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{d} is too large for this toolkit")]
    FieldTooLarge { p: u64, d: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("invalid field spec {0:?}")]
    InvalidFieldSpec(String),
    #[error("element code {code} is out of range for a field of order {q}")]
    ElementOutOfRange { code: u32, q: u32 },
    #[error("automorphism exponent {exponent} is out of range for degree {degree}")]
    AutomorphismOutOfRange { exponent: u32, degree: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("the last {0} basis vectors do not lie in the subspace")]
    FrozenTailViolated(usize),
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("rank profile (r={r}, s={s}) is out of range for g={g}")]
    ProfileOutOfRange { r: usize, s: usize, g: usize },
    #[error("tuple does not lie in any X(r,s)")]
    NotInX,
    #[error("enumeration of {count} maps exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("count routes disagree at (r={r}, s={s}): {left} vs {right}")]
    RouteMismatch { r: usize, s: usize, left: String, right: String },
    #[error("rational evaluation at (r={r}, s={s}) is not an integer")]
    NonIntegral { r: usize, s: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
