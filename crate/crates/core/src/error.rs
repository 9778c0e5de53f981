use crate::field::FieldError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("polynomials live in different variable spaces ({0} vs {1})")]
    SpaceMismatch(String, String),
    #[error("polynomial is not homogeneous for the {0} grading")]
    NotHomogeneous(&'static str),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisorZero,
    #[error("gcd of two zero forms is undefined")]
    BothZero,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: i64, got: i64 },
    #[error("input forms share the common factor {0}")]
    CommonFactor(String),
    #[error("input forms are linearly dependent")]
    LinearlyDependent,
    #[error("degree {0} is too small (need d >= 2)")]
    DegreeTooSmall(u32),
    #[error("the syzygy triple has the common factor {0}")]
    CommonFactorInP(String),
    #[error("alpha*A + beta*B does not reproduce f")]
    DecompositionMismatch,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("no instance with d={d}, mu1={mu1}, mu2={mu2} after {attempts} attempts")]
    GenerationFailed { d: u32, mu1: u32, mu2: u32, attempts: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("polynomial of bidegree ({0},{1}) is not in the ideal of the p-components")]
    NotInPIdeal(i64, i64),
    #[error("polynomial of bidegree ({0},{1}) is not in the ideal generated by b1.A and b2.A")]
    NotInPAIdeal(i64, i64),
    #[error("S-polynomial of pair ({0},{1}) has nonzero normal form")]
    SPairNonzero(usize, usize),
    #[error("lift congruence failed for member (a,b)=({0},{1})")]
    CongruenceFailed(u32, u32),
    #[error("oracle budget exceeded: {needed} entries needed, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
