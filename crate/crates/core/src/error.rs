use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {p}^{r} exceeds the supported word size")]
    FieldTooLarge { p: u64, r: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("constant polynomial where a non-constant one is required")]
    ConstantPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("{n} does not divide {q} - 1: no primitive {n}-th root of unity")]
    NoRootsOfUnity { n: u64, q: u64 },
    #[error("arguments are not coprime: {0}")]
    NotCoprime(String),
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("element is not in the ambient group: {0}")]
    NotInGroup(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("divisor meets the support of the λ-torsion set")]
    DivisorMeetsRoots,
    #[error("search exhausted: {0}")]
    Exhausted(String),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
}
