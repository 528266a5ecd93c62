use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("not a faithful order-p parameterization: gcd({p}, {q1}, {q2}) = {gcd}")]
    NotFaithful { p: u64, q1: u64, q2: u64, gcd: u64 },

    #[error("not in support: ({r}, {s}) with r*q1 + s*q2 not divisible by p or r + s outside 1..=p")]
    NotInSupport { r: u64, s: u64 },

    #[error("unsupported parameters for this operation: {0}")]
    Unsupported(String),

    #[error("non-constant residue for monomial x^{r} y^{s}")]
    NonConstantResidue { r: u64, s: u64 },

    #[error("insufficient primes: needed a modulus above {needed_bits} bits, pool of {pool} exhausted")]
    InsufficientPrimes { needed_bits: u64, pool: usize },

    #[error("size guard: {what} limited to p <= {max}, got p = {p}")]
    SizeGuard { what: &'static str, p: u64, max: u64 },

    #[error("lemma violation: {0}")]
    LemmaViolation(String),

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("cycle has no q2-step")]
    NoQ2Step,

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "invalid_params",
            Error::NotFaithful { .. } => "not_faithful",
            Error::NotInSupport { .. } => "not_in_support",
            Error::Unsupported(_) => "unsupported",
            Error::NonConstantResidue { .. } => "non_constant_residue",
            Error::InsufficientPrimes { .. } => "insufficient_primes",
            Error::SizeGuard { .. } => "size_guard",
            Error::LemmaViolation(_) => "lemma_violation",
            Error::BoundViolated(_) => "bound_violated",
            Error::NoQ2Step => "no_q2_step",
            Error::OutOfRange(_) => "out_of_range",
            Error::InvalidPermutation(_) => "invalid_permutation",
        }
    }
}
