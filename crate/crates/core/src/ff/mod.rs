//! Finite fields, their extensions, and univariate polynomials over them.

mod factor;
mod field;
mod poly;

pub use factor::{
    distinct_degree, equal_degree, factor, factor_univariate, factor_with_rng, split_completely,
    squarefree_decomposition, ExtRoot, UnivariateFactorization,
};
pub use field::{is_prime, Embedding, FFElem, Field, FieldSpec};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FfError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadDegree(usize),
    #[error("field GF({p}^{k}) is too large")]
    TooLarge { p: u64, k: usize },
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u64>),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("no embedding between the requested fields")]
    NoEmbedding,
}
