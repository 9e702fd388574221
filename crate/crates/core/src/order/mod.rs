//! Exponent vectors, weight orders, rational cones, integer lattices and Smith normal form.

mod cone;
mod expvec;
mod lattice;
mod weight;

pub use cone::Cone;
pub use expvec::{split_p_part, ExpVec};
pub use lattice::{check_snf, det_int, hnf, lattice_of_integrality, pick_outside_lattices, snf, IntLattice, SmithForm};
pub use weight::WeightOrder;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero denominator in exponent vector")]
    ZeroDenominator,
    #[error("weight matrix is singular")]
    SingularOrder,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("no point found within the search bound")]
    NotFound,
}
