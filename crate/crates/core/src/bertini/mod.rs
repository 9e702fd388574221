//! Bivariate factorization over finite fields, isogeny pullbacks and the direction scan.
mod bivariate;
mod factor;
mod laurent;
mod scan;

pub use factor::{factor_bivariate, factor_laurent, Factorization};
pub use laurent::{LKey, LaurentParseError, LaurentPoly};
pub use scan::{
    bertini_scan, fit_bad_lattices, fit_bad_lattices_with, pb_falsify, pullback_factorization, scan_directions,
    DirectionResult, FittedLattice, LatticeFit, PbWitness, ScanOptions, ScanReport, ThetaPolicy,
};

use crate::ff::FfError;
use crate::order::OrderError;
use crate::subst::SubstError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BertiniError {
    #[error("polynomial is not monic in y (its leading coefficient must be a single term)")]
    NotMonic,
    #[error("polynomial is constant in y")]
    ConstantPolynomial,
    #[error("expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Subst(#[from] SubstError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[cfg(test)]
mod tests;
