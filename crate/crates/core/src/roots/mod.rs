//! Roots in the series field: Hensel lifting of simple residue roots, the explicit
//! Artin–Schreier root, and a Newton–Puiseux driver that splits a polynomial in `y`
//! into linear factors up to a residual valuation.

mod artin;
mod hensel;
mod puiseux;
mod seriespoly;

use std::cmp::Ordering;
use std::fmt;

pub use artin::{artin_schreier_root, artin_schreier_roots, artin_schreier_tail, DEFAULT_AS_DEPTH};
pub use hensel::{hensel_root, hensel_root_with, Schedule};
pub use puiseux::{newton_puiseux, newton_puiseux_with, PuiseuxExpansion, PuiseuxOptions, UnresolvedBranch};
pub use seriespoly::SeriesPoly;

use crate::ff::{Embedding, FFElem, FfError, Field};
use crate::order::{ExpVec, WeightOrder};
use crate::series::{ExtQ, GPSeries, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial is not monic in y")]
    NotMonicInY,
    #[error("polynomial has degree 0 in y")]
    ConstantPolynomial,
    #[error("more branches than the degree allows: {0}")]
    BranchExplosion(String),
    #[error("the residue root is not simple")]
    NotSimpleRoot,
    #[error("the given value is not a root of the residue polynomial")]
    NotAResidueRoot,
    #[error("coefficient known only below {have}, target is {need}")]
    InsufficientPrecision { have: ExtQ, need: ExtQ },
    #[error("coefficient {0} has negative valuation")]
    NegativeValuation(usize),
    #[error("exponent {0} has primary weight 0 but is nonzero; the cutoff cannot control it")]
    DegenerateValuation(ExpVec),
    #[error("iteration did not reach the target after {0} steps")]
    NoConvergence(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Support(#[from] crate::support::SupportError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Hensel,
    ArtinSchreier,
    NewtonStep,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Hensel => "hensel",
            Method::ArtinSchreier => "artin_schreier",
            Method::NewtonStep => "newton_step",
        })
    }
}

/// One step of a branch: the initial exponent and coefficient it fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchStep {
    pub exponent: ExpVec,
    pub coefficient: FFElem,
    pub method: Method,
}

#[derive(Clone, Debug)]
pub struct RootExpansion {
    /// Agrees with a true root below its cutoff.
    pub root: GPSeries,
    /// An exact finite sum `r`; it can hold terms beyond the cutoff of `root` (the constant of
    /// an Artin–Schreier root sits above infinitely many negative exponents accumulating at 0).
    pub approximant: GPSeries,
    /// Lower bound for `ν(F(r))` with `r` the approximant.
    pub residual_valuation: ExtQ,
    pub branch_log: Vec<BranchStep>,
    pub extension_field: Field,
    /// Embedding of the input polynomial's field into `extension_field`.
    pub embedding: Embedding,
    pub multiplicity: usize,
}

impl RootExpansion {
    /// Recomputes `F(r)` for the approximant `r` and checks the residual bound.
    pub fn verify(&self, f: &SeriesPoly) -> Result<bool, RootError> {
        if !self.embedding.src().same(f.field()) {
            return Err(RootError::Series(SeriesError::IncompatibleContexts));
        }
        let f = f.map_field(&self.embedding);
        let v = f.eval(&self.approximant)?;
        Ok(residual_at_least(&v, &self.residual_valuation))
    }
}

/// True when `s` has no stored term below `bound` and is known at least that far.
pub(crate) fn residual_at_least(s: &GPSeries, bound: &ExtQ) -> bool {
    if s.cutoff() < bound {
        return false;
    }
    match bound {
        ExtQ::Infinity => s.is_zero(),
        ExtQ::Finite(b) => s.terms().all(|(e, _)| &s.order().value(e) >= b),
    }
}

pub(crate) fn cmp_logs(order: &WeightOrder, a: &[BranchStep], b: &[BranchStep]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = order
            .cmp_unchecked(&x.exponent, &y.exponent)
            .then_with(|| x.method.cmp(&y.method))
            .then_with(|| x.coefficient.field().q().cmp(&y.coefficient.field().q()))
            .then_with(|| x.coefficient.value().cmp(&y.coefficient.value()));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests;
