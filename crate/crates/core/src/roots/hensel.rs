use num_traits::Signed;
use num_traits::Zero;

use super::{BranchStep, Method, RootError, RootExpansion, SeriesPoly};
use crate::ff::{Embedding, FFElem};
use crate::linalg::Q;
use crate::order::ExpVec;
use crate::series::{ExtQ, GPSeries};

/// Iteration used to lift a residue root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// `b ← b − F(b)/F′(b)`: the gained valuation doubles each step.
    Newton,
    /// `b ← b − F(b)/F̄′(a)` with the derivative frozen at the residue root: linear gain.
    Chord,
}

const MAX_ITER: usize = 4096;

/// Lifts a simple root `a` of the residue polynomial to a root exact below `target`.
pub fn hensel_root(f: &SeriesPoly, a: &FFElem, target: &Q) -> Result<RootExpansion, RootError> {
    hensel_root_with(f, a, target, Schedule::Newton)
}

pub fn hensel_root_with(f: &SeriesPoly, a: &FFElem, target: &Q, schedule: Schedule) -> Result<RootExpansion, RootError> {
    let order = f.order().clone();
    let t = ExtQ::Finite(target.clone());
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.cutoff() < &t {
            return Err(RootError::InsufficientPrecision { have: c.cutoff().clone(), need: t.clone() });
        }
        for (e, _) in c.terms() {
            let v = order.value(e);
            if v.is_negative() {
                return Err(RootError::NegativeValuation(i));
            }
            if v.is_zero() && !e.is_zero() {
                return Err(RootError::DegenerateValuation(e.clone()));
            }
        }
    }
    let bar = f.residue();
    if !bar.eval(a).is_zero() {
        return Err(RootError::NotAResidueRoot);
    }
    let dbar = bar.derivative().eval(a);
    let Some(dbar_inv) = dbar.inv() else {
        return Err(RootError::NotSimpleRoot);
    };

    let fp = f.derivative();
    let mut b = GPSeries::constant(a, &order);
    let mut residual = t.clone();
    let mut done = false;
    for _ in 0..MAX_ITER {
        let fb = f.eval(&b)?;
        if fb.is_zero() {
            if b.is_exact() {
                residual = ExtQ::Infinity;
            }
            done = true;
            break;
        }
        let r = fb.truncate(&t);
        if r.is_zero_stored() {
            done = true;
            break;
        }
        let corr = match schedule {
            Schedule::Newton => {
                let d = fp.eval(&b)?;
                r.mul(&d.inverse(target)?)?
            }
            Schedule::Chord => r.scalar_mul(&dbar_inv),
        };
        b = b.sub(&corr)?.truncate(&t);
    }
    if !done {
        return Err(RootError::NoConvergence(MAX_ITER));
    }
    if !residual.is_infinite() && f.coeffs().iter().all(|c| c.is_exact()) {
        let exact = b.as_exact();
        if f.eval(&exact)?.is_zero() {
            b = exact;
            residual = ExtQ::Infinity;
        }
    }
    let step = BranchStep { exponent: ExpVec::zero(order.dim()), coefficient: a.clone(), method: Method::Hensel };
    Ok(RootExpansion {
        approximant: b.as_exact(),
        root: b,
        residual_valuation: residual,
        branch_log: vec![step],
        extension_field: f.field().clone(),
        embedding: Embedding::identity(f.field()),
        multiplicity: 1,
    })
}
