use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{split_at, PFamily, StructuredSupport, SupportError};
use crate::linalg::{ceil_q, Q};
use crate::order::{ExpVec, WeightOrder};

pub fn union(a: &StructuredSupport, b: &StructuredSupport) -> Result<StructuredSupport, SupportError> {
    if a.p != b.p || a.d != b.d {
        return Err(SupportError::DimensionMismatch);
    }
    let mut out = a.clone();
    out.finite.extend(b.finite.iter().cloned());
    for f in &b.families {
        if !out.families.contains(f) {
            out.families.push(f.clone());
        }
    }
    Ok(out)
}

pub fn translate(a: &StructuredSupport, g: &ExpVec) -> Result<StructuredSupport, SupportError> {
    if g.dim() != a.d {
        return Err(SupportError::DimensionMismatch);
    }
    Ok(StructuredSupport {
        p: a.p,
        d: a.d,
        finite: a.finite.iter().map(|x| x.add(g)).collect(),
        families: a.families.iter().map(|f| f.translate(g)).collect(),
    })
}

/// `⋃_{i ≥ 0} p^{-i}·A`.
pub fn scale_p_inverse_union(a: &StructuredSupport, order: &WeightOrder) -> Result<StructuredSupport, SupportError> {
    scale_p_inverse_union_from(a, order, 0)
}

/// `⋃_{i ≥ i0} p^{-i}·A`, for supports whose elements are all `≺ 0`.
pub fn scale_p_inverse_union_from(
    a: &StructuredSupport,
    order: &WeightOrder,
    i0: u32,
) -> Result<StructuredSupport, SupportError> {
    let zero = ExpVec::zero(a.d);
    let mut out = StructuredSupport::empty(a.p, a.d);
    for v in &a.finite {
        if order.sign(v) != Ordering::Less {
            return Err(SupportError::HypothesisViolated(format!("point {v} is not below 0")));
        }
        out.families.push(PFamily::new(zero.clone(), v.clone(), i0)?);
    }
    for f in &a.families {
        if order.sign(&f.limit) == Ordering::Greater || !f.is_increasing(order) {
            return Err(SupportError::HypothesisViolated(format!(
                "family with limit {} has members not below 0",
                f.limit
            )));
        }
        if !f.limit.is_zero() {
            return Err(SupportError::NotRepresentable(format!(
                "scaling a family with nonzero limit {} produces infinitely many limits",
                f.limit
            )));
        }
        let g = f.with_start(f.start + i0);
        if !out.families.contains(&g) {
            out.families.push(g);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SemigroupBelow {
    /// Nonzero sums of elements strictly below `γ`, sorted by the order.
    pub elements: Vec<ExpVec>,
    /// Bound on the number of summands.
    pub bound: BigInt,
}

/// `S(A) ∩ {x ≺ γ}` for supports with every nonzero element of positive primary value.
pub fn semigroup_below(
    a: &StructuredSupport,
    gamma: &ExpVec,
    order: &WeightOrder,
) -> Result<SemigroupBelow, SupportError> {
    if gamma.dim() != a.d {
        return Err(SupportError::DimensionMismatch);
    }
    let p = a.p;
    let check = |x: &ExpVec| -> Result<(), SupportError> {
        if x.is_zero() {
            return Ok(());
        }
        let v = order.value(x);
        if v.is_negative() {
            return Err(SupportError::HypothesisViolated(format!("element {x} has negative weight value")));
        }
        if v.is_zero() {
            return Err(SupportError::HypothesisViolated(format!(
                "nonzero element {x} has primary weight value 0; the number of summands is unbounded"
            )));
        }
        Ok(())
    };
    for x in &a.finite {
        check(x)?;
    }
    for f in &a.families {
        check(&f.member(p, f.start))?;
        check(&f.limit)?;
    }
    // smallest positive value: the family minimum is attained at its first member
    let mut min_pos: Option<Q> = None;
    let mut consider = |x: &ExpVec| {
        let v = order.value(x);
        if v.is_positive() && min_pos.as_ref().is_none_or(|m| &v < m) {
            min_pos = Some(v);
        }
    };
    for x in &a.finite {
        consider(x);
    }
    for f in &a.families {
        consider(&f.member(p, f.start));
        consider(&f.limit);
    }
    let gv = order.value(gamma);
    let bound = match &min_pos {
        Some(m) if gv.is_positive() => ceil_q(&(&gv / m)),
        _ => BigInt::zero(),
    };

    let split = split_at(a, gamma, order)?;
    if !split.minus.families.is_empty() {
        return Err(SupportError::NotRepresentable(
            "infinitely many elements lie below the threshold".into(),
        ));
    }
    let base: Vec<ExpVec> = split.minus.finite.iter().filter(|x| !x.is_zero()).cloned().collect();
    let below = |x: &ExpVec| order.cmp_unchecked(x, gamma) == Ordering::Less;

    let mut all: BTreeSet<ExpVec> = base.iter().cloned().collect();
    let mut level: BTreeSet<ExpVec> = all.clone();
    let mut m = BigInt::from(1);
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for s in &level {
            for b in &base {
                let t = s.add(b);
                if below(&t) {
                    next.insert(t);
                }
            }
        }
        if !next.is_empty() {
            m += 1;
            if m > bound {
                return Err(SupportError::HypothesisViolated("summand bound exceeded".into()));
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    let mut elements: Vec<ExpVec> = all.into_iter().collect();
    elements.sort_by(|x, y| order.cmp_unchecked(x, y));
    Ok(SemigroupBelow { elements, bound })
}

/// Keeps the finite points selected by `keep_pt` and the families selected by
/// `keep_fam`, each family possibly started later.
pub fn subset(
    a: &StructuredSupport,
    keep_pt: impl Fn(&ExpVec) -> bool,
    keep_fam: impl Fn(&PFamily) -> Option<u32>,
) -> StructuredSupport {
    StructuredSupport {
        p: a.p,
        d: a.d,
        finite: a.finite.iter().filter(|x| keep_pt(x)).cloned().collect(),
        families: a
            .families
            .iter()
            .filter_map(|f| keep_fam(f).map(|extra| f.with_start(f.start + extra)))
            .collect(),
    }
}
