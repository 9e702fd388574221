//! Structured supports (finite sets plus p-families), p-discreteness certificates,
//! and the closure operations behind the field-family axioms.

mod check;
mod closure;
mod family;

pub use check::{
    family_sides, pdiscrete_check, split_at, split_with_weight, Condition, PDiscreteCertificate, Split, Violation,
};
pub use closure::{scale_p_inverse_union, scale_p_inverse_union_from, semigroup_below, subset, translate, union, SemigroupBelow};
pub use family::{PFamily, StructuredSupport};

use crate::order::ExpVec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SupportError {
    #[error("dimension or characteristic mismatch")]
    DimensionMismatch,
    #[error("a family needs a seed different from its limit")]
    DegenerateFamily,
    #[error("support is not certified: {0}")]
    NotCertified(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("result is not a finite union of families: {0}")]
    NotRepresentable(String),
    #[error("the primary weight ties at {0}; the simulated order cannot certify this split")]
    TieAtLimit(ExpVec),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::order::WeightOrder;

    fn abhyankar() -> StructuredSupport {
        StructuredSupport::empty(2, 1)
            .with_family(PFamily::new(ExpVec::from_ints(&[0]), ExpVec::from_ints(&[-1]), 1).unwrap())
            .unwrap()
    }

    #[test]
    fn finite_sets_are_certified() {
        let s = StructuredSupport::finite(2, 2, [ExpVec::from_ints(&[0, 0]), ExpVec::from_ints(&[1, 2])]).unwrap();
        let c = pdiscrete_check(&s, &WeightOrder::lex(2)).unwrap();
        assert!(c.sigma.is_full_dimensional() && c.sigma.facets().is_empty());
        for x in &s.finite {
            assert!(c.covers(x, 2));
        }
    }

    #[test]
    fn abhyankar_family_certified() {
        let c = pdiscrete_check(&abhyankar(), &WeightOrder::lex(1)).unwrap();
        assert!(!c.refined);
        assert_eq!(c.limits, vec![ExpVec::from_ints(&[0])]);
    }

    #[test]
    fn alpha_family_violates_a() {
        let s = StructuredSupport::empty(2, 2)
            .with_family(PFamily::new(ExpVec::from_ints(&[1, 0]), ExpVec::from_ints(&[0, 1]), 0).unwrap())
            .unwrap();
        let o = WeightOrder::from_i64(&[&[1, 2], &[0, 1]]).unwrap();
        let v = pdiscrete_check(&s, &o).unwrap_err();
        assert_eq!(v.condition, Condition::A);
        let o2 = WeightOrder::from_i64(&[&[2, 1], &[0, 1]]).unwrap();
        assert!(pdiscrete_check(&s, &o2).is_ok());
    }

    #[test]
    fn tied_limits_are_separated_by_refinement() {
        // limits (1,−2) and (1,−1) agree on w₁ = (1,0) and differ on w₂
        let fam = |l: &[i64], s: &[i64]| PFamily::new(ExpVec::from_ints(l), ExpVec::from_ints(s), 0).unwrap();
        let s = StructuredSupport::empty(2, 2).with_family(fam(&[1, -2], &[0, -2])).unwrap().with_family(fam(&[1, -1], &[0, 0])).unwrap();
        let c = pdiscrete_check(&s, &WeightOrder::lex(2)).unwrap();
        assert!(c.refined);
        let w = &c.interior_point;
        let at = |x: &[i64]| w[0].clone() * q(x[0]) + w[1].clone() * q(x[1]);
        assert!(at(&[1, -2]) < at(&[1, -1]));
    }

    #[test]
    fn abhyankar_splits() {
        let o = WeightOrder::lex(1);
        let s0 = split_at(&abhyankar(), &ExpVec::zero(1), &o).unwrap();
        assert!(s0.plus.finite.is_empty() && s0.plus.families.is_empty());
        assert_eq!(s0.minus.families.len(), 1);
        assert_eq!(s0.minus.families[0].start, 1);

        let s = split_at(&abhyankar(), &ExpVec::frac(&[-1], 4), &o).unwrap();
        assert_eq!(s.minus.finite.iter().cloned().collect::<Vec<_>>(), vec![ExpVec::frac(&[-1], 2)]);
        assert!(s.minus.families.is_empty());
        assert_eq!(s.plus.families[0].start, 3);
        assert!(s.plus.finite.is_empty());
        assert!(!s.plus.contains(&ExpVec::frac(&[-1], 4)) && !s.minus.contains(&ExpVec::frac(&[-1], 4)));
    }

    #[test]
    fn scale_and_semigroup_examples() {
        let o = WeightOrder::lex(1);
        let pt = StructuredSupport::finite(2, 1, [ExpVec::from_ints(&[-1])]).unwrap();
        let sc = scale_p_inverse_union(&pt, &o).unwrap();
        assert_eq!(sc.families, vec![PFamily::new(ExpVec::zero(1), ExpVec::from_ints(&[-1]), 0).unwrap()]);

        let a = StructuredSupport::finite(3, 1, [ExpVec::from_ints(&[1]), ExpVec::frac(&[3], 2)]).unwrap();
        let r = semigroup_below(&a, &ExpVec::from_ints(&[4]), &o).unwrap();
        assert_eq!(r.bound, 4.into());
        let got: Vec<_> = r.elements.iter().map(|e| e.coord(0)).collect();
        let want: Vec<_> = [2, 3, 4, 5, 6, 7].iter().map(|&k| q(k) / q(2)).collect();
        assert_eq!(got, want);
    }
}
