use super::*;
use crate::bertini::LaurentPoly;
use crate::linalg::q;
use crate::order::WeightOrder;

fn t_series(field: &Field, terms: &[(i64, i64, i64)]) -> GPSeries {
    // (coefficient, numerator, denominator) of t^{n/d}
    let o = WeightOrder::lex(1);
    GPSeries::exact(field, &o, terms.iter().map(|&(c, n, d)| (ExpVec::frac(&[n], d), field.from_int(c)))).unwrap()
}

fn poly(field: &Field, coeffs: &[GPSeries]) -> SeriesPoly {
    let _ = field;
    SeriesPoly::new(coeffs.to_vec()).unwrap()
}

#[test]
fn hensel_linear() {
    let f5 = Field::prime(5).unwrap();
    let c = t_series(&f5, &[(3, 0, 1), (1, 2, 1)]);
    let f = poly(&f5, &[c.neg(), t_series(&f5, &[(1, 0, 1)])]);
    let r = hensel_root(&f, &f5.from_int(3), &q(10)).unwrap();
    assert_eq!(r.root, c);
    assert_eq!(r.residual_valuation, ExtQ::Infinity);
}

#[test]
fn hensel_artin_schreier_positive_part() {
    let f2 = Field::prime(2).unwrap();
    // y² − y − t = y² + y + t over 𝔽₂
    let f = poly(&f2, &[t_series(&f2, &[(1, 1, 1)]), t_series(&f2, &[(1, 0, 1)]), t_series(&f2, &[(1, 0, 1)])]);
    let want = t_series(&f2, &(0..7).map(|j| (1, 1 << j, 1)).collect::<Vec<_>>()).truncate(&ExtQ::int(65));
    for s in [Schedule::Newton, Schedule::Chord] {
        let r = hensel_root_with(&f, &f2.zero(), &q(65), s).unwrap();
        assert_eq!(r.root, want);
        assert!(r.verify(&f).unwrap());
    }
    assert!(matches!(hensel_root(&f, &f2.one(), &q(5)), Ok(_)));
}

#[test]
fn hensel_square_root() {
    let f3 = Field::prime(3).unwrap();
    let f = poly(&f3, &[t_series(&f3, &[(-1, 0, 1), (-1, 1, 1)]), GPSeries::zero(&f3, &WeightOrder::lex(1)), t_series(&f3, &[(1, 0, 1)])]);
    let r = hensel_root(&f, &f3.one(), &q(5)).unwrap();
    assert_eq!(r.root.coeff(&ExpVec::zero(1)), f3.one());
    let sq = r.root.mul(&r.root).unwrap().sub(&t_series(&f3, &[(1, 0, 1), (1, 1, 1)])).unwrap();
    assert!(residual_at_least(&sq, &ExtQ::int(5)));
    assert!(sq.is_zero_stored());
}

#[test]
fn hensel_rejects_double_root() {
    let f3 = Field::prime(3).unwrap();
    let f = poly(&f3, &[t_series(&f3, &[(-1, 1, 1)]), GPSeries::zero(&f3, &WeightOrder::lex(1)), t_series(&f3, &[(1, 0, 1)])]);
    assert_eq!(hensel_root(&f, &f3.zero(), &q(3)).unwrap_err(), RootError::NotSimpleRoot);
    assert_eq!(hensel_root(&f, &f3.one(), &q(3)).unwrap_err(), RootError::NotAResidueRoot);
}

#[test]
fn artin_schreier_telescopes() {
    for p in [2u64, 3, 5] {
        let fp = Field::prime(p).unwrap();
        let f = t_series(&fp, &[(1, -1, 1)]);
        let h = artin_schreier_tail(&f, 10).unwrap();
        assert_eq!(h.num_terms(), 10);
        // exact telescoping: h_Dᵖ − h_D − t^{-1} = −t^{-1/p^D}
        let he = h.as_exact();
        let lhs = he.pow(p).unwrap().sub(&he).unwrap().sub(&f).unwrap();
        let tail = t_series(&fp, &[(-1, -1, (p as i64).pow(10))]);
        assert_eq!(lhs, tail);
        assert!(h.support_model().is_some());
    }
}

#[test]
fn artin_schreier_zero_gives_constants() {
    let f3 = Field::prime(3).unwrap();
    let roots = artin_schreier_roots(&GPSeries::zero(&f3, &WeightOrder::lex(1)), &q(4), 8).unwrap();
    let consts: Vec<_> = roots.iter().map(|r| r.root.coeff(&ExpVec::zero(1)).value()).collect();
    assert_eq!(consts, vec![0, 1, 2]);
    assert!(roots.iter().all(|r| r.residual_valuation == ExtQ::Infinity));
}

#[test]
fn artin_schreier_two_variables() {
    let f2 = Field::prime(2).unwrap();
    let o = WeightOrder::from_i64(&[&[1, 2], &[0, 1]]).unwrap();
    let f = GPSeries::monomial(&f2.one(), &ExpVec::from_ints(&[-1, -1]), &o);
    let r = artin_schreier_root(&f, &q(4), 12).unwrap();
    for j in 1..=12 {
        assert!(r.root.coeff(&ExpVec::frac(&[-1, -1], 1 << j)).is_one());
    }
    let e = r.root.as_exact();
    let lhs = e.mul(&e).unwrap().add(&e).unwrap().add(&f).unwrap();
    assert_eq!(lhs.num_terms(), 1);
    assert!(lhs.coeff(&ExpVec::frac(&[-1, -1], 1 << 12)).is_one());
}

#[test]
fn artin_schreier_needs_extension() {
    // X² − X = 1 over 𝔽₂ has its roots in 𝔽₄
    let f2 = Field::prime(2).unwrap();
    let f = t_series(&f2, &[(1, 0, 1), (1, -1, 1)]);
    let roots = artin_schreier_roots(&f, &q(3), 6).unwrap();
    assert_eq!(roots.len(), 2);
    for r in &roots {
        assert_eq!(r.extension_field.q(), 4);
    }
}

#[test]
fn puiseux_linear_and_square_roots() {
    let f3 = Field::prime(3).unwrap();
    let o = WeightOrder::from_i64(&[&[2, 1], &[0, 1]]).unwrap();
    let f = LaurentPoly::parse(&f3, 2, "y - t1*t2").unwrap();
    let e = newton_puiseux(&f, &o, &q(5), 10).unwrap();
    assert_eq!(e.roots.len(), 1);
    assert_eq!(e.roots[0].root, GPSeries::monomial(&f3.one(), &ExpVec::from_ints(&[1, 1]), &o));

    let f = LaurentPoly::parse(&f3, 2, "y^2 - t1*t2").unwrap();
    let e = newton_puiseux(&f, &o, &q(5), 10).unwrap();
    assert!(e.is_complete());
    assert_eq!(e.denominator_n, 2.into());
    let half = ExpVec::frac(&[1, 1], 2);
    let coeffs: Vec<u64> = e.roots.iter().map(|r| r.root.coeff(&half).value()).collect();
    assert_eq!(coeffs, vec![1, 2]);
    let sp = SeriesPoly::from_laurent(&f, &o).unwrap();
    for r in &e.roots {
        assert_eq!(r.residual_valuation, ExtQ::Infinity);
        assert!(r.verify(&sp).unwrap());
    }
}

#[test]
fn puiseux_newton_step() {
    // (y − t)² = t³ over 𝔽₅: roots t ± t^{3/2}
    let f5 = Field::prime(5).unwrap();
    let o = WeightOrder::lex(1);
    let f = LaurentPoly::parse(&f5, 1, "y^2 - 2*t*y + t^2 - t^3").unwrap();
    let e = newton_puiseux(&f, &o, &q(6), 10).unwrap();
    assert!(e.is_complete());
    assert_eq!(e.roots.len(), 2);
    for r in &e.roots {
        assert_eq!(r.root.num_terms(), 2);
        assert!(r.root.coeff(&ExpVec::from_ints(&[1])).is_one());
        assert_eq!(r.branch_log[0].method, Method::NewtonStep);
    }
    let partial = newton_puiseux(&f, &o, &q(6), 0).unwrap();
    assert!(!partial.is_complete());
    assert_eq!(partial.unresolved[0].multiplicity, 2);
}

#[test]
fn puiseux_inseparable_double_root() {
    let f2 = Field::prime(2).unwrap();
    let f = LaurentPoly::parse(&f2, 1, "y^2 + t").unwrap();
    let e = newton_puiseux(&f, &WeightOrder::lex(1), &q(3), 5).unwrap();
    assert_eq!(e.roots.len(), 1);
    assert_eq!(e.roots[0].multiplicity, 2);
    assert_eq!(e.roots[0].root, t_series(&f2, &[(1, 1, 2)]));
}

#[test]
fn puiseux_artin_schreier_delegation() {
    let f2 = Field::prime(2).unwrap();
    let f = LaurentPoly::parse(&f2, 1, "y^2 + y + t^-1").unwrap();
    let e = newton_puiseux(&f, &WeightOrder::lex(1), &q(2), 5).unwrap();
    assert!(e.is_complete());
    assert_eq!(e.roots.len(), 2);
    let h = artin_schreier_tail(&t_series(&f2, &[(1, -1, 1)]), DEFAULT_AS_DEPTH).unwrap();
    assert_eq!(e.roots[0].approximant, h.as_exact());
    assert_eq!(e.roots[1].approximant, h.as_exact().add(&h.one_like()).unwrap());
    // both agree below the cutoff, which lies below 0
    assert_eq!(e.roots[0].root, e.roots[1].root);
    let sp = SeriesPoly::from_laurent(&f, &WeightOrder::lex(1)).unwrap();
    for r in &e.roots {
        assert!(r.branch_log.iter().any(|s| s.method == Method::ArtinSchreier));
        assert!(r.verify(&sp).unwrap());
        assert!(r.root.support_model().is_some());
    }
    assert_eq!(e.denominator_n, 1.into());
}

#[test]
fn puiseux_scaled_artin_schreier() {
    // y² + t·y + t⁻¹ over 𝔽₂: β = t, z² + z = t⁻³
    let f2 = Field::prime(2).unwrap();
    let f = LaurentPoly::parse(&f2, 1, "y^2 + t*y + t^-1").unwrap();
    let e = newton_puiseux(&f, &WeightOrder::lex(1), &q(2), 5).unwrap();
    assert_eq!(e.roots.len(), 2);
    let sp = SeriesPoly::from_laurent(&f, &WeightOrder::lex(1)).unwrap();
    for r in &e.roots {
        assert!(r.verify(&sp).unwrap());
        assert!(r.root.coeff(&ExpVec::frac(&[-1], 2)).is_one());
    }
}

#[test]
fn puiseux_rejects_non_monic() {
    let f3 = Field::prime(3).unwrap();
    let f = LaurentPoly::parse(&f3, 1, "t*y^2 + y + 1").unwrap();
    assert_eq!(newton_puiseux(&f, &WeightOrder::lex(1), &q(2), 5).unwrap_err(), RootError::NotMonicInY);
}
