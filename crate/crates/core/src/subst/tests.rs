use super::*;
use crate::linalg::{q, qf};
use crate::roots::artin_schreier_root;

fn alpha(depth: u32) -> GPSeries {
    // Σ_{j≥0} t₁^{1−1/2ʲ} t₂^{1/2ʲ}, stored through j = depth
    let f2 = Field::prime(2).unwrap();
    let o = WeightOrder::from_i64(&[&[2, 1], &[0, 1]]).unwrap();
    let fam = PFamily::new(ExpVec::from_ints(&[1, 0]), ExpVec::from_ints(&[0, 1]), 0).unwrap();
    let terms: Vec<_> = (0..=depth).map(|j| (fam.member(2, j), f2.one())).collect();
    let cut = o.value(&fam.member(2, depth + 1));
    let model = StructuredSupport::empty(2, 2).with_family(fam).unwrap();
    GPSeries::new(&f2, &o, terms, ExtQ::Finite(cut)).unwrap().with_support(model).unwrap()
}

#[test]
fn monomial_image() {
    let f3 = Field::prime(3).unwrap();
    let f = GPSeries::monomial(&f3.one(), &ExpVec::from_ints(&[1, 1]), &WeightOrder::lex(2));
    let out = phi(&f, &SubstSpec::ones(&f3, vec![2, 3]).unwrap()).unwrap();
    assert_eq!(out.image, GPSeries::monomial(&f3.one(), &ExpVec::from_ints(&[5]), &WeightOrder::lex(1)));
    let spec = SubstSpec::new(vec![2, 3], vec![f3.from_int(2), f3.from_int(2)]).unwrap();
    assert_eq!(phi(&f, &spec).unwrap().image.coeff(&ExpVec::from_ints(&[5])), f3.one());
}

#[test]
fn spec_rejects_bad_input() {
    let f3 = Field::prime(3).unwrap();
    assert_eq!(SubstSpec::ones(&f3, vec![0, 0]).unwrap_err(), SubstError::ZeroDirection);
    assert_eq!(SubstSpec::new(vec![1], vec![f3.zero()]).unwrap_err(), SubstError::ZeroTheta);
}

#[test]
fn collapsing_family_is_an_infinite_fiber() {
    let a = alpha(20);
    let f2 = a.field().clone();
    match phi(&a, &SubstSpec::ones(&f2, vec![1, 1]).unwrap()) {
        Err(SubstError::InfiniteFiber { r, heuristic, .. }) => {
            assert_eq!(r, q(1));
            assert!(!heuristic);
        }
        other => panic!("{other:?}"),
    }
    // without a model the stored collisions trip the threshold
    let raw = a.clone().without_support();
    assert!(matches!(
        phi(&raw, &SubstSpec::ones(&f2, vec![1, 1]).unwrap()),
        Err(SubstError::InfiniteFiber { heuristic: true, .. })
    ));
}

#[test]
fn separating_direction_gives_distinct_exponents() {
    let a = alpha(20);
    let out = phi(&a, &SubstSpec::ones(a.field(), vec![3, 1]).unwrap()).unwrap();
    assert!(out.certified);
    let want: Vec<ExpVec> = (0..=20).map(|j| ExpVec::from_rationals(&[q(3) - qf(2, 1 << j)])).collect();
    let got: Vec<ExpVec> = out.image.exponents().cloned().collect();
    assert_eq!(got, want);
    // the first member left unknown maps to 3 − 2^{−20}
    assert_eq!(out.image.cutoff(), &ExtQ::Finite(q(3) - qf(1, 1 << 20)));
    assert!(out.image.support_model().is_some());
}

#[test]
fn raw_cutoff_transfer() {
    let f2 = Field::prime(2).unwrap();
    let o = WeightOrder::from_i64(&[&[1, 2], &[0, 1]]).unwrap();
    let f = GPSeries::new(&f2, &o, [(ExpVec::from_ints(&[1, 0]), f2.one())], ExtQ::int(5)).unwrap();
    let out = phi(&f, &SubstSpec::ones(&f2, vec![2, 4]).unwrap()).unwrap();
    assert_eq!(out.image.cutoff(), &ExtQ::int(10));
    assert!(!out.warnings.is_empty());
    assert!(matches!(
        phi(&f, &SubstSpec::ones(&f2, vec![1, 1]).unwrap()),
        Err(SubstError::FiberNeedsCertificate(_))
    ));
}

#[test]
fn theta_roots() {
    let f4 = Field::new(2, 2, None).unwrap();
    let g = f4.gen();
    let spec = SubstSpec::new(vec![1], vec![g.clone()]).unwrap();
    let r = spec.theta_power(&ExpVec::frac(&[1], 2)).unwrap();
    assert_eq!(r.pow(2), g);
    assert!(matches!(spec.theta_power(&ExpVec::frac(&[1], 3)), Err(SubstError::ThetaRootUnavailable { .. })));
    let ones = SubstSpec::ones(&f4, vec![1]).unwrap();
    assert!(ones.theta_power(&ExpVec::frac(&[1], 3)).unwrap().is_one());
}

#[test]
fn witness_for_separating_direction() {
    let a = alpha(20);
    let w = nonpolynomial_witness(&a, &SubstSpec::ones(a.field(), vec![2, 1]).unwrap(), None).unwrap();
    let WitnessResult::Obstruction(Obstruction::NonIntegerExponent { v, image, lattice }) = w else {
        panic!("{w:?}")
    };
    assert_eq!(v, ExpVec::frac(&[1, 1], 2));
    assert_eq!(image, qf(3, 2));
    assert_eq!(lattice.index(), 2.into());
    assert!(!lattice.contains_i64(&[2, 1]));
    assert!(lattice.contains_i64(&[3, 1]));
    // deeper members give index 2ʲ
    for j in 2..6u32 {
        let l = lattice_of_integrality(&PFamily::new(ExpVec::from_ints(&[1, 0]), ExpVec::from_ints(&[0, 1]), 0).unwrap().member(2, j));
        assert_eq!(l.index(), BigInt::from(1u64 << j));
    }
}

#[test]
fn witness_for_abhyankar_root() {
    let f2 = Field::prime(2).unwrap();
    let f = GPSeries::monomial(&f2.one(), &ExpVec::from_ints(&[-1]), &WeightOrder::lex(1));
    let h = artin_schreier_root(&f, &q(2), 16).unwrap();
    let w = nonpolynomial_witness(&h.root, &SubstSpec::ones(&f2, vec![1]).unwrap(), None).unwrap();
    let WitnessResult::Obstruction(Obstruction::NonIntegerExponent { v, lattice, .. }) = w else { panic!("{w:?}") };
    assert_eq!(v, ExpVec::frac(&[-1], 2));
    assert_eq!(lattice.index(), 2.into());
    assert!(lattice.contains_i64(&[2]));
}

#[test]
fn polynomial_input_is_possibly_polynomial() {
    let f3 = Field::prime(3).unwrap();
    let f = GPSeries::exact(&f3, &WeightOrder::lex(2), [(ExpVec::from_ints(&[1, 2]), f3.one()), (ExpVec::from_ints(&[0, 1]), f3.one())])
        .unwrap();
    let model = StructuredSupport::finite(3, 2, f.exponents().cloned()).unwrap();
    let f = f.with_support(model).unwrap();
    let spec = SubstSpec::ones(&f3, vec![1, 1]).unwrap();
    assert_eq!(nonpolynomial_witness(&f, &spec, None).unwrap(), WitnessResult::IsPossiblyPolynomial);
    assert_eq!(nonpolynomial_witness(&f.clone().without_support(), &spec, None).unwrap_err(), SubstError::NoSupportModel);
}

#[test]
fn degree_bound_cone() {
    // a root of y − t₁ cannot contain t₁³t₂ after substitution with n in the cone found
    let f3 = Field::prime(3).unwrap();
    let o = WeightOrder::lex(2);
    let v = ExpVec::from_ints(&[3, 1]);
    let a = GPSeries::exact(&f3, &o, [(v.clone(), f3.one())]).unwrap();
    let a = a.with_support(StructuredSupport::finite(3, 2, [v.clone()]).unwrap()).unwrap();
    let h = LaurentPoly::parse(&f3, 2, "y - t1").unwrap();
    let spec = SubstSpec::ones(&f3, vec![1, 1]).unwrap();
    let w = nonpolynomial_witness(&a, &spec, Some(&h)).unwrap();
    let WitnessResult::Obstruction(Obstruction::UnboundedSupportCone { cone, v: got, bound_point, contains_n }) = w else {
        panic!("{w:?}")
    };
    assert_eq!(got, v);
    assert_eq!(bound_point, ExpVec::from_ints(&[1, 0]));
    assert!(contains_n);
    assert!(cone.contains(&to_q_i64(&[1, 1]), true).unwrap());
}

#[test]
fn pullbacks() {
    let f3 = Field::prime(3).unwrap();
    let f = LaurentPoly::parse(&f3, 2, "t1^2 - t2*y^2").unwrap();
    let g = pullback_isogeny(&f, &[vec![1, 0], vec![0, 2]]).unwrap();
    assert_eq!(g, LaurentPoly::parse(&f3, 2, "t1^2 - t2^2*y^2").unwrap());
    assert_eq!(pullback_isogeny(&f, &[vec![1, 0], vec![0, 1]]).unwrap(), f);
    let f = LaurentPoly::parse(&f3, 1, "y - t").unwrap();
    assert_eq!(pullback_isogeny(&f, &[vec![3]]).unwrap(), LaurentPoly::parse(&f3, 1, "y - t^3").unwrap());
    assert_eq!(pullback_isogeny(&f, &[vec![0]]).unwrap_err(), SubstError::SingularMatrix);
}

#[test]
fn laurent_image() {
    let f5 = Field::prime(5).unwrap();
    let f = LaurentPoly::parse(&f5, 2, "y^2 - t1*t2^-1*y + 3").unwrap();
    let spec = SubstSpec::new(vec![2, 1], vec![f5.from_int(2), f5.from_int(3)]).unwrap();
    // θ^{(1,−1)} = 2·3⁻¹ = 4
    assert_eq!(phi_laurent(&f, &spec).unwrap(), LaurentPoly::parse(&f5, 1, "y^2 - 4*t*y + 3").unwrap());
}

#[test]
fn commutes_with_roots() {
    // the Artin–Schreier root of t₁⁻¹t₂⁻¹ maps to that of x⁻²
    let f2 = Field::prime(2).unwrap();
    let o = WeightOrder::from_i64(&[&[1, 2], &[0, 1]]).unwrap();
    let f = GPSeries::monomial(&f2.one(), &ExpVec::from_ints(&[-1, -1]), &o);
    let r = artin_schreier_root(&f, &q(3), 12).unwrap();
    let spec = SubstSpec::ones(&f2, vec![1, 1]).unwrap();
    let img = phi(&r.root, &spec).unwrap().image;
    let big_f = LaurentPoly::parse(&f2, 2, "y^2 + y + t1^-1*t2^-1").unwrap();
    let fx = phi_laurent(&big_f, &spec).unwrap();
    let sp = crate::roots::SeriesPoly::from_laurent(&fx, &WeightOrder::lex(1)).unwrap();
    let val = sp.eval(&img).unwrap();
    assert!(val.is_zero_stored());
    // evaluation at a truncated root of valuation −1 keeps precision up to λ − 1
    let ExtQ::Finite(l) = img.cutoff().clone() else { panic!() };
    assert_eq!(val.cutoff(), &ExtQ::Finite(l - q(1)));
    // the exact approximant leaves the single image of the dropped level
    let ex = phi(&r.approximant, &spec).unwrap().image;
    let res = sp.eval(&ex).unwrap();
    assert_eq!(res.terms_sorted(), vec![(ExpVec::frac(&[-2], 1 << 12), f2.one())]);
}
