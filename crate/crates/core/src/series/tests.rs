use super::*;
use crate::ff::Field;
use crate::support::PFamily;

fn f2() -> Field {
    Field::prime(2).unwrap()
}

/// `Σ_{j=1}^{depth} t^{-1/2^j}` in one variable.
fn abhyankar(depth: u32, cutoff: ExtQ) -> GPSeries {
    let f = f2();
    let o = WeightOrder::lex(1);
    let terms = (1..=depth).map(|j| (ExpVec::frac(&[-1], 1 << j), f.one()));
    GPSeries::new(&f, &o, terms, cutoff).unwrap()
}

#[test]
fn add_negation_cancels() {
    let h = abhyankar(12, ExtQ::int(0));
    let z = h.add(&h.neg()).unwrap();
    assert!(z.is_zero_stored());
    assert_eq!(z.cutoff(), &ExtQ::int(0));
}

#[test]
fn shift_by_t() {
    let h = abhyankar(6, ExtQ::Infinity);
    let t = GPSeries::monomial(&f2().one(), &ExpVec::from_ints(&[1]), &WeightOrder::lex(1));
    let th = t.mul(&h).unwrap();
    let want: Vec<ExpVec> = (1..=6).map(|j| ExpVec::frac(&[(1 << j) - 1], 1 << j)).collect();
    let mut got: Vec<ExpVec> = th.exponents().cloned().collect();
    got.sort();
    let mut want = want;
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn one_plus_t_times_one_minus_t() {
    let f3 = Field::prime(3).unwrap();
    let o = WeightOrder::lex(1);
    let one = GPSeries::one(&f3, &o);
    let t = GPSeries::monomial(&f3.one(), &ExpVec::from_ints(&[1]), &o);
    let a = one.add(&t).unwrap();
    let b = one.sub(&t).unwrap();
    let prod = a.mul(&b).unwrap();
    let want = one.sub(&t.mul(&t).unwrap()).unwrap();
    assert_eq!(prod, want);
}

#[test]
fn valuation_examples() {
    let f = f2();
    let o = WeightOrder::from_i64(&[&[1, 2], &[0, 1]]).unwrap();
    assert_eq!(GPSeries::zero(&f, &o).valuation().unwrap(), ExtQ::Infinity);
    let s = GPSeries::exact(&f, &o, [(ExpVec::from_ints(&[-1, -1]), f.one()), (ExpVec::zero(2), f.one())]).unwrap();
    assert_eq!(s.valuation().unwrap(), ExtQ::int(-3));
    assert_eq!(s.leading_term().unwrap().unwrap().0, ExpVec::from_ints(&[-1, -1]));
    let empty = GPSeries::new(&f, &o, [], ExtQ::int(2)).unwrap();
    assert!(matches!(empty.valuation(), Err(SeriesError::IndeterminateValuation(_))));
}

#[test]
fn split_examples() {
    let f = f2();
    let o = WeightOrder::lex(1);
    let s = GPSeries::exact(
        &f,
        &o,
        [-1, 0, 1].iter().map(|&k| (ExpVec::from_ints(&[k]), f.one())),
    )
    .unwrap();
    let (p, m) = s.split_pm();
    assert_eq!(m.exponents().cloned().collect::<Vec<_>>(), vec![ExpVec::from_ints(&[-1])]);
    assert_eq!(p.num_terms(), 2);
    assert_eq!(p.add(&m).unwrap(), s);
    let h = abhyankar(8, ExtQ::int(1));
    let (p, m) = h.split_pm();
    assert!(p.is_zero_stored());
    assert_eq!(m.num_terms(), 8);
    assert!(m.is_exact());
}

#[test]
fn pth_roots() {
    let f = f2();
    let o1 = WeightOrder::lex(1);
    let t2 = GPSeries::monomial(&f.one(), &ExpVec::from_ints(&[2]), &o1);
    assert_eq!(t2.pth_root_series(), GPSeries::monomial(&f.one(), &ExpVec::from_ints(&[1]), &o1));
    let o2 = WeightOrder::lex(2);
    let t1t2 = GPSeries::monomial(&f.one(), &ExpVec::from_ints(&[1, 1]), &o2);
    assert_eq!(t1t2.pth_root_series(), GPSeries::monomial(&f.one(), &ExpVec::frac(&[1, 1], 2), &o2));
    let f4 = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
    let a = f4.gen();
    let at = GPSeries::monomial(&a, &ExpVec::from_ints(&[1]), &o1);
    let r = at.pth_root_series();
    assert_eq!(r.coeff(&ExpVec::frac(&[1], 2)), &a + &f4.one());
    assert_eq!(r.frobenius(), at);
}

#[test]
fn inverse_of_one_minus_t() {
    let f3 = Field::prime(3).unwrap();
    let o = WeightOrder::lex(1);
    let s = GPSeries::exact(&f3, &o, [(ExpVec::zero(1), f3.one()), (ExpVec::from_ints(&[1]), f3.from_int(-1))]).unwrap();
    let inv = s.inverse(&q(10)).unwrap();
    assert_eq!(inv.num_terms(), 10);
    let prod = inv.mul(&s).unwrap();
    assert_eq!(prod.terms_sorted(), vec![(ExpVec::zero(1), f3.one())]);
}

#[test]
fn k_c_membership() {
    let f = f2();
    let o = WeightOrder::from_i64(&[&[2, 1], &[0, 1]]).unwrap();
    let fam = PFamily::new(ExpVec::from_ints(&[1, 0]), ExpVec::from_ints(&[0, 1]), 0).unwrap();
    let model = StructuredSupport::empty(2, 2).with_family(fam.clone()).unwrap();
    let alpha = GPSeries::new(&f, &o, fam.members(2, 8).into_iter().map(|e| (e, f.one())), ExtQ::int(2))
        .unwrap()
        .with_support(model)
        .unwrap();
    let around = |a: i64, b: i64| {
        Cone::from_generators_i64(2, &[vec![a, b], vec![2 * a + 1, 2 * b], vec![2 * a, 2 * b + 1]]).unwrap()
    };
    assert!(alpha.in_k_c(&around(2, 1)).unwrap().member);
    assert!(!alpha.in_k_c(&around(1, 2)).unwrap().member);
    let poly = GPSeries::exact(&f, &o, [(ExpVec::from_ints(&[3, -1]), f.one())])
        .unwrap()
        .with_support(StructuredSupport::finite(2, 2, [ExpVec::from_ints(&[3, -1])]).unwrap())
        .unwrap();
    assert!(poly.in_k_c(&Cone::whole_space(2)).unwrap().member);
}
