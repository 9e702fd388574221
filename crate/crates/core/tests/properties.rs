use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use pdiscrete::bertini::{factor_laurent, LaurentPoly};
use pdiscrete::ff::{factor, Field, Poly};
use pdiscrete::linalg::{det, q, to_q_i64, Q};
use pdiscrete::order::{snf, Cone, ExpVec, WeightOrder};
use pdiscrete::roots::newton_puiseux;
use pdiscrete::series::{ExtQ, GPSeries};
use pdiscrete::subst::{phi, SubstSpec};
use pdiscrete::tropical::{trop_hypersurface, ValuedPoly};

fn field_strategy() -> impl Strategy<Value = Field> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3).prop_map(|(p, k)| Field::new(p, k, None).unwrap())
}

/// Exact series in `d` variables with exponents in `(1/p^e)·ℤ`, lex order.
fn series_in(field: Field, d: usize) -> impl Strategy<Value = GPSeries> {
    let p = field.p() as i64;
    prop::collection::vec((prop::collection::vec(-4i64..=4, d), 0u32..=2, 1u64..field.q()), 0..6).prop_map(move |terms| {
        let o = WeightOrder::lex(d);
        let ts = terms.into_iter().map(|(num, e, c)| (ExpVec::frac(&num, p.pow(e)), field.from_value(c)));
        GPSeries::exact(&field, &o, ts).unwrap()
    })
}

fn three_series() -> impl Strategy<Value = (GPSeries, GPSeries, GPSeries)> {
    (field_strategy(), 1usize..=2).prop_flat_map(|(f, d)| (series_in(f.clone(), d), series_in(f.clone(), d), series_in(f, d)))
}

/// 64 cases unless `PROPTEST_CASES` asks for more.
fn cases() -> u32 {
    std::env::var("PROPTEST_CASES").ok().and_then(|v| v.parse().ok()).unwrap_or(64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(cases()))]

    #[test]
    fn pth_root_inverts_frobenius(f in field_strategy(), v in any::<u64>()) {
        let a = f.from_value(v % f.q());
        prop_assert_eq!(a.pth_root().pow(f.p() as u128), a.clone());
        prop_assert_eq!(a.pow(f.p() as u128).pth_root(), a);
    }

    #[test]
    fn univariate_factors_multiply_back(p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1usize..=2, coeffs in prop::collection::vec(any::<u64>(), 2..=13)) {
        let f = Field::new(p, k, None).unwrap();
        let poly = Poly::new(&f, &coeffs.iter().map(|c| f.from_value(c % f.q())).collect::<Vec<_>>());
        prop_assume!(poly.degree().unwrap_or(0) >= 1);
        let parts = factor(&poly);
        let prod = parts.iter().fold(Poly::constant(&poly.lc()), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)));
        prop_assert_eq!(prod, poly);
        for (g, _) in &parts {
            prop_assert!(g.is_monic() && g.is_irreducible());
        }
    }

    #[test]
    fn order_is_translation_invariant(
        w in prop::collection::vec(1i64..=5, 2), a in prop::collection::vec(-9i64..=9, 2),
        b in prop::collection::vec(-9i64..=9, 2), c in prop::collection::vec(-9i64..=9, 2), den in 1i64..=8,
    ) {
        let o = WeightOrder::from_i64(&[&w, &[0, 1]]).unwrap();
        let (a, b, c) = (ExpVec::frac(&a, den), ExpVec::from_ints(&b), ExpVec::frac(&c, 3));
        prop_assert_eq!(o.compare(&a, &b).unwrap(), o.compare(&a.add(&c), &b.add(&c)).unwrap());
    }

    #[test]
    fn snf_invariants(rows in 1usize..=4, cols in 1usize..=4, entries in prop::collection::vec(-9i64..=9, 16)) {
        let m: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(entries[i * 4 + j])).collect()).collect();
        let s = snf(&m);
        let mul = |a: &[Vec<BigInt>], b: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
            a.iter().map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum()).collect()).collect()
        };
        prop_assert_eq!(mul(&mul(&s.u, &m), &s.v), s.d.clone());
        if rows == cols {
            let qm = |m: &[Vec<BigInt>]| m.iter().map(|r| r.iter().map(|x| Q::from(x.clone())).collect()).collect::<Vec<Vec<Q>>>();
            prop_assert_eq!(det(&qm(&s.d)).abs(), det(&qm(&m)).abs());
        }
    }

    #[test]
    fn double_dual_is_the_cone(d in 1usize..=4, gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=6)) {
        let gens: Vec<Vec<i64>> = gens.into_iter().map(|g| g[..d].to_vec()).collect();
        let c = Cone::from_generators_i64(d, &gens).unwrap();
        prop_assert!(c.dual().dual().same_as(&c));
        for g in &gens {
            prop_assert!(c.contains_int(g, false).unwrap());
        }
    }

    #[test]
    fn series_ring_laws((a, b, c) in three_series()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero_stored());
    }

    #[test]
    fn valuation_axioms((a, b, _) in three_series()) {
        let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
        let vab = a.mul(&b).unwrap().valuation().unwrap();
        match (&va, &vb) {
            (ExtQ::Finite(x), ExtQ::Finite(y)) => prop_assert_eq!(vab, ExtQ::Finite(x + y)),
            _ => prop_assert_eq!(vab, ExtQ::Infinity),
        }
        let vsum = a.add(&b).unwrap().valuation().unwrap();
        prop_assert!(vsum >= va.clone().min(vb.clone()));
        if va != vb {
            prop_assert_eq!(vsum, va.min(vb));
        }
    }

    #[test]
    fn split_and_roots_reassemble((a, _, _) in three_series()) {
        let (plus, minus) = a.split_pm();
        prop_assert_eq!(plus.add(&minus).unwrap(), a.clone());
        let p = a.field().p();
        prop_assert_eq!(a.pth_root_series().pow(p).unwrap(), a.clone());
        prop_assert_eq!(a.pow(p).unwrap().pth_root_series(), a.clone());
        prop_assert_eq!(a.frobenius(), a.pow(p).unwrap());
    }

    #[test]
    fn phi_is_a_ring_homomorphism((a, b, _) in three_series(), n in prop::collection::vec(-3i64..=3, 2), t in prop::collection::vec(1u64..1000, 2)) {
        let f = a.field().clone();
        let d = a.dim();
        let n = n[..d].to_vec();
        prop_assume!(n.iter().any(|x| *x != 0));
        let theta: Vec<_> = t[..d].iter().map(|v| f.from_value(1 + v % (f.q() - 1).max(1))).collect();
        prop_assume!(theta.iter().all(|x| !x.is_zero()));
        let spec = SubstSpec::new(n, theta).unwrap();
        let im = |s: &GPSeries| phi(s, &spec).unwrap().image;
        prop_assert_eq!(im(&a.add(&b).unwrap()), im(&a).add(&im(&b)).unwrap());
        prop_assert_eq!(im(&a.mul(&b).unwrap()), im(&a).mul(&im(&b)).unwrap());
    }

    #[test]
    fn bivariate_factors_multiply_back(p in prop::sample::select(vec![2u64, 3, 5]), g in prop::collection::vec((-2i64..=2, 0u64..5), 1..4), h in prop::collection::vec((-2i64..=2, 0u64..5), 1..4)) {
        let f = Field::prime(p).unwrap();
        // monic in y of degrees |g| and |h|
        let build = |cs: &[(i64, u64)]| {
            let k = cs.len() as u32;
            let mut poly = LaurentPoly::monomial(&f.one(), vec![0], k);
            for (i, (e, c)) in cs.iter().enumerate() {
                poly = poly.add(&LaurentPoly::monomial(&f.from_value(c % p), vec![*e], i as u32));
            }
            poly
        };
        let prod = build(&g).mul(&build(&h));
        let fac = factor_laurent(&prod, false).unwrap();
        prop_assert_eq!(fac.expand(), prod);
        prop_assert!(fac.factors.len() >= 2 || fac.factors.iter().any(|(_, m)| *m >= 2));
    }

    #[test]
    fn unimodular_images_stay_balanced(terms in prop::collection::vec((prop::collection::vec(-3i64..=3, 2), -6i64..=6), 2..=7), shear in -3i64..=3, swap in any::<bool>()) {
        let f = ValuedPoly::new(2, terms.into_iter().map(|(e, v)| (e, q(v)))).unwrap();
        prop_assume!(f.len() >= 2);
        let t = trop_hypersurface(&f).unwrap();
        let m = if swap { vec![vec![shear, 1], vec![1, 0]] } else { vec![vec![1, shear], vec![0, 1]] };
        let img = t.transform(&m).unwrap();
        prop_assert_eq!(img.cells.len(), t.cells.len());
        prop_assert!(img.unbalanced_ridges().unwrap().is_empty());
        // x ∈ trop(f) iff M·x ∈ image
        for x in [[1i64, 0], [0, 1], [-2, 5], [3, 3]] {
            let y: Vec<Q> = m.iter().map(|r| q(r[0] * x[0] + r[1] * x[1])).collect();
            prop_assert_eq!(t.contains(&to_q_i64(&x)), img.contains(&y));
        }
    }

    #[test]
    fn puiseux_recovers_polynomial_roots(p in prop::sample::select(vec![2u64, 3, 5]), a in prop::collection::vec(0u64..5, 1..4), b in prop::collection::vec(0u64..5, 1..4)) {
        let f = Field::prime(p).unwrap();
        let o = WeightOrder::lex(1);
        let series = |cs: &[u64]| GPSeries::exact(&f, &o, cs.iter().enumerate().map(|(i, c)| (ExpVec::from_ints(&[i as i64]), f.from_value(c % p)))).unwrap();
        let (sa, sb) = (series(&a), series(&b));
        prop_assume!(sa != sb);
        let lin = |cs: &[u64]| {
            let mut poly = LaurentPoly::y(&f, 1);
            for (i, c) in cs.iter().enumerate() {
                poly = poly.sub(&LaurentPoly::monomial(&f.from_value(c % p), vec![i as i64], 0));
            }
            poly
        };
        let poly = lin(&a).mul(&lin(&b));
        let target = q(6);
        let e = newton_puiseux(&poly, &o, &target, 20).unwrap();
        prop_assert!(e.is_complete());
        let got: Vec<GPSeries> = e.roots.iter().map(|r| r.root.as_exact()).collect();
        for s in [&sa, &sb] {
            let t = s.truncate(&ExtQ::Finite(target.clone())).as_exact();
            prop_assert!(got.contains(&t), "{} not among the roots", t);
        }
        let count: usize = e.roots.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(count, 2);
    }
}

#[test]
fn snf_example_matches_hand_computation() {
    let m = vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]];
    let s = snf(&m);
    assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    assert!(s.d.iter().flatten().all(|x| !x.is_negative()));
    assert!(!s.d[0][0].is_zero());
}
