use super::*;
use crate::ff::Field;
use crate::order::Cone;

fn degrees(r: &Factorization) -> Vec<u32> {
    r.degrees()
}

#[test]
fn scan_finds_even_directions() {
    let f3 = Field::prime(3).unwrap();
    let f = LaurentPoly::parse(&f3, 1, "y^2 - t").unwrap();
    let rep = bertini_scan(&f, &Cone::positive_orthant(1), &ScanOptions::default()).unwrap();
    assert_eq!(rep.bad, vec![vec![2], vec![4], vec![6]]);
    assert_eq!(rep.fit.lattices.len(), 1);
    assert_eq!(rep.fit.lattices[0].lattice.index(), 2.into());
    assert!(rep.fit.uncovered.is_empty());
    for d in rep.directions.iter().filter(|d| !d.irreducible) {
        let prod = d.factors.iter().fold(LaurentPoly::constant(&f3.one(), 1), |a, (g, m)| a.mul(&g.pow(*m as u32)));
        assert_eq!(prod, LaurentPoly::parse(&f3, 1, &format!("y^2 - t^{}", d.n[0])).unwrap());
    }
    // excluding the fitted lattice leaves nothing bad
    let opts = ScanOptions { exclude: vec![rep.fit.lattices[0].lattice.clone()], ..ScanOptions::default() };
    let again = bertini_scan(&f, &Cone::positive_orthant(1), &opts).unwrap();
    assert!(again.bad.is_empty());
    assert_eq!(again.directions.len(), 3);
}

#[test]
fn scan_linear_and_artin_schreier() {
    let f3 = Field::prime(3).unwrap();
    let f = LaurentPoly::parse(&f3, 2, "y - t1*t2").unwrap();
    let rep = bertini_scan(&f, &Cone::positive_orthant(2), &ScanOptions { bound: 3, ..ScanOptions::default() }).unwrap();
    assert!(rep.bad.is_empty());

    let f2 = Field::prime(2).unwrap();
    let f = LaurentPoly::parse(&f2, 2, "y^2 + y + t1^-1*t2^-1").unwrap();
    let opts = ScanOptions { bound: 5, theta: ThetaPolicy::Exhaustive { extension: 2 }, ..ScanOptions::default() };
    let rep = bertini_scan(&f, &Cone::positive_orthant(2), &opts).unwrap();
    assert_eq!(rep.directions.len(), 25);
    assert_eq!(rep.irreducible_count(), 25);
    assert!(rep.directions.iter().all(|d| d.thetas_tested == 9));
}

#[test]
fn random_theta_is_reproducible() {
    let f5 = Field::prime(5).unwrap();
    let f = LaurentPoly::parse(&f5, 2, "y^2 - t1*t2").unwrap();
    let opts = ScanOptions { bound: 3, theta: ThetaPolicy::Random { seed: 7 }, ..ScanOptions::default() };
    let a = bertini_scan(&f, &Cone::positive_orthant(2), &opts).unwrap();
    let b = bertini_scan(&f, &Cone::positive_orthant(2), &opts).unwrap();
    assert_eq!(a.bad, b.bad);
    // y² − θ x^{n₁+n₂} splits exactly when n₁ + n₂ is even (θ is a square over 𝔽₂₅)
    for d in &a.directions {
        assert_eq!(d.irreducible, (d.n[0] + d.n[1]) % 2 == 1);
    }
}

#[test]
fn lattice_fits() {
    let fit = fit_bad_lattices(&[vec![2], vec![4], vec![6]], 1);
    assert_eq!(fit.lattices.len(), 1);
    assert_eq!(fit.lattices[0].character, (vec![1], 2));
    assert!(fit_bad_lattices(&[], 2).lattices.is_empty());
    let bad = vec![vec![2, 0], vec![0, 2], vec![2, 2]];
    let fit = fit_bad_lattices(&bad, 2);
    assert!(fit.uncovered.is_empty());
    for l in &fit.lattices {
        assert!(l.covers.iter().all(|n| l.lattice.contains_i64(n)));
        assert_eq!(l.lattice.index(), 2.into());
    }
    // 3ℤ would cover both but contains a good point; no other lattice covers two
    let fit = fit_bad_lattices_with(&[vec![3], vec![6]], &[vec![9]], 1);
    assert!(fit.lattices.is_empty());
    assert_eq!(fit.uncovered, vec![vec![3], vec![6]]);
}

#[test]
fn pb_examples() {
    let f3 = Field::prime(3).unwrap();
    let f = LaurentPoly::parse(&f3, 1, "y^2 - t").unwrap();
    let w = pb_falsify(&f, 2).unwrap().unwrap();
    assert_eq!(w.matrix, vec![vec![2]]);
    assert_eq!(degrees(&w.factorization), vec![1, 1]);
    assert_eq!(w.factorization.expand(), LaurentPoly::parse(&f3, 1, "y^2 - t^2").unwrap());

    let f = LaurentPoly::parse(&f3, 2, "y - t1*t2").unwrap();
    assert!(pb_falsify(&f, 3).unwrap().is_none());

    let f2 = Field::prime(2).unwrap();
    let f = LaurentPoly::parse(&f2, 2, "y^2 + y + t1^-1*t2^-1").unwrap();
    assert!(pb_falsify(&f, 4).unwrap().is_none());
}

#[test]
fn pb_reducible_pullback_of_a_cone() {
    // x² − y·z² in 𝕜[x^±, y^±][z]
    let f3 = Field::prime(3).unwrap();
    let f = LaurentPoly::parse_vars(&f3, &["x", "y"], "z", "x^2 - y*z^2").unwrap();
    let w = pb_falsify(&f, 3).unwrap().unwrap();
    assert_eq!(w.matrix, vec![vec![1, 0], vec![0, 2]]);
    let monic = f.normalize_monic().unwrap();
    assert_eq!(w.pullback, crate::subst::pullback_isogeny(&monic, &w.matrix).unwrap());
    assert_eq!(w.factorization.extension_degree, 1);
    let shown: Vec<String> = w.factorization.factors.iter().map(|(g, _)| g.to_string_vars(&["x", "y"], "z")).collect();
    assert_eq!(shown.len(), 2);
    let a = LaurentPoly::parse_vars(&f3, &["x", "y"], "z", "x - y*z").unwrap();
    let b = LaurentPoly::parse_vars(&f3, &["x", "y"], "z", "x + y*z").unwrap();
    let pulled = crate::subst::pullback_isogeny(&f, &w.matrix).unwrap();
    assert_eq!(a.mul(&b), pulled);
}
