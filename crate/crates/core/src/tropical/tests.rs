use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::linalg::{nullspace, qf, solve};

fn qv(v: &[i64]) -> Vec<Q> {
    to_q_i64(v)
}

fn line() -> PolyhedralComplex {
    trop_hypersurface(&ValuedPoly::from_i64(2, &[(&[1, 0], 0), (&[0, 1], 0), (&[0, 0], 0)]).unwrap()).unwrap()
}

fn standard_plane() -> PolyhedralComplex {
    let gens = [qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1]), qv(&[-1, -1, -1])];
    let origin = qv(&[0, 0, 0]);
    let cones = (0..4)
        .tuple_combinations()
        .map(|(i, j)| Polyhedron::from_v(3, &[origin.clone()], &[gens[i].clone(), gens[j].clone()], &[]).unwrap())
        .collect();
    PolyhedralComplex::from_cells(3, cones).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_terms: usize) -> ValuedPoly {
    loop {
        let k = rng.gen_range(2..=max_terms);
        let terms: Vec<(Vec<i64>, Q)> =
            (0..k).map(|_| ((0..n).map(|_| rng.gen_range(-3..=3)).collect(), qf(rng.gen_range(-6..=6), rng.gen_range(1..=3)))).collect();
        let f = ValuedPoly::new(n, terms).unwrap();
        if f.len() >= 2 {
            return f;
        }
    }
}

#[test]
fn tropical_line() {
    let l = line();
    assert_eq!(l.dim, Some(1));
    let verts: Vec<&Polyhedron> = l.cells_of_dim(0).collect();
    assert_eq!(verts.len(), 1);
    assert_eq!(verts[0].vertices(), &[qv(&[0, 0])]);
    let mut rays: Vec<Vec<Q>> = l.top_cells().map(|c| c.rays()[0].clone()).collect();
    rays.sort();
    // min(X, Y, 0) twice: X = Y ≤ 0, X = 0 ≤ Y, Y = 0 ≤ X
    assert_eq!(rays, vec![qv(&[-1, -1]), qv(&[0, 1]), qv(&[1, 0])]);
    assert_eq!(l.weights, Some(vec![1, 1, 1]));
    assert!(l.pure);
    assert_eq!(l.lineality_dim, 0);
    assert_eq!(l.adjacency.len(), 3);
    assert!(l.unbalanced_ridges().unwrap().is_empty());
}

#[test]
fn shifted_line_and_monomial() {
    let f = ValuedPoly::parse(2, "x1 + x2 + 1").unwrap();
    let l = trop_hypersurface(&f).unwrap();
    assert_eq!(l.cells_of_dim(0).next().unwrap().vertices(), &[qv(&[1, 1])]);
    let m = trop_hypersurface(&ValuedPoly::parse(2, "3*x1^2*x2").unwrap()).unwrap();
    assert!(m.is_empty());
    assert!(m.notes[0].starts_with("MonomialInput"));
}

#[test]
fn weights_are_lattice_lengths() {
    // x² + 1: trop is the point x = 0 with multiplicity 2
    let f = ValuedPoly::parse(1, "x^2 + 0").unwrap();
    let t = trop_hypersurface(&f).unwrap();
    assert_eq!(t.weights, Some(vec![2]));
    // x² + y² + 1: three rays of weight 2
    let f = ValuedPoly::from_i64(2, &[(&[2, 0], 0), (&[0, 2], 0), (&[0, 0], 0)]).unwrap();
    let t = trop_hypersurface(&f).unwrap();
    assert_eq!(t.weights, Some(vec![2, 2, 2]));
    assert!(t.unbalanced_ridges().unwrap().is_empty());
    // a lineality direction: x1·x2 + 1 only depends on x1 + x2
    let f = ValuedPoly::parse(2, "x1*x2 + 0").unwrap();
    let t = trop_hypersurface(&f).unwrap();
    assert_eq!(t.lineality_dim, 1);
    assert_eq!(t.top.len(), 1);
}

#[test]
fn hyperplane_sections() {
    let l = line();
    let (p, tr) = transverse_intersect(&l, &qv(&[1, 0]), &q(1)).unwrap();
    assert!(tr);
    assert_eq!(p.cells.len(), 1);
    assert_eq!(p.cells[0].vertices(), &[qv(&[1, 0])]);
    assert_eq!(p.dim, Some(0));
    // through the ray (−1,−1)
    let (_, tr) = transverse_intersect(&l, &qv(&[1, -1]), &q(0)).unwrap();
    assert!(!tr);
    // through the vertex only
    let (p, tr) = transverse_intersect(&l, &qv(&[1, 1]), &q(0)).unwrap();
    assert!(!tr);
    assert_eq!(p.cells.len(), 1);
    let (e, tr) = transverse_intersect(&PolyhedralComplex::empty(2), &qv(&[1, 0]), &q(1)).unwrap();
    assert!(tr && e.is_empty());
}

#[test]
fn connectivity_examples() {
    assert!(connectivity_through_codim1(&line(), 1).unwrap());
    // a removed closed ray takes the vertex with it
    assert!(!connectivity_through_codim1(&line(), 2).unwrap());
    let segs = vec![
        Polyhedron::from_v(2, &[qv(&[0, 0]), qv(&[1, 0])], &[], &[]).unwrap(),
        Polyhedron::from_v(2, &[qv(&[0, 2]), qv(&[1, 2])], &[], &[]).unwrap(),
    ];
    let two = PolyhedralComplex::from_cells(2, segs).unwrap();
    assert!(!connectivity_through_codim1(&two, 1).unwrap());
    let plane = standard_plane();
    assert_eq!(plane.top.len(), 6);
    assert_eq!(plane.cells.len(), 11);
    assert_eq!(plane.adjacency.len(), 12);
    assert!(connectivity_through_codim1(&plane, 2).unwrap());
    // removing the cones on {e1,e2} and {e3,−𝟙} kills every ray
    assert!(!connectivity_through_codim1(&plane, 3).unwrap());
    assert_eq!(connectivity_through_codim1(&plane, 4).unwrap_err(), TropicalError::ResourceBound { facets: 6, k: 4 });
    let mut imp = two.clone();
    imp.pure = false;
    assert_eq!(connectivity_through_codim1(&imp, 1).unwrap_err(), TropicalError::NotPure);
}

#[test]
fn standard_plane_is_a_tropical_hypersurface() {
    let f = ValuedPoly::parse(3, "x1 + x2 + x3 + 0").unwrap();
    let t = trop_hypersurface(&f).unwrap();
    let plane = standard_plane();
    assert_eq!(t.top.len(), 6);
    assert!(t.top_cells().all(|c| plane.top_cells().any(|d| d.same_as(c))));
    assert!(t.unbalanced_ridges().unwrap().is_empty());
}

#[test]
fn unimodular_transform() {
    let l = line();
    let m = l.transform(&[vec![1, 1], vec![0, 1]]).unwrap();
    let mut rays: Vec<Vec<Q>> = m.top_cells().map(|c| c.rays()[0].clone()).collect();
    rays.sort();
    assert_eq!(rays, vec![qv(&[-2, -1]), qv(&[1, 0]), qv(&[1, 1])]);
    assert!(m.unbalanced_ridges().unwrap().is_empty());
    assert_eq!(l.transform(&[vec![2, 0], vec![0, 1]]).unwrap_err(), TropicalError::NotUnimodular);
}

#[test]
fn series_adapter() {
    use crate::ff::Field;
    use crate::order::{ExpVec, WeightOrder};
    let f2 = Field::prime(2).unwrap();
    let o = WeightOrder::lex(1);
    let t = |k: i64| GPSeries::monomial(&f2.one(), &ExpVec::from_ints(&[k]), &o);
    let c1 = t(0);
    let c2 = t(1);
    let zero = GPSeries::zero(&f2, &o);
    let f = ValuedPoly::from_series(2, [(vec![1, 0], &c1), (vec![0, 1], &c1), (vec![0, 0], &c2), (vec![1, 1], &zero)]).unwrap();
    assert_eq!(f, ValuedPoly::parse(2, "x1 + x2 + 1").unwrap());
}

/// Lower facets of the lifted points by brute force over affinely independent triples:
/// each gives the trop vertex `−a` where `z = a·u + c` is the supporting plane.
fn lower_hull_vertices(f: &ValuedPoly) -> Vec<Vec<Q>> {
    let pts: Vec<(Vec<Q>, Q)> = f.terms().map(|(u, v)| (to_q_i64(u), v.clone())).collect();
    let mut out: Vec<Vec<Q>> = Vec::new();
    for (i, j, k) in (0..pts.len()).tuple_combinations() {
        let rows: Vec<Vec<Q>> = [i, j, k].iter().map(|&r| vec![pts[r].0[0].clone(), pts[r].0[1].clone(), q(1)]).collect();
        let rhs: Vec<Q> = [i, j, k].iter().map(|&r| pts[r].1.clone()).collect();
        let Some(sol) = solve(&rows, &rhs) else { continue };
        let below = pts.iter().all(|(u, v)| *v >= &sol[0] * &u[0] + &sol[1] * &u[1] + &sol[2]);
        let x = vec![-sol[0].clone(), -sol[1].clone()];
        if below && !out.contains(&x) {
            out.push(x);
        }
    }
    out.sort();
    out
}

fn newton_polygon_is_2d(f: &ValuedPoly) -> bool {
    let u: Vec<Vec<Q>> = f.terms().map(|(u, _)| to_q_i64(u)).collect();
    let d: Vec<Vec<Q>> = u[1..].iter().map(|v| v.iter().zip(&u[0]).map(|(a, b)| a - b).collect()).collect();
    nullspace(&d, 2).is_empty()
}

#[test]
fn vertices_match_lower_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let f = random_poly(&mut rng, 2, 7);
        let t = trop_hypersurface(&f).unwrap();
        if !newton_polygon_is_2d(&f) {
            continue;
        }
        let mut got: Vec<Vec<Q>> = t.cells_of_dim(0).map(|c| c.vertices()[0].clone()).collect();
        got.sort();
        assert_eq!(got, lower_hull_vertices(&f), "{f:?}");
    }
}

#[test]
fn support_matches_grid_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let f = random_poly(&mut rng, 2, 6);
        let t = trop_hypersurface(&f).unwrap();
        for a in -16..=16 {
            for b in -16..=16 {
                let x = vec![qf(a, 4), qf(b, 4)];
                let vals: Vec<Q> = f.terms().map(|(u, v)| v + q(u[0]) * &x[0] + q(u[1]) * &x[1]).collect();
                let m = vals.iter().min().unwrap();
                let twice = vals.iter().filter(|v| *v == m).count() >= 2;
                assert_eq!(t.contains(&x), twice, "{f:?} at {x:?}");
            }
        }
    }
}

#[test]
fn random_hypersurfaces_are_balanced() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let f = random_poly(&mut rng, 2, 8);
        let t = trop_hypersurface(&f).unwrap();
        assert!(t.unbalanced_ridges().unwrap().is_empty(), "{f:?}");
        assert!(t.pure);
    }
    for _ in 0..4 {
        let f = random_poly(&mut rng, 3, 5);
        let t = trop_hypersurface(&f).unwrap();
        assert!(t.unbalanced_ridges().unwrap().is_empty(), "{f:?}");
    }
}

#[test]
fn random_quadric_surfaces_are_connected_through_codim1() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let exps: Vec<Vec<i64>> = (0..3).map(|_| 0..=2).multi_cartesian_product().filter(|e| e.iter().sum::<i64>() <= 2).collect();
    let mut checked = 0;
    while checked < 3 {
        let f = ValuedPoly::new(3, exps.iter().map(|e| (e.clone(), q(rng.gen_range(0..=4))))).unwrap();
        let t = trop_hypersurface(&f).unwrap();
        if t.top.len() > MAX_FACETS {
            continue;
        }
        assert_eq!((t.dim, t.lineality_dim), (Some(2), 0));
        assert!(connectivity_through_codim1(&t, 2).unwrap(), "{f:?}");
        checked += 1;
    }
}
