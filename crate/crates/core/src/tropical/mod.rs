//! Tropical hypersurfaces (min convention), hyperplane sections and connectivity through
//! codimension one.
mod complex;
mod polyhedron;

pub use complex::{connectivity_through_codim1, transverse_intersect, Adjacency, PolyhedralComplex};
pub use polyhedron::Polyhedron;

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::linalg::{dot, parse_q, q, to_q_i64, Q};
use crate::series::{ExtQ, GPSeries, SeriesError};

/// Exhaustive removal refuses beyond these sizes.
pub const MAX_FACETS: usize = 24;
pub const MAX_K: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TropicalError {
    #[error("complex is not pure-dimensional")]
    NotPure,
    #[error("exhaustive removal over {facets} facets with k = {k} exceeds the desk bound (24 facets, k ≤ 3)")]
    ResourceBound { facets: usize, k: usize },
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Order(#[from] crate::order::OrderError),
}

/// A Laurent polynomial seen only through its exponents and coefficient valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, Q>,
}

impl ValuedPoly {
    /// Repeated exponents keep the smaller valuation.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (Vec<i64>, Q)>) -> Result<ValuedPoly, TropicalError> {
        let mut map: BTreeMap<Vec<i64>, Q> = BTreeMap::new();
        for (e, v) in terms {
            if e.len() != n {
                return Err(TropicalError::DimensionMismatch { expected: n, found: e.len() });
            }
            let slot = map.entry(e).or_insert_with(|| v.clone());
            if v < *slot {
                *slot = v;
            }
        }
        Ok(ValuedPoly { n, terms: map })
    }

    pub fn from_i64(n: usize, terms: &[(&[i64], i64)]) -> Result<ValuedPoly, TropicalError> {
        Self::new(n, terms.iter().map(|(e, v)| (e.to_vec(), q(*v))))
    }

    /// Valuations `ν(c_u)` of series coefficients; zero coefficients are dropped.
    pub fn from_series<'a>(n: usize, terms: impl IntoIterator<Item = (Vec<i64>, &'a GPSeries)>) -> Result<ValuedPoly, TropicalError> {
        let mut out = Vec::new();
        for (e, c) in terms {
            if let ExtQ::Finite(v) = c.valuation()? {
                out.push((e, v));
            }
        }
        Self::new(n, out)
    }

    /// Parses `"x1 + 1*x2^2 + 3/2"`-style text: each term is `[val*]monomial`, the
    /// leading rational (default 0) being the coefficient valuation.
    pub fn parse(n: usize, s: &str) -> Result<ValuedPoly, TropicalError> {
        let bad = |t: &str| TropicalError::InvalidArgument(format!("cannot parse term `{t}`"));
        let mut terms = Vec::new();
        for t in s.split('+').map(str::trim) {
            let mut e = vec![0i64; n];
            let mut v = Q::zero();
            for (i, f) in t.split('*').map(str::trim).enumerate() {
                if let Some(rest) = f.strip_prefix('x') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((a, b)) => (a, b.trim().parse::<i64>().map_err(|_| bad(t))?),
                        None => (rest, 1),
                    };
                    let idx: usize = if idx.is_empty() && n == 1 { 1 } else { idx.parse().map_err(|_| bad(t))? };
                    if idx == 0 || idx > n {
                        return Err(bad(t));
                    }
                    e[idx - 1] += pow;
                } else if i == 0 {
                    v = parse_q(f).ok_or_else(|| bad(t))?;
                } else {
                    return Err(bad(t));
                }
            }
            terms.push((e, v));
        }
        Self::new(n, terms)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Q)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `min_u (val(c_u) + u·x)` and the exponents attaining it.
    pub fn tropical_value(&self, x: &[Q]) -> Option<(Q, Vec<Vec<i64>>)> {
        let vals: Vec<(Q, &Vec<i64>)> = self.terms.iter().map(|(u, v)| (v + dot(&to_q_i64(u), x), u)).collect();
        let m = vals.iter().map(|(v, _)| v).min()?.clone();
        let arg = vals.into_iter().filter(|(v, _)| *v == m).map(|(_, u)| u.clone()).collect();
        Some((m, arg))
    }
}

/// The region where exactly the terms in `s` (indices) can attain the minimum.
fn region(pts: &[(Vec<Q>, Q)], s: &[usize]) -> Result<Option<Polyhedron>, TropicalError> {
    let n = pts[0].0.len();
    let (u0, v0) = &pts[s[0]];
    let diff = |i: usize| -> (Vec<Q>, Q) {
        let (u, v) = &pts[i];
        (u.iter().zip(u0).map(|(a, b)| a - b).collect(), v0 - v)
    };
    let eqs: Vec<(Vec<Q>, Q)> = s[1..].iter().map(|&i| diff(i)).collect();
    let ineqs: Vec<(Vec<Q>, Q)> = (0..pts.len()).filter(|i| !s.contains(i)).map(diff).collect();
    Polyhedron::from_h(n, &ineqs, &eqs)
}

/// Lattice length of the segment through the collinear points `s`.
fn lattice_length(exps: &[&Vec<i64>]) -> u64 {
    let u0 = exps[0];
    let diffs: Vec<Vec<i64>> = exps.iter().map(|u| u.iter().zip(u0).map(|(a, b)| a - b).collect()).collect();
    let far = diffs.iter().find(|d| d.iter().any(|&x| x != 0)).expect("two distinct exponents");
    let g = far.iter().fold(0i64, |g, &x| g.gcd(&x));
    let prim: Vec<i64> = far.iter().map(|x| x / g).collect();
    let j = prim.iter().position(|&x| x != 0).expect("nonzero");
    let ks: Vec<i64> = diffs.iter().map(|d| d[j] / prim[j]).collect();
    (ks.iter().max().expect("nonempty") - ks.iter().min().expect("nonempty")) as u64
}

/// `trop(f) = {x : min_u (val(c_u) + u·x) is attained at least twice}`, with the
/// lattice lengths of the dual edges as multiplicities of the top cells.
pub fn trop_hypersurface(f: &ValuedPoly) -> Result<PolyhedralComplex, TropicalError> {
    let n = f.n;
    if f.len() < 2 {
        let mut e = PolyhedralComplex::empty(n);
        e.notes.push("MonomialInput: a monomial has empty tropical hypersurface".into());
        return Ok(e);
    }
    let pts: Vec<(Vec<Q>, Q)> = f.terms.iter().map(|(u, v)| (to_q_i64(u), v.clone())).collect();
    let exps: Vec<&Vec<i64>> = f.terms.keys().collect();
    let m = pts.len();
    let mut cells: Vec<Polyhedron> = Vec::new();
    let mut weights: Vec<(usize, u64)> = Vec::new();
    // depth-first over index sets; an empty region empties every superset
    let mut stack: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
    while let Some(s) = stack.pop() {
        let Some(p) = region(&pts, &s)? else { continue };
        let last = *s.last().expect("nonempty");
        for j in last + 1..m {
            let mut t = s.clone();
            t.push(j);
            stack.push(t);
        }
        if s.len() < 2 {
            continue;
        }
        // keep s only when it is the exact set of minimizers on the relative interior
        let x = p.relative_interior_point();
        let (_, arg) = f.tropical_value(&x).expect("nonempty");
        if arg.len() != s.len() {
            continue;
        }
        if p.dim() + 1 == n {
            let members: Vec<&Vec<i64>> = s.iter().map(|&i| exps[i]).collect();
            weights.push((cells.len(), lattice_length(&members)));
        }
        cells.push(p);
    }
    Ok(PolyhedralComplex::assemble(n, cells, Some(weights)))
}

#[cfg(test)]
mod tests;
