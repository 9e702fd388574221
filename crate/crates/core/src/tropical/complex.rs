use itertools::Itertools;
use num_integer::Integer;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{Polyhedron, TropicalError};
use crate::linalg::{det, dot, nullspace, primitive_int, rank, to_q, to_q_i64, Q};
use crate::order::snf;

/// Two top cells meeting in a common face of codimension one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    /// Positions in [`PolyhedralComplex::top`].
    pub a: usize,
    pub b: usize,
    /// Index of the shared ridge in `cells`.
    pub ridge: usize,
}

#[derive(Clone, Debug)]
pub struct PolyhedralComplex {
    pub ambient: usize,
    /// All cells, closed under taking faces, sorted by dimension then vertices.
    pub cells: Vec<Polyhedron>,
    /// Indices into `cells` of the cells of top dimension.
    pub top: Vec<usize>,
    /// Facet adjacency graph on `top`.
    pub adjacency: Vec<Adjacency>,
    /// `None` for the empty complex.
    pub dim: Option<usize>,
    /// Dimension of the common lineality space.
    pub lineality_dim: usize,
    /// Every cell is a face of a top cell.
    pub pure: bool,
    /// Multiplicities of the top cells (tropical hypersurfaces only), parallel to `top`.
    pub weights: Option<Vec<u64>>,
    pub notes: Vec<String>,
}

impl PolyhedralComplex {
    pub fn empty(n: usize) -> PolyhedralComplex {
        PolyhedralComplex {
            ambient: n,
            cells: Vec::new(),
            top: Vec::new(),
            adjacency: Vec::new(),
            dim: None,
            lineality_dim: n,
            pure: true,
            weights: None,
            notes: Vec::new(),
        }
    }

    /// Complex generated by `cells` and all their faces. The cells must meet face to face.
    pub fn from_cells(n: usize, cells: Vec<Polyhedron>) -> Result<PolyhedralComplex, TropicalError> {
        if let Some(c) = cells.iter().find(|c| c.ambient_dim() != n) {
            return Err(TropicalError::DimensionMismatch { expected: n, found: c.ambient_dim() });
        }
        let mut all: Vec<Polyhedron> = Vec::new();
        let mut stack = cells;
        while let Some(c) = stack.pop() {
            if all.iter().any(|o| o.same_as(&c)) {
                continue;
            }
            stack.extend(c.facets());
            all.push(c);
        }
        Ok(Self::assemble(n, all, None))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Sorts the cells and derives top cells, adjacency, purity and lineality.
    /// `weights` pairs cells (by their index in `cells` as given) with multiplicities.
    pub(crate) fn assemble(n: usize, cells: Vec<Polyhedron>, weights: Option<Vec<(usize, u64)>>) -> PolyhedralComplex {
        if cells.is_empty() {
            return Self::empty(n);
        }
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by_cached_key(|&i| cells[i].sort_key());
        let mut pos = vec![0usize; cells.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let cells: Vec<Polyhedron> = order.iter().map(|&i| cells[i].clone()).collect();
        let d = cells.iter().map(|c| c.dim()).max().expect("nonempty");
        let top: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].dim() == d).collect();
        let pure = cells.iter().all(|c| c.dim() == d || top.iter().any(|&t| c.is_subset_of(&cells[t])));
        let mut adjacency = Vec::new();
        for (a, b) in (0..top.len()).tuple_combinations() {
            let Some(m) = cells[top[a]].intersect(&cells[top[b]]) else { continue };
            if m.dim() + 1 != d {
                continue;
            }
            if let Some(ridge) = cells.iter().position(|c| c.same_as(&m)) {
                adjacency.push(Adjacency { a, b, ridge });
            }
        }
        let weights = weights.map(|ws| {
            let mut out = vec![1u64; top.len()];
            for (old, w) in ws {
                if let Some(t) = top.iter().position(|&i| i == pos[old]) {
                    out[t] = w;
                }
            }
            out
        });
        // common lineality: intersect the lineality spaces of all cells
        let mut normals: Vec<Vec<Q>> = Vec::new();
        for c in &cells {
            normals.extend(nullspace(c.lineality(), n));
        }
        let lineality_dim = n - rank(&normals, n);
        PolyhedralComplex { ambient: n, cells, top, adjacency, dim: Some(d), lineality_dim, pure, weights, notes: Vec::new() }
    }

    pub fn top_cells(&self) -> impl Iterator<Item = &Polyhedron> + '_ {
        self.top.iter().map(|&i| &self.cells[i])
    }

    /// Cells of dimension `k`.
    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = &Polyhedron> + '_ {
        self.cells.iter().filter(move |c| c.dim() == k)
    }

    /// Whether `x` lies in the support (of a pure complex).
    pub fn contains(&self, x: &[Q]) -> bool {
        self.top_cells().any(|c| c.contains(x))
    }

    /// Image under a unimodular change of coordinates `x ↦ M·x`.
    pub fn transform(&self, m: &[Vec<i64>]) -> Result<PolyhedralComplex, TropicalError> {
        if m.len() != self.ambient || m.iter().any(|r| r.len() != self.ambient) {
            return Err(TropicalError::DimensionMismatch { expected: self.ambient, found: m.len() });
        }
        let mq: Vec<Vec<Q>> = m.iter().map(|r| to_q_i64(r)).collect();
        if !det(&mq).abs().is_one() {
            return Err(TropicalError::NotUnimodular);
        }
        let mut out = self.clone();
        out.cells = self.cells.iter().map(|c| c.map_linear(&mq)).collect();
        Ok(out)
    }

    /// Checks the balancing condition at every ridge; needs weights.
    /// Returns the ridges (indices into `cells`) where it fails.
    pub fn unbalanced_ridges(&self) -> Result<Vec<usize>, TropicalError> {
        let Some(ws) = &self.weights else {
            return Err(TropicalError::InvalidArgument("balancing needs top-cell multiplicities".into()));
        };
        let Some(d) = self.dim else { return Ok(Vec::new()) };
        if d == 0 {
            return Ok(Vec::new());
        }
        let n = self.ambient;
        let mut bad = Vec::new();
        for (ri, r) in self.cells.iter().enumerate() {
            if r.dim() + 1 != d {
                continue;
            }
            let lin_r = r.linear_span();
            let mut sum = vec![Q::zero(); n];
            for (t, &ci) in self.top.iter().enumerate() {
                let f = &self.cells[ci];
                if !r.is_subset_of(f) {
                    continue;
                }
                let v = primitive_normal(f, r);
                for (s, x) in sum.iter_mut().zip(&v) {
                    *s += x * Q::from_integer(BigInt::from(ws[t]));
                }
            }
            let normals = nullspace(&lin_r, n);
            if normals.iter().any(|a| !dot(a, &sum).is_zero()) {
                bad.push(ri);
            }
        }
        Ok(bad)
    }
}

/// Integer basis of `ℤⁿ ∩ span(basis)`.
fn saturated_lattice(basis: &[Vec<Q>], n: usize) -> Vec<Vec<BigInt>> {
    let normals: Vec<Vec<BigInt>> = nullspace(basis, n).iter().map(|v| primitive_int(v)).collect();
    if normals.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    }
    let s = snf(&normals);
    let r = s.diagonal().iter().filter(|x| !x.is_zero()).count();
    (r..n).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// The primitive generator of `(ℤⁿ ∩ lin F) / (ℤⁿ ∩ lin R)` pointing from `R` into `F`.
pub(crate) fn primitive_normal(f: &Polyhedron, r: &Polyhedron) -> Vec<Q> {
    let n = f.ambient_dim();
    let lin_f = f.linear_span();
    let lin_r = r.linear_span();
    let basis = saturated_lattice(&lin_f, n);
    // a functional on lin F that vanishes on lin R
    let mut rows = lin_r.clone();
    rows.extend(nullspace(&lin_f, n));
    let a = nullspace(&rows, n).pop().expect("ridge has codimension one");
    let vals: Vec<Q> = basis.iter().map(|b| dot(&a, &to_q(b))).collect();
    let den = vals.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: Vec<BigInt> = vals.iter().map(|v| (v * Q::from_integer(den.clone())).to_integer()).collect();
    // Σ cᵢ·kᵢ = gcd
    let mut g = BigInt::zero();
    let mut coef: Vec<BigInt> = vec![BigInt::zero(); ints.len()];
    for (i, k) in ints.iter().enumerate() {
        let e = g.extended_gcd(k);
        for c in coef.iter_mut().take(i) {
            *c *= &e.x;
        }
        coef[i] = e.y;
        g = e.gcd;
    }
    let mut v = vec![Q::zero(); n];
    for (c, b) in coef.iter().zip(&basis) {
        for (x, y) in v.iter_mut().zip(b) {
            *x += Q::from_integer(c * y);
        }
    }
    let inward: Vec<Q> = f.relative_interior_point().iter().zip(r.relative_interior_point()).map(|(x, y)| x - y).collect();
    if dot(&a, &inward).is_negative() {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    v
}

/// Whether every choice of `k − 1` closed top cells leaves the rest connected through
/// ridges that avoid the removed cells.
pub fn connectivity_through_codim1(sigma: &PolyhedralComplex, k: usize) -> Result<bool, TropicalError> {
    if k == 0 {
        return Err(TropicalError::InvalidArgument("k must be at least 1".into()));
    }
    if !sigma.pure {
        return Err(TropicalError::NotPure);
    }
    let t = sigma.top.len();
    if t > super::MAX_FACETS || k > super::MAX_K {
        return Err(TropicalError::ResourceBound { facets: t, k });
    }
    if k - 1 > t {
        return Ok(true);
    }
    // ridge ⊆ top cell, computed once
    let inside: Vec<Vec<bool>> = sigma
        .adjacency
        .iter()
        .map(|e| sigma.top.iter().map(|&c| sigma.cells[e.ridge].is_subset_of(&sigma.cells[c])).collect())
        .collect();
    let subsets: Vec<Vec<usize>> = (0..t).combinations(k - 1).collect();
    Ok(subsets.par_iter().all(|removed| {
        let mut uf: Vec<usize> = (0..t).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        for (e, ins) in sigma.adjacency.iter().zip(&inside) {
            if removed.contains(&e.a) || removed.contains(&e.b) || removed.iter().any(|&r| ins[r]) {
                continue;
            }
            let (x, y) = (find(&mut uf, e.a), find(&mut uf, e.b));
            uf[x] = y;
        }
        (0..t).filter(|i| !removed.contains(i)).map(|i| find(&mut uf, i)).unique().count() <= 1
    }))
}

/// `Σ ∩ H` for `H = {a·x = b}`, and whether every cell meeting `H` crosses it properly.
pub fn transverse_intersect(sigma: &PolyhedralComplex, a: &[Q], b: &Q) -> Result<(PolyhedralComplex, bool), TropicalError> {
    if a.len() != sigma.ambient {
        return Err(TropicalError::DimensionMismatch { expected: sigma.ambient, found: a.len() });
    }
    if a.iter().all(|x| x.is_zero()) {
        return Err(TropicalError::InvalidArgument("hyperplane normal is zero".into()));
    }
    let mut transverse = true;
    let mut cells: Vec<Polyhedron> = Vec::new();
    for c in &sigma.cells {
        let Some(m) = c.intersect_hyperplane(a, b) else { continue };
        // meeting H, the cell must not lie inside it; then the dimension drops by one
        if m.dim() == c.dim() {
            transverse = false;
        }
        if !cells.iter().any(|o| o.same_as(&m)) {
            cells.push(m);
        }
    }
    Ok((PolyhedralComplex::assemble(sigma.ambient, cells, None), transverse))
}
