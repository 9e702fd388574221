use num_traits::{Signed, Zero};

use super::TropicalError;
use crate::linalg::{dot, q, rref, to_q, Q};
use crate::order::Cone;

/// A nonempty rational polyhedron in ℚⁿ.
///
/// Stored as its homogenization `{(x, s) : s ≥ 0, …} ⊂ ℚⁿ⁺¹` so that intersection,
/// containment and both descriptions come from [`Cone`].
#[derive(Clone, Debug)]
pub struct Polyhedron {
    n: usize,
    cone: Cone,
    vertices: Vec<Vec<Q>>,
    rays: Vec<Vec<Q>>,
    lineality: Vec<Vec<Q>>,
}

fn lift(v: &[Q], s: Q) -> Vec<Q> {
    let mut out = v.to_vec();
    out.push(s);
    out
}

fn check_len(n: usize, vs: &[&[Q]]) -> Result<(), TropicalError> {
    match vs.iter().find(|v| v.len() != n) {
        Some(v) => Err(TropicalError::DimensionMismatch { expected: n, found: v.len() }),
        None => Ok(()),
    }
}

impl Polyhedron {
    /// `None` when the homogenized cone has no generator with `s > 0`, i.e. the polyhedron is empty.
    fn from_cone(n: usize, cone: Cone) -> Option<Polyhedron> {
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in cone.rays() {
            let r = to_q(r);
            let s = r[n].clone();
            if s.is_positive() {
                vertices.push(r[..n].iter().map(|x| x / &s).collect::<Vec<Q>>());
            } else {
                rays.push(r[..n].to_vec());
            }
        }
        if vertices.is_empty() {
            return None;
        }
        let lineality: Vec<Vec<Q>> = cone.lineality().iter().map(|l| to_q(&l[..n])).collect();
        vertices.sort();
        rays.sort();
        Some(Polyhedron { n, cone, vertices, rays, lineality })
    }

    /// `{x : a·x ≥ b for (a, b) in ineqs, a·x = b for (a, b) in eqs}`; `None` when empty.
    pub fn from_h(n: usize, ineqs: &[(Vec<Q>, Q)], eqs: &[(Vec<Q>, Q)]) -> Result<Option<Polyhedron>, TropicalError> {
        check_len(n, &ineqs.iter().chain(eqs).map(|(a, _)| a.as_slice()).collect::<Vec<_>>())?;
        let mut hs: Vec<Vec<Q>> = ineqs.iter().map(|(a, b)| lift(a, -b.clone())).collect();
        hs.push(lift(&vec![Q::zero(); n], q(1)));
        let es: Vec<Vec<Q>> = eqs.iter().map(|(a, b)| lift(a, -b.clone())).collect();
        Ok(Self::from_cone(n, Cone::from_halfspaces(n + 1, &hs, &es)?))
    }

    /// `conv(vertices) + cone(rays) + span(lineality)`.
    pub fn from_v(n: usize, vertices: &[Vec<Q>], rays: &[Vec<Q>], lineality: &[Vec<Q>]) -> Result<Polyhedron, TropicalError> {
        if vertices.is_empty() {
            return Err(TropicalError::InvalidArgument("a polyhedron needs at least one vertex".into()));
        }
        let all: Vec<&[Q]> = vertices.iter().chain(rays).chain(lineality).map(|v| v.as_slice()).collect();
        check_len(n, &all)?;
        let mut gens: Vec<Vec<Q>> = vertices.iter().map(|v| lift(v, q(1))).collect();
        gens.extend(rays.iter().map(|r| lift(r, Q::zero())));
        for l in lineality {
            gens.push(lift(l, Q::zero()));
            gens.push(lift(&l.iter().map(|x| -x).collect::<Vec<_>>(), Q::zero()));
        }
        Ok(Self::from_cone(n, Cone::from_generators(n + 1, &gens)?).expect("has a vertex"))
    }

    pub fn point(x: &[Q]) -> Polyhedron {
        Self::from_v(x.len(), &[x.to_vec()], &[], &[]).expect("point")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.cone.dimension() - 1
    }

    /// Vertices (or, with lineality, vertices of a section transverse to it).
    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<Q>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Q>] {
        &self.lineality
    }

    /// Inequalities `a·x ≥ b` and equations `a·x = b` of a minimal H-description.
    pub fn h_description(&self) -> (Vec<(Vec<Q>, Q)>, Vec<(Vec<Q>, Q)>) {
        let split = |v: &[num_bigint::BigInt]| {
            let v = to_q(v);
            (v[..self.n].to_vec(), -v[self.n].clone())
        };
        let ineqs = self.cone.facets().iter().map(|f| split(f)).filter(|(a, _)| a.iter().any(|x| !x.is_zero()));
        (ineqs.collect(), self.cone.equations().iter().map(|e| split(e)).collect())
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        x.len() == self.n && self.cone.contains(&lift(x, q(1)), false).unwrap_or(false)
    }

    pub fn is_subset_of(&self, other: &Polyhedron) -> bool {
        self.n == other.n && self.cone.is_subset_of(&other.cone)
    }

    pub fn same_as(&self, other: &Polyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Option<Polyhedron> {
        Self::from_cone(self.n, self.cone.intersect(&other.cone).ok()?)
    }

    /// `P ∩ {a·x = b}`.
    pub fn intersect_hyperplane(&self, a: &[Q], b: &Q) -> Option<Polyhedron> {
        let h = Cone::from_halfspaces(self.n + 1, &[], &[lift(a, -b.clone())]).ok()?;
        Self::from_cone(self.n, self.cone.intersect(&h).ok()?)
    }

    /// Barycenter of the vertices pushed along every ray.
    pub fn relative_interior_point(&self) -> Vec<Q> {
        let k = q(self.vertices.len() as i64);
        let mut x = vec![Q::zero(); self.n];
        for v in &self.vertices {
            for (a, b) in x.iter_mut().zip(v) {
                *a += b / &k;
            }
        }
        for r in &self.rays {
            for (a, b) in x.iter_mut().zip(r) {
                *a += b;
            }
        }
        x
    }

    /// Basis of the linear space parallel to the affine hull.
    pub fn linear_span(&self) -> Vec<Vec<Q>> {
        let v0 = &self.vertices[0];
        let mut gens: Vec<Vec<Q>> = self.vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
        gens.extend(self.rays.iter().cloned());
        gens.extend(self.lineality.iter().cloned());
        rref(&gens, self.n).0
    }

    /// The faces of codimension one.
    pub fn facets(&self) -> Vec<Polyhedron> {
        let d = self.dim();
        let mut out: Vec<Polyhedron> = Vec::new();
        for f in self.cone.facets() {
            let Ok(h) = Cone::from_halfspaces(self.n + 1, &[], &[to_q(f)]) else { continue };
            let Some(face) = self.cone.intersect(&h).ok().and_then(|c| Self::from_cone(self.n, c)) else { continue };
            if face.dim() + 1 == d && !out.iter().any(|o| o.same_as(&face)) {
                out.push(face);
            }
        }
        out
    }

    /// Image under `x ↦ M·x` for an invertible `M`.
    pub fn map_linear(&self, m: &[Vec<Q>]) -> Polyhedron {
        let ap = |v: &Vec<Q>| m.iter().map(|row| dot(row, v)).collect::<Vec<Q>>();
        let vs: Vec<Vec<Q>> = self.vertices.iter().map(ap).collect();
        let rs: Vec<Vec<Q>> = self.rays.iter().map(ap).collect();
        let ls: Vec<Vec<Q>> = self.lineality.iter().map(ap).collect();
        Self::from_v(self.n, &vs, &rs, &ls).expect("image keeps its vertices")
    }

    pub(crate) fn sort_key(&self) -> (usize, Vec<Vec<Q>>, Vec<Vec<Q>>) {
        (self.dim(), self.vertices.clone(), self.rays.clone())
    }
}
