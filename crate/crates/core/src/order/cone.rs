use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::OrderError;
use crate::linalg::{dot_int, nullspace, primitive_int, rank, rref, to_q, Q};

/// A closed polyhedral cone in ℚᵈ kept in both descriptions.
///
/// V-side: `rays` (extreme rays of the pointed part) plus a `lineality` basis.
/// H-side: `facets` (inner normals, `x·a ≥ 0`) plus `equations` (`x·e = 0`).
/// All vectors are primitive integer vectors in a canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    d: usize,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    facets: Vec<Vec<BigInt>>,
    equations: Vec<Vec<BigInt>>,
}

/// Extreme rays and lineality basis of `{x : ineqs·x ≥ 0, eqs·x = 0}`.
pub(crate) fn h_to_v(d: usize, ineqs: &[Vec<Q>], eqs: &[Vec<Q>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let ineqs: Vec<Vec<Q>> = ineqs.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut all: Vec<Vec<Q>> = ineqs.clone();
    all.extend(eqs.iter().cloned());
    let lin = nullspace(&all, d);
    let mut base: Vec<Vec<Q>> = eqs.to_vec();
    base.extend(lin.iter().cloned());
    let r = d - rank(&base, d);
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    if r > 0 {
        let k = r - 1;
        // keep only rows that are independent modulo the base equations
        for subset in (0..ineqs.len()).combinations(k) {
            let mut sys = base.clone();
            sys.extend(subset.iter().map(|&i| ineqs[i].clone()));
            let ns = nullspace(&sys, d);
            if ns.len() != 1 {
                continue;
            }
            let v = &ns[0];
            for sgn in [1i64, -1] {
                let cand: Vec<Q> = v.iter().map(|x| x * Q::from_integer(BigInt::from(sgn))).collect();
                if ineqs.iter().all(|a| !crate::linalg::dot(a, &cand).is_negative()) {
                    let pv = primitive_int(&cand);
                    if !rays.contains(&pv) {
                        rays.push(pv);
                    }
                }
            }
        }
    }
    rays.sort();
    (rays, canonical_subspace(&lin, d))
}

/// Canonical integer basis (from the RREF) of the span of `vs`.
pub(crate) fn canonical_subspace(vs: &[Vec<Q>], d: usize) -> Vec<Vec<BigInt>> {
    let (r, _) = rref(vs, d);
    r.iter().map(|row| primitive_int(row)).collect()
}

impl Cone {
    fn check_dim(d: usize, vs: &[Vec<Q>]) -> Result<(), OrderError> {
        for v in vs {
            if v.len() != d {
                return Err(OrderError::DimensionMismatch { expected: d, found: v.len() });
            }
        }
        Ok(())
    }

    /// Conic hull of the generators.
    pub fn from_generators(d: usize, gens: &[Vec<Q>]) -> Result<Cone, OrderError> {
        Self::check_dim(d, gens)?;
        let (facets, equations) = h_to_v(d, gens, &[]);
        let fq: Vec<Vec<Q>> = facets.iter().map(|v| to_q(v)).collect();
        let eq: Vec<Vec<Q>> = equations.iter().map(|v| to_q(v)).collect();
        let (rays, lineality) = h_to_v(d, &fq, &eq);
        Ok(Cone { d, rays, lineality, facets, equations })
    }

    pub fn from_generators_i64(d: usize, gens: &[Vec<i64>]) -> Result<Cone, OrderError> {
        let g: Vec<Vec<Q>> = gens.iter().map(|v| crate::linalg::to_q_i64(v)).collect();
        Self::from_generators(d, &g)
    }

    /// `{x : normals·x ≥ 0, eqs·x = 0}`.
    pub fn from_halfspaces(d: usize, normals: &[Vec<Q>], eqs: &[Vec<Q>]) -> Result<Cone, OrderError> {
        Self::check_dim(d, normals)?;
        Self::check_dim(d, eqs)?;
        let (rays, lineality) = h_to_v(d, normals, eqs);
        let rq: Vec<Vec<Q>> = rays.iter().map(|v| to_q(v)).collect();
        let lq: Vec<Vec<Q>> = lineality.iter().map(|v| to_q(v)).collect();
        let (facets, equations) = h_to_v(d, &rq, &lq);
        Ok(Cone { d, rays, lineality, facets, equations })
    }

    pub fn whole_space(d: usize) -> Cone {
        Self::from_halfspaces(d, &[], &[]).expect("whole space")
    }

    pub fn origin(d: usize) -> Cone {
        Self::from_generators(d, &[]).expect("origin")
    }

    pub fn positive_orthant(d: usize) -> Cone {
        let gens: Vec<Vec<Q>> = (0..d)
            .map(|i| (0..d).map(|j| crate::linalg::q((i == j) as i64)).collect())
            .collect();
        Self::from_generators(d, &gens).expect("orthant")
    }

    pub fn dim_ambient(&self) -> usize {
        self.d
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    /// Generators as rationals: rays plus both signs of the lineality basis.
    pub fn generators(&self) -> Vec<Vec<Q>> {
        let mut g: Vec<Vec<Q>> = self.rays.iter().map(|v| to_q(v)).collect();
        for l in &self.lineality {
            g.push(to_q(l));
            g.push(to_q(l).into_iter().map(|x| -x).collect());
        }
        g
    }

    pub fn dimension(&self) -> usize {
        self.d - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn dual(&self) -> Cone {
        Cone {
            d: self.d,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains(&self, x: &[Q], strict: bool) -> Result<bool, OrderError> {
        if x.len() != self.d {
            return Err(OrderError::DimensionMismatch { expected: self.d, found: x.len() });
        }
        if strict && !self.is_full_dimensional() {
            return Ok(false);
        }
        for e in &self.equations {
            if !crate::linalg::dot(&to_q(e), x).is_zero() {
                return Ok(false);
            }
        }
        for a in &self.facets {
            let v = crate::linalg::dot(&to_q(a), x);
            if v.is_negative() || (strict && v.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_int(&self, x: &[i64], strict: bool) -> Result<bool, OrderError> {
        let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        if x.len() != self.d {
            return Err(OrderError::DimensionMismatch { expected: self.d, found: x.len() });
        }
        if strict && !self.is_full_dimensional() {
            return Ok(false);
        }
        if self.equations.iter().any(|e| !dot_int(e, &xb).is_zero()) {
            return Ok(false);
        }
        Ok(self.facets.iter().all(|a| {
            let v = dot_int(a, &xb);
            !(v.is_negative() || (strict && v.is_zero()))
        }))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, OrderError> {
        if other.d != self.d {
            return Err(OrderError::DimensionMismatch { expected: self.d, found: other.d });
        }
        let normals: Vec<Vec<Q>> = self.facets.iter().chain(&other.facets).map(|v| to_q(v)).collect();
        let eqs: Vec<Vec<Q>> = self.equations.iter().chain(&other.equations).map(|v| to_q(v)).collect();
        Cone::from_halfspaces(self.d, &normals, &eqs)
    }

    pub fn minkowski_sum(&self, other: &Cone) -> Result<Cone, OrderError> {
        if other.d != self.d {
            return Err(OrderError::DimensionMismatch { expected: self.d, found: other.d });
        }
        let mut g = self.generators();
        g.extend(other.generators());
        Cone::from_generators(self.d, &g)
    }

    /// A point in the relative interior (sum of rays).
    pub fn relative_interior_point(&self) -> Vec<BigInt> {
        let mut s = vec![BigInt::zero(); self.d];
        for r in &self.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        s
    }

    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.generators().iter().all(|g| other.contains(g, false).unwrap_or(false))
    }

    pub fn same_as(&self, other: &Cone) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }
}

impl std::fmt::Display for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |vs: &[Vec<BigInt>]| {
            vs.iter()
                .map(|v| format!("({})", v.iter().map(|x| x.to_string()).join(",")))
                .join(" ")
        };
        write!(f, "cone[rays: {}; lineality: {}]", show(&self.rays), show(&self.lineality))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn orthant_self_dual() {
        let c = Cone::positive_orthant(2);
        assert!(c.dual().same_as(&c));
        assert!(c.is_pointed());
    }

    #[test]
    fn halfplane_dual_is_ray() {
        let h = Cone::from_halfspaces(2, &[qv(&[1, 0])], &[]).unwrap();
        assert!(!h.is_pointed());
        let d = h.dual();
        assert!(d.same_as(&Cone::from_generators(2, &[qv(&[1, 0])]).unwrap()));
    }

    #[test]
    fn minkowski_of_axes() {
        let a = Cone::from_generators(2, &[qv(&[1, 0])]).unwrap();
        let b = Cone::from_generators(2, &[qv(&[0, 1])]).unwrap();
        assert!(a.minkowski_sum(&b).unwrap().same_as(&Cone::positive_orthant(2)));
    }

    #[test]
    fn redundant_generators_dropped() {
        let c = Cone::from_generators(2, &[qv(&[1, 0]), qv(&[1, 1]), qv(&[0, 1])]).unwrap();
        assert_eq!(c.rays().len(), 2);
        assert!(c.contains(&qv(&[1, 1]), true).unwrap());
        assert!(!c.contains(&qv(&[1, 0]), true).unwrap());
    }
}
