use itertools::Itertools;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{factor_laurent, BertiniError, Factorization, LaurentPoly};
use crate::ff::{FFElem, Field};
use crate::linalg::to_q_i64;
use crate::order::{lattice_of_integrality, Cone, ExpVec, IntLattice};
use crate::subst::{phi_laurent, pullback_isogeny, SubstSpec};

/// How the scan samples `θ ∈ (𝕜*)ᵈ` for each direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaPolicy {
    /// `θ = (1, …, 1)`.
    Ones,
    /// One uniformly random `θ` over the input field per direction, from the given seed.
    Random { seed: u64 },
    /// Every `θ` over the degree-`extension` extension of the input field.
    Exhaustive { extension: usize },
}

impl std::fmt::Display for ThetaPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThetaPolicy::Ones => write!(f, "ones"),
            ThetaPolicy::Random { seed } => write!(f, "random({seed})"),
            ThetaPolicy::Exhaustive { extension } => write!(f, "exhaustive(degree {extension})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub bound: i64,
    pub theta: ThetaPolicy,
    pub absolute: bool,
    /// Directions lying in any of these lattices are skipped.
    pub exclude: Vec<IntLattice>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { bound: 6, theta: ThetaPolicy::Ones, absolute: true, exclude: vec![] }
    }
}

#[derive(Clone, Debug)]
pub struct DirectionResult {
    pub n: Vec<i64>,
    pub irreducible: bool,
    /// `y`-degrees of the factors of the first reducible image, or `[deg_y]`.
    pub factor_degrees: Vec<u32>,
    pub extension_degree: usize,
    /// The `θ` whose image factored, when one did.
    pub theta: Option<Vec<FFElem>>,
    pub thetas_tested: usize,
    pub subsets_tested: usize,
    /// Factors of the reducible image, re-multiplying to it exactly.
    pub factors: Vec<(LaurentPoly, usize)>,
}

#[derive(Clone, Debug)]
pub struct FittedLattice {
    pub lattice: IntLattice,
    /// `{n : c·n ≡ 0 mod m}` as `(c, m)`.
    pub character: (Vec<i64>, i64),
    pub covers: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Default)]
pub struct LatticeFit {
    pub lattices: Vec<FittedLattice>,
    pub uncovered: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub directions: Vec<DirectionResult>,
    pub bad: Vec<Vec<i64>>,
    pub fit: LatticeFit,
    pub cone: Cone,
    pub theta_policy: ThetaPolicy,
    pub bound: i64,
    pub absolute: bool,
}

impl ScanReport {
    pub fn irreducible_count(&self) -> usize {
        self.directions.iter().filter(|d| d.irreducible).count()
    }
}

/// Integer points of `[1, bound]ᵈ` in the interior of `cone`, lexicographic.
pub fn scan_directions(cone: &Cone, bound: i64, exclude: &[IntLattice]) -> Result<Vec<Vec<i64>>, BertiniError> {
    let d = cone.dim_ambient();
    let mut out = Vec::new();
    for n in (0..d).map(|_| 1..=bound).multi_cartesian_product() {
        if cone.contains(&to_q_i64(&n), true)? && !exclude.iter().any(|l| l.contains_i64(&n)) {
            out.push(n);
        }
    }
    if d == 0 {
        out.clear();
    }
    Ok(out)
}

fn thetas(field: &Field, d: usize, policy: &ThetaPolicy, index: u64) -> Vec<Vec<FFElem>> {
    match policy {
        ThetaPolicy::Ones => vec![vec![field.one(); d]],
        ThetaPolicy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            rng.set_stream(index);
            let q = field.q();
            vec![(0..d).map(|_| field.from_value(rng.gen_range(1..q))).collect()]
        }
        ThetaPolicy::Exhaustive { .. } => {
            let units: Vec<FFElem> = field.nonzero_elements().collect();
            (0..d).map(|_| units.iter().cloned()).multi_cartesian_product().collect()
        }
    }
}

fn test_direction(f: &LaurentPoly, n: &[i64], policy: &ThetaPolicy, absolute: bool, index: u64) -> Result<DirectionResult, BertiniError> {
    let thetas = thetas(f.field(), n.len(), policy, index);
    let mut subsets = 0;
    let mut last: Option<Factorization> = None;
    for (k, theta) in thetas.iter().enumerate() {
        let spec = SubstSpec::new(n.to_vec(), theta.clone())?;
        let g = phi_laurent(f, &spec)?;
        let r = factor_laurent(&g, absolute)?;
        subsets += r.subsets_tested;
        if !r.is_irreducible() {
            return Ok(DirectionResult {
                n: n.to_vec(),
                irreducible: false,
                factor_degrees: r.degrees(),
                extension_degree: r.extension_degree,
                theta: Some(theta.clone()),
                thetas_tested: k + 1,
                subsets_tested: subsets,
                factors: r.factors,
            });
        }
        last = Some(r);
    }
    let r = last.expect("at least one θ");
    Ok(DirectionResult {
        n: n.to_vec(),
        irreducible: true,
        factor_degrees: r.degrees(),
        extension_degree: r.extension_degree,
        theta: None,
        thetas_tested: thetas.len(),
        subsets_tested: subsets,
        factors: vec![],
    })
}

/// Substitutes `tᵢ ↦ θᵢ x^{nᵢ}` for every direction of the box and tests the images for
/// irreducibility. Directions run in parallel; the report is sorted by `n`.
pub fn bertini_scan(f: &LaurentPoly, cone: &Cone, opts: &ScanOptions) -> Result<ScanReport, BertiniError> {
    let f = f.normalize_monic().ok_or(BertiniError::NotMonic)?;
    if cone.dim_ambient() != f.dim() {
        return Err(BertiniError::DimensionMismatch { expected: f.dim(), found: cone.dim_ambient() });
    }
    let f = match opts.theta {
        ThetaPolicy::Exhaustive { extension } => f.map_field(&f.field().extension(extension)?.1),
        _ => f,
    };
    let dirs = scan_directions(cone, opts.bound, &opts.exclude)?;
    let mut directions = dirs
        .par_iter()
        .enumerate()
        .map(|(i, n)| test_direction(&f, n, &opts.theta, opts.absolute, i as u64))
        .collect::<Result<Vec<_>, _>>()?;
    directions.sort_by(|a, b| a.n.cmp(&b.n));
    let bad: Vec<Vec<i64>> = directions.iter().filter(|d| !d.irreducible).map(|d| d.n.clone()).collect();
    let good: Vec<Vec<i64>> = directions.iter().filter(|d| d.irreducible).map(|d| d.n.clone()).collect();
    let fit = fit_bad_lattices_with(&bad, &good, f.dim());
    Ok(ScanReport {
        directions,
        bad,
        fit,
        cone: cone.clone(),
        theta_policy: opts.theta.clone(),
        bound: opts.bound,
        absolute: opts.absolute,
    })
}

pub fn fit_bad_lattices(bad: &[Vec<i64>], d: usize) -> LatticeFit {
    fit_bad_lattices_with(bad, &[], d)
}

/// Greedy cover of `bad` by lattices `{n : c·n ≡ 0 mod m}` of index `m ≥ 2`.
///
/// Each round takes the lattice covering the most uncovered points (at least two), preferring
/// the larger index and then the lexicographically least `c`. Lattices containing a point of
/// `good` are never used. Points no lattice explains are returned in `uncovered`.
pub fn fit_bad_lattices_with(bad: &[Vec<i64>], good: &[Vec<i64>], d: usize) -> LatticeFit {
    let mut bad: Vec<Vec<i64>> = bad.to_vec();
    bad.sort();
    bad.dedup();
    if bad.is_empty() || d == 0 {
        return LatticeFit { lattices: vec![], uncovered: bad };
    }
    let big = bad.iter().flatten().map(|x| x.abs()).max().unwrap_or(0).max(2);
    let mut cands: Vec<(IntLattice, Vec<i64>, i64)> = Vec::new();
    for m in 2..=big {
        for c in (0..d).map(|_| 0..m).multi_cartesian_product() {
            let g = c.iter().fold(m, |acc, x| acc.gcd(x));
            if g != 1 {
                continue;
            }
            let v = ExpVec::frac(&c, m);
            let lat = lattice_of_integrality(&v);
            if good.iter().any(|n| lat.contains_i64(n)) || cands.iter().any(|(l, _, _)| *l == lat) {
                continue;
            }
            cands.push((lat, c, m));
        }
    }
    let mut left = bad.clone();
    let mut lattices = Vec::new();
    loop {
        let best = cands
            .iter()
            .map(|(l, c, m)| (left.iter().filter(|n| l.contains_i64(n)).count(), l, c, *m))
            .filter(|(k, ..)| *k >= 2)
            .max_by(|a, b| a.0.cmp(&b.0).then(a.3.cmp(&b.3)).then(b.2.cmp(a.2)));
        let Some((_, l, c, m)) = best else { break };
        let covers: Vec<Vec<i64>> = bad.iter().filter(|n| l.contains_i64(n)).cloned().collect();
        left.retain(|n| !l.contains_i64(n));
        lattices.push(FittedLattice { lattice: l.clone(), character: (c.clone(), m), covers });
    }
    LatticeFit { lattices, uncovered: left }
}

/// A reducible pullback found by [`pb_falsify`].
#[derive(Clone, Debug)]
pub struct PbWitness {
    /// Exponent matrix of the isogeny `tᵢ ↦ t^{column i}`.
    pub matrix: Vec<Vec<i64>>,
    pub pullback: LaurentPoly,
    pub factorization: Factorization,
}

/// Factors the pullback of `f` along the isogeny with exponent matrix `a`.
pub fn pullback_factorization(f: &LaurentPoly, a: &[Vec<i64>]) -> Result<(LaurentPoly, Factorization), BertiniError> {
    let f = f.normalize_monic().ok_or(BertiniError::NotMonic)?;
    let g = pullback_isogeny(&f, a)?;
    let r = factor_laurent(&g, true)?;
    Ok((g, r))
}

/// Searches diagonal isogenies `diag(m₁, …, m_d)`, `1 ≤ mᵢ ≤ bound`, ordered by `max mᵢ` and then
/// lexicographically, for a pullback that factors over the algebraic closure.
///
/// `None` only says no witness exists up to `bound`. A non-diagonal isogeny reduces to a diagonal
/// one by Smith normal form, as unimodular changes of coordinates preserve irreducibility.
pub fn pb_falsify(f: &LaurentPoly, bound: i64) -> Result<Option<PbWitness>, BertiniError> {
    let f = f.normalize_monic().ok_or(BertiniError::NotMonic)?;
    let d = f.dim();
    if f.deg_y().unwrap_or(0) <= 1 {
        return Ok(None);
    }
    let ident: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    let base = factor_laurent(&f, true)?;
    if !base.is_irreducible() {
        return Ok(Some(PbWitness { matrix: ident, pullback: f, factorization: base }));
    }
    let mut diags: Vec<Vec<i64>> = (0..d).map(|_| 1..=bound).multi_cartesian_product().collect();
    diags.sort_by_key(|m| (m.iter().copied().max().unwrap_or(1), m.clone()));
    for m in diags {
        if m.iter().all(|&x| x == 1) {
            continue;
        }
        let a: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| if i == j { m[i] } else { 0 }).collect()).collect();
        let g = pullback_isogeny(&f, &a)?;
        let r = factor_laurent(&g, true)?;
        if !r.is_irreducible() {
            return Ok(Some(PbWitness { matrix: a, pullback: g, factorization: r }));
        }
    }
    Ok(None)
}
