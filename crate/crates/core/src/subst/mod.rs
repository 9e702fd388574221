//! The monomial substitution `t^u ↦ θ^u x^{n·u}`, its fiber checks, obstructions to a
//! polynomial image and isogeny pullbacks.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bertini::LaurentPoly;
use crate::ff::{FFElem, Field};
use crate::linalg::{det, to_q_i64, Q};
use crate::order::{lattice_of_integrality, split_p_part, Cone, ExpVec, IntLattice, OrderError, WeightOrder};
use crate::series::{ExtQ, GPSeries, SeriesError};
use crate::support::{split_at, PFamily, StructuredSupport, SupportError};

/// Stored-term collisions in one fiber at which raw input is reported as an infinite fiber.
pub const DEFAULT_COLLISION_THRESHOLD: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstError {
    #[error("direction n must be nonzero")]
    ZeroDirection,
    #[error("every θᵢ must be nonzero")]
    ZeroTheta,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("θ lives over a different field than the input")]
    FieldMismatch,
    #[error("infinitely many terms map to x^{r}")]
    InfiniteFiber { r: Q, family: Option<PFamily>, heuristic: bool },
    #[error("n·(u − ℓ) > 0 for the family {0:?}: the image exponents decrease toward the limit")]
    OutsideCone(PFamily),
    #[error("{0}")]
    FiberNeedsCertificate(String),
    #[error("θ^u needs an N-th root of θ_{index} with N = {n} prime to p")]
    ThetaRootUnavailable { index: usize, n: BigInt },
    #[error("operation needs a support model")]
    NoSupportModel,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Support(#[from] SupportError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// `n` and `θ` of the substitution `tᵢ ↦ θᵢ x^{nᵢ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstSpec {
    n: Vec<i64>,
    theta: Vec<FFElem>,
}

impl SubstSpec {
    pub fn new(n: Vec<i64>, theta: Vec<FFElem>) -> Result<Self, SubstError> {
        if n.iter().all(|&x| x == 0) {
            return Err(SubstError::ZeroDirection);
        }
        if theta.len() != n.len() {
            return Err(SubstError::DimensionMismatch { expected: n.len(), found: theta.len() });
        }
        if theta.iter().any(|t| t.is_zero()) {
            return Err(SubstError::ZeroTheta);
        }
        if theta.windows(2).any(|w| !w[0].field().same(w[1].field())) {
            return Err(SubstError::FieldMismatch);
        }
        Ok(SubstSpec { n, theta })
    }

    /// `θ = (1, …, 1)`.
    pub fn ones(field: &Field, n: Vec<i64>) -> Result<Self, SubstError> {
        let theta = vec![field.one(); n.len()];
        Self::new(n, theta)
    }

    pub fn n(&self) -> &[i64] {
        &self.n
    }

    pub fn theta(&self) -> &[FFElem] {
        &self.theta
    }

    pub fn dim(&self) -> usize {
        self.n.len()
    }

    pub fn image_exponent(&self, u: &ExpVec) -> Q {
        u.dot_int(&self.n)
    }

    /// `θ^u`, taking unique `p`-th roots for the `p`-power part of each denominator.
    pub fn theta_power(&self, u: &ExpVec) -> Result<FFElem, SubstError> {
        let field = self.theta[0].field();
        let p = field.p();
        let mut acc = field.one();
        for (i, th) in self.theta.iter().enumerate() {
            let c = u.coord(i);
            if c.is_zero() {
                continue;
            }
            let (n, j) = split_p_part(c.denom(), p);
            if !n.is_one() && !th.is_one() {
                return Err(SubstError::ThetaRootUnavailable { index: i, n });
            }
            let m = field.q() - 1;
            // θ^{a} for the numerator a, reduced mod q − 1
            let e = c.numer().mod_floor(&BigInt::from(m));
            let e: u128 = e.try_into().expect("below q");
            let mut x = th.pow(e);
            for _ in 0..j {
                x = x.pth_root();
            }
            acc = acc * x;
        }
        Ok(acc)
    }

    fn check_input(&self, field: &Field, d: usize) -> Result<(), SubstError> {
        if d != self.dim() {
            return Err(SubstError::DimensionMismatch { expected: self.dim(), found: d });
        }
        if !self.theta[0].field().same(field) {
            return Err(SubstError::FieldMismatch);
        }
        Ok(())
    }
}

/// Result of substituting into a series.
#[derive(Clone, Debug)]
pub struct PhiOutput {
    /// Univariate series in `x` under the natural order.
    pub image: GPSeries,
    /// True when fibers and the cutoff were transferred through the support model.
    pub certified: bool,
    pub warnings: Vec<String>,
}

pub fn phi(f: &GPSeries, spec: &SubstSpec) -> Result<PhiOutput, SubstError> {
    phi_with(f, spec, DEFAULT_COLLISION_THRESHOLD)
}

/// Substitutes into a series. With a support model the fibers and the image cutoff are exact;
/// without one, fibers are judged on the stored terms and a finite cutoff only transfers when
/// `n` is a positive multiple of the primary weight.
pub fn phi_with(f: &GPSeries, spec: &SubstSpec, collision_threshold: usize) -> Result<PhiOutput, SubstError> {
    spec.check_input(f.field(), f.dim())?;
    let order = f.order();
    let mut warnings = Vec::new();
    let (cutoff, model) = match f.support_model() {
        Some(m) => {
            check_families(m, spec)?;
            (certified_cutoff(m, order, f.cutoff(), spec), Some(image_model(m, spec)?))
        }
        None => {
            let mut fibers: BTreeMap<Q, usize> = BTreeMap::new();
            for e in f.exponents() {
                *fibers.entry(spec.image_exponent(e)).or_default() += 1;
            }
            if let Some((r, _)) = fibers.iter().find(|(_, &c)| c >= collision_threshold) {
                return Err(SubstError::InfiniteFiber { r: r.clone(), family: None, heuristic: true });
            }
            if !f.is_exact() {
                warnings.push("no support model: fibers checked on stored terms only".to_string());
            }
            (raw_cutoff(order, f.cutoff(), spec)?, None)
        }
    };
    let lex = WeightOrder::lex(1);
    let mut terms = Vec::with_capacity(f.num_terms());
    for (e, c) in f.terms() {
        let r = spec.image_exponent(e);
        terms.push((ExpVec::from_rationals(&[r]), c * spec.theta_power(e)?));
    }
    let mut image = GPSeries::new(f.field(), &lex, terms, cutoff)?;
    if let Some(m) = model {
        image = image.with_support(m)?;
    }
    Ok(PhiOutput { image, certified: f.support_model().is_some(), warnings })
}

fn check_families(m: &StructuredSupport, spec: &SubstSpec) -> Result<(), SubstError> {
    for fam in &m.families {
        match spec.image_exponent(&fam.direction()).cmp(&Q::zero()) {
            Ordering::Equal => {
                return Err(SubstError::InfiniteFiber {
                    r: spec.image_exponent(&fam.limit),
                    family: Some(fam.clone()),
                    heuristic: false,
                })
            }
            Ordering::Greater => return Err(SubstError::OutsideCone(fam.clone())),
            Ordering::Less => {}
        }
    }
    Ok(())
}

/// First member of `fam` whose primary weight reaches `l`, if any.
fn first_member_at_or_above(fam: &PFamily, p: u64, order: &WeightOrder, l: &Q) -> Option<ExpVec> {
    let w = order.primary();
    let wl = fam.limit.dot(w);
    let wd = fam.direction().dot(w);
    if !wd.is_negative() {
        // primary weights do not increase along the family: only the first member can qualify
        let first = fam.member(p, fam.start);
        return (&first.dot(w) >= l).then_some(first);
    }
    if wl <= *l {
        return None;
    }
    let mut j = fam.start;
    loop {
        let m = fam.member(p, j);
        if &m.dot(w) >= l {
            return Some(m);
        }
        j += 1;
    }
}

/// Least image exponent among model points the truncation left unknown.
fn certified_cutoff(m: &StructuredSupport, order: &WeightOrder, cut: &ExtQ, spec: &SubstSpec) -> ExtQ {
    let ExtQ::Finite(l) = cut else {
        return ExtQ::Infinity;
    };
    let mut best = ExtQ::Infinity;
    for u in &m.finite {
        if &order.value(u) >= l {
            best = best.min(ExtQ::Finite(spec.image_exponent(u)));
        }
    }
    for fam in &m.families {
        // images increase along the family, so the first unknown member is the least
        if let Some(u) = first_member_at_or_above(fam, m.p, order, l) {
            best = best.min(ExtQ::Finite(spec.image_exponent(&u)));
        }
    }
    best
}

fn raw_cutoff(order: &WeightOrder, cut: &ExtQ, spec: &SubstSpec) -> Result<ExtQ, SubstError> {
    let ExtQ::Finite(l) = cut else {
        return Ok(ExtQ::Infinity);
    };
    let w = order.primary();
    let n = to_q_i64(spec.n());
    let Some(i) = w.iter().position(|x| !x.is_zero()) else {
        return Err(SubstError::FiberNeedsCertificate("primary weight is zero".into()));
    };
    let s = &n[i] / &w[i];
    if s.is_positive() && w.iter().zip(&n).all(|(a, b)| a * &s == *b) {
        return Ok(ExtQ::Finite(l * s));
    }
    Err(SubstError::FiberNeedsCertificate(
        "a truncated series without a support model only transfers its cutoff when n is a positive multiple of the primary weight"
            .into(),
    ))
}

fn image_model(m: &StructuredSupport, spec: &SubstSpec) -> Result<StructuredSupport, SubstError> {
    let one = |u: &ExpVec| ExpVec::from_rationals(&[spec.image_exponent(u)]);
    let mut out = StructuredSupport::finite(m.p, 1, m.finite.iter().map(one))?;
    for fam in &m.families {
        out = out.with_family(PFamily::new(one(&fam.limit), one(&fam.seed), fam.start)?)?;
    }
    Ok(out)
}

/// `Σ c·t^u·yᵏ ↦ Σ c·θ^u·x^{n·u}·yᵏ`.
pub fn phi_laurent(f: &LaurentPoly, spec: &SubstSpec) -> Result<LaurentPoly, SubstError> {
    spec.check_input(f.field(), f.dim())?;
    let mut terms = Vec::with_capacity(f.num_terms());
    for (e, k, c) in f.terms() {
        let u = ExpVec::from_ints(e);
        let r: i64 = e.iter().zip(spec.n()).map(|(a, b)| a * b).sum();
        terms.push((vec![r], k, c * spec.theta_power(&u)?));
    }
    Ok(LaurentPoly::from_terms(f.field(), 1, terms))
}

/// Why the image of a series cannot be a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `v` is alone in its fiber and `n·v ∉ ℤ`; every `n` outside `lattice` keeps such a term.
    NonIntegerExponent { v: ExpVec, image: Q, lattice: IntLattice },
    /// For `n` in the interior of `cone`, `x^{n·v}` exceeds the degree any Laurent polynomial
    /// root of the image of `h` can have, which is attained at `bound_point`.
    UnboundedSupportCone { cone: Cone, v: ExpVec, bound_point: ExpVec, contains_n: bool },
    InfiniteFiber { r: Q },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessResult {
    IsPossiblyPolynomial,
    Obstruction(Obstruction),
}

/// Support points of the model mapping to `r`, up to `limit` of them.
fn fiber(m: &StructuredSupport, spec: &SubstSpec, r: &Q, limit: usize) -> Vec<ExpVec> {
    let mut out: Vec<ExpVec> = m.finite.iter().filter(|u| &spec.image_exponent(u) == r).cloned().collect();
    for fam in &m.families {
        let nd = spec.image_exponent(&fam.direction());
        if nd.is_zero() {
            if &spec.image_exponent(&fam.limit) == r {
                out.extend(fam.members(m.p, limit as u32));
            }
            continue;
        }
        // nℓ + p^{-j}·n(u−ℓ) = r
        let s = (r - spec.image_exponent(&fam.limit)) / nd;
        if s.is_positive() && s.numer().is_one() {
            let (rest, j) = split_p_part(s.denom(), m.p);
            if rest.is_one() && j >= fam.start {
                out.push(fam.member(m.p, j));
            }
        }
    }
    out.sort();
    out.dedup();
    out.truncate(limit.max(1));
    out
}

/// Looks for a certificate that the image of `alpha` is not a Laurent polynomial.
///
/// Stored terms are true support points, so a stored `v` alone in its model fiber maps to a
/// genuine term of the image. When `h` (a polynomial in `y` vanishing at `alpha`) is given, a
/// stored `v` beyond its degree bound also yields the cone obstruction.
pub fn nonpolynomial_witness(
    alpha: &GPSeries,
    spec: &SubstSpec,
    h: Option<&LaurentPoly>,
) -> Result<WitnessResult, SubstError> {
    let m = alpha.support_model().ok_or(SubstError::NoSupportModel)?;
    spec.check_input(alpha.field(), alpha.dim())?;
    if let Err(SubstError::InfiniteFiber { r, .. }) = check_families(m, spec) {
        return Ok(WitnessResult::Obstruction(Obstruction::InfiniteFiber { r }));
    }
    check_families(m, spec)?;
    let order = alpha.order();
    let alone = |v: &ExpVec, r: &Q| fiber(m, spec, r, 2) == [v.clone()];
    for (v, _) in alpha.terms_sorted() {
        let r = spec.image_exponent(&v);
        if !r.is_integer() && alone(&v, &r) {
            let lattice = lattice_of_integrality(&v);
            return Ok(WitnessResult::Obstruction(Obstruction::NonIntegerExponent { v, image: r, lattice }));
        }
    }
    if let Some(h) = h {
        if let Some(o) = unbounded_support_cone(alpha, m, order, spec, h)? {
            return Ok(WitnessResult::Obstruction(o));
        }
    }
    Ok(WitnessResult::IsPossiblyPolynomial)
}

fn unbounded_support_cone(
    alpha: &GPSeries,
    m: &StructuredSupport,
    order: &WeightOrder,
    spec: &SubstSpec,
    h: &LaurentPoly,
) -> Result<Option<Obstruction>, SubstError> {
    let d = alpha.dim();
    if h.dim() != d {
        return Err(SubstError::DimensionMismatch { expected: d, found: h.dim() });
    }
    // slopes (u_r − u_s)/(s − r) over monomial pairs with r < s
    let mut points: Vec<ExpVec> = Vec::new();
    let terms: Vec<(ExpVec, u32)> = h.terms().map(|(e, k, _)| (ExpVec::from_ints(e), k)).collect();
    for (ur, r) in &terms {
        for (us, s) in &terms {
            if r < s {
                points.push(ur.sub(us).scale(&Q::new(BigInt::one(), BigInt::from(s - r))));
            }
        }
    }
    points.sort();
    points.dedup();
    let Some(best) = points.iter().max_by(|a, b| spec.image_exponent(a).cmp(&spec.image_exponent(b)).then(b.cmp(a)))
    else {
        return Ok(None);
    };
    let bound = spec.image_exponent(best);
    let Some((v, _)) = alpha.terms_sorted().into_iter().rev().find(|(v, _)| {
        let r = spec.image_exponent(v);
        r > bound && fiber(m, spec, &r, 2) == [v.clone()]
    }) else {
        return Ok(None);
    };
    // C₁: the normal cone at the maximizing slope; C₂ adds v beyond it; C₃ isolates v
    let mut normals: Vec<Vec<Q>> = points.iter().filter(|q| *q != best).map(|q| best.sub(q).coords()).collect();
    normals.push(v.sub(best).coords());
    let c2 = Cone::from_halfspaces(d, &normals, &[])?;
    let c3 = split_at(m, &v, order)?.sigma;
    let cone = c2.intersect(&c3)?;
    let contains_n = cone.contains(&to_q_i64(spec.n()), true)?;
    Ok(Some(Obstruction::UnboundedSupportCone { cone, v, bound_point: best.clone(), contains_n }))
}

/// `tᵢ ↦ t^{A eᵢ}`: every exponent vector `u` becomes `A·u`; `y` is untouched.
pub fn pullback_isogeny(f: &LaurentPoly, a: &[Vec<i64>]) -> Result<LaurentPoly, SubstError> {
    let d = f.dim();
    if a.len() != d || a.iter().any(|r| r.len() != d) {
        return Err(SubstError::DimensionMismatch { expected: d, found: a.len() });
    }
    let rows: Vec<Vec<Q>> = a.iter().map(|r| to_q_i64(r)).collect();
    if det(&rows).is_zero() {
        return Err(SubstError::SingularMatrix);
    }
    Ok(f.map_exponents(d, |u| a.iter().map(|row| row.iter().zip(u).map(|(x, y)| x * y).sum()).collect()))
}

#[cfg(test)]
mod tests;
