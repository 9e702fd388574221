use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{PFamily, StructuredSupport, SupportError};
use crate::linalg::{q, qi, Q};
use crate::order::{Cone, ExpVec, WeightOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::C => "c",
            Condition::D => "d",
        };
        write!(f, "({c})")
    }
}

/// A failed condition with points that exhibit the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub message: String,
    pub witness: Vec<ExpVec>,
}

#[derive(Clone, Debug)]
pub struct PDiscreteCertificate {
    /// Closed cone whose interior is the perturbation cone σ.
    pub sigma: Cone,
    /// A point of the interior of σ (and of `C^∨`) standing in for the weight.
    pub interior_point: Vec<Q>,
    /// True when the primary weight row sat on a boundary and had to be perturbed
    /// along the lower rows.
    pub refined: bool,
    pub gamma: ExpVec,
    pub cone_c: Cone,
    pub n: BigInt,
    pub limits: Vec<ExpVec>,
}

impl PDiscreteCertificate {
    /// Checks `x ∈ (γ + C) ∩ ⋃ (1/(N pʲ)) ℤᵈ`.
    pub fn covers(&self, x: &ExpVec, p: u64) -> bool {
        let (n, _) = x.denominator_split(p);
        (&self.n % n).is_zero() && self.cone_c.contains(&x.sub(&self.gamma).coords(), false).unwrap_or(false)
    }
}

/// Finds `w₁ + εw₂ + ε²w₃ + …` strictly positive on all `normals`, trying `ε = 2^{-k}`.
/// The flag reports whether a perturbation was needed.
pub(crate) fn perturbed_interior(order: &WeightOrder, normals: &[Vec<Q>]) -> Option<(Vec<Q>, bool)> {
    let rows = order.rows();
    let w1 = rows[0].clone();
    let pos = |w: &[Q]| normals.iter().all(|n| crate::linalg::dot(n, w).is_positive());
    if pos(&w1) {
        return Some((w1, false));
    }
    // each normal must be lexicographically positive on the rows
    for n in normals {
        let first = rows.iter().map(|r| crate::linalg::dot(n, r)).find(|v| !v.is_zero());
        if !first.is_some_and(|v| v.is_positive()) {
            return None;
        }
    }
    let mut eps = Q::one();
    for _ in 0..256 {
        eps /= q(2);
        let mut w = vec![Q::zero(); w1.len()];
        let mut pw = Q::one();
        for r in rows {
            for (wi, ri) in w.iter_mut().zip(r) {
                *wi += &pw * ri;
            }
            pw *= &eps;
        }
        if pos(&w) {
            return Some((w, true));
        }
    }
    None
}

fn violation(condition: Condition, message: impl Into<String>, witness: Vec<ExpVec>) -> Violation {
    Violation { condition, message: message.into(), witness }
}

pub fn pdiscrete_check(s: &StructuredSupport, order: &WeightOrder) -> Result<PDiscreteCertificate, Violation> {
    let d = s.d;
    if order.dim() != d {
        return Err(violation(Condition::B, "weight order dimension differs from support dimension", vec![]));
    }
    let p = s.p;
    let w1 = order.primary().to_vec();

    // (a) members must increase toward their limit on a whole cone of weights
    let mut normals: Vec<Vec<Q>> = Vec::new();
    for f in &s.families {
        let dir = f.direction();
        if order.sign(&dir) != Ordering::Less {
            return Err(violation(
                Condition::A,
                format!(
                    "family with limit {} has w-values strictly decreasing along its members (w·(u−ℓ) = {})",
                    f.limit,
                    crate::linalg::fmt_q(&dir.dot(&w1))
                ),
                f.members(p, 3),
            ));
        }
        normals.push(dir.neg().coords());
    }
    let sigma = Cone::from_halfspaces(d, &normals, &[]).expect("dimensions checked");

    // (b) a translate of a pointed cone containing everything
    let mut pts: Vec<ExpVec> = s.finite.iter().cloned().collect();
    for f in &s.families {
        pts.push(f.member(p, f.start));
        pts.push(f.limit.clone());
    }
    let (gamma, cone_c) = if pts.is_empty() {
        (ExpVec::zero(d), Cone::origin(d))
    } else {
        let m = pts
            .iter()
            .min_by(|a, b| order.value(a).cmp(&order.value(b)).then_with(|| a.cmp(b)))
            .expect("nonempty");
        let gamma = m.sub(&ExpVec::from_rationals(&w1));
        let gens: Vec<Vec<Q>> = pts.iter().map(|a| a.sub(&gamma).coords()).collect();
        (gamma, Cone::from_generators(d, &gens).expect("dimensions checked"))
    };
    let mut n = BigInt::one();
    for a in &s.finite {
        n = n.lcm(&a.denominator_split(p).0);
    }
    for f in &s.families {
        n = n.lcm(&f.denominator_n(p));
    }

    // (c) limits of sequences with convergent w-values. Distinct limits on one level set of
    // w₁ are separated by the refinement; the certificate weight has to separate them too.
    let limits: Vec<ExpVec> = s.families.iter().map(|f| f.limit.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut all_normals = normals.clone();
    for (i, a) in limits.iter().enumerate() {
        for b in &limits[i + 1..] {
            if order.value(a) == order.value(b) {
                let sep = if order.sign(&b.sub(a)) == Ordering::Greater { b.sub(a) } else { a.sub(b) };
                all_normals.push(sep.coords());
            }
        }
    }

    all_normals.extend(cone_c.rays().iter().map(|r| crate::linalg::to_q(r)));
    let Some((interior_point, refined)) = perturbed_interior(order, &all_normals) else {
        return Err(violation(Condition::A, "no weight in the perturbation cone could be found", vec![]));
    };
    Ok(PDiscreteCertificate { sigma, interior_point, refined, gamma, cone_c, n, limits })
}

/// The split of a certified support at `γ′`.
#[derive(Clone, Debug)]
pub struct Split {
    pub plus: StructuredSupport,
    pub minus: StructuredSupport,
    /// Closed cone whose interior is the stability cone.
    pub sigma: Cone,
    pub interior_point: Vec<Q>,
    pub refined: bool,
}

fn sign_of(o: Ordering) -> i32 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub fn split_at(s: &StructuredSupport, gamma: &ExpVec, order: &WeightOrder) -> Result<Split, SupportError> {
    pdiscrete_check(s, order).map_err(|v| SupportError::NotCertified(v.message))?;
    if gamma.dim() != s.d {
        return Err(SupportError::DimensionMismatch);
    }
    let p = s.p;
    let mut plus = StructuredSupport::empty(p, s.d);
    let mut minus = StructuredSupport::empty(p, s.d);
    let mut normals: Vec<Vec<Q>> = Vec::new();

    let place = |x: &ExpVec, plus: &mut StructuredSupport, minus: &mut StructuredSupport, normals: &mut Vec<Vec<Q>>| {
        let diff = x.sub(gamma);
        match order.sign(&diff) {
            Ordering::Greater => {
                plus.finite.insert(x.clone());
                normals.push(diff.coords());
            }
            Ordering::Less => {
                minus.finite.insert(x.clone());
                normals.push(diff.neg().coords());
            }
            Ordering::Equal => {}
        }
    };
    for x in &s.finite {
        place(x, &mut plus, &mut minus, &mut normals);
    }

    for f in &s.families {
        let a = f.limit.sub(gamma);
        let b = f.direction();
        let rows = order.rows();
        let av: Vec<Q> = rows.iter().map(|r| a.dot(r)).collect();
        let bv: Vec<Q> = rows.iter().map(|r| b.dot(r)).collect();
        // eventual sign under the lexicographic comparison
        let lex = av
            .iter()
            .zip(&bv)
            .map(|(x, y)| if !x.is_zero() { x.clone() } else { y.clone() })
            .find(|v| !v.is_zero())
            .map_or(0, |v| if v.is_positive() { 1 } else { -1 });
        // eventual sign for genuine weights near the primary row
        let genuine = if a.is_zero() { sign_of(order.sign(&b)) } else { sign_of(order.sign(&a)) };
        if lex != genuine {
            return Err(SupportError::TieAtLimit(f.limit.clone()));
        }
        // from j0 on every row keeps a fixed sign
        let mut j0 = f.start;
        let pb = BigInt::from(p);
        loop {
            let pj = qi(&pb.pow(j0));
            let ok = av.iter().zip(&bv).all(|(x, y)| x.is_zero() || y.abs() < x.abs() * &pj);
            if ok {
                break;
            }
            j0 += 1;
        }
        for j in f.start..j0 {
            place(&f.member(p, j), &mut plus, &mut minus, &mut normals);
        }
        let tail = f.with_start(j0);
        let head = f.member(p, j0).sub(gamma);
        let sg = Q::from_integer(BigInt::from(lex));
        normals.push(head.coords().iter().map(|x| x * &sg).collect());
        if !a.is_zero() {
            normals.push(a.coords().iter().map(|x| x * &sg).collect());
        }
        if lex > 0 {
            plus.families.push(tail);
        } else {
            minus.families.push(tail);
        }
    }
    let sigma = Cone::from_halfspaces(s.d, &normals, &[]).expect("dimensions checked");
    let (interior_point, refined) =
        perturbed_interior(order, &normals).ok_or_else(|| SupportError::TieAtLimit(gamma.clone()))?;
    Ok(Split { plus, minus, sigma, interior_point, refined })
}

/// Re-splits with the weight `w` as the primary row (used for stability checks).
pub fn split_with_weight(s: &StructuredSupport, gamma: &ExpVec, order: &WeightOrder, w: Vec<Q>) -> Result<Split, SupportError> {
    let o = order.with_new_primary(w).map_err(|_| SupportError::DimensionMismatch)?;
    split_at(s, gamma, &o)
}

/// Members of a family lying on each side, listed up to index `upto`.
pub fn family_sides(f: &PFamily, p: u64, gamma: &ExpVec, order: &WeightOrder, upto: u32) -> Vec<i32> {
    (f.start..upto).map(|j| sign_of(order.sign(&f.member(p, j).sub(gamma)))).collect()
}
