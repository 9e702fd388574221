//! Truncated generalized power series over a finite field.
//!
//! A series stores finitely many terms together with a cutoff `λ` in the primary weight:
//! every term `c·t^a` of the true series with `w₁·a < λ` is stored, and nothing at or
//! above `λ` is.

mod extq;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use extq::ExtQ;

use crate::ff::{Embedding, FFElem, Field};
use crate::linalg::{fmt_q, q, Q};
use crate::order::{Cone, ExpVec, WeightOrder};
use crate::support::{self, pdiscrete_check, PFamily, StructuredSupport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series live over different fields, dimensions or orders")]
    IncompatibleContexts,
    #[error("no stored terms below a finite cutoff: the valuation is at least {0} but otherwise unknown")]
    IndeterminateValuation(String),
    #[error("operation needs a support model")]
    NoSupportModel,
    #[error("leading term is not a unit times 1 + (positive valuation)")]
    NonUnitLeading,
    #[error("stored exponent {0} is not in the support model")]
    SupportMismatch(ExpVec),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone)]
pub struct GPSeries {
    field: Field,
    order: Arc<WeightOrder>,
    terms: BTreeMap<ExpVec, u64>,
    cutoff: ExtQ,
    support: Option<StructuredSupport>,
}

impl GPSeries {
    /// Builds a series, dropping zero coefficients and terms at or above the cutoff.
    pub fn new(
        field: &Field,
        order: &WeightOrder,
        terms: impl IntoIterator<Item = (ExpVec, FFElem)>,
        cutoff: ExtQ,
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero_with_cutoff(field, Arc::new(order.clone()), cutoff);
        for (e, c) in terms {
            if e.dim() != order.dim() {
                return Err(SeriesError::DimensionMismatch);
            }
            if !c.field().same(field) {
                return Err(SeriesError::IncompatibleContexts);
            }
            s.add_term_raw(e, c.value());
        }
        s.normalize();
        Ok(s)
    }

    pub fn exact(field: &Field, order: &WeightOrder, terms: impl IntoIterator<Item = (ExpVec, FFElem)>) -> Result<Self, SeriesError> {
        Self::new(field, order, terms, ExtQ::Infinity)
    }

    fn zero_with_cutoff(field: &Field, order: Arc<WeightOrder>, cutoff: ExtQ) -> Self {
        GPSeries { field: field.clone(), order, terms: BTreeMap::new(), cutoff, support: None }
    }

    pub fn zero(field: &Field, order: &WeightOrder) -> Self {
        Self::zero_with_cutoff(field, Arc::new(order.clone()), ExtQ::Infinity)
    }

    pub fn constant(c: &FFElem, order: &WeightOrder) -> Self {
        Self::monomial(c, &ExpVec::zero(order.dim()), order)
    }

    pub fn one(field: &Field, order: &WeightOrder) -> Self {
        Self::constant(&field.one(), order)
    }

    pub fn monomial(c: &FFElem, e: &ExpVec, order: &WeightOrder) -> Self {
        let mut s = Self::zero(c.field(), order);
        s.add_term_raw(e.clone(), c.value());
        s
    }

    /// Zero series sharing this one's field and order.
    pub fn zero_like(&self, cutoff: ExtQ) -> Self {
        Self::zero_with_cutoff(&self.field, self.order.clone(), cutoff)
    }

    pub fn monomial_like(&self, c: &FFElem, e: &ExpVec) -> Self {
        let mut s = self.zero_like(ExtQ::Infinity);
        s.add_term_raw(e.clone(), c.value());
        s
    }

    fn add_term_raw(&mut self, e: ExpVec, c: u64) {
        if c == 0 {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = f.add_raw(*v, c);
                if *v == 0 {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn normalize(&mut self) {
        if let ExtQ::Finite(l) = &self.cutoff {
            let o = self.order.clone();
            self.terms.retain(|e, c| *c != 0 && &o.value(e) < l);
        } else {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> &WeightOrder {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.order.dim()
    }

    pub fn cutoff(&self) -> &ExtQ {
        &self.cutoff
    }

    pub fn support_model(&self) -> Option<&StructuredSupport> {
        self.support.as_ref()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_infinite()
    }

    /// Zero as far as it is known: no stored terms.
    pub fn is_zero_stored(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.cutoff.is_infinite()
    }

    pub fn coeff(&self, e: &ExpVec) -> FFElem {
        self.field.from_value(self.terms.get(e).copied().unwrap_or(0))
    }

    pub fn exponents(&self) -> impl Iterator<Item = &ExpVec> {
        self.terms.keys()
    }

    /// Terms in coordinate-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, FFElem)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, self.field.from_value(c)))
    }

    /// Terms sorted by the weight order.
    pub fn terms_sorted(&self) -> Vec<(ExpVec, FFElem)> {
        let mut v: Vec<(ExpVec, FFElem)> = self.terms().map(|(e, c)| (e.clone(), c)).collect();
        v.sort_by(|a, b| self.order.cmp_unchecked(&a.0, &b.0));
        v
    }

    /// Attaches a model of the untruncated support after checking the stored terms lie in it.
    pub fn with_support(mut self, s: StructuredSupport) -> Result<Self, SeriesError> {
        if s.d != self.dim() {
            return Err(SeriesError::DimensionMismatch);
        }
        if let Some(e) = self.terms.keys().find(|e| !s.contains(e)) {
            return Err(SeriesError::SupportMismatch(e.clone()));
        }
        self.support = Some(s);
        Ok(self)
    }

    pub fn without_support(mut self) -> Self {
        self.support = None;
        self
    }

    fn compat(&self, o: &GPSeries) -> Result<(), SeriesError> {
        if !self.field.same(&o.field) || !(Arc::ptr_eq(&self.order, &o.order) || *self.order == *o.order) {
            return Err(SeriesError::IncompatibleContexts);
        }
        Ok(())
    }

    /// The stored terms read as an exact finite sum.
    pub fn as_exact(&self) -> GPSeries {
        let mut s = self.clone();
        s.cutoff = ExtQ::Infinity;
        s.support = None;
        s
    }

    /// Lowers the cutoff to `min(cutoff, l)`.
    pub fn truncate(&self, l: &ExtQ) -> GPSeries {
        let mut s = self.clone();
        s.cutoff = self.cutoff.clone().min(l.clone());
        s.normalize();
        s
    }

    pub fn add(&self, o: &GPSeries) -> Result<GPSeries, SeriesError> {
        self.compat(o)?;
        let mut s = self.clone();
        for (e, &c) in &o.terms {
            s.add_term_raw(e.clone(), c);
        }
        s.cutoff = self.cutoff.clone().min(o.cutoff.clone());
        s.normalize();
        s.support = match (&self.support, &o.support) {
            (Some(a), Some(b)) => support::union(a, b).ok(),
            _ => None,
        };
        Ok(s)
    }

    pub fn neg(&self) -> GPSeries {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = self.field.neg_raw(*c);
        }
        s
    }

    pub fn sub(&self, o: &GPSeries) -> Result<GPSeries, SeriesError> {
        self.add(&o.neg())
    }

    pub fn scalar_mul(&self, c: &FFElem) -> GPSeries {
        if c.is_zero() {
            return self.zero_like(ExtQ::Infinity);
        }
        let mut s = self.clone();
        for v in s.terms.values_mut() {
            *v = self.field.mul_raw(*v, c.value());
        }
        s
    }

    /// Multiplies by `c·t^e`.
    pub fn mul_monomial(&self, c: &FFElem, e: &ExpVec) -> GPSeries {
        if c.is_zero() {
            return self.zero_like(ExtQ::Infinity);
        }
        let mut s = self.zero_like(self.cutoff.shift(&self.order.value(e)));
        for (a, &v) in &self.terms {
            s.terms.insert(a.add(e), self.field.mul_raw(v, c.value()));
        }
        s.support = self.support.as_ref().and_then(|m| support::translate(m, e).ok());
        s
    }

    /// `ν` if it can be determined, otherwise the cutoff: a lower bound for the valuation.
    pub fn valuation_lower_bound(&self) -> ExtQ {
        match self.terms.keys().map(|e| self.order.value(e)).min() {
            Some(v) => ExtQ::Finite(v),
            None => self.cutoff.clone(),
        }
    }

    pub fn mul(&self, o: &GPSeries) -> Result<GPSeries, SeriesError> {
        self.compat(o)?;
        let nf = self.valuation_lower_bound();
        let ng = o.valuation_lower_bound();
        let cut = self.cutoff.add(&ng).min(o.cutoff.add(&nf));
        let f = &self.field;
        let mut ft: Vec<(Q, &ExpVec, u64)> = self.terms.iter().map(|(e, &c)| (self.order.value(e), e, c)).collect();
        let mut gt: Vec<(Q, &ExpVec, u64)> = o.terms.iter().map(|(e, &c)| (o.order.value(e), e, c)).collect();
        ft.sort_by(|a, b| a.0.cmp(&b.0));
        gt.sort_by(|a, b| a.0.cmp(&b.0));
        let mut acc: BTreeMap<ExpVec, u64> = BTreeMap::new();
        for (va, a, ca) in &ft {
            for (vb, b, cb) in &gt {
                if let ExtQ::Finite(l) = &cut {
                    if va + vb >= *l {
                        break;
                    }
                }
                let e = a.add(b);
                let c = f.mul_raw(*ca, *cb);
                let slot = acc.entry(e).or_insert(0);
                *slot = f.add_raw(*slot, c);
            }
        }
        let mut s = self.zero_like(cut);
        s.terms = acc;
        s.normalize();
        s.support = match (&self.support, &o.support) {
            (Some(a), Some(b)) => minkowski(a, b),
            _ => None,
        };
        Ok(s)
    }

    /// `f^p`, computed termwise by Frobenius.
    pub fn frobenius(&self) -> GPSeries {
        let p = self.field.p();
        let pq = q(p as i64);
        let mut s = self.zero_like(self.cutoff.scale(&pq));
        for (e, &c) in &self.terms {
            s.terms.insert(e.scale(&pq), self.field.frobenius_raw(c));
        }
        s.support = self.support.as_ref().map(|m| scale_support(m, &pq));
        s
    }

    /// The unique `g` with `gᵖ = f`.
    pub fn pth_root_series(&self) -> GPSeries {
        let p = self.field.p();
        let inv = Q::new(BigInt::one(), BigInt::from(p));
        let mut s = self.zero_like(self.cutoff.scale(&inv));
        for (e, &c) in &self.terms {
            s.terms.insert(e.scale(&inv), self.field.pth_root_raw(c));
        }
        s.support = self.support.as_ref().map(|m| scale_support(m, &inv));
        s
    }

    /// `f^n` via the base-`p` digits of `n`, so `p`-th powers go through Frobenius.
    pub fn pow(&self, n: u64) -> Result<GPSeries, SeriesError> {
        let p = self.field.p();
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            let digit = n % p;
            for _ in 0..digit {
                acc = acc.mul(&base)?;
            }
            n /= p;
            if n > 0 {
                base = base.frobenius();
            }
        }
        Ok(acc)
    }

    pub fn one_like(&self) -> GPSeries {
        self.monomial_like(&self.field.one(), &ExpVec::zero(self.dim()))
    }

    /// `ν(f)`: the primary weight of the least stored exponent.
    pub fn valuation(&self) -> Result<ExtQ, SeriesError> {
        match self.terms.keys().map(|e| self.order.value(e)).min() {
            Some(v) => Ok(ExtQ::Finite(v)),
            None => match &self.cutoff {
                ExtQ::Infinity => Ok(ExtQ::Infinity),
                ExtQ::Finite(l) => Err(SeriesError::IndeterminateValuation(fmt_q(l))),
            },
        }
    }

    /// The `⪯`-least stored term.
    pub fn leading_term(&self) -> Result<Option<(ExpVec, FFElem)>, SeriesError> {
        if self.terms.is_empty() {
            return match &self.cutoff {
                ExtQ::Infinity => Ok(None),
                ExtQ::Finite(l) => Err(SeriesError::IndeterminateValuation(fmt_q(l))),
            };
        }
        let e = self
            .terms
            .keys()
            .min_by(|a, b| self.order.cmp_unchecked(a, b))
            .expect("nonempty")
            .clone();
        let c = self.coeff(&e);
        Ok(Some((e, c)))
    }

    /// `(f⁺, f⁻)` with `f⁻` the terms strictly below 0 in the order.
    pub fn split_pm(&self) -> (GPSeries, GPSeries) {
        let zero = ExpVec::zero(self.dim());
        let minus_cut = match &self.cutoff {
            ExtQ::Finite(l) if !l.is_positive() => self.cutoff.clone(),
            _ => ExtQ::Infinity,
        };
        let mut plus = self.zero_like(self.cutoff.clone());
        let mut minus = self.zero_like(minus_cut);
        for (e, &c) in &self.terms {
            if self.order.sign(e) == Ordering::Less {
                minus.terms.insert(e.clone(), c);
            } else {
                plus.terms.insert(e.clone(), c);
            }
        }
        if let Some(m) = &self.support {
            if let Ok(sp) = support::split_at(m, &zero, &self.order) {
                let mut pm = sp.plus.clone();
                if m.contains(&zero) {
                    pm.finite.insert(zero.clone());
                }
                plus.support = Some(pm);
                minus.support = Some(sp.minus);
            }
        }
        (plus, minus)
    }

    /// Inverse of a series `c·t^a·(1 + g)` with `ν(g) > 0`, exact below `target`.
    pub fn inverse(&self, target: &Q) -> Result<GPSeries, SeriesError> {
        let Some((a, c)) = self.leading_term()? else {
            return Err(SeriesError::DivisionByZero);
        };
        let va = self.order.value(&a);
        let cinv = c.inv().expect("nonzero leading coefficient");
        let unit = self.mul_monomial(&cinv, &a.neg());
        let g = unit.sub(&unit.one_like())?;
        if g.is_zero() {
            return Ok(self.monomial_like(&cinv, &a.neg()));
        }
        if g.terms.keys().any(|e| !self.order.value(e).is_positive()) {
            return Err(SeriesError::NonUnitLeading);
        }
        let t = ExtQ::Finite(target + &va);
        let g = g.truncate(&t).neg();
        let mut sum = unit.one_like().truncate(&t);
        let mut term = unit.one_like();
        loop {
            term = term.mul(&g)?.truncate(&t);
            if term.terms.is_empty() {
                sum = sum.truncate(&term.cutoff);
                break;
            }
            sum = sum.add(&term)?;
        }
        let mut out = sum.mul_monomial(&cinv, &a.neg());
        out.support = None;
        Ok(out)
    }

    /// Substitutes `t ↦ t^s` for a positive rational `s` (scales every exponent).
    pub fn scale_exponents(&self, s: &Q) -> GPSeries {
        assert!(s.is_positive(), "exponent scaling must be positive");
        let mut out = self.zero_like(self.cutoff.scale(s));
        for (e, &c) in &self.terms {
            out.terms.insert(e.scale(s), c);
        }
        out.support = self.support.as_ref().map(|m| scale_support(m, s));
        out
    }

    pub fn map_field(&self, emb: &Embedding) -> GPSeries {
        let mut s = GPSeries {
            field: emb.dst().clone(),
            order: self.order.clone(),
            terms: BTreeMap::new(),
            cutoff: self.cutoff.clone(),
            support: self.support.clone(),
        };
        for (e, &c) in &self.terms {
            s.terms.insert(e.clone(), emb.apply_raw(c));
        }
        s
    }

    /// Terms with exponent on the given side of 0 in the primary weight only.
    pub fn terms_with_value_below(&self, v: &Q) -> Vec<(ExpVec, FFElem)> {
        self.terms().filter(|(e, _)| &self.order.value(e) < v).map(|(e, c)| (e.clone(), c)).collect()
    }

    /// Membership in `K_C`: certified support, pure p-power denominators, and
    /// every weight of `c` keeps the families increasing toward their limits.
    pub fn in_k_c(&self, c: &Cone) -> Result<KcMembership, SeriesError> {
        let model = self.support.as_ref().ok_or(SeriesError::NoSupportModel)?;
        if c.dim_ambient() != self.dim() {
            return Err(SeriesError::DimensionMismatch);
        }
        let cert = match pdiscrete_check(model, &self.order) {
            Ok(cert) => cert,
            Err(v) => return Ok(KcMembership { member: false, reason: format!("support not certified: {}", v.message) }),
        };
        if !cert.n.is_one() {
            return Ok(KcMembership {
                member: false,
                reason: format!("denominators carry the prime-to-p factor {}", cert.n),
            });
        }
        for f in &model.families {
            let dir = f.direction().coords();
            for g in c.generators() {
                if crate::linalg::dot(&g, &dir).is_positive() {
                    return Ok(KcMembership {
                        member: false,
                        reason: format!(
                            "weights of the cone along {} reverse the family with limit {}",
                            fmt_vec(&g),
                            f.limit
                        ),
                    });
                }
            }
        }
        Ok(KcMembership { member: true, reason: "certified".into() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KcMembership {
    pub member: bool,
    pub reason: String,
}

fn fmt_vec(v: &[Q]) -> String {
    format!("({})", v.iter().map(fmt_q).collect::<Vec<_>>().join(","))
}

fn scale_support(m: &StructuredSupport, s: &Q) -> StructuredSupport {
    StructuredSupport {
        p: m.p,
        d: m.d,
        finite: m.finite.iter().map(|x| x.scale(s)).collect(),
        families: m
            .families
            .iter()
            .map(|f| PFamily { limit: f.limit.scale(s), seed: f.seed.scale(s), start: f.start })
            .collect(),
    }
}

/// `A + B` when one side is finite; `None` otherwise.
fn minkowski(a: &StructuredSupport, b: &StructuredSupport) -> Option<StructuredSupport> {
    let (fin, other) = if a.is_finite() {
        (a, b)
    } else if b.is_finite() {
        (b, a)
    } else {
        return None;
    };
    let mut out = StructuredSupport::empty(a.p, a.d);
    for x in &fin.finite {
        out = support::union(&out, &support::translate(other, x).ok()?).ok()?;
    }
    Some(out)
}

impl PartialEq for GPSeries {
    /// Same context, cutoff and stored terms (support models are ignored).
    fn eq(&self, o: &Self) -> bool {
        self.field.same(&o.field) && *self.order == *o.order && self.cutoff == o.cutoff && self.terms == o.terms
    }
}

impl fmt::Display for GPSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_sorted();
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in &terms {
            let mono = if e.is_zero() {
                String::new()
            } else if e.dim() == 1 {
                format!("t^{}", fmt_q(&e.coord(0)))
            } else {
                format!("t^{e}")
            };
            let coef = if self.field.k() == 1 { c.to_string() } else { format!("({c})") };
            parts.push(match (c.is_one(), mono.is_empty()) {
                (_, true) => coef,
                (true, false) => mono,
                (false, false) => format!("{coef}*{mono}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))?;
        if let ExtQ::Finite(l) = &self.cutoff {
            write!(f, " + O(w >= {})", fmt_q(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GPSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<BigInt> for ExtQ {
    fn from(x: BigInt) -> Self {
        ExtQ::Finite(Q::from_integer(x))
    }
}

#[cfg(test)]
mod tests;
