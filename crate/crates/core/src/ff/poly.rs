use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::{Embedding, FFElem, Field};

/// Dense univariate polynomial over a finite field, constant coefficient first.
///
/// Coefficients are stored as raw element encodings; the vector is kept trimmed.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    c: Vec<u64>,
}

impl Poly {
    pub fn from_raw(field: &Field, mut c: Vec<u64>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { field: field.clone(), c }
    }

    pub fn new(field: &Field, coeffs: &[FFElem]) -> Poly {
        Self::from_raw(field, coeffs.iter().map(|e| e.value()).collect())
    }

    /// Coefficients given as integers (reduced into the prime field).
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Self::from_raw(field, coeffs.iter().map(|&x| field.from_int(x).value()).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), c: vec![] }
    }

    pub fn one(field: &Field) -> Poly {
        Poly { field: field.clone(), c: vec![1] }
    }

    pub fn x(field: &Field) -> Poly {
        Poly { field: field.clone(), c: vec![0, 1] }
    }

    pub fn constant(c: &FFElem) -> Poly {
        Self::from_raw(c.field(), vec![c.value()])
    }

    pub fn monomial(c: &FFElem, deg: usize) -> Poly {
        let mut v = vec![0; deg + 1];
        v[deg] = c.value();
        Self::from_raw(c.field(), v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn raw(&self) -> &[u64] {
        &self.c
    }

    pub fn coeffs(&self) -> Vec<FFElem> {
        self.c.iter().map(|&v| self.field.from_value(v)).collect()
    }

    pub fn coeff(&self, i: usize) -> FFElem {
        self.field.from_value(self.c.get(i).copied().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> FFElem {
        self.field.from_value(self.c.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| f.add_raw(self.c.get(i).copied().unwrap_or(0), o.c.get(i).copied().unwrap_or(0)))
            .collect();
        Self::from_raw(f, c)
    }

    pub fn neg(&self) -> Poly {
        Self::from_raw(&self.field, self.c.iter().map(|&x| self.field.neg_raw(x)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                if b != 0 {
                    c[i + j] = f.add_raw(c[i + j], f.mul_raw(a, b));
                }
            }
        }
        Self::from_raw(f, c)
    }

    pub fn scale(&self, s: &FFElem) -> Poly {
        let v = s.value();
        Self::from_raw(&self.field, self.c.iter().map(|&x| self.field.mul_raw(x, v)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Self::from_raw(&self.field, c)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero leading coefficient"))
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dn = d.c.len() - 1;
        if self.c.len() <= dn {
            return (Self::zero(f), self.clone());
        }
        let inv = f.inv_raw(*d.c.last().expect("nonzero")).expect("unit");
        let mut r = self.c.clone();
        let mut qv = vec![0u64; r.len() - dn];
        for i in (dn..r.len()).rev() {
            let coef = r[i];
            if coef == 0 {
                continue;
            }
            let t = f.mul_raw(coef, inv);
            qv[i - dn] = t;
            for (j, &dj) in d.c.iter().enumerate() {
                if dj != 0 {
                    let idx = i - dn + j;
                    r[idx] = f.sub_raw(r[idx], f.mul_raw(t, dj));
                }
            }
        }
        r.truncate(dn);
        (Self::from_raw(f, qv), Self::from_raw(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Exact quotient, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv().expect("unit");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul_raw(a, f.from_int(i as i64).value()))
            .collect();
        Self::from_raw(f, c)
    }

    pub fn eval(&self, x: &FFElem) -> FFElem {
        let f = &self.field;
        let xv = x.value();
        let v = self.c.iter().rev().fold(0u64, |acc, &a| f.add_raw(f.mul_raw(acc, xv), a));
        f.from_value(v)
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly) -> Poly {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Self::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    /// `g` with `g(x)^p = self` coefficientwise when `self` is a polynomial in `x^p`.
    pub fn pth_root_of_pth_power(&self) -> Option<Poly> {
        let p = self.field.p() as usize;
        if self.c.iter().enumerate().any(|(i, &a)| a != 0 && i % p != 0) {
            return None;
        }
        let c = self.c.iter().step_by(p).map(|&a| self.field.pth_root_raw(a)).collect();
        Some(Self::from_raw(&self.field, c))
    }

    pub fn map(&self, emb: &Embedding) -> Poly {
        Self::from_raw(emb.dst(), self.c.iter().map(|&a| emb.apply_raw(a)).collect())
    }

    /// Pulls every coefficient back along `emb`; `None` if one is outside the image.
    pub fn preimage(&self, emb: &Embedding) -> Option<Poly> {
        let c: Option<Vec<u64>> =
            self.coeffs().iter().map(|a| emb.preimage(a).map(|b| b.value())).collect();
        Some(Self::from_raw(emb.src(), c?))
    }

    /// Ben-Or irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let q = BigUint::from(self.field.q());
        let x = Self::x(&self.field);
        let mut xq = x.clone();
        for _ in 0..n / 2 {
            xq = xq.powmod(&q, &f);
            if !f.gcd(&xq.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }

    pub fn pow(&self, e: u64) -> Poly {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let f = &self.field;
        self.c.iter().rev().fold(Self::zero(f), |acc, &a| acc.mul(g).add(&Self::from_raw(f, vec![a])))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.c == other.c
    }
}
impl Eq for Poly {}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let e = self.field.from_value(a);
            let coef = if self.field.k() == 1 { e.to_string() } else { format!("({e})") };
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            parts.push(match (a, i) {
                (_, 0) => coef,
                (1, _) => mono,
                _ => format!("{coef}*{mono}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn biguint_pow(b: u64, e: usize) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}
