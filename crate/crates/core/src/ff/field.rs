use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::FfError;

/// Fields with at most this many elements get exp/log tables.
const TABLE_LIMIT: u64 = 1 << 16;
/// Upper bound on `p^k` so that element encodings fit comfortably in `u64`.
const MAX_ORDER: u128 = 1 << 62;

struct Tables {
    exp: Vec<u64>,
    log: Vec<u64>,
}

struct FieldInner {
    p: u64,
    k: usize,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
    extensions: Mutex<HashMap<usize, (Field, Embedding)>>,
}

/// The finite field `𝔽_p[x]/(modulus)`.
///
/// Elements are encoded as integers `Σ cᵢ pⁱ` over their coordinates `cᵢ ∈ [0, p)`
/// (constant first), which makes the prime subfield the values `0..p`.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

/// Field descriptor as it appears in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    pub fn new(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<Field, FfError> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(FfError::NotPrime(p));
        }
        if k == 0 {
            return Err(FfError::BadDegree(k));
        }
        let order = (p as u128).checked_pow(k as u32).filter(|&o| o <= MAX_ORDER);
        let Some(order) = order else {
            return Err(FfError::TooLarge { p, k });
        };
        let prime = Self::build(p, 1, vec![0, 1]);
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k + 1 || m[k] % p != 1 {
                    return Err(FfError::BadModulus(format!("expected monic coefficient list of length {}", k + 1)));
                }
                let m: Vec<u64> = m.iter().map(|c| c % p).collect();
                if !Poly::from_raw(&prime, m.clone()).is_irreducible() {
                    return Err(FfError::ReducibleModulus(m));
                }
                m
            }
            None => find_modulus(&prime, k),
        };
        let _ = order;
        Ok(Self::build(p, k, modulus))
    }

    pub fn prime(p: u64) -> Result<Field, FfError> {
        Self::new(p, 1, None)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field, FfError> {
        Self::new(spec.p, spec.k, spec.modulus.as_deref())
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p(), k: self.k(), modulus: Some(self.modulus().to_vec()) }
    }

    fn build(p: u64, k: usize, modulus: Vec<u64>) -> Field {
        let q = p.pow(k as u32);
        let mut inner =
            FieldInner { p, k, q, modulus, tables: None, extensions: Mutex::new(HashMap::new()) };
        if q <= TABLE_LIMIT && k >= 2 {
            inner.tables = Some(build_tables(&inner));
        }
        Field(Arc::new(inner))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Number of elements.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Monic modulus, constant coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FFElem {
        FFElem { field: self.clone(), v: 0 }
    }

    pub fn one(&self) -> FFElem {
        FFElem { field: self.clone(), v: 1 }
    }

    pub fn from_int(&self, n: i64) -> FFElem {
        FFElem { field: self.clone(), v: n.rem_euclid(self.p() as i64) as u64 }
    }

    /// Element with the given coordinates (constant first); longer lists are reduced.
    pub fn elem(&self, coords: &[u64]) -> FFElem {
        let v = self.encode_reduce(coords);
        FFElem { field: self.clone(), v }
    }

    pub fn from_value(&self, v: u64) -> FFElem {
        assert!(v < self.q(), "element value out of range");
        FFElem { field: self.clone(), v }
    }

    /// The class of `x`.
    pub fn gen(&self) -> FFElem {
        self.elem(&[0, 1])
    }

    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.q()).map(move |v| FFElem { field: self.clone(), v })
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (1..self.q()).map(move |v| FFElem { field: self.clone(), v })
    }

    pub fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p() == other.p() && self.modulus() == other.modulus())
    }

    // ---- raw arithmetic on encoded values ----

    pub fn decode(&self, v: u64) -> Vec<u64> {
        let p = self.p();
        let mut v = v;
        (0..self.k())
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn encode(&self, coords: &[u64]) -> u64 {
        let p = self.p();
        coords.iter().rev().fold(0u64, |acc, &c| acc * p + c % p)
    }

    fn encode_reduce(&self, coords: &[u64]) -> u64 {
        let p = self.p();
        let mut c: Vec<u64> = coords.iter().map(|x| x % p).collect();
        reduce_mod(&mut c, self.modulus(), p);
        c.resize(self.k(), 0);
        self.encode(&c)
    }

    pub fn add_raw(&self, a: u64, b: u64) -> u64 {
        let p = self.p();
        if p == 2 {
            return a ^ b;
        }
        if self.k() == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b, mut out, mut pw) = (a, b, 0u64, 1u64);
        while a > 0 || b > 0 {
            let s = (a % p + b % p) % p;
            out += s * pw;
            pw *= p;
            a /= p;
            b /= p;
        }
        out
    }

    pub fn neg_raw(&self, a: u64) -> u64 {
        let p = self.p();
        if p == 2 {
            return a;
        }
        if self.k() == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let (mut a, mut out, mut pw) = (a, 0u64, 1u64);
        while a > 0 {
            let c = a % p;
            out += ((p - c) % p) * pw;
            pw *= p;
            a /= p;
        }
        out
    }

    pub fn sub_raw(&self, a: u64, b: u64) -> u64 {
        self.add_raw(a, self.neg_raw(b))
    }

    pub fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k() == 1 {
            return ((a as u128 * b as u128) % self.p() as u128) as u64;
        }
        if let Some(t) = &self.0.tables {
            let q1 = self.q() - 1;
            let mut e = t.log[a as usize] + t.log[b as usize];
            if e >= q1 {
                e -= q1;
            }
            return t.exp[e as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.p() as u128;
        let ca = self.decode(a);
        let cb = self.decode(b);
        let mut prod = vec![0u128; ca.len() + cb.len()];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        let mut c: Vec<u64> = prod.into_iter().map(|x| x as u64).collect();
        reduce_mod(&mut c, self.modulus(), self.p());
        c.resize(self.k(), 0);
        self.encode(&c)
    }

    pub fn pow_raw(&self, a: u64, e: u128) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            let q1 = (self.q() - 1) as u128;
            let l = (t.log[a as usize] as u128 * (e % q1)) % q1;
            return t.exp[l as usize];
        }
        let mut base = a;
        let mut acc = 1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv_raw(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.0.tables {
            let q1 = self.q() - 1;
            let l = t.log[a as usize];
            return Some(t.exp[((q1 - l) % q1) as usize]);
        }
        Some(self.pow_raw(a, self.q() as u128 - 2))
    }

    /// `a^p`.
    pub fn frobenius_raw(&self, a: u64) -> u64 {
        self.pow_raw(a, self.p() as u128)
    }

    /// The unique `b` with `bᵖ = a`, namely `a^(p^(k-1))`.
    pub fn pth_root_raw(&self, a: u64) -> u64 {
        let mut b = a;
        for _ in 1..self.k() {
            b = self.frobenius_raw(b);
        }
        b
    }

    /// The degree-`m` extension of this field together with the embedding into it.
    pub fn extension(&self, m: usize) -> Result<(Field, Embedding), FfError> {
        if m == 0 {
            return Err(FfError::BadDegree(0));
        }
        if m == 1 {
            return Ok((self.clone(), Embedding::identity(self)));
        }
        if let Some(hit) = self.0.extensions.lock().expect("extension cache").get(&m) {
            return Ok(hit.clone());
        }
        let big = Field::new(self.p(), self.k() * m, None)?;
        let emb = Embedding::find(self, &big)?;
        let out = (big, emb);
        self.0.extensions.lock().expect("extension cache").insert(m, out.clone());
        Ok(out)
    }
}

/// Reduces the coefficient list `c` modulo a monic polynomial, in place.
fn reduce_mod(c: &mut Vec<u64>, modulus: &[u64], p: u64) {
    let k = modulus.len() - 1;
    while c.len() > k {
        let top = c.pop().expect("nonempty");
        if top == 0 {
            continue;
        }
        let base = c.len() - k;
        for (i, &m) in modulus[..k].iter().enumerate() {
            let sub = (top as u128 * m as u128 % p as u128) as u64;
            c[base + i] = (c[base + i] + p - sub) % p;
        }
    }
}

fn build_tables(inner: &FieldInner) -> Tables {
    let tmp = Field(Arc::new(FieldInner {
        p: inner.p,
        k: inner.k,
        q: inner.q,
        modulus: inner.modulus.clone(),
        tables: None,
        extensions: Mutex::new(HashMap::new()),
    }));
    let q = inner.q;
    let q1 = q - 1;
    let factors = prime_factors(q1);
    let slow_pow = |a: u64, mut e: u64| {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = tmp.mul_slow(acc, base);
            }
            base = tmp.mul_slow(base, base);
            e >>= 1;
        }
        acc
    };
    let g = (2..q)
        .find(|&g| factors.iter().all(|&r| slow_pow(g, q1 / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u64; q1 as usize];
    let mut log = vec![0u64; q as usize];
    let mut x = 1u64;
    for i in 0..q1 {
        exp[i as usize] = x;
        log[x as usize] = i;
        x = tmp.mul_slow(x, g);
    }
    Tables { exp, log }
}

/// Smallest monic irreducible of degree `k` in lexicographic order of `(c_{k-1}, …, c_0)`.
fn find_modulus(prime: &Field, k: usize) -> Vec<u64> {
    let p = prime.p();
    let total = p.pow(k as u32);
    for i in 0..total {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut r = i;
        for _ in 0..k {
            coeffs.push(r % p);
            r /= p;
        }
        coeffs.push(1);
        if Poly::from_raw(prime, coeffs.clone()).is_irreducible() {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.modulus().hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p(), self.k(), self.modulus())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})", self.p(), self.k())
        }
    }
}

/// An element of a [`Field`].
#[derive(Clone)]
pub struct FFElem {
    field: Field,
    v: u64,
}

impl FFElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Integer encoding `Σ cᵢ pⁱ`.
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn coords(&self) -> Vec<u64> {
        self.field.decode(self.v)
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    pub fn is_one(&self) -> bool {
        self.v == 1
    }

    pub fn in_prime_field(&self) -> bool {
        self.v < self.field.p()
    }

    fn with(&self, v: u64) -> FFElem {
        FFElem { field: self.field.clone(), v }
    }

    fn check(&self, other: &FFElem) {
        assert!(self.field.same(&other.field), "elements from different fields");
    }

    pub fn inv(&self) -> Option<FFElem> {
        self.field.inv_raw(self.v).map(|v| self.with(v))
    }

    pub fn pow(&self, e: u128) -> FFElem {
        self.with(self.field.pow_raw(self.v, e))
    }

    pub fn pow_big(&self, e: &BigUint) -> FFElem {
        let q1 = BigUint::from(self.field.q() - 1);
        if self.v == 0 {
            return if e == &BigUint::from(0u8) { self.field.one() } else { self.clone() };
        }
        let r = e % q1;
        let r: u128 = r.try_into().expect("reduced exponent fits");
        self.pow(r)
    }

    pub fn frobenius(&self) -> FFElem {
        self.with(self.field.frobenius_raw(self.v))
    }

    pub fn pth_root(&self) -> FFElem {
        self.with(self.field.pth_root_raw(self.v))
    }

    /// Integer representative when the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u64> {
        self.in_prime_field().then_some(self.v)
    }
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.field.same(&other.field)
    }
}
impl Eq for FFElem {}

impl Hash for FFElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.v.hash(state);
    }
}

impl PartialOrd for FFElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FFElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.v.cmp(&other.v)
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k() == 1 {
            return write!(f, "{}", self.v);
        }
        let c = self.coords();
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}*{mono}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $raw:ident) => {
        impl std::ops::$tr<&FFElem> for &FFElem {
            type Output = FFElem;
            fn $m(self, rhs: &FFElem) -> FFElem {
                self.check(rhs);
                self.with(self.field.$raw(self.v, rhs.v))
            }
        }
        impl std::ops::$tr<FFElem> for FFElem {
            type Output = FFElem;
            fn $m(self, rhs: FFElem) -> FFElem {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&FFElem> for FFElem {
            type Output = FFElem;
            fn $m(self, rhs: &FFElem) -> FFElem {
                (&self).$m(rhs)
            }
        }
    };
}
binop!(Add, add, add_raw);
binop!(Sub, sub, sub_raw);
binop!(Mul, mul, mul_raw);

impl std::ops::Neg for &FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        self.with(self.field.neg_raw(self.v))
    }
}

impl std::ops::Neg for FFElem {
    type Output = FFElem;
    fn neg(self) -> FFElem {
        -&self
    }
}

impl std::ops::Div<&FFElem> for &FFElem {
    type Output = FFElem;
    fn div(self, rhs: &FFElem) -> FFElem {
        self * &rhs.inv().expect("division by zero in finite field")
    }
}

struct EmbInner {
    src: Field,
    dst: Field,
    /// Images of `1, x, …, x^{k-1}` of the source basis.
    basis: Vec<u64>,
}

/// A field embedding `src ↪ dst`.
#[derive(Clone)]
pub struct Embedding(Arc<EmbInner>);

impl Embedding {
    pub fn identity(f: &Field) -> Embedding {
        let basis = (0..f.k()).map(|i| f.pow_raw(f.gen().value(), i as u128)).collect();
        Embedding(Arc::new(EmbInner { src: f.clone(), dst: f.clone(), basis }))
    }

    /// Maps the generator of `src` to the smallest root of its modulus in `dst`.
    fn find(src: &Field, dst: &Field) -> Result<Embedding, FfError> {
        if dst.p() != src.p() || dst.k() % src.k() != 0 {
            return Err(FfError::NoEmbedding);
        }
        let m = Poly::from_raw(dst, src.modulus().to_vec());
        let roots = m.roots();
        let r = roots.first().ok_or(FfError::NoEmbedding)?.value();
        let basis = (0..src.k()).map(|i| dst.pow_raw(r, i as u128)).collect();
        Ok(Embedding(Arc::new(EmbInner { src: src.clone(), dst: dst.clone(), basis })))
    }

    pub fn src(&self) -> &Field {
        &self.0.src
    }

    pub fn dst(&self) -> &Field {
        &self.0.dst
    }

    pub fn apply_raw(&self, v: u64) -> u64 {
        let dst = &self.0.dst;
        if self.0.src.k() == 1 {
            return v;
        }
        let coords = self.0.src.decode(v);
        let mut acc = 0u64;
        for (c, &b) in coords.iter().zip(&self.0.basis) {
            if *c != 0 {
                acc = dst.add_raw(acc, dst.mul_raw(*c, b));
            }
        }
        acc
    }

    pub fn apply(&self, a: &FFElem) -> FFElem {
        assert!(a.field().same(&self.0.src), "element not in embedding source");
        FFElem { field: self.0.dst.clone(), v: self.apply_raw(a.value()) }
    }

    /// Inverse image, if `b` lies in the image of the embedding.
    pub fn preimage(&self, b: &FFElem) -> Option<FFElem> {
        let src = &self.0.src;
        let dst = &self.0.dst;
        let p = src.p();
        let k = src.k();
        if k == 1 {
            return b.in_prime_field().then(|| src.from_value(b.value()));
        }
        // solve Σ cᵢ basisᵢ = b over 𝔽_p
        let kd = dst.k();
        let cols: Vec<Vec<u64>> = self.0.basis.iter().map(|&v| dst.decode(v)).collect();
        let target = b.coords();
        let mut rows: Vec<Vec<u64>> = (0..kd)
            .map(|i| {
                let mut r: Vec<u64> = cols.iter().map(|c| c[i]).collect();
                r.push(target[i]);
                r
            })
            .collect();
        let sol = solve_mod_p(&mut rows, k, p)?;
        Some(src.elem(&sol))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Embedding {
        assert!(self.dst().same(next.src()), "embeddings do not compose");
        let basis = self.0.basis.iter().map(|&b| next.apply_raw(b)).collect();
        Embedding(Arc::new(EmbInner { src: self.src().clone(), dst: next.dst().clone(), basis }))
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.0.src, self.0.dst)
    }
}

/// Solves an augmented system over 𝔽_p with `n` unknowns; `None` if inconsistent.
fn solve_mod_p(rows: &mut [Vec<u64>], n: usize, p: u64) -> Option<Vec<u64>> {
    let inv = |a: u64| -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let iv = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * iv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..=n {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[r][j] % p) % p;
                }
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n] != 0) {
        return None;
    }
    let mut sol = vec![0u64; n];
    for (i, &c) in piv_cols.iter().enumerate() {
        sol[c] = rows[i][n];
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_and_reducible_modulus() {
        let f4 = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f4.q(), 4);
        assert!(matches!(Field::new(2, 2, Some(&[1, 0, 1])), Err(FfError::ReducibleModulus(_))));
        assert!(matches!(Field::new(4, 1, None), Err(FfError::NotPrime(4))));
        assert_eq!(Field::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn f4_pth_root() {
        let f4 = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let a = f4.gen();
        let r = a.pth_root();
        assert_eq!(r, &a + &f4.one());
        assert_eq!(r.frobenius(), a);
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = Field::new(3, 4, None).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                assert_eq!(f.mul_raw(a.value(), b.value()), f.mul_slow(a.value(), b.value()));
            }
        }
    }

    #[test]
    fn embedding_roundtrip() {
        let f4 = Field::new(2, 2, None).unwrap();
        let (f16, e) = f4.extension(2).unwrap();
        assert_eq!(f16.q(), 16);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(&(&a * &b)), &e.apply(&a) * &e.apply(&b));
                assert_eq!(e.apply(&(&a + &b)), &e.apply(&a) + &e.apply(&b));
            }
            assert_eq!(e.preimage(&e.apply(&a)).unwrap(), a);
        }
        let outside = f16.elements().filter(|x| e.preimage(x).is_none()).count();
        assert_eq!(outside, 12);
    }
}
