use std::collections::BTreeMap;
use std::fmt;

use crate::ff::{Embedding, FFElem, Field, Poly};

/// Exponent key: integer exponents in `t₁..t_d` and the degree in `y`.
pub type LKey = (Vec<i64>, u32);

/// A polynomial in `t₁^±, …, t_d^±, y`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Field,
    d: usize,
    terms: BTreeMap<LKey, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentParseError {
    #[error("unexpected token at byte {0}: {1}")]
    Unexpected(usize, String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("negative power of y")]
    NegativeY,
}

impl LaurentPoly {
    pub fn zero(field: &Field, d: usize) -> Self {
        LaurentPoly { field: field.clone(), d, terms: BTreeMap::new() }
    }

    pub fn from_terms(field: &Field, d: usize, terms: impl IntoIterator<Item = (Vec<i64>, u32, FFElem)>) -> Self {
        let mut f = Self::zero(field, d);
        for (e, k, c) in terms {
            assert_eq!(e.len(), d, "exponent dimension");
            f.add_raw((e, k), c.value());
        }
        f
    }

    pub fn monomial(c: &FFElem, e: Vec<i64>, ydeg: u32) -> Self {
        let d = e.len();
        Self::from_terms(c.field(), d, [(e, ydeg, c.clone())])
    }

    /// `y`
    pub fn y(field: &Field, d: usize) -> Self {
        Self::monomial(&field.one(), vec![0; d], 1)
    }

    pub fn constant(c: &FFElem, d: usize) -> Self {
        Self::monomial(c, vec![0; d], 0)
    }

    fn add_raw(&mut self, key: LKey, c: u64) {
        if c == 0 {
            return;
        }
        let f = &self.field;
        let v = self.terms.entry(key.clone()).or_insert(0);
        *v = f.add_raw(*v, c);
        if *v == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, u32, FFElem)> + '_ {
        self.terms.iter().map(|((e, k), &c)| (e, *k, self.field.from_value(c)))
    }

    pub fn coeff(&self, e: &[i64], k: u32) -> FFElem {
        self.field.from_value(self.terms.get(&(e.to_vec(), k)).copied().unwrap_or(0))
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|(_, k)| *k).max()
    }

    /// Coefficient of `yᵏ` as a polynomial in `t` only.
    pub fn coeff_y(&self, k: u32) -> LaurentPoly {
        let mut out = Self::zero(&self.field, self.d);
        for ((e, j), &c) in &self.terms {
            if *j == k {
                out.terms.insert((e.clone(), 0), c);
            }
        }
        out
    }

    pub fn is_monic_y(&self) -> bool {
        match self.deg_y() {
            Some(n) => {
                let lc = self.coeff_y(n);
                lc.terms.len() == 1 && lc.terms.get(&(vec![0; self.d], 0)) == Some(&1)
            }
            None => false,
        }
    }

    /// Divides by the leading `y`-coefficient when it is a single term `c·tᵃ`.
    pub fn normalize_monic(&self) -> Option<LaurentPoly> {
        let n = self.deg_y()?;
        let lc = self.coeff_y(n);
        if lc.terms.len() != 1 {
            return None;
        }
        let ((a, _), &c) = lc.terms.iter().next().expect("one term");
        let cinv = self.field.inv_raw(c).expect("nonzero");
        let mut out = Self::zero(&self.field, self.d);
        for ((e, k), &v) in &self.terms {
            let e2: Vec<i64> = e.iter().zip(a).map(|(x, y)| x - y).collect();
            out.terms.insert((e2, *k), self.field.mul_raw(v, cinv));
        }
        Some(out)
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        assert!(self.field.same(&o.field) && self.d == o.d, "incompatible polynomials");
        let mut out = self.clone();
        for (k, &c) in &o.terms {
            out.add_raw(k.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.neg_raw(*v);
        }
        out
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &FFElem) -> LaurentPoly {
        let mut out = Self::zero(&self.field, self.d);
        for (k, &v) in &self.terms {
            out.add_raw(k.clone(), self.field.mul_raw(v, c.value()));
        }
        out
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        assert!(self.field.same(&o.field) && self.d == o.d, "incompatible polynomials");
        let mut out = Self::zero(&self.field, self.d);
        for ((e1, k1), &c1) in &self.terms {
            for ((e2, k2), &c2) in &o.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_raw((e, k1 + k2), self.field.mul_raw(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = Self::constant(&self.field.one(), self.d);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; `None` when `o` does not divide `self`. `o` must be monic in `y`.
    pub fn div_exact_y(&self, o: &LaurentPoly) -> Option<LaurentPoly> {
        let m = o.deg_y()?;
        if !o.is_monic_y() {
            return None;
        }
        let mut r = self.clone();
        let mut qt = Self::zero(&self.field, self.d);
        while let Some(n) = r.deg_y() {
            if r.is_zero() || n < m {
                break;
            }
            let lead = r.coeff_y(n);
            let mut t = Self::zero(&self.field, self.d);
            for ((e, _), &c) in &lead.terms {
                t.terms.insert((e.clone(), n - m), c);
            }
            r = r.sub(&t.mul(o));
            qt = qt.add(&t);
        }
        r.is_zero().then_some(qt)
    }

    pub fn map_field(&self, emb: &Embedding) -> LaurentPoly {
        LaurentPoly {
            field: emb.dst().clone(),
            d: self.d,
            terms: self.terms.iter().map(|(k, &c)| (k.clone(), emb.apply_raw(c))).collect(),
        }
    }

    /// Applies `e ↦ g(e)` to every `t`-exponent; `g` may change the dimension.
    pub fn map_exponents(&self, new_d: usize, g: impl Fn(&[i64]) -> Vec<i64>) -> LaurentPoly {
        let mut out = Self::zero(&self.field, new_d);
        for ((e, k), &c) in &self.terms {
            let e2 = g(e);
            assert_eq!(e2.len(), new_d);
            out.add_raw((e2, *k), c);
        }
        out
    }

    /// Substitutes nonzero values for the `t`-variables, leaving a polynomial in `y`.
    pub fn eval_t(&self, point: &[FFElem]) -> Poly {
        assert_eq!(point.len(), self.d);
        let n = self.deg_y().unwrap_or(0) as usize;
        let mut c = vec![0u64; n + 1];
        for ((e, k), &v) in &self.terms {
            let mut m = v;
            for (x, &ei) in point.iter().zip(e) {
                let base = if ei < 0 { x.inv().expect("nonzero evaluation point").value() } else { x.value() };
                m = self.field.mul_raw(m, self.field.pow_raw(base, ei.unsigned_abs() as u128));
            }
            c[*k as usize] = self.field.add_raw(c[*k as usize], m);
        }
        Poly::from_raw(&self.field, c)
    }

    /// Parses text such as `y^2 + y + t1^-1*t2^-1`; `a` is the field generator.
    pub fn parse(field: &Field, d: usize, s: &str) -> Result<LaurentPoly, LaurentParseError> {
        let names = default_names(d);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Self::parse_vars(field, &refs, "y", s)
    }

    /// Parses with explicit names for the `t`-variables and for `y`.
    pub fn parse_vars(field: &Field, tvars: &[&str], yvar: &str, s: &str) -> Result<LaurentPoly, LaurentParseError> {
        let d = tvars.len();
        let mut out = Self::zero(field, d);
        let b = s.as_bytes();
        let mut i = 0usize;
        let skip = |i: &mut usize| {
            while *i < b.len() && b[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let read_int = |i: &mut usize| -> Option<i64> {
            let st = *i;
            if *i < b.len() && b[*i] == b'-' {
                *i += 1;
            }
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
            s[st..*i].parse().ok()
        };
        skip(&mut i);
        let mut first = true;
        while i < b.len() {
            let mut sign = 1i64;
            if b[i] == b'+' || b[i] == b'-' {
                if b[i] == b'-' {
                    sign = -1;
                }
                i += 1;
                skip(&mut i);
            } else if !first {
                return Err(LaurentParseError::Unexpected(i, s[i..].chars().take(8).collect()));
            }
            first = false;
            let mut coef = field.from_int(sign);
            let mut e = vec![0i64; d];
            let mut k: i64 = 0;
            loop {
                skip(&mut i);
                if i >= b.len() {
                    return Err(LaurentParseError::Unexpected(i, "end of input".into()));
                }
                if b[i].is_ascii_digit() {
                    let n = read_int(&mut i).ok_or_else(|| LaurentParseError::Unexpected(i, "integer".into()))?;
                    coef = &coef * &field.from_int(n);
                } else if b[i].is_ascii_alphabetic() {
                    let st = i;
                    while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                        i += 1;
                    }
                    let name = &s[st..i];
                    skip(&mut i);
                    let mut pw = 1i64;
                    if i < b.len() && b[i] == b'^' {
                        i += 1;
                        skip(&mut i);
                        pw = read_int(&mut i).ok_or_else(|| LaurentParseError::Unexpected(i, "exponent".into()))?;
                    }
                    if name == yvar {
                        k += pw;
                    } else if let Some(j) = tvars.iter().position(|v| *v == name) {
                        e[j] += pw;
                    } else if name == "a" {
                        let g = if pw >= 0 { field.gen() } else { field.gen().inv().expect("generator is nonzero") };
                        coef = &coef * &g.pow(pw.unsigned_abs() as u128);
                    } else {
                        return Err(LaurentParseError::UnknownVariable(name.to_string()));
                    }
                } else {
                    return Err(LaurentParseError::Unexpected(i, s[i..].chars().take(8).collect()));
                }
                skip(&mut i);
                if i < b.len() && b[i] == b'*' {
                    i += 1;
                    continue;
                }
                break;
            }
            if k < 0 {
                return Err(LaurentParseError::NegativeY);
            }
            out.add_raw((e, k as u32), coef.value());
            skip(&mut i);
        }
        Ok(out)
    }

    pub fn to_string_vars(&self, tvars: &[&str], yvar: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&LKey> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let mut out = String::new();
        for (idx, key) in keys.iter().enumerate() {
            let c = self.field.from_value(self.terms[*key]);
            let mut mono: Vec<String> = Vec::new();
            for (j, &ej) in key.0.iter().enumerate() {
                match ej {
                    0 => {}
                    1 => mono.push(tvars[j].to_string()),
                    _ => mono.push(format!("{}^{}", tvars[j], ej)),
                }
            }
            match key.1 {
                0 => {}
                1 => mono.push(yvar.to_string()),
                k => mono.push(format!("{yvar}^{k}")),
            }
            let coef = if self.field.k() == 1 { c.to_string() } else { format!("({c})") };
            let term = if mono.is_empty() {
                coef
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{coef}*{}", mono.join("*"))
            };
            if idx > 0 {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out
    }
}

pub(crate) fn default_names(d: usize) -> Vec<String> {
    if d == 1 {
        vec!["t".into()]
    } else {
        (1..=d).map(|i| format!("t{i}")).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.d);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.to_string_vars(&refs, "y"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let f3 = Field::prime(3).unwrap();
        let f = LaurentPoly::parse(&f3, 1, "y^2 - t").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert!(f.is_monic_y());
        assert_eq!(f.coeff(&[1], 0), f3.from_int(-1));
        let g = LaurentPoly::parse(&f3, 2, "y^2 + y + t1^-1*t2^-1").unwrap();
        assert_eq!(g.coeff(&[-1, -1], 0), f3.one());
        assert_eq!(LaurentPoly::parse(&f3, 2, &g.to_string()).unwrap(), g);
    }

    #[test]
    fn division_and_normalization() {
        let f3 = Field::prime(3).unwrap();
        let a = LaurentPoly::parse(&f3, 1, "y - t").unwrap();
        let b = LaurentPoly::parse(&f3, 1, "y + t").unwrap();
        let p = a.mul(&b);
        assert_eq!(p, LaurentPoly::parse(&f3, 1, "y^2 - t^2").unwrap());
        assert_eq!(p.div_exact_y(&a).unwrap(), b);
        assert!(p.div_exact_y(&LaurentPoly::parse(&f3, 1, "y - 1").unwrap()).is_none());
        let n = LaurentPoly::parse_vars(&f3, &["x", "y"], "z", "x^2 - y*z^2").unwrap();
        let m = n.normalize_monic().unwrap();
        assert!(m.is_monic_y());
        assert_eq!(m, LaurentPoly::parse_vars(&f3, &["x", "y"], "z", "z^2 - x^2*y^-1").unwrap());
    }
}
