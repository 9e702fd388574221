use itertools::Itertools;
use num_integer::Integer;

use super::bivariate::{factor_bipoly, BiPoly};
use super::{BertiniError, LaurentPoly};
use crate::ff::{Embedding, Field, Poly};

/// Irreducible factors of a polynomial monic in `y`, over `field`.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// Field the factors are defined over: the input field, or an extension when the
    /// absolute check needed one.
    pub field: Field,
    pub embedding: Embedding,
    /// `[field : input field]`.
    pub extension_degree: usize,
    /// Monic irreducible factors with multiplicity, sorted by `y`-degree then text.
    pub factors: Vec<(LaurentPoly, usize)>,
    /// Recombination subsets tried; the transcript of the irreducibility argument.
    pub subsets_tested: usize,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// `y`-degrees of the factors, repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut out: Vec<u32> =
            self.factors.iter().flat_map(|(f, m)| std::iter::repeat_n(f.deg_y().unwrap_or(0), *m)).collect();
        out.sort();
        out
    }

    pub fn expand(&self) -> LaurentPoly {
        let (f0, _) = &self.factors[0];
        let one = LaurentPoly::constant(&self.field.one(), f0.dim());
        self.factors.iter().fold(one, |acc, (f, m)| acc.mul(&f.pow(*m as u32)))
    }
}

/// Factors a polynomial in `x^±, y` monic in `y`. With `absolute`, the factors are the
/// irreducible factors over an algebraic closure, realized over the least extension needed.
pub fn factor_bivariate(g: &LaurentPoly, absolute: bool) -> Result<Factorization, BertiniError> {
    if g.dim() != 1 {
        return Err(BertiniError::DimensionMismatch { expected: 1, found: g.dim() });
    }
    factor_laurent(g, absolute)
}

/// As [`factor_bivariate`] for any number of `t`-variables, through a Kronecker substitution.
pub fn factor_laurent(f: &LaurentPoly, absolute: bool) -> Result<Factorization, BertiniError> {
    if f.deg_y().unwrap_or(0) == 0 {
        return Err(BertiniError::ConstantPolynomial);
    }
    if !f.is_monic_y() {
        return Err(BertiniError::NotMonic);
    }
    let field = f.field().clone();
    let (factors, mut tested) = factor_over(f)?;
    let base = Factorization {
        field: field.clone(),
        embedding: Embedding::identity(&field),
        extension_degree: 1,
        factors,
        subsets_tested: tested,
    };
    if !absolute {
        return Ok(base);
    }
    // an irreducible factor of degree s splits completely into conjugates over 𝔽_{q^s}
    let mut l = 1usize;
    for (h, _) in &base.factors {
        let s = h.deg_y().unwrap_or(0) as usize;
        if s < 2 {
            continue;
        }
        let (_, emb) = field.extension(s)?;
        let (over, t) = factor_over(&h.map_field(&emb))?;
        tested += t;
        l = l.lcm(&over.iter().map(|(_, m)| m).sum::<usize>());
    }
    if l == 1 {
        return Ok(Factorization { subsets_tested: tested, ..base });
    }
    let (big, emb) = field.extension(l)?;
    let (factors, t) = factor_over(&f.map_field(&emb))?;
    Ok(Factorization { field: big, embedding: emb, extension_degree: l, factors, subsets_tested: tested + t })
}

/// Polynomial form of a monic Laurent polynomial: `z = y·t^c` clears negative exponents.
struct Shape {
    d: usize,
    c: Vec<i64>,
    /// Mixed radix of the Kronecker substitution `tᵢ ↦ x^{Kᵢ}`.
    radix: Vec<i64>,
}

impl Shape {
    fn of(f: &LaurentPoly) -> Shape {
        let d = f.dim();
        let n = f.deg_y().expect("nonconstant") as i64;
        let mut c = vec![0i64; d];
        for (e, k, _) in f.terms() {
            let gap = n - k as i64;
            if gap == 0 {
                continue;
            }
            for i in 0..d {
                c[i] = c[i].max(Integer::div_ceil(&-e[i], &gap));
            }
        }
        let mut top = vec![0i64; d];
        for (e, k, _) in f.terms() {
            for i in 0..d {
                top[i] = top[i].max(e[i] + c[i] * (n - k as i64));
            }
        }
        Shape { d, c, radix: top.iter().map(|t| t + 1).collect() }
    }

    fn weights(&self) -> Vec<i64> {
        let mut w = vec![1i64; self.d];
        for i in 1..self.d {
            w[i] = w[i - 1] * self.radix[i - 1];
        }
        w
    }

    fn to_bi(&self, f: &LaurentPoly) -> BiPoly {
        let field = f.field();
        let n = f.deg_y().expect("nonconstant") as usize;
        let w = self.weights();
        let mut cols: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        for (e, k, c) in f.terms() {
            let gap = (n - k as usize) as i64;
            let x: i64 = (0..self.d).map(|i| (e[i] + self.c[i] * gap) * w[i]).sum();
            let col = &mut cols[k as usize];
            if col.len() <= x as usize {
                col.resize(x as usize + 1, 0);
            }
            col[x as usize] = field.add_raw(col[x as usize], c.value());
        }
        BiPoly::new(field, cols.into_iter().map(|c| Poly::from_raw(field, c)).collect())
    }

    /// Inverse substitution; `None` when an exponent falls outside the radix box.
    fn from_bi(&self, h: &BiPoly) -> Option<LaurentPoly> {
        let m = h.deg_z()? as i64;
        let field = h.field();
        let mut terms = Vec::new();
        for (k, p) in h.coeffs().iter().enumerate() {
            for (x, c) in p.coeffs().into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut rest = x as i64;
                let mut e = vec![0i64; self.d];
                for i in 0..self.d {
                    e[i] = rest % self.radix[i];
                    rest /= self.radix[i];
                }
                if rest != 0 {
                    return None;
                }
                let gap = m - k as i64;
                let e: Vec<i64> = (0..self.d).map(|i| e[i] - self.c[i] * gap).collect();
                terms.push((e, k as u32, c));
            }
        }
        Some(LaurentPoly::from_terms(field, self.d, terms))
    }
}

fn sort_factors(v: &mut [(LaurentPoly, usize)]) {
    v.sort_by_key(|(f, m)| (f.deg_y(), f.to_string(), *m));
}

/// Factors over the polynomial's own field.
fn factor_over(f: &LaurentPoly) -> Result<(Vec<(LaurentPoly, usize)>, usize), BertiniError> {
    let shape = Shape::of(f);
    let bi = shape.to_bi(f);
    let r = factor_bipoly(&bi)?;
    let mut tested = r.subsets_tested;
    if f.dim() <= 1 {
        let mut out: Vec<(LaurentPoly, usize)> =
            r.factors.iter().map(|(h, m)| (shape.from_bi(h).expect("univariate exponents"), *m)).collect();
        sort_factors(&mut out);
        return Ok((out, tested));
    }
    // images of true factors are products of image factors: recombine and divide exactly
    let mut pieces: Vec<BiPoly> = r.factors.iter().flat_map(|(h, m)| std::iter::repeat_n(h.clone(), *m)).collect();
    let mut rest = f.clone();
    let mut found: Vec<LaurentPoly> = Vec::new();
    let mut s = 1;
    while 2 * s <= pieces.len() {
        let mut hit = None;
        for idx in (0..pieces.len()).combinations(s) {
            tested += 1;
            let prod = idx.iter().fold(None::<BiPoly>, |acc, &i| {
                Some(match acc {
                    None => pieces[i].clone(),
                    Some(a) => a.mul(&pieces[i]),
                })
            });
            let Some(cand) = shape.from_bi(&prod.expect("nonempty")) else { continue };
            if let Some(q) = rest.div_exact_y(&cand) {
                hit = Some((idx, cand, q));
                break;
            }
        }
        match hit {
            Some((idx, cand, q)) => {
                found.push(cand);
                rest = q;
                for i in idx.into_iter().rev() {
                    pieces.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rest.deg_y().unwrap_or(0) > 0 {
        found.push(rest);
    }
    let mut out: Vec<(LaurentPoly, usize)> = Vec::new();
    for g in found {
        match out.iter_mut().find(|(h, _)| *h == g) {
            Some(e) => e.1 += 1,
            None => out.push((g, 1)),
        }
    }
    sort_factors(&mut out);
    Ok((out, tested))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_shapes_round_trip() {
        let f3 = Field::prime(3).unwrap();
        let f = LaurentPoly::parse(&f3, 2, "y^2 + t1^-1*y + t1^2*t2^-3").unwrap();
        let s = Shape::of(&f);
        assert_eq!(s.from_bi(&s.to_bi(&f)).unwrap(), f);
    }

    #[test]
    fn spec_examples() {
        let f3 = Field::prime(3).unwrap();
        let g = LaurentPoly::parse(&f3, 1, "y^2 - t^2").unwrap();
        let r = factor_bivariate(&g, false).unwrap();
        assert_eq!(r.degrees(), vec![1, 1]);
        assert_eq!(r.expand(), g);

        let f5 = Field::prime(5).unwrap();
        let g = LaurentPoly::parse(&f5, 1, "y^2 - t^3").unwrap();
        let r = factor_bivariate(&g, true).unwrap();
        assert!(r.is_irreducible());
        assert_eq!(r.extension_degree, 1);

        let f2 = Field::prime(2).unwrap();
        let g = LaurentPoly::parse(&f2, 1, "y^2 + y + 1").unwrap();
        assert!(factor_bivariate(&g, false).unwrap().is_irreducible());
        let r = factor_bivariate(&g, true).unwrap();
        assert_eq!(r.extension_degree, 2);
        assert_eq!(r.degrees(), vec![1, 1]);
        assert_eq!(r.expand(), g.map_field(&r.embedding));
    }

    #[test]
    fn laurent_and_trivariate() {
        let f3 = Field::prime(3).unwrap();
        let g = LaurentPoly::parse(&f3, 1, "y^2 - t^-4").unwrap();
        let r = factor_bivariate(&g, false).unwrap();
        assert_eq!(r.factors.len(), 2);
        assert_eq!(r.expand(), g);
        // z² − x²y⁻² over 𝔽₃ in two t-variables
        let g = LaurentPoly::parse(&f3, 2, "y^2 - t1^2*t2^-2").unwrap();
        let r = factor_laurent(&g, true).unwrap();
        assert_eq!(r.degrees(), vec![1, 1]);
        assert_eq!(r.expand(), g);
        let g = LaurentPoly::parse(&f3, 2, "y^2 - t1^2*t2^-1").unwrap();
        assert!(factor_laurent(&g, true).unwrap().is_irreducible());
    }
}
