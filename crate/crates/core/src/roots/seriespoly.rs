use super::RootError;
use crate::bertini::LaurentPoly;
use crate::ff::{Embedding, FFElem, Field, Poly};
use crate::order::{ExpVec, WeightOrder};
use crate::series::GPSeries;

/// A polynomial in `y` with series coefficients, constant term first.
#[derive(Clone, Debug)]
pub struct SeriesPoly {
    coeffs: Vec<GPSeries>,
}

impl SeriesPoly {
    pub fn new(mut coeffs: Vec<GPSeries>) -> Result<Self, RootError> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let Some(first) = coeffs.first() else {
            return Err(RootError::ConstantPolynomial);
        };
        for c in &coeffs[1..] {
            if !c.field().same(first.field()) || c.order() != first.order() {
                return Err(RootError::Series(crate::series::SeriesError::IncompatibleContexts));
            }
        }
        Ok(SeriesPoly { coeffs })
    }

    /// Converts a Laurent polynomial into exact series coefficients.
    pub fn from_laurent(f: &LaurentPoly, order: &WeightOrder) -> Result<Self, RootError> {
        let n = f.deg_y().ok_or(RootError::ConstantPolynomial)?;
        let mut parts: Vec<Vec<(ExpVec, FFElem)>> = vec![Vec::new(); n as usize + 1];
        for (e, k, c) in f.terms() {
            parts[k as usize].push((ExpVec::from_ints(e), c));
        }
        let coeffs = parts
            .into_iter()
            .map(|t| GPSeries::exact(f.field(), order, t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &GPSeries {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[GPSeries] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn order(&self) -> &WeightOrder {
        self.coeffs[0].order()
    }

    pub fn is_monic(&self) -> bool {
        let lc = &self.coeffs[self.degree()];
        lc.is_exact() && lc.num_terms() == 1 && lc.coeff(&ExpVec::zero(lc.dim())).is_one()
    }

    pub fn eval(&self, y: &GPSeries) -> Result<GPSeries, RootError> {
        let mut acc = self.coeffs[self.degree()].clone();
        for c in self.coeffs[..self.degree()].iter().rev() {
            acc = acc.mul(y)?.add(c)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> SeriesPoly {
        if self.degree() == 0 {
            return SeriesPoly { coeffs: vec![self.coeffs[0].zero_like(crate::series::ExtQ::Infinity)] };
        }
        let f = self.field();
        let coeffs = (1..=self.degree()).map(|i| self.coeffs[i].scalar_mul(&f.from_int(i as i64))).collect();
        SeriesPoly::new(coeffs).expect("same context")
    }

    /// `G(y + s)`.
    pub fn taylor_shift(&self, s: &GPSeries) -> Result<SeriesPoly, RootError> {
        let n = self.degree();
        let f = self.field().clone();
        let p = f.p();
        // binomials mod p by Pascal's rule
        let mut binom = vec![vec![0u64; n + 1]; n + 1];
        for i in 0..=n {
            binom[i][0] = 1;
            for k in 1..=i {
                binom[i][k] = (binom[i - 1][k - 1] + if k < i { binom[i - 1][k] } else { 0 }) % p;
            }
        }
        let mut pows = vec![s.one_like()];
        for i in 1..=n {
            let next = pows[i - 1].mul(s)?;
            pows.push(next);
        }
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].zero_like(crate::series::ExtQ::Infinity);
            for i in k..=n {
                if binom[i][k] == 0 || self.coeffs[i].is_zero() {
                    continue;
                }
                let term = self.coeffs[i].mul(&pows[i - k])?.scalar_mul(&f.from_int(binom[i][k] as i64));
                acc = acc.add(&term)?;
            }
            out.push(acc);
        }
        SeriesPoly::new(out)
    }

    /// `t^{-e}·G(t^γ·z)`.
    pub fn rescale(&self, gamma: &ExpVec, e: &ExpVec) -> SeriesPoly {
        let one = self.field().one();
        let mut shift = e.neg();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.mul_monomial(&one, &shift));
            shift = shift.add(gamma);
        }
        SeriesPoly { coeffs }
    }

    /// Drops the factor `yᵏ`: `G / yᵏ` for the first `k` coefficients exactly zero.
    pub fn divide_by_y_power(&self, k: usize) -> SeriesPoly {
        SeriesPoly { coeffs: self.coeffs[k..].to_vec() }
    }

    /// Number of leading coefficients (from the constant term up) that are exactly zero.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn map_field(&self, emb: &Embedding) -> SeriesPoly {
        SeriesPoly { coeffs: self.coeffs.iter().map(|c| c.map_field(emb)).collect() }
    }

    /// Reduction modulo the maximal ideal: the constant terms of the coefficients.
    pub fn residue(&self) -> Poly {
        let z = ExpVec::zero(self.coeffs[0].dim());
        Poly::new(self.field(), &self.coeffs.iter().map(|c| c.coeff(&z)).collect::<Vec<_>>())
    }

    pub fn truncate(&self, l: &crate::series::ExtQ) -> SeriesPoly {
        SeriesPoly { coeffs: self.coeffs.iter().map(|c| c.truncate(l)).collect() }
    }
}
