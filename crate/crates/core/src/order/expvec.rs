use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::OrderError;
use crate::linalg::{qi, Q};

/// A point of ℚᵈ stored as `num / den` with `den > 0` and fully reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExpVec {
    num: Vec<BigInt>,
    den: BigInt,
}

impl ExpVec {
    pub fn new(num: Vec<BigInt>, den: BigInt) -> Result<Self, OrderError> {
        if den.is_zero() {
            return Err(OrderError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -&*x;
            }
        }
        let g = num.iter().fold(den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            for x in num.iter_mut() {
                *x = &*x / &g;
            }
            den /= &g;
        }
        ExpVec { num, den }
    }

    pub fn zero(d: usize) -> Self {
        ExpVec { num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        ExpVec { num: v.iter().map(|&x| BigInt::from(x)).collect(), den: BigInt::one() }
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        ExpVec { num: v.to_vec(), den: BigInt::one() }
    }

    /// `num / den` from machine integers; panics on `den == 0`.
    pub fn frac(num: &[i64], den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::reduced(num.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(den))
    }

    pub fn from_rationals(v: &[Q]) -> Self {
        let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = v.iter().map(|x| (x * qi(&den)).to_integer()).collect();
        Self::reduced(num, den)
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn num(&self) -> &[BigInt] {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn coord(&self, i: usize) -> Q {
        Q::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coords(&self) -> Vec<Q> {
        (0..self.dim()).map(|i| self.coord(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Integer coordinates, if integral and each fits in `i64`.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        if !self.is_integral() {
            return None;
        }
        self.num.iter().map(|x| i64::try_from(x).ok()).collect()
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| a + b).collect();
            return Self::reduced(num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Self::reduced(num, &self.den * &other.den)
    }

    pub fn neg(&self) -> ExpVec {
        ExpVec { num: self.num.iter().map(|x| -x).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Q) -> ExpVec {
        let num = self.num.iter().map(|x| x * s.numer()).collect();
        Self::reduced(num, &self.den * s.denom())
    }

    pub fn scale_int(&self, s: i64) -> ExpVec {
        self.scale(&Q::from_integer(BigInt::from(s)))
    }

    pub fn dot(&self, w: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (x, wi) in self.num.iter().zip(w) {
            if !x.is_zero() && !wi.is_zero() {
                acc += wi * qi(x);
            }
        }
        acc / qi(&self.den)
    }

    pub fn dot_int(&self, n: &[i64]) -> Q {
        let s: BigInt = self.num.iter().zip(n).map(|(x, &ni)| x * BigInt::from(ni)).sum();
        Q::new(s, self.den.clone())
    }

    /// Splits the denominator as `N·pʲ` with `p ∤ N`.
    pub fn denominator_split(&self, p: u64) -> (BigInt, u32) {
        split_p_part(&self.den, p)
    }
}

/// Writes a positive integer as `N·pʲ` with `p ∤ N`.
pub fn split_p_part(x: &BigInt, p: u64) -> (BigInt, u32) {
    let pb = BigInt::from(p);
    let mut n = x.abs();
    let mut j = 0;
    if n.is_zero() {
        return (n, 0);
    }
    while (&n % &pb).is_zero() {
        n /= &pb;
        j += 1;
    }
    (n, j)
}

impl Ord for ExpVec {
    /// Lexicographic order on the rational coordinates.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.num.iter().zip(&other.num) {
            let c = (a * &other.den).cmp(&(b * &self.den));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.num.len().cmp(&other.num.len())
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", crate::linalg::fmt_q(&self.coord(i)))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    #[test]
    fn reduction_and_split() {
        let v = ExpVec::frac(&[2, -4], 12);
        assert_eq!(v.den(), &BigInt::from(6));
        assert_eq!(v.denominator_split(2), (BigInt::from(3), 1));
        assert_eq!(v.coord(1), qf(-1, 3));
    }

    #[test]
    fn arithmetic() {
        let a = ExpVec::frac(&[1, 0], 2);
        let b = ExpVec::frac(&[0, 1], 3);
        assert_eq!(a.add(&b), ExpVec::frac(&[3, 2], 6));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.scale(&qf(2, 1)), ExpVec::from_ints(&[1, 0]));
    }
}
