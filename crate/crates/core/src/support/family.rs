use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::SupportError;
use crate::order::{split_p_part, ExpVec, WeightOrder};

/// `{ ℓ + p^{-j}(u − ℓ) : j ≥ J }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PFamily {
    pub limit: ExpVec,
    pub seed: ExpVec,
    pub start: u32,
}

impl PFamily {
    pub fn new(limit: ExpVec, seed: ExpVec, start: u32) -> Result<Self, SupportError> {
        if limit == seed {
            return Err(SupportError::DegenerateFamily);
        }
        if limit.dim() != seed.dim() {
            return Err(SupportError::DimensionMismatch);
        }
        Ok(PFamily { limit, seed, start })
    }

    pub fn dim(&self) -> usize {
        self.limit.dim()
    }

    /// `u − ℓ`.
    pub fn direction(&self) -> ExpVec {
        self.seed.sub(&self.limit)
    }

    pub fn member(&self, p: u64, j: u32) -> ExpVec {
        let scale = crate::linalg::Q::new(BigInt::one(), BigInt::from(p).pow(j));
        self.limit.add(&self.direction().scale(&scale))
    }

    /// Members with index in `start..start + count`.
    pub fn members(&self, p: u64, count: u32) -> Vec<ExpVec> {
        (self.start..self.start + count).map(|j| self.member(p, j)).collect()
    }

    pub fn with_start(&self, start: u32) -> PFamily {
        PFamily { start, ..self.clone() }
    }

    pub fn translate(&self, g: &ExpVec) -> PFamily {
        PFamily { limit: self.limit.add(g), seed: self.seed.add(g), start: self.start }
    }

    /// Decides membership exactly: `x = ℓ + p^{-j}(u−ℓ)` for some `j ≥ J`.
    pub fn contains(&self, p: u64, x: &ExpVec) -> bool {
        let dir = self.direction();
        let off = x.sub(&self.limit);
        // find the scalar s with off = s·dir
        let Some(i) = (0..dir.dim()).find(|&i| dir.num()[i] != BigInt::from(0)) else {
            return false;
        };
        let s = off.coord(i) / dir.coord(i);
        if dir.scale(&s) != off {
            return false;
        }
        if s <= crate::linalg::q(0) || !s.numer().is_one() {
            return false;
        }
        let (n, j) = split_p_part(s.denom(), p);
        n.is_one() && j >= self.start
    }

    /// Prime-to-`p` part shared by every member's denominator.
    pub fn denominator_n(&self, p: u64) -> BigInt {
        let (a, _) = self.limit.denominator_split(p);
        let (b, _) = self.seed.denominator_split(p);
        a.lcm(&b)
    }

    /// Whether members increase toward the limit under `order`.
    pub fn is_increasing(&self, order: &WeightOrder) -> bool {
        order.sign(&self.direction()) == Ordering::Less
    }
}

/// A finite set together with finitely many p-families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredSupport {
    pub p: u64,
    pub d: usize,
    pub finite: BTreeSet<ExpVec>,
    pub families: Vec<PFamily>,
}

impl StructuredSupport {
    pub fn empty(p: u64, d: usize) -> Self {
        StructuredSupport { p, d, finite: BTreeSet::new(), families: vec![] }
    }

    pub fn finite(p: u64, d: usize, pts: impl IntoIterator<Item = ExpVec>) -> Result<Self, SupportError> {
        let mut s = Self::empty(p, d);
        for x in pts {
            if x.dim() != d {
                return Err(SupportError::DimensionMismatch);
            }
            s.finite.insert(x);
        }
        Ok(s)
    }

    pub fn with_family(mut self, f: PFamily) -> Result<Self, SupportError> {
        if f.dim() != self.d {
            return Err(SupportError::DimensionMismatch);
        }
        if !self.families.contains(&f) {
            self.families.push(f);
        }
        Ok(self)
    }

    pub fn is_finite(&self) -> bool {
        self.families.is_empty()
    }

    pub fn contains(&self, x: &ExpVec) -> bool {
        self.finite.contains(x) || self.families.iter().any(|f| f.contains(self.p, x))
    }

    /// Finite part plus the first `per_family` members of every family.
    pub fn sample(&self, per_family: u32) -> Vec<ExpVec> {
        let mut out: BTreeSet<ExpVec> = self.finite.clone();
        for f in &self.families {
            out.extend(f.members(self.p, per_family));
        }
        out.into_iter().collect()
    }
}
