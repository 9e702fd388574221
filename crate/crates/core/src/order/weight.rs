use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{ExpVec, OrderError};
use crate::linalg::{det, q, Q};

/// A total group order on ℚᵈ: compare by the first row, break ties with the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightOrder {
    rows: Vec<Vec<Q>>,
}

impl WeightOrder {
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Self, OrderError> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(OrderError::DimensionMismatch { expected: d, found: rows.first().map_or(0, |r| r.len()) });
        }
        if det(&rows).is_zero() {
            return Err(OrderError::SingularOrder);
        }
        Ok(WeightOrder { rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, OrderError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// Identity rows: plain lexicographic order.
    pub fn lex(d: usize) -> Self {
        let rows = (0..d).map(|i| (0..d).map(|j| q((i == j) as i64)).collect()).collect();
        WeightOrder { rows }
    }

    /// Rows `w₁`, then the standard basis vectors completing it to full rank.
    pub fn with_primary(w1: Vec<Q>) -> Result<Self, OrderError> {
        let d = w1.len();
        let mut rows = vec![w1];
        for i in 0..d {
            if rows.len() == d {
                break;
            }
            let e: Vec<Q> = (0..d).map(|j| q((i == j) as i64)).collect();
            let mut trial = rows.clone();
            trial.push(e);
            if crate::linalg::rank(&trial, d) == trial.len() {
                rows = trial;
            }
        }
        Self::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn primary(&self) -> &[Q] {
        &self.rows[0]
    }

    /// `w₁·a`, the scalar used for valuations and cutoffs.
    pub fn value(&self, a: &ExpVec) -> Q {
        a.dot(&self.rows[0])
    }

    pub fn compare(&self, a: &ExpVec, b: &ExpVec) -> Result<Ordering, OrderError> {
        if a.dim() != self.dim() || b.dim() != self.dim() {
            return Err(OrderError::DimensionMismatch {
                expected: self.dim(),
                found: if a.dim() != self.dim() { a.dim() } else { b.dim() },
            });
        }
        Ok(self.cmp_unchecked(a, b))
    }

    pub(crate) fn cmp_unchecked(&self, a: &ExpVec, b: &ExpVec) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let diff = a.sub(b);
        self.sign(&diff)
    }

    /// Sign of `x` under the order (`Less` means `x ≺ 0`).
    pub fn sign(&self, x: &ExpVec) -> Ordering {
        for r in &self.rows {
            let v = x.dot(r);
            if v.is_positive() {
                return Ordering::Greater;
            }
            if v.is_negative() {
                return Ordering::Less;
            }
        }
        Ordering::Equal
    }

    /// Index of the first row on which `x` is nonzero.
    pub fn deciding_row(&self, x: &ExpVec) -> Option<usize> {
        self.rows.iter().position(|r| !x.dot(r).is_zero())
    }

    /// A new order whose first row is `w1` and whose remaining rows are these.
    pub fn with_new_primary(&self, w1: Vec<Q>) -> Result<Self, OrderError> {
        let mut rows = vec![w1];
        rows.extend(self.rows.iter().cloned());
        let d = self.dim();
        let mut keep: Vec<Vec<Q>> = Vec::new();
        for r in rows {
            let mut t = keep.clone();
            t.push(r);
            if crate::linalg::rank(&t, d) == t.len() {
                keep = t;
            }
        }
        Self::new(keep)
    }
}
