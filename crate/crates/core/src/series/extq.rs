use std::fmt;

use num_traits::Signed;

use crate::linalg::{fmt_q, parse_q, Q};

/// A rational or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtQ {
    Finite(Q),
    Infinity,
}

impl ExtQ {
    pub fn int(n: i64) -> Self {
        ExtQ::Finite(crate::linalg::q(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtQ::Infinity)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            ExtQ::Finite(q) => Some(q),
            ExtQ::Infinity => None,
        }
    }

    pub fn shift(&self, by: &Q) -> ExtQ {
        match self {
            ExtQ::Finite(q) => ExtQ::Finite(q + by),
            ExtQ::Infinity => ExtQ::Infinity,
        }
    }

    pub fn add(&self, o: &ExtQ) -> ExtQ {
        match (self, o) {
            (ExtQ::Finite(a), ExtQ::Finite(b)) => ExtQ::Finite(a + b),
            _ => ExtQ::Infinity,
        }
    }

    /// Multiplies by a positive rational.
    pub fn scale(&self, s: &Q) -> ExtQ {
        debug_assert!(s.is_positive());
        match self {
            ExtQ::Finite(q) => ExtQ::Finite(q * s),
            ExtQ::Infinity => ExtQ::Infinity,
        }
    }

    pub fn parse(s: &str) -> Option<ExtQ> {
        match s.trim() {
            "inf" | "+inf" | "infinity" => Some(ExtQ::Infinity),
            t => parse_q(t).map(ExtQ::Finite),
        }
    }
}

impl fmt::Display for ExtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtQ::Finite(q) => write!(f, "{}", fmt_q(q)),
            ExtQ::Infinity => write!(f, "inf"),
        }
    }
}

impl From<Q> for ExtQ {
    fn from(q: Q) -> Self {
        ExtQ::Finite(q)
    }
}
