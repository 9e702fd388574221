use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Cone, ExpVec, OrderError};
use crate::linalg::{det, identity_int, mat_mul_int, solve, to_q, Q};

/// Smith normal form `U·M·V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    /// The diagonal entries `d₁ | d₂ | …` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, |r| r.len()));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

pub fn snf(m: &[Vec<BigInt>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = identity_int(rows);
    let mut v = identity_int(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            for r in v.iter_mut() {
                r.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let qt = a[i][t].div_floor(&a[t][t]);
                for j in 0..cols {
                    let s = &qt * &a[t][j];
                    a[i][j] -= s;
                }
                for j in 0..rows {
                    let s = &qt * &u[t][j];
                    u[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let qt = a[t][j].div_floor(&a[t][t]);
                for i in 0..rows {
                    let s = &qt * &a[i][t];
                    a[i][j] -= s;
                }
                for i in 0..cols {
                    let s = &qt * &v[i][t];
                    v[i][j] -= s;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility: fold an offending row into the pivot row
            let piv = a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &piv).is_zero()));
            if let Some(i) = bad {
                for j in 0..cols {
                    let s = a[i][j].clone();
                    a[t][j] += s;
                }
                for j in 0..rows {
                    let s = u[i][j].clone();
                    u[t][j] += s;
                }
                continue;
            }
            if a[t][t].is_negative() {
                for j in 0..cols {
                    a[t][j] = -&a[t][j];
                }
                for j in 0..rows {
                    u[t][j] = -&u[t][j];
                }
            }
            break;
        }
    }
    finish(a, u, v)
}

fn finish(a: Vec<Vec<BigInt>>, u: Vec<Vec<BigInt>>, v: Vec<Vec<BigInt>>) -> SmithForm {
    SmithForm { u, d: a, v }
}

/// Integer determinant via rationals.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let mq: Vec<Vec<Q>> = m.iter().map(|r| to_q(r)).collect();
    det(&mq).to_integer()
}

/// Full-rank sublattice of ℤᵈ spanned by the columns of `basis`.
#[derive(Clone, Debug)]
pub struct IntLattice {
    basis: Vec<Vec<BigInt>>,
}

impl PartialEq for IntLattice {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}
impl Eq for IntLattice {}

impl IntLattice {
    /// `basis` is a d×d matrix whose columns generate the lattice.
    pub fn new(basis: Vec<Vec<BigInt>>) -> Result<Self, OrderError> {
        let d = basis.len();
        if basis.iter().any(|r| r.len() != d) {
            return Err(OrderError::DimensionMismatch { expected: d, found: basis.first().map_or(0, |r| r.len()) });
        }
        if det_int(&basis).is_zero() {
            return Err(OrderError::SingularMatrix);
        }
        Ok(IntLattice { basis: hnf(&basis) })
    }

    pub fn from_columns(cols: &[Vec<i64>]) -> Result<Self, OrderError> {
        let d = cols.len();
        let basis = (0..d)
            .map(|i| cols.iter().map(|c| BigInt::from(*c.get(i).unwrap_or(&0))).collect())
            .collect();
        Self::new(basis)
    }

    pub fn full(d: usize) -> Self {
        IntLattice { basis: identity_int(d) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Column basis in Hermite normal form.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        crate::linalg::transpose(&self.basis)
    }

    pub fn index(&self) -> BigInt {
        det_int(&self.basis).abs()
    }

    pub fn contains(&self, n: &[BigInt]) -> bool {
        let m: Vec<Vec<Q>> = self.basis.iter().map(|r| to_q(r)).collect();
        match solve(&m, &to_q(n)) {
            Some(x) => x.iter().all(|c| c.is_integer()),
            None => false,
        }
    }

    pub fn contains_i64(&self, n: &[i64]) -> bool {
        let nb: Vec<BigInt> = n.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&nb)
    }
}

/// Column-style Hermite normal form of a nonsingular square matrix:
/// lower triangular, positive diagonal, entries left of the diagonal in `[0, h_ii)`.
pub fn hnf(b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = b.len();
    let mut h: Vec<Vec<BigInt>> = b.to_vec();
    let col_axpy = |h: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, f: &BigInt| {
        for r in h.iter_mut() {
            let s = f * &r[src];
            r[dst] -= s;
        }
    };
    for i in 0..d {
        // gcd-reduce row i across columns i.. into column i
        loop {
            let nz: Vec<usize> = (i..d).filter(|&j| !h[i][j].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    if j != i {
                        for r in h.iter_mut() {
                            r.swap(i, j);
                        }
                    }
                }
                break;
            }
            let &jm = nz.iter().min_by_key(|&&j| h[i][j].abs()).unwrap();
            for &j in &nz {
                if j != jm {
                    let f = h[i][j].div_floor(&h[i][jm]);
                    col_axpy(&mut h, j, jm, &f);
                }
            }
        }
        if h[i][i].is_negative() {
            for r in h.iter_mut() {
                r[i] = -&r[i];
            }
        }
        let piv = h[i][i].clone();
        if piv.is_zero() {
            continue;
        }
        for j in 0..i {
            let f = h[i][j].div_floor(&piv);
            if !f.is_zero() {
                col_axpy(&mut h, j, i, &f);
            }
        }
    }
    h
}

/// `{n ∈ ℤᵈ : n·v ∈ ℤ}`; its index is the reduced denominator of `v`.
pub fn lattice_of_integrality(v: &ExpVec) -> IntLattice {
    let d = v.dim();
    let row = vec![v.num().to_vec()];
    let s = snf(&row);
    let g = s.d[0][0].clone();
    let den = v.den().clone();
    let factor = if g.is_zero() { BigInt::one() } else { &den / den.gcd(&g) };
    // n = V·m, and the constraint reads g·m₁ ≡ 0 mod den
    let mut basis = s.v.clone();
    for r in basis.iter_mut() {
        r[0] = &r[0] * &factor;
    }
    if d == 0 {
        return IntLattice { basis: vec![] };
    }
    IntLattice { basis: hnf(&basis) }
}

/// First `n` in the scan order (∞-norm shells, lexicographic within a shell)
/// lying in the interior of `c` and outside every lattice.
pub fn pick_outside_lattices(c: &Cone, lattices: &[IntLattice], bound: u64) -> Result<Vec<i64>, OrderError> {
    let d = c.dim_ambient();
    if lattices.iter().any(|l| l.index().is_one()) {
        return Err(OrderError::NotFound);
    }
    let b = bound as i64;
    for s in 1..=b {
        let mut found = None;
        for_each_box_point(d, s, &mut |n: &[i64]| {
            if found.is_some() || n.iter().map(|x| x.abs()).max() != Some(s) {
                return;
            }
            if c.contains_int(n, true).unwrap_or(false) && lattices.iter().all(|l| !l.contains_i64(n)) {
                found = Some(n.to_vec());
            }
        });
        if let Some(n) = found {
            return Ok(n);
        }
    }
    Err(OrderError::NotFound)
}

/// Visits `[-s, s]ᵈ` in lexicographic order.
pub(crate) fn for_each_box_point(d: usize, s: i64, f: &mut dyn FnMut(&[i64])) {
    let mut n = vec![-s; d];
    loop {
        f(&n);
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if n[i] < s {
                n[i] += 1;
                for x in n.iter_mut().skip(i + 1) {
                    *x = -s;
                }
                break;
            }
        }
    }
}

pub fn check_snf(m: &[Vec<BigInt>], s: &SmithForm) -> bool {
    let umv = mat_mul_int(&mat_mul_int(&s.u, m), &s.v);
    if umv != s.d {
        return false;
    }
    let rows = s.d.len();
    let cols = s.d.first().map_or(0, |r| r.len());
    for i in 0..rows {
        for j in 0..cols {
            if i != j && !s.d[i][j].is_zero() {
                return false;
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        if w[0].is_zero() {
            if !w[1].is_zero() {
                return false;
            }
        } else if !(&w[1] % &w[0]).is_zero() {
            return false;
        }
    }
    if diag.iter().any(|x| x.is_negative()) {
        return false;
    }
    det_int(&s.u).abs().is_one() && det_int(&s.v).abs().is_one()
}
