use itertools::Itertools;

use crate::ff::{factor, Embedding, FFElem, Field, FfError, Poly};

/// Dense polynomial in `z` whose coefficients are polynomials in `x`, constant term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct BiPoly {
    field: Field,
    c: Vec<Poly>,
}

impl BiPoly {
    pub(crate) fn new(field: &Field, mut c: Vec<Poly>) -> BiPoly {
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        BiPoly { field: field.clone(), c }
    }

    fn zero(field: &Field) -> BiPoly {
        BiPoly { field: field.clone(), c: vec![] }
    }

    fn one(field: &Field) -> BiPoly {
        BiPoly::new(field, vec![Poly::one(field)])
    }

    /// `Σ u_i z^i` with constant coefficients.
    fn from_z(u: &Poly) -> BiPoly {
        let f = u.field();
        BiPoly::new(f, u.coeffs().iter().map(Poly::constant).collect())
    }

    pub(crate) fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn coeffs(&self) -> &[Poly] {
        &self.c
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub(crate) fn deg_z(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub(crate) fn deg_x(&self) -> usize {
        self.c.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    fn lc(&self) -> &Poly {
        self.c.last().expect("nonzero")
    }

    fn add(&self, o: &BiPoly) -> BiPoly {
        let n = self.c.len().max(o.c.len());
        let z = Poly::zero(&self.field);
        let c = (0..n).map(|i| self.c.get(i).unwrap_or(&z).add(o.c.get(i).unwrap_or(&z))).collect();
        BiPoly::new(&self.field, c)
    }

    fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    fn neg(&self) -> BiPoly {
        BiPoly::new(&self.field, self.c.iter().map(|p| p.neg()).collect())
    }

    pub(crate) fn mul(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut c = vec![Poly::zero(&self.field); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(&self.field, c)
    }

    fn scale(&self, s: &Poly) -> BiPoly {
        BiPoly::new(&self.field, self.c.iter().map(|p| p.mul(s)).collect())
    }

    fn scale_const(&self, s: &FFElem) -> BiPoly {
        BiPoly::new(&self.field, self.c.iter().map(|p| p.scale(s)).collect())
    }

    fn derivative_z(&self) -> BiPoly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, p)| p.scale(&self.field.from_int(i as i64))).collect();
        BiPoly::new(&self.field, c)
    }

    /// Drops every power `x^j` with `j ≥ k`.
    fn trunc_x(&self, k: usize) -> BiPoly {
        let c = self.c.iter().map(|p| Poly::new(&self.field, &p.coeffs().into_iter().take(k).collect::<Vec<_>>())).collect();
        BiPoly::new(&self.field, c)
    }

    /// Coefficient of `x^j`, as a polynomial in `z`.
    fn x_coeff(&self, j: usize) -> Poly {
        Poly::new(&self.field, &self.c.iter().map(|p| p.coeff(j)).collect::<Vec<_>>())
    }

    /// `self + x^j·u(z)`.
    fn add_x_power(&self, j: usize, u: &Poly) -> BiPoly {
        let xj = Poly::monomial(&self.field.one(), j);
        self.add(&BiPoly::from_z(u).scale(&xj))
    }

    fn eval_x(&self, a: &FFElem) -> Poly {
        Poly::new(&self.field, &self.c.iter().map(|p| p.eval(a)).collect::<Vec<_>>())
    }

    /// `x ↦ x + a`.
    fn shift_x(&self, a: &FFElem) -> BiPoly {
        let lin = Poly::new(&self.field, &[a.clone(), self.field.one()]);
        BiPoly::new(&self.field, self.c.iter().map(|p| p.compose(&lin)).collect())
    }

    /// `a·lc(b)^{deg a − deg b + 1} mod b`.
    fn pseudo_rem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_z().expect("nonzero divisor");
        let lb = b.lc().clone();
        let mut r = self.clone();
        while let Some(dr) = r.deg_z() {
            if dr < db {
                break;
            }
            let lr = r.lc().clone();
            let mut shifted = vec![Poly::zero(&self.field); dr - db];
            shifted.extend(b.c.iter().map(|p| p.mul(&lr)));
            r = r.scale(&lb).sub(&BiPoly::new(&self.field, shifted));
        }
        r
    }

    fn content(&self) -> Poly {
        let mut g = Poly::zero(&self.field);
        for p in &self.c {
            g = g.gcd(p);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part(&self) -> BiPoly {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        BiPoly::new(&self.field, self.c.iter().map(|p| p.div_exact(&g).expect("content divides")).collect())
    }

    /// Scales a polynomial whose leading coefficient is a nonzero constant to be monic.
    fn monic_const(&self) -> Option<BiPoly> {
        let l = self.lc();
        if l.degree() != Some(0) {
            return None;
        }
        Some(self.scale_const(&l.lc().inv().expect("nonzero")))
    }

    /// Greatest common divisor over `F(x)[z]` of two polynomials monic in `z`.
    fn gcd_monic(&self, o: &BiPoly) -> BiPoly {
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.deg_z() < b.deg_z() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        // a divides a monic polynomial, so its leading coefficient is constant
        a.monic_const().expect("divisor of a monic polynomial")
    }

    /// Exact quotient by a polynomial monic in `z`.
    pub(crate) fn div_monic(&self, d: &BiPoly) -> Option<BiPoly> {
        let dd = d.deg_z()?;
        debug_assert!(d.lc().is_one());
        let mut r = self.clone();
        let n = self.deg_z()?;
        if n < dd {
            return None;
        }
        let mut q = vec![Poly::zero(&self.field); n - dd + 1];
        while let Some(dr) = r.deg_z() {
            if dr < dd {
                break;
            }
            let l = r.lc().clone();
            q[dr - dd] = l.clone();
            let mut sh = vec![Poly::zero(&self.field); dr - dd];
            sh.extend(d.c.iter().map(|p| p.mul(&l)));
            r = r.sub(&BiPoly::new(&self.field, sh));
        }
        r.is_zero().then(|| BiPoly::new(&self.field, q))
    }

    pub(crate) fn map(&self, emb: &Embedding) -> BiPoly {
        BiPoly::new(emb.dst(), self.c.iter().map(|p| p.map(emb)).collect())
    }

    fn preimage(&self, emb: &Embedding) -> Option<BiPoly> {
        Some(BiPoly::new(emb.src(), self.c.iter().map(|p| p.preimage(emb)).collect::<Option<Vec<_>>>()?))
    }

    /// Applies `a ↦ a^q` to every coefficient.
    fn frobenius_power(&self, q: u64) -> BiPoly {
        let c = self
            .c
            .iter()
            .map(|p| Poly::new(&self.field, &p.coeffs().iter().map(|a| a.pow(q as u128)).collect::<Vec<_>>()))
            .collect();
        BiPoly::new(&self.field, c)
    }

    /// `H` with `H^p = self`, when every exponent of `x` and `z` is a multiple of `p`.
    fn pth_root(&self) -> Option<BiPoly> {
        let p = self.field.p() as usize;
        let mut c = Vec::new();
        for (i, a) in self.c.iter().enumerate() {
            if i % p != 0 {
                if !a.is_zero() {
                    return None;
                }
                continue;
            }
            c.push(a.pth_root_of_pth_power()?);
        }
        Some(BiPoly::new(&self.field, c))
    }

    /// `self(x + s·z^k, z)`.
    fn triangular(&self, k: usize, s: &FFElem) -> BiPoly {
        let mut pz = vec![Poly::zero(&self.field); k + 1];
        pz[0] = Poly::x(&self.field);
        pz[k] = Poly::constant(s);
        let p = BiPoly::new(&self.field, pz);
        let mut out = BiPoly::zero(&self.field);
        for (i, a) in self.c.iter().enumerate() {
            // Horner in x with x replaced by p
            let mut acc = BiPoly::zero(&self.field);
            for coef in a.coeffs().iter().rev() {
                acc = acc.mul(&p).add(&BiPoly::new(&self.field, vec![Poly::constant(coef)]));
            }
            let mut zi = vec![Poly::zero(&self.field); i];
            zi.push(Poly::one(&self.field));
            out = out.add(&acc.mul(&BiPoly::new(&self.field, zi)));
        }
        out
    }

    fn sort_key(&self) -> (usize, Vec<Vec<u64>>) {
        (self.c.len(), self.c.iter().map(|p| p.raw().to_vec()).collect())
    }
}

/// Monic irreducible factors over the coefficient field with multiplicities, plus the
/// number of recombination subsets tried.
pub(crate) struct BiFactors {
    pub(crate) factors: Vec<(BiPoly, usize)>,
    pub(crate) subsets_tested: usize,
}

/// Factors a polynomial monic in `z` over `F[x]` into monic irreducibles over `F`.
pub(crate) fn factor_bipoly(g: &BiPoly) -> Result<BiFactors, FfError> {
    let mut tested = 0;
    let factors = factor_rec(g, &mut tested)?;
    Ok(BiFactors { factors, subsets_tested: tested })
}

fn merge(mut a: Vec<(BiPoly, usize)>, b: Vec<(BiPoly, usize)>) -> Vec<(BiPoly, usize)> {
    for (f, m) in b {
        match a.iter_mut().find(|(g, _)| *g == f) {
            Some(e) => e.1 += m,
            None => a.push((f, m)),
        }
    }
    a.sort_by_key(|(f, _)| f.sort_key());
    a
}

fn factor_rec(g: &BiPoly, tested: &mut usize) -> Result<Vec<(BiPoly, usize)>, FfError> {
    let Some(n) = g.deg_z() else {
        return Ok(vec![]);
    };
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![(g.clone(), 1)]);
    }
    let d = g.derivative_z();
    if d.is_zero() {
        if let Some(h) = g.pth_root() {
            let p = g.field.p() as usize;
            return Ok(factor_rec(&h, tested)?.into_iter().map(|(f, m)| (f, m * p)).collect());
        }
        // x ↦ x + z^k is an automorphism of F[x, z] and makes the z-derivative nonzero
        let p = g.field.p() as usize;
        let k = (n + 1..).find(|k| k % p != 0).expect("exists");
        let one = g.field.one();
        let moved = g.triangular(k, &one).monic_const().expect("unique top term");
        let back = |f: BiPoly| f.triangular(k, &-&one).monic_const().expect("factor of a monic polynomial");
        let fs = factor_rec(&moved, tested)?;
        return Ok(merge(vec![], fs.into_iter().map(|(f, m)| (back(f), m)).collect()));
    }
    let c = g.gcd_monic(&d);
    if c.deg_z() != Some(0) {
        let rest = g.div_monic(&c).expect("gcd divides");
        let a = factor_rec(&c, tested)?;
        let b = factor_rec(&rest, tested)?;
        return Ok(merge(a, b));
    }
    let fs = factor_squarefree(g, tested)?;
    Ok(merge(vec![], fs.into_iter().map(|f| (f, 1)).collect()))
}

fn good_point(g: &BiPoly) -> Option<FFElem> {
    g.field.elements().find(|a| {
        let u = g.eval_x(a);
        u.gcd(&u.derivative()).is_one()
    })
}

fn factor_squarefree(g: &BiPoly, tested: &mut usize) -> Result<Vec<BiPoly>, FfError> {
    if let Some(a) = good_point(g) {
        return factor_at(g, &a, tested);
    }
    // every specialization collides: work over an extension and descend along Frobenius orbits
    let q = g.field.q();
    for m in 2.. {
        let (_, emb) = g.field.extension(m)?;
        let gb = g.map(&emb);
        let Some(a) = good_point(&gb) else { continue };
        let over = factor_at(&gb, &a, tested)?;
        return Ok(descend(over, &emb, q));
    }
    unreachable!()
}

fn descend(mut over: Vec<BiPoly>, emb: &Embedding, q: u64) -> Vec<BiPoly> {
    let mut out = Vec::new();
    while let Some(f) = over.pop() {
        let mut prod = f.clone();
        let mut cur = f.frobenius_power(q);
        while cur != f {
            let i = over.iter().position(|h| *h == cur).expect("Galois orbit closes");
            over.remove(i);
            prod = prod.mul(&cur);
            cur = cur.frobenius_power(q);
        }
        out.push(prod.preimage(emb).expect("orbit products are defined over the base field"));
    }
    out.sort_by_key(|f| f.sort_key());
    out
}

fn factor_at(g: &BiPoly, a: &FFElem, tested: &mut usize) -> Result<Vec<BiPoly>, FfError> {
    let ga = g.shift_x(a);
    let u = ga.eval_x(&g.field.zero());
    let us: Vec<Poly> = factor(&u).into_iter().map(|(f, _)| f).collect();
    if us.len() <= 1 {
        return Ok(vec![g.clone()]);
    }
    let k = ga.deg_x() + 1;
    let lifted = lift_all(&ga, &us, k);
    let found = recombine(&ga, lifted, k, tested);
    let back = -a;
    Ok(found.into_iter().map(|f| f.shift_x(&back)).collect())
}

/// Lifts `g ≡ Π us (mod x)` to a factorization modulo `x^k`.
fn lift_all(g: &BiPoly, us: &[Poly], k: usize) -> Vec<BiPoly> {
    if us.len() == 1 {
        return vec![g.trunc_x(k)];
    }
    let f = g.field();
    let rest = us[1..].iter().fold(Poly::one(f), |acc, u| acc.mul(u));
    let (a, b) = lift_two(g, &us[0], &rest, k);
    let mut out = vec![a];
    out.extend(lift_all(&b, &us[1..], k));
    out
}

fn lift_two(g: &BiPoly, a0: &Poly, b0: &Poly, k: usize) -> (BiPoly, BiPoly) {
    let (one, _, t) = a0.xgcd(b0);
    debug_assert!(one.is_one());
    let mut a = BiPoly::from_z(a0);
    let mut b = BiPoly::from_z(b0);
    for j in 1..k {
        let e = g.sub(&a.mul(&b)).x_coeff(j);
        if e.is_zero() {
            continue;
        }
        // α·b₀ + β·a₀ = e with deg α < deg a₀ keeps a monic
        let alpha = e.mul(&t).rem(a0);
        let beta = e.sub(&alpha.mul(b0)).div_exact(a0).expect("a₀ divides");
        a = a.add_x_power(j, &alpha);
        b = b.add_x_power(j, &beta);
    }
    (a.trunc_x(k), b.trunc_x(k))
}

fn recombine(g: &BiPoly, lifted: Vec<BiPoly>, k: usize, tested: &mut usize) -> Vec<BiPoly> {
    let mut active: Vec<BiPoly> = lifted;
    let mut rest = g.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= active.len() {
        let mut hit = None;
        for idx in (0..active.len()).combinations(s) {
            *tested += 1;
            let h = idx.iter().fold(BiPoly::one(g.field()), |acc, &i| acc.mul(&active[i]).trunc_x(k));
            if let Some(qt) = rest.div_monic(&h) {
                hit = Some((idx, h, qt));
                break;
            }
        }
        match hit {
            Some((idx, h, qt)) => {
                out.push(h);
                rest = qt;
                for i in idx.into_iter().rev() {
                    active.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rest.deg_z().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(f: &Field, rows: &[&[i64]]) -> BiPoly {
        BiPoly::new(f, rows.iter().map(|r| Poly::from_ints(f, r)).collect())
    }

    fn product(fs: &[(BiPoly, usize)], f: &Field) -> BiPoly {
        fs.iter().fold(BiPoly::one(f), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)))
    }

    #[test]
    fn difference_of_squares() {
        let f3 = Field::prime(3).unwrap();
        // z² − x²
        let g = bi(&f3, &[&[0, 0, -1], &[], &[1]]);
        let r = factor_bipoly(&g).unwrap();
        assert_eq!(r.factors.len(), 2);
        assert_eq!(product(&r.factors, &f3), g);
    }

    #[test]
    fn cusp_is_irreducible() {
        let f5 = Field::prime(5).unwrap();
        let g = bi(&f5, &[&[0, 0, 0, -1], &[], &[1]]);
        assert_eq!(factor_bipoly(&g).unwrap().factors, vec![(g, 1)]);
    }

    #[test]
    fn repeated_and_inseparable() {
        let f2 = Field::prime(2).unwrap();
        // (z + x)²·(z² + x) over 𝔽₂
        let a = bi(&f2, &[&[0, 1], &[1]]);
        let b = bi(&f2, &[&[0, 1], &[], &[1]]);
        let g = a.mul(&a).mul(&b);
        let r = factor_bipoly(&g).unwrap();
        assert_eq!(product(&r.factors, &f2), g);
        assert!(r.factors.contains(&(a, 2)));
        assert!(r.factors.contains(&(b, 1)));
    }

    #[test]
    fn small_field_needs_extension_for_a_point() {
        // every a ∈ 𝔽₂ makes (z − x)(z − x − 1)(z − x² − x) collide
        let f2 = Field::prime(2).unwrap();
        let g = bi(&f2, &[&[0, 1], &[1]]).mul(&bi(&f2, &[&[1, 1], &[1]])).mul(&bi(&f2, &[&[0, 1, 1], &[1]]));
        let r = factor_bipoly(&g).unwrap();
        assert_eq!(r.factors.len(), 3);
        assert_eq!(product(&r.factors, &f2), g);
    }
}
