use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::biguint_pow;
use super::{Embedding, FFElem, FfError, Field, Poly};

/// Squarefree decomposition of a nonzero polynomial: monic pairwise coprime
/// `(gᵢ, mᵢ)` with `f = lc(f)·Π gᵢ^mᵢ`, multiplicities distinct.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out: Vec<(Poly, usize)> = Vec::new();
    sqf_into(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn push_merge(out: &mut Vec<(Poly, usize)>, g: Poly, m: usize) {
    if g.degree().unwrap_or(0) == 0 {
        return;
    }
    if let Some(slot) = out.iter_mut().find(|(_, mm)| *mm == m) {
        slot.0 = slot.0.mul(&g);
    } else {
        out.push((g, m));
    }
}

fn sqf_into(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.field().p() as usize;
    let fp = f.derivative();
    if fp.is_zero() {
        let g = f.pth_root_of_pth_power().expect("zero derivative means a p-th power");
        sqf_into(&g, scale * p, out);
        return;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        push_merge(out, z, i * scale);
        i += 1;
        w = y.clone();
        c = c.div_exact(&y).expect("gcd divides");
    }
    if !c.is_one() {
        let g = c.pth_root_of_pth_power().expect("remaining cofactor is a p-th power");
        sqf_into(&g, scale * p, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = BigUint::from(field.q());
    let x = Poly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(&q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

/// Splits a monic squarefree product of degree-`d` irreducibles.
pub fn equal_degree<R: Rng>(f: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.q();
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        let a = Poly::from_raw(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.p() == 2 {
            // absolute trace of 𝔽_{q^d} down to 𝔽₂
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..field.k() * d {
                t = t.mulmod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (biguint_pow(q, d) - BigUint::one()) / BigUint::from(2u8);
            a.powmod(&e, f).sub(&Poly::one(field))
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicity, sorted.
pub fn factor_with_rng<R: Rng>(f: &Poly, rng: &mut R) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort();
    out
}

pub fn factor(f: &Poly) -> Vec<(Poly, usize)> {
    factor_with_rng(f, &mut ChaCha8Rng::seed_from_u64(0))
}

impl Poly {
    /// Distinct roots in the coefficient field, sorted by encoding.
    pub fn roots(&self) -> Vec<FFElem> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let f = self.monic();
        let field = f.field();
        let x = Poly::x(field);
        let xq = x.powmod(&BigUint::from(field.q()), &f);
        let g = xq.sub(&x).gcd(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut r: Vec<FFElem> = equal_degree(&g, 1, &mut rng)
            .iter()
            .map(|l| -&l.coeff(0))
            .collect();
        r.sort();
        r
    }
}

/// A root of an irreducible factor, living in the minimal extension containing it.
#[derive(Clone, Debug)]
pub struct ExtRoot {
    pub value: FFElem,
    pub extension_degree: usize,
    pub embedding: Embedding,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct UnivariateFactorization {
    pub unit: FFElem,
    pub factors: Vec<(Poly, usize)>,
    /// Filled when extensions are allowed.
    pub roots: Vec<ExtRoot>,
}

impl UnivariateFactorization {
    pub fn expand(&self) -> Poly {
        let base = Poly::constant(&self.unit);
        self.factors.iter().fold(base, |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }
}

pub fn factor_univariate(f: &Poly, allow_extension: bool, seed: u64) -> Result<UnivariateFactorization, FfError> {
    if f.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = factor_with_rng(f, &mut rng);
    let mut roots = Vec::new();
    if allow_extension {
        for (g, m) in &factors {
            let e = g.degree().expect("nonconstant factor");
            let (_, emb) = f.field().extension(e)?;
            for r in g.map(&emb).roots() {
                roots.push(ExtRoot { value: r, extension_degree: e, embedding: emb.clone(), multiplicity: *m });
            }
        }
    }
    Ok(UnivariateFactorization { unit: f.lc(), factors, roots })
}

/// All roots of `f` with multiplicity, each mapped into one common extension of
/// degree `lcm` of the factor degrees. Returns the extension and its embedding too.
pub fn split_completely(f: &Poly, seed: u64) -> Result<(Field, Embedding, Vec<(FFElem, usize)>), FfError> {
    let fac = factor_univariate(f, false, seed)?;
    let l = fac
        .factors
        .iter()
        .map(|(g, _)| g.degree().unwrap_or(1))
        .fold(1usize, num_integer::lcm);
    let (big, emb) = f.field().extension(l)?;
    let mut out = Vec::new();
    for (g, m) in &fac.factors {
        for r in g.map(&emb).roots() {
            out.push((r, *m));
        }
    }
    out.sort();
    Ok((big, emb, out))
}
