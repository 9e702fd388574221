use std::cmp::Ordering;

use num_bigint::BigInt;

use super::{hensel_root, BranchStep, Method, RootError, RootExpansion, SeriesPoly};
use crate::ff::{factor_univariate, Embedding, Poly};
use crate::linalg::{qi, Q};
use crate::order::ExpVec;
use crate::series::{ExtQ, GPSeries};
use crate::support::{self, StructuredSupport};

/// Number of `p`-th root levels summed when none is given.
pub const DEFAULT_AS_DEPTH: u32 = 64;

/// `h = Σ_{j=1..depth} (f⁻)^{p^{-j}}`, a root of `Xᵖ − X − f⁻` exact below its cutoff.
///
/// Every term `c·t^v` of the true root with `w·v < 0` collects `f⁻(pʲv)^{p^{-j}}` over the
/// finitely many `j` with `pʲv ∈ supp f⁻`; summing level by level gives the same terms.
/// Levels beyond `depth` only contribute at primary weight `≥ ν(f⁻)/p^{depth+1}`.
pub fn artin_schreier_tail(f_minus: &GPSeries, depth: u32) -> Result<GPSeries, RootError> {
    let order = f_minus.order().clone();
    if let Some(e) = f_minus.exponents().find(|e| order.sign(e) != Ordering::Less) {
        return Err(RootError::Series(crate::series::SeriesError::SupportMismatch(e.clone())));
    }
    let p = f_minus.field().p();
    let pq = qi(&BigInt::from(p));
    let mut cut = ExtQ::Infinity;
    if let ExtQ::Finite(l) = f_minus.cutoff() {
        cut = ExtQ::Finite(l / &pq);
    }
    if let Some(nu) = f_minus.exponents().map(|e| order.value(e)).min() {
        let denom = qi(&BigInt::from(p).pow(depth + 1));
        cut = cut.min(ExtQ::Finite(nu / denom));
    }
    let mut h = f_minus.zero_like(ExtQ::Infinity);
    let mut level = f_minus.as_exact();
    for _ in 0..depth {
        level = level.pth_root_series();
        h = h.add(&level)?;
    }
    let mut h = h.truncate(&cut);
    // tails of terms on one p-power orbit can cancel for good, e.g. f⁻ = t⁻² + t⁻¹ over 𝔽₂
    // has the finite root t⁻¹; then the stored terms are the whole tail
    if f_minus.is_exact() {
        let e = h.as_exact();
        if e.pow(p)?.sub(&e)?.sub(f_minus)?.is_zero_stored() {
            let pts = StructuredSupport::finite(p, f_minus.dim(), e.exponents().cloned())?;
            return Ok(e.with_support(pts)?);
        }
    }
    let base = match f_minus.support_model() {
        Some(m) => Some(m.clone()),
        None if f_minus.is_exact() => {
            Some(StructuredSupport::finite(p, f_minus.dim(), f_minus.exponents().cloned())?)
        }
        None => None,
    };
    if let Some(b) = base {
        if let Ok(m) = support::scale_p_inverse_union_from(&b, &order, 1) {
            h = h.with_support(m)?;
        }
    }
    Ok(h)
}

/// All `p` roots of `Xᵖ − X = f`, each `g + h` with `h` the tail of `f⁻` and `g` a Hensel lift
/// of a root of `Xᵖ − X − f⁺(0)`; roots needing an extension of the coefficient field live there.
pub fn artin_schreier_roots(f: &GPSeries, target: &Q, depth: u32) -> Result<Vec<RootExpansion>, RootError> {
    let field = f.field().clone();
    let p = field.p();
    let t = ExtQ::Finite(target.clone());
    let (fplus, fminus) = f.split_pm();
    if fplus.cutoff() < &t {
        return Err(RootError::InsufficientPrecision { have: fplus.cutoff().clone(), need: t });
    }
    let h = artin_schreier_tail(&fminus, depth)?;
    let h_residual = h.cutoff().scale(&qi(&BigInt::from(p)));

    let zero = ExpVec::zero(f.dim());
    let c0 = fplus.coeff(&zero);
    let mut res = vec![field.zero(); p as usize + 1];
    res[0] = -&c0;
    res[1] = -&field.one();
    res[p as usize] = field.one();
    let residue = Poly::new(&field, &res);
    let fac = factor_univariate(&residue, true, 0)?;
    let mut residue_roots = fac.roots.clone();
    residue_roots.sort_by(|a, b| a.extension_degree.cmp(&b.extension_degree).then(a.value.cmp(&b.value)));

    let h_lead = h.leading_term().ok().flatten();
    let mut out = Vec::with_capacity(p as usize);
    for r in residue_roots {
        let emb: Embedding = r.embedding.clone();
        let ext = emb.dst().clone();
        let fp = fplus.map_field(&emb);
        let mut coeffs = vec![fp.zero_like(ExtQ::Infinity); p as usize + 1];
        coeffs[0] = fp.neg();
        coeffs[1] = fp.one_like().neg();
        coeffs[p as usize] = fp.one_like();
        let poly = SeriesPoly::new(coeffs)?;
        let g = hensel_root(&poly, &r.value, target)?;
        let hm = h.map_field(&emb);
        let mut root = g.root.add(&hm)?;
        if g.root.is_exact() {
            if let Some(hmodel) = hm.support_model() {
                let pts: Vec<ExpVec> = g.root.exponents().cloned().collect();
                let gm = StructuredSupport::finite(p, f.dim(), pts)?;
                if let Ok(m) = support::union(hmodel, &gm) {
                    root = root.with_support(m)?;
                }
            }
        }
        let mut log = Vec::new();
        match &h_lead {
            Some((e, c)) => log.push(BranchStep { exponent: e.clone(), coefficient: emb.apply(c), method: Method::ArtinSchreier }),
            None => log.push(BranchStep { exponent: zero.clone(), coefficient: ext.one(), method: Method::ArtinSchreier }),
        }
        log.extend(g.branch_log);
        out.push(RootExpansion {
            approximant: g.approximant.add(&hm.as_exact())?,
            root,
            residual_valuation: g.residual_valuation.min(h_residual.clone()),
            branch_log: log,
            extension_field: ext,
            embedding: emb,
            multiplicity: 1,
        });
    }
    Ok(out)
}

/// The root of `Xᵖ − X = f` whose residue is the least root of `Xᵖ − X − f⁺(0)`.
pub fn artin_schreier_root(f: &GPSeries, target: &Q, depth: u32) -> Result<RootExpansion, RootError> {
    Ok(artin_schreier_roots(f, target, depth)?.into_iter().next().expect("p roots"))
}
