use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{artin_schreier_roots, cmp_logs, hensel_root, BranchStep, Method, RootError, RootExpansion, SeriesPoly};
use crate::bertini::LaurentPoly;
use crate::ff::{factor_univariate, Embedding, FFElem, Field, Poly};
use crate::linalg::{q, Q};
use crate::order::{ExpVec, WeightOrder};
use crate::series::{ExtQ, GPSeries};
use crate::support::{self, StructuredSupport};

#[derive(Clone, Debug)]
pub struct PuiseuxOptions {
    pub max_steps: usize,
    /// Levels of `p`-th roots summed by Artin–Schreier delegations.
    pub as_depth: u32,
    pub seed: u64,
}

impl Default for PuiseuxOptions {
    fn default() -> Self {
        PuiseuxOptions { max_steps: 20, as_depth: super::DEFAULT_AS_DEPTH, seed: 0 }
    }
}

/// A branch the driver stopped following.
#[derive(Clone, Debug)]
pub struct UnresolvedBranch {
    /// The finite sum of initial terms fixed so far.
    pub prefix: GPSeries,
    /// Number of roots (with multiplicity) that start with `prefix`.
    pub multiplicity: usize,
    pub branch_log: Vec<BranchStep>,
    pub extension_field: Field,
    pub embedding: Embedding,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct PuiseuxExpansion {
    pub roots: Vec<RootExpansion>,
    pub unresolved: Vec<UnresolvedBranch>,
    /// Least common multiple of the prime-to-`p` parts of all exponent denominators.
    pub denominator_n: BigInt,
}

impl PuiseuxExpansion {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    pub fn root_count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

pub fn newton_puiseux(f: &LaurentPoly, order: &WeightOrder, target: &Q, max_steps: usize) -> Result<PuiseuxExpansion, RootError> {
    newton_puiseux_with(f, order, target, &PuiseuxOptions { max_steps, ..Default::default() })
}

pub fn newton_puiseux_with(
    f: &LaurentPoly,
    order: &WeightOrder,
    target: &Q,
    opts: &PuiseuxOptions,
) -> Result<PuiseuxExpansion, RootError> {
    if f.deg_y().unwrap_or(0) == 0 {
        return Err(RootError::ConstantPolynomial);
    }
    if !f.is_monic_y() {
        return Err(RootError::NotMonicInY);
    }
    let g = SeriesPoly::from_laurent(f, order)?;
    let n = g.degree();
    let field = f.field().clone();
    let start = Branch {
        prefix: GPSeries::zero(&field, order),
        g,
        prev: None,
        mult: n,
        log: Vec::new(),
        steps: 0,
        emb: Embedding::identity(&field),
    };
    let mut ctx = Ctx { opts, target: target.clone(), roots: Vec::new(), unresolved: Vec::new() };
    ctx.expand(start)?;

    let count: usize = ctx.roots.iter().map(|r| r.multiplicity).sum::<usize>()
        + ctx.unresolved.iter().map(|u| u.multiplicity).sum::<usize>();
    if count != n {
        return Err(RootError::BranchExplosion(format!("{count} roots accounted for, degree {n}")));
    }
    let mut roots = ctx.roots;
    roots.sort_by(|a, b| cmp_logs(order, &a.branch_log, &b.branch_log));
    let mut unresolved = ctx.unresolved;
    unresolved.sort_by(|a, b| cmp_logs(order, &a.branch_log, &b.branch_log));

    let p = field.p();
    let mut nn = BigInt::one();
    let exps = roots
        .iter()
        .flat_map(|r| r.root.exponents().cloned().collect::<Vec<_>>())
        .chain(unresolved.iter().flat_map(|u| u.prefix.exponents().cloned().collect::<Vec<_>>()));
    for e in exps {
        nn = nn.lcm(&e.denominator_split(p).0);
    }
    Ok(PuiseuxExpansion { roots, unresolved, denominator_n: nn })
}

struct Branch {
    /// `g(y′) = F(prefix + y′)` exactly.
    g: SeriesPoly,
    prefix: GPSeries,
    prev: Option<ExpVec>,
    /// Roots of `g` whose leading exponent is above `prev`.
    mult: usize,
    log: Vec<BranchStep>,
    steps: usize,
    /// From the input field to the current one.
    emb: Embedding,
}

struct Ctx<'a> {
    opts: &'a PuiseuxOptions,
    target: Q,
    roots: Vec<RootExpansion>,
    unresolved: Vec<UnresolvedBranch>,
}

/// An edge of the lower Newton polygon: indices `i < k` and root exponent `γ`.
struct Edge {
    i: usize,
    k: usize,
    gamma: ExpVec,
}

fn lower_hull(order: &WeightOrder, leads: &[Option<ExpVec>]) -> Vec<Edge> {
    let n = leads.len() - 1;
    let mut edges = Vec::new();
    let mut i = leads.iter().position(|a| a.is_some()).expect("nonzero polynomial");
    while i < n {
        let ai = leads[i].as_ref().expect("hull vertex");
        let mut best: Option<(usize, ExpVec)> = None;
        for (k, ak) in leads.iter().enumerate().skip(i + 1) {
            let Some(ak) = ak else { continue };
            let slope = ak.sub(ai).scale(&Q::new(BigInt::one(), BigInt::from(k - i)));
            let better = match &best {
                None => true,
                Some((_, s)) => order.cmp_unchecked(&slope, s) != Ordering::Greater,
            };
            if better {
                best = Some((k, slope));
            }
        }
        let (k, slope) = best.expect("monic polynomial has a top coefficient");
        edges.push(Edge { i, k, gamma: slope.neg() });
        i = k;
    }
    edges
}

fn map_step(s: &BranchStep, emb: &Embedding) -> BranchStep {
    BranchStep { exponent: s.exponent.clone(), coefficient: emb.apply(&s.coefficient), method: s.method }
}

impl Ctx<'_> {
    fn expand(&mut self, mut b: Branch) -> Result<(), RootError> {
        let order = b.g.order().clone();
        let field = b.g.field().clone();

        let z = b.g.zero_root_multiplicity();
        if z > 0 {
            if z > b.mult {
                return Err(RootError::BranchExplosion("zero root beyond branch multiplicity".into()));
            }
            self.roots.push(RootExpansion {
                root: b.prefix.clone(),
                approximant: b.prefix.as_exact(),
                residual_valuation: ExtQ::Infinity,
                branch_log: b.log.clone(),
                extension_field: field.clone(),
                embedding: b.emb.clone(),
                multiplicity: z,
            });
            b.g = b.g.divide_by_y_power(z);
            b.mult -= z;
        }
        if b.mult == 0 {
            return Ok(());
        }

        let leads: Vec<Option<(ExpVec, FFElem)>> =
            b.g.coeffs().iter().map(|c| c.leading_term()).collect::<Result<_, _>>()?;
        let lead_exps: Vec<Option<ExpVec>> = leads.iter().map(|l| l.as_ref().map(|(e, _)| e.clone())).collect();
        let edges: Vec<Edge> = lower_hull(&order, &lead_exps)
            .into_iter()
            .filter(|e| b.prev.as_ref().is_none_or(|pv| order.cmp_unchecked(&e.gamma, pv) == Ordering::Greater))
            .collect();
        let total: usize = edges.iter().map(|e| e.k - e.i).sum();
        if total != b.mult {
            return Err(RootError::BranchExplosion(format!("{total} roots on the polygon, {} expected", b.mult)));
        }

        for edge in edges {
            let ai = lead_exps[edge.i].as_ref().expect("vertex");
            let e_val = ai.add(&edge.gamma.scale_int(edge.i as i64));
            let mut pc = vec![field.zero(); edge.k - edge.i + 1];
            for j in edge.i..=edge.k {
                if let Some((aj, cj)) = &leads[j] {
                    if aj.add(&edge.gamma.scale_int(j as i64)) == e_val {
                        pc[j - edge.i] = cj.clone();
                    }
                }
            }
            let pz = Poly::new(&field, &pc);
            if self.try_artin_schreier(&b, &edge, &pz)? {
                continue;
            }
            let fac = factor_univariate(&pz, true, self.opts.seed)?;
            let mut roots = fac.roots.clone();
            roots.sort_by(|x, y| x.extension_degree.cmp(&y.extension_degree).then(x.value.cmp(&y.value)));
            for r in roots {
                let emb = r.embedding.clone();
                let g = b.g.map_field(&emb);
                let prefix = b.prefix.map_field(&emb);
                let log: Vec<BranchStep> = b.log.iter().map(|s| map_step(s, &emb)).collect();
                let total_emb = b.emb.then(&emb);
                let c = r.value.clone();
                if r.multiplicity == 1 {
                    let h = g.rescale(&edge.gamma, &e_val);
                    let degenerate = h.coeffs().iter().any(|s| {
                        s.exponents().any(|e| !e.is_zero() && order.value(e).is_zero())
                    });
                    if !degenerate {
                        let ev = order.value(&e_val);
                        let tz = (&self.target - &ev).max(q(1));
                        let z = hensel_root(&h, &c, &tz)?;
                        let one = z.root.field().one();
                        let yprime = z.root.mul_monomial(&one, &edge.gamma);
                        let root = prefix.add(&yprime)?;
                        let approximant = prefix.add(&z.approximant.mul_monomial(&one, &edge.gamma))?;
                        let mut log = log;
                        log.push(BranchStep { exponent: edge.gamma.clone(), coefficient: c, method: Method::Hensel });
                        self.roots.push(RootExpansion {
                            root,
                            approximant,
                            residual_valuation: z.residual_valuation.shift(&ev),
                            branch_log: log,
                            extension_field: g.field().clone(),
                            embedding: total_emb,
                            multiplicity: 1,
                        });
                        continue;
                    }
                }
                let step = BranchStep { exponent: edge.gamma.clone(), coefficient: c.clone(), method: Method::NewtonStep };
                if b.steps >= self.opts.max_steps {
                    self.unresolved.push(UnresolvedBranch {
                        prefix,
                        multiplicity: r.multiplicity,
                        branch_log: log,
                        extension_field: g.field().clone(),
                        embedding: total_emb,
                        reason: format!("step limit {} reached with a root of multiplicity {}", self.opts.max_steps, r.multiplicity),
                    });
                    continue;
                }
                let mono = g.coeff(0).monomial_like(&c, &edge.gamma);
                let shifted = g.taylor_shift(&mono)?;
                let mut log = log;
                log.push(step);
                self.expand(Branch {
                    g: shifted,
                    prefix: prefix.add(&mono)?,
                    prev: Some(edge.gamma.clone()),
                    mult: r.multiplicity,
                    log,
                    steps: b.steps + 1,
                    emb: total_emb,
                })?;
            }
        }
        Ok(())
    }

    /// Handles `g = yᵖ + b·y + c` whose edge polynomial is a `p`-th power by rescaling
    /// `y = β·z` with `β^{p−1} = −b`, giving `zᵖ − z = −c/βᵖ`.
    fn try_artin_schreier(&mut self, br: &Branch, edge: &Edge, pz: &Poly) -> Result<bool, RootError> {
        let g = &br.g;
        let field = g.field().clone();
        let p = field.p() as usize;
        if g.degree() != p || br.mult != p || edge.i != 0 || edge.k != p {
            return Ok(false);
        }
        if !g.is_monic() || (2..p).any(|j| !g.coeff(j).is_zero()) || g.coeff(1).is_zero() {
            return Ok(false);
        }
        let fac = factor_univariate(pz, false, self.opts.seed)?;
        if !(fac.factors.len() == 1 && fac.factors[0].1 == p) {
            return Ok(false);
        }
        let bcoef = g.coeff(1);
        let c0 = g.coeff(0);
        // β with β^{p−1} = −b
        let (beta, emb) = if bcoef.num_terms() == 1 && bcoef.is_exact() {
            let (a, e) = bcoef.leading_term()?.expect("one term");
            let mut eq = vec![field.zero(); p];
            eq[0] = e.clone();
            eq[p - 1] = field.one();
            let ef = factor_univariate(&Poly::new(&field, &eq), true, self.opts.seed)?;
            let mut rs = ef.roots.clone();
            rs.sort_by(|x, y| x.extension_degree.cmp(&y.extension_degree).then(x.value.cmp(&y.value)));
            let r = rs.into_iter().next().expect("p-1 ≥ 1 roots");
            let ea = a.scale(&Q::new(BigInt::one(), BigInt::from(p - 1)));
            let beta = bcoef.map_field(&r.embedding).monomial_like(&r.value, &ea);
            (beta, r.embedding)
        } else if p == 2 {
            (bcoef.clone(), Embedding::identity(&field))
        } else {
            return Ok(false);
        };
        let c0 = c0.map_field(&emb);
        let nu_beta = match beta.valuation()? {
            ExtQ::Finite(v) => v,
            ExtQ::Infinity => return Ok(false),
        };
        let pq = q(p as i64);
        let tz = (&self.target - &pq * &nu_beta).max(q(1));
        let beta_p = beta.pow(p as u64)?;
        let nu_c0 = c0.valuation_lower_bound();
        let inv_target = match &nu_c0 {
            ExtQ::Finite(v) => &tz - v + q(1),
            ExtQ::Infinity => tz.clone(),
        };
        let inv = beta_p.inverse(&inv_target)?;
        let f = c0.mul(&inv)?.neg();
        let zs = match artin_schreier_roots(&f, &tz, self.opts.as_depth) {
            Ok(z) => z,
            Err(RootError::DegenerateValuation(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        let prefix0 = br.prefix.map_field(&emb);
        for z in zs {
            let e2 = &z.embedding;
            let beta2 = beta.map_field(e2);
            let (yprime, yapprox) = if beta2.is_exact() && beta2.num_terms() == 1 {
                let (be, bc) = beta2.leading_term()?.expect("monomial");
                (z.root.mul_monomial(&bc, &be), z.approximant.mul_monomial(&bc, &be))
            } else {
                (z.root.mul(&beta2)?, z.approximant.mul(&beta2.as_exact())?)
            };
            let prefix = prefix0.map_field(e2);
            let mut root = prefix.add(&yprime)?;
            if prefix.is_exact() {
                if let Some(m) = yprime.support_model() {
                    let pts = StructuredSupport::finite(field.p(), prefix.dim(), prefix.exponents().cloned())?;
                    if let Ok(u) = support::union(m, &pts) {
                        root = root.with_support(u)?;
                    }
                }
            }
            let total = br.emb.then(&emb).then(e2);
            let mut log: Vec<BranchStep> = br.log.iter().map(|s| map_step(s, &emb.then(e2))).collect();
            let (le, lc) = yprime.leading_term()?.unwrap_or((ExpVec::zero(prefix.dim()), z.extension_field.one()));
            log.push(BranchStep { exponent: le, coefficient: lc, method: Method::ArtinSchreier });
            log.extend(z.branch_log.iter().filter(|s| s.method == Method::Hensel).cloned());
            self.roots.push(RootExpansion {
                root,
                approximant: prefix.as_exact().add(&yapprox)?,
                residual_valuation: z.residual_valuation.shift(&(&pq * &nu_beta)),
                branch_log: log,
                extension_field: z.extension_field.clone(),
                embedding: total,
                multiplicity: 1,
            });
        }
        Ok(true)
    }
}
