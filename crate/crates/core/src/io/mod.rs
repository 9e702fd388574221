//! JSON forms of the model objects. Rationals travel as `"num/den"` strings, integers as
//! numbers (strings when they do not fit in 64 bits), field elements as coordinate lists
//! (constant first).
mod report;

pub use report::*;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::bertini::LaurentPoly;
use crate::ff::{FFElem, Field, FieldSpec};
use crate::linalg::{fmt_q, parse_q, Q};
use crate::order::{Cone, ExpVec, IntLattice, WeightOrder};
use crate::series::{ExtQ, GPSeries};
use crate::support::{PFamily, StructuredSupport};
use crate::tropical::{PolyhedralComplex, Polyhedron, ValuedPoly};

/// A JSON value that does not match the expected shape; `pointer` is an RFC 6901 path.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pointer}: {reason}")]
pub struct SchemaError {
    pub pointer: String,
    pub reason: String,
}

pub type Result<T> = std::result::Result<T, SchemaError>;

fn err<T>(ptr: &str, reason: impl Into<String>) -> Result<T> {
    Err(SchemaError { pointer: if ptr.is_empty() { "/".into() } else { ptr.into() }, reason: reason.into() })
}

fn join(ptr: &str, key: impl std::fmt::Display) -> String {
    format!("{ptr}/{key}")
}

fn req<'a>(v: &'a Value, ptr: &str, key: &str) -> Result<&'a Value> {
    match v.get(key) {
        Some(x) if !x.is_null() => Ok(x),
        _ => err(ptr, format!("missing field `{key}`")),
    }
}

fn opt<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.get(key).filter(|x| !x.is_null())
}

fn arr<'a>(v: &'a Value, ptr: &str) -> Result<&'a [Value]> {
    match v.as_array() {
        Some(a) => Ok(a),
        None => err(ptr, "expected an array"),
    }
}

pub fn u64_of(v: &Value, ptr: &str) -> Result<u64> {
    match v.as_u64() {
        Some(x) => Ok(x),
        None => err(ptr, "expected a nonnegative integer"),
    }
}

pub fn i64_of(v: &Value, ptr: &str) -> Result<i64> {
    match v.as_i64() {
        Some(x) => Ok(x),
        None => err(ptr, "expected an integer"),
    }
}

pub fn bigint_of(v: &Value, ptr: &str) -> Result<BigInt> {
    if let Some(x) = v.as_i64() {
        return Ok(x.into());
    }
    match v.as_str().and_then(|s| s.trim().parse().ok()) {
        Some(x) => Ok(x),
        None => err(ptr, "expected an integer"),
    }
}

pub fn q_of(v: &Value, ptr: &str) -> Result<Q> {
    if let Some(x) = v.as_i64() {
        return Ok(Q::from_integer(x.into()));
    }
    match v.as_str().and_then(parse_q) {
        Some(x) => Ok(x),
        None => err(ptr, "expected a rational `num/den`"),
    }
}

pub fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

pub fn qvec_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(q_json).collect())
}

pub fn qvec_of(v: &Value, ptr: &str) -> Result<Vec<Q>> {
    arr(v, ptr)?.iter().enumerate().map(|(i, x)| q_of(x, &join(ptr, i))).collect()
}

pub fn i64vec_of(v: &Value, ptr: &str) -> Result<Vec<i64>> {
    arr(v, ptr)?.iter().enumerate().map(|(i, x)| i64_of(x, &join(ptr, i))).collect()
}

pub fn ivec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_json).collect())
}

pub fn extq_json(x: &ExtQ) -> Value {
    match x {
        ExtQ::Finite(q) => q_json(q),
        ExtQ::Infinity => json!("inf"),
    }
}

pub fn extq_of(v: &Value, ptr: &str) -> Result<ExtQ> {
    if v.as_str() == Some("inf") {
        return Ok(ExtQ::Infinity);
    }
    Ok(ExtQ::Finite(q_of(v, ptr)?))
}

// ---- finite fields

pub fn field_json(f: &Field) -> Value {
    serde_json::to_value(f.spec()).expect("field spec")
}

pub fn field_of(v: &Value, ptr: &str) -> Result<Field> {
    let spec: FieldSpec = match serde_json::from_value(v.clone()) {
        Ok(s) => s,
        Err(e) => return err(ptr, e.to_string()),
    };
    Field::from_spec(&spec).or_else(|e| err(ptr, e.to_string()))
}

pub fn elem_json(c: &FFElem) -> Value {
    json!(c.coords())
}

/// A coordinate list, or an integer for an element of the prime field.
pub fn elem_of(field: &Field, v: &Value, ptr: &str) -> Result<FFElem> {
    if let Some(n) = v.as_i64() {
        return Ok(field.from_int(n));
    }
    let coords: Vec<u64> = arr(v, ptr)?.iter().enumerate().map(|(i, x)| u64_of(x, &join(ptr, i))).collect::<Result<_>>()?;
    if coords.len() > field.k() || coords.iter().any(|&c| c >= field.p()) {
        return err(ptr, format!("not a coordinate vector over GF({}^{})", field.p(), field.k()));
    }
    Ok(field.elem(&coords))
}

// ---- exponents, orders, cones, lattices

pub fn expvec_json(e: &ExpVec) -> Value {
    json!({ "num": ivec_json(e.num()), "den": bigint_json(e.den()) })
}

/// `{"num":[…],"den":…}`, or a plain integer list.
pub fn expvec_of(v: &Value, ptr: &str) -> Result<ExpVec> {
    if v.is_array() {
        let num: Vec<BigInt> = arr(v, ptr)?.iter().enumerate().map(|(i, x)| bigint_of(x, &join(ptr, i))).collect::<Result<_>>()?;
        return Ok(ExpVec::from_bigints(&num));
    }
    let np = join(ptr, "num");
    let num: Vec<BigInt> =
        arr(req(v, ptr, "num")?, &np)?.iter().enumerate().map(|(i, x)| bigint_of(x, &join(&np, i))).collect::<Result<_>>()?;
    let den = match opt(v, "den") {
        Some(d) => bigint_of(d, &join(ptr, "den"))?,
        None => BigInt::from(1),
    };
    ExpVec::new(num, den).or_else(|e| err(&join(ptr, "den"), e.to_string()))
}

pub fn order_json(o: &WeightOrder) -> Value {
    json!({ "rows": o.rows().iter().map(|r| qvec_json(r)).collect::<Vec<_>>() })
}

pub fn order_of(v: &Value, ptr: &str) -> Result<WeightOrder> {
    let rp = join(ptr, "rows");
    let rows: Vec<Vec<Q>> = arr(req(v, ptr, "rows")?, &rp)?.iter().enumerate().map(|(i, r)| qvec_of(r, &join(&rp, i))).collect::<Result<_>>()?;
    WeightOrder::new(rows).or_else(|e| err(&rp, e.to_string()))
}

fn int_rows_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| ivec_json(r)).collect())
}

pub fn cone_json(c: &Cone) -> Value {
    json!({
        "dim": c.dim_ambient(),
        "rays": int_rows_json(c.rays()),
        "lineality": int_rows_json(c.lineality()),
        "facets": int_rows_json(c.facets()),
        "equations": int_rows_json(c.equations()),
    })
}

fn q_rows_of(v: Option<&Value>, ptr: &str) -> Result<Vec<Vec<Q>>> {
    match v {
        None => Ok(Vec::new()),
        Some(v) => arr(v, ptr)?.iter().enumerate().map(|(i, r)| qvec_of(r, &join(ptr, i))).collect(),
    }
}

/// From `rays` (+ `lineality`) or, when absent, from `facets` (+ `equations`); `{"dim": d}`
/// alone is the whole space.
pub fn cone_of(v: &Value, ptr: &str) -> Result<Cone> {
    let d = u64_of(req(v, ptr, "dim")?, &join(ptr, "dim"))? as usize;
    let made = if opt(v, "rays").is_some() {
        let mut gens = q_rows_of(opt(v, "rays"), &join(ptr, "rays"))?;
        for l in q_rows_of(opt(v, "lineality"), &join(ptr, "lineality"))? {
            gens.push(l.iter().map(|x| -x).collect());
            gens.push(l);
        }
        Cone::from_generators(d, &gens)
    } else {
        let f = q_rows_of(opt(v, "facets"), &join(ptr, "facets"))?;
        let e = q_rows_of(opt(v, "equations"), &join(ptr, "equations"))?;
        Cone::from_halfspaces(d, &f, &e)
    };
    made.or_else(|e| err(ptr, e.to_string()))
}

pub fn lattice_json(l: &IntLattice) -> Value {
    json!({ "basis": int_rows_json(&l.columns()), "index": bigint_json(&l.index()) })
}

/// `{"basis": [column, …]}`.
pub fn lattice_of(v: &Value, ptr: &str) -> Result<IntLattice> {
    let bp = join(ptr, "basis");
    let cols: Vec<Vec<i64>> = arr(req(v, ptr, "basis")?, &bp)?.iter().enumerate().map(|(i, c)| i64vec_of(c, &join(&bp, i))).collect::<Result<_>>()?;
    IntLattice::from_columns(&cols).or_else(|e| err(&bp, e.to_string()))
}

pub fn int_matrix_of(v: &Value, ptr: &str) -> Result<Vec<Vec<BigInt>>> {
    let rows: Vec<Vec<BigInt>> = arr(v, ptr)?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let rp = join(ptr, i);
            arr(r, &rp)?.iter().enumerate().map(|(j, x)| bigint_of(x, &join(&rp, j))).collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return err(ptr, "rows have different lengths");
    }
    Ok(rows)
}

pub fn int_matrix_json(m: &[Vec<BigInt>]) -> Value {
    int_rows_json(m)
}

// ---- supports and series

fn family_json(f: &PFamily) -> Value {
    json!({ "limit": expvec_json(&f.limit), "seed": expvec_json(&f.seed), "startIndex": f.start })
}

pub fn support_json(s: &StructuredSupport) -> Value {
    json!({
        "p": s.p,
        "d": s.d,
        "finite": s.finite.iter().map(expvec_json).collect::<Vec<_>>(),
        "families": s.families.iter().map(family_json).collect::<Vec<_>>(),
    })
}

/// `p` and `d` may come from the file or from the surrounding context.
pub fn support_of(v: &Value, ptr: &str, p: Option<u64>, d: Option<usize>) -> Result<StructuredSupport> {
    let p = match opt(v, "p") {
        Some(x) => u64_of(x, &join(ptr, "p"))?,
        None => match p {
            Some(p) => p,
            None => return err(ptr, "missing field `p`"),
        },
    };
    let fp = join(ptr, "finite");
    let finite: Vec<ExpVec> = match opt(v, "finite") {
        Some(a) => arr(a, &fp)?.iter().enumerate().map(|(i, e)| expvec_of(e, &join(&fp, i))).collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let mp = join(ptr, "families");
    let mut fams = Vec::new();
    if let Some(a) = opt(v, "families") {
        for (i, f) in arr(a, &mp)?.iter().enumerate() {
            let ip = join(&mp, i);
            let limit = expvec_of(req(f, &ip, "limit")?, &join(&ip, "limit"))?;
            let seed = expvec_of(req(f, &ip, "seed")?, &join(&ip, "seed"))?;
            let start = match opt(f, "startIndex") {
                Some(s) => u64_of(s, &join(&ip, "startIndex"))? as u32,
                None => 0,
            };
            fams.push(PFamily::new(limit, seed, start).or_else(|e| err(&ip, e.to_string()))?);
        }
    }
    let d = match opt(v, "d") {
        Some(x) => u64_of(x, &join(ptr, "d"))? as usize,
        None => match (d, finite.first(), fams.first()) {
            (Some(d), _, _) => d,
            (None, Some(e), _) => e.dim(),
            (None, None, Some(f)) => f.dim(),
            (None, None, None) => return err(ptr, "cannot infer the dimension of an empty support"),
        },
    };
    let mut s = StructuredSupport::finite(p, d, finite).or_else(|e| err(&fp, e.to_string()))?;
    for f in fams {
        s = s.with_family(f).or_else(|e| err(&mp, e.to_string()))?;
    }
    Ok(s)
}

pub fn series_json(f: &GPSeries) -> Value {
    let mut out = json!({
        "field": field_json(f.field()),
        "order": order_json(f.order()),
        "cutoff": extq_json(f.cutoff()),
        "terms": f.terms_sorted().iter().map(|(e, c)| json!({ "exp": expvec_json(e), "coef": elem_json(c) })).collect::<Vec<_>>(),
    });
    if let Some(s) = f.support_model() {
        out["support"] = support_json(s);
    }
    out
}

pub fn series_of(v: &Value, ptr: &str) -> Result<GPSeries> {
    let field = field_of(req(v, ptr, "field")?, &join(ptr, "field"))?;
    let order = order_of(req(v, ptr, "order")?, &join(ptr, "order"))?;
    let cutoff = match opt(v, "cutoff") {
        Some(c) => extq_of(c, &join(ptr, "cutoff"))?,
        None => ExtQ::Infinity,
    };
    let tp = join(ptr, "terms");
    let mut terms = Vec::new();
    for (i, t) in arr(req(v, ptr, "terms")?, &tp)?.iter().enumerate() {
        let ip = join(&tp, i);
        let e = expvec_of(req(t, &ip, "exp")?, &join(&ip, "exp"))?;
        if e.dim() != order.dim() {
            return err(&join(&ip, "exp"), format!("expected {} coordinates", order.dim()));
        }
        terms.push((e, elem_of(&field, req(t, &ip, "coef")?, &join(&ip, "coef"))?));
    }
    let s = GPSeries::new(&field, &order, terms, cutoff).or_else(|e| err(ptr, e.to_string()))?;
    match opt(v, "support") {
        None => Ok(s),
        Some(m) => {
            let m = support_of(m, &join(ptr, "support"), Some(field.p()), Some(order.dim()))?;
            s.with_support(m).or_else(|e| err(&join(ptr, "support"), e.to_string()))
        }
    }
}

// ---- Laurent polynomials in t^±, y

pub fn laurent_json(f: &LaurentPoly) -> Value {
    json!({
        "field": field_json(f.field()),
        "d": f.dim(),
        "poly": f.to_string(),
        "terms": f.terms().map(|(e, k, c)| json!({ "t": e, "y": k, "coef": elem_json(&c) })).collect::<Vec<_>>(),
    })
}

/// `{"field", "d", "poly": "y^2 - t1"}` (optionally with `"vars"` and `"yvar"` naming the
/// variables), or `{"field", "d", "terms": [{"t": [...], "y": k, "coef": c}]}`.
pub fn laurent_of(v: &Value, ptr: &str) -> Result<LaurentPoly> {
    let field = field_of(req(v, ptr, "field")?, &join(ptr, "field"))?;
    if let Some(text) = opt(v, "poly") {
        let Some(s) = text.as_str() else { return err(&join(ptr, "poly"), "expected a string") };
        let parsed = match opt(v, "vars") {
            Some(names) => {
                let np = join(ptr, "vars");
                let names: Vec<&str> = arr(names, &np)?.iter().filter_map(|x| x.as_str()).collect();
                let y = opt(v, "yvar").and_then(|x| x.as_str()).unwrap_or("y");
                LaurentPoly::parse_vars(&field, &names, y, s)
            }
            None => {
                let d = u64_of(req(v, ptr, "d")?, &join(ptr, "d"))? as usize;
                LaurentPoly::parse(&field, d, s)
            }
        };
        return parsed.or_else(|e| err(&join(ptr, "poly"), e.to_string()));
    }
    let d = u64_of(req(v, ptr, "d")?, &join(ptr, "d"))? as usize;
    let tp = join(ptr, "terms");
    let mut terms = Vec::new();
    for (i, t) in arr(req(v, ptr, "terms")?, &tp)?.iter().enumerate() {
        let ip = join(&tp, i);
        let e = i64vec_of(req(t, &ip, "t")?, &join(&ip, "t"))?;
        if e.len() != d {
            return err(&join(&ip, "t"), format!("expected {d} exponents"));
        }
        let k = match opt(t, "y") {
            Some(k) => u64_of(k, &join(&ip, "y"))? as u32,
            None => 0,
        };
        terms.push((e, k, elem_of(&field, req(t, &ip, "coef")?, &join(&ip, "coef"))?));
    }
    Ok(LaurentPoly::from_terms(&field, d, terms))
}

// ---- tropical

pub fn valued_json(f: &ValuedPoly) -> Value {
    json!({
        "n": f.dim(),
        "terms": f.terms().map(|(u, v)| json!({ "exp": u, "val": q_json(v) })).collect::<Vec<_>>(),
    })
}

/// `{"n", "terms": [{"exp": [...], "val": "num/den"}]}` or `{"n", "poly": "x1 + x2 + 1"}`.
pub fn valued_of(v: &Value, ptr: &str) -> Result<ValuedPoly> {
    let n = u64_of(req(v, ptr, "n")?, &join(ptr, "n"))? as usize;
    if let Some(text) = opt(v, "poly") {
        let Some(s) = text.as_str() else { return err(&join(ptr, "poly"), "expected a string") };
        return ValuedPoly::parse(n, s).or_else(|e| err(&join(ptr, "poly"), e.to_string()));
    }
    let tp = join(ptr, "terms");
    let mut terms = Vec::new();
    for (i, t) in arr(req(v, ptr, "terms")?, &tp)?.iter().enumerate() {
        let ip = join(&tp, i);
        let val = match opt(t, "val") {
            Some(x) => q_of(x, &join(&ip, "val"))?,
            None => Q::from_integer(0.into()),
        };
        terms.push((i64vec_of(req(t, &ip, "exp")?, &join(&ip, "exp"))?, val));
    }
    ValuedPoly::new(n, terms).or_else(|e| err(&tp, e.to_string()))
}

fn qrows_json(rows: &[Vec<Q>]) -> Value {
    Value::Array(rows.iter().map(|r| qvec_json(r)).collect())
}

pub fn polyhedron_json(p: &Polyhedron) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": qrows_json(p.vertices()),
        "rays": qrows_json(p.rays()),
        "lineality": qrows_json(p.lineality()),
    })
}

pub fn complex_json(c: &PolyhedralComplex) -> Value {
    json!({
        "ambient": c.ambient,
        "dim": c.dim,
        "linealityDim": c.lineality_dim,
        "pure": c.pure,
        "cells": c.cells.iter().map(polyhedron_json).collect::<Vec<_>>(),
        "top": c.top,
        "weights": c.weights,
        "facetAdjacency": c.adjacency.iter().map(|a| json!([a.a, a.b, a.ridge])).collect::<Vec<_>>(),
        "notes": c.notes,
    })
}

/// Rebuilds a complex from its cells' V-descriptions (faces are recomputed).
pub fn complex_of(v: &Value, ptr: &str) -> Result<PolyhedralComplex> {
    let n = u64_of(req(v, ptr, "ambient")?, &join(ptr, "ambient"))? as usize;
    let cp = join(ptr, "cells");
    let mut cells = Vec::new();
    for (i, c) in arr(req(v, ptr, "cells")?, &cp)?.iter().enumerate() {
        let ip = join(&cp, i);
        let vs = q_rows_of(opt(c, "vertices"), &join(&ip, "vertices"))?;
        let rs = q_rows_of(opt(c, "rays"), &join(&ip, "rays"))?;
        let ls = q_rows_of(opt(c, "lineality"), &join(&ip, "lineality"))?;
        cells.push(Polyhedron::from_v(n, &vs, &rs, &ls).or_else(|e| err(&ip, e.to_string()))?);
    }
    let mut out = PolyhedralComplex::from_cells(n, cells).or_else(|e| err(&cp, e.to_string()))?;
    if let Some(w) = opt(v, "weights") {
        let wp = join(ptr, "weights");
        let ws: Vec<u64> = arr(w, &wp)?.iter().enumerate().map(|(i, x)| u64_of(x, &join(&wp, i))).collect::<Result<_>>()?;
        if ws.len() != out.top.len() {
            return err(&wp, format!("expected {} weights", out.top.len()));
        }
        out.weights = Some(ws);
    }
    Ok(out)
}
