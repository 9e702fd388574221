use serde_json::{json, Value};

use super::{bigint_json, cone_json, elem_json, expvec_json, extq_json, field_json, int_matrix_json, ivec_json, laurent_json, lattice_json, q_json, qvec_json, series_json};
use crate::bertini::{Factorization, PbWitness, ScanReport};
use crate::order::SmithForm;
use crate::roots::{BranchStep, PuiseuxExpansion, RootExpansion};
use crate::subst::{Obstruction, PhiOutput, WitnessResult};
use crate::support::{PDiscreteCertificate, Violation};

pub fn certificate_json(c: &PDiscreteCertificate) -> Value {
    json!({
        "pdiscrete": true,
        "sigma": cone_json(&c.sigma),
        "interiorPoint": qvec_json(&c.interior_point),
        "refined": c.refined,
        "gamma": expvec_json(&c.gamma),
        "coneC": cone_json(&c.cone_c),
        "N": bigint_json(&c.n),
        "limits": c.limits.iter().map(expvec_json).collect::<Vec<_>>(),
    })
}

pub fn violation_json(v: &Violation) -> Value {
    json!({
        "pdiscrete": false,
        "condition": v.condition.to_string(),
        "message": v.message,
        "witness": v.witness.iter().map(expvec_json).collect::<Vec<_>>(),
    })
}

fn step_json(s: &BranchStep) -> Value {
    json!({ "exponent": expvec_json(&s.exponent), "coefficient": elem_json(&s.coefficient), "method": s.method.to_string() })
}

pub fn root_json(r: &RootExpansion) -> Value {
    json!({
        "root": series_json(&r.root),
        "approximant": series_json(&r.approximant),
        "residualValuation": extq_json(&r.residual_valuation),
        "branchLog": r.branch_log.iter().map(step_json).collect::<Vec<_>>(),
        "extensionField": field_json(&r.extension_field),
        "multiplicity": r.multiplicity,
    })
}

pub fn puiseux_json(e: &PuiseuxExpansion) -> Value {
    json!({
        "complete": e.is_complete(),
        "rootCount": e.root_count(),
        "N": bigint_json(&e.denominator_n),
        "roots": e.roots.iter().map(root_json).collect::<Vec<_>>(),
        "unresolved": e.unresolved.iter().map(|u| json!({
            "prefix": series_json(&u.prefix),
            "multiplicity": u.multiplicity,
            "branchLog": u.branch_log.iter().map(step_json).collect::<Vec<_>>(),
            "extensionField": field_json(&u.extension_field),
            "reason": u.reason,
        })).collect::<Vec<_>>(),
    })
}

pub fn phi_json(out: &PhiOutput) -> Value {
    json!({ "image": series_json(&out.image), "certified": out.certified, "warnings": out.warnings })
}

pub fn witness_json(w: &WitnessResult) -> Value {
    match w {
        WitnessResult::IsPossiblyPolynomial => json!({ "result": "IsPossiblyPolynomial" }),
        WitnessResult::Obstruction(Obstruction::NonIntegerExponent { v, image, lattice }) => json!({
            "result": "Obstruction",
            "kind": "NonIntegerExponent",
            "v": expvec_json(v),
            "image": q_json(image),
            "lattice": lattice_json(lattice),
        }),
        WitnessResult::Obstruction(Obstruction::UnboundedSupportCone { cone, v, bound_point, contains_n }) => json!({
            "result": "Obstruction",
            "kind": "UnboundedSupportCone",
            "cone": cone_json(cone),
            "v": expvec_json(v),
            "boundPoint": expvec_json(bound_point),
            "containsN": contains_n,
        }),
        WitnessResult::Obstruction(Obstruction::InfiniteFiber { r }) => json!({
            "result": "Obstruction",
            "kind": "InfiniteFiber",
            "r": q_json(r),
        }),
    }
}

pub fn smith_json(s: &SmithForm) -> Value {
    json!({
        "U": int_matrix_json(&s.u),
        "D": int_matrix_json(&s.d),
        "V": int_matrix_json(&s.v),
        "diagonal": ivec_json(&s.diagonal()),
    })
}

pub fn factorization_json(f: &Factorization) -> Value {
    json!({
        "field": field_json(&f.field),
        "extensionDegree": f.extension_degree,
        "irreducible": f.is_irreducible(),
        "subsetsTested": f.subsets_tested,
        "factors": f.factors.iter().map(|(g, m)| json!({ "factor": laurent_json(g), "multiplicity": m })).collect::<Vec<_>>(),
    })
}

pub fn scan_json(r: &ScanReport) -> Value {
    json!({
        "bound": r.bound,
        "absolute": r.absolute,
        "theta": r.theta_policy.to_string(),
        "cone": cone_json(&r.cone),
        "irreducibleCount": r.irreducible_count(),
        "directions": r.directions.iter().map(|d| json!({
            "n": d.n,
            "irreducible": d.irreducible,
            "factorDegrees": d.factor_degrees,
            "extensionDegree": d.extension_degree,
            "theta": d.theta.as_ref().map(|t| t.iter().map(elem_json).collect::<Vec<_>>()),
            "thetasTested": d.thetas_tested,
            "subsetsTested": d.subsets_tested,
            "factors": d.factors.iter().map(|(g, m)| json!({ "factor": g.to_string(), "multiplicity": m })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "bad": r.bad,
        "lattices": r.fit.lattices.iter().map(|l| json!({
            "lattice": lattice_json(&l.lattice),
            "character": { "vector": l.character.0, "modulus": l.character.1 },
            "covers": l.covers,
        })).collect::<Vec<_>>(),
        "uncovered": r.fit.uncovered,
    })
}

/// Columns `n1..nd, irreducible, factor_degrees, extension_degree`; degrees joined by `;`.
pub fn scan_csv(r: &ScanReport) -> String {
    let d = r.cone.dim_ambient();
    let mut out: Vec<String> = Vec::new();
    let mut head: Vec<String> = (1..=d).map(|i| format!("n{i}")).collect();
    head.extend(["irreducible", "factor_degrees", "extension_degree"].map(String::from));
    out.push(head.join(","));
    for row in &r.directions {
        let mut cells: Vec<String> = row.n.iter().map(|x| x.to_string()).collect();
        cells.push(row.irreducible.to_string());
        cells.push(row.factor_degrees.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"));
        cells.push(row.extension_degree.to_string());
        out.push(cells.join(","));
    }
    out.join("\n") + "\n"
}

pub fn pb_json(w: &Option<PbWitness>) -> Value {
    match w {
        None => json!({ "witness": null }),
        Some(w) => json!({
            "witness": {
                "matrix": w.matrix,
                "pullback": laurent_json(&w.pullback),
                "factorization": factorization_json(&w.factorization),
            }
        }),
    }
}
