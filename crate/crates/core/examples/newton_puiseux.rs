//! The Newton–Puiseux driver, dispatching branches to Hensel and Artin–Schreier steps.
use pdiscrete::bertini::LaurentPoly;
use pdiscrete::ff::Field;
use pdiscrete::linalg::q;
use pdiscrete::order::WeightOrder;
use pdiscrete::roots::newton_puiseux;

fn main() -> anyhow::Result<()> {
    let f2 = Field::prime(2)?;
    for (src, d) in [("y^2 + y + t^-1", 1), ("y^3 - t", 1), ("y^2 + t1*y + t2", 2)] {
        let f = LaurentPoly::parse(&f2, d, src)?;
        let order = WeightOrder::lex(d);
        let e = newton_puiseux(&f, &order, &q(3), 20)?;
        println!("{src}: {} roots, complete {}", e.root_count(), e.is_complete());
        for r in &e.roots {
            let methods: Vec<String> = r.branch_log.iter().map(|s| s.method.to_string()).collect();
            println!("  {} over {} via {}", r.root, r.extension_field, methods.join(" → "));
        }
    }
    Ok(())
}
