//! Hensel lifting a simple residue root, with Newton and chord schedules.
use pdiscrete::bertini::LaurentPoly;
use pdiscrete::ff::Field;
use pdiscrete::linalg::q;
use pdiscrete::order::WeightOrder;
use pdiscrete::roots::{hensel_root_with, Schedule, SeriesPoly};

fn main() -> anyhow::Result<()> {
    let f2 = Field::prime(2)?;
    let order = WeightOrder::lex(1);
    // y² + y + t has residue y² + y with simple root 0; the root is Σ t^{2^j}
    let f = LaurentPoly::parse(&f2, 1, "y^2 + y + t")?;
    let poly = SeriesPoly::from_laurent(&f, &order)?;
    for schedule in [Schedule::Newton, Schedule::Chord] {
        let r = hensel_root_with(&poly, &f2.zero(), &q(100), schedule)?;
        println!("{schedule:?}: {} (cutoff {}), verified {}", r.root, r.root.cutoff(), r.verify(&poly)?);
    }
    Ok(())
}
