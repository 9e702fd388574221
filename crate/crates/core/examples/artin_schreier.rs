//! Roots of yᵖ − y = f, whose tails sum infinitely many p-th roots of the polar part.
use pdiscrete::ff::Field;
use pdiscrete::linalg::q;
use pdiscrete::order::{ExpVec, WeightOrder};
use pdiscrete::roots::artin_schreier_roots;
use pdiscrete::series::GPSeries;

fn main() -> anyhow::Result<()> {
    let f2 = Field::prime(2)?;
    let order = WeightOrder::lex(1);
    // y² − y = t⁻¹ + 1: the polar tail is Σ t^{-2^{-j}}, the constant part needs 𝔽₄
    let f = GPSeries::exact(&f2, &order, [(ExpVec::from_ints(&[-1]), f2.one()), (ExpVec::zero(1), f2.one())])?;
    for r in artin_schreier_roots(&f, &q(2), 8)? {
        println!("over {}: root has {} stored terms, cutoff {}", r.extension_field, r.root.num_terms(), r.root.cutoff());
        let lead: Vec<String> = r.root.terms_sorted().iter().take(4).map(|(e, c)| format!("{c}·t^{e}")).collect();
        println!("  leading terms {}", lead.join(" + "));
        println!("  residual valuation ≥ {}", r.residual_valuation);
    }
    Ok(())
}
