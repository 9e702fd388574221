//! Scanning directions n for irreducibility of f(θ x^n, y), and fitting the bad set to lattices.
use pdiscrete::bertini::{bertini_scan, LaurentPoly, ScanOptions, ThetaPolicy};
use pdiscrete::ff::Field;
use pdiscrete::order::Cone;

fn main() -> anyhow::Result<()> {
    let f3 = Field::prime(3)?;
    // y² − t₁ t₂² stays irreducible exactly when n₁ + 2n₂ is odd
    let f = LaurentPoly::parse(&f3, 2, "y^2 - t1*t2^2")?;
    let opts = ScanOptions { bound: 5, theta: ThetaPolicy::Ones, ..ScanOptions::default() };
    let report = bertini_scan(&f, &Cone::positive_orthant(2), &opts)?;
    println!("{} of {} directions irreducible", report.irreducible_count(), report.directions.len());
    println!("bad directions: {:?}", report.bad);
    for l in &report.fit.lattices {
        println!("fitted lattice index {}: {:?}·n ≡ 0 mod {}", l.lattice.index(), l.character.0, l.character.1);
    }
    Ok(())
}
