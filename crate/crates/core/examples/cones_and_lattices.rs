//! Rational cones, duals, Smith normal form and lattices of integrality.
use num_bigint::BigInt;
use pdiscrete::order::{lattice_of_integrality, pick_outside_lattices, snf, Cone, ExpVec};

fn main() -> anyhow::Result<()> {
    let c = Cone::from_generators_i64(2, &[vec![1, 0], vec![1, 2]])?;
    println!("C = {c}");
    println!("C^∨ = {}", c.dual());
    println!("(1,1) in int C: {}", c.contains_int(&[1, 1], true)?);

    let m = vec![vec![BigInt::from(2), BigInt::from(4)], vec![BigInt::from(6), BigInt::from(8)]];
    let s = snf(&m);
    println!("snf [[2,4],[6,8]] = diag{:?}", s.diagonal().iter().map(|x| x.to_string()).collect::<Vec<_>>());

    // n·v ∈ ℤ exactly on a sublattice of index 6
    let v = ExpVec::frac(&[1, 1], 6);
    let l = lattice_of_integrality(&v);
    println!("lattice of integrality of {v}: index {}", l.index());
    let n = pick_outside_lattices(&Cone::positive_orthant(2), &[l], 10)?;
    println!("a direction in the open orthant outside it: {n:?}");
    Ok(())
}
