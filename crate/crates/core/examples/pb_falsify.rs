//! Searching isogeny pullbacks for a reducible image.
use pdiscrete::bertini::{pb_falsify, LaurentPoly};
use pdiscrete::ff::Field;

fn main() -> anyhow::Result<()> {
    let f5 = Field::prime(5)?;
    for src in ["y^2 - t1*t2", "y^2 - t1 - t2"] {
        let f = LaurentPoly::parse(&f5, 2, src)?;
        match pb_falsify(&f, 3)? {
            Some(w) => println!("{src}: pulled back along {:?} to {} which factors into {} pieces", w.matrix, w.pullback, w.factorization.factors.len()),
            None => println!("{src}: no reducible pullback with diagonal entries ≤ 3"),
        }
    }
    Ok(())
}
