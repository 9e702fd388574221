//! Generalized power series with cutoffs: ring operations, Frobenius, valuation and inverses.
use pdiscrete::ff::Field;
use pdiscrete::linalg::q;
use pdiscrete::order::{ExpVec, WeightOrder};
use pdiscrete::series::GPSeries;

fn main() -> anyhow::Result<()> {
    let f3 = Field::prime(3)?;
    let order = WeightOrder::from_i64(&[&[1, 1], &[1, 0]])?;
    let t = |a: i64, b: i64, c: i64| (ExpVec::from_ints(&[a, b]), f3.from_int(c));
    let a = GPSeries::exact(&f3, &order, [t(0, 0, 1), t(1, 0, 1), t(0, 1, 2)])?;
    let b = GPSeries::exact(&f3, &order, [t(1, 1, 1), t(-1, 2, 1)])?;

    println!("a = {a}");
    println!("b = {b}");
    println!("a·b = {}", a.mul(&b)?);
    println!("a^3 = {}  (= frobenius: {})", a.pow(3)?, a.pow(3)? == a.frobenius());
    println!("a^(1/3) = {}", a.pth_root_series());
    println!("ν(b) = {}", b.valuation()?);

    let inv = a.inverse(&q(4))?;
    println!("1/a below weight 4: {} terms, cutoff {}", inv.num_terms(), inv.cutoff());
    println!("a · (1/a) = {}", a.mul(&inv)?);

    let (plus, minus) = b.split_pm();
    println!("b⁺ = {plus}, b⁻ = {minus}");
    Ok(())
}
