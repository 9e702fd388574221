//! Collapsing a multivariate series along tᵢ ↦ θᵢ x^{nᵢ}, and non-polynomiality witnesses.
use pdiscrete::ff::Field;
use pdiscrete::order::{ExpVec, WeightOrder};
use pdiscrete::series::GPSeries;
use pdiscrete::subst::{nonpolynomial_witness, phi, SubstSpec};
use pdiscrete::support::{PFamily, StructuredSupport};

fn main() -> anyhow::Result<()> {
    let f2 = Field::prime(2)?;
    let order = WeightOrder::lex(2);
    let s = GPSeries::exact(&f2, &order, [(ExpVec::from_ints(&[1, 0]), f2.one()), (ExpVec::from_ints(&[0, 1]), f2.one()), (ExpVec::frac(&[1, 1], 2), f2.one())])?;
    let spec = SubstSpec::ones(&f2, vec![3, 1])?;
    let out = phi(&s, &spec)?;
    println!("φ_(3,1)({s}) = {} (certified {})", out.image, out.certified);

    // the family (0,1) + (−1,1)·2^{-j} collapses onto one exponent when n = (1,1)
    let model = StructuredSupport::empty(2, 2).with_family(PFamily::new(ExpVec::from_ints(&[0, 1]), ExpVec::from_ints(&[-1, 2]), 1)?)?;
    let alpha = GPSeries::exact(&f2, &order, [(ExpVec::frac(&[-1, 3], 2), f2.one())])?.with_support(model)?;
    for n in [vec![1, 1], vec![3, 1]] {
        let w = nonpolynomial_witness(&alpha, &SubstSpec::ones(&f2, n.clone())?, None)?;
        println!("witness for n = {n:?}: {w:?}");
    }
    Ok(())
}
