//! Structured supports: certifying p-discreteness, closure operations and splitting.
use pdiscrete::order::{ExpVec, WeightOrder};
use pdiscrete::support::{pdiscrete_check, semigroup_below, split_at, union, PFamily, StructuredSupport};

fn main() -> anyhow::Result<()> {
    let order = WeightOrder::lex(2);
    // {(−1,0)·2^{-j}} accumulates at 0 from below, {(0,1) + (−1,−1)·2^{-j}} at (0,1)
    let a = StructuredSupport::finite(2, 2, [ExpVec::from_ints(&[1, 1])])?
        .with_family(PFamily::new(ExpVec::zero(2), ExpVec::from_ints(&[-1, 0]), 1)?)?;
    let b = StructuredSupport::empty(2, 2).with_family(PFamily::new(ExpVec::from_ints(&[0, 1]), ExpVec::from_ints(&[-1, 0]), 1)?)?;

    let cert = pdiscrete_check(&a, &order).map_err(|v| anyhow::anyhow!("{}: {}", v.condition, v.message))?;
    println!("a is p-discrete: γ = {}, C = {}, N = {}", cert.gamma, cert.cone_c, cert.n);
    let u = union(&a, &b)?;
    let cu = pdiscrete_check(&u, &order).map_err(|v| anyhow::anyhow!("{}: {}", v.condition, v.message))?;
    // both limits have primary weight 0, so the certificate refines the weight
    println!("a ∪ b is p-discrete with limits {:?}, refined {}", cu.limits.iter().map(|l| l.to_string()).collect::<Vec<_>>(), cu.refined);

    let split = split_at(&u, &ExpVec::from_ints(&[1, 0]), &order)?;
    println!("split at (1,0): {} + {} sampled points", split.plus.sample(3).len(), split.minus.sample(3).len());

    // a support violating (a): the family increases towards its limit
    let bad = StructuredSupport::empty(2, 1).with_family(PFamily::new(ExpVec::zero(1), ExpVec::from_ints(&[1]), 1)?)?;
    if let Err(v) = pdiscrete_check(&bad, &WeightOrder::lex(1)) {
        println!("rejected: condition {} ({})", v.condition, v.message);
    }

    let pos = StructuredSupport::finite(2, 1, [ExpVec::frac(&[1], 2), ExpVec::from_ints(&[1])])?;
    let s = semigroup_below(&pos, &ExpVec::from_ints(&[2]), &WeightOrder::lex(1))?;
    println!(
        "semigroup of {{1/2, 1}} below 2 (at most {} summands): {:?}",
        s.bound,
        s.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>()
    );
    Ok(())
}
