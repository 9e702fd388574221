//! Arithmetic in 𝔽_q, Frobenius, and univariate factorization with roots in extensions.
use pdiscrete::ff::{factor, factor_univariate, Field, Poly};

fn main() -> anyhow::Result<()> {
    let f9 = Field::new(3, 2, None)?;
    let g = f9.gen();
    println!("{f9}: generator {g}, g^8 = {}", g.pow(8));
    println!("frobenius(g) = {}, pth_root(frobenius(g)) = {}", g.frobenius(), g.frobenius().pth_root());

    // x⁴ + x + 1 is irreducible over 𝔽₂; x⁴ − x splits into x(x+1)(x²+x+1)
    let f2 = Field::prime(2)?;
    for coeffs in [[1, 1, 0, 0, 1], [0, 1, 0, 0, 1]] {
        let p = Poly::from_ints(&f2, &coeffs);
        let parts: Vec<String> = factor(&p).iter().map(|(g, m)| format!("({g})^{m}")).collect();
        println!("{p} = {}", parts.join(" "));
    }

    // roots of x² + x + 1 over 𝔽₂ live in 𝔽₄
    let p = Poly::from_ints(&f2, &[1, 1, 1]);
    let fac = factor_univariate(&p, true, 0)?;
    for r in &fac.roots {
        println!("root {} in {} (degree {})", r.value, r.embedding.dst(), r.extension_degree);
    }
    Ok(())
}
