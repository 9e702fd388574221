//! Tropical hypersurfaces: cells, balancing, transverse sections and connectivity.
use pdiscrete::linalg::{fmt_q, q, to_q_i64};
use pdiscrete::tropical::{connectivity_through_codim1, transverse_intersect, trop_hypersurface, ValuedPoly};

fn main() -> anyhow::Result<()> {
    let line = ValuedPoly::parse(2, "x1 + x2 + 0")?;
    let t = trop_hypersurface(&line)?;
    println!("tropical line: {} top cells, unbalanced ridges {:?}", t.top_cells().count(), t.unbalanced_ridges()?);
    let (sec, transverse) = transverse_intersect(&t, &to_q_i64(&[1, 0]), &q(1))?;
    for c in sec.top_cells() {
        let pts: Vec<Vec<String>> = c.vertices().iter().map(|v| v.iter().map(fmt_q).collect()).collect();
        println!("meets x1 = 1 at {pts:?} (transverse {transverse})");
    }

    // valuations i² + ij + j² give the unimodular subdivision, so a smooth conic
    let conic = ValuedPoly::from_i64(2, &[(&[2, 0], 4), (&[1, 1], 3), (&[0, 2], 4), (&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 0)])?;
    let tc = trop_hypersurface(&conic)?;
    println!("tropical conic: {} edges, balanced {}", tc.top_cells().count(), tc.unbalanced_ridges()?.is_empty());

    let plane = trop_hypersurface(&ValuedPoly::parse(3, "x1 + x2 + x3 + 0")?)?;
    for k in 1..=2 {
        println!("tropical plane connected through codimension 1 after removing {k}: {}", connectivity_through_codim1(&plane, k)?);
    }
    Ok(())
}
