//! Composition, powers and the rank profile of a Frobenius-semilinear map of GF(4)^3.

use semilin::linalg::Vector;
use semilin::{FieldCtx, Matrix, Result, SemilinearMap};

fn show(ctx: &FieldCtx, vs: &[Vector]) -> String {
    let parts: Vec<String> = vs
        .iter()
        .map(|v| format!("({})", v.entries().iter().map(|&x| ctx.display(x)).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", parts.join(" "))
}

fn main() -> Result<()> {
    let f4 = FieldCtx::with_order(4)?;
    let frob = f4.automorphism(1)?;
    // F(v) = A · v^2, entrywise squaring.
    let a = Matrix::from_codes(&f4, 3, 3, &[2, 1, 0, 0, 0, 1, 0, 0, 0])?;
    let f = SemilinearMap::new(a, frob)?;

    let v = Vector::from_codes(&f4, &[1, 2, 3])?;
    println!("F{} = {}", show(&f4, &[v.clone()]), show(&f4, &[f.apply(&f4, &v)?]));

    for k in 1..=3 {
        let fk = f.power(&f4, k);
        println!("F^{k}: tau exponent {}, rank {}", fk.tau().exponent(), fk.rank(&f4));
    }
    let p = f.profile(&f4);
    println!("rank profile (r, s) = ({}, {})", p.r, p.s);
    println!("terminal image {}", show(&f4, &f.terminal_image(&f4)));
    println!("nilpotent part {}", show(&f4, &f.nil_part(&f4)));

    let g = f.compose(&f4, &f)?;
    assert_eq!(g, f.power(&f4, 2));
    Ok(())
}
