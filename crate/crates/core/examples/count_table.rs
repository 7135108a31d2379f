//! Prints the profile counts for GF(q)^g from the closed form.
//!
//! `cargo run --example count_table -- 3 4` tabulates q = 3, g = 4.

use semilin::counting::{formula_table, gl_order};
use semilin::semilinear::RankProfile;

fn main() -> semilin::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let q = args.first().copied().unwrap_or(2);
    let g = args.get(1).copied().unwrap_or(3) as usize;
    semilin::FieldCtx::with_order(q)?;
    let table = formula_table(g, q)?;
    println!("{:>3} {:>3}  count", "r", "s");
    for p in RankProfile::all(g) {
        println!("{:>3} {:>3}  {}", p.r, p.s, table.get(p.r, p.s));
    }
    println!("total      {}", table.total());
    println!("nilpotent  {}", table.nilpotent_total());
    println!("|GL|       {}", gl_order(g as u64, q));
    Ok(())
}
