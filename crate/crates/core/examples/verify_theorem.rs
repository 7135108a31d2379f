//! Checks the closed form against exhaustive enumeration for every automorphism of GF(4), g = 3.

use semilin::counting::{verify, DEFAULT_BUDGET};
use semilin::{FieldCtx, Result};

fn main() -> Result<()> {
    let f4 = FieldCtx::with_order(4)?;
    for tau in f4.automorphisms() {
        let report = verify(&f4, 3, tau, DEFAULT_BUDGET, None)?;
        println!(
            "tau exponent {}: {} cells, enumerated total {}, {}",
            tau.exponent(),
            report.cells.len(),
            report.totals.enumerated.as_deref().unwrap_or("-"),
            if report.passed() { "all match" } else { "MISMATCH" }
        );
        for cell in report.mismatches() {
            println!("  ({}, {}) theorem {} enumerated {:?}", cell.r, cell.s, cell.theorem, cell.enumerated);
        }
    }
    Ok(())
}
