//! Sends every map of GF(2)^3 to its tuple and back, tallying tuples per profile.

use std::collections::{BTreeMap, HashSet};

use semilin::bijection::{is_member_x, mu, nu};
use semilin::semilinear::enumerate_all;
use semilin::{FieldCtx, Result};

fn main() -> Result<()> {
    let f2 = FieldCtx::with_order(2)?;
    let tau = f2.automorphism(0)?;
    let mut per_profile = BTreeMap::new();
    let mut seen = HashSet::new();
    let mut maps = 0u32;
    for f in enumerate_all(&f2, 3, tau, 1 << 20)? {
        let p = f.profile(&f2);
        let t = mu(&f2, &f);
        assert!(is_member_x(&f2, &t, p.r, p.s)?);
        assert_eq!(nu(&f2, &t, tau)?, f);
        assert!(seen.insert(t));
        maps += 1;
        *per_profile.entry((p.r, p.s)).or_insert(0u32) += 1;
    }
    println!("{maps} maps, {} distinct tuples", seen.len());
    for ((r, s), n) in per_profile {
        println!("X({r},{s}) has {n} tuples");
    }
    Ok(())
}
