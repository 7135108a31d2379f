//! Exact counts of semilinear endomorphisms by rank profile.
//!
//! Two closed-form routes are kept side by side: the product over `q^{-j}`
//! factors evaluated with exact rationals (`theorem_count`), and the staged
//! integer product that counts the tuple set `X(r, s)` directly
//! (`staged_count`). A third route tallies profiles over every matrix.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Automorphism, FieldCtx};
use crate::semilinear::{check_budget, map_at, RankProfile};

pub const DEFAULT_BUDGET: u64 = 1 << 26;

// Work units for the enumeration; fixed so the split never depends on the thread count.
const CHUNK: u64 = 1 << 12;

fn qpow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// `∏_{i<d} (q^m - q^i)`, the number of injective-rank-`d` families; zero when `d > m`.
fn falling_q_product(m: u64, d: u64, q: u64) -> BigUint {
    if d > m {
        return BigUint::zero();
    }
    let qm = qpow(q, m);
    (0..d).map(|i| &qm - qpow(q, i)).product()
}

/// `|GL_g(F_q)| = ∏_{i<g} (q^g - q^i)`.
pub fn gl_order(g: u64, q: u64) -> BigUint {
    falling_q_product(g, g, q)
}

/// Number of `d`-dimensional subspaces of an `n`-dimensional space over `F_q`.
pub fn gaussian_binomial(n: u64, d: u64, q: u64) -> Result<BigUint> {
    if d > n {
        return Err(Error::DimensionMismatch(format!("subspace dimension {d} exceeds {n}")));
    }
    let num = falling_q_product(n, d, q);
    let den = falling_q_product(d, d, q);
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Number of surjective linear maps `F_q^m → U` with `dim U = d`.
pub fn surjection_count(m: u64, d: u64, q: u64) -> BigUint {
    falling_q_product(m, d, q)
}

/// Number of `(n-1)`-tuples in an `n`-dimensional space spanning a `d`-dimensional subspace.
pub fn q_tuple_count(n: u64, d: u64, q: u64) -> Result<BigUint> {
    if d == 0 {
        return Ok(BigUint::one());
    }
    Ok(gaussian_binomial(n, d, q)? * surjection_count(n - 1, d, q))
}

fn check_profile(g: u64, r: u64, s: u64) -> Result<()> {
    RankProfile::new(r as usize, s as usize, g as usize).map(|_| ())
}

/// `#X(r,s)` assembled stage by stage: independent last `s` vectors, the lift
/// factor `q^{s(g-s)}`, and the tuple count in the quotient `V / V_∞`.
pub fn staged_count(g: u64, r: u64, s: u64, q: u64) -> Result<BigUint> {
    check_profile(g, r, s)?;
    let (n, d) = (g - s, r - s);
    let last_s = falling_q_product(g, s, q);
    let lift = qpow(q, s * n);
    Ok(last_s * lift * q_tuple_count(n, d, q)?)
}

fn one_minus_q_inv_pow(q: &BigInt, j: u64) -> BigRational {
    BigRational::one() - BigRational::new(BigInt::one(), q.pow(j as u32))
}

fn q_inv_product(q: &BigInt, range: std::ops::RangeInclusive<u64>) -> BigRational {
    range.map(|j| one_minus_q_inv_pow(q, j)).fold(BigRational::one(), |acc, x| acc * x)
}

/// The closed form evaluated over the rationals, then checked for integrality.
pub fn theorem_count(g: u64, r: u64, s: u64, q: u64) -> Result<BigUint> {
    check_profile(g, r, s)?;
    let qi = BigInt::from(q);
    let prefactor = BigRational::new(qi.pow((g * g) as u32), qi.pow(((g - r) * (g - r) + r - s) as u32));
    let mut numerator = q_inv_product(&qi, 1..=g);
    // ∏_{j=g-r}^{g-s-1}; empty when s = g.
    if g - s >= 1 {
        numerator *= q_inv_product(&qi, (g - r)..=(g - s - 1));
    }
    let denominator = q_inv_product(&qi, 1..=(r - s)) * q_inv_product(&qi, 1..=(g - r));
    let value = prefactor * numerator / denominator;
    if !value.is_integer() {
        return Err(Error::NonIntegral { r: r as usize, s: s as usize });
    }
    value
        .to_integer()
        .to_biguint()
        .ok_or(Error::NonIntegral { r: r as usize, s: s as usize })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Theorem,
    Staged,
    Enumeration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub q: u64,
    pub g: usize,
    pub tau_exponent: Option<u32>,
    pub route: Route,
    pub entries: BTreeMap<RankProfile, BigUint>,
}

impl CountTable {
    pub fn get(&self, r: usize, s: usize) -> BigUint {
        self.entries.get(&RankProfile { r, s }).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Entries `(r, 0)` summed: the nilpotent maps.
    pub fn nilpotent_total(&self) -> BigUint {
        self.entries.iter().filter(|(p, _)| p.s == 0).map(|(_, v)| v).sum()
    }

    /// Same counts cell for cell, ignoring route and automorphism.
    pub fn same_counts(&self, other: &CountTable) -> bool {
        self.q == other.q
            && self.g == other.g
            && RankProfile::all(self.g).all(|p| self.get(p.r, p.s) == other.get(p.r, p.s))
    }
}

fn route_table(g: usize, q: u64, route: Route) -> Result<CountTable> {
    let entries = RankProfile::all(g)
        .map(|p| {
            let (g, r, s) = (g as u64, p.r as u64, p.s as u64);
            let v = match route {
                Route::Theorem => theorem_count(g, r, s, q)?,
                _ => staged_count(g, r, s, q)?,
            };
            Ok((p, v))
        })
        .collect::<Result<_>>()?;
    Ok(CountTable { q, g, tau_exponent: None, route, entries })
}

pub fn staged_table(g: usize, q: u64) -> Result<CountTable> {
    route_table(g, q, Route::Staged)
}

/// All cells from the closed form, each cross-checked against the staged route.
pub fn formula_table(g: usize, q: u64) -> Result<CountTable> {
    let theorem = route_table(g, q, Route::Theorem)?;
    let staged = staged_table(g, q)?;
    for p in RankProfile::all(g) {
        let (a, b) = (theorem.get(p.r, p.s), staged.get(p.r, p.s));
        if a != b {
            return Err(Error::RouteMismatch { r: p.r, s: p.s, left: a.to_string(), right: b.to_string() });
        }
    }
    Ok(theorem)
}

/// Tallies the rank profile of every τ-semilinear map of `F_q^g`.
///
/// The index range is cut into fixed chunks; per-chunk tallies are merged in
/// chunk order, so the result does not depend on `threads`.
pub fn bruteforce_table(
    ctx: &FieldCtx,
    g: usize,
    tau: Automorphism,
    budget: u64,
    threads: Option<usize>,
) -> Result<CountTable> {
    let count = check_budget(ctx.order(), g, budget)?;
    let width = g + 1;
    let tally_chunk = |start: u64| -> Vec<u64> {
        let mut tally = vec![0u64; width * width];
        for i in start..(start + CHUNK).min(count) {
            let p = map_at(ctx, g, tau, i).profile(ctx);
            tally[p.r * width + p.s] += 1;
        }
        tally
    };
    let starts: Vec<u64> = (0..count).step_by(CHUNK as usize).collect();
    let run = || -> Vec<Vec<u64>> { starts.par_iter().map(|&s| tally_chunk(s)).collect() };
    let partials = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    let mut totals = vec![0u64; width * width];
    for part in &partials {
        for (t, x) in totals.iter_mut().zip(part) {
            *t += x;
        }
    }
    let entries = RankProfile::all(g)
        .map(|p| (p, BigUint::from(totals[p.r * width + p.s])))
        .collect();
    Ok(CountTable {
        q: ctx.order() as u64,
        g,
        tau_exponent: Some(tau.exponent()),
        route: Route::Enumeration,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub r: usize,
    pub s: usize,
    pub theorem: String,
    pub staged: String,
    pub enumerated: Option<String>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub expected: String,
    pub theorem: String,
    pub staged: String,
    pub enumerated: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corollaries {
    pub gl: bool,
    pub nilpotent: bool,
    pub total_mass: bool,
}

/// The JSON report emitted by `count` and `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub field: String,
    pub g: usize,
    pub tau: Option<u32>,
    pub cells: Vec<CellReport>,
    pub totals: Totals,
    pub corollaries: Corollaries,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.matches)
            && self.corollaries.gl
            && self.corollaries.nilpotent
            && self.corollaries.total_mass
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(|c| !c.matches)
    }
}

/// Builds the report; `enumerated` is present for `verify`, absent for `count`.
pub fn build_report(
    field: String,
    g: usize,
    q: u64,
    tau: Option<u32>,
    enumerated: Option<&CountTable>,
) -> Result<CountReport> {
    let theorem = route_table(g, q, Route::Theorem)?;
    let staged = staged_table(g, q)?;
    let cells = RankProfile::all(g)
        .map(|p| {
            let t = theorem.get(p.r, p.s);
            let st = staged.get(p.r, p.s);
            let e = enumerated.map(|table| table.get(p.r, p.s));
            let matches = t == st && e.as_ref().map_or(true, |e| *e == t);
            CellReport {
                r: p.r,
                s: p.s,
                theorem: t.to_string(),
                staged: st.to_string(),
                enumerated: e.map(|e| e.to_string()),
                matches,
            }
        })
        .collect();
    let (gu, qu) = (g as u64, q);
    let expected = qpow(qu, gu * gu);
    let nil_expected = qpow(qu, gu * gu - gu);
    let gl = gl_order(gu, qu);
    let tables: Vec<&CountTable> = [Some(&theorem), Some(&staged), enumerated].into_iter().flatten().collect();
    let corollaries = Corollaries {
        gl: tables.iter().all(|t| t.get(g, g) == gl),
        nilpotent: tables.iter().all(|t| t.nilpotent_total() == nil_expected),
        total_mass: tables.iter().all(|t| t.total() == expected),
    };
    Ok(CountReport {
        field,
        g,
        tau,
        cells,
        totals: Totals {
            expected: expected.to_string(),
            theorem: theorem.total().to_string(),
            staged: staged.total().to_string(),
            enumerated: enumerated.map(|t| t.total().to_string()),
        },
        corollaries,
    })
}

/// Compares the closed forms against exhaustive enumeration.
pub fn verify(
    ctx: &FieldCtx,
    g: usize,
    tau: Automorphism,
    budget: u64,
    threads: Option<usize>,
) -> Result<CountReport> {
    let enumerated = bruteforce_table(ctx, g, tau, budget, threads)?;
    build_report(ctx.spec(), g, ctx.order() as u64, Some(tau.exponent()), Some(&enumerated))
}
