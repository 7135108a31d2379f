//! Exact toolkit for τ-semilinear endomorphisms of `GF(q)^g`: rank and
//! infinity-rank profiles, canonical adapted bases, the bijection with vector
//! tuples, and closed-form counts checked against exhaustive enumeration.

pub mod bijection;
pub mod cli;
pub mod counting;
pub mod error;
pub mod flags;
pub mod format;
pub mod gf;
pub mod linalg;
pub mod semilinear;

pub use error::{Error, Result};
pub use gf::{Automorphism, FieldCtx, FieldElement};
pub use linalg::{Matrix, Vector};
pub use semilinear::{RankProfile, SemilinearMap};
