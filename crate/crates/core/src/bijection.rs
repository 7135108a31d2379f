//! The bijection between semilinear maps of profile `(r, s)` and the tuple
//! set `X(r, s) ⊂ V^g`.
//!
//! `X(r, s)` holds the tuples `(x_1, …, x_g)` with
//! 1. `dim Span(x_1, …, x_g) = r`,
//! 2. `dim Span(x_{g-s+1}, …, x_g) = s`,
//! 3. `x_{g-s} ∈ Span(x_{g-s+1}, …, x_g)` (vacuous when `s = g`).
//!
//! `mu` evaluates a map on the basis adapted to its image flag; `nu` rebuilds
//! the map from a tuple by adapting to the flag the tuple induces.

use crate::error::{Error, Result};
use crate::flags::{adapt_to_flag, image_flag, standard_basis, Flag};
use crate::gf::{Automorphism, FieldCtx};
use crate::linalg::{in_span, span_dim, Matrix, Vector};
use crate::semilinear::{RankProfile, SemilinearMap};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorTuple(Vec<Vector>);

impl VectorTuple {
    pub fn new(xs: Vec<Vector>) -> Result<Self> {
        let g = xs.len();
        if xs.iter().any(|x| x.len() != g) {
            return Err(Error::DimensionMismatch(format!("a tuple of {g} vectors must live in dimension {g}")));
        }
        Ok(VectorTuple(xs))
    }

    /// The tuple of columns of a square matrix.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        Self::new(m.columns())
    }

    /// The square matrix whose `j`-th column is `x_j`.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(self.0.len(), &self.0).expect("tuple vectors have length g")
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Tests the three defining conditions of `X(r, s)`.
pub fn is_member_x(ctx: &FieldCtx, t: &VectorTuple, r: usize, s: usize) -> Result<bool> {
    let g = t.dim();
    RankProfile::new(r, s, g)?;
    let xs = t.vectors();
    if span_dim(ctx, xs) != r {
        return Ok(false);
    }
    let tail = &xs[g - s..];
    if span_dim(ctx, tail) != s {
        return Ok(false);
    }
    if s < g && !in_span(ctx, tail, &xs[g - s - 1]) {
        return Ok(false);
    }
    Ok(true)
}

/// The unique `(r, s)` with `t ∈ X(r, s)`, if any.
pub fn tuple_profile(ctx: &FieldCtx, t: &VectorTuple) -> Option<RankProfile> {
    let r = span_dim(ctx, t.vectors());
    (0..=r)
        .find(|&s| is_member_x(ctx, t, r, s).unwrap_or(false))
        .map(|s| RankProfile { r, s })
}

/// `μ(F) = (F(v_1), …, F(v_g))` for the basis `v` adapted to the image flag of `F`.
pub fn mu(ctx: &FieldCtx, map: &SemilinearMap) -> VectorTuple {
    let g = map.dim();
    let flag = image_flag(ctx, map);
    let adapted = adapt_to_flag(ctx, &standard_basis(g), &flag).expect("image flag is valid");
    let xs = adapted
        .vectors
        .iter()
        .map(|v| map.apply(ctx, v).expect("basis vectors have length g"))
        .collect();
    VectorTuple(xs)
}

/// `V_0 = V`, then `V_i = Span(x_j : j > g - d_{i-1})` until the dimension stops dropping.
pub fn induced_flag(ctx: &FieldCtx, t: &VectorTuple) -> Result<Flag> {
    let g = t.dim();
    let mut members = vec![standard_basis(g)];
    loop {
        let d = members.last().unwrap().len();
        let next = crate::linalg::canonical_basis(ctx, g, &t.vectors()[g - d..])?;
        if next.len() == d {
            break;
        }
        let done = next.is_empty();
        members.push(next);
        if done {
            break;
        }
    }
    Flag::new(ctx, g, members)
}

/// `ν(x)`: the τ-semilinear map sending the adapted basis `v_x` to `x`.
///
/// With `P` the matrix of `v_x` and `X` that of `x`, the matrix is `X · τ(P)⁻¹`.
pub fn nu(ctx: &FieldCtx, t: &VectorTuple, tau: Automorphism) -> Result<SemilinearMap> {
    tuple_profile(ctx, t).ok_or(Error::NotInX)?;
    let g = t.dim();
    let flag = induced_flag(ctx, t)?;
    let adapted = adapt_to_flag(ctx, &standard_basis(g), &flag)?;
    let p = Matrix::from_columns(g, &adapted.vectors)?;
    let twisted_inv = p.map_entries(ctx, tau).inverse(ctx)?;
    let matrix = t.to_matrix().mul(ctx, &twisted_inv)?;
    SemilinearMap::new(matrix, tau)
}
