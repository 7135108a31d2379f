//! Flags of subspaces and canonical adapted bases.
//!
//! Adapting an ordered basis `e` to a subspace `U` produces, for each `j` in
//! the jump set `J = {j : U ∩ Span(e_j, …) ≠ U ∩ Span(e_{j+1}, …)}`, the unique
//! `u_j ∈ U` with coefficient 1 at `e_j`, 0 before `j`, and 0 at every other
//! position of `J`. In `e`-coordinates these are exactly the rows of the
//! reduced row echelon form of a basis of `U`, and `J` is its pivot set.
//!
//! Indices here are 0-based.

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::linalg::{span_dim, Matrix, Vector};
use crate::semilinear::SemilinearMap;

/// A chain `V_0 ⊋ V_1 ⊋ …` of subspaces given by bases.
///
/// The last member may be nonzero (an image flag stops at the terminal image)
/// and may also be the zero subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    g: usize,
    members: Vec<Vec<Vector>>,
}

impl Flag {
    pub fn new(ctx: &FieldCtx, g: usize, members: Vec<Vec<Vector>>) -> Result<Self> {
        for (i, m) in members.iter().enumerate() {
            if m.iter().any(|v| v.len() != g) {
                return Err(Error::InvalidFlag(format!("member {i} has vectors outside a {g}-dimensional space")));
            }
            if span_dim(ctx, m) != m.len() {
                return Err(Error::InvalidFlag(format!("member {i} basis is linearly dependent")));
            }
        }
        for (i, pair) in members.windows(2).enumerate() {
            let (big, small) = (&pair[0], &pair[1]);
            if small.len() >= big.len() {
                return Err(Error::InvalidFlag(format!(
                    "dimensions must strictly decrease (member {} has dimension {}, member {} has {})",
                    i,
                    big.len(),
                    i + 1,
                    small.len()
                )));
            }
            let mut joined = big.clone();
            joined.extend(small.iter().cloned());
            if span_dim(ctx, &joined) != big.len() {
                return Err(Error::InvalidFlag(format!("member {} is not contained in member {i}", i + 1)));
            }
        }
        Ok(Flag { g, members })
    }

    pub fn ambient_dim(&self) -> usize {
        self.g
    }

    pub fn members(&self) -> &[Vec<Vector>] {
        &self.members
    }

    pub fn dims(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub vectors: Vec<Vector>,
    /// `pivot_sets[i]` is the jump set produced when adapting to flag member `i`.
    pub pivot_sets: Vec<Vec<usize>>,
}

/// The standard ordered basis `e_1, …, e_g`.
pub fn standard_basis(g: usize) -> Vec<Vector> {
    (0..g).map(|i| Vector::unit(g, i)).collect()
}

/// Adapts the ordered basis `e_basis` to `Span(u_basis)`.
///
/// Returns the new ordered basis, non-jump `e_j` first then `u_j`, both in
/// increasing `j`, together with the jump set `J`. When the last
/// `frozen_tail` vectors of `e_basis` lie in `U` they are returned unchanged.
pub fn adapt_to_subspace(
    ctx: &FieldCtx,
    e_basis: &[Vector],
    u_basis: &[Vector],
    frozen_tail: usize,
) -> Result<(Vec<Vector>, Vec<usize>)> {
    let g = e_basis.len();
    let p = Matrix::from_columns(g, e_basis)?;
    let p_inv = p.inverse(ctx)?;
    let coords = u_basis
        .iter()
        .map(|u| p_inv.apply(ctx, u))
        .collect::<Result<Vec<_>>>()?;
    let c = Matrix::from_rows(g, &coords)?;
    let (r, pivots) = c.rref(ctx);
    if pivots.len() != u_basis.len() {
        return Err(Error::DependentVectors);
    }
    if frozen_tail > pivots.len() {
        return Err(Error::FrozenTailViolated(frozen_tail));
    }
    // e_j ∈ U exactly when the unit row e_j is in the row space; for the
    // tail this means the last `frozen_tail` pivots are g-n..g with unit rows.
    let m = pivots.len();
    for k in m - frozen_tail..m {
        let j = g - (m - k);
        if pivots[k] != j || r.row(k) != Vector::unit(g, j) {
            return Err(Error::FrozenTailViolated(frozen_tail));
        }
    }
    let mut out: Vec<Vector> = (0..g)
        .filter(|j| !pivots.contains(j))
        .map(|j| e_basis[j].clone())
        .collect();
    for k in 0..m {
        out.push(p.apply(ctx, &r.row(k))?);
    }
    Ok((out, pivots))
}

/// Adapts `e_basis` to every member of `flag`, smallest member first.
pub fn adapt_to_flag(ctx: &FieldCtx, e_basis: &[Vector], flag: &Flag) -> Result<AdaptedBasis> {
    if e_basis.len() != flag.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis of {} vectors for a flag in dimension {}",
            e_basis.len(),
            flag.ambient_dim()
        )));
    }
    let mut basis = e_basis.to_vec();
    let mut pivot_sets = vec![Vec::new(); flag.len()];
    let mut frozen = 0;
    for (i, member) in flag.members().iter().enumerate().rev() {
        let (next, pivots) = adapt_to_subspace(ctx, &basis, member, frozen)?;
        basis = next;
        pivot_sets[i] = pivots;
        frozen = member.len();
    }
    Ok(AdaptedBasis { vectors: basis, pivot_sets })
}

/// The chain `V ⊋ F(V) ⊋ F²(V) ⊋ …` up to the terminal image.
pub fn image_flag(ctx: &FieldCtx, map: &SemilinearMap) -> Flag {
    let g = map.dim();
    let mut members = vec![standard_basis(g)];
    loop {
        let last = members.last().unwrap();
        let next = map.image_of(ctx, last).expect("basis vectors have length g");
        if next.len() == last.len() {
            break;
        }
        let done = next.is_empty();
        members.push(next);
        if done {
            break;
        }
    }
    Flag { g, members }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{in_span, span_elements, subspaces};

    fn v(ctx: &FieldCtx, codes: &[u32]) -> Vector {
        Vector::from_codes(ctx, codes).unwrap()
    }

    #[test]
    fn adapt_examples() {
        let f2 = FieldCtx::with_order(2).unwrap();
        let e = standard_basis(2);
        let (basis, j) = adapt_to_subspace(&f2, &e, &[v(&f2, &[1, 1])], 0).unwrap();
        assert_eq!(j, vec![0]);
        assert_eq!(basis, vec![v(&f2, &[0, 1]), v(&f2, &[1, 1])]);
        let (basis, j) = adapt_to_subspace(&f2, &e, &e, 0).unwrap();
        assert_eq!((basis, j), (e.clone(), vec![0, 1]));
        let (basis, j) = adapt_to_subspace(&f2, &e, &[], 0).unwrap();
        assert_eq!((basis, j), (e.clone(), vec![]));
    }

    #[test]
    fn adapt_errors() {
        let f2 = FieldCtx::with_order(2).unwrap();
        let e = standard_basis(2);
        let u = v(&f2, &[1, 1]);
        assert_eq!(adapt_to_subspace(&f2, &e, &[u.clone(), u.clone()], 0), Err(Error::DependentVectors));
        assert_eq!(adapt_to_subspace(&f2, &e, &[u.clone()], 1), Err(Error::FrozenTailViolated(1)));
        assert_eq!(adapt_to_subspace(&f2, &e, &[u], 2), Err(Error::FrozenTailViolated(2)));
        assert_eq!(
            adapt_to_subspace(&f2, &[e[0].clone(), e[0].clone()], &[], 0),
            Err(Error::Singular)
        );
    }

    #[test]
    fn adapt_to_flag_examples() {
        let f2 = FieldCtx::with_order(2).unwrap();
        let e = standard_basis(2);
        let flag = Flag::new(&f2, 2, vec![e.clone(), vec![]]).unwrap();
        assert_eq!(adapt_to_flag(&f2, &e, &flag).unwrap().vectors, e);

        let flag = Flag::new(&f2, 2, vec![e.clone(), vec![e[0].clone()], vec![]]).unwrap();
        let adapted = adapt_to_flag(&f2, &e, &flag).unwrap();
        assert_eq!(adapted.vectors, vec![e[1].clone(), e[0].clone()]);
        assert_eq!(adapted.pivot_sets, vec![vec![0, 1], vec![0], vec![]]);

        let flag = Flag::new(&f2, 2, vec![e.clone(), vec![v(&f2, &[1, 1])], vec![]]).unwrap();
        let adapted = adapt_to_flag(&f2, &e, &flag).unwrap();
        assert_eq!(adapted.vectors, vec![v(&f2, &[0, 1]), v(&f2, &[1, 1])]);
    }

    #[test]
    fn flag_validation() {
        let f2 = FieldCtx::with_order(2).unwrap();
        let e = standard_basis(2);
        assert!(Flag::new(&f2, 2, vec![vec![e[0].clone()], vec![e[1].clone()]]).is_err());
        assert!(Flag::new(&f2, 2, vec![vec![e[0].clone()], vec![e[0].clone()]]).is_err());
        assert!(Flag::new(&f2, 2, vec![vec![e[0].clone(), e[0].clone()]]).is_err());
        assert!(Flag::new(&f2, 3, vec![e]).is_err());
    }

    #[test]
    fn image_flag_examples() {
        let f2 = FieldCtx::with_order(2).unwrap();
        let id = SemilinearMap::identity(2, 1);
        assert_eq!(image_flag(&f2, &id).dims(), vec![2]);
        let zero = SemilinearMap::zero(2, f2.automorphism(0).unwrap());
        assert_eq!(image_flag(&f2, &zero).dims(), vec![2, 0]);
        let n = SemilinearMap::new(
            Matrix::from_codes(&f2, 2, 2, &[0, 1, 0, 0]).unwrap(),
            f2.automorphism(0).unwrap(),
        )
        .unwrap();
        let flag = image_flag(&f2, &n);
        assert_eq!(flag.dims(), vec![2, 1, 0]);
        assert_eq!(flag.members()[1], vec![Vector::unit(2, 0)]);
    }

    #[test]
    fn adapted_basis_invariant_on_image_flags() {
        for q in [2, 3, 4] {
            let ctx = FieldCtx::with_order(q).unwrap();
            let g = 2;
            for tau in ctx.automorphisms() {
                for m in crate::semilinear::enumerate_all(&ctx, g, tau, 1 << 20).unwrap() {
                    let flag = image_flag(&ctx, &m);
                    let profile = m.profile(&ctx);
                    let dims = flag.dims();
                    assert_eq!(dims.get(1).copied().unwrap_or(g), profile.r);
                    assert_eq!(*dims.last().unwrap(), profile.s);
                    let adapted = adapt_to_flag(&ctx, &standard_basis(g), &flag).unwrap();
                    assert_eq!(span_dim(&ctx, &adapted.vectors), g);
                    for member in flag.members() {
                        let tail = &adapted.vectors[g - member.len()..];
                        assert_eq!(span_dim(&ctx, tail), member.len());
                        assert!(tail.iter().all(|t| in_span(&ctx, member, t)));
                    }
                }
            }
        }
    }

    #[test]
    fn adaptation_ignores_basis_representation() {
        let ctx = FieldCtx::with_order(3).unwrap();
        let e = standard_basis(3);
        for u in subspaces(&ctx, 3) {
            let (expected, j) = adapt_to_subspace(&ctx, &e, &u, 0).unwrap();
            // another basis of the same subspace: reversed, with partial sums
            let mut alt: Vec<Vector> = u.iter().rev().cloned().collect();
            for k in 1..alt.len() {
                alt[k] = alt[k].add(&ctx, &alt[k - 1].scale(&ctx, ctx.element(2).unwrap()));
            }
            assert_eq!(adapt_to_subspace(&ctx, &e, &alt, 0).unwrap(), (expected.clone(), j));
            // re-adapting keeps the tail
            let (again, _) = adapt_to_subspace(&ctx, &expected, &u, u.len()).unwrap();
            assert_eq!(&again[3 - u.len()..], &expected[3 - u.len()..]);
            assert_eq!(span_elements(&ctx, 3, &expected[3 - u.len()..]).len(), 3usize.pow(u.len() as u32));
        }
    }
}
