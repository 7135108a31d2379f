//! τ-semilinear endomorphisms of `V = GF(q)^g`.
//!
//! A map is stored as a matrix `A` whose `j`-th column is `F(e_j)`, together
//! with its automorphism `τ`. On coordinates `F(v) = A · τ(v)`, so
//! `F(αv) = τ(α)F(v)` and composition twists the right factor:
//! the matrix of `F ∘ G` is `A_F · τ_F(A_G)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Automorphism, FieldCtx};
use crate::linalg::{canonical_basis, Matrix, Vector};

/// Rank `r` and infinity rank `s`, with `s ≤ r ≤ g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RankProfile {
    pub r: usize,
    pub s: usize,
}

impl RankProfile {
    pub fn new(r: usize, s: usize, g: usize) -> Result<Self> {
        if s <= r && r <= g {
            Ok(RankProfile { r, s })
        } else {
            Err(Error::ProfileOutOfRange { r, s, g })
        }
    }

    /// Every admissible profile for dimension `g`, ordered by `(r, s)`.
    pub fn all(g: usize) -> impl Iterator<Item = RankProfile> {
        (0..=g).flat_map(|r| (0..=r).map(move |s| RankProfile { r, s }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemilinearMap {
    matrix: Matrix,
    tau: Automorphism,
}

impl SemilinearMap {
    pub fn new(matrix: Matrix, tau: Automorphism) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "endomorphism matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(SemilinearMap { matrix, tau })
    }

    pub fn identity(g: usize, degree: u32) -> Self {
        SemilinearMap { matrix: Matrix::identity(g), tau: Automorphism::identity(degree) }
    }

    pub fn zero(g: usize, tau: Automorphism) -> Self {
        SemilinearMap { matrix: Matrix::zeros(g, g), tau }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn tau(&self) -> Automorphism {
        self.tau
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, ctx: &FieldCtx, v: &Vector) -> Result<Vector> {
        self.matrix.apply(ctx, &v.map_entries(ctx, self.tau))
    }

    /// `self ∘ other`.
    pub fn compose(&self, ctx: &FieldCtx, other: &SemilinearMap) -> Result<SemilinearMap> {
        let matrix = self.matrix.mul(ctx, &other.matrix.map_entries(ctx, self.tau))?;
        Ok(SemilinearMap { matrix, tau: self.tau.compose(other.tau) })
    }

    /// `n`-fold composition; `power(0)` is the identity map.
    pub fn power(&self, ctx: &FieldCtx, n: usize) -> SemilinearMap {
        let mut acc = SemilinearMap::identity(self.dim(), self.tau.degree());
        for _ in 0..n {
            acc = self.compose(ctx, &acc).expect("square maps of equal size compose");
        }
        acc
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.matrix.rank(ctx)
    }

    /// Dimension of the terminal image, computed as `rank(F^g)`.
    pub fn inf_rank(&self, ctx: &FieldCtx) -> usize {
        self.power(ctx, self.dim()).rank(ctx)
    }

    pub fn profile(&self, ctx: &FieldCtx) -> RankProfile {
        let r = self.rank(ctx);
        // rank(F^n) stabilizes once it stops dropping, so stop early.
        let mut s = r;
        let mut acc = self.clone();
        for _ in 1..self.dim() {
            if s == 0 || s == self.dim() {
                break;
            }
            acc = self.compose(ctx, &acc).expect("square maps of equal size compose");
            let next = acc.rank(ctx);
            if next == s {
                break;
            }
            s = next;
        }
        RankProfile { r, s }
    }

    /// Canonical basis of `F(Span(basis))`.
    pub fn image_of(&self, ctx: &FieldCtx, basis: &[Vector]) -> Result<Vec<Vector>> {
        let images = basis.iter().map(|v| self.apply(ctx, v)).collect::<Result<Vec<_>>>()?;
        canonical_basis(ctx, self.dim(), &images)
    }

    /// Basis of `V^{F-bij} = im(F^g)`.
    pub fn terminal_image(&self, ctx: &FieldCtx) -> Vec<Vector> {
        self.power(ctx, self.dim()).matrix.column_space_basis(ctx)
    }

    /// Basis of `V^{F-nil} = ker(F^g)`.
    ///
    /// `F^g(v) = M · τ^g(v)`, so the kernel is `τ^{-g}(ker M)`.
    pub fn nil_part(&self, ctx: &FieldCtx) -> Vec<Vector> {
        let fg = self.power(ctx, self.dim());
        let untwist = fg.tau.inverse();
        fg.matrix.kernel_basis(ctx).iter().map(|v| v.map_entries(ctx, untwist)).collect()
    }
}

/// Number of `g × g` matrices over a field of order `q`.
pub fn map_count(q: u32, g: usize) -> u128 {
    (q as u128).checked_pow((g * g) as u32).unwrap_or(u128::MAX)
}

pub fn check_budget(q: u32, g: usize, budget: u64) -> Result<u64> {
    let count = map_count(q, g);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded { count, budget });
    }
    Ok(count as u64)
}

/// The map whose matrix has row-major entries given by the base-q digits of `index`.
pub fn map_at(ctx: &FieldCtx, g: usize, tau: Automorphism, index: u64) -> SemilinearMap {
    SemilinearMap { matrix: Matrix::from_index(ctx, g, g, index), tau }
}

/// Every τ-semilinear endomorphism of `GF(q)^g`, in matrix-code order.
pub fn enumerate_all(
    ctx: &FieldCtx,
    g: usize,
    tau: Automorphism,
    budget: u64,
) -> Result<impl Iterator<Item = SemilinearMap> + '_> {
    let count = check_budget(ctx.order(), g, budget)?;
    Ok((0..count).map(move |i| map_at(ctx, g, tau, i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{span_dim, span_elements, subspaces};

    fn f(ctx: &FieldCtx, g: usize, codes: &[u32], tau: u32) -> SemilinearMap {
        SemilinearMap::new(Matrix::from_codes(ctx, g, g, codes).unwrap(), ctx.automorphism(tau).unwrap())
            .unwrap()
    }

    fn all_vectors(ctx: &FieldCtx, g: usize) -> Vec<Vector> {
        let basis: Vec<Vector> = (0..g).map(|i| Vector::unit(g, i)).collect();
        span_elements(ctx, g, &basis)
    }

    #[test]
    fn apply_examples() {
        let f2 = FieldCtx::with_order(2).unwrap();
        let id = SemilinearMap::identity(2, 1);
        let v = Vector::from_codes(&f2, &[1, 0]).unwrap();
        assert_eq!(id.apply(&f2, &v).unwrap(), v);
        let f4 = FieldCtx::with_order(4).unwrap();
        let frob = f(&f4, 1, &[1], 1);
        let x = Vector::from_codes(&f4, &[2]).unwrap();
        assert_eq!(frob.apply(&f4, &x).unwrap().codes(), vec![3]);
        assert!(frob.apply(&f4, &Vector::zero(1)).unwrap().is_zero());
    }

    #[test]
    fn compose_examples() {
        let f4 = FieldCtx::with_order(4).unwrap();
        let a = f(&f4, 1, &[2], 1);
        let sq = a.compose(&f4, &a).unwrap();
        assert_eq!(sq, SemilinearMap::identity(1, 2));
        assert_eq!(a.compose(&f4, &SemilinearMap::identity(1, 2)).unwrap(), a);
        let f3 = FieldCtx::with_order(3).unwrap();
        let b = f(&f3, 2, &[1, 2, 0, 1], 0);
        let c = f(&f3, 2, &[2, 0, 1, 1], 0);
        assert_eq!(b.compose(&f3, &c).unwrap().matrix(), &b.matrix().mul(&f3, c.matrix()).unwrap());
    }

    #[test]
    fn power_examples() {
        let f2 = FieldCtx::with_order(2).unwrap();
        let n = f(&f2, 2, &[0, 1, 0, 0], 0);
        assert_eq!(n.power(&f2, 0), SemilinearMap::identity(2, 1));
        assert_eq!(n.power(&f2, 1), n);
        assert!(n.power(&f2, 2).matrix().is_zero());
    }

    #[test]
    fn profile_examples() {
        let f2 = FieldCtx::with_order(2).unwrap();
        assert_eq!(SemilinearMap::zero(3, Automorphism::identity(1)).profile(&f2), RankProfile { r: 0, s: 0 });
        assert_eq!(f(&f2, 2, &[1, 1, 0, 1], 0).profile(&f2), RankProfile { r: 2, s: 2 });
        assert_eq!(f(&f2, 2, &[0, 1, 0, 0], 0).profile(&f2), RankProfile { r: 1, s: 0 });
        let f4 = FieldCtx::with_order(4).unwrap();
        assert_eq!(f(&f4, 2, &[2, 1, 3, 0], 1).profile(&f4), RankProfile { r: 2, s: 2 });
    }

    #[test]
    fn decomposition_examples() {
        let f2 = FieldCtx::with_order(2).unwrap();
        let id = SemilinearMap::identity(2, 1);
        assert_eq!(id.terminal_image(&f2).len(), 2);
        assert!(id.nil_part(&f2).is_empty());
        let n = f(&f2, 2, &[0, 1, 0, 0], 0);
        assert!(n.terminal_image(&f2).is_empty());
        assert_eq!(span_dim(&f2, &n.nil_part(&f2)), 2);
        let proj = f(&f2, 2, &[1, 0, 0, 0], 0);
        assert_eq!(proj.terminal_image(&f2), vec![Vector::unit(2, 0)]);
        assert_eq!(proj.nil_part(&f2), vec![Vector::unit(2, 1)]);
    }

    #[test]
    fn enumeration() {
        let f2 = FieldCtx::with_order(2).unwrap();
        let id = Automorphism::identity(1);
        assert_eq!(enumerate_all(&f2, 1, id, 1 << 26).unwrap().count(), 2);
        let maps: Vec<_> = enumerate_all(&f2, 2, id, 1 << 26).unwrap().collect();
        assert_eq!(maps.len(), 16);
        for (i, m) in maps.iter().enumerate() {
            assert_eq!(m.matrix().index_code(&f2), i as u64);
        }
        let f4 = FieldCtx::with_order(4).unwrap();
        let frob = f4.automorphism(1).unwrap();
        assert_eq!(enumerate_all(&f4, 1, frob, 1 << 26).unwrap().count(), 4);
        assert!(matches!(enumerate_all(&f2, 3, id, 100), Err(Error::BudgetExceeded { count: 512, .. })));
        assert!(RankProfile::new(2, 3, 3).is_err());
        assert_eq!(RankProfile::all(2).count(), 6);
    }

    #[test]
    fn semilinearity_and_composition_exhaustive() {
        for q in [2, 3, 4] {
            let ctx = FieldCtx::with_order(q).unwrap();
            for g in 1..=2 {
                let vectors = all_vectors(&ctx, g);
                for tau in ctx.automorphisms() {
                    let maps: Vec<_> = enumerate_all(&ctx, g, tau, 1 << 20).unwrap().collect();
                    for m in &maps {
                        for v in &vectors {
                            let fv = m.apply(&ctx, v).unwrap();
                            for a in ctx.elements() {
                                let lhs = m.apply(&ctx, &v.scale(&ctx, a)).unwrap();
                                assert_eq!(lhs, fv.scale(&ctx, ctx.frobenius(a, tau)));
                            }
                        }
                    }
                    // pointwise composition against a sample of right factors
                    for sigma in ctx.automorphisms() {
                        for (i, m) in maps.iter().enumerate().step_by(7) {
                            let other = map_at(&ctx, g, sigma, (i as u64 * 31) % maps.len() as u64);
                            let comp = m.compose(&ctx, &other).unwrap();
                            assert_eq!(comp.tau(), tau.compose(sigma));
                            for v in &vectors {
                                let pointwise = m.apply(&ctx, &other.apply(&ctx, v).unwrap()).unwrap();
                                assert_eq!(comp.apply(&ctx, v).unwrap(), pointwise);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn terminal_image_is_maximal() {
        let ctx = FieldCtx::with_order(2).unwrap();
        for g in 1..=3 {
            let subs = subspaces(&ctx, g);
            for m in enumerate_all(&ctx, g, Automorphism::identity(1), 1 << 20).unwrap() {
                let s = m.inf_rank(&ctx);
                for w in &subs {
                    let image = m.image_of(&ctx, w).unwrap();
                    let mut joined = w.clone();
                    joined.extend(image.iter().cloned());
                    let stable = span_dim(&ctx, &joined) == w.len();
                    if stable && image.len() == w.len() {
                        assert!(w.len() <= s);
                    }
                }
            }
        }
    }
}
