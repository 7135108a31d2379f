//! Cross-checks the echelon-form adaptation against a direct construction
//! that follows the inductive proof: compute the jump set from the dimensions
//! of `U ∩ Span(e_{j+1}, …)`, pick any vector of `U_{j-1} \ U_j`, normalise its
//! leading coefficient and clear the later jump positions.

use proptest::prelude::*;
use semilin::flags::adapt_to_subspace;
use semilin::linalg::{span_elements, Matrix, Vector};
use semilin::{FieldCtx, FieldElement};

fn inductive_adapt(ctx: &FieldCtx, e: &[Vector], u: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let g = e.len();
    let p = Matrix::from_columns(g, e).unwrap();
    let p_inv = p.inverse(ctx).unwrap();
    // every element of U, in e-coordinates
    let coords: Vec<Vector> = span_elements(ctx, g, u).iter().map(|w| p_inv.apply(ctx, w).unwrap()).collect();
    let leading_zeros = |c: &Vector| (0..g).find(|&i| !c[i].is_zero()).unwrap_or(g);
    // dim U_j = log_q #{w : w has zeros in positions < j}
    let dim_suffix = |j: usize| {
        let n = coords.iter().filter(|c| leading_zeros(c) >= j).count();
        (0..=g).find(|&d| (ctx.order() as usize).pow(d as u32) == n).unwrap()
    };
    let jumps: Vec<usize> = (0..g).filter(|&j| dim_suffix(j) != dim_suffix(j + 1)).collect();
    let mut chosen: Vec<(usize, Vector)> = Vec::new();
    for &j in jumps.iter().rev() {
        let v = coords.iter().find(|c| leading_zeros(c) == j).unwrap();
        let mut w = v.scale(ctx, ctx.inv(v[j]).unwrap());
        for (i, ui) in &chosen {
            let c = w[*i];
            if c != FieldElement::ZERO {
                w = w.sub(ctx, &ui.scale(ctx, c));
            }
        }
        chosen.push((j, w));
    }
    chosen.reverse();
    let mut out: Vec<Vector> = (0..g).filter(|j| !jumps.contains(j)).map(|j| e[j].clone()).collect();
    out.extend(chosen.iter().map(|(_, w)| p.apply(ctx, w).unwrap()));
    (out, jumps)
}

fn matrix_from_seed(ctx: &FieldCtx, rows: usize, cols: usize, seed: &[u32]) -> Matrix {
    let codes: Vec<u32> = seed.iter().take(rows * cols).map(|c| c % ctx.order()).collect();
    Matrix::from_codes(ctx, rows, cols, &codes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn echelon_matches_inductive_construction(
        q in prop::sample::select(vec![2u64, 3, 4, 5]),
        g in 1usize..=4,
        m in 0usize..=4,
        seed in prop::collection::vec(any::<u32>(), 32),
    ) {
        let ctx = FieldCtx::with_order(q).unwrap();
        let m = m.min(g);
        let e = matrix_from_seed(&ctx, g, g, &seed);
        prop_assume!(e.rank(&ctx) == g);
        let u_mat = matrix_from_seed(&ctx, g, m, &seed[16..]);
        prop_assume!(u_mat.rank(&ctx) == m);
        let e = e.columns();
        let u = u_mat.columns();
        let expected = inductive_adapt(&ctx, &e, &u);
        prop_assert_eq!(adapt_to_subspace(&ctx, &e, &u, 0).unwrap(), expected);
    }
}
