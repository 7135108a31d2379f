//! Adapting an ordered basis to a subspace and to the image flag of a map.

use semilin::flags::{adapt_to_flag, adapt_to_subspace, image_flag, standard_basis};
use semilin::linalg::Vector;
use semilin::{FieldCtx, Matrix, Result, SemilinearMap};

fn codes(vs: &[Vector]) -> Vec<Vec<u32>> {
    vs.iter().map(Vector::codes).collect()
}

fn main() -> Result<()> {
    let f3 = FieldCtx::with_order(3)?;
    let e = standard_basis(4);
    let u = vec![Vector::from_codes(&f3, &[0, 2, 1, 0])?, Vector::from_codes(&f3, &[0, 1, 0, 1])?];
    let (basis, jumps) = adapt_to_subspace(&f3, &e, &u, 0)?;
    println!("jump positions (0-based) {jumps:?}");
    println!("adapted basis {:?}", codes(&basis));

    let f = SemilinearMap::new(Matrix::from_codes(&f3, 3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0])?, f3.automorphism(0)?)?;
    let flag = image_flag(&f3, &f);
    println!("image flag dimensions {:?}", flag.dims());
    let adapted = adapt_to_flag(&f3, &standard_basis(3), &flag)?;
    println!("flag-adapted basis {:?}", codes(&adapted.vectors));
    println!("pivot sets {:?}", adapted.pivot_sets);
    Ok(())
}
