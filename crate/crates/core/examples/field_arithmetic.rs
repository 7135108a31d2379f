//! Arithmetic in GF(9) and the action of its Frobenius automorphisms.

use semilin::{FieldCtx, Result};

fn main() -> Result<()> {
    let f9: FieldCtx = "3^2".parse()?;
    println!("field {} (order {})", f9.spec(), f9.order());

    let a = f9.element(4)?;
    let b = f9.element(7)?;
    println!("a = {}, b = {}", f9.display(a), f9.display(b));
    println!("a + b = {}", f9.display(f9.add(a, b)));
    println!("a * b = {}", f9.display(f9.mul(a, b)));
    println!("a / b = {}", f9.display(f9.div(a, b)?));
    println!("a^8 = {}", f9.display(f9.pow(a, 8)));

    for tau in f9.automorphisms() {
        let fixed = f9.elements().filter(|&x| f9.frobenius(x, tau) == x).count();
        println!("x -> x^(3^{}) fixes {fixed} elements; tau(a) = {}", tau.exponent(), f9.display(f9.frobenius(a, tau)));
    }

    // An explicit modulus: GF(4) = F_2[x] / (x^2 + x + 1).
    let f4 = FieldCtx::new(2, 2, Some(&[1, 1, 1]))?;
    let x = f4.element(2)?;
    println!("in {}: x^2 = {}", f4.spec(), f4.display(f4.mul(x, x)));
    Ok(())
}
