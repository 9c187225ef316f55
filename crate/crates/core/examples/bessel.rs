//! Half-integer Bessel functions and their equation residual.

use poincare_wave::specfun::{bessel_equation_residual, bessel_j_half, bessel_j_half_jet};
use poincare_wave::HalfInt;

fn main() {
    let x = 2.0;
    for twice in [-7, -5, -3, -1, 1, 3, 5, 7] {
        let nu = HalfInt::from_twice(twice);
        let j = bessel_j_half(nu, x).unwrap();
        let jet = bessel_j_half_jet(nu, x).unwrap();
        let (res, scale) = bessel_equation_residual(nu, x, &jet);
        println!("J_{nu:>4}({x}) = {j:+.15e}   residual {:.1e}", res.abs() / scale);
    }
    // integer orders are out of scope
    println!("{:?}", bessel_j_half(HalfInt::ONE, x));
}
