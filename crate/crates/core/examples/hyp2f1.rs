//! Gauss hypergeometric series: terminating, convergent, and the error cases.

use poincare_wave::specfun::{hyp2f1, Hyp2F1Params};
use poincare_wave::ComplexScalar;

fn main() {
    let cases = [
        Hyp2F1Params::real(-1.0, 2.0, 3.0, 0.5),
        Hyp2F1Params::real(1.0, 1.0, 2.0, 0.5),
        // polynomial, so |x| > 1 is fine
        Hyp2F1Params::new(-6.0, 2.5, 1.5, ComplexScalar::new(-3.0, 0.5)),
        Hyp2F1Params::real(0.5, 1.0, 2.0, 1.5),
        Hyp2F1Params::real(1.0, 1.0, -2.0, 0.3),
    ];
    for p in cases {
        match hyp2f1(p) {
            Ok(v) => println!("2F1({}, {}; {}; {}) = {v}", p.a, p.b, p.c, p.x),
            Err(e) => println!("2F1({}, {}; {}; {}) -> {e}", p.a, p.b, p.c, p.x),
        }
    }
    println!("2 ln 2 = {}", 2.0 * 2f64.ln());
}
