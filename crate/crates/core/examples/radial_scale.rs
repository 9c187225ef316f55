//! Which Bessel scale solves the radial system, and the residuals it leaves.

use poincare_wave::radial::{full_system_residual, resolve_scale, scale_report, RadialParams, RadialPoint, SignPair};
use poincare_wave::{ComplexScalar, HalfInt};

fn main() {
    let k = ComplexScalar::new(0.5, 0.0);
    let zs: Vec<f64> = (1..=40).map(|i| 0.5 * i as f64).collect();
    let report = scale_report(k, k, HalfInt::HALF, &zs).unwrap();
    for c in &report.candidates {
        println!("{:<11} a = {:.4}  max residual {:.2e}", c.label, c.scale, c.max_relative_residual);
    }
    println!("winner: {}", report.winner);

    let rp = RadialParams::real(0.8, 1.1, ComplexScalar::new(1.0, 0.0), ComplexScalar::new(0.2, -0.5), HalfInt::from_twice(3))
        .unwrap();
    let a = resolve_scale(rp.kappa, rp.kappa_dot).unwrap();
    let pt = RadialPoint::new(3.0).unwrap();
    for signs in [SignPair::PlusMinus, SignPair::MinusPlus] {
        let res = full_system_residual(&rp, &pt, a, signs).unwrap();
        let r: Vec<String> = res.iter().map(|r| format!("{:.1e}", r.relative())).collect();
        println!("{signs:?}: {}", r.join(" "));
    }
}
