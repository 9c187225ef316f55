//! Evaluate the bispinor over a small grid in parallel.

use poincare_wave::assembly::{grid_eval, Axis, GridSpec, GroupPoint, Param, SpinConfig};
use poincare_wave::dirac::{FourMomentum, SpinIndex};
use poincare_wave::hypersph::EulerAngles;
use poincare_wave::radial::{RadialParams, SignPair};
use poincare_wave::{ComplexScalar, HalfInt};

fn main() {
    let p = FourMomentum::on_shell(0.0, 0.0, 0.75, 1.0).unwrap();
    let rp = RadialParams::real(0.5, 0.5, ComplexScalar::new(1.0, 0.0), ComplexScalar::new(0.0, 0.0), HalfInt::HALF)
        .unwrap();
    let cfg = SpinConfig::new(p, SpinIndex::One, rp, 1.0, SignPair::PlusMinus).unwrap();

    let grid = GridSpec {
        base: GroupPoint { x: [0.0; 4], ang: EulerAngles::new(0.4, 0.2, 1.0, 1.0) },
        axes: vec![Axis::linspace(Param::X4, 0.0, 1.0, 3), Axis::linspace(Param::Theta, 0.5, 2.5, 3)],
    };
    for row in grid_eval(&cfg, &grid).unwrap() {
        let psi = row.parts.value.to_array();
        println!(
            "x4 {:.2} theta {:.2}  psi1 {:.5}  psi3 {:.5}",
            row.point.x[3], row.point.ang.theta, psi[0], psi[2]
        );
    }
}
