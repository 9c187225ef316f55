//! The kernel Z on a small (theta, tau) grid and the associated functions.

use std::f64::consts::PI;

use poincare_wave::hypersph::{m_assoc, m_assoc_dotted, z_assoc, EulerAngles, HypersphIndex};
use poincare_wave::HalfInt;

fn main() {
    let idx = HypersphIndex::new(HalfInt::HALF, HalfInt::HALF).unwrap();
    println!("Z(pi/2, 1) = {}", z_assoc(idx, PI / 2.0, 1.0).unwrap());

    for theta in [0.5, 1.5, 2.5] {
        let row: Vec<String> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&tau| format!("{:.5}", z_assoc(idx, theta, tau).unwrap()))
            .collect();
        println!("theta {theta}: {}", row.join("  "));
    }

    let ang = EulerAngles::new(0.4, 0.2, PI / 2.0, 1.0);
    println!("M   = {}", m_assoc(idx, &ang).unwrap());
    println!("M.  = {}", m_assoc_dotted(idx, &ang).unwrap());

    // which orders have a finite kernel
    for twice_l in 0..=7 {
        let l = HalfInt::from_twice(twice_l);
        let ok: Vec<String> = HypersphIndex::orders(l).filter(|i| i.is_defined()).map(|i| i.m.to_string()).collect();
        println!("l = {l}: m in [{}]", ok.join(", "));
    }
}
