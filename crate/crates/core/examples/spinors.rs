//! Dirac amplitudes u and v for a boosted electron, with the usual checks.

use poincare_wave::dirac::{
    amplitude_components, bar_product, dirac_residual, gamma_set, spinor_norm, AmplitudeKind, FourMomentum, Sign,
    SpinIndex,
};

fn main() {
    let g = gamma_set();
    let worst = (0..4)
        .flat_map(|mu| (0..4).map(move |nu| (mu, nu)))
        .map(|(mu, nu)| g.anticommutator_defect(mu, nu).max_abs())
        .fold(0.0, f64::max);
    println!("anticommutator defect {worst}");

    let p = FourMomentum::on_shell(0.3, -0.4, 0.75, 1.0).unwrap();
    println!("E = {}", p.energy());
    for kind in [AmplitudeKind::U, AmplitudeKind::V] {
        for r in [SpinIndex::One, SpinIndex::Two] {
            let s = amplitude_components(kind, r, &p);
            let c: Vec<String> = s.iter().map(|z| format!("{z:.4}")).collect();
            println!("{kind:?}{}: [{}]  bar norm {:+.3}", r.number(), c.join(", "), bar_product(&s, &s).re);
        }
    }

    let x = [0.1, 0.2, -0.3, 1.5];
    let res = dirac_residual(Sign::Plus, SpinIndex::One, &p, &x);
    println!("plane wave residual {:.1e}", spinor_norm(&res));
}
