//! Residual and identity checks grouped into named suites.
//!
//! Every check reduces to a maximum residual compared against a tolerance.
//! Random inputs come from fixed seeds, so a report is a pure function of the
//! suite name and the tolerance override. Negative controls are phrased the
//! same way: the residual is `threshold / observed`, which must stay below one.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::assembly::{
    bispinor, bispinor_parts, grid_eval, lorentz_factor, translation_factor, Axis, GridSpec, GroupPoint, Param,
    SpinConfig,
};
use crate::dirac::{
    bar_product, dirac_residual, dirac_residual_fd, gamma_set, plane_wave_spinor, spinor_norm, u_amplitude,
    v_amplitude, FourMomentum, Sign, SpinIndex,
};
use crate::error::Error;
use crate::halfint::HalfInt;
use crate::hypersph::{z_assoc, z_prefactor, z_terms_with, EulerAngles, HypersphIndex};
use crate::radial::{
    bessel_ode_residual, f1_jet, f4_jet, full_system_residual, reduced_system_residual, resolve_scale, scale_report,
    RadialParams, RadialPoint, SignPair,
};
use crate::specfun::{bessel_j_half, bessel_j_half_jet, bessel_equation_residual, hyp2f1, hyp2f1_direct, Hyp2F1Params};
use crate::sum::ComplexSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Gamma,
    Dirac,
    Bessel,
    Hyp2f1,
    Radial,
    Hypersph,
    Assembly,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 7] = [
        Suite::Gamma,
        Suite::Dirac,
        Suite::Bessel,
        Suite::Hyp2f1,
        Suite::Radial,
        Suite::Hypersph,
        Suite::Assembly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gamma => "gamma",
            Suite::Dirac => "dirac",
            Suite::Bessel => "bessel",
            Suite::Hyp2f1 => "hyp2f1",
            Suite::Radial => "radial",
            Suite::Hypersph => "hypersph",
            Suite::Assembly => "assembly",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckResult {
    fn new(name: &str, cases: usize, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            cases,
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }

    /// `max_residual / tolerance`, with `0/0 = 0`.
    fn ratio(&self) -> f64 {
        if self.max_residual.is_nan() {
            f64::INFINITY
        } else if self.tolerance == 0.0 {
            if self.max_residual == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.max_residual / self.tolerance
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub suite: String,
    pub cases: usize,
    /// Residual and tolerance of the check closest to (or furthest past) its
    /// tolerance.
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub elapsed: Option<f64>,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    /// Replaces the tolerance of every residual check.
    pub tol: Option<f64>,
    pub timing: bool,
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> RunReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::INDIVIDUAL.to_vec(),
        s => vec![s],
    };
    for s in &suites {
        let mut part = run_checks(*s);
        if suite == Suite::All {
            for c in &mut part {
                c.name = format!("{}/{}", s.name(), c.name);
            }
        }
        checks.extend(part);
    }
    let controls_fixed = |c: &CheckResult| c.name.ends_with("control");
    if let Some(tol) = opts.tol {
        for c in checks.iter_mut().filter(|c| !controls_fixed(c)) {
            c.tolerance = tol;
            c.passed = c.max_residual <= tol;
        }
    }
    let worst = checks
        .iter()
        .max_by(|a, b| a.ratio().total_cmp(&b.ratio()))
        .expect("every suite has checks");
    RunReport {
        suite: suite.name().to_string(),
        cases: checks.iter().map(|c| c.cases).sum(),
        max_residual: worst.max_residual,
        tolerance: worst.tolerance,
        passed: checks.iter().all(|c| c.passed),
        elapsed: opts.timing.then(|| start.elapsed().as_secs_f64()),
        checks,
    }
}

fn run_checks(suite: Suite) -> Vec<CheckResult> {
    match suite {
        Suite::Gamma => gamma_checks(),
        Suite::Dirac => dirac_checks(),
        Suite::Bessel => bessel_checks(),
        Suite::Hyp2f1 => hyp2f1_checks(),
        Suite::Radial => radial_checks(),
        Suite::Hypersph => hypersph_checks(),
        Suite::Assembly => assembly_checks(),
        Suite::All => unreachable!(),
    }
}

/// Maximum that turns NaN into infinity, so a NaN residual always fails.
fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter()
        .map(|v| if v.is_nan() { f64::INFINITY } else { v })
        .fold(0.0, f64::max)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

fn random_momentum(r: &mut ChaCha8Rng, m: f64, max_ratio: f64) -> FourMomentum {
    // Uniform direction, magnitude up to max_ratio * m.
    let cos_t: f64 = r.gen_range(-1.0..=1.0);
    let phi: f64 = r.gen_range(0.0..2.0 * PI);
    let mag = m * max_ratio * r.gen::<f64>();
    let sin_t = (1.0 - cos_t * cos_t).sqrt();
    FourMomentum::on_shell(mag * sin_t * phi.cos(), mag * sin_t * phi.sin(), mag * cos_t, m)
        .expect("finite momentum")
}

const SPINS: [SpinIndex; 2] = [SpinIndex::One, SpinIndex::Two];

fn gamma_checks() -> Vec<CheckResult> {
    let g = gamma_set();
    let defect = worst((0..4).flat_map(|mu| (0..4).map(move |nu| (mu, nu))).map(|(mu, nu)| {
        g.anticommutator_defect(mu, nu).max_abs()
    }));
    vec![CheckResult::new("anticommutator", 16, defect, 0.0)]
}

fn dirac_checks() -> Vec<CheckResult> {
    let mut r = rng(0xD1AC);
    let momenta: Vec<FourMomentum> = (0..1000)
        .map(|_| {
            let m = r.gen_range(0.5..2.0);
            random_momentum(&mut r, m, 10.0)
        })
        .collect();

    let equation = worst(momenta.iter().flat_map(|p| {
        SPINS.iter().flat_map(move |&s| {
            [
                u_amplitude(s, p).map(|a| a.equation_residual(p)),
                v_amplitude(s, p).map(|a| a.equation_residual(p)),
            ]
            .map(|v| v.unwrap_or(f64::INFINITY))
        })
    }));

    let ortho = worst(momenta.iter().flat_map(|p| {
        let u = SPINS.map(|s| u_amplitude(s, p).expect("on shell").components);
        let v = SPINS.map(|s| v_amplitude(s, p).expect("on shell").components);
        let mut out = Vec::with_capacity(8);
        for i in 0..2 {
            for j in 0..2 {
                let delta = if i == j { 1.0 } else { 0.0 };
                out.push((bar_product(&u[i], &u[j]) - delta).norm());
                out.push((bar_product(&v[i], &v[j]) + delta).norm());
            }
        }
        out
    }));

    let xs: Vec<[f64; 4]> = spacetime_grid(4, -1.0, 1.0);
    let wave_momenta: Vec<FourMomentum> = momenta.iter().take(20).copied().collect();
    let analytic = worst(wave_momenta.iter().flat_map(|p| {
        let xs = &xs;
        [Sign::Plus, Sign::Minus].into_iter().flat_map(move |sign| {
            SPINS.iter().flat_map(move |&s| {
                xs.iter().map(move |x| {
                    let psi = plane_wave_spinor(sign, s, p, x);
                    let scale = (p.energy() + p.three_momentum_norm() + p.mass()) * spinor_norm(&psi);
                    spinor_norm(&dirac_residual(sign, s, p, x)) / scale
                })
            })
        })
    }));

    // Central differences carry an O(h² |p|³) truncation error, so the
    // momenta here stay within twice the mass.
    let mut r = rng(0xFD);
    let fd_momenta: Vec<FourMomentum> = (0..8).map(|_| random_momentum(&mut r, 1.0, 2.0)).collect();
    let fd = worst(fd_momenta.iter().flat_map(|p| {
        let xs = &xs;
        [Sign::Plus, Sign::Minus].into_iter().flat_map(move |sign| {
            SPINS
                .iter()
                .flat_map(move |&s| xs.iter().map(move |x| spinor_norm(&dirac_residual_fd(sign, s, p, x, 1e-4))))
        })
    }));

    let control_threshold = 1e-2;
    let off = [
        FourMomentum::off_shell(1.5, 0.0, 0.0, 0.75, 1.0),
        FourMomentum::off_shell(2.0, 0.3, -0.2, 0.1, 1.0),
    ]
    .map(|p| p.expect("positive mass"));
    let min_off = off
        .iter()
        .flat_map(|p| {
            let xs = &xs;
            SPINS.iter().flat_map(move |&s| {
                xs.iter().map(move |x| spinor_norm(&dirac_residual(Sign::Plus, s, p, x)))
            })
        })
        .fold(f64::INFINITY, f64::min);

    vec![
        CheckResult::new("amplitude_equation", 4 * momenta.len(), equation, 1e-10),
        CheckResult::new("orthonormality", 8 * momenta.len(), ortho, 1e-10),
        CheckResult::new("plane_wave_analytic", 4 * wave_momenta.len() * xs.len(), analytic, 1e-12),
        CheckResult::new("plane_wave_finite_difference", 4 * fd_momenta.len() * xs.len(), fd, 1e-6),
        CheckResult::new("off_shell_control", 2 * off.len() * xs.len(), control_threshold / min_off, 1.0)
            .with_detail(format!("smallest off-shell residual norm {min_off:.3e}, required above {control_threshold:.0e}")),
    ]
}

/// `n⁴` points with every coordinate on `n` evenly spaced values.
pub fn spacetime_grid(n: usize, lo: f64, hi: f64) -> Vec<[f64; 4]> {
    let v = |i: usize| lo + (hi - lo) * i as f64 / (n - 1) as f64;
    let mut out = Vec::with_capacity(n.pow(4));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    out.push([v(a), v(b), v(c), v(d)]);
                }
            }
        }
    }
    out
}

/// `J_ν(x) = √(2/πx) (P(1/x) sin x + Q(1/x) cos x)`; coefficients of `P` and
/// `Q` in ascending powers of `1/x`.
fn bessel_closed_form(twice_nu: i32) -> Option<(&'static [f64], &'static [f64])> {
    Some(match twice_nu {
        1 => (&[1.0], &[]),
        -1 => (&[], &[1.0]),
        3 => (&[0.0, 1.0], &[-1.0]),
        -3 => (&[-1.0], &[0.0, -1.0]),
        5 => (&[-1.0, 0.0, 3.0], &[0.0, -3.0]),
        -5 => (&[0.0, 3.0], &[-1.0, 0.0, 3.0]),
        7 => (&[0.0, -6.0, 0.0, 15.0], &[1.0, 0.0, -15.0]),
        -7 => (&[1.0, 0.0, -15.0], &[0.0, 6.0, 0.0, -15.0]),
        _ => return None,
    })
}

/// Closed-form value and the sum of its term magnitudes.
pub fn bessel_closed(nu: HalfInt, x: f64) -> Option<(f64, f64)> {
    let (p, q) = bessel_closed_form(nu.twice())?;
    let s = (2.0 / (PI * x)).sqrt();
    let (sn, cs) = x.sin_cos();
    let mut val = 0.0;
    let mut mag = 0.0;
    for (coefs, trig) in [(p, sn), (q, cs)] {
        for (k, c) in coefs.iter().enumerate() {
            let t = c * x.powi(-(k as i32)) * trig;
            val += t;
            mag += t.abs();
        }
    }
    Some((s * val, s * mag))
}

fn bessel_checks() -> Vec<CheckResult> {
    let orders: Vec<HalfInt> = [-7, -5, -3, -1, 1, 3, 5, 7].map(HalfInt::from_twice).to_vec();
    let xs = log_space(0.1, 50.0, 200);

    let seeds: Vec<f64> = orders
        .iter()
        .flat_map(|&nu| {
            xs.iter().map(move |&x| {
                let (closed, mag) = bessel_closed(nu, x).expect("tabulated order");
                match bessel_j_half(nu, x) {
                    Ok(v) => (v - closed).abs() / mag,
                    Err(_) => f64::INFINITY,
                }
            })
        })
        .collect();

    let ode: Vec<f64> = orders
        .iter()
        .flat_map(|&nu| {
            xs.iter().map(move |&x| match bessel_j_half_jet(nu, x) {
                Ok(jet) => {
                    let (res, scale) = bessel_equation_residual(nu, x, &jet);
                    res.abs() / scale
                }
                Err(_) => f64::INFINITY,
            })
        })
        .collect();

    vec![
        CheckResult::new("closed_form_vs_recurrence", seeds.len(), worst(seeds), 1e-12),
        CheckResult::new("ode_residual", ode.len(), worst(ode), 1e-8),
    ]
}

/// Terminating series summed from the last term down by Horner's rule, with
/// the sum of term magnitudes for scaling.
fn horner_terminating(p: &Hyp2F1Params) -> (Complex64, f64) {
    let jmax = p.termination_index().expect("terminating");
    let mut acc = Complex64::new(1.0, 0.0);
    for j in (0..jmax).rev() {
        let jf = j as f64;
        let ratio = (p.a + jf) * (p.b + jf) / ((p.c + jf) * (jf + 1.0));
        acc = Complex64::new(1.0, 0.0) + p.x * ratio * acc;
    }
    let mut term = 1.0;
    let mut mag = 1.0;
    for j in 0..jmax {
        let jf = j as f64;
        term *= ((p.a + jf) * (p.b + jf) / ((p.c + jf) * (jf + 1.0))).abs() * p.x.norm();
        mag += term;
    }
    (acc, mag)
}

/// Random terminating parameters: `a = -n`, `b`, `c` on a half-integer
/// lattice with `c` kept off the non-positive integers.
pub fn random_terminating(r: &mut ChaCha8Rng) -> Hyp2F1Params {
    let n = r.gen_range(0..=12) as f64;
    let b = r.gen_range(-12..=12) as f64 / 2.0 + r.gen_range(-0.25..0.25);
    let mut c = r.gen_range(-12..=16) as f64 / 2.0 + 0.25;
    if c == 0.0 {
        c = 0.75;
    }
    let x = Complex64::new(r.gen_range(-3.0..3.0), r.gen_range(-1.0..1.0));
    Hyp2F1Params::new(-n, b, c, x)
}

fn hyp2f1_checks() -> Vec<CheckResult> {
    let mut r = rng(0x2F1);
    let terminating: Vec<f64> = (0..100)
        .map(|_| {
            let p = random_terminating(&mut r);
            let (h, mag) = horner_terminating(&p);
            match hyp2f1(p) {
                Ok(v) => (v - h).norm() / mag,
                Err(_) => f64::INFINITY,
            }
        })
        .collect();

    // c F(a,b;c;x) - c F(a+1,b;c;x) + b x F(a+1,b+1;c+1;x) = 0
    let contiguity: Vec<f64> = (0..100)
        .map(|_| {
            let a = r.gen_range(-2.5..2.5);
            let b = r.gen_range(-2.5..2.5);
            let c = r.gen_range(0.5..4.0);
            let x = Complex64::from_polar(r.gen_range(0.0..0.9), r.gen_range(-PI..PI));
            let f = |a, b, c| hyp2f1(Hyp2F1Params::new(a, b, c, x));
            match (f(a, b, c), f(a + 1.0, b, c), f(a + 1.0, b + 1.0, c + 1.0)) {
                (Ok(f0), Ok(f1), Ok(f2)) => {
                    let terms = [c * f0, -c * f1, b * x * f2];
                    let sum: ComplexSum = terms.iter().copied().collect();
                    sum.total().norm() / terms.iter().map(|t| t.norm()).sum::<f64>()
                }
                _ => f64::INFINITY,
            }
        })
        .collect();

    // 2F1(1,1;2;x) = -ln(1-x)/x across the continuation region.
    let xs: Vec<f64> = log_space(1e-3, 400.0, 60).into_iter().map(|v| -v).chain([0.3, 0.6, 0.9]).collect();
    let log_form: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let expect = -(-x).ln_1p() / x;
            match hyp2f1(Hyp2F1Params::real(1.0, 1.0, 2.0, x)) {
                Ok(v) => (v - expect).norm() / expect.abs(),
                Err(_) => f64::INFINITY,
            }
        })
        .collect();

    vec![
        CheckResult::new("terminating_vs_horner", terminating.len(), worst(terminating), 1e-12),
        CheckResult::new("contiguity", contiguity.len(), worst(contiguity), 1e-10),
        CheckResult::new("logarithm_closed_form", log_form.len(), worst(log_form), 1e-13),
    ]
}

/// The radial sweep: degrees, products `κκ̇`, seeded constants and `z` values.
pub fn radial_sweep() -> Vec<(RadialParams, Vec<f64>)> {
    let mut r = rng(0xBE55);
    let zs = log_space(0.5, 20.0, 50);
    let mut out = Vec::new();
    for l2 in [1, 3, 5] {
        for kk in [0.25, 1.0, 4.0] {
            let kappa = r.gen_range(0.3..2.0);
            let c1 = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            let c2 = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            let rp = RadialParams::real(kappa, kk / kappa, c1, c2, HalfInt::from_twice(l2)).expect("valid radial parameters");
            out.push((rp, zs.clone()));
        }
    }
    out
}

fn radial_checks() -> Vec<CheckResult> {
    let sweep = radial_sweep();
    let mut ode = Vec::new();
    let mut first = Vec::new();
    let mut second = Vec::new();
    let mut full_pm = Vec::new();
    let mut coincide = Vec::new();
    let mut fd = Vec::new();
    let mut structure = Vec::new();
    for (rp, zs) in &sweep {
        let a = match resolve_scale(rp.kappa, rp.kappa_dot) {
            Ok(a) => a,
            Err(_) => {
                ode.push(f64::INFINITY);
                continue;
            }
        };
        for &z in zs {
            let pt = RadialPoint::new(z).expect("positive z");
            ode.push(bessel_ode_residual(rp, &pt, a).map_or(f64::INFINITY, |r| r.relative()));
            match reduced_system_residual(rp, &pt, a) {
                Ok((r1, r2)) => {
                    first.push(r1.relative());
                    second.push(r2.relative());
                }
                Err(_) => first.push(f64::INFINITY),
            }
            match full_system_residual(rp, &pt, a, SignPair::PlusMinus) {
                Ok(res) => full_pm.extend(res.iter().map(|r| r.relative())),
                Err(_) => full_pm.push(f64::INFINITY),
            }
            for signs in [SignPair::PlusMinus, SignPair::MinusPlus] {
                // Under f2 = ±f1, f3 = ∓f4: E1 = ±E2 and E3 = ∓E4.
                match full_system_residual(rp, &pt, a, signs) {
                    Ok(e) => {
                        let s = signs.upper();
                        let scale = e.iter().map(|r| r.scale).sum::<f64>();
                        coincide.push((e[0].value - s * e[1].value).norm() / scale);
                        coincide.push((e[2].value + s * e[3].value).norm() / scale);
                    }
                    Err(_) => coincide.push(f64::INFINITY),
                }
            }
            fd.push(radial_fd_defect(rp, z, a));
            structure.push(f4_structure_defect(rp, &pt, a));
        }
    }

    let mut check_z: Vec<f64> = log_space(0.5, 20.0, 50);
    check_z.dedup();
    let kk = Complex64::new(0.25, 0.0);
    let report = scale_report(kk, Complex64::new(1.0, 0.0), HalfInt::HALF, &check_z);
    let scale_check = match report {
        Ok(rep) => {
            let win = rep
                .candidates
                .iter()
                .find(|c| c.label == rep.winner)
                .expect("winner is a candidate");
            let detail = rep
                .candidates
                .iter()
                .map(|c| format!("{} = {}: max relative residual {:.3e}", c.label, c.scale, c.max_relative_residual))
                .collect::<Vec<_>>()
                .join("; ");
            CheckResult::new("scale_oracle", 2 * check_z.len(), win.max_relative_residual, 1e-8)
                .with_detail(format!("winner {}; {detail}", rep.winner))
        }
        Err(e) => CheckResult::new("scale_oracle", 0, f64::INFINITY, 1e-8).with_detail(e.to_string()),
    };

    vec![
        scale_check,
        CheckResult::new("bessel_form", ode.len(), worst(ode), 1e-8),
        CheckResult::new("reduced_first", first.len(), worst(first), 1e-8),
        CheckResult::new("reduced_second", second.len(), worst(second), 1e-8),
        CheckResult::new("full_system_plus_minus", full_pm.len(), worst(full_pm), 1e-8),
        CheckResult::new("equation_coincidence", coincide.len(), worst(coincide), 1e-12),
        CheckResult::new("finite_difference_derivatives", fd.len(), worst(fd), 1e-7),
        CheckResult::new("f4_bessel_structure", structure.len(), worst(structure), 1e-10),
    ]
}

/// Largest deviation of analytic `f1'`, `f1''` and `f4` from central
/// differences with step `1e-6 z`, relative to the function scale.
pub fn radial_fd_defect(rp: &RadialParams, z: f64, a: f64) -> f64 {
    let h = 1e-6 * z;
    let at = |z: f64| f1_jet(rp, &RadialPoint::new(z).expect("positive z"), a);
    let (Ok(c), Ok(p), Ok(m)) = (at(z), at(z + h), at(z - h)) else {
        return f64::INFINITY;
    };
    let scale = 1.0 + c.f.norm() + c.df.norm() * z;
    let d1 = (p.f - m.f) / (2.0 * h);
    let d2 = (p.df - m.df) / (2.0 * h);
    let lp1 = rp.l.to_f64() + 1.0;
    let f4_fd = ((lp1 / z) * c.f - d1) / (2.0 * rp.kappa_dot);
    let f4 = f4_jet(rp, &RadialPoint::new(z).expect("positive z"), a).map_or(Complex64::new(f64::NAN, 0.0), |j| j.f);
    worst([
        (d1 - c.df).norm() / scale,
        (d2 - c.d2f).norm() * z / scale,
        (f4_fd - f4).norm() * rp.kappa_dot.norm() / scale,
    ])
}

/// `f4` against `(a²/2κ̇) z (C1 J_{l+1}(az) - C2 J_{-l-1}(az))`.
pub fn f4_structure_defect(rp: &RadialParams, pt: &RadialPoint, a: f64) -> f64 {
    let z = pt.z();
    let x = a * z;
    let one = HalfInt::ONE;
    let (Ok(jp), Ok(jm), Ok(f4)) = (
        bessel_j_half(rp.l + one, x),
        bessel_j_half(-rp.l - one, x),
        f4_jet(rp, pt, a),
    ) else {
        return f64::INFINITY;
    };
    let k = a * a / (2.0 * rp.kappa_dot) * z;
    let t1 = k * rp.c1 * jp;
    let t2 = -k * rp.c2 * jm;
    (f4.f - t1 - t2).norm() / (t1.norm() + t2.norm())
}

/// Closed forms of the two spin-1/2 kernels.
pub fn z_half_closed(m: HalfInt, theta: f64, tau: f64) -> Complex64 {
    let t = (0.5 * theta).tan();
    let h = (0.5 * tau).tanh();
    let log_ratio = (t * t).ln_1p() / (t * t);
    let atanh_ratio = h.atanh() / h;
    let pre = (0.5 * theta).cos() * (0.5 * tau).cosh();
    if m == HalfInt::HALF {
        pre * (Complex64::new(0.0, t * h.sqrt() * log_ratio * atanh_ratio) + h.powf(-0.5))
    } else {
        pre * (Complex64::new(h.sqrt() * atanh_ratio, 0.0) - Complex64::new(0.0, 1.0 / (t * h.sqrt())))
    }
}

/// `(θ, τ)` pairs of the `n × n` open-domain grid.
pub fn angle_grid(n: usize) -> Vec<(f64, f64)> {
    let thetas: Vec<f64> = (1..=n).map(|i| PI * i as f64 / (n + 1) as f64).collect();
    let taus = log_space(0.05, 4.0, n);
    thetas
        .iter()
        .flat_map(|&th| taus.iter().map(move |&ta| (th, ta)))
        .collect()
}

fn all_indices(max_twice_l: i32) -> Vec<HypersphIndex> {
    (0..=max_twice_l)
        .flat_map(|l2| HypersphIndex::orders(HalfInt::from_twice(l2)))
        .collect()
}

fn hypersph_checks() -> Vec<CheckResult> {
    let grid = angle_grid(20);
    let half = [HalfInt::HALF, HalfInt::MINUS_HALF];

    let closed: Vec<f64> = half
        .iter()
        .flat_map(|&m| {
            let idx = HypersphIndex::new(HalfInt::HALF, m).expect("valid index");
            grid.iter().map(move |&(th, ta)| {
                let expect = z_half_closed(m, th, ta);
                z_assoc(idx, th, ta).map_or(f64::INFINITY, |v| (v - expect).norm() / expect.norm())
            })
        })
        .collect();

    // Direct series against the library route where both converge.
    let indices = all_indices(7);
    let defined: Vec<HypersphIndex> = indices.iter().copied().filter(|i| i.is_defined()).collect();
    let small: Vec<(f64, f64)> = grid
        .iter()
        .copied()
        .filter(|&(th, _)| (0.5 * th).tan().powi(2) < 0.6)
        .collect();
    let direct: Vec<f64> = defined
        .par_iter()
        .flat_map_iter(|&idx| {
            small.iter().map(move |&(th, ta)| {
                let lib = z_assoc(idx, th, ta);
                let dir = z_terms_with(idx, th, ta, hyp2f1_direct);
                match (lib, dir) {
                    (Ok(v), Ok(terms)) => {
                        let pre = z_prefactor(idx.l, th, ta);
                        let mag: f64 = terms.iter().map(|t| t.norm()).sum::<f64>() * pre;
                        let sum: ComplexSum = terms.into_iter().collect();
                        (v - pre * sum.total()).norm() / mag
                    }
                    _ => f64::INFINITY,
                }
            })
        })
        .collect();

    // Defined indices are finite everywhere; undefined ones fail with a pole.
    let mut bad = 0usize;
    let mut cases = 0usize;
    for &idx in &indices {
        for &(th, ta) in &grid {
            cases += 1;
            let ok = match z_assoc(idx, th, ta) {
                Ok(v) => idx.is_defined() && v.re.is_finite() && v.im.is_finite(),
                Err(Error::PoleInDenominator { .. }) => !idx.is_defined(),
                Err(_) => false,
            };
            bad += usize::from(!ok);
        }
    }

    let golden = Complex64::new(1.1729352093275557, 0.40650836666244223);
    let pinned = z_assoc(HypersphIndex::new(HalfInt::HALF, HalfInt::HALF).expect("valid"), PI / 2.0, 1.0)
        .map_or(f64::INFINITY, |v| (v - golden).norm() / golden.norm());

    vec![
        CheckResult::new("spin_half_closed_form", closed.len(), worst(closed), 1e-12),
        CheckResult::new("direct_series_cross_check", direct.len(), worst(direct), 1e-12),
        CheckResult::new("finite_or_pole", cases, bad as f64, 0.0).with_detail(format!(
            "{} of {} indices with l <= 7/2 are defined",
            defined.len(),
            indices.len()
        )),
        CheckResult::new("pinned_golden", 1, pinned, 1e-14),
    ]
}

/// Seeded spin-1/2 configurations and group points for the assembly checks.
pub fn assembly_samples(n: usize, seed: u64) -> Vec<(SpinConfig, GroupPoint)> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let m = r.gen_range(0.5..2.0);
            let p = random_momentum(&mut r, m, 10.0);
            let spin = SPINS[r.gen_range(0..2)];
            let kappa = r.gen_range(0.2..2.0);
            let kappa_dot = r.gen_range(0.2..2.0);
            let c1 = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            let c2 = Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
            let rp = RadialParams::real(kappa, kappa_dot, c1, c2, HalfInt::HALF).expect("valid radial parameters");
            let signs = if r.gen() { SignPair::PlusMinus } else { SignPair::MinusPlus };
            let cfg = SpinConfig::new(p, spin, rp, r.gen_range(0.2..10.0), signs).expect("valid config");
            let x = [(); 4].map(|_| r.gen_range(-5.0..5.0));
            let ang = EulerAngles::new(
                r.gen_range(-PI..PI),
                r.gen_range(-1.5..1.5),
                r.gen_range(0.05..PI - 0.05),
                r.gen_range(0.05..4.0),
            );
            (cfg, GroupPoint { x, ang })
        })
        .collect()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let s = a.norm().max(b.norm());
    if s == 0.0 {
        0.0
    } else {
        (a - b).norm() / s
    }
}

fn assembly_checks() -> Vec<CheckResult> {
    let samples = assembly_samples(1000, 0xA55E);

    let factorization = worst(samples.iter().flat_map(|(cfg, gp)| {
        let value = bispinor(cfg, gp);
        let t = translation_factor(cfg, &gp.x);
        let l = lorentz_factor(cfg, &gp.ang);
        match (value, l) {
            (Ok(v), Ok(l)) => v.to_array().iter().zip(t.iter().zip(l.iter())).map(|(v, (t, l))| rel(*v, t * l)).collect(),
            _ => vec![f64::INFINITY],
        }
    }));

    let flip = worst(samples.iter().map(|(cfg, gp)| match (bispinor(cfg, gp), bispinor(&cfg.flipped(), gp)) {
        (Ok(a), Ok(b)) => worst([
            (a.psi1 - b.psi1).norm(),
            (a.psi2 + b.psi2).norm(),
            (a.psi1_dot + b.psi1_dot).norm(),
            (a.psi2_dot - b.psi2_dot).norm(),
        ]),
        _ => f64::INFINITY,
    }));

    let modulus = worst(samples.iter().map(|(cfg, gp)| {
        let moved = GroupPoint { x: [0.0; 4], ..*gp };
        let mut eps0 = *gp;
        eps0.ang.eps = 0.0;
        let mut rotated = eps0;
        rotated.ang.phi += 1.3;
        match (bispinor(cfg, gp), bispinor(cfg, &moved), bispinor(cfg, &eps0), bispinor(cfg, &rotated)) {
            (Ok(a), Ok(b), Ok(c), Ok(d)) => worst((0..4).flat_map(|i| {
                let (a, b, c, d) = (a.to_array()[i], b.to_array()[i], c.to_array()[i], d.to_array()[i]);
                [
                    rel(Complex64::new(a.norm(), 0.0), Complex64::new(b.norm(), 0.0)),
                    rel(Complex64::new(c.norm(), 0.0), Complex64::new(d.norm(), 0.0)),
                ]
            })),
            _ => f64::INFINITY,
        }
    }));

    let (cfg, gp) = samples[0];
    let grid = GridSpec {
        base: gp,
        axes: vec![
            Axis::linspace(Param::Theta, 0.3, 2.8, 5),
            Axis::linspace(Param::Tau, 0.2, 3.0, 4),
            Axis::values(Param::X4, vec![-1.0, 0.0, 2.5]),
            Axis::linspace(Param::Phi, -1.0, 1.0, 5),
        ],
    };
    let grid_defect = match grid_eval(&cfg, &grid) {
        Ok(rows) => worst(rows.iter().map(|row| match bispinor_parts(&cfg, &row.point) {
            Ok(parts) if parts == row.parts => 0.0,
            _ => 1.0,
        })),
        Err(_) => f64::INFINITY,
    };

    vec![
        CheckResult::new("factorization", 4 * samples.len(), factorization, 1e-14),
        CheckResult::new("sign_pair_flip", samples.len(), flip, 0.0),
        CheckResult::new("phase_moduli", 8 * samples.len(), modulus, 1e-14),
        CheckResult::new("grid_pointwise", grid.point_count() as usize, grid_defect, 0.0),
    ]
}
