//! Radial functions of the spin-1/2 Lorentz factor.
//!
//! With `f2 = ±f1` and `f3 = ∓f4`, the four first-order radial equations
//! collapse to
//!
//! ```text
//! f4' + (l̇/z) f4 - 2κ f1 = 0
//! f1' - ((l+1)/z) f1 + 2κ̇ f4 = 0
//! ```
//!
//! and eliminating `f4` (at `l = l̇`) gives
//!
//! ```text
//! z² f1'' - z f1' - (l² - 1 - 4κκ̇ z²) f1 = 0.
//! ```
//!
//! Its solutions are `f1 = C1 a z J_l(a z) + C2 a z J_{-l}(a z)` with argument
//! scale `a = 2√(κκ̇)`; the scale `√(κκ̇)` leaves a residual `3κκ̇ z² f1`.
//! [`scale_report`] measures both candidates and [`resolve_scale`] returns the
//! one the equation accepts. `f4` is the combination that satisfies the second
//! reduced equation identically, `f4 = ((l+1)/z f1 - f1') / (2κ̇)`, which works
//! out to `(a²/2κ̇) z (C1 J_{l+1}(az) - C2 J_{-l-1}(az))`.
//!
//! The reduction holds for the sign pair `f2 = +f1, f3 = -f4`. With the
//! opposite pair the four equations still coincide pairwise, but they reduce
//! to a different system that this family does not solve.

use num_complex::Complex64;
use serde::Serialize;

use crate::dirac::pauli;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::specfun::bessel_j_half_jet;

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaSet {
    pub lambda: [Matrix2; 3],
    pub lambda_dot: [Matrix2; 3],
    pub c: f64,
    pub c_dot: f64,
}

/// `Λi = (c/2) σi`, `Λ*i = (ċ/2) σi`.
pub fn lambda_set(c: f64, c_dot: f64) -> LambdaSet {
    let s = pauli();
    let scaled = |f: f64| -> [Matrix2; 3] {
        std::array::from_fn(|i| s[i + 1].map(|row| row.map(|v| v * (0.5 * f))))
    };
    LambdaSet {
        lambda: scaled(c),
        lambda_dot: scaled(c_dot),
        c,
        c_dot,
    }
}

/// Which of the identifications `(f2, f3) = (±f1, ∓f4)` is imposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SignPair {
    /// `f2 = +f1`, `f3 = -f4`.
    #[serde(rename = "+-")]
    PlusMinus,
    /// `f2 = -f1`, `f3 = +f4`.
    #[serde(rename = "-+")]
    MinusPlus,
}

impl SignPair {
    /// `+1` for [`SignPair::PlusMinus`], `-1` otherwise.
    pub fn upper(self) -> f64 {
        match self {
            SignPair::PlusMinus => 1.0,
            SignPair::MinusPlus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            SignPair::PlusMinus => SignPair::MinusPlus,
            SignPair::MinusPlus => SignPair::PlusMinus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialParams {
    pub kappa: Complex64,
    pub kappa_dot: Complex64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub l: HalfInt,
    pub l_dot: HalfInt,
}

impl RadialParams {
    pub fn new(
        kappa: Complex64,
        kappa_dot: Complex64,
        c1: Complex64,
        c2: Complex64,
        l: HalfInt,
        l_dot: HalfInt,
    ) -> Result<Self> {
        for (name, v) in [("l", l), ("l_dot", l_dot)] {
            if !(v.is_half_odd() && v > HalfInt::ZERO) {
                return Err(Error::Index(format!("{name} = {v} must be one of 1/2, 3/2, 5/2, ...")));
            }
        }
        if kappa * kappa_dot == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter("kappa * kappa_dot must be non-zero".into()));
        }
        Ok(Self {
            kappa,
            kappa_dot,
            c1,
            c2,
            l,
            l_dot,
        })
    }

    /// Real `κ`, `κ̇` and `l = l̇`.
    pub fn real(kappa: f64, kappa_dot: f64, c1: Complex64, c2: Complex64, l: HalfInt) -> Result<Self> {
        Self::new(
            Complex64::new(kappa, 0.0),
            Complex64::new(kappa_dot, 0.0),
            c1,
            c2,
            l,
            l,
        )
    }

    pub fn kappa_product(&self) -> Complex64 {
        self.kappa * self.kappa_dot
    }

    fn require_equal_degrees(&self) -> Result<()> {
        if self.l == self.l_dot {
            Ok(())
        } else {
            Err(Error::Index(format!(
                "the Bessel-form solutions need l = l_dot, got {} and {}",
                self.l, self.l_dot
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialPoint {
    z: f64,
}

impl RadialPoint {
    pub fn new(z: f64) -> Result<Self> {
        if z > 0.0 && z.is_finite() {
            Ok(Self { z })
        } else {
            Err(Error::Domain {
                param: "z",
                value: z,
                domain: "(0, inf)",
            })
        }
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// A function value with its first two derivatives in `z`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub f: Complex64,
    pub df: Complex64,
    pub d2f: Complex64,
}

impl Jet {
    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            f: self.f * s,
            df: self.df * s,
            d2f: self.d2f * s,
        }
    }
}

/// Left-hand side of an equation together with the sum of the moduli of its
/// terms, which serves as the scale for a relative residual.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Residual {
    pub value: Complex64,
    pub scale: f64,
}

impl Residual {
    fn from_terms(terms: &[Complex64]) -> Self {
        let value = crate::sum::ComplexSum::from_iter(terms.iter().copied()).total();
        let scale = terms.iter().map(|t| t.norm()).sum();
        Self { value, scale }
    }

    /// `|value| / scale`, zero when every term vanishes.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.value.norm()
        } else {
            self.value.norm() / self.scale
        }
    }
}

/// The argument scale `a = 2√(κκ̇)` under which `z J_{±l}(az)` solves the
/// second-order radial equation.
pub fn resolve_scale(kappa: Complex64, kappa_dot: Complex64) -> Result<f64> {
    let prod = kappa * kappa_dot;
    if !(prod.re > 0.0) || prod.im.abs() > 1e-14 * prod.re || !prod.re.is_finite() {
        return Err(Error::NonPositiveProduct(prod));
    }
    Ok(2.0 * prod.re.sqrt())
}

/// `C1 a z J_l(az) + C2 a z J_{-l}(az)` and its derivatives.
pub fn f1_jet(rp: &RadialParams, pt: &RadialPoint, a: f64) -> Result<Jet> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::NonPositiveArgument(a));
    }
    let z = pt.z;
    let x = a * z;
    let mut jet = Jet::default();
    for (coef, order) in [(rp.c1, rp.l), (rp.c2, -rp.l)] {
        if coef == Complex64::new(0.0, 0.0) {
            continue;
        }
        let j = bessel_j_half_jet(order, x)?;
        // g = a z J(az): g' = a J + a² z J', g'' = 2a² J' + a³ z J''
        jet.f += coef * (a * z * j.value);
        jet.df += coef * (a * j.value + a * a * z * j.d1);
        jet.d2f += coef * (2.0 * a * a * j.d1 + a * a * a * z * j.d2);
    }
    Ok(jet)
}

pub fn f1_solution(rp: &RadialParams, pt: &RadialPoint, a: f64) -> Result<Complex64> {
    Ok(f1_jet(rp, pt, a)?.f)
}

/// `f4 = ((l+1)/z f1 - f1') / (2κ̇)` with value and first derivative.
pub fn f4_jet(rp: &RadialParams, pt: &RadialPoint, a: f64) -> Result<Jet> {
    let f1 = f1_jet(rp, pt, a)?;
    Ok(f4_from_f1_jet(&f1, rp.l, rp.kappa_dot, pt.z))
}

/// `f4` built from any `f1` jet. The second derivative is not available and
/// is left at zero.
pub fn f4_from_f1_jet(f1: &Jet, l: HalfInt, kappa_dot: Complex64, z: f64) -> Jet {
    let lp1 = l.to_f64() + 1.0;
    let inv = 1.0 / (2.0 * kappa_dot);
    Jet {
        f: inv * (lp1 / z * f1.f - f1.df),
        df: inv * (-lp1 / (z * z) * f1.f + lp1 / z * f1.df - f1.d2f),
        d2f: Complex64::new(0.0, 0.0),
    }
}

pub fn f4_from_f1(rp: &RadialParams, pt: &RadialPoint, a: f64) -> Result<Complex64> {
    Ok(f4_jet(rp, pt, a)?.f)
}

/// `z² f'' - z f' - (l² - 1 - 4κκ̇ z²) f` for an arbitrary jet.
pub fn bessel_form_residual(f: &Jet, z: f64, l: HalfInt, kappa_product: Complex64) -> Residual {
    let l2m1 = l.to_f64().powi(2) - 1.0;
    Residual::from_terms(&[
        z * z * f.d2f,
        -z * f.df,
        -l2m1 * f.f,
        4.0 * kappa_product * z * z * f.f,
    ])
}

pub fn bessel_ode_residual(rp: &RadialParams, pt: &RadialPoint, a: f64) -> Result<Residual> {
    let f1 = f1_jet(rp, pt, a)?;
    Ok(bessel_form_residual(&f1, pt.z, rp.l, rp.kappa_product()))
}

/// The reduced pair for arbitrary `f1`, `f4` jets.
pub fn reduced_residual_from(f1: &Jet, f4: &Jet, z: f64, rp: &RadialParams) -> (Residual, Residual) {
    let (l, l_dot) = (rp.l.to_f64(), rp.l_dot.to_f64());
    let first = Residual::from_terms(&[f4.df, l_dot / z * f4.f, -2.0 * rp.kappa * f1.f]);
    let second = Residual::from_terms(&[f1.df, -(l + 1.0) / z * f1.f, 2.0 * rp.kappa_dot * f4.f]);
    (first, second)
}

pub fn reduced_system_residual(
    rp: &RadialParams,
    pt: &RadialPoint,
    a: f64,
) -> Result<(Residual, Residual)> {
    rp.require_equal_degrees()?;
    let f1 = f1_jet(rp, pt, a)?;
    let f4 = f4_from_f1_jet(&f1, rp.l, rp.kappa_dot, pt.z);
    Ok(reduced_residual_from(&f1, &f4, pt.z, rp))
}

/// The four first-order equations for arbitrary `f1 … f4` jets.
pub fn full_residual_from(f: [&Jet; 4], z: f64, rp: &RadialParams) -> [Residual; 4] {
    let [f1, f2, f3, f4] = f;
    let (l, l_dot) = (rp.l.to_f64(), rp.l_dot.to_f64());
    let (k, kd) = (rp.kappa, rp.kappa_dot);
    let cd = 2.0 * (l_dot + 0.5) / z;
    let c = 2.0 * (l + 0.5) / z;
    [
        Residual::from_terms(&[-2.0 * f3.df, f3.f / z, cd * f4.f, -4.0 * k * f1.f]),
        Residual::from_terms(&[2.0 * f4.df, -f4.f / z, -cd * f3.f, -4.0 * k * f2.f]),
        Residual::from_terms(&[2.0 * f1.df, -f1.f / z, -c * f2.f, -4.0 * kd * f3.f]),
        Residual::from_terms(&[-2.0 * f2.df, f2.f / z, c * f1.f, -4.0 * kd * f4.f]),
    ]
}

/// The four first-order equations with `f2 = ±f1`, `f3 = ∓f4` and the
/// Bessel-form `f1`, `f4`.
pub fn full_system_residual(
    rp: &RadialParams,
    pt: &RadialPoint,
    a: f64,
    signs: SignPair,
) -> Result<[Residual; 4]> {
    rp.require_equal_degrees()?;
    let f1 = f1_jet(rp, pt, a)?;
    let f4 = f4_from_f1_jet(&f1, rp.l, rp.kappa_dot, pt.z);
    let s = signs.upper();
    let f2 = f1.scale(s);
    let f3 = f4.scale(-s);
    Ok(full_residual_from([&f1, &f2, &f3, &f4], pt.z, rp))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleCandidate {
    pub label: &'static str,
    pub scale: f64,
    pub max_relative_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleReport {
    pub kappa_product: f64,
    pub candidates: Vec<ScaleCandidate>,
    /// Label of the candidate with the smallest residual.
    pub winner: &'static str,
}

/// Residual of the second-order equation for `f1 = z J_l(az)` under both
/// candidate scales, maximised over the sample points.
pub fn scale_report(kappa: Complex64, kappa_dot: Complex64, l: HalfInt, zs: &[f64]) -> Result<ScaleReport> {
    let base = resolve_scale(kappa, kappa_dot)? / 2.0;
    let rp = RadialParams::new(
        kappa,
        kappa_dot,
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
        l,
        l,
    )?;
    let mut candidates = Vec::new();
    for (label, scale) in [("sqrt(kk)", base), ("2*sqrt(kk)", 2.0 * base)] {
        let mut worst: f64 = 0.0;
        for &z in zs {
            let r = bessel_ode_residual(&rp, &RadialPoint::new(z)?, scale)?;
            worst = worst.max(r.relative());
        }
        candidates.push(ScaleCandidate {
            label,
            scale,
            max_relative_residual: worst,
        });
    }
    let winner = candidates
        .iter()
        .min_by(|a, b| a.max_relative_residual.total_cmp(&b.max_relative_residual))
        .map(|c| c.label)
        .unwrap_or("none");
    Ok(ScaleReport {
        kappa_product: (kappa * kappa_dot).re,
        candidates,
        winner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const C0: Complex64 = Complex64::new(0.0, 0.0);
    const C1: Complex64 = Complex64::new(1.0, 0.0);

    fn params(c1: Complex64, c2: Complex64, l2: i32, k: f64, kd: f64) -> RadialParams {
        RadialParams::real(k, kd, c1, c2, HalfInt::from_twice(l2)).unwrap()
    }

    #[test]
    fn lambda_examples() {
        let s = pauli();
        let set = lambda_set(2.0, 2.0);
        for i in 0..3 {
            assert_eq!(set.lambda[i], s[i + 1]);
            assert_eq!(set.lambda_dot[i], s[i + 1]);
        }
        let zero = lambda_set(0.0, 0.0);
        assert!(zero.lambda.iter().chain(&zero.lambda_dot).flatten().flatten().all(|v| v.norm() == 0.0));
        let mixed = lambda_set(1.0, 2.0);
        assert_eq!(mixed.lambda[2], [[C1 * 0.5, C0], [C0, -C1 * 0.5]]);
        assert_eq!(mixed.lambda_dot[2], [[C1, C0], [C0, -C1]]);
    }

    #[test]
    fn f1_examples() {
        let pt = RadialPoint::new(PI / 2.0).unwrap();
        assert_eq!(f1_solution(&params(C0, C0, 1, 0.5, 0.5), &pt, 1.0).unwrap(), C0);
        let v = f1_solution(&params(C1, C0, 1, 0.5, 0.5), &pt, 1.0).unwrap();
        assert!((v - C1).norm() < 1e-15, "{v}");
        let v = f1_solution(&params(C0, C1, 1, 0.5, 0.5), &pt, 1.0).unwrap();
        assert!(v.norm() < 1e-15, "{v}");
    }

    #[test]
    fn resolve_scale_examples() {
        let c = |v: f64| Complex64::new(v, 0.0);
        assert_eq!(resolve_scale(c(0.5), c(0.5)).unwrap(), 1.0);
        assert_eq!(resolve_scale(c(1.0), c(1.0)).unwrap(), 2.0);
        let a = resolve_scale(c(0.3), c(1.7)).unwrap();
        let b = resolve_scale(c(1.2), c(1.7)).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-15);
        assert!(matches!(resolve_scale(c(-1.0), c(1.0)), Err(Error::NonPositiveProduct(_))));
        assert!(resolve_scale(Complex64::new(0.0, 1.0), c(1.0)).is_err());
    }

    #[test]
    fn non_solution_residual() {
        // f = z², l = 1/2: residual = (3/4 + 4κκ̇z²) z².
        let z = 1.7;
        let f = Jet {
            f: C1 * (z * z),
            df: C1 * (2.0 * z),
            d2f: C1 * 2.0,
        };
        let kk = Complex64::new(0.25, 0.0);
        let r = bessel_form_residual(&f, z, HalfInt::HALF, kk);
        let expect = (0.75 + 4.0 * 0.25 * z * z) * z * z;
        assert!((r.value - expect).norm() < 1e-13);
    }

    #[test]
    fn zero_family_has_zero_residuals() {
        let rp = params(C0, C0, 1, 0.5, 0.5);
        let pt = RadialPoint::new(2.0).unwrap();
        assert_eq!(bessel_ode_residual(&rp, &pt, 1.0).unwrap().value, C0);
        assert_eq!(f4_from_f1(&rp, &pt, 1.0).unwrap(), C0);
    }

    #[test]
    fn second_reduced_equation_holds_for_any_scale() {
        let rp = params(Complex64::new(0.3, -1.2), Complex64::new(0.7, 0.1), 3, 0.4, 1.3);
        let pt = RadialPoint::new(2.5).unwrap();
        for a in [0.3, 1.0, 2.7] {
            let (_, second) = reduced_system_residual(&rp, &pt, a).unwrap();
            assert!(second.relative() < 1e-15, "{a}: {}", second.relative());
        }
    }

    #[test]
    fn unequal_degrees_rejected() {
        let rp = RadialParams::new(C1, C1, C1, C0, HalfInt::HALF, HalfInt::from_twice(3)).unwrap();
        let pt = RadialPoint::new(1.0).unwrap();
        assert!(reduced_system_residual(&rp, &pt, 2.0).is_err());
        assert!(RadialParams::real(1.0, 1.0, C1, C0, HalfInt::ONE).is_err());
        assert!(RadialPoint::new(0.0).is_err());
    }
}
