//! Associated hyperspherical functions on the Lorentz group.
//!
//! The kernel is
//!
//! ```text
//! Z^l_m(θ, τ) = cos^{2l}(θ/2) cosh^{2l}(τ/2)
//!     Σ_{k=-l}^{l} i^{m-k} tan^{m-k}(θ/2) tanh^{-k}(τ/2)
//!         2F1(m-l+1, 1-l-k; m-k+1; -tan²(θ/2))
//!         2F1(1-l,   1-l-k; 1-k;   tanh²(τ/2))
//! ```
//!
//! with `k` stepping by one from `-l`. Since `m ≡ k (mod 1)` the phase
//! `i^{m-k}` and the power of `tan` have integer exponents; `tanh^{-k}` is a
//! principal real power of a positive base on the open domain.
//!
//! For some indices the first factor's lower parameter reaches a non-positive
//! integer before the series terminates (for half-integer `l` this happens
//! when `m <= l - 2`), and the formula has no finite value there. Those indices
//! report [`Error::PoleInDenominator`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::specfun::{hyp2f1, Hyp2F1Params};
use crate::sum::ComplexSum;

/// Six Lorentz-group parameters. The last two are fixed at zero for every
/// function evaluated here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerAngles {
    pub phi: f64,
    pub eps: f64,
    pub theta: f64,
    pub tau: f64,
    pub phi2: f64,
    pub eps2: f64,
}

impl EulerAngles {
    pub fn new(phi: f64, eps: f64, theta: f64, tau: f64) -> Self {
        Self {
            phi,
            eps,
            theta,
            tau,
            phi2: 0.0,
            eps2: 0.0,
        }
    }

    /// `φ^c = φ - iε`.
    pub fn phi_complex(&self) -> Complex64 {
        Complex64::new(self.phi, -self.eps)
    }

    /// `θ^c = θ - iτ`.
    pub fn theta_complex(&self) -> Complex64 {
        Complex64::new(self.theta, -self.tau)
    }

    pub fn validate(&self) -> Result<()> {
        check_open_domain(self.theta, self.tau)?;
        for (param, value) in [("phi", self.phi), ("eps", self.eps)] {
            if !value.is_finite() {
                return Err(Error::Domain {
                    param,
                    value,
                    domain: "finite reals",
                });
            }
        }
        for (param, value) in [("phi2", self.phi2), ("eps2", self.eps2)] {
            if value != 0.0 {
                return Err(Error::Domain {
                    param,
                    value,
                    domain: "{0}",
                });
            }
        }
        Ok(())
    }
}

pub fn check_open_domain(theta: f64, tau: f64) -> Result<()> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain {
            param: "theta",
            value: theta,
            domain: "(0, pi)",
        });
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain {
            param: "tau",
            value: tau,
            domain: "(0, inf)",
        });
    }
    Ok(())
}

/// Degree `l` and order `m` of a hyperspherical function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HypersphIndex {
    pub l: HalfInt,
    pub m: HalfInt,
}

impl HypersphIndex {
    pub fn new(l: HalfInt, m: HalfInt) -> Result<Self> {
        if l < HalfInt::ZERO {
            return Err(Error::Index(format!("l = {l} must be non-negative")));
        }
        if !m.congruent(l) {
            return Err(Error::Index(format!("m = {m} must differ from l = {l} by an integer")));
        }
        if m.abs() > l {
            return Err(Error::Index(format!("|m| = {} exceeds l = {l}", m.abs())));
        }
        Ok(Self { l, m })
    }

    /// All admissible orders for degree `l`, ascending.
    pub fn orders(l: HalfInt) -> impl Iterator<Item = HypersphIndex> {
        (-l).steps_to(l).map(move |m| HypersphIndex { l, m })
    }

    /// The summation range `k = -l, …, l`.
    pub fn k_values(&self) -> impl Iterator<Item = HalfInt> {
        (-self.l).steps_to(self.l)
    }

    /// Hypergeometric parameters of the two factors in the `k`-th term.
    pub fn factor_params(&self, k: HalfInt, t2: f64, h2: f64) -> (Hyp2F1Params, Hyp2F1Params) {
        let (l, m, k) = (self.l.to_f64(), self.m.to_f64(), k.to_f64());
        (
            Hyp2F1Params::real(m - l + 1.0, 1.0 - l - k, m - k + 1.0, -t2),
            Hyp2F1Params::real(1.0 - l, 1.0 - l - k, 1.0 - k, h2),
        )
    }

    /// Whether the formula is finite for this index, independent of angles.
    pub fn is_defined(&self) -> bool {
        self.k_values().all(|k| {
            let (first, second) = self.factor_params(k, 0.25, 0.25);
            first.check_admissible().is_ok() && second.check_admissible().is_ok()
        })
    }
}

/// `i^n` for integer `n`, exactly.
pub fn i_pow(n: i32) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The `2l + 1` summands of `Z^l_m` in order `k = -l, …, l`, without the
/// `cos^{2l} cosh^{2l}` prefactor.
pub fn z_terms(idx: HypersphIndex, theta: f64, tau: f64) -> Result<Vec<Complex64>> {
    z_terms_with(idx, theta, tau, hyp2f1)
}

/// [`z_terms`] with a caller-supplied evaluator for the hypergeometric factors.
pub fn z_terms_with<F>(idx: HypersphIndex, theta: f64, tau: f64, eval: F) -> Result<Vec<Complex64>>
where
    F: Fn(Hyp2F1Params) -> Result<Complex64>,
{
    check_open_domain(theta, tau)?;
    let t = (0.5 * theta).tan();
    let h = (0.5 * tau).tanh();
    let (t2, h2) = (t * t, h * h);
    idx.k_values()
        .map(|k| {
            let n = (idx.m - k).as_int().expect("m and k are congruent");
            let (first, second) = idx.factor_params(k, t2, h2);
            let f1 = eval(first)?;
            let f2 = eval(second)?;
            let power = t.powi(n) * h.powf(-k.to_f64());
            Ok(i_pow(n) * power * f1 * f2)
        })
        .collect()
}

/// `cos^{2l}(θ/2) cosh^{2l}(τ/2)`.
pub fn z_prefactor(l: HalfInt, theta: f64, tau: f64) -> f64 {
    let two_l = l.twice();
    (0.5 * theta).cos().powi(two_l) * (0.5 * tau).cosh().powi(two_l)
}

/// `Z^l_m(θ, τ)`.
pub fn z_assoc(idx: HypersphIndex, theta: f64, tau: f64) -> Result<Complex64> {
    let terms = z_terms(idx, theta, tau)?;
    let sum: ComplexSum = terms.into_iter().collect();
    Ok(z_prefactor(idx.l, theta, tau) * sum.total())
}

/// `e^{-m(ε + iφ)}`.
pub fn undotted_phase(m: HalfInt, ang: &EulerAngles) -> Complex64 {
    (-m.to_f64() * Complex64::new(ang.eps, ang.phi)).exp()
}

/// `e^{-m(ε - iφ)}`.
pub fn dotted_phase(m: HalfInt, ang: &EulerAngles) -> Complex64 {
    (-m.to_f64() * Complex64::new(ang.eps, -ang.phi)).exp()
}

/// `𝔐^m_l(φ, ε, θ, τ, 0, 0) = e^{-m(ε + iφ)} Z^l_m(θ, τ)`.
pub fn m_assoc(idx: HypersphIndex, ang: &EulerAngles) -> Result<Complex64> {
    ang.validate()?;
    Ok(undotted_phase(idx.m, ang) * z_assoc(idx, ang.theta, ang.tau)?)
}

/// Dotted counterpart `e^{-m(ε - iφ)} Z^l_m(θ, τ)`: same kernel, conjugate
/// phase convention in `φ`.
pub fn m_assoc_dotted(idx: HypersphIndex, ang: &EulerAngles) -> Result<Complex64> {
    ang.validate()?;
    Ok(dotted_phase(idx.m, ang) * z_assoc(idx, ang.theta, ang.tau)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(l2: i32, m2: i32) -> HypersphIndex {
        HypersphIndex::new(HalfInt::from_twice(l2), HalfInt::from_twice(m2)).unwrap()
    }

    #[test]
    fn spin_half_term_count() {
        let terms = z_terms(idx(1, 1), 1.0, 1.0).unwrap();
        assert_eq!(terms.len(), 2);
    }

    #[test]
    fn spin_half_golden() {
        // Frozen from a 50-digit summation: the two factors reduce to 1 and
        // {ln 2, artanh(h)/h} at θ = π/2.
        let z = z_assoc(idx(1, 1), PI / 2.0, 1.0).unwrap();
        let expect = Complex64::new(1.1729352093275557, 0.40650836666244223);
        assert!((z - expect).norm() < 1e-14 * expect.norm(), "{z}");
    }

    #[test]
    fn integer_degree_golden() {
        // 50-digit oracle value.
        let z = z_assoc(idx(2, 0), PI / 3.0, 0.7).unwrap();
        let expect = Complex64::new(0.8456883771116036752, -4.1903448392036370600);
        assert!((z - expect).norm() < 1e-14 * expect.norm(), "{z}");
    }

    #[test]
    fn index_validation() {
        let h = HalfInt::from_twice;
        assert!(HypersphIndex::new(h(1), h(3)).is_err());
        assert!(HypersphIndex::new(h(1), h(0)).is_err());
        assert!(HypersphIndex::new(h(-1), h(-1)).is_err());
        assert!(HypersphIndex::new(h(4), h(-4)).is_ok());
    }

    #[test]
    fn open_domain_rejected() {
        for (theta, tau) in [(0.0, 1.0), (PI, 1.0), (1.0, 0.0), (1.0, -0.5), (f64::NAN, 1.0)] {
            assert!(matches!(
                z_assoc(idx(1, 1), theta, tau),
                Err(Error::Domain { .. })
            ));
        }
    }

    #[test]
    fn undefined_indices_report_poles() {
        // l = 3/2, m = -1/2: the k = 1/2 term has 2F1(-1, -1; 0; x).
        let i = idx(3, -1);
        assert!(!i.is_defined());
        assert!(matches!(
            z_assoc(i, 1.0, 1.0),
            Err(Error::PoleInDenominator { .. })
        ));
        assert!(idx(1, -1).is_defined());
        assert!(idx(3, 1).is_defined());
    }

    #[test]
    fn phases() {
        let i = idx(1, 1);
        let ang = EulerAngles::new(0.4, 0.2, PI / 2.0, 1.0);
        let m = m_assoc(i, &ang).unwrap();
        let z = z_assoc(i, ang.theta, ang.tau).unwrap();
        let pre = Complex64::new(-0.1, -0.2).exp();
        assert!((m - pre * z).norm() < 1e-15);

        let md = m_assoc_dotted(i, &ang).unwrap();
        let ratio = md / m;
        let expect = Complex64::new(0.0, 2.0 * 0.5 * 0.4).exp();
        assert!((ratio - expect).norm() < 1e-15);

        let flat = EulerAngles::new(0.0, 0.0, 1.0, 2.0);
        assert_eq!(m_assoc(i, &flat).unwrap(), z_assoc(i, 1.0, 2.0).unwrap());
        assert_eq!(m_assoc(i, &flat).unwrap(), m_assoc_dotted(i, &flat).unwrap());
    }

    #[test]
    fn nonzero_trailing_angles_rejected() {
        let mut ang = EulerAngles::new(0.0, 0.0, 1.0, 1.0);
        ang.phi2 = 0.3;
        assert!(m_assoc(idx(1, 1), &ang).is_err());
    }
}
