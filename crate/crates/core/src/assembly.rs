//! The spin-1/2 bispinor on the Poincaré group.
//!
//! Each component is a translation factor times a Lorentz factor:
//!
//! ```text
//! ψ1  =      u_r[1] e^{-ipx} · f1(z) 𝔐^{ 1/2}_l
//! ψ2  =  ±   u_r[2] e^{-ipx} · f1(z) 𝔐^{-1/2}_l
//! ψ̇1  =  ∓   v_r[3] e^{+ipx} · f4(z) 𝔐̇^{ 1/2}_l̇
//! ψ̇2  =      v_r[4] e^{+ipx} · f4(z) 𝔐̇^{-1/2}_l̇
//! ```
//!
//! The undotted pair takes the upper rows of `u_r`, the dotted pair the lower
//! rows of `v_r`, and both dotted components use the dotted phase convention.
//! The radial argument `z` is the configured sphere radius, independent of the
//! Euler angles. Because the kernel `Z^l_{-1/2}` has a pole for `l >= 3/2`,
//! only `l = l̇ = 1/2` yields finite bispinors; other degrees report the pole.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dirac::{amplitude_components, plane_wave, AmplitudeKind, FourMomentum, Sign, SpinIndex};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::hypersph::{m_assoc, m_assoc_dotted, EulerAngles, HypersphIndex};
use crate::radial::{f1_jet, f4_from_f1_jet, resolve_scale, RadialParams, RadialPoint, SignPair};

/// Largest number of points [`grid_eval`] accepts.
pub const GRID_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinConfig {
    pub p: FourMomentum,
    pub r: SpinIndex,
    pub rp: RadialParams,
    pub radius: f64,
    pub sign_pair: SignPair,
    /// Bessel argument scale.
    pub scale: f64,
}

impl SpinConfig {
    /// Uses `resolve_scale` for the Bessel argument scale.
    pub fn new(p: FourMomentum, r: SpinIndex, rp: RadialParams, radius: f64, sign_pair: SignPair) -> Result<Self> {
        let scale = resolve_scale(rp.kappa, rp.kappa_dot)?;
        Self::with_scale(p, r, rp, radius, sign_pair, scale)
    }

    pub fn with_scale(
        p: FourMomentum,
        r: SpinIndex,
        rp: RadialParams,
        radius: f64,
        sign_pair: SignPair,
        scale: f64,
    ) -> Result<Self> {
        RadialPoint::new(radius)?;
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::NonPositiveArgument(scale));
        }
        Ok(Self {
            p,
            r,
            rp,
            radius,
            sign_pair,
            scale,
        })
    }

    pub fn flipped(&self) -> Self {
        Self {
            sign_pair: self.sign_pair.flipped(),
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupPoint {
    pub x: [f64; 4],
    pub ang: EulerAngles,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareBispinor {
    pub psi1: Complex64,
    pub psi2: Complex64,
    pub psi1_dot: Complex64,
    pub psi2_dot: Complex64,
}

impl PoincareBispinor {
    pub fn from_array(c: [Complex64; 4]) -> Self {
        Self {
            psi1: c[0],
            psi2: c[1],
            psi1_dot: c[2],
            psi2_dot: c[3],
        }
    }

    pub fn to_array(&self) -> [Complex64; 4] {
        [self.psi1, self.psi2, self.psi1_dot, self.psi2_dot]
    }
}

/// A bispinor together with the two factors it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BispinorParts {
    pub translation: [Complex64; 4],
    pub lorentz: [Complex64; 4],
    pub value: PoincareBispinor,
}

/// `f1 𝔐^{1/2}_l`, `±f1 𝔐^{-1/2}_l`, `∓f4 𝔐̇^{1/2}_l̇`, `f4 𝔐̇^{-1/2}_l̇`.
pub fn lorentz_factor(cfg: &SpinConfig, ang: &EulerAngles) -> Result<[Complex64; 4]> {
    ang.validate()?;
    let pt = RadialPoint::new(cfg.radius)?;
    let rp = &cfg.rp;
    let f1 = f1_jet(rp, &pt, cfg.scale)?;
    let f4 = f4_from_f1_jet(&f1, rp.l, rp.kappa_dot, pt.z()).f;
    let s = cfg.sign_pair.upper();
    let (half, minus_half) = (HalfInt::HALF, HalfInt::MINUS_HALF);
    Ok([
        f1.f * m_assoc(HypersphIndex::new(rp.l, half)?, ang)?,
        s * f1.f * m_assoc(HypersphIndex::new(rp.l, minus_half)?, ang)?,
        -s * f4 * m_assoc_dotted(HypersphIndex::new(rp.l_dot, half)?, ang)?,
        f4 * m_assoc_dotted(HypersphIndex::new(rp.l_dot, minus_half)?, ang)?,
    ])
}

/// Rows 1, 2 of `u_r e^{-ipx}` and rows 3, 4 of `v_r e^{+ipx}`.
pub fn translation_factor(cfg: &SpinConfig, x: &[f64; 4]) -> [Complex64; 4] {
    let u = amplitude_components(AmplitudeKind::U, cfg.r, &cfg.p);
    let v = amplitude_components(AmplitudeKind::V, cfg.r, &cfg.p);
    let plus = plane_wave(x, &cfg.p, Sign::Plus);
    let minus = plane_wave(x, &cfg.p, Sign::Minus);
    [u[0] * plus, u[1] * plus, v[2] * minus, v[3] * minus]
}

/// The full amplitude four-vectors `u_r` and `v_r` behind the translation factor.
pub fn translation_spinors(cfg: &SpinConfig) -> ([Complex64; 4], [Complex64; 4]) {
    (
        amplitude_components(AmplitudeKind::U, cfg.r, &cfg.p),
        amplitude_components(AmplitudeKind::V, cfg.r, &cfg.p),
    )
}

pub fn bispinor_parts(cfg: &SpinConfig, gp: &GroupPoint) -> Result<BispinorParts> {
    let lorentz = lorentz_factor(cfg, &gp.ang)?;
    let translation = translation_factor(cfg, &gp.x);
    let value = std::array::from_fn(|i| translation[i] * lorentz[i]);
    Ok(BispinorParts {
        translation,
        lorentz,
        value: PoincareBispinor::from_array(value),
    })
}

pub fn bispinor(cfg: &SpinConfig, gp: &GroupPoint) -> Result<PoincareBispinor> {
    Ok(bispinor_parts(cfg, gp)?.value)
}

/// The ten group parameters, in the order used for grid axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    X1,
    X2,
    X3,
    X4,
    Phi,
    Eps,
    Theta,
    Tau,
    Phi2,
    Eps2,
}

impl Param {
    pub const ALL: [Param; 10] = [
        Param::X1,
        Param::X2,
        Param::X3,
        Param::X4,
        Param::Phi,
        Param::Eps,
        Param::Theta,
        Param::Tau,
        Param::Phi2,
        Param::Eps2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::X1 => "x1",
            Param::X2 => "x2",
            Param::X3 => "x3",
            Param::X4 => "x4",
            Param::Phi => "phi",
            Param::Eps => "eps",
            Param::Theta => "theta",
            Param::Tau => "tau",
            Param::Phi2 => "phi2",
            Param::Eps2 => "eps2",
        }
    }

    pub fn from_name(s: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn get(self, gp: &GroupPoint) -> f64 {
        match self {
            Param::X1 => gp.x[0],
            Param::X2 => gp.x[1],
            Param::X3 => gp.x[2],
            Param::X4 => gp.x[3],
            Param::Phi => gp.ang.phi,
            Param::Eps => gp.ang.eps,
            Param::Theta => gp.ang.theta,
            Param::Tau => gp.ang.tau,
            Param::Phi2 => gp.ang.phi2,
            Param::Eps2 => gp.ang.eps2,
        }
    }

    pub fn set(self, gp: &mut GroupPoint, v: f64) {
        match self {
            Param::X1 => gp.x[0] = v,
            Param::X2 => gp.x[1] = v,
            Param::X3 => gp.x[2] = v,
            Param::X4 => gp.x[3] = v,
            Param::Phi => gp.ang.phi = v,
            Param::Eps => gp.ang.eps = v,
            Param::Theta => gp.ang.theta = v,
            Param::Tau => gp.ang.tau = v,
            Param::Phi2 => gp.ang.phi2 = v,
            Param::Eps2 => gp.ang.eps2 = v,
        }
    }

    /// Domain check for a single axis value.
    pub fn check(self, v: f64) -> Result<()> {
        let (ok, domain) = match self {
            Param::Theta => (v > 0.0 && v < std::f64::consts::PI, "(0, pi)"),
            Param::Tau => (v > 0.0 && v.is_finite(), "(0, inf)"),
            Param::Phi2 | Param::Eps2 => (v == 0.0, "{0}"),
            _ => (v.is_finite(), "finite reals"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain {
                param: self.name(),
                value: v,
                domain,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub param: Param,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn values(param: Param, values: Vec<f64>) -> Self {
        Self { param, values }
    }

    /// `n` evenly spaced values from `start` to `stop` inclusive.
    pub fn linspace(param: Param, start: f64, stop: f64, n: usize) -> Self {
        let values = match n {
            0 => Vec::new(),
            1 => vec![start],
            _ => (0..n)
                .map(|i| start + (stop - start) * (i as f64) / ((n - 1) as f64))
                .collect(),
        };
        Self { param, values }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub base: GroupPoint,
    pub axes: Vec<Axis>,
}

impl GridSpec {
    pub fn point_count(&self) -> u128 {
        self.axes.iter().map(|a| a.values.len() as u128).product()
    }

    /// Checks duplicates, per-axis domains and the size cap.
    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.axes.iter().enumerate() {
            if self.axes[..i].iter().any(|b| b.param == a.param) {
                return Err(Error::InvalidParameter(format!(
                    "axis {} is given more than once",
                    a.param.name()
                )));
            }
            for &v in &a.values {
                a.param.check(v)?;
            }
        }
        let points = self.point_count();
        if points > GRID_CAP as u128 {
            return Err(Error::SizeCap { points, cap: GRID_CAP });
        }
        Ok(())
    }

    /// The `i`-th point in lexicographic order, first axis slowest.
    pub fn point(&self, mut i: usize) -> GroupPoint {
        let mut gp = self.base;
        for a in self.axes.iter().rev() {
            let n = a.values.len();
            a.param.set(&mut gp, a.values[i % n]);
            i /= n;
        }
        gp
    }

    pub fn points(&self) -> impl Iterator<Item = GroupPoint> + '_ {
        (0..self.point_count() as usize).map(|i| self.point(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub point: GroupPoint,
    pub parts: BispinorParts,
}

/// Evaluates the bispinor at every grid point. Rows come back in
/// lexicographic order whatever the thread count; on failure the error of the
/// first failing row is returned.
pub fn grid_eval(cfg: &SpinConfig, grid: &GridSpec) -> Result<Vec<GridRow>> {
    grid.validate()?;
    let n = grid.point_count() as usize;
    let rows: Vec<Result<GridRow>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let point = grid.point(i);
            bispinor_parts(cfg, &point).map(|parts| GridRow { point, parts })
        })
        .collect();
    rows.into_iter().collect()
}
