//! Translation-group factor: gamma matrices, plane-wave amplitudes and the
//! Dirac equation residual.
//!
//! The gamma matrices are in the Dirac basis:
//! `γ0 = diag(σ0, -σ0)` and `γk = [[0, σk], [-σk, 0]]`. The phase is
//! `px = E x4 - px x1 - py x2 - pz x3`, with `x4` the time coordinate; under
//! this convention the amplitudes below are annihilated by `γ·p ∓ m`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Metric signature `(+, -, -, -)` in the order `(t, x, y, z)`.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Relative tolerance of the on-shell condition.
pub const ON_SHELL_TOL: f64 = 1e-12;

pub type Spinor = [Complex64; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[Complex64; 4]; 4]);

impl Matrix4 {
    pub const ZERO: Matrix4 = Matrix4([[ZERO; 4]; 4]);

    pub fn identity() -> Self {
        Self::diag([ONE; 4])
    }

    pub fn diag(d: [Complex64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    /// Block matrix `[[a, b], [c, d]]` from 2×2 blocks.
    pub fn from_blocks(
        a: [[Complex64; 2]; 2],
        b: [[Complex64; 2]; 2],
        c: [[Complex64; 2]; 2],
        d: [[Complex64; 2]; 2],
    ) -> Self {
        let mut m = Self::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a[i][j];
                m.0[i][j + 2] = b[i][j];
                m.0[i + 2][j] = c[i][j];
                m.0[i + 2][j + 2] = d[i][j];
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|v| *v *= s);
        m
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        std::array::from_fn(|i| (0..4).map(|j| self.0[i][j] * v[j]).sum())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        Matrix4(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
        }))
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(self, rhs: Matrix4) -> Matrix4 {
        Matrix4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j] + rhs.0[i][j])
        }))
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(self, rhs: Matrix4) -> Matrix4 {
        Matrix4(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j] - rhs.0[i][j])
        }))
    }
}

/// Pauli matrices `σ0, σ1, σ2, σ3`.
pub fn pauli() -> [[[Complex64; 2]; 2]; 4] {
    [
        [[ONE, ZERO], [ZERO, ONE]],
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ]
}

fn neg2(m: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    m.map(|row| row.map(|v| -v))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSet {
    pub gamma: [Matrix4; 4],
}

/// The four gamma matrices, index 0 timelike.
pub fn gamma_set() -> GammaSet {
    let s = pauli();
    let zero = [[ZERO; 2]; 2];
    let gamma0 = Matrix4::from_blocks(s[0], zero, zero, neg2(s[0]));
    let spatial = |k: usize| Matrix4::from_blocks(zero, s[k], neg2(s[k]), zero);
    GammaSet {
        gamma: [gamma0, spatial(1), spatial(2), spatial(3)],
    }
}

impl GammaSet {
    /// `{γμ, γν} - 2 g_μν I`, which vanishes exactly for a valid set.
    pub fn anticommutator_defect(&self, mu: usize, nu: usize) -> Matrix4 {
        let (a, b) = (self.gamma[mu], self.gamma[nu]);
        let g = if mu == nu { METRIC[mu] } else { 0.0 };
        a * b + b * a - Matrix4::identity().scale(Complex64::new(2.0 * g, 0.0))
    }

    /// `γ·p = γ0 E - γ1 px - γ2 py - γ3 pz`.
    pub fn slash(&self, p: &FourMomentum) -> Matrix4 {
        let c = |v: f64| Complex64::new(v, 0.0);
        self.gamma[0].scale(c(p.e)) - self.gamma[1].scale(c(p.px)) - self.gamma[2].scale(c(p.py))
            - self.gamma[3].scale(c(p.pz))
    }
}

/// `(E, px, py, pz)` with mass `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourMomentum {
    e: f64,
    px: f64,
    py: f64,
    pz: f64,
    m: f64,
}

impl FourMomentum {
    /// On-shell momentum with `E = +√(m² + |p|²)`.
    pub fn on_shell(px: f64, py: f64, pz: f64, m: f64) -> Result<Self> {
        check_mass(m)?;
        for (name, v) in [("px", px), ("py", py), ("pz", pz)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} = {v} is not finite")));
            }
        }
        let e = (m * m + px * px + py * py + pz * pz).sqrt();
        Ok(Self { e, px, py, pz, m })
    }

    /// Accepts a supplied energy only if it is on shell to `ON_SHELL_TOL`.
    pub fn new(e: f64, px: f64, py: f64, pz: f64, m: f64) -> Result<Self> {
        let p = Self::on_shell(px, py, pz, m)?;
        if (e - p.e).abs() > ON_SHELL_TOL * p.e {
            return Err(Error::OffShell {
                energy: e,
                on_shell: p.e,
            });
        }
        Ok(Self { e, ..p })
    }

    /// Unchecked energy, for negative controls.
    pub fn off_shell(e: f64, px: f64, py: f64, pz: f64, m: f64) -> Result<Self> {
        check_mass(m)?;
        Ok(Self { e, px, py, pz, m })
    }

    pub fn energy(&self) -> f64 {
        self.e
    }
    pub fn px(&self) -> f64 {
        self.px
    }
    pub fn py(&self) -> f64 {
        self.py
    }
    pub fn pz(&self) -> f64 {
        self.pz
    }
    pub fn mass(&self) -> f64 {
        self.m
    }

    /// Contravariant components `(E, px, py, pz)`.
    pub fn components(&self) -> [f64; 4] {
        [self.e, self.px, self.py, self.pz]
    }

    pub fn p_plus(&self) -> Complex64 {
        Complex64::new(self.px, self.py)
    }

    pub fn p_minus(&self) -> Complex64 {
        Complex64::new(self.px, -self.py)
    }

    pub fn three_momentum_norm(&self) -> f64 {
        (self.px * self.px + self.py * self.py + self.pz * self.pz).sqrt()
    }

    pub fn is_on_shell(&self) -> bool {
        let on = (self.m * self.m + self.three_momentum_norm().powi(2)).sqrt();
        (self.e - on).abs() <= ON_SHELL_TOL * on
    }

    /// `E x4 - p·x` for `x = (x1, x2, x3, x4)`.
    pub fn dot_position(&self, x: &[f64; 4]) -> f64 {
        self.e * x[3] - self.px * x[0] - self.py * x[1] - self.pz * x[2]
    }
}

fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("mass must be positive, got {m}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmplitudeKind {
    U,
    V,
}

/// Amplitude label `r ∈ {1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SpinIndex {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl SpinIndex {
    pub fn new(r: u8) -> Result<Self> {
        match r {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            _ => Err(Error::Index(format!("amplitude index r = {r} must be 1 or 2"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Self::One => 1,
            Self::Two => 2,
        }
    }
}

/// Sign of the plane-wave exponent: `+` is `u e^{-ipx}`, `-` is `v e^{ipx}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn kind(self) -> AmplitudeKind {
        match self {
            Sign::Plus => AmplitudeKind::U,
            Sign::Minus => AmplitudeKind::V,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracAmplitude {
    pub components: Spinor,
    pub kind: AmplitudeKind,
    pub r: SpinIndex,
}

/// Amplitude components for any momentum, on shell or not.
pub fn amplitude_components(kind: AmplitudeKind, r: SpinIndex, p: &FourMomentum) -> Spinor {
    let denom = p.e + p.m;
    let norm = (denom / (2.0 * p.m)).sqrt();
    let pz = Complex64::new(p.pz / denom, 0.0);
    let pp = p.p_plus() / denom;
    let pm = p.p_minus() / denom;
    let raw = match (kind, r) {
        (AmplitudeKind::U, SpinIndex::One) => [ONE, ZERO, pz, pp],
        (AmplitudeKind::U, SpinIndex::Two) => [ZERO, ONE, pm, -pz],
        (AmplitudeKind::V, SpinIndex::One) => [pz, pp, ONE, ZERO],
        (AmplitudeKind::V, SpinIndex::Two) => [pm, -pz, ZERO, ONE],
    };
    raw.map(|v| v * norm)
}

fn amplitude(kind: AmplitudeKind, r: SpinIndex, p: &FourMomentum) -> Result<DiracAmplitude> {
    if !p.is_on_shell() {
        let on = (p.m * p.m + p.three_momentum_norm().powi(2)).sqrt();
        return Err(Error::OffShell {
            energy: p.e,
            on_shell: on,
        });
    }
    let amp = DiracAmplitude {
        components: amplitude_components(kind, r, p),
        kind,
        r,
    };
    debug_assert!(amp.equation_residual(p) <= 1e-12);
    Ok(amp)
}

/// Positive-energy amplitude `u_r(p)`.
pub fn u_amplitude(r: SpinIndex, p: &FourMomentum) -> Result<DiracAmplitude> {
    amplitude(AmplitudeKind::U, r, p)
}

/// Negative-energy amplitude `v_r(p)`.
pub fn v_amplitude(r: SpinIndex, p: &FourMomentum) -> Result<DiracAmplitude> {
    amplitude(AmplitudeKind::V, r, p)
}

pub fn spinor_norm(v: &Spinor) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `ψ̄ χ = ψ† γ0 χ`.
pub fn bar_product(a: &Spinor, b: &Spinor) -> Complex64 {
    let g0 = gamma_set().gamma[0];
    let gb = g0.apply(b);
    a.iter().zip(gb.iter()).map(|(x, y)| x.conj() * y).sum()
}

impl DiracAmplitude {
    /// `‖(γ·p ∓ m) w‖ / ‖w‖`, upper sign for `u`.
    pub fn equation_residual(&self, p: &FourMomentum) -> f64 {
        let slash = gamma_set().slash(p);
        let mass = match self.kind {
            AmplitudeKind::U => -p.m,
            AmplitudeKind::V => p.m,
        };
        let op = slash + Matrix4::identity().scale(Complex64::new(mass, 0.0));
        spinor_norm(&op.apply(&self.components)) / spinor_norm(&self.components)
    }
}

/// `e^{∓i(E x4 - p·x)}`.
pub fn plane_wave(x: &[f64; 4], p: &FourMomentum, sign: Sign) -> Complex64 {
    Complex64::new(0.0, -sign.value() * p.dot_position(x)).exp()
}

/// `u_r e^{-ipx}` or `v_r e^{ipx}`.
pub fn plane_wave_spinor(sign: Sign, r: SpinIndex, p: &FourMomentum, x: &[f64; 4]) -> Spinor {
    let phase = plane_wave(x, p, sign);
    amplitude_components(sign.kind(), r, p).map(|v| v * phase)
}

/// `iγ^ν ∂_ν ψ - mψ` given `ψ` and its partial derivatives with respect to
/// `(x1, x2, x3, x4)`.
pub fn dirac_operator(psi: &Spinor, grad: &[Spinor; 4], m: f64) -> Spinor {
    let g = gamma_set().gamma;
    // x4 is time and pairs with γ0; x1..x3 pair with γ1..γ3.
    let pairs = [(0usize, 3usize), (1, 0), (2, 1), (3, 2)];
    let mut out = psi.map(|v| -m * v);
    for (mu, coord) in pairs {
        let t = g[mu].apply(&grad[coord]);
        for i in 0..4 {
            out[i] += I * t[i];
        }
    }
    out
}

/// Analytic gradient of a plane-wave spinor: `∂_ν ψ = ∓i p_ν ψ` with
/// `p_ν = (−px, −py, −pz, E)` in the `(x1, x2, x3, x4)` ordering.
pub fn plane_wave_gradient(psi: &Spinor, p: &FourMomentum, sign: Sign) -> [Spinor; 4] {
    let lowered = [-p.px, -p.py, -p.pz, p.e];
    lowered.map(|pk| {
        let f = Complex64::new(0.0, -sign.value() * pk);
        psi.map(|v| f * v)
    })
}

/// Left-hand side of the Dirac equation for the plane wave `(sign, r, p)`
/// at `x`, with exact derivatives. Off-shell `p` is allowed.
pub fn dirac_residual(sign: Sign, r: SpinIndex, p: &FourMomentum, x: &[f64; 4]) -> Spinor {
    let psi = plane_wave_spinor(sign, r, p, x);
    let grad = plane_wave_gradient(&psi, p, sign);
    dirac_operator(&psi, &grad, p.m)
}

/// Same residual with central finite differences of step `h` in each
/// coordinate.
pub fn dirac_residual_fd(sign: Sign, r: SpinIndex, p: &FourMomentum, x: &[f64; 4], h: f64) -> Spinor {
    let psi = plane_wave_spinor(sign, r, p, x);
    let grad: [Spinor; 4] = std::array::from_fn(|k| {
        let mut xp = *x;
        let mut xm = *x;
        xp[k] += h;
        xm[k] -= h;
        let fp = plane_wave_spinor(sign, r, p, &xp);
        let fm = plane_wave_spinor(sign, r, p, &xm);
        std::array::from_fn(|i| (fp[i] - fm[i]) / (2.0 * h))
    });
    dirac_operator(&psi, &grad, p.m)
}
