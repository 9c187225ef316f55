//! Gauss hypergeometric series and Bessel functions of half-integer order.
//!
//! `hyp2f1` sums the defining series directly. A terminating series (first or
//! second parameter a non-positive integer) is summed term by term to its last
//! term for any argument. A non-terminating series is summed where it
//! converges; on the half-plane `Re x < 1/2` the Pfaff transformation
//!
//! ```text
//! 2F1(a, b; c; x) = (1 - x)^(-b) 2F1(c - a, b; c; x / (x - 1))
//! ```
//!
//! is applied whenever it shrinks the argument, which is what makes
//! `2F1(1, 1; 2l + 1; -tan²(θ/2))` evaluable for θ near π.

use std::f64::consts::PI;

use num_complex::Complex64;
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::sum::ComplexSum;

/// Hard cap on the number of terms of a non-terminating series.
pub const TERM_CAP: usize = 1_000_000;

/// Target relative size of the neglected tail.
pub const SERIES_EPS: f64 = 1e-16;

/// Parameters of `2F1(a, b; c; x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x: Complex64,
}

impl Hyp2F1Params {
    pub fn new(a: f64, b: f64, c: f64, x: Complex64) -> Self {
        Self { a, b, c, x }
    }

    pub fn real(a: f64, b: f64, c: f64, x: f64) -> Self {
        Self::new(a, b, c, Complex64::new(x, 0.0))
    }

    /// Index of the last non-zero term when `a` or `b` is a non-positive
    /// integer; the smaller one wins when both are.
    pub fn termination_index(&self) -> Option<u64> {
        match (non_positive_integer(self.a), non_positive_integer(self.b)) {
            (Some(i), Some(j)) => Some(i.min(j)),
            (i, j) => i.or(j),
        }
    }

    /// Rejects a `c` that hits a non-positive integer at or before the last
    /// term. `(c)_j` vanishes only for `j > -c`, so a series terminating at
    /// `j_max <= -c` never divides by zero.
    pub fn check_admissible(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.c.is_finite())
            || !(self.x.re.is_finite() && self.x.im.is_finite())
        {
            return Err(Error::InvalidParameter(format!(
                "non-finite hypergeometric parameters {self:?}"
            )));
        }
        if let Some(n) = non_positive_integer(self.c) {
            match self.termination_index() {
                Some(jmax) if jmax <= n => {}
                _ => return Err(Error::PoleInDenominator { c: self.c }),
            }
        }
        Ok(())
    }
}

fn non_positive_integer(v: f64) -> Option<u64> {
    if v <= 0.0 && v.fract() == 0.0 && v > -(u32::MAX as f64) {
        Some((-v) as u64)
    } else {
        None
    }
}

/// `(a)_j = a (a + 1) … (a + j - 1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// Gauss hypergeometric function `2F1(a, b; c; x)`.
pub fn hyp2f1(p: Hyp2F1Params) -> Result<Complex64> {
    p.check_admissible()?;
    if let Some(jmax) = p.termination_index() {
        return Ok(terminating_series(&p, jmax));
    }

    let x = p.x;
    let abs_x = x.norm();
    if abs_x == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if x != Complex64::new(1.0, 0.0) {
        let y = x / (x - 1.0);
        let abs_y = y.norm();
        if let Some(n) = log_family_order(&p) {
            // the series converge here, but slowly
            if abs_y < 1.0 && abs_x.min(abs_y) > 0.9 {
                return Ok(log_family(n, x));
            }
        }
        if abs_y < abs_x && abs_y < 1.0 {
            return pfaff(&p, y);
        }
    }
    if abs_x < 1.0 {
        convergent_series(&p)
    } else {
        Err(Error::NonConvergent { abs_x })
    }
}

/// The defining series only, without the Pfaff transformation.
pub fn hyp2f1_direct(p: Hyp2F1Params) -> Result<Complex64> {
    p.check_admissible()?;
    if let Some(jmax) = p.termination_index() {
        return Ok(terminating_series(&p, jmax));
    }
    let abs_x = p.x.norm();
    if abs_x < 1.0 {
        convergent_series(&p)
    } else {
        Err(Error::NonConvergent { abs_x })
    }
}

fn pfaff(p: &Hyp2F1Params, y: Complex64) -> Result<Complex64> {
    // Both forms are valid; prefer the one whose inner series terminates.
    let (inner, exponent) = if non_positive_integer(p.c - p.b).is_some()
        && non_positive_integer(p.c - p.a).is_none()
    {
        (Hyp2F1Params::new(p.a, p.c - p.b, p.c, y), -p.a)
    } else {
        (Hyp2F1Params::new(p.c - p.a, p.b, p.c, y), -p.b)
    };
    inner.check_admissible()?;
    let base = Complex64::new(1.0, 0.0) - p.x;
    let prefactor = if base.im == 0.0 {
        Complex64::new(base.re.powf(exponent), 0.0)
    } else {
        base.powf(exponent)
    };
    let series = match inner.termination_index() {
        Some(jmax) => terminating_series(&inner, jmax),
        None => convergent_series(&inner)?,
    };
    Ok(prefactor * series)
}

/// `n` when the parameters are `(1, 1; n + 1)` with a small integer `n`.
fn log_family_order(p: &Hyp2F1Params) -> Option<u32> {
    let n = p.c - 1.0;
    (p.a == 1.0 && p.b == 1.0 && n.fract() == 0.0 && (0.0..=16.0).contains(&n)).then_some(n as u32)
}

/// `2F1(1, 1; n + 1; x)` in closed form. With `s = -x`, `A = 1 + s`:
/// `(n / s^n) [A^{n-1} ln A + Σ_{j=1}^{n-1} C(n-1, j) A^{n-1-j} (-1)^j (A^j - 1) / j]`.
fn log_family(n: u32, x: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let a = one - x;
    if n == 0 {
        return one / a;
    }
    let s = -x;
    let mut total = a.powu(n - 1) * a.ln();
    let mut binom = 1.0;
    for j in 1..n {
        binom = binom * f64::from(n - j) / f64::from(j);
        let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
        total += sign * binom / f64::from(j) * a.powu(n - 1 - j) * (a.powu(j) - one);
    }
    f64::from(n) * total / s.powu(n)
}

#[inline]
fn term_ratio(p: &Hyp2F1Params, j: f64) -> f64 {
    (p.a + j) * (p.b + j) / ((p.c + j) * (j + 1.0))
}

/// Terminating sums cancel heavily once `|x| > 1`, so the terms and the
/// running sum are carried in double-double precision.
fn terminating_series(p: &Hyp2F1Params, jmax: u64) -> Complex64 {
    let (xr, xi) = (TwoFloat::from(p.x.re), TwoFloat::from(p.x.im));
    let (mut tr, mut ti) = (TwoFloat::from(1.0), TwoFloat::from(0.0));
    let (mut sr, mut si) = (tr, ti);
    for j in 0..jmax {
        let jf = j as f64;
        let num = (TwoFloat::new_add(p.a, jf)) * TwoFloat::new_add(p.b, jf);
        let den = TwoFloat::new_add(p.c, jf) * (jf + 1.0);
        let ratio = dd_div(num, den);
        let (nr, ni) = (tr * xr - ti * xi, tr * xi + ti * xr);
        tr = nr * ratio;
        ti = ni * ratio;
        sr += tr;
        si += ti;
    }
    Complex64::new(f64::from(sr), f64::from(si))
}

// TwoFloat's own division drops the low word; refine the quotient by
// long division with exact products instead.
fn dd_div(n: TwoFloat, d: TwoFloat) -> TwoFloat {
    let q1 = n.hi() / d.hi();
    let r = n - d * q1;
    let q2 = r.hi() / d.hi();
    let r = r - d * q2;
    let q3 = r.hi() / d.hi();
    TwoFloat::new_add(q1, q2) + q3
}

fn convergent_series(p: &Hyp2F1Params) -> Result<Complex64> {
    let abs_x = p.x.norm();
    // Past this index the coefficient ratio is monotone, so the tail is
    // bounded by a geometric series with ratio max(current ratio, |x|).
    let settle = p.a.abs().max(p.b.abs()).max(p.c.abs()) + 2.0;
    let mut sum = ComplexSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    for j in 0..TERM_CAP {
        sum.add(term);
        let jf = j as f64;
        let ratio = term_ratio(p, jf).abs() * abs_x;
        term *= p.x * term_ratio(p, jf);
        if jf > settle {
            let rho = ratio.max(abs_x);
            if rho < 1.0 && term.norm() <= SERIES_EPS * (1.0 - rho) * sum.total().norm() {
                sum.add(term);
                return Ok(sum.total());
            }
        }
        if term.norm() == 0.0 {
            return Ok(sum.total());
        }
    }
    Err(Error::TermCapExceeded { cap: TERM_CAP })
}

/// `J_ν(x)` for half-integer `ν` and `x > 0`.
///
/// Seeds are the closed forms `J_{1/2} = √(2/πx) sin x` and
/// `J_{-1/2} = √(2/πx) cos x`. Negative orders follow the recurrence
/// `J_{ν-1} = (2ν/x) J_ν - J_{ν+1}` downward from the seeds. Positive orders
/// use the recurrence upward when `x >= ν`; below that the upward direction
/// amplifies rounding, so the value comes from Miller's backward recurrence
/// normalised against whichever of `J_{1/2}`, `J_{3/2}` is larger.
pub fn bessel_j_half(nu: HalfInt, x: f64) -> Result<f64> {
    if nu.is_integer() {
        return Err(Error::IntegerOrderUnsupported(nu));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveArgument(x));
    }
    let scale = (2.0 / (PI * x)).sqrt();
    let (s, c) = x.sin_cos();
    let j_half = scale * s;
    let j_minus_half = scale * c;

    let twice = nu.twice();
    if twice == 1 {
        return Ok(j_half);
    }
    if twice == -1 {
        return Ok(j_minus_half);
    }
    if twice < 0 {
        // J_{ν-1} from J_ν and J_{ν+1}, starting at ν = -1/2.
        let (mut upper, mut current) = (j_half, j_minus_half);
        let mut order = -0.5;
        for _ in 0..((-twice - 1) / 2) {
            let next = 2.0 * order / x * current - upper;
            upper = current;
            current = next;
            order -= 1.0;
        }
        return Ok(current);
    }

    let target = nu.to_f64();
    if x >= target {
        let (mut lower, mut current) = (j_minus_half, j_half);
        let mut order = 0.5;
        for _ in 0..((twice - 1) / 2) {
            let next = 2.0 * order / x * current - lower;
            lower = current;
            current = next;
            order += 1.0;
        }
        return Ok(current);
    }
    Ok(miller(twice, x, j_half, scale * (s / x - c)))
}

fn miller(twice: i32, x: f64, j_half: f64, j_three_halves: f64) -> f64 {
    let n_target = ((twice - 1) / 2) as usize;
    let n_start = n_target + 20 + 2 * (x.ceil() as usize);
    // Index n stands for order n + 1/2.
    let (mut upper, mut current) = (0.0_f64, 1e-30_f64);
    let mut at_target = 0.0;
    let mut at_half = 0.0;
    let mut at_three_halves = 0.0;
    for n in (0..=n_start).rev() {
        if n == n_target {
            at_target = current;
        }
        if n == 1 {
            at_three_halves = current;
        }
        if n == 0 {
            at_half = current;
            break;
        }
        let order = n as f64 + 0.5;
        let next = 2.0 * order / x * current - upper;
        upper = current;
        current = next;
        if current.abs() > 1e250 {
            upper *= 1e-250;
            current *= 1e-250;
            at_target *= 1e-250;
            at_three_halves *= 1e-250;
        }
    }
    if j_half.abs() >= j_three_halves.abs() {
        at_target * (j_half / at_half)
    } else {
        at_target * (j_three_halves / at_three_halves)
    }
}

/// Value and first two derivatives of `J_ν` at `x`, from the identities
/// `J' = (J_{ν-1} - J_{ν+1}) / 2` and `J'' = (J_{ν-2} - 2J_ν + J_{ν+2}) / 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

pub fn bessel_j_half_jet(nu: HalfInt, x: f64) -> Result<BesselJet> {
    let j = |k: i32| bessel_j_half(nu + HalfInt::from_int(k), x);
    let (jm2, jm1, j0, jp1, jp2) = (j(-2)?, j(-1)?, j(0)?, j(1)?, j(2)?);
    Ok(BesselJet {
        value: j0,
        d1: 0.5 * (jm1 - jp1),
        d2: 0.25 * (jm2 - 2.0 * j0 + jp2),
    })
}

/// Bessel equation `x²y'' + xy' + (x² - ν²)y` for a jet, with the sum of the
/// term magnitudes as the scale for a relative residual.
pub fn bessel_equation_residual(nu: HalfInt, x: f64, jet: &BesselJet) -> (f64, f64) {
    let nu2 = nu.to_f64().powi(2);
    let terms = [x * x * jet.d2, x * jet.d1, x * x * jet.value, -nu2 * jet.value];
    let residual: f64 = crate::sum::CompensatedSum::from_iter(terms).total();
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    (residual, scale)
}
