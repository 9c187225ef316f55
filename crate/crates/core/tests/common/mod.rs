//! Arbitrary-precision oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use astro_float::{BigFloat, Consts, RoundingMode};
use poincare_wave::hypersph::HypersphIndex;
use poincare_wave::specfun::Hyp2F1Params;
use poincare_wave::{ComplexScalar, HalfInt};

pub const P: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

pub fn big(v: f64) -> BigFloat {
    BigFloat::from_f64(v, P)
}

pub fn int(v: i64) -> BigFloat {
    BigFloat::from_i64(v, P)
}

pub fn to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    v.to_string().parse().expect("decimal rendering of a finite BigFloat")
}

/// A complex number as two big floats.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn zero() -> Self {
        Self { re: int(0), im: int(0) }
    }

    pub fn from_c(c: ComplexScalar) -> Self {
        Self { re: big(c.re), im: big(c.im) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.add(&o.re, P, RM),
            im: self.im.add(&o.im, P, RM),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re, P, RM).sub(&self.im.mul(&o.im, P, RM), P, RM);
        let im = self.re.mul(&o.im, P, RM).add(&self.im.mul(&o.re, P, RM), P, RM);
        Self { re, im }
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        Self {
            re: self.re.mul(s, P, RM),
            im: self.im.mul(s, P, RM),
        }
    }

    pub fn to_c(&self) -> ComplexScalar {
        ComplexScalar::new(to_f64(&self.re), to_f64(&self.im))
    }
}

/// Terminating `2F1` summed term by term in big floats. Returns `None` when
/// the series does not terminate or divides by zero first.
pub fn hyp2f1_terminating(p: &Hyp2F1Params) -> Option<ComplexScalar> {
    let jmax = p.termination_index()?;
    let (a, b, c) = (big(p.a), big(p.b), big(p.c));
    let x = BigComplex::from_c(p.x);
    let mut term = BigComplex { re: int(1), im: int(0) };
    let mut sum = term.clone();
    for j in 0..jmax {
        let jb = int(j as i64);
        let num = a.add(&jb, P, RM).mul(&b.add(&jb, P, RM), P, RM);
        let den = c.add(&jb, P, RM).mul(&int(j as i64 + 1), P, RM);
        if den.is_zero() {
            return None;
        }
        let ratio = num.div(&den, P, RM);
        term = term.mul(&x).scale(&ratio);
        sum = sum.add(&term);
    }
    Some(sum.to_c())
}

/// Real `2F1(a, b; c; x)` in big floats by the defining series, either up to
/// the index `terminate` or, for `|x| < 1`, until the terms fall below 1e-60.
fn series_real(a: &BigFloat, b: &BigFloat, c: &BigFloat, x: &BigFloat, terminate: Option<u64>) -> BigFloat {
    let eps = BigFloat::from_f64(1e-60, P);
    let mut term = int(1);
    let mut sum = int(1);
    let mut j: u64 = 0;
    loop {
        if terminate == Some(j) {
            return sum;
        }
        let jb = int(j as i64);
        let num = a.add(&jb, P, RM).mul(&b.add(&jb, P, RM), P, RM);
        let den = c.add(&jb, P, RM).mul(&int(j as i64 + 1), P, RM);
        term = term.mul(&num, P, RM).div(&den, P, RM).mul(x, P, RM);
        sum = sum.add(&term, P, RM);
        j += 1;
        if terminate.is_none() && j > 10 && term.abs() < eps.mul(&sum.abs(), P, RM) {
            return sum;
        }
        assert!(j < 200_000, "oracle series failed to converge");
    }
}

/// `2F1(1, 1; n + 1; -s)` from
/// `(n / s^n) [A^{n-1} ln A + Σ_{j=1}^{n-1} C(n-1, j) A^{n-1-j} (-1)^j (A^j - 1) / j]`
/// with `A = 1 + s`.
fn log_closed_form(n: u32, s: &BigFloat, cc: &mut Consts) -> BigFloat {
    let a = int(1).add(s, P, RM);
    if n == 0 {
        return int(1).div(&a, P, RM);
    }
    let mut total = a.powi((n - 1) as usize, P, RM).mul(&a.ln(P, RM, cc), P, RM);
    let mut binom = int(1);
    for j in 1..n {
        binom = binom.mul(&int((n - j) as i64), P, RM).div(&int(j as i64), P, RM);
        let mut t = binom
            .mul(&a.powi((n - 1 - j) as usize, P, RM), P, RM)
            .mul(&a.powi(j as usize, P, RM).sub(&int(1), P, RM), P, RM)
            .div(&int(j as i64), P, RM);
        if j % 2 == 1 {
            t = t.neg();
        }
        total = total.add(&t, P, RM);
    }
    int(n as i64).div(&s.powi(n as usize, P, RM), P, RM).mul(&total, P, RM)
}

fn non_positive_int(v: f64) -> Option<u64> {
    (v <= 0.0 && v.fract() == 0.0).then(|| (-v) as u64)
}

/// `2F1(a, b; c; x)` for the real arguments arising in `Z`. Terminating
/// cases are summed exactly; `2F1(1, 1; n + 1; x)` with `x <= -1/2` uses the
/// logarithmic closed form; everything else uses the series at `|x| < 1`.
fn kernel_factor(a: f64, b: f64, c: f64, x: &BigFloat, cc: &mut Consts) -> Option<BigFloat> {
    let stop = match (non_positive_int(a), non_positive_int(b)) {
        (Some(i), Some(j)) => Some(i.min(j)),
        (i, j) => i.or(j),
    };
    if let Some(nc) = non_positive_int(c) {
        if !matches!(stop, Some(s) if s <= nc) {
            return None;
        }
    }
    if let Some(s) = stop {
        return Some(series_real(&big(a), &big(b), &big(c), x, Some(s)));
    }
    let half = BigFloat::from_f64(-0.5, P);
    if a == 1.0 && b == 1.0 && c.fract() == 0.0 && *x <= half {
        return Some(log_closed_form(c as u32 - 1, &x.neg(), cc));
    }
    assert!(x.abs() < int(1), "oracle argument outside the unit disc");
    Some(series_real(&big(a), &big(b), &big(c), x, None))
}

/// `Z^l_m(θ, τ)` in big floats. Second factors depend only on `τ` and are
/// cached across calls.
pub struct ZOracle {
    cc: Consts,
    second: HashMap<(i32, i32, u64), Option<BigFloat>>,
}

impl Default for ZOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl ZOracle {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constants cache"),
            second: HashMap::new(),
        }
    }

    /// `None` when the formula has a pole at this index.
    pub fn z(&mut self, idx: HypersphIndex, theta: f64, tau: f64) -> Option<ComplexScalar> {
        let cc = &mut self.cc;
        let two = int(2);
        let half_theta = big(theta).div(&two, P, RM);
        let half_tau = big(tau).div(&two, P, RM);
        let t = half_theta.tan(P, RM, cc);
        let h = half_tau.tanh(P, RM, cc);
        let t2 = t.mul(&t, P, RM);
        let h2 = h.mul(&h, P, RM);
        let sqrt_h = h.sqrt(P, RM);
        let (l, m) = (idx.l.to_f64(), idx.m.to_f64());

        let mut acc = BigComplex::zero();
        for k2 in (-idx.l.twice()..=idx.l.twice()).step_by(2) {
            let k = HalfInt::from_twice(k2).to_f64();
            let n = (idx.m.twice() - k2) / 2;
            let f1 = kernel_factor(m - l + 1.0, 1.0 - l - k, m - k + 1.0, &t2.neg(), cc)?;
            let key = (idx.l.twice(), k2, tau.to_bits());
            let f2 = match self.second.get(&key) {
                Some(v) => v.clone()?,
                None => {
                    let v = kernel_factor(1.0 - l, 1.0 - l - k, 1.0 - k, &h2, cc);
                    self.second.insert(key, v.clone());
                    v?
                }
            };
            // t^n with integer n, h^{-k} = sqrt(h)^{-2k}
            let t_pow = if n >= 0 {
                t.powi(n as usize, P, RM)
            } else {
                int(1).div(&t.powi((-n) as usize, P, RM), P, RM)
            };
            let h_pow = if k2 <= 0 {
                sqrt_h.powi((-k2) as usize, P, RM)
            } else {
                int(1).div(&sqrt_h.powi(k2 as usize, P, RM), P, RM)
            };
            let mag = t_pow.mul(&h_pow, P, RM).mul(&f1, P, RM).mul(&f2, P, RM);
            let term = match n.rem_euclid(4) {
                0 => BigComplex { re: mag, im: int(0) },
                1 => BigComplex { re: int(0), im: mag },
                2 => BigComplex { re: mag.neg(), im: int(0) },
                _ => BigComplex { re: int(0), im: mag.neg() },
            };
            acc = acc.add(&term);
        }
        let two_l = idx.l.twice() as usize;
        let pre = half_theta
            .cos(P, RM, cc)
            .powi(two_l, P, RM)
            .mul(&half_tau.cosh(P, RM, cc).powi(two_l, P, RM), P, RM);
        Some(acc.scale(&pre).to_c())
    }
}
