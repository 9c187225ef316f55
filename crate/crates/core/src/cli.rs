//! Command-line front end.
//!
//! Every number is written with 17 significant digits in both JSON and CSV,
//! and nothing that depends on the thread count or the clock reaches the
//! output unless asked for, so identical flags give identical bytes.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::assembly::{grid_eval, Axis, GridSpec, GroupPoint, Param, SpinConfig};
use crate::dirac::{amplitude_components, AmplitudeKind, DiracAmplitude, FourMomentum, SpinIndex};
use crate::error::Error;
use crate::halfint::HalfInt;
use crate::hypersph::{m_assoc, m_assoc_dotted, EulerAngles, HypersphIndex};
use crate::radial::{RadialParams, SignPair};
use crate::verify::{self, RunReport, Suite, VerifyOptions};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification suite misses a tolerance.
pub const EXIT_FAILED: i32 = 1;
/// Exit status for usage and domain errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "poincare", version, about = "Wavefunctions on the Poincaré group and their residual checks")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for grid evaluation and verification.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plane-wave amplitude u_r(p) or v_r(p).
    Spinor(SpinorArgs),
    /// Associated hyperspherical function over a (theta, tau, phi, eps) grid.
    Hypersph(HypersphArgs),
    /// Spin-1/2 bispinor over a grid of group parameters.
    Wavefunction(WavefunctionArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    U,
    V,
}

#[derive(Debug, Args)]
pub struct SpinorArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub r: u8,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub px: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub py: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub pz: f64,
    #[arg(long)]
    pub m: f64,
    /// Energy; must be on shell unless --off-shell is given.
    #[arg(long, allow_negative_numbers = true)]
    pub energy: Option<f64>,
    #[arg(long, requires = "energy")]
    pub off_shell: bool,
}

/// A grid axis: a single value, a comma list, or `start:stop:count`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisValues(pub Vec<f64>);

fn parse_axis(s: &str) -> Result<AxisValues, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [single] => single.split(',').map(num).collect::<Result<Vec<_>, _>>().map(AxisValues),
        [start, stop, n] => {
            let n: usize = n.trim().parse().map_err(|e| format!("{n:?}: {e}"))?;
            if n == 0 {
                return Err("an axis needs at least one point".into());
            }
            Ok(AxisValues(Axis::linspace(Param::X1, num(start)?, num(stop)?, n).values))
        }
        _ => Err(format!("{s:?} is neither a value list nor start:stop:count")),
    }
}

fn parse_half(s: &str) -> Result<HalfInt, String> {
    s.parse::<HalfInt>().map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split(',').collect::<Vec<_>>().as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("{s:?} is not RE or RE,IM")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    #[value(name = "+-")]
    PlusMinus,
    #[value(name = "-+")]
    MinusPlus,
}

impl From<SignArg> for SignPair {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::PlusMinus => SignPair::PlusMinus,
            SignArg::MinusPlus => SignPair::MinusPlus,
        }
    }
}

#[derive(Debug, Args)]
pub struct HypersphArgs {
    #[arg(long, value_parser = parse_half)]
    pub l: HalfInt,
    #[arg(long, value_parser = parse_half, allow_hyphen_values = true)]
    pub m: HalfInt,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    pub theta: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    pub tau: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub phi: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub eps: AxisValues,
    /// Use the dotted phase e^{-m(eps - i phi)}.
    #[arg(long)]
    pub dotted: bool,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub px: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub py: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub pz: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
    pub r: u8,
    #[arg(long, value_parser = parse_half, default_value = "1/2")]
    pub l: HalfInt,
    /// Defaults to --l.
    #[arg(long, value_parser = parse_half)]
    pub l_dot: Option<HalfInt>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.5")]
    pub kappa: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.5")]
    pub kappa_dot: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1")]
    pub c1: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    pub c2: Complex64,
    /// Radial coordinate z of the complex sphere.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, value_enum, default_value_t = SignArg::PlusMinus, allow_hyphen_values = true)]
    pub signs: SignArg,
    /// Bessel argument scale; defaults to 2 sqrt(kappa kappa_dot).
    #[arg(long)]
    pub scale: Option<f64>,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub x1: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub x2: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub x3: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub x4: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub phi: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub eps: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    pub theta: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true)]
    pub tau: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub phi2: AxisValues,
    #[arg(long, value_parser = parse_axis, allow_hyphen_values = true, default_value = "0")]
    pub eps2: AxisValues,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// Replace every residual tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Leave the elapsed time out of the report.
    #[arg(long)]
    pub no_timing: bool,
}

/// A float written with 17 significant digits; non-finite values become null.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

pub fn format_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format_num(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cx {
    pub re: Num,
    pub im: Num,
}

impl From<Complex64> for Cx {
    fn from(c: Complex64) -> Self {
        Cx {
            re: Num(c.re),
            im: Num(c.im),
        }
    }
}

fn cx4(v: &[Complex64; 4]) -> [Cx; 4] {
    v.map(Cx::from)
}

#[derive(Serialize)]
struct Document<I: Serialize, R: Serialize> {
    command: &'static str,
    inputs: I,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<R>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<ReportOut>,
}

/// Failure of a subcommand, mapped to an exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Output of one subcommand: a JSON document or a CSV table, and the exit
/// status it implies.
struct Output {
    text: String,
    status: i32,
}

fn csv(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn json<T: Serialize>(doc: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(doc).map_err(|e| Failure::Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn cx_cols(prefix: &str, n: usize) -> Vec<String> {
    (1..=n)
        .flat_map(|i| [format!("{prefix}{i}_re"), format!("{prefix}{i}_im")])
        .collect()
}

fn cx_vals(v: &[Complex64]) -> Vec<String> {
    v.iter().flat_map(|c| [format_num(c.re), format_num(c.im)]).collect()
}

#[derive(Serialize)]
struct SpinorInputs {
    kind: &'static str,
    r: u8,
    px: Num,
    py: Num,
    pz: Num,
    m: Num,
    energy: Option<Num>,
    off_shell: bool,
}

#[derive(Serialize)]
struct SpinorRow {
    energy: Num,
    components: [Cx; 4],
    residual: Num,
}

fn cmd_spinor(a: &SpinorArgs, format: Format) -> Result<Output, Failure> {
    let spin = SpinIndex::new(a.r)?;
    let kind = match a.kind {
        KindArg::U => AmplitudeKind::U,
        KindArg::V => AmplitudeKind::V,
    };
    let p = match (a.energy, a.off_shell) {
        (Some(e), true) => FourMomentum::off_shell(e, a.px, a.py, a.pz, a.m)?,
        (Some(e), false) => FourMomentum::new(e, a.px, a.py, a.pz, a.m)?,
        (None, _) => FourMomentum::on_shell(a.px, a.py, a.pz, a.m)?,
    };
    let amp = DiracAmplitude {
        components: amplitude_components(kind, spin, &p),
        kind,
        r: spin,
    };
    let residual = amp.equation_residual(&p);
    let kind_name = match kind {
        AmplitudeKind::U => "u",
        AmplitudeKind::V => "v",
    };
    let text = match format {
        Format::Json => json(&Document::<_, SpinorRow> {
            command: "spinor",
            inputs: SpinorInputs {
                kind: kind_name,
                r: a.r,
                px: Num(a.px),
                py: Num(a.py),
                pz: Num(a.pz),
                m: Num(a.m),
                energy: a.energy.map(Num),
                off_shell: a.off_shell,
            },
            rows: Some(vec![SpinorRow {
                energy: Num(p.energy()),
                components: cx4(&amp.components),
                residual: Num(residual),
            }]),
            report: None,
        })?,
        Format::Csv => {
            let mut header: Vec<String> = ["kind", "r", "energy", "px", "py", "pz", "m"].map(String::from).to_vec();
            header.extend(cx_cols("c", 4));
            header.push("residual".into());
            let mut row = vec![kind_name.to_string(), a.r.to_string()];
            row.extend([p.energy(), a.px, a.py, a.pz, a.m].map(format_num));
            row.extend(cx_vals(&amp.components));
            row.push(format_num(residual));
            csv(&header, [row])
        }
    };
    Ok(Output { text, status: EXIT_OK })
}

fn axis_nums(v: &AxisValues) -> Vec<Num> {
    v.0.iter().copied().map(Num).collect()
}

#[derive(Serialize)]
struct HypersphInputs {
    l: HalfInt,
    m: HalfInt,
    dotted: bool,
    theta: Vec<Num>,
    tau: Vec<Num>,
    phi: Vec<Num>,
    eps: Vec<Num>,
}

#[derive(Serialize)]
struct HypersphRow {
    theta: Num,
    tau: Num,
    phi: Num,
    eps: Num,
    value: Cx,
}

fn cmd_hypersph(a: &HypersphArgs, format: Format) -> Result<Output, Failure> {
    let idx = HypersphIndex::new(a.l, a.m)?;
    let grid = GridSpec {
        base: GroupPoint {
            x: [0.0; 4],
            ang: EulerAngles::new(0.0, 0.0, 1.0, 1.0),
        },
        axes: vec![
            Axis::values(Param::Theta, a.theta.0.clone()),
            Axis::values(Param::Tau, a.tau.0.clone()),
            Axis::values(Param::Phi, a.phi.0.clone()),
            Axis::values(Param::Eps, a.eps.0.clone()),
        ],
    };
    grid.validate()?;
    let points: Vec<GroupPoint> = grid.points().collect();
    let values: Vec<Complex64> = points
        .par_iter()
        .map(|gp| {
            if a.dotted {
                m_assoc_dotted(idx, &gp.ang)
            } else {
                m_assoc(idx, &gp.ang)
            }
        })
        .collect::<Result<_, _>>()?;

    let text = match format {
        Format::Json => json(&Document::<_, HypersphRow> {
            command: "hypersph",
            inputs: HypersphInputs {
                l: a.l,
                m: a.m,
                dotted: a.dotted,
                theta: axis_nums(&a.theta),
                tau: axis_nums(&a.tau),
                phi: axis_nums(&a.phi),
                eps: axis_nums(&a.eps),
            },
            rows: Some(
                points
                    .iter()
                    .zip(&values)
                    .map(|(gp, v)| HypersphRow {
                        theta: Num(gp.ang.theta),
                        tau: Num(gp.ang.tau),
                        phi: Num(gp.ang.phi),
                        eps: Num(gp.ang.eps),
                        value: Cx::from(*v),
                    })
                    .collect(),
            ),
            report: None,
        })?,
        Format::Csv => csv(
            &["theta", "tau", "phi", "eps", "re", "im"].map(String::from),
            points.iter().zip(&values).map(|(gp, v)| {
                [gp.ang.theta, gp.ang.tau, gp.ang.phi, gp.ang.eps, v.re, v.im]
                    .map(format_num)
                    .to_vec()
            }),
        ),
    };
    Ok(Output { text, status: EXIT_OK })
}

#[derive(Serialize)]
struct WavefunctionInputs {
    px: Num,
    py: Num,
    pz: Num,
    m: Num,
    r: u8,
    l: HalfInt,
    l_dot: HalfInt,
    kappa: Cx,
    kappa_dot: Cx,
    c1: Cx,
    c2: Cx,
    radius: Num,
    signs: &'static str,
    scale: Num,
    axes: Vec<AxisOut>,
}

#[derive(Serialize)]
struct AxisOut {
    param: &'static str,
    values: Vec<Num>,
}

#[derive(Serialize)]
struct WavefunctionRow {
    x1: Num,
    x2: Num,
    x3: Num,
    x4: Num,
    phi: Num,
    eps: Num,
    theta: Num,
    tau: Num,
    phi2: Num,
    eps2: Num,
    psi: [Cx; 4],
    translation: [Cx; 4],
    lorentz: [Cx; 4],
    abs_psi: [Num; 4],
    abs_factor_product: [Num; 4],
}

fn cmd_wavefunction(a: &WavefunctionArgs, format: Format) -> Result<Output, Failure> {
    let p = FourMomentum::on_shell(a.px, a.py, a.pz, a.m)?;
    let spin = SpinIndex::new(a.r)?;
    let l_dot = a.l_dot.unwrap_or(a.l);
    let rp = RadialParams::new(a.kappa, a.kappa_dot, a.c1, a.c2, a.l, l_dot)?;
    let signs = SignPair::from(a.signs);
    let cfg = match a.scale {
        Some(s) => SpinConfig::with_scale(p, spin, rp, a.radius, signs, s)?,
        None => SpinConfig::new(p, spin, rp, a.radius, signs)?,
    };
    let axes: Vec<Axis> = [
        (Param::X1, &a.x1),
        (Param::X2, &a.x2),
        (Param::X3, &a.x3),
        (Param::X4, &a.x4),
        (Param::Phi, &a.phi),
        (Param::Eps, &a.eps),
        (Param::Theta, &a.theta),
        (Param::Tau, &a.tau),
        (Param::Phi2, &a.phi2),
        (Param::Eps2, &a.eps2),
    ]
    .into_iter()
    .map(|(param, v)| Axis::values(param, v.0.clone()))
    .collect();
    let grid = GridSpec {
        base: GroupPoint {
            x: [0.0; 4],
            ang: EulerAngles::new(0.0, 0.0, 1.0, 1.0),
        },
        axes,
    };
    let rows = grid_eval(&cfg, &grid)?;

    let text = match format {
        Format::Json => json(&Document {
            command: "wavefunction",
            inputs: WavefunctionInputs {
                px: Num(a.px),
                py: Num(a.py),
                pz: Num(a.pz),
                m: Num(a.m),
                r: a.r,
                l: a.l,
                l_dot,
                kappa: a.kappa.into(),
                kappa_dot: a.kappa_dot.into(),
                c1: a.c1.into(),
                c2: a.c2.into(),
                radius: Num(a.radius),
                signs: match signs {
                    SignPair::PlusMinus => "+-",
                    SignPair::MinusPlus => "-+",
                },
                scale: Num(cfg.scale),
                axes: grid
                    .axes
                    .iter()
                    .map(|ax| AxisOut {
                        param: ax.param.name(),
                        values: ax.values.iter().copied().map(Num).collect(),
                    })
                    .collect(),
            },
            rows: Some(
                rows.iter()
                    .map(|row| {
                        let g = |p: Param| Num(p.get(&row.point));
                        let parts = &row.parts;
                        WavefunctionRow {
                            x1: g(Param::X1),
                            x2: g(Param::X2),
                            x3: g(Param::X3),
                            x4: g(Param::X4),
                            phi: g(Param::Phi),
                            eps: g(Param::Eps),
                            theta: g(Param::Theta),
                            tau: g(Param::Tau),
                            phi2: g(Param::Phi2),
                            eps2: g(Param::Eps2),
                            psi: cx4(&parts.value.to_array()),
                            translation: cx4(&parts.translation),
                            lorentz: cx4(&parts.lorentz),
                            abs_psi: parts.value.to_array().map(|c| Num(c.norm())),
                            abs_factor_product: std::array::from_fn(|i| {
                                Num((parts.translation[i] * parts.lorentz[i]).norm())
                            }),
                        }
                    })
                    .collect(),
            ),
            report: None,
        })?,
        Format::Csv => {
            let mut header: Vec<String> = Param::ALL.iter().map(|p| p.name().to_string()).collect();
            header.extend(cx_cols("psi", 4));
            header.extend(cx_cols("translation", 4));
            header.extend(cx_cols("lorentz", 4));
            header.extend((1..=4).map(|i| format!("abs_psi{i}")));
            header.extend((1..=4).map(|i| format!("abs_factor_product{i}")));
            csv(
                &header,
                rows.iter().map(|row| {
                    let parts = &row.parts;
                    let mut out: Vec<String> = Param::ALL.iter().map(|p| format_num(p.get(&row.point))).collect();
                    out.extend(cx_vals(&parts.value.to_array()));
                    out.extend(cx_vals(&parts.translation));
                    out.extend(cx_vals(&parts.lorentz));
                    out.extend(parts.value.to_array().iter().map(|c| format_num(c.norm())));
                    out.extend((0..4).map(|i| format_num((parts.translation[i] * parts.lorentz[i]).norm())));
                    out
                }),
            )
        }
    };
    Ok(Output { text, status: EXIT_OK })
}

#[derive(Serialize)]
struct VerifyInputs {
    suite: String,
    tol: Option<Num>,
}

#[derive(Serialize)]
struct CheckOut {
    name: String,
    cases: usize,
    max_residual: Num,
    tolerance: Num,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct ReportOut {
    suite: String,
    cases: usize,
    max_residual: Num,
    tolerance: Num,
    passed: bool,
    elapsed: Option<Num>,
    checks: Vec<CheckOut>,
}

impl From<&RunReport> for ReportOut {
    fn from(r: &RunReport) -> Self {
        ReportOut {
            suite: r.suite.clone(),
            cases: r.cases,
            max_residual: Num(r.max_residual),
            tolerance: Num(r.tolerance),
            passed: r.passed,
            elapsed: r.elapsed.map(Num),
            checks: r
                .checks
                .iter()
                .map(|c| CheckOut {
                    name: c.name.clone(),
                    cases: c.cases,
                    max_residual: Num(c.max_residual),
                    tolerance: Num(c.tolerance),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}

fn cmd_verify(a: &VerifyArgs, format: Format) -> Result<Output, Failure> {
    if let Some(t) = a.tol {
        if !(t >= 0.0) {
            return Err(Failure::Usage(format!("--tol must be non-negative, got {t}")));
        }
    }
    let report = verify::run(
        a.suite,
        &VerifyOptions {
            tol: a.tol,
            timing: !a.no_timing,
        },
    );
    let status = if report.passed { EXIT_OK } else { EXIT_FAILED };
    let text = match format {
        Format::Json => json(&Document::<_, ()> {
            command: "verify",
            inputs: VerifyInputs {
                suite: a.suite.name().to_string(),
                tol: a.tol.map(Num),
            },
            rows: None,
            report: Some(ReportOut::from(&report)),
        })?,
        Format::Csv => {
            let header = ["check", "cases", "max_residual", "tolerance", "passed"].map(String::from);
            let rows = report
                .checks
                .iter()
                .map(|c| (c.name.clone(), c.cases, c.max_residual, c.tolerance, c.passed))
                .chain([(
                    format!("suite:{}", report.suite),
                    report.cases,
                    report.max_residual,
                    report.tolerance,
                    report.passed,
                )])
                .map(|(name, cases, res, tol, passed)| {
                    vec![name, cases.to_string(), format_num(res), format_num(tol), passed.to_string()]
                });
            csv(&header, rows)
        }
    };
    Ok(Output { text, status })
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Spinor(a) => cmd_spinor(a, cli.format),
        Command::Hypersph(a) => cmd_hypersph(a, cli.format),
        Command::Wavefunction(a) => cmd_wavefunction(a, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format),
    }
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> io::Result<()> {
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(text.as_bytes())?;
            w.flush()
        }
        None => stdout.write_all(text.as_bytes()),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };

    let result = match cli.threads {
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => dispatch(&cli),
    };

    match result {
        Ok(out) => match emit(&cli, &out.text, stdout) {
            Ok(()) => out.status,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
