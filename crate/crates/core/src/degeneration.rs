//! Degenerating period matrices, sample sweeps along them, least-squares
//! fits of the shape `a·log|t| + b·log log(1/|t|) + c`, and the boundary
//! coefficient tables compared against the Faltings delta invariant.
//!
//! Samples carry `log|t|` rather than `t`: along `t = e^{-x}` with `x` in
//! the thousands, `t` itself is not representable.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{beta1, beta2, chi10_scaled, SiegelPoint};
use crate::symplectic::Genus;

pub const DEFAULT_X_MIN: f64 = 20.0;
pub const DEFAULT_X_MAX: f64 = 2000.0;
pub const DEFAULT_X_COUNT: usize = 40;
pub const DEFAULT_FAY_OMEGA0: Complex64 = Complex64::new(0.0, 1.2);
pub const DEFAULT_FAY_V: Complex64 = Complex64::new(0.2, 0.0);
pub const DEFAULT_TAU1: Complex64 = Complex64::new(0.0, 1.1);
pub const DEFAULT_TAU2: Complex64 = Complex64::new(0.0, 1.3);
pub const DEFAULT_K_MIN: u32 = 3;
pub const DEFAULT_K_MAX: u32 = 12;
/// Condition number of the scaled design above which a fit is refused.
pub const MAX_CONDITION: f64 = 1e12;
pub const MIN_FIT_SAMPLES: usize = 8;
pub const MIN_FIT_DECADES: f64 = 4.0;

/// `[[Ω₀, vᵀ], [v, log t / 2πi]]` given `log|t|` and `arg t`.
pub fn fay_period_matrix_log(
    omega0: &SiegelPoint,
    v: &[Complex64],
    log_abs_t: f64,
    arg_t: f64,
) -> Result<SiegelPoint> {
    let n = omega0.genus();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if !(log_abs_t < 0.0) {
        return Err(Error::Domain(format!(
            "need 0 < |t| < 1, got log|t| = {log_abs_t}"
        )));
    }
    let corner = Complex64::new(log_abs_t, arg_t) / (Complex64::i() * 2.0 * PI);
    let omega = DMatrix::from_fn(n + 1, n + 1, |i, j| match (i < n, j < n) {
        (true, true) => omega0.get(i, j),
        (true, false) => v[i],
        (false, true) => v[j],
        (false, false) => corner,
    });
    SiegelPoint::new(omega)
}

pub fn fay_period_matrix(
    omega0: &SiegelPoint,
    v: &[Complex64],
    t: Complex64,
) -> Result<SiegelPoint> {
    if t.norm() == 0.0 {
        return Err(Error::Domain("t = 0 is the boundary point".into()));
    }
    fay_period_matrix_log(omega0, v, t.norm().ln(), t.arg())
}

/// `[[τ₁, t], [t, τ₂]]`.
pub fn reducible_period_matrix(
    tau1: Complex64,
    tau2: Complex64,
    t: Complex64,
) -> Result<SiegelPoint> {
    SiegelPoint::from_rows(&[vec![tau1, t], vec![t, tau2]])
}

/// `½ log det Im Ω`, the log of the Hodge norm of `w₁∧…∧w_g`.
pub fn hodge_norm_log(omega: &SiegelPoint) -> f64 {
    0.5 * omega.det_im().ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub log_abs_t: f64,
    pub value: f64,
}

impl Sample {
    pub fn new(log_abs_t: f64, value: f64) -> Self {
        Sample { log_abs_t, value }
    }

    pub fn from_t(t: f64, value: f64) -> Self {
        Sample {
            log_abs_t: t.abs().ln(),
            value,
        }
    }

    /// `log log(1/|t|)`.
    pub fn loglog(&self) -> f64 {
        (-self.log_abs_t).ln()
    }

    /// `|t|` in decimal scientific notation, exact in the exponent even
    /// when the value underflows `f64`.
    pub fn t_string(&self) -> String {
        let l10 = self.log_abs_t / std::f64::consts::LN_10;
        let mut e = l10.floor();
        let mut m = 10f64.powf(l10 - e);
        if m >= 9.999_999_999_5 {
            m /= 10.0;
            e += 1.0;
        }
        format!("{m:.10}e{}", e as i64)
    }

    /// CSV fields `t, log_t, loglog_t, value`.
    pub fn csv_record(&self) -> [String; 4] {
        [
            self.t_string(),
            self.log_abs_t.to_string(),
            self.loglog().to_string(),
            self.value.to_string(),
        ]
    }
}

pub const CSV_HEADER: [&str; 4] = ["t", "log_t", "loglog_t", "value"];

/// Which basis functions enter a fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitTerms {
    pub log: bool,
    pub loglog: bool,
    pub constant: bool,
}

impl FitTerms {
    pub const FULL: FitTerms = FitTerms {
        log: true,
        loglog: true,
        constant: true,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticFit {
    pub coeff_log: f64,
    pub coeff_loglog: f64,
    pub coeff_const: f64,
    /// Maximum absolute deviation of the fitted curve from the samples.
    pub residual: f64,
}

impl AsymptoticFit {
    pub fn eval(&self, s: &Sample) -> f64 {
        self.coeff_log * s.log_abs_t + self.coeff_loglog * s.loglog() + self.coeff_const
    }
}

fn check_samples(samples: &[Sample]) -> Result<()> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientSamples(format!(
            "{} samples, need {MIN_FIT_SAMPLES}",
            samples.len()
        )));
    }
    if let Some(s) = samples
        .iter()
        .find(|s| !(s.log_abs_t < 0.0) || !s.value.is_finite())
    {
        return Err(Error::Domain(format!(
            "sample needs 0 < |t| < 1 and a finite value: {s:?}"
        )));
    }
    let lo = samples
        .iter()
        .map(|s| s.log_abs_t)
        .fold(f64::INFINITY, f64::min);
    let hi = samples
        .iter()
        .map(|s| s.log_abs_t)
        .fold(f64::NEG_INFINITY, f64::max);
    let decades = (hi - lo) / std::f64::consts::LN_10;
    if decades < MIN_FIT_DECADES {
        return Err(Error::InsufficientSamples(format!(
            "samples span {decades:.3} decades, need {MIN_FIT_DECADES}"
        )));
    }
    Ok(())
}

/// Least squares for `value ≈ a·log|t| + b·log log(1/|t|) + c`.
pub fn fit_asymptotics(samples: &[Sample]) -> Result<AsymptoticFit> {
    fit_asymptotics_with(samples, FitTerms::FULL)
}

/// As [`fit_asymptotics`] restricted to the chosen terms; disabled
/// coefficients are reported as zero.
pub fn fit_asymptotics_with(samples: &[Sample], terms: FitTerms) -> Result<AsymptoticFit> {
    check_samples(samples)?;
    let mut raw: Vec<Vec<f64>> = Vec::new();
    if terms.log {
        raw.push(samples.iter().map(|s| s.log_abs_t).collect());
    }
    if terms.loglog {
        raw.push(samples.iter().map(Sample::loglog).collect());
    }
    if raw.is_empty() && !terms.constant {
        return Err(Error::Domain("no fit terms selected".into()));
    }
    let n = samples.len();
    // Center (when a constant is present) and scale each column.
    let stats: Vec<(f64, f64)> = raw
        .iter()
        .map(|col| {
            let mean = if terms.constant {
                col.iter().sum::<f64>() / n as f64
            } else {
                0.0
            };
            let spread = (col.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
            (mean, if spread > 0.0 { spread } else { 1.0 })
        })
        .collect();
    let k = raw.len() + terms.constant as usize;
    let design = DMatrix::from_fn(n, k, |i, j| match raw.get(j) {
        Some(col) => (col[i] - stats[j].0) / stats[j].1,
        None => 1.0,
    });
    let y = DVector::from_iterator(n, samples.iter().map(|s| s.value));
    let svd = design.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::RankDeficient(condition));
    }
    let beta = svd
        .solve(&y, 0.0)
        .map_err(|e| Error::Domain(e.to_string()))?;
    let mut coeffs = beta
        .iter()
        .take(raw.len())
        .zip(&stats)
        .map(|(b, (_, sd))| b / sd);
    let mut fit = AsymptoticFit {
        coeff_log: 0.0,
        coeff_loglog: 0.0,
        coeff_const: 0.0,
        residual: 0.0,
    };
    if terms.log {
        fit.coeff_log = coeffs.next().expect("log column");
    }
    if terms.loglog {
        fit.coeff_loglog = coeffs.next().expect("loglog column");
    }
    if terms.constant {
        let shift: f64 = raw
            .iter()
            .enumerate()
            .map(|(j, _)| beta[j] / stats[j].1 * stats[j].0)
            .sum();
        fit.coeff_const = beta[k - 1] - shift;
    }
    fit.residual = samples
        .iter()
        .map(|s| (fit.eval(s) - s.value).abs())
        .fold(0.0, f64::max);
    Ok(fit)
}

/// Least-squares slope of `value = log|F|` against `log|t|`: the order of
/// vanishing of `F` along the path.
pub fn vanishing_order_slope(samples: &[Sample]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InsufficientSamples(format!(
            "{} samples, need 2",
            samples.len()
        )));
    }
    if samples
        .iter()
        .any(|s| !s.log_abs_t.is_finite() || !s.value.is_finite())
    {
        return Err(Error::Domain("non-finite sample".into()));
    }
    let n = samples.len() as f64;
    let mx = samples.iter().map(|s| s.log_abs_t).sum::<f64>() / n;
    let my = samples.iter().map(|s| s.value).sum::<f64>() / n;
    let sxx: f64 = samples.iter().map(|s| (s.log_abs_t - mx).powi(2)).sum();
    let sxy: f64 = samples
        .iter()
        .map(|s| (s.log_abs_t - mx) * (s.value - my))
        .sum();
    if !(sxx > 1e-24 * (1.0 + mx * mx)) {
        return Err(Error::InsufficientSamples(
            "all samples share one value of |t|".into(),
        ));
    }
    Ok(sxy / sxx)
}

/// `count` values log-spaced over `[min, max]`, increasing.
pub fn log_spaced(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max > min && count >= 2) {
        return Err(Error::Domain(format!(
            "bad log-spaced range [{min}, {max}] x {count}"
        )));
    }
    let (a, b) = (min.ln(), max.ln());
    Ok((0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect())
}

/// `log|t|` for `t = e^{-x}`.
pub fn exponential_schedule(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|x| -x).collect()
}

/// `log|t|` for `t = 10^{-k}`, `k` from `k_min` to `k_max` in steps of
/// `1/per_decade`.
pub fn decade_schedule(k_min: u32, k_max: u32, per_decade: u32) -> Result<Vec<f64>> {
    if k_max <= k_min || per_decade == 0 {
        return Err(Error::Domain(format!(
            "bad decade schedule {k_min}..{k_max} / {per_decade}"
        )));
    }
    let steps = (k_max - k_min) * per_decade;
    Ok((0..=steps)
        .map(|s| -(k_min as f64 + s as f64 / per_decade as f64) * std::f64::consts::LN_10)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub enum PathKind {
    /// Fay plumbing with corner `log t / 2πi`, `t` real positive.
    IrreducibleNode {
        omega0: SiegelPoint,
        v: Vec<Complex64>,
    },
    /// `[[τ₁, t], [t, τ₂]]` with `t` real positive.
    ReducibleNode { tau1: Complex64, tau2: Complex64 },
}

/// A family `Ω(t_k)` along a strictly decreasing sequence `t_k ∈ (0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerationPath {
    kind: PathKind,
    log_abs_t: Vec<f64>,
    points: Vec<SiegelPoint>,
}

impl DegenerationPath {
    pub fn new(kind: PathKind, log_abs_t: Vec<f64>) -> Result<Self> {
        if log_abs_t.iter().any(|l| !(*l < 0.0)) {
            return Err(Error::Domain("path parameters must lie in (0, 1)".into()));
        }
        if log_abs_t.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::Domain(
                "path parameters must be strictly decreasing".into(),
            ));
        }
        let points = log_abs_t
            .iter()
            .map(|&l| match &kind {
                PathKind::IrreducibleNode { omega0, v } => fay_period_matrix_log(omega0, v, l, 0.0),
                PathKind::ReducibleNode { tau1, tau2 } => {
                    reducible_period_matrix(*tau1, *tau2, Complex64::new(l.exp(), 0.0))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DegenerationPath {
            kind,
            log_abs_t,
            points,
        })
    }

    pub fn fay(omega0: SiegelPoint, v: Vec<Complex64>, log_abs_t: Vec<f64>) -> Result<Self> {
        DegenerationPath::new(PathKind::IrreducibleNode { omega0, v }, log_abs_t)
    }

    pub fn reducible(tau1: Complex64, tau2: Complex64, log_abs_t: Vec<f64>) -> Result<Self> {
        DegenerationPath::new(PathKind::ReducibleNode { tau1, tau2 }, log_abs_t)
    }

    /// The genus-2 Fay path through `Ω₀ = 1.2i`, `v = 0.2`.
    pub fn default_fay(log_abs_t: Vec<f64>) -> Result<Self> {
        DegenerationPath::fay(
            SiegelPoint::scalar(DEFAULT_FAY_OMEGA0)?,
            vec![DEFAULT_FAY_V],
            log_abs_t,
        )
    }

    pub fn kind(&self) -> &PathKind {
        &self.kind
    }

    pub fn log_abs_t(&self) -> &[f64] {
        &self.log_abs_t
    }

    pub fn points(&self) -> &[SiegelPoint] {
        &self.points
    }

    /// Evaluates `f` at every point, in path order.
    pub fn sweep(&self, f: impl Fn(&SiegelPoint) -> Result<f64>) -> Result<Vec<Sample>> {
        self.log_abs_t
            .iter()
            .zip(&self.points)
            .map(|(&l, p)| Ok(Sample::new(l, f(p)?)))
            .collect()
    }

    pub fn beta2_samples(&self) -> Result<Vec<Sample>> {
        self.sweep(beta2)
    }

    /// `log|χ₁₀|` along the path.
    pub fn chi10_log_samples(&self) -> Result<Vec<Sample>> {
        self.sweep(|p| {
            let c = chi10_scaled(p)?;
            if c.is_zero() {
                return Err(Error::LogOfZero);
            }
            Ok(c.ln_abs())
        })
    }

    pub fn hodge_samples(&self) -> Result<Vec<Sample>> {
        self.sweep(|p| Ok(hodge_norm_log(p)))
    }
}

/// `β₁` in the genus-1 degeneration `q = t`, i.e. `τ = log t / 2πi`.
pub fn beta1_samples(log_abs_t: &[f64]) -> Result<Vec<Sample>> {
    log_abs_t
        .iter()
        .map(|&l| {
            if !(l < 0.0) {
                return Err(Error::Domain(format!("need 0 < |t| < 1, got log|t| = {l}")));
            }
            Ok(Sample::new(l, beta1(Complex64::new(0.0, -l / (2.0 * PI)))?))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Delta0,
    DeltaH(u32),
}

impl Boundary {
    fn check(self, genus: Genus) -> Result<()> {
        match self {
            Boundary::DeltaH(h) if h == 0 || h >= genus.get() => {
                Err(Error::InvalidSplit { g: genus.get(), h })
            }
            _ => Ok(()),
        }
    }

    /// `δ₀, δ₁, …, δ_{[g/2]}`.
    pub fn all(genus: Genus) -> Vec<Boundary> {
        std::iter::once(Boundary::Delta0)
            .chain((1..=genus.get() / 2).map(Boundary::DeltaH))
            .collect()
    }
}

fn pair(a: i64, b: i64) -> (BigRational, BigRational) {
    (
        BigRational::from_integer(BigInt::from(a)),
        BigRational::from_integer(BigInt::from(b)),
    )
}

/// Coefficients of `(log|t|, log log(1/|t|))` in the asymptotics of `3g·δ_g`.
pub fn faltings_reference(genus: Genus, boundary: Boundary) -> Result<(BigRational, BigRational)> {
    genus.require(2)?;
    boundary.check(genus)?;
    let g = genus.get() as i64;
    Ok(match boundary {
        Boundary::Delta0 => pair(-(4 * g - 1), -18),
        Boundary::DeltaH(h) => pair(-12 * h as i64 * (g - h as i64), 0),
    })
}

/// Coefficients of `(log|t|, log log(1/|t|))` in the asymptotics of `β_g`.
pub fn beta_reference(genus: Genus, boundary: Boundary) -> Result<(BigRational, BigRational)> {
    boundary.check(genus)?;
    let g = genus.get() as i64;
    Ok(match boundary {
        Boundary::Delta0 => pair(-g, -(4 * g + 2)),
        Boundary::DeltaH(h) => pair(-4 * h as i64 * (g - h as i64), 0),
    })
}

/// Whether one vector is a scalar multiple of the other (all 2×2 minors vanish).
pub fn proportional(a: &[BigRational], b: &[BigRational]) -> bool {
    assert_eq!(a.len(), b.len(), "vectors of different lengths");
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()))
}

/// True when the boundary coefficient vectors of `β_g` and `3g·δ_g`, taken
/// over `δ₀, …, δ_{[g/2]}`, are not proportional.
pub fn incommensurability_check(genus: Genus) -> Result<bool> {
    genus.require(3)?;
    let mut beta = Vec::new();
    let mut faltings = Vec::new();
    for b in Boundary::all(genus) {
        let (l, ll) = beta_reference(genus, b)?;
        beta.extend([l, ll]);
        let (l, ll) = faltings_reference(genus, b)?;
        faltings.extend([l, ll]);
    }
    Ok(!proportional(&beta, &faltings))
}
