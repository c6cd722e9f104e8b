//! Double-precision evaluation of the discriminant `Δ`, genus-2 theta
//! constants, `χ₁₀`, modular norms and the functions `β₁`, `β₂`.
//!
//! Values that can underflow along degenerations are carried as
//! [`ScaledComplex`], a mantissa together with a natural-log scale.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative asymmetry tolerated when building a [`SiegelPoint`].
pub const SYMMETRY_TOL: f64 = 1e-12;
/// The `Δ` product stops once `|q|^N` drops below this bound.
pub const DELTA_TAIL: f64 = 1e-18;
/// Theta terms smaller than `exp(-THETA_TAIL_LOG)` times the leading term
/// lie outside the summation box.
pub const THETA_TAIL_LOG: f64 = 40.0;

/// `mantissa · exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl ScaledComplex {
    pub fn new(mantissa: Complex64, log_scale: f64) -> Self {
        ScaledComplex {
            mantissa,
            log_scale,
        }
        .normalized()
    }

    pub fn from_complex(z: Complex64) -> Self {
        ScaledComplex::new(z, 0.0)
    }

    pub fn one() -> Self {
        ScaledComplex {
            mantissa: Complex64::new(1.0, 0.0),
            log_scale: 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == Complex64::new(0.0, 0.0)
    }

    /// `ln|value|`; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.mantissa.norm().ln() + self.log_scale
    }

    /// The plain value; may underflow to zero or overflow.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return self.mantissa;
        }
        let r = self.mantissa.norm();
        (self.mantissa / r) * (r.ln() + self.log_scale).exp()
    }

    pub fn powi(self, n: i32) -> Self {
        ScaledComplex {
            mantissa: self.mantissa.powi(n),
            log_scale: self.log_scale * n as f64,
        }
        .normalized()
    }

    fn normalized(self) -> Self {
        let r = self.mantissa.norm();
        if r == 0.0 || !r.is_finite() {
            return ScaledComplex {
                mantissa: self.mantissa,
                log_scale: if r == 0.0 { 0.0 } else { self.log_scale },
            };
        }
        ScaledComplex {
            mantissa: self.mantissa / r,
            log_scale: self.log_scale + r.ln(),
        }
    }
}

impl std::ops::Mul for ScaledComplex {
    type Output = ScaledComplex;
    fn mul(self, rhs: ScaledComplex) -> ScaledComplex {
        ScaledComplex {
            mantissa: self.mantissa * rhs.mantissa,
            log_scale: self.log_scale + rhs.log_scale,
        }
        .normalized()
    }
}

/// A point of the Siegel upper half space: complex symmetric with positive
/// definite imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    omega: DMatrix<Complex64>,
}

impl SiegelPoint {
    pub fn new(omega: DMatrix<Complex64>) -> Result<Self> {
        let n = omega.nrows();
        if n == 0 || omega.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n.max(1),
                found: omega.ncols(),
            });
        }
        let scale = omega.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut asym: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                asym = asym.max((omega[(i, j)] - omega[(j, i)]).norm());
            }
        }
        if !asym.is_finite()
            || asym > SYMMETRY_TOL * scale
            || omega.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NotSymmetric(asym));
        }
        let omega = (&omega + omega.transpose()).map(|z| z * 0.5);
        let im = omega.map(|z| z.im);
        if im.cholesky().is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(SiegelPoint { omega })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        SiegelPoint::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Genus one: `tau` in the upper half plane.
    pub fn scalar(tau: Complex64) -> Result<Self> {
        SiegelPoint::new(DMatrix::from_element(1, 1, tau))
    }

    pub fn diagonal(taus: &[Complex64]) -> Result<Self> {
        let n = taus.len();
        SiegelPoint::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                taus[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn genus(&self) -> usize {
        self.omega.nrows()
    }

    pub fn omega(&self) -> &DMatrix<Complex64> {
        &self.omega
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.omega[(i, j)]
    }

    pub fn imag(&self) -> DMatrix<f64> {
        self.omega.map(|z| z.im)
    }

    pub fn det_im(&self) -> f64 {
        self.imag().determinant()
    }

    pub fn min_im_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.imag()).eigenvalues.min()
    }

    /// `-Ω⁻¹`.
    pub fn inverse_swap(&self) -> Result<Self> {
        let inv = self
            .omega
            .clone()
            .try_inverse()
            .ok_or(Error::NotPositiveDefinite)?;
        SiegelPoint::new(-inv)
    }

    /// `Ω + B` for an integer symmetric `B`.
    pub fn translate(&self, b: &[Vec<i64>]) -> Result<Self> {
        let n = self.genus();
        if b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        SiegelPoint::new(DMatrix::from_fn(n, n, |i, j| {
            self.omega[(i, j)] + b[i][j] as f64
        }))
    }

    fn require_genus(&self, g: usize) -> Result<()> {
        if self.genus() != g {
            return Err(Error::DimensionMismatch {
                expected: g,
                found: self.genus(),
            });
        }
        Ok(())
    }
}

/// Serialized row-major as `[[re, im], ...]`.
impl Serialize for SiegelPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.genus();
        let flat: Vec<[f64; 2]> = (0..n * n)
            .map(|k| self.omega[(k / n, k % n)])
            .map(|z| [z.re, z.im])
            .collect();
        flat.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SiegelPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let flat = Vec::<[f64; 2]>::deserialize(d)?;
        let n = (flat.len() as f64).sqrt().round() as usize;
        if n * n != flat.len() || n == 0 {
            return Err(de::Error::custom(format!(
                "{} entries do not form a square matrix",
                flat.len()
            )));
        }
        SiegelPoint::new(DMatrix::from_fn(n, n, |i, j| {
            let [re, im] = flat[i * n + j];
            Complex64::new(re, im)
        }))
        .map_err(de::Error::custom)
    }
}

/// A genus-2 half-integer characteristic. Entries of `a` and `b` are stored
/// in units of ½, so each is 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaCharacteristic {
    a: [u8; 2],
    b: [u8; 2],
}

impl ThetaCharacteristic {
    pub fn new(a: [u8; 2], b: [u8; 2]) -> Result<Self> {
        if a.iter().chain(&b).any(|&x| x > 1) {
            return Err(Error::Domain(
                "characteristic entries are 0 or 1 (units of 1/2)".into(),
            ));
        }
        Ok(ThetaCharacteristic { a, b })
    }

    pub fn a(&self) -> [f64; 2] {
        self.a.map(|x| x as f64 * 0.5)
    }

    pub fn b(&self) -> [f64; 2] {
        self.b.map(|x| x as f64 * 0.5)
    }

    /// `4 a·b ≡ 0 mod 2`.
    pub fn is_even(&self) -> bool {
        (self.a[0] * self.b[0] + self.a[1] * self.b[1]).is_multiple_of(2)
    }
}

impl fmt::Display for ThetaCharacteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}{};{}{}]", self.a[0], self.a[1], self.b[0], self.b[1])
    }
}

/// The 10 even characteristics, ordered by the 4-bit word `a₁a₂b₁b₂`
/// (units of ½, most significant first).
pub fn even_characteristics() -> Vec<ThetaCharacteristic> {
    (0u8..16)
        .map(|k| ThetaCharacteristic {
            a: [k >> 3 & 1, k >> 2 & 1],
            b: [k >> 1 & 1, k & 1],
        })
        .filter(ThetaCharacteristic::is_even)
        .collect()
}

/// Number of factors of `∏(1 - qⁿ)` kept at `tau`.
pub fn delta_terms(tau: Complex64) -> Result<usize> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain(format!(
            "Im tau = {} must be positive",
            tau.im
        )));
    }
    let log_q = -2.0 * PI * tau.im;
    Ok(((DELTA_TAIL.ln() / log_q).ceil() as usize).max(1))
}

/// `(2π)¹² q ∏_{n=1}^{terms} (1 - qⁿ)²⁴`, `q = e^{2πiτ}`.
pub fn dedekind_delta_scaled_truncated(tau: Complex64, terms: usize) -> Result<ScaledComplex> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain(format!(
            "Im tau = {} must be positive",
            tau.im
        )));
    }
    let q = (Complex64::i() * 2.0 * PI * tau).exp();
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = q;
    for _ in 0..terms {
        prod *= Complex64::new(1.0, 0.0) - qn;
        qn *= q;
    }
    let phase = Complex64::from_polar(1.0, 2.0 * PI * tau.re);
    Ok(
        ScaledComplex::new(phase, 12.0 * (2.0 * PI).ln() - 2.0 * PI * tau.im)
            * ScaledComplex::from_complex(prod).powi(24),
    )
}

pub fn dedekind_delta_scaled(tau: Complex64) -> Result<ScaledComplex> {
    dedekind_delta_scaled_truncated(tau, delta_terms(tau)?)
}

pub fn dedekind_delta_truncated(tau: Complex64, terms: usize) -> Result<Complex64> {
    dedekind_delta_scaled_truncated(tau, terms).map(|d| d.to_complex())
}

pub fn dedekind_delta(tau: Complex64) -> Result<Complex64> {
    dedekind_delta_scaled(tau).map(|d| d.to_complex())
}

fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Box half-width used for `theta_constant` at `omega`.
pub fn theta_radius(ch: ThetaCharacteristic, omega: &SiegelPoint) -> Result<i64> {
    omega.require_genus(2)?;
    let y = omega.imag();
    let a = ch.a();
    let lead =
        PI * (a[0] * a[0] * y[(0, 0)] + 2.0 * a[0] * a[1] * y[(0, 1)] + a[1] * a[1] * y[(1, 1)]);
    let lambda = omega.min_im_eigenvalue();
    Ok(((THETA_TAIL_LOG + lead) / (PI * lambda)).sqrt().ceil() as i64 + 1)
}

/// `Σ_{m ∈ Z² + a} exp(πi mᵀΩm + 2πi m·b)` over `|mᵢ| ≤ radius + ½`.
///
/// Terms `m` and `(-m₁, m₂)` are summed together in closed form. The phase
/// `e^{2πi m·b}` is a power of `i`, so the `Ω₁₂` dependence reduces to an
/// exact `cos` or `sin`; the odd-type pairs therefore vanish exactly on
/// diagonal `Ω` and lose no relative accuracy as `Ω₁₂ → 0`.
pub fn theta_constant_scaled_with_radius(
    ch: ThetaCharacteristic,
    omega: &SiegelPoint,
    radius: i64,
) -> Result<ScaledComplex> {
    omega.require_genus(2)?;
    if !ch.is_even() {
        return Err(Error::OddCharacteristic);
    }
    let (w11, w12, w22) = (omega.get(0, 0), omega.get(0, 1), omega.get(1, 1));
    let [a1, a2] = ch.a.map(i64::from);
    let [b1, b2] = ch.b.map(i64::from);
    let top = 2 * radius + 1;
    // Doubled coordinates M = 2m with the parity of the characteristic.
    let m1s: Vec<i64> = (a1..=top).step_by(2).collect();
    let m2s: Vec<i64> = (-top..=top)
        .filter(|m| (m - a2).rem_euclid(2) == 0)
        .collect();
    let mut terms = Vec::with_capacity(m1s.len() * m2s.len());
    for &big1 in &m1s {
        for &big2 in &m2s {
            let (m1, m2) = (big1 as f64 * 0.5, big2 as f64 * 0.5);
            let e = Complex64::i() * PI * (w11 * (m1 * m1) + w22 * (m2 * m2));
            let phase2 = i_pow(big2 * b2);
            let factor = if big1 == 0 {
                phase2
            } else {
                let w = w12 * (2.0 * PI * m1 * m2);
                let pair = match (big1 * b1).rem_euclid(4) {
                    0 => w.cos() * 2.0,
                    1 => -w.sin() * 2.0,
                    2 => -w.cos() * 2.0,
                    _ => w.sin() * 2.0,
                };
                phase2 * pair
            };
            terms.push((e, factor));
        }
    }
    let reference = terms
        .iter()
        .map(|(e, _)| e.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let sum: Complex64 = terms.iter().map(|(e, f)| (e - reference).exp() * f).sum();
    Ok(ScaledComplex::new(sum, reference))
}

pub fn theta_constant_scaled(
    ch: ThetaCharacteristic,
    omega: &SiegelPoint,
) -> Result<ScaledComplex> {
    theta_constant_scaled_with_radius(ch, omega, theta_radius(ch, omega)?)
}

pub fn theta_constant(ch: ThetaCharacteristic, omega: &SiegelPoint) -> Result<Complex64> {
    theta_constant_scaled(ch, omega).map(|t| t.to_complex())
}

/// `∏_{α even} θ_α(0; Ω)²`.
pub fn chi10_scaled(omega: &SiegelPoint) -> Result<ScaledComplex> {
    even_characteristics()
        .into_iter()
        .try_fold(ScaledComplex::one(), |acc, ch| {
            Ok(acc * theta_constant_scaled(ch, omega)?.powi(2))
        })
}

pub fn chi10(omega: &SiegelPoint) -> Result<Complex64> {
    chi10_scaled(omega).map(|c| c.to_complex())
}

/// The value of a weight-`k` modular form at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularValue {
    pub value: Complex64,
    pub weight: Rational64,
    pub point: SiegelPoint,
}

impl ModularValue {
    pub fn new(value: Complex64, weight: Rational64, point: SiegelPoint) -> Result<Self> {
        if weight <= Rational64::from_integer(0) {
            return Err(Error::Domain(format!("weight {weight} must be positive")));
        }
        Ok(ModularValue {
            value,
            weight,
            point,
        })
    }
}

fn weight_f64(k: Rational64) -> f64 {
    k.to_f64().expect("finite rational")
}

/// `ln(|F| · (det Im Ω)^{k/2})` for a possibly tiny `F`.
pub fn modular_log_norm(
    value: ScaledComplex,
    weight: Rational64,
    point: &SiegelPoint,
) -> Result<f64> {
    let det = point.det_im();
    if !(det > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    if value.is_zero() {
        return Err(Error::LogOfZero);
    }
    Ok(value.ln_abs() + 0.5 * weight_f64(weight) * det.ln())
}

/// `‖F(Ω)‖ = |F(Ω)| (det Im Ω)^{k/2}`.
pub fn modular_norm(v: &ModularValue) -> Result<f64> {
    let det = v.point.det_im();
    if !(det > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(v.value.norm() * det.powf(0.5 * weight_f64(v.weight)))
}

impl Serialize for ModularValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let norm = modular_norm(self).map_err(serde::ser::Error::custom)?;
        let mut st = s.serialize_struct("ModularValue", 3)?;
        st.serialize_field("omega", &self.point)?;
        st.serialize_field("value", &[self.value.re, self.value.im])?;
        st.serialize_field("norm", &norm)?;
        st.end()
    }
}

/// `β₁ = -log ‖Δ(τ)‖`.
pub fn beta1(tau: Complex64) -> Result<f64> {
    let point = SiegelPoint::scalar(tau)?;
    let log_norm = modular_log_norm(
        dedekind_delta_scaled(tau)?,
        Rational64::from_integer(12),
        &point,
    )?;
    Ok(-log_norm)
}

/// `β₂ = -2 log ‖χ₁₀(Ω)‖`.
pub fn beta2(omega: &SiegelPoint) -> Result<f64> {
    let log_norm = modular_log_norm(chi10_scaled(omega)?, Rational64::from_integer(10), omega)?;
    Ok(-2.0 * log_norm)
}
