//! The central extension `G_Z = V_Z × Z` twisted by `q`, its commutators, the
//! central charge of a separating Dehn twist, and the flat model of the
//! biextension log-norm on a fiber.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{
    j_map, q_form, vclass_equal, wedge_with_partial_theta, Genus, HVector, VClass, Wedge3,
};

/// An element `(v, n)` of `G_Z` with `(u,n)·(v,m) = (u+v, n+m+q(u,v))`.
#[derive(Debug, Clone)]
pub struct GZElement {
    pub v: VClass,
    pub n: BigInt,
}

impl GZElement {
    pub fn new(v: VClass, n: BigInt) -> Result<Self> {
        v.genus().require(3)?;
        Ok(GZElement { v, n })
    }

    pub fn identity(genus: Genus) -> Self {
        GZElement {
            v: VClass::zero(genus),
            n: BigInt::zero(),
        }
    }

    pub fn genus(&self) -> Genus {
        self.v.genus()
    }

    pub fn inverse(&self) -> Self {
        GZElement {
            v: -&self.v,
            n: -&self.n,
        }
    }

    pub fn is_central(&self) -> Result<bool> {
        vclass_equal(&self.v, &VClass::zero(self.genus()))
    }

    /// Equality in `G_Z`: same coset in `V` and same central coordinate.
    pub fn equals(&self, other: &GZElement) -> Result<bool> {
        Ok(self.n == other.n && vclass_equal(&self.v, &other.v)?)
    }
}

pub fn gz_mul(a: &GZElement, b: &GZElement) -> Result<GZElement> {
    if a.genus() != b.genus() {
        return Err(Error::GenusMismatch {
            left: a.genus().get(),
            right: b.genus().get(),
        });
    }
    let twist = q_form(&a.v, &b.v)?;
    Ok(GZElement {
        v: &a.v + &b.v,
        n: &a.n + &b.n + twist,
    })
}

/// `[a, b] = a b a⁻¹ b⁻¹`.
pub fn gz_commutator(a: &GZElement, b: &GZElement) -> Result<GZElement> {
    let ab = gz_mul(a, b)?;
    let aba = gz_mul(&ab, &a.inverse())?;
    gz_mul(&aba, &b.inverse())
}

#[derive(Serialize, Deserialize)]
struct GZRepr {
    v: Wedge3,
    n: String,
}

impl Serialize for GZElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GZRepr {
            v: self.v.lift().clone(),
            n: self.n.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GZElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GZRepr::deserialize(d)?;
        let n = repr
            .n
            .trim()
            .parse::<BigInt>()
            .map_err(serde::de::Error::custom)?;
        GZElement::new(VClass::new(repr.v), n).map_err(serde::de::Error::custom)
    }
}

/// A separating simple closed curve cutting genus `g` into `h` and `g - h`.
///
/// The genus-`h` side carries the symplectic pairs `1..=h`, the other side
/// the pairs `h+1..=g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingCurve {
    genus: Genus,
    h: u32,
}

impl SeparatingCurve {
    pub fn new(genus: Genus, h: u32) -> Result<Self> {
        genus.require(3)?;
        if h == 0 || h >= genus.get() {
            return Err(Error::InvalidSplit { g: genus.get(), h });
        }
        Ok(SeparatingCurve { genus, h })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn complement(&self) -> Self {
        SeparatingCurve {
            genus: self.genus,
            h: self.genus.get() - self.h,
        }
    }

    /// Symplectic pair indices (0-based) on the genus-`h` side.
    pub fn first_side(&self) -> std::ops::Range<usize> {
        0..self.h as usize
    }

    pub fn second_side(&self) -> std::ops::Range<usize> {
        self.h as usize..self.genus.get() as usize
    }
}

/// `Σ_{j ∈ side} q(a_j∧w_side, b_j∧w_side)` where `w_side = Σ_{j ∈ side} a_j∧b_j`.
pub fn block_q_sum(genus: Genus, side: std::ops::Range<usize>) -> Result<BigInt> {
    side.clone()
        .map(|j| {
            let aw = VClass::new(wedge_with_partial_theta(
                &HVector::a(genus, j),
                side.clone(),
            ));
            let bw = VClass::new(wedge_with_partial_theta(
                &HVector::b(genus, j),
                side.clone(),
            ));
            q_form(&aw, &bw)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralCharge {
    /// The central charge, `4h(g-h)`.
    #[serde(serialize_with = "crate::json::big_as_number")]
    pub tau: BigInt,
    /// Genus of the subsurface the sum was taken over.
    pub side_genus: u32,
    /// The block sum `S = Σ_j q(a_j∧w', b_j∧w')`.
    #[serde(serialize_with = "crate::json::big_as_number")]
    pub block_sum: BigInt,
}

/// `τ̂(σ_h) = 8 S / (2k - 2)` with `S` the block sum over a side of genus `k`.
///
/// The scale factor is singular when `k = 1`; a genus-1 side is replaced by
/// its complement of genus `g - 1 >= 2`, which bounds the same curve.
pub fn dehn_twist_central_charge(curve: &SeparatingCurve) -> Result<CentralCharge> {
    let (k, side) = if curve.h >= 2 {
        (curve.h, curve.first_side())
    } else {
        (curve.genus.get() - curve.h, curve.second_side())
    };
    central_charge_on_side(curve.genus, k, side)
}

/// Evaluate the central charge using the side of genus `k` given by `side`.
pub fn central_charge_on_side(
    genus: Genus,
    k: u32,
    side: std::ops::Range<usize>,
) -> Result<CentralCharge> {
    if k < 2 || side.len() != k as usize {
        return Err(Error::InvalidSplit {
            g: genus.get(),
            h: k,
        });
    }
    let s = block_q_sum(genus, side)?;
    let divisor = BigInt::from(2 * k - 2);
    let (tau, r) = (&s * 8u32).div_rem(&divisor);
    if !r.is_zero() {
        return Err(Error::InexactDivision {
            divisor: divisor.to_string(),
        });
    }
    Ok(CentralCharge {
        tau,
        side_genus: k,
        block_sum: s,
    })
}

/// Checks `j(x∧w') = (g-h) x∧w' - (h-1) x∧w''` for `x` in the genus-`h` block.
pub fn j_split_identity_check(genus: Genus, h: u32, x: &HVector) -> Result<bool> {
    genus.require(2)?;
    if x.genus() != genus {
        return Err(Error::GenusMismatch {
            left: genus.get(),
            right: x.genus().get(),
        });
    }
    if h == 0 || h > genus.get() {
        return Err(Error::InvalidSplit { g: genus.get(), h });
    }
    if !x.supported_on_block(h as usize) {
        return Err(Error::OutsideBlock { h });
    }
    let g = genus.get();
    let xw1 = wedge_with_partial_theta(x, 0..h as usize);
    let xw2 = wedge_with_partial_theta(x, h as usize..g as usize);
    let lhs = j_map(&VClass::new(xw1.clone()))?;
    let rhs = &xw1.scale(&BigInt::from(g - h)) - &xw2.scale(&BigInt::from(h - 1));
    Ok(lhs == rhs)
}

/// A point `(z, u)` with `z, u ∈ C^n` on a fiber of the biextension torus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberPoint {
    pub z: Vec<Complex64>,
    pub u: Vec<Complex64>,
}

impl FiberPoint {
    pub fn new(z: Vec<Complex64>, u: Vec<Complex64>) -> Result<Self> {
        if z.len() != u.len() {
            return Err(Error::DimensionMismatch {
                expected: z.len(),
                found: u.len(),
            });
        }
        Ok(FiberPoint { z, u })
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn swapped(&self) -> Self {
        FiberPoint {
            z: self.u.clone(),
            u: self.z.clone(),
        }
    }
}

/// `log|s|² = 2πi Σ_j (z_j ū_j - u_j z̄_j)`, which is real.
pub fn fiber_log_norm(p: &FiberPoint) -> f64 {
    let s: Complex64 =
        p.z.iter()
            .zip(&p.u)
            .map(|(z, u)| z * u.conj() - u * z.conj())
            .sum();
    (Complex64::new(0.0, 2.0 * PI) * s).re
}

/// Matrix of `(1/2πi) ∂²f/∂w_a∂w̄_b` for `w = (z_1..z_n, u_1..u_n)`, by
/// central differences on the real coordinates.
pub fn curvature_matrix(p: &FiberPoint, step: f64) -> Result<Vec<Vec<Complex64>>> {
    if !(step > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    let n = p.dim();
    // Real coordinates: index 2a is Re w_a, 2a+1 is Im w_a.
    let base: Vec<f64> = p.z.iter().chain(&p.u).flat_map(|w| [w.re, w.im]).collect();
    let eval = |r: &[f64]| {
        let w: Vec<Complex64> = r.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
        fiber_log_norm(&FiberPoint {
            z: w[..n].to_vec(),
            u: w[n..].to_vec(),
        })
    };
    let m = base.len();
    let f0 = eval(&base);
    let mut hess = vec![vec![0.0; m]; m];
    let mut r = base.clone();
    for i in 0..m {
        r[i] = base[i] + step;
        let fp = eval(&r);
        r[i] = base[i] - step;
        let fm = eval(&r);
        r[i] = base[i];
        hess[i][i] = (fp - 2.0 * f0 + fm) / (step * step);
        for j in i + 1..m {
            let mut corner = |si: f64, sj: f64| {
                r[i] = base[i] + si * step;
                r[j] = base[j] + sj * step;
                let v = eval(&r);
                r[i] = base[i];
                r[j] = base[j];
                v
            };
            let d = (corner(1.0, 1.0) - corner(1.0, -1.0) - corner(-1.0, 1.0) + corner(-1.0, -1.0))
                / (4.0 * step * step);
            hess[i][j] = d;
            hess[j][i] = d;
        }
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let dim = 2 * n;
    let out = (0..dim)
        .map(|a| {
            (0..dim)
                .map(|b| {
                    let (xa, ya, xb, yb) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
                    let w =
                        Complex64::new(hess[xa][xb] + hess[ya][yb], hess[xa][yb] - hess[ya][xb])
                            / 4.0;
                    w / two_pi_i
                })
                .collect()
        })
        .collect();
    Ok(out)
}

/// Coefficients of `Σ_j (dz_j∧dū_j - du_j∧dz̄_j)` in the same layout.
pub fn expected_curvature_matrix(n: usize) -> Vec<Vec<Complex64>> {
    let mut e = vec![vec![Complex64::new(0.0, 0.0); 2 * n]; 2 * n];
    for j in 0..n {
        e[j][n + j] = Complex64::new(1.0, 0.0);
        e[n + j][j] = Complex64::new(-1.0, 0.0);
    }
    e
}

/// Maximum deviation of the finite-difference curvature from the constant form.
pub fn curvature_check(p: &FiberPoint, step: f64) -> Result<f64> {
    let got = curvature_matrix(p, step)?;
    let want = expected_curvature_matrix(p.dim());
    Ok(got
        .iter()
        .flatten()
        .zip(want.iter().flatten())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    #[test]
    fn central_charge_examples() {
        let cases = [(3, 1, 8), (4, 2, 16), (5, 2, 24)];
        for (gg, h, tau) in cases {
            let c = dehn_twist_central_charge(&SeparatingCurve::new(g(gg), h).unwrap()).unwrap();
            assert_eq!(c.tau, BigInt::from(tau));
        }
        let c = dehn_twist_central_charge(&SeparatingCurve::new(g(4), 2).unwrap()).unwrap();
        assert_eq!(c.block_sum, BigInt::from(4));
    }

    #[test]
    fn genus_one_side_uses_complement() {
        let c = dehn_twist_central_charge(&SeparatingCurve::new(g(5), 1).unwrap()).unwrap();
        assert_eq!(c.side_genus, 4);
        assert_eq!(c.tau, BigInt::from(16));
        // On the genus-1 side itself the block sum is zero and 8/(2h-2) is singular.
        assert!(block_q_sum(g(5), 0..1).unwrap().is_zero());
        assert!(central_charge_on_side(g(5), 1, 0..1).is_err());
    }

    #[test]
    fn invalid_splits() {
        assert!(matches!(
            SeparatingCurve::new(g(4), 0),
            Err(Error::InvalidSplit { .. })
        ));
        assert!(matches!(
            SeparatingCurve::new(g(4), 4),
            Err(Error::InvalidSplit { .. })
        ));
        assert!(matches!(
            SeparatingCurve::new(g(2), 1),
            Err(Error::GenusTooSmall { .. })
        ));
    }

    #[test]
    fn split_identity_examples() {
        assert!(j_split_identity_check(g(4), 2, &HVector::a(g(4), 0)).unwrap());
        assert!(j_split_identity_check(g(3), 2, &HVector::b(g(3), 1)).unwrap());
        let x = HVector::from_i64(g(5), &[3, 0, 0, 0, 0, 0, -2, 0, 0, 0]).unwrap();
        assert!(j_split_identity_check(g(5), 2, &x).unwrap());
        let outside = HVector::a(g(4), 3);
        assert!(matches!(
            j_split_identity_check(g(4), 2, &outside),
            Err(Error::OutsideBlock { h: 2 })
        ));
    }

    #[test]
    fn log_norm_hand_value() {
        let zero = FiberPoint::new(
            vec![Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0)],
        )
        .unwrap();
        assert_eq!(fiber_log_norm(&zero), 0.0);
        let p = FiberPoint::new(
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.0, 1.0)],
        )
        .unwrap();
        assert!((fiber_log_norm(&p) - 4.0 * PI).abs() < 1e-14);
        assert!(FiberPoint::new(vec![Complex64::new(1.0, 0.0)], vec![]).is_err());
    }

    #[test]
    fn curvature_rejects_bad_step() {
        let p = FiberPoint::new(
            vec![Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.0, 1.0)],
        )
        .unwrap();
        assert!(curvature_check(&p, 0.0).is_err());
        assert!(curvature_check(&p, -1.0).is_err());
    }

    #[test]
    fn gz_json_shape() {
        let e = GZElement::identity(g(3));
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.starts_with(r#"{"v":{"genus":3,"coeffs":["0""#));
        assert!(s.ends_with(r#""n":"0"}"#));
        let back: GZElement = serde_json::from_str(&s).unwrap();
        assert!(back.equals(&e).unwrap());
    }
}
