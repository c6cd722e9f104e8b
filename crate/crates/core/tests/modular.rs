mod common;

use std::f64::consts::PI;

use biext_core::modular::*;
use biext_core::Error;
use common::*;
use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// `η³ = Σ_{n≥0} (-1)ⁿ (2n+1) q^{(2n+1)²/8}`, so `Δ = (2π)¹² (η³)⁸`.
fn delta_via_jacobi(tau: Complex64) -> Complex64 {
    let mut eta3 = c(0.0, 0.0);
    for n in 0..200 {
        let k = (2 * n + 1) as f64;
        let term = (Complex64::i() * 2.0 * PI * tau * (k * k / 8.0)).exp() * k;
        eta3 += if n % 2 == 0 { term } else { -term };
    }
    eta3.powi(8) * (2.0 * PI).powi(12)
}

fn delta_norm(tau: Complex64) -> f64 {
    let v = ModularValue::new(
        dedekind_delta(tau).unwrap(),
        Rational64::from_integer(12),
        SiegelPoint::scalar(tau).unwrap(),
    )
    .unwrap();
    modular_norm(&v).unwrap()
}

/// Plain genus-1 theta constant with characteristic (a, b) in units of 1/2.
fn theta1(a: u8, b: u8, tau: Complex64) -> Complex64 {
    let (a, b) = (a as f64 * 0.5, b as f64 * 0.5);
    (-60..=60)
        .map(|n| {
            let m = n as f64 + a;
            (Complex64::i() * PI * (tau * m * m + 2.0 * m * b)).exp()
        })
        .sum()
}

/// Unpaired box sum over `n ∈ [-r, r]²`.
fn theta2_naive(ch: [u8; 4], omega: &SiegelPoint, r: i64) -> Complex64 {
    let a = [ch[0] as f64 * 0.5, ch[1] as f64 * 0.5];
    let b = [ch[2] as f64 * 0.5, ch[3] as f64 * 0.5];
    let mut s = c(0.0, 0.0);
    for n1 in -r..=r {
        for n2 in -r..=r {
            let m = [n1 as f64 + a[0], n2 as f64 + a[1]];
            let quad = omega.get(0, 0) * (m[0] * m[0])
                + omega.get(0, 1) * (2.0 * m[0] * m[1])
                + omega.get(1, 1) * (m[1] * m[1]);
            s += (Complex64::i() * PI * (quad + 2.0 * (m[0] * b[0] + m[1] * b[1]))).exp();
        }
    }
    s
}

fn bits(ch: ThetaCharacteristic) -> [u8; 4] {
    let (a, b) = (ch.a(), ch.b());
    [a[0], a[1], b[0], b[1]].map(|x| (2.0 * x) as u8)
}

fn random_omega(r: &mut impl Rng) -> SiegelPoint {
    loop {
        let y11 = r.gen_range(0.8..1.6);
        let y22 = r.gen_range(0.8..1.6);
        let y12 = r.gen_range(-0.3..0.3);
        let x = [
            r.gen_range(-0.5..0.5),
            r.gen_range(-0.5..0.5),
            r.gen_range(-0.5..0.5),
        ];
        if let Ok(p) = SiegelPoint::from_rows(&[
            vec![c(x[0], y11), c(x[1], y12)],
            vec![c(x[1], y12), c(x[2], y22)],
        ]) {
            return p;
        }
    }
}

#[test]
fn delta_leading_term() {
    let tau = c(0.0, 10.0);
    let q = (Complex64::i() * 2.0 * PI * tau).exp();
    let ratio = dedekind_delta(tau).unwrap() / (q * (2.0 * PI).powi(12));
    assert!((ratio - 1.0).norm() < 1e-12);
}

#[test]
fn delta_matches_jacobi_triple_product() {
    let mut r = rng(31);
    for _ in 0..30 {
        let tau = c(r.gen_range(-1.0..1.0), r.gen_range(0.3..3.0));
        let (d, o) = (dedekind_delta(tau).unwrap(), delta_via_jacobi(tau));
        assert!((d - o).norm() <= 1e-11 * o.norm(), "tau={tau}");
    }
}

#[test]
fn delta_truncation_stable() {
    let tau = c(0.0, 1.0);
    let n = delta_terms(tau).unwrap();
    let a = dedekind_delta_truncated(tau, n).unwrap();
    let b = dedekind_delta_truncated(tau, 2 * n).unwrap();
    assert!((a - b).norm() <= 1e-14 * b.norm());
}

#[test]
fn delta_norm_modular_invariance() {
    let tau = c(0.3, 1.1);
    assert!(rel(delta_norm(tau), delta_norm(-tau.inv())) < 1e-10);
    let mut r = rng(32);
    for _ in 0..20 {
        let tau = c(r.gen_range(-0.5..0.5), r.gen_range(0.5..2.5));
        let base = delta_norm(tau);
        assert!(rel(base, delta_norm(-tau.inv())) < 1e-10, "S at {tau}");
        assert!(rel(base, delta_norm(tau + 1.0)) < 1e-10, "T at {tau}");
    }
}

#[test]
fn beta1_periodic() {
    let mut r = rng(33);
    for _ in 0..20 {
        let tau = c(r.gen_range(-2.0..2.0), r.gen_range(0.2..30.0));
        assert!((beta1(tau).unwrap() - beta1(tau + 1.0).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn beta1_survives_deep_cusp() {
    // |Δ| ~ e^{-2πy} underflows long before y = 400.
    let y = 400.0;
    let b = beta1(c(0.0, y)).unwrap();
    let expected = 2.0 * PI * y - 12.0 * (2.0 * PI).ln() - 6.0 * y.ln();
    assert!((b - expected).abs() < 1e-9);
}

#[test]
fn odd_characteristic_rejected() {
    let diag = SiegelPoint::diagonal(&[c(0.0, 1.1), c(0.0, 1.3)]).unwrap();
    let odd = ThetaCharacteristic::new([1, 0], [1, 0]).unwrap();
    assert_eq!(theta_constant(odd, &diag), Err(Error::OddCharacteristic));
    let genus1 = SiegelPoint::scalar(c(0.0, 1.0)).unwrap();
    let even = ThetaCharacteristic::new([0, 0], [0, 0]).unwrap();
    assert!(matches!(
        theta_constant(even, &genus1),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn half_half_characteristic_vanishes_on_diagonal() {
    // a = b = (1/2, 1/2) is even in genus 2, but splits into two odd genus-1
    // theta-nulls on diagonal period matrices.
    let ch = ThetaCharacteristic::new([1, 1], [1, 1]).unwrap();
    assert!(ch.is_even());
    let diag = SiegelPoint::diagonal(&[c(0.2, 1.1), c(-0.1, 1.3)]).unwrap();
    assert!(theta_constant(ch, &diag).unwrap().norm() < 1e-14);
    assert!(chi10(&diag).unwrap().norm() < 1e-12);
    assert_eq!(beta2(&diag), Err(Error::LogOfZero));
}

#[test]
fn diagonal_factorization_oracle() {
    let taus = [c(0.0, 2.0), c(0.0, 2.0)];
    let diag = SiegelPoint::diagonal(&taus).unwrap();
    let ch = ThetaCharacteristic::new([0, 0], [0, 0]).unwrap();
    let expected = theta1(0, 0, taus[0]) * theta1(0, 0, taus[1]);
    assert!((theta_constant(ch, &diag).unwrap() - expected).norm() < 1e-14);

    let taus = [c(0.3, 0.9), c(-0.2, 1.4)];
    let diag = SiegelPoint::diagonal(&taus).unwrap();
    for ch in even_characteristics() {
        let [a1, a2, b1, b2] = bits(ch);
        let expected = theta1(a1, b1, taus[0]) * theta1(a2, b2, taus[1]);
        assert!(
            (theta_constant(ch, &diag).unwrap() - expected).norm() < 1e-13,
            "{ch}"
        );
    }
}

#[test]
fn paired_sum_matches_naive_box() {
    let mut r = rng(34);
    for _ in 0..10 {
        let omega = random_omega(&mut r);
        for ch in even_characteristics() {
            let v = theta_constant(ch, &omega).unwrap();
            let o = theta2_naive(bits(ch), &omega, 12);
            assert!((v - o).norm() < 1e-13 * o.norm().max(1.0), "{ch}");
        }
    }
}

#[test]
fn theta_box_doubling_stable() {
    let mut r = rng(35);
    for _ in 0..10 {
        let omega = random_omega(&mut r);
        for ch in even_characteristics() {
            let radius = theta_radius(ch, &omega).unwrap();
            let a = theta_constant_scaled_with_radius(ch, &omega, radius)
                .unwrap()
                .to_complex();
            let b = theta_constant_scaled_with_radius(ch, &omega, 2 * radius)
                .unwrap()
                .to_complex();
            assert!((a - b).norm() <= 1e-14 * b.norm().max(1.0));
        }
    }
}

#[test]
fn chi10_regression_value() {
    let omega = SiegelPoint::from_rows(&[
        vec![c(0.0, 1.1), c(0.1, 0.0)],
        vec![c(0.1, 0.0), c(0.0, 1.3)],
    ])
    .unwrap();
    let v = chi10(&omega).unwrap();
    assert!(v.norm() > 1e-6);
    let naive: Complex64 = even_characteristics()
        .into_iter()
        .map(|ch| theta2_naive(bits(ch), &omega, 12).powi(2))
        .product();
    assert!((v - naive).norm() < 1e-10 * naive.norm());
}

fn chi10_log_norm(omega: &SiegelPoint) -> f64 {
    modular_log_norm(
        chi10_scaled(omega).unwrap(),
        Rational64::from_integer(10),
        omega,
    )
    .unwrap()
}

#[test]
fn chi10_norm_invariant_under_swap_and_translation() {
    let omega = SiegelPoint::from_rows(&[
        vec![c(0.0, 1.1), c(0.1, 0.0)],
        vec![c(0.1, 0.0), c(0.0, 1.3)],
    ])
    .unwrap();
    let swapped = omega.inverse_swap().unwrap();
    assert!((chi10_log_norm(&omega) - chi10_log_norm(&swapped)).abs() < 1e-8);
    let mut r = rng(36);
    for _ in 0..10 {
        let omega = random_omega(&mut r);
        let base = chi10_log_norm(&omega);
        assert!((base - chi10_log_norm(&omega.inverse_swap().unwrap())).abs() < 1e-8);
        for b in [
            vec![vec![1, 0], vec![0, 0]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0], vec![0, -1]],
        ] {
            let shifted = omega.translate(&b).unwrap();
            assert!((beta2(&omega).unwrap() - beta2(&shifted).unwrap()).abs() < 1e-10);
        }
    }
}

#[test]
fn modular_norm_homogeneous() {
    let mut r = rng(37);
    for _ in 0..10 {
        let omega = random_omega(&mut r);
        let value = chi10(&omega).unwrap();
        let scale = c(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let k = Rational64::from_integer(10);
        let a = modular_norm(&ModularValue::new(value, k, omega.clone()).unwrap()).unwrap();
        let b = modular_norm(&ModularValue::new(value * scale, k, omega).unwrap()).unwrap();
        assert!(rel(b, a * scale.norm()) < 1e-14);
    }
}

proptest! {
    #[test]
    fn delta_scaled_agrees_with_plain(re in -1.0f64..1.0, im in 0.3f64..5.0) {
        let tau = c(re, im);
        let plain = dedekind_delta(tau).unwrap();
        let scaled = dedekind_delta_scaled(tau).unwrap();
        prop_assert!((plain.norm().ln() - scaled.ln_abs()).abs() < 1e-12);
    }

    #[test]
    fn modular_value_json_shape(re in -1.0f64..1.0, im in 0.5f64..3.0) {
        let tau = c(re, im);
        let v = ModularValue::new(dedekind_delta(tau).unwrap(), Rational64::from_integer(12), SiegelPoint::scalar(tau).unwrap()).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        prop_assert_eq!(json["omega"][0][1].as_f64().unwrap(), im);
        prop_assert!(json["norm"].as_f64().unwrap() > 0.0);
    }
}
