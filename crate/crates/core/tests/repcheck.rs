mod common;

use biext_core::repcheck::*;
use biext_core::symplectic::{sp_generators, IntMatrix};
use common::*;
use rand::Rng;

#[test]
fn action_is_functorial() {
    let mut r = rng(21);
    let g = genus(3);
    let gens = sp_generators(g);
    for p in [2, 3, 5] {
        for _ in 0..10 {
            let m = random_sp(&mut r, &gens, 3);
            let n = random_sp(&mut r, &gens, 3);
            let lhs = wedge3_action_modp(&(&m * &n), p).unwrap();
            let rhs = wedge3_action_modp(&m, p)
                .unwrap()
                .mul(&wedge3_action_modp(&n, p).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn generator_actions_are_unimodular() {
    for gg in 2..=4 {
        for p in [2u64, 3, 5, 7] {
            for m in sp_generators(genus(gg)) {
                let d = wedge3_action_modp(&m, p).unwrap().det();
                assert!(d == 1 || d == p - 1, "det {d} mod {p}");
            }
        }
    }
}

#[test]
fn negative_identity_acts_as_minus_one() {
    let g = genus(3);
    let n = g.rank();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect())
        .collect();
    let minus = IntMatrix::from_rows(&rows).unwrap();
    assert!(minus.is_symplectic(g));
    let rho = wedge3_action_modp(&minus, 3).unwrap();
    assert_eq!(fixed_space_dim(&[rho], Side::Invariants), 0);
}

#[test]
fn invariants_vanish() {
    for gg in 2..=5 {
        for p in [2, 3, 5] {
            for side in [Side::Invariants, Side::CoinvariantDual] {
                assert_eq!(
                    invariant_dim(genus(gg), p, side).unwrap(),
                    0,
                    "g={gg} p={p} {side:?}"
                );
            }
        }
    }
}

#[test]
fn fixed_space_is_monotone_in_generator_subsets() {
    let mut r = rng(22);
    for gg in 2..=3 {
        for p in [2, 3] {
            let acts: Vec<ModPMatrix> = sp_generators(genus(gg))
                .iter()
                .map(|m| wedge3_action_modp(m, p).unwrap())
                .collect();
            let full = fixed_space_dim(&acts, Side::Invariants);
            for _ in 0..6 {
                let subset: Vec<ModPMatrix> =
                    acts.iter().filter(|_| r.gen_bool(0.5)).cloned().collect();
                if subset.is_empty() {
                    continue;
                }
                for side in [Side::Invariants, Side::CoinvariantDual] {
                    assert!(fixed_space_dim(&subset, side) >= fixed_space_dim(&acts, side));
                }
            }
            // A single transvection fixes a large subspace.
            assert!(fixed_space_dim(&acts[..1], Side::Invariants) > full);
        }
    }
}

/// Enumerates every vector of `Λ³H ⊗ F_2` and every functional, as bitmasks.
fn brute_force_f2(gg: u32) -> (usize, usize) {
    let acts: Vec<ModPMatrix> = sp_generators(genus(gg))
        .iter()
        .map(|m| wedge3_action_modp(m, 2).unwrap())
        .collect();
    let dim = acts[0].size();
    assert!(dim <= 20);
    // Column masks: column j of A as bits over rows.
    let cols: Vec<Vec<u32>> = acts
        .iter()
        .map(|a| {
            (0..dim)
                .map(|j| (0..dim).fold(0u32, |m, i| m | ((a.get(i, j) as u32) << i)))
                .collect()
        })
        .collect();
    let rows: Vec<Vec<u32>> = acts
        .iter()
        .map(|a| {
            (0..dim)
                .map(|i| (0..dim).fold(0u32, |m, j| m | ((a.get(i, j) as u32) << j)))
                .collect()
        })
        .collect();
    let apply = |masks: &[u32], v: u32| -> u32 {
        masks
            .iter()
            .enumerate()
            .filter(|(j, _)| v >> j & 1 == 1)
            .fold(0, |acc, (_, c)| acc ^ c)
    };
    let (mut fixed, mut invariant_functionals) = (0, 0);
    for v in 1u32..(1 << dim) {
        if cols.iter().all(|c| apply(c, v) == v) {
            fixed += 1;
        }
        // f∘A = f  <=>  Aᵀ f = f, and the rows of A are the columns of Aᵀ.
        if rows.iter().all(|c| apply(c, v) == v) {
            invariant_functionals += 1;
        }
    }
    (fixed, invariant_functionals)
}

#[test]
fn f2_enumeration_oracle() {
    assert_eq!(brute_force_f2(2), (0, 0));
    assert_eq!(brute_force_f2(3), (0, 0));
}

#[test]
fn dimension_identity_range() {
    for gg in 3..=8 {
        assert!(dimension_identity(genus(gg)).unwrap());
    }
}
