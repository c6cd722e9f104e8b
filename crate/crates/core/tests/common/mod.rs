#![allow(dead_code)]

use biext_core::symplectic::{Genus, HVector, IntMatrix, VClass, Wedge3};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn genus(g: u32) -> Genus {
    Genus::new(g).unwrap()
}

pub fn random_h(rng: &mut impl Rng, g: Genus, bound: i64) -> HVector {
    let coords: Vec<i64> = (0..g.rank())
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    HVector::from_i64(g, &coords).unwrap()
}

pub fn random_wedge(rng: &mut impl Rng, g: Genus, bound: i64) -> Wedge3 {
    let coeffs: Vec<i64> = (0..g.wedge3_dim())
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    Wedge3::from_i64(g, &coeffs).unwrap()
}

/// Sparse random element: a few random basis triples with small coefficients.
pub fn random_sparse_wedge(rng: &mut impl Rng, g: Genus, terms: usize) -> Wedge3 {
    let mut coeffs = vec![0i64; g.wedge3_dim()];
    for _ in 0..terms {
        let i = rng.gen_range(0..coeffs.len());
        coeffs[i] += rng.gen_range(-3..=3);
    }
    Wedge3::from_i64(g, &coeffs).unwrap()
}

pub fn random_vclass(rng: &mut impl Rng, g: Genus, bound: i64) -> VClass {
    VClass::new(random_wedge(rng, g, bound))
}

pub fn random_sp(rng: &mut impl Rng, gens: &[IntMatrix], len: usize) -> IntMatrix {
    let n = gens[0].size();
    (0..len).fold(IntMatrix::identity(n), |acc, _| {
        &acc * &gens[rng.gen_range(0..gens.len())]
    })
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}
