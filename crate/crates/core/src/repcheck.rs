//! Invariants of `Sp_g(Z)` acting on `Λ³H ⊗ F_p` and on its dual, computed by
//! exact Gaussian elimination over `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{binomial, sp_generators, triples, Genus, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// Fixed vectors in `Λ³H ⊗ F_p`.
    Invariants,
    /// Invariant functionals, `Hom_{Sp}(Λ³H ⊗ F_p, F_p)`.
    CoinvariantDual,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    (2..)
        .take_while(|d| d * d <= p)
        .all(|d| !p.is_multiple_of(d))
}

/// Square matrix over `Z/p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPMatrix {
    p: u64,
    n: usize,
    entries: Vec<u64>,
}

impl ModPMatrix {
    pub fn new(p: u64, n: usize, entries: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(ModPMatrix {
            p,
            n,
            entries: entries.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        ModPMatrix { p, n, entries }
    }

    pub fn reduce(m: &IntMatrix, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = m.size();
        let pb = BigInt::from(p);
        let entries = (0..n * n)
            .map(|k| {
                m.get(k / n, k % n)
                    .mod_floor(&pb)
                    .to_u64()
                    .expect("reduced below p")
            })
            .collect();
        Ok(ModPMatrix { p, n, entries })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| self.entries[(k % n) * n + k / n])
            .collect();
        ModPMatrix {
            p: self.p,
            n,
            entries,
        }
    }

    pub fn mul(&self, rhs: &ModPMatrix) -> Self {
        assert_eq!((self.p, self.n), (rhs.p, rhs.n), "incompatible matrices");
        let (n, p) = (self.n, self.p);
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] = (entries[i * n + j] + a * rhs.get(k, j)) % p;
                }
            }
        }
        ModPMatrix { p, n, entries }
    }

    pub fn minus_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            let d = &mut m.entries[i * self.n + i];
            *d = (*d + self.p - 1) % self.p;
        }
        m
    }

    pub fn rank(&self) -> usize {
        rank_mod_p(
            self.entries.chunks(self.n).map(<[u64]>::to_vec).collect(),
            self.n,
            self.p,
        )
    }

    pub fn det(&self) -> u64 {
        let (n, p) = (self.n, self.p);
        let mut a: Vec<Vec<u64>> = self.entries.chunks(n).map(<[u64]>::to_vec).collect();
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
                return 0;
            };
            if piv != col {
                a.swap(piv, col);
                det = (p - det) % p;
            }
            det = det * a[col][col] % p;
            let inv = inv_mod(a[col][col], p);
            for r in col + 1..n {
                let f = a[r][col] * inv % p;
                if f != 0 {
                    let (top, rest) = a.split_at_mut(r);
                    let (src, dst) = (&top[col], &mut rest[0]);
                    for c in col..n {
                        dst[c] = (dst[c] + p - f * src[c] % p) % p;
                    }
                }
            }
        }
        det
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2).
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[allow(clippy::needless_range_loop)]
/// Rank of a row list over `F_p` (entries already reduced).
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for c in col..cols {
            rows[rank][c] = rows[rank][c] * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in col..cols {
                    rows[r][c] = (rows[r][c] + p - f * rows[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// The induced action of `M` on `Λ³H ⊗ F_p`: entry `(I, J)` is the 3×3 minor
/// of `M` on rows `I` and columns `J`.
pub fn wedge3_action_modp(m: &IntMatrix, p: u64) -> Result<ModPMatrix> {
    let base = ModPMatrix::reduce(m, p)?;
    if base.det() == 0 {
        return Err(Error::SingularModP(p));
    }
    let n = base.n;
    let ts: Vec<[usize; 3]> = triples(n).collect();
    let dim = binomial(n, 3);
    let mut entries = vec![0u64; dim * dim];
    // Minors computed in i128 to avoid repeated reductions; entries are < p.
    let e = |i: usize, j: usize| base.get(i, j) as i128;
    for (r, rt) in ts.iter().enumerate() {
        for (c, ct) in ts.iter().enumerate() {
            let m3 = |a: usize, b: usize| e(rt[a], ct[b]);
            let det = m3(0, 0) * (m3(1, 1) * m3(2, 2) - m3(1, 2) * m3(2, 1))
                - m3(0, 1) * (m3(1, 0) * m3(2, 2) - m3(1, 2) * m3(2, 0))
                + m3(0, 2) * (m3(1, 0) * m3(2, 1) - m3(1, 1) * m3(2, 0));
            entries[r * dim + c] = det.rem_euclid(p as i128) as u64;
        }
    }
    Ok(ModPMatrix { p, n: dim, entries })
}

/// Dimension of the common fixed space of `actions` on the chosen side.
pub fn fixed_space_dim(actions: &[ModPMatrix], side: Side) -> usize {
    let Some(first) = actions.first() else {
        return 0;
    };
    let (n, p) = (first.n, first.p);
    let rows: Vec<Vec<u64>> = actions
        .iter()
        .flat_map(|a| {
            let m = match side {
                Side::Invariants => a.minus_identity(),
                Side::CoinvariantDual => a.transpose().minus_identity(),
            };
            m.entries.chunks(n).map(<[u64]>::to_vec).collect::<Vec<_>>()
        })
        .collect();
    n - rank_mod_p(rows, n, p)
}

/// Dimension over `F_p` of the `Sp_g(Z)`-invariants (or invariant functionals)
/// of `Λ³H ⊗ F_p`, using the generating set from [`sp_generators`].
pub fn invariant_dim(genus: Genus, p: u64, side: Side) -> Result<usize> {
    genus.require(2)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let actions = sp_generators(genus)
        .iter()
        .map(|m| wedge3_action_modp(m, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(fixed_space_dim(&actions, side))
}

/// Both sides of `C(2g,3) = 2g(g-1) + 8·C(g,3)`.
pub fn dimension_terms(genus: Genus) -> Result<(u64, u64)> {
    genus.require(3)?;
    let g = genus.get() as u64;
    let lhs = binomial(2 * g as usize, 3) as u64;
    let rhs = 2 * g * (g - 1) + 8 * binomial(g as usize, 3) as u64;
    Ok((lhs, rhs))
}

pub fn dimension_identity(genus: Genus) -> Result<bool> {
    let (lhs, rhs) = dimension_terms(genus)?;
    Ok(lhs == rhs)
}
