use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{basis_pairing, intersection, triples, Genus, HVector, Wedge3};
use crate::error::{Error, Result};

/// A square integer matrix acting on column vectors in the basis of `H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        };
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Gram matrix of the intersection form, `J_ij = e_i·e_j`.
    pub fn symplectic_form(genus: Genus) -> Self {
        let n = genus.rank();
        let entries = (0..n * n)
            .map(|p| BigInt::from(basis_pairing(genus, p / n, p % n)))
            .collect();
        IntMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n)
            .map(|p| self.entries[(p % n) * n + p / n].clone())
            .collect();
        IntMatrix { n, entries }
    }

    pub fn column(&self, genus: Genus, j: usize) -> HVector {
        let coords = (0..self.n).map(|i| self.get(i, j).clone()).collect();
        HVector::new(genus, coords).expect("matrix size matches genus")
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(IntMatrix::identity(self.n), |acc, _| &acc * self)
    }

    pub fn is_symplectic(&self, genus: Genus) -> bool {
        if self.n != genus.rank() {
            return false;
        }
        let j = IntMatrix::symplectic_form(genus);
        &(&self.transpose() * &j) * self == j
    }

    pub fn apply(&self, x: &HVector) -> Result<HVector> {
        if x.coords.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.coords.len(),
            });
        }
        let coords = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &x.coords[j]).sum())
            .collect();
        HVector::new(x.genus, coords)
    }

    /// The induced action `Λ³M` on `Λ³H`.
    pub fn apply_wedge3(&self, w: &Wedge3) -> Result<Wedge3> {
        let genus = w.genus;
        if self.n != genus.rank() {
            return Err(Error::DimensionMismatch {
                expected: genus.rank(),
                found: self.n,
            });
        }
        let cols: Vec<HVector> = (0..self.n).map(|j| self.column(genus, j)).collect();
        let mut out = Wedge3::zero(genus);
        for ([i, j, k], c) in triples(self.n).zip(&w.coeffs).filter(|(_, c)| !c.is_zero()) {
            let term = Wedge3::wedge(&cols[i], &cols[j], &cols[k])?;
            for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
                if !t.is_zero() {
                    *o += c * t;
                }
            }
        }
        Ok(out)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        IntMatrix { n, entries }
    }
}

/// The symplectic transvection `x ↦ x + (x·v) v`.
pub fn transvection(v: &HVector) -> IntMatrix {
    let genus = v.genus;
    let n = genus.rank();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        let coef = intersection(&HVector::basis(genus, j), v).expect("same genus");
        if coef.is_zero() {
            continue;
        }
        for i in 0..n {
            m.entries[i * n + j] += &coef * &v.coords[i];
        }
    }
    m
}

/// Generators of `Sp_g(Z)`: the transvections along
/// `a_1..a_g`, `b_1..b_g` and `a_i - a_{i+1}` (`1 <= i < g`), in that order.
///
/// These are the homology images of the Lickorish twist generators, so the
/// list generates the full symplectic group (`3g - 1` matrices). For `g = 1`
/// they are `[[1,-1],[0,1]]` and `[[1,0],[1,1]]`.
pub fn sp_generators(genus: Genus) -> Vec<IntMatrix> {
    let g = genus.get() as usize;
    let mut out = Vec::with_capacity(3 * g - 1);
    out.extend((0..g).map(|i| transvection(&HVector::a(genus, i))));
    out.extend((0..g).map(|i| transvection(&HVector::b(genus, i))));
    out.extend(
        (0..g.saturating_sub(1))
            .map(|i| transvection(&(&HVector::a(genus, i) - &HVector::a(genus, i + 1)))),
    );
    out
}
