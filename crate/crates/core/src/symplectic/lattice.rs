//! Integer row-echelon (Hermite-style) reduction and sublattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sublattice of `Z^n` given by generators, stored in row-echelon form
/// with positive pivots and reduced entries above each pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn from_generators(ambient: usize, generators: &[Vec<BigInt>]) -> Self {
        let mut work: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        for r in &work {
            assert_eq!(r.len(), ambient, "generator length must match ambient rank");
        }

        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..ambient {
            // Euclid on column `col` across the remaining rows.
            while let Some(best) = work
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .min_by(|(_, a), (_, b)| a[col].abs().cmp(&b[col].abs()))
                .map(|(i, _)| i)
            {
                let mut done = true;
                for i in 0..work.len() {
                    if i == best || work[i][col].is_zero() {
                        continue;
                    }
                    let q = work[i][col].div_floor(&work[best][col]);
                    let pivot_row = work[best].clone();
                    sub_scaled(&mut work[i], &pivot_row, &q);
                    if !work[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    let mut row = work.swap_remove(best);
                    if row[col].is_negative() {
                        row.iter_mut().for_each(|x| *x = -&*x);
                    }
                    rows.push(row);
                    pivots.push(col);
                    work.retain(|r| r.iter().any(|x| !x.is_zero()));
                    break;
                }
            }
        }

        // Reduce entries above each pivot into [0, pivot).
        for p in (0..rows.len()).rev() {
            let col = pivots[p];
            let pivot_row = rows[p].clone();
            for r in rows.iter_mut().take(p) {
                let q = r[col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    sub_scaled(r, &pivot_row, &q);
                }
            }
        }

        IntegerLattice {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Integer coordinates of `v` against the echelon basis, if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let (q, r) = rest[col].div_rem(&row[col]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                sub_scaled(&mut rest, row, &q);
            }
            coords.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }
}

fn sub_scaled(target: &mut [BigInt], row: &[BigInt], q: &BigInt) {
    for (t, r) in target.iter_mut().zip(row) {
        if !r.is_zero() {
            *t -= q * r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn even_sublattice() {
        let lat = IntegerLattice::from_generators(2, &[v(&[2, 0]), v(&[0, 2])]);
        assert!(lat.contains(&v(&[4, -2])));
        assert!(!lat.contains(&v(&[1, 0])));
    }

    #[test]
    fn redundant_generators_collapse() {
        let lat =
            IntegerLattice::from_generators(3, &[v(&[2, 4, 6]), v(&[3, 6, 9]), v(&[0, 0, 0])]);
        assert_eq!(lat.rank(), 1);
        assert_eq!(lat.basis()[0], v(&[1, 2, 3]));
        assert!(lat.contains(&v(&[-5, -10, -15])));
        assert!(!lat.contains(&v(&[1, 2, 4])));
    }

    #[test]
    fn solve_reconstructs() {
        let gens = [v(&[1, 1, 0, 2]), v(&[0, 3, 1, 1]), v(&[2, -1, 5, 0])];
        let lat = IntegerLattice::from_generators(4, &gens);
        let target: Vec<BigInt> = (0..4)
            .map(|i| &gens[0][i] * 3 - &gens[1][i] * 2 + &gens[2][i] * 7)
            .collect();
        let coords = lat.solve(&target).unwrap();
        let mut back = vec![BigInt::zero(); 4];
        for (c, row) in coords.iter().zip(lat.basis()) {
            for i in 0..4 {
                back[i] += c * &row[i];
            }
        }
        assert_eq!(back, target);
    }
}
