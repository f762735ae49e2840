//! Sparse exact linear algebra over the rationals.
//!
//! Rank is computed by fraction-free (Bareiss) elimination on a
//! denominator-cleared integer copy, with deterministic leftmost-nonzero
//! pivoting. `solve` runs exact rational Gauss-Jordan. Matrices here are
//! small (evaluation matrices of monomial bases), so densifying is fine.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index ({0},{1}) out of bounds for {2}x{3} matrix")]
    OutOfBounds(usize, usize, usize, usize),
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one()).unwrap();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Stores a value; zero values are removed rather than stored.
    pub fn set(&mut self, r: usize, c: usize, v: Rat) -> Result<(), LinalgError> {
        if r >= self.rows || c >= self.cols {
            return Err(LinalgError::OutOfBounds(r, c, self.rows, self.cols));
        }
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    fn dense(&self) -> Vec<Vec<Rat>> {
        let mut d = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Rows scaled to integers (each row multiplied by the lcm of its
    /// denominators); row scaling does not change the rank.
    fn dense_int(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for r in 0..self.rows {
            let mut l = BigInt::one();
            for c in 0..self.cols {
                if let Some(v) = self.entries.get(&(r, c)) {
                    l = l.lcm(v.denom());
                }
            }
            for c in 0..self.cols {
                if let Some(v) = self.entries.get(&(r, c)) {
                    out[r][c] = v.numer() * (&l / v.denom());
                }
            }
        }
        out
    }

    /// Exact rank over Q via Bareiss fraction-free elimination.
    ///
    /// Pivot rule: leftmost column (among the not-yet-pivoted ones) with a
    /// nonzero entry in the remaining rows, topmost such row. Zero columns
    /// are swapped out of the way so the Bareiss exact-division invariant
    /// is preserved.
    pub fn rank(&self) -> usize {
        let mut a = self.dense_int();
        let (nr, nc) = (self.rows, self.cols);
        let mut rank = 0usize;
        let mut prev = BigInt::one();
        while rank < nr && rank < nc {
            let pivot = (rank..nc)
                .find_map(|c| (rank..nr).find(|&r| !a[r][c].is_zero()).map(|r| (r, c)));
            let Some((pr, pc)) = pivot else { break };
            a.swap(rank, pr);
            if pc != rank {
                for row in a.iter_mut() {
                    row.swap(rank, pc);
                }
            }
            for r in rank + 1..nr {
                for c in rank + 1..nc {
                    let num = &a[rank][rank] * &a[r][c] - &a[r][rank] * &a[rank][c];
                    debug_assert!((&num % &prev).is_zero());
                    a[r][c] = num / &prev;
                }
                a[r][rank] = BigInt::zero();
            }
            prev = a[rank][rank].clone();
            rank += 1;
        }
        rank
    }

    /// One exact solution of `self * x = rhs` if the system is consistent
    /// (free variables set to zero), `None` if inconsistent.
    pub fn solve(&self, rhs: &[Rat]) -> Result<Option<Vec<Rat>>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix has {} rows, rhs has {} entries",
                self.rows,
                rhs.len()
            )));
        }
        let mut a = self.dense();
        let mut b: Vec<Rat> = rhs.to_vec();
        let (nr, nc) = (self.rows, self.cols);
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0usize;
        for col in 0..nc {
            if row >= nr {
                break;
            }
            let Some(p) = (row..nr).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            b.swap(row, p);
            let inv = a[row][col].clone();
            for c in col..nc {
                a[row][c] = &a[row][c] / &inv;
            }
            b[row] = &b[row] / &inv;
            for r in 0..nr {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..nc {
                        let sub = &f * &a[row][c];
                        a[r][c] = &a[r][c] - sub;
                    }
                    let sub = &f * &b[row];
                    b[r] = &b[r] - sub;
                }
            }
            pivots.push((row, col));
            row += 1;
        }
        // inconsistency: a zero row with nonzero rhs
        for r in row..nr {
            if !b[r].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![Rat::zero(); nc];
        for (r, c) in pivots {
            x[c] = b[r].clone();
        }
        Ok(Some(x))
    }

    /// `self * x`, used by tests to confirm reported solutions.
    pub fn apply(&self, x: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix has {} cols, vector has {} entries",
                self.cols,
                x.len()
            )));
        }
        let mut out = vec![Rat::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            let add = v * &x[c];
            out[r] = &out[r] + add;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    #[test]
    fn identity_rank() {
        assert_eq!(SparseMatrix::identity(5).rank(), 5);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(SparseMatrix::new(3, 7).rank(), 0);
    }

    #[test]
    fn small_rank() {
        let mut m = SparseMatrix::new(3, 3);
        m.set(0, 0, rat_int(1)).unwrap();
        m.set(0, 1, rat_int(2)).unwrap();
        m.set(1, 0, rat_int(2)).unwrap();
        m.set(1, 1, rat_int(4)).unwrap();
        m.set(2, 2, rat(1, 3)).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn identity_solve() {
        let m = SparseMatrix::identity(3);
        let rhs = vec![rat_int(1), rat_int(2), rat_int(3)];
        assert_eq!(m.solve(&rhs).unwrap(), Some(rhs));
    }

    #[test]
    fn inconsistent_1x1() {
        let m = SparseMatrix::new(1, 1);
        assert_eq!(m.solve(&[rat_int(1)]).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = SparseMatrix::identity(2);
        assert!(matches!(m.solve(&[rat_int(1)]), Err(LinalgError::DimensionMismatch(_))));
    }

    #[test]
    fn solve_then_apply_roundtrip() {
        let mut m = SparseMatrix::new(2, 3);
        m.set(0, 0, rat_int(2)).unwrap();
        m.set(0, 2, rat_int(1)).unwrap();
        m.set(1, 1, rat(1, 2)).unwrap();
        let rhs = vec![rat_int(4), rat_int(1)];
        let x = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(m.apply(&x).unwrap(), rhs);
    }
}
