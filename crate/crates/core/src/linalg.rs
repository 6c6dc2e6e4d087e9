//! Exact linear algebra over fields of exact numbers.
//!
//! Two independent rank routes exist on purpose: Gauss-Jordan elimination over
//! the field itself, and fraction-free (Bareiss) elimination over the integers
//! after clearing denominators row by row.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field: Clone + PartialEq + Debug + Zero + One + Sub<Output = Self> + Neg<Output = Self> {
    fn try_inverse(&self) -> Option<Self>;
}

impl Field for BigRational {
    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// What happened to a row pushed into an [`IncrementalSolver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOutcome {
    /// The row raised the rank.
    Independent,
    /// The row is a combination of earlier rows, right-hand side included.
    Redundant,
    /// The coefficients are a combination of earlier rows but the right-hand
    /// side is not: the system has no solution.
    Inconsistent,
}

/// Row-by-row Gauss-Jordan elimination of `A x = b`. Stored rows are kept in
/// reduced form (pivot 1, zero in every other stored row's pivot column), so
/// the first inconsistent row is detected as soon as it arrives.
#[derive(Debug, Clone)]
pub struct IncrementalSolver<F: Field> {
    columns: usize,
    rows: Vec<(usize, Vec<F>, F)>,
}

impl<F: Field> IncrementalSolver<F> {
    pub fn new(columns: usize) -> Self {
        IncrementalSolver { columns, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn push(&mut self, mut coeffs: Vec<F>, mut rhs: F) -> RowOutcome {
        assert_eq!(coeffs.len(), self.columns, "row length must match the column count");
        for (pivot, row, row_rhs) in &self.rows {
            let factor = coeffs[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (c, r) in coeffs.iter_mut().zip(row) {
                if !r.is_zero() {
                    *c = c.clone() - factor.clone() * r.clone();
                }
            }
            rhs = rhs - factor * row_rhs.clone();
        }
        let Some(pivot) = coeffs.iter().position(|c| !c.is_zero()) else {
            return if rhs.is_zero() { RowOutcome::Redundant } else { RowOutcome::Inconsistent };
        };
        let inv = coeffs[pivot].try_inverse().expect("nonzero element of a field is invertible");
        for c in coeffs.iter_mut() {
            if !c.is_zero() {
                *c = c.clone() * inv.clone();
            }
        }
        rhs = rhs * inv;
        for (_, row, row_rhs) in self.rows.iter_mut() {
            let factor = row[pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (r, c) in row.iter_mut().zip(&coeffs) {
                if !c.is_zero() {
                    *r = r.clone() - factor.clone() * c.clone();
                }
            }
            *row_rhs = row_rhs.clone() - factor * rhs.clone();
        }
        self.rows.push((pivot, coeffs, rhs));
        RowOutcome::Independent
    }

    /// The unique solution, if the pushed rows determine every unknown.
    pub fn solution(&self) -> Option<Vec<F>> {
        if self.rank() < self.columns {
            return None;
        }
        let mut x = vec![F::zero(); self.columns];
        for (pivot, _, rhs) in &self.rows {
            x[*pivot] = rhs.clone();
        }
        Some(x)
    }

    /// Pivot columns in the order they were discovered.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _, _)| *p).collect()
    }
}

/// Unique solution of the square or overdetermined system `A x = b`, or
/// `None` when it is inconsistent or underdetermined.
pub fn solve_unique<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let columns = a.first().map_or(0, Vec::len);
    let mut solver = IncrementalSolver::new(columns);
    for (row, rhs) in a.iter().zip(b) {
        if solver.push(row.clone(), rhs.clone()) == RowOutcome::Inconsistent {
            return None;
        }
    }
    solver.solution()
}

/// Rank by Gauss-Jordan elimination over the field.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let columns = rows.first().map_or(0, Vec::len);
    let mut solver = IncrementalSolver::new(columns);
    for row in rows {
        solver.push(row.clone(), F::zero());
    }
    solver.rank()
}

/// Rank of an integer matrix by fraction-free Bareiss elimination.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(found) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, found);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let value = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = value / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix through [`integer_rank`], clearing each row's
/// denominators first.
pub fn rational_rank_fraction_free(rows: &[Vec<BigRational>]) -> usize {
    let scaled = rows
        .iter()
        .map(|row| {
            let common = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            row.iter().map(|r| r.numer() * (&common / r.denom())).collect()
        })
        .collect();
    integer_rank(scaled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{integer, rational};

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&v| integer(v)).collect()).collect()
    }

    #[test]
    fn solves_small_system() {
        let a = q(&[&[2, 1], &[1, 3]]);
        let b = vec![integer(3), integer(5)];
        assert_eq!(solve_unique(&a, &b).unwrap(), vec![rational(4, 5), rational(7, 5)]);
    }

    #[test]
    fn detects_inconsistency_at_the_right_row() {
        let mut s = IncrementalSolver::new(2);
        assert_eq!(s.push(vec![integer(1), integer(1)], integer(2)), RowOutcome::Independent);
        assert_eq!(s.push(vec![integer(2), integer(2)], integer(4)), RowOutcome::Redundant);
        assert_eq!(s.push(vec![integer(3), integer(3)], integer(7)), RowOutcome::Inconsistent);
        assert_eq!(s.solution(), None);
    }

    #[test]
    fn two_rank_routes_agree() {
        let m = q(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4], &[5, 0, 1, 7]]);
        assert_eq!(rank(&m), 3);
        assert_eq!(rational_rank_fraction_free(&m), 3);
        let with_fractions = vec![vec![rational(1, 2), rational(1, 3)], vec![rational(3, 4), rational(1, 2)]];
        assert_eq!(rank(&with_fractions), 1);
        assert_eq!(rational_rank_fraction_free(&with_fractions), 1);
    }

    #[test]
    fn bareiss_skips_zero_columns() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(4), BigInt::from(3)],
        ];
        assert_eq!(integer_rank(m), 2);
    }
}
