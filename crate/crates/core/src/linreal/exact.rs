//! Dense matrices and rank computations, generic over the scalar.
//!
//! The algorithms only assume ring (or field) operations from `num-traits`,
//! so they instantiate at the exact scalars [`crate::Int`] and [`crate::Rat`]
//! used on verdict paths, as well as at floats for scratch work.

use num_traits::{One, Zero};
use std::ops::{Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Rank by fraction-free (Bareiss) elimination with row and column
/// pivoting. Divisions are exact over any integral domain.
pub fn fraction_free_rank<T>(mut m: Matrix<T>) -> usize
where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Mul<Output = T>
        + Sub<Output = T>
        + Div<Output = T>,
{
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0usize;
    let mut prev = T::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| *m.get(r, col) != T::zero()) else {
            continue;
        };
        m.swap_rows(rank, pivot_row);
        let pivot = m.get(rank, col).clone();
        for r in rank + 1..rows {
            let factor = m.get(r, col).clone();
            for c in col + 1..cols {
                let v = pivot.clone() * m.get(r, c).clone()
                    - factor.clone() * m.get(rank, c).clone();
                m.set(r, c, v / prev.clone());
            }
            m.set(r, col, T::zero());
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Rank by plain Gaussian elimination over a field. Used as the independent
/// oracle route against [`fraction_free_rank`].
pub fn field_rank<T>(mut m: Matrix<T>) -> usize
where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Mul<Output = T>
        + Sub<Output = T>
        + Div<Output = T>
        + Neg<Output = T>,
{
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| *m.get(r, col) != T::zero()) else {
            continue;
        };
        m.swap_rows(rank, pivot_row);
        let pivot = m.get(rank, col).clone();
        for r in rank + 1..rows {
            if *m.get(r, col) == T::zero() {
                continue;
            }
            let factor = m.get(r, col).clone() / pivot.clone();
            for c in col..cols {
                let v = m.get(r, c).clone() - factor.clone() * m.get(rank, c).clone();
                m.set(r, c, v);
            }
        }
        rank += 1;
    }
    rank
}
