//! Dense LU factorization with partial pivoting.

use crate::error::{Error, Result};
use crate::scalar::{abs, Real};

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.data[row * self.n + col] = value;
    }

    pub fn set_column(&mut self, col: usize, values: &[T]) {
        for (row, &v) in values.iter().enumerate() {
            self.set(row, col, v);
        }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        self.data
            .chunks_exact(self.n)
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// Solves `A x = b`, consuming the matrix.
    pub fn solve(mut self, rhs: &[T]) -> Result<Vec<T>> {
        let n = self.n;
        assert_eq!(rhs.len(), n, "right-hand side length");
        let mut x = rhs.to_vec();
        let a = &mut self.data;
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&i, &j| {
                    abs(a[i * n + col])
                        .partial_cmp(&abs(a[j * n + col]))
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(col);
            let pivot = a[pivot_row * n + col];
            if pivot == T::zero() || !pivot.is_finite() {
                return Err(Error::SingularMatrix(col));
            }
            if pivot_row != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot_row * n + k);
                }
                x.swap(col, pivot_row);
            }
            let (upper, lower) = a.split_at_mut((col + 1) * n);
            let pivot_row = &upper[col * n..];
            for (offset, row) in lower.chunks_exact_mut(n).enumerate() {
                let factor = row[col] / pivot;
                if factor == T::zero() {
                    continue;
                }
                row[col] = T::zero();
                for k in col + 1..n {
                    row[k] = row[k] - factor * pivot_row[k];
                }
                let i = col + 1 + offset;
                x[i] = x[i] - factor * x[col];
            }
        }
        for col in (0..n).rev() {
            let mut sum = x[col];
            for k in col + 1..n {
                sum = sum - a[col * n + k] * x[k];
            }
            x[col] = sum / a[col * n + col];
        }
        Ok(x)
    }
}
