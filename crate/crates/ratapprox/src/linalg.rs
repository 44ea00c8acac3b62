//! Dense LU solver with partial pivoting and 1-norm condition numbers.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect())
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// 1-norm of a vector.
pub fn norm1<T: Real>(v: &[T]) -> T {
    v.iter().map(|x| x.abs()).sum()
}

/// LU factorization `PA = LU`, stored compactly.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: Matrix<T>,
    perm: Vec<usize>,
    norm: T,
}

/// Pivot threshold factor relative to `eps·‖A‖₁`.
const PIVOT_FACTOR: f64 = 1e3;

impl<T: Real> Lu<T> {
    pub fn factor(a: &Matrix<T>) -> Result<Self> {
        a.require_square()?;
        let n = a.rows;
        let norm = a.norm1();
        let tiny = T::lit(PIVOT_FACTOR) * T::epsilon() * norm;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| lu[(i, k)].abs().partial_cmp(&lu[(j, k)].abs()).unwrap())
                .unwrap();
            let pivot = lu[(p, k)];
            if !(pivot.abs() > tiny) {
                return Err(Error::Singular { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            for i in k + 1..n {
                let l = lu[(i, k)] / pivot;
                lu[(i, k)] = l;
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] = lu[(i, j)] - l * u;
                }
            }
        }
        Ok(Self { lu, perm, norm })
    }

    pub fn solve(&self, h: &[T]) -> Result<Vec<T>> {
        let n = self.lu.rows;
        if h.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side has {} entries, system has {n}",
                h.len()
            )));
        }
        let mut y: Vec<T> = self.perm.iter().map(|&p| h[p]).collect();
        for i in 0..n {
            for j in 0..i {
                y[i] = y[i] - self.lu[(i, j)] * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                y[i] = y[i] - self.lu[(i, j)] * y[j];
            }
            y[i] = y[i] / self.lu[(i, i)];
        }
        Ok(y)
    }

    /// `‖A‖₁ ‖A⁻¹‖₁` from the explicit inverse; `None` if the inverse is not finite.
    pub fn condition(&self) -> Option<T> {
        let n = self.lu.rows;
        let mut inv_norm = T::zero();
        let mut e = vec![T::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = T::zero());
            e[j] = T::one();
            let col = self.solve(&e).ok()?;
            let s = norm1(&col);
            if !s.is_finite() {
                return None;
            }
            inv_norm = inv_norm.max(s);
        }
        let c = self.norm * inv_norm;
        c.is_finite().then_some(c)
    }
}

/// Solution of a linear system with its condition number.
#[derive(Debug, Clone)]
pub struct Solution<T> {
    pub x: Vec<T>,
    pub condition: Option<T>,
}

/// Solves `A x = h`.
pub fn solve<T: Real>(a: &Matrix<T>, h: &[T]) -> Result<Solution<T>> {
    let lu = Lu::factor(a)?;
    let x = lu.solve(h)?;
    Ok(Solution { x, condition: lu.condition() })
}

/// `‖A‖₁ ‖A⁻¹‖₁`.
pub fn condition_number<T: Real>(a: &Matrix<T>) -> Result<T> {
    Lu::factor(a)?
        .condition()
        .ok_or(Error::Singular { pivot: a.rows().saturating_sub(1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn solves_small_system() {
        let a = Matrix::from_rows(vec![vec![2.0f64, 1.0], vec![1.0, 3.0]]).unwrap();
        let s = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((s.x[0] - 0.8).abs() < 1e-15 && (s.x[1] - 1.4).abs() < 1e-15);
    }

    #[test]
    fn identity_condition_is_one() {
        assert_eq!(condition_number(&Matrix::<f64>::identity(5)).unwrap(), 1.0);
    }

    #[test]
    fn hilbert_condition_matches_known_value() {
        // κ₁ of the 4x4 Hilbert matrix is 28375 (exact inverse has integer entries).
        let h = Matrix::from_rows(
            (0..4).map(|i| (0..4).map(|j| 1.0 / (i + j + 1) as f64).collect()).collect(),
        )
        .unwrap();
        let c = condition_number(&h).unwrap();
        assert!((c - 28375.0).abs() < 1e-6 * 28375.0);
    }

    #[test]
    fn singular_detected() {
        let a = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(solve(&a, &[1.0, 1.0]), Err(Error::Singular { .. })));
    }

    #[test]
    fn shape_mismatch_detected() {
        let a = Matrix::<f64>::zeros(2, 3);
        assert!(matches!(solve(&a, &[1.0, 1.0]), Err(Error::ShapeMismatch(_))));
        let b = Matrix::<f64>::identity(2);
        assert!(matches!(solve(&b, &[1.0]), Err(Error::ShapeMismatch(_))));
    }

    fn well_conditioned() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
        (2usize..8).prop_flat_map(|n| {
            (
                proptest::collection::vec(proptest::collection::vec(-1.0..1.0f64, n), n),
                proptest::collection::vec(-1.0..1.0f64, n),
            )
        })
    }

    proptest! {
        #[test]
        fn residual_small_and_condition_at_least_one((mut rows, h) in well_conditioned()) {
            let n = rows.len();
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] += n as f64 + 1.0;
            }
            let a = Matrix::from_rows(rows).unwrap();
            let s = solve(&a, &h).unwrap();
            let r = a.mul_vec(&s.x).unwrap();
            let resid: f64 = r.iter().zip(&h).map(|(a, b)| (a - b).abs()).sum();
            let c = s.condition.unwrap();
            prop_assert!(c >= 1.0);
            prop_assert!(resid <= 1e-12 * c * (1.0 + norm1(&h)));
        }
    }
}
