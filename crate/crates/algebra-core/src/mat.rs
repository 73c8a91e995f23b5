//! Small dense matrices over an exact [`Scalar`] field.
//!
//! These back the finite matrix groups (entries in `Q(zeta_16)`), the
//! symplectic/connection-matrix checks (entries in `Q(sqrt 2)`), and every
//! exact linear solve in the workspace (Frobenius recursions, quasi-modular
//! fits, propagator ansatz matching).  Dimensions here are tiny (at most a
//! few hundred rows), so the implementation favors clarity: plain
//! Gauss-Jordan elimination with exact pivoting.

use crate::error::AlgebraError;
use crate::scalar::Scalar;

/// A dense `rows x cols` matrix over the exact field `T`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<T> {
    data: Vec<Vec<T>>,
}

impl<T: Scalar> Mat<T> {
    /// Build from explicit rows.
    ///
    /// # Panics
    /// Panics if the rows are ragged or empty; matrices here are always
    /// constructed from static shapes, so that is a programming error.
    pub fn from_rows(data: Vec<Vec<T>>) -> Self {
        assert!(!data.is_empty(), "matrix needs at least one row");
        let w = data[0].len();
        assert!(w > 0, "matrix needs at least one column");
        assert!(
            data.iter().all(|r| r.len() == w),
            "matrix rows must have equal length"
        );
        Mat { data }
    }

    /// Build a `rows x cols` matrix from a function of the index pair.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..rows)
            .map(|i| (0..cols).map(|j| f(i, j)).collect())
            .collect();
        Mat::from_rows(data)
    }

    /// The `n x n` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    /// The `n x n` identity matrix.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.data.len()
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.data[0].len()
    }

    /// Entry at `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i][j]
    }

    /// Mutable entry at `(i, j)`.
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i][j]
    }

    /// Borrow the underlying rows.
    pub fn rows(&self) -> &[Vec<T>] {
        &self.data
    }

    /// Matrix sum.
    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_same_shape(rhs)?;
        Ok(Self::from_fn(self.nrows(), self.ncols(), |i, j| {
            self.at(i, j).add(rhs.at(i, j))
        }))
    }

    /// Matrix difference.
    pub fn sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_same_shape(rhs)?;
        Ok(Self::from_fn(self.nrows(), self.ncols(), |i, j| {
            self.at(i, j).sub(rhs.at(i, j))
        }))
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if self.nrows() != rhs.nrows() || self.ncols() != rhs.ncols() {
            return Err(AlgebraError::ShapeMismatch(
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols(),
            ));
        }
        Ok(())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.ncols() != rhs.nrows() {
            return Err(AlgebraError::ShapeMismatch(
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols(),
            ));
        }
        let n = self.ncols();
        Ok(Self::from_fn(self.nrows(), rhs.ncols(), |i, j| {
            let mut acc = T::zero();
            for k in 0..n {
                if self.at(i, k).is_zero() || rhs.at(k, j).is_zero() {
                    continue;
                }
                acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
            }
            acc
        }))
    }

    /// Multiply every entry by a scalar.
    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(self.nrows(), self.ncols(), |i, j| self.at(i, j).mul(s))
    }

    /// Entrywise negation.
    pub fn neg(&self) -> Self {
        Self::from_fn(self.nrows(), self.ncols(), |i, j| self.at(i, j).neg())
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols(), self.nrows(), |i, j| self.at(j, i).clone())
    }

    /// Matrix power with a non-negative exponent.
    pub fn pow(&self, mut e: u64) -> Result<Self, AlgebraError> {
        if self.nrows() != self.ncols() {
            return Err(AlgebraError::ShapeMismatch(
                self.nrows(),
                self.ncols(),
                self.ncols(),
                self.nrows(),
            ));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.nrows());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>, AlgebraError> {
        if v.len() != self.ncols() {
            return Err(AlgebraError::ShapeMismatch(self.nrows(), self.ncols(), v.len(), 1));
        }
        Ok((0..self.nrows())
            .map(|i| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.at(i, k).is_zero() {
                        acc = acc.add(&self.at(i, k).mul(x));
                    }
                }
                acc
            })
            .collect())
    }

    /// Exact inverse via Gauss-Jordan elimination.
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.nrows() != self.ncols() {
            return Err(AlgebraError::ShapeMismatch(
                self.nrows(),
                self.ncols(),
                self.ncols(),
                self.nrows(),
            ));
        }
        let n = self.nrows();
        let mut aug: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut row: Vec<T> = self.data[i].clone();
                row.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(AlgebraError::Singular)?;
            aug.swap(col, piv);
            let inv_p = aug[col][col].inv().ok_or(AlgebraError::Singular)?;
            for x in aug[col].iter_mut() {
                *x = x.mul(&inv_p);
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..2 * n {
                        let sub = f.mul(&aug[col][c]);
                        aug[r][c] = aug[r][c].sub(&sub);
                    }
                }
            }
        }
        let data = aug.into_iter().map(|row| row[n..].to_vec()).collect();
        Ok(Mat { data })
    }

    /// Map entries into another scalar type.
    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat::from_fn(self.nrows(), self.ncols(), |i, j| f(self.at(i, j)))
    }

    /// Maximum over entries of a caller-supplied non-negative "size" measure;
    /// handy for expressing `max |A_ij|`-style bounds exactly.
    pub fn max_entry_by<F: Fn(&T) -> f64>(&self, f: F) -> f64 {
        let mut m = 0.0f64;
        for row in &self.data {
            for e in row {
                let v = f(e);
                if v > m {
                    m = v;
                }
            }
        }
        m
    }
}

/// Outcome of reducing a linear system `A x = b`: one particular solution and
/// a basis of the homogeneous solution space.
#[derive(Clone, Debug)]
pub struct LinSolution<T> {
    /// A particular solution (free variables set to zero).
    pub particular: Vec<T>,
    /// Basis vectors spanning the nullspace of `A`.
    pub nullspace: Vec<Vec<T>>,
    /// Rank of `A`.
    pub rank: usize,
}

/// Solve `A x = b` exactly, reporting the full affine solution set.
///
/// Returns [`AlgebraError::InconsistentSystem`] if `b` is not in the column
/// space of `A`.
pub fn solve_general<T: Scalar>(a: &Mat<T>, b: &[T]) -> Result<LinSolution<T>, AlgebraError> {
    if b.len() != a.nrows() {
        return Err(AlgebraError::ShapeMismatch(a.nrows(), a.ncols(), b.len(), 1));
    }
    let rows = a.nrows();
    let cols = a.ncols();
    let mut aug: Vec<Vec<T>> = (0..rows)
        .map(|i| {
            let mut r = a.rows()[i].clone();
            r.push(b[i].clone());
            r
        })
        .collect();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(piv) = (row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(row, piv);
        let inv_p = aug[row][col].inv().ok_or(AlgebraError::Singular)?;
        for x in aug[row].iter_mut() {
            *x = x.mul(&inv_p);
        }
        for r in 0..rows {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=cols {
                    let sub = f.mul(&aug[row][c]);
                    aug[r][c] = aug[r][c].sub(&sub);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let rank = pivot_cols.len();

    // Consistency: a zero row of A with nonzero rhs is a contradiction.
    for r in rank..rows {
        if !aug[r][cols].is_zero() {
            return Err(AlgebraError::InconsistentSystem);
        }
    }

    let mut particular = vec![T::zero(); cols];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = aug[r][cols].clone();
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut nullspace = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![T::zero(); cols];
        v[fc] = T::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = aug[r][fc].neg();
        }
        nullspace.push(v);
    }

    Ok(LinSolution {
        particular,
        nullspace,
        rank,
    })
}

/// Solve `A x = b` exactly, requiring a unique solution.
pub fn solve_unique<T: Scalar>(a: &Mat<T>, b: &[T]) -> Result<Vec<T>, AlgebraError> {
    let sol = solve_general(a, b)?;
    if !sol.nullspace.is_empty() {
        return Err(AlgebraError::Underdetermined {
            rank: sol.rank,
            unknowns: a.ncols(),
        });
    }
    Ok(sol.particular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qi, qq, Q};

    fn m(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| qi(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn product_and_identity() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let id = Mat::<Q>::identity(2);
        assert_eq!(a.mul(&id).unwrap(), a);
        let b = m(&[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, m(&[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Mat::identity(3));
    }

    #[test]
    fn singular_matrix_rejected() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(matches!(a.inv(), Err(AlgebraError::Singular)));
    }

    #[test]
    fn solve_unique_system() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = solve_unique(&a, &[qi(3), qi(1)]).unwrap();
        assert_eq!(x, vec![qi(2), qi(1)]);
    }

    #[test]
    fn solve_reports_nullspace() {
        // x + y + z = 1 with a repeated equation: rank 1, nullspace dim 2.
        let a = m(&[&[1, 1, 1], &[2, 2, 2]]);
        let sol = solve_general(&a, &[qi(1), qi(2)]).unwrap();
        assert_eq!(sol.rank, 1);
        assert_eq!(sol.nullspace.len(), 2);
        // Every reported vector is an actual solution direction.
        for v in &sol.nullspace {
            let img = a.apply(v).unwrap();
            assert!(img.iter().all(num::Zero::is_zero));
        }
        assert_eq!(a.apply(&sol.particular).unwrap(), vec![qi(1), qi(2)]);
    }

    #[test]
    fn inconsistent_detected() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(matches!(
            solve_general(&a, &[qi(1), qi(3)]),
            Err(AlgebraError::InconsistentSystem)
        ));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let a = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.pow(5).unwrap(), m(&[&[1, 5], &[0, 1]]));
        assert_eq!(a.pow(0).unwrap(), Mat::identity(2));
    }

    #[test]
    fn rational_entries() {
        let a = Mat::from_rows(vec![vec![qq(1, 2), qq(1, 3)], vec![qq(1, 4), qq(1, 5)]]);
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Mat::identity(2));
    }
}
