//! Dense matrices over a single exact field.

use std::fmt;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A dense row-major matrix whose entries all live in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// Result of Gauss–Jordan elimination.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// The reduced row-echelon form; zero rows sit at the bottom.
    pub reduced: Matrix,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, field: Field, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { rows, cols, field, entries })
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Matrix::new(n, cols, field, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length differs from row count".into()));
        }
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                entries.push(c[i].clone());
            }
        }
        Matrix::new(rows, cols, field, entries)
    }

    /// Integer matrix, row-major.
    pub fn from_i64(field: Field, rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        Matrix::new(rows, cols, field, values.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "scalar field mismatch");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, field: self.field, entries }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        if v.iter().any(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Gauss–Jordan elimination. The pivot of each column is the first
    /// nonzero entry at or below the current row.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.entries[row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &(&factor * pv);
                    m.entries[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Rank together with a kernel basis (one vector per free column).
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let Echelon { reduced, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let kernel = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -reduced.get(i, f);
                }
                v
            })
            .collect();
        (pivots.len(), kernel)
    }

    /// Solves `self · c = v`; `None` when `v` is outside the column span.
    pub fn solve(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        if v.iter().any(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch);
        }
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.push(v[r].clone());
        }
        let augmented = Matrix { rows: self.rows, cols: self.cols + 1, field: self.field, entries };
        let Echelon { reduced, pivots } = augmented.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut c = vec![self.field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            c[pc] = reduced.get(i, self.cols).clone();
        }
        Ok(Some(c))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank and kernel basis of `m`.
pub fn mat_rank_kernel(m: &Matrix) -> (usize, Vec<Vec<Scalar>>) {
    m.rank_kernel()
}

/// Coefficients `c` with `m · c = v`, or `None` when `v` is not in the column span.
pub fn solve_membership(m: &Matrix, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    m.solve(v)
}

/// Reduced row-echelon basis of the span of `vectors` (all of length `len`).
pub fn row_reduced_basis(field: Field, len: usize, vectors: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    if vectors.iter().any(|v| v.len() != len) {
        return Err(Error::DimensionMismatch("vector length differs from ambient dimension".into()));
    }
    let m = Matrix::from_rows(field, vectors.to_vec())?;
    let Echelon { reduced, pivots } = m.echelon();
    Ok((0..pivots.len()).map(|i| reduced.row(i).to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn identity_has_full_rank() {
        let (rank, kernel) = mat_rank_kernel(&Matrix::identity(3, q()));
        assert_eq!(rank, 3);
        assert!(kernel.is_empty());
    }

    #[test]
    fn proportional_rows() {
        let m = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]).unwrap();
        let (rank, kernel) = mat_rank_kernel(&m);
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 1);
        // span{(2,-1)}: the computed vector is (-2, 1)
        let v = &kernel[0];
        assert_eq!(&v[0] * &q().from_i64(-1), &v[1] * &q().from_i64(2));
        assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn cubic_catalecticant_window() {
        // rows α0, α1 against α0², α0α1, α1², for x0^(3) + x1^(3)
        let m = Matrix::from_i64(q(), 2, 3, &[1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f3 = Field::prime(3).unwrap();
        let entries = vec![q().one(), f3.one()];
        assert_eq!(Matrix::new(1, 2, q(), entries), Err(Error::FieldMismatch));
        let m = Matrix::identity(2, q());
        assert_eq!(m.solve(&[f3.one(), f3.one()]), Err(Error::FieldMismatch));
    }

    #[test]
    fn membership() {
        let id = Matrix::identity(3, q());
        let e2 = vec![q().zero(), q().one(), q().zero()];
        assert_eq!(solve_membership(&id, &e2).unwrap(), Some(e2.clone()));

        let m = Matrix::from_i64(q(), 2, 1, &[1, 0]).unwrap();
        assert_eq!(solve_membership(&m, &[q().zero(), q().one()]).unwrap(), None);
        assert!(solve_membership(&m, &[q().zero()]).is_err());
    }

    #[test]
    fn sextic_evaluation_vectors() {
        // columns ν6([1:0]) and ν6([0:1]); target x0^(6) + x1^(6)
        let mut a = vec![q().zero(); 7];
        let mut b = vec![q().zero(); 7];
        a[0] = q().one();
        b[6] = q().one();
        let m = Matrix::from_columns(q(), 7, &[a.clone(), b.clone()]).unwrap();
        let v: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        assert_eq!(solve_membership(&m, &v).unwrap(), Some(vec![q().one(), q().one()]));
    }

    #[test]
    fn rank_over_prime_field_can_drop() {
        // det = 3
        let m = Matrix::from_i64(q(), 2, 2, &[1, 1, 1, 4]).unwrap();
        assert_eq!(m.rank(), 2);
        let f3 = Field::prime(3).unwrap();
        let m3 = Matrix::from_i64(f3, 2, 2, &[1, 1, 1, 4]).unwrap();
        assert_eq!(m3.rank(), 1);
    }
}
