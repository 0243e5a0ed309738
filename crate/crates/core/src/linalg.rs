//! Dense matrices over GF(q) and the submatrix-invertibility tests that
//! characterize linear transforms.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::Field;

/// Refuse submatrix scans that would enumerate more minors than this.
pub const DEFAULT_MINOR_CAP: u128 = 100_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Row and column indices (0-based, strictly increasing) of a singular
/// square submatrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmatrixWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Outcome of [`Matrix::all_submatrices_invertible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorCheck {
    pub size: usize,
    /// Lexicographically first singular submatrix, if any.
    pub witness: Option<SubmatrixWitness>,
}

impl MinorCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadSize(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for &x in &data {
            field.check(x)?;
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[u32]>>(field: Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::BadSize("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Matrix::new(field, rows.len(), cols, data)
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) -> Result<()> {
        self.field.check(x)?;
        self.data[i * self.cols + j] = x;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::BadSize(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cell = &mut out.data[i * other.cols + j];
                    *cell = f.add(*cell, f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[u32], out: &mut [u32]) {
        debug_assert_eq!(x.len(), self.rows);
        debug_assert_eq!(out.len(), self.cols);
        let f = &self.field;
        out.fill(0);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(xi, self.get(i, j)));
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: cols.len(), data }
    }

    /// Drops one row and one column.
    pub fn without(&self, row: usize, col: usize) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != row).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != col).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn stack(&self, below: &Matrix) -> Result<Matrix> {
        if self.field != below.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != below.cols {
            return Err(Error::BadSize("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + below.rows, cols: self.cols, data })
    }

    pub fn determinant(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut buf = self.data.clone();
        Ok(det_in_place(&self.field, &mut buf, self.rows))
    }

    pub fn invert(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let f = &self.field;
        let w = 2 * n;
        let mut aug = vec![0u32; n * w];
        for i in 0..n {
            aug[i * w..i * w + n].copy_from_slice(self.row(i));
            aug[i * w + n + i] = 1;
        }
        for c in 0..n {
            let pivot = (c..n).find(|&r| aug[r * w + c] != 0).ok_or(Error::SingularMatrix)?;
            if pivot != c {
                for j in 0..w {
                    aug.swap(pivot * w + j, c * w + j);
                }
            }
            let inv = f.inv(aug[c * w + c])?;
            for j in 0..w {
                aug[c * w + j] = f.mul(aug[c * w + j], inv);
            }
            for r in 0..n {
                let factor = aug[r * w + c];
                if r == c || factor == 0 {
                    continue;
                }
                for j in 0..w {
                    let sub = f.mul(factor, aug[c * w + j]);
                    aug[r * w + j] = f.sub(aug[r * w + j], sub);
                }
            }
        }
        let data = (0..n).flat_map(|i| aug[i * w + n..(i + 1) * w].to_vec()).collect();
        Ok(Matrix { field: f.clone(), rows: n, cols: n, data })
    }

    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
            let inv = f.inv(a[rank * cols + c]).expect("pivot is nonzero");
            for r in rank + 1..rows {
                let factor = f.mul(a[r * cols + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = f.mul(factor, a[rank * cols + j]);
                    a[r * cols + j] = f.sub(a[r * cols + j], sub);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right null space `{x : self * x^T = 0}`, one vector per row.
    pub fn null_space(&self) -> Matrix {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
            let inv = f.inv(a[r * cols + c]).expect("pivot is nonzero");
            for j in 0..cols {
                a[r * cols + j] = f.mul(a[r * cols + j], inv);
            }
            for i in 0..rows {
                let factor = a[i * cols + c];
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..cols {
                    let sub = f.mul(factor, a[r * cols + j]);
                    a[i * cols + j] = f.sub(a[i * cols + j], sub);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut data = Vec::with_capacity(free.len() * cols);
        for &fc in &free {
            let mut v = vec![0u32; cols];
            v[fc] = 1;
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a[pr * cols + fc]);
            }
            data.extend(v);
        }
        Matrix { field: f.clone(), rows: free.len(), cols, data }
    }

    /// True iff every `t x t` submatrix is invertible. With `row_subset`,
    /// only submatrices whose rows lie in that subset are considered.
    /// Submatrices are scanned in lexicographic order of
    /// `(row indices, column indices)` and the first singular one is returned.
    pub fn all_submatrices_invertible(&self, t: usize, row_subset: Option<&[usize]>) -> Result<MinorCheck> {
        self.all_submatrices_invertible_capped(t, row_subset, DEFAULT_MINOR_CAP)
    }

    pub fn all_submatrices_invertible_capped(
        &self,
        t: usize,
        row_subset: Option<&[usize]>,
        cap: u128,
    ) -> Result<MinorCheck> {
        let all_rows: Vec<usize>;
        let rows = match row_subset {
            Some(r) => {
                if !r.windows(2).all(|w| w[0] < w[1]) || r.last().is_some_and(|&i| i >= self.rows) {
                    return Err(Error::BadSize(format!(
                        "row subset {r:?} must be strictly increasing and below {}",
                        self.rows
                    )));
                }
                r
            }
            None => {
                all_rows = (0..self.rows).collect();
                &all_rows
            }
        };
        if t == 0 || t > rows.len() || t > self.cols {
            return Err(Error::BadSize(format!(
                "t = {t} not in 1..={} for {} rows and {} columns",
                rows.len().min(self.cols),
                rows.len(),
                self.cols
            )));
        }
        let minors = binomial(rows.len() as u64, t as u64) * binomial(self.cols as u64, t as u64);
        if minors > cap {
            return Err(Error::SizeCapExceeded { what: "submatrix scan", needed: minors, cap });
        }

        let mut buf = vec![0u32; t * t];
        for row_set in rows.iter().copied().combinations(t) {
            for col_set in (0..self.cols).combinations(t) {
                if self.minor(&row_set, &col_set, &mut buf) == 0 {
                    return Ok(MinorCheck {
                        size: t,
                        witness: Some(SubmatrixWitness { rows: row_set, cols: col_set }),
                    });
                }
            }
        }
        Ok(MinorCheck { size: t, witness: None })
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize], buf: &mut Vec<u32>) -> u32 {
        let t = rows.len();
        let f = &self.field;
        match t {
            1 => self.get(rows[0], cols[0]),
            2 => {
                let ad = f.mul(self.get(rows[0], cols[0]), self.get(rows[1], cols[1]));
                let bc = f.mul(self.get(rows[0], cols[1]), self.get(rows[1], cols[0]));
                f.sub(ad, bc)
            }
            _ => {
                buf.clear();
                for &i in rows {
                    buf.extend(cols.iter().map(|&j| self.get(i, j)));
                }
                det_in_place(f, buf, t)
            }
        }
    }

    /// Every square submatrix is invertible.
    pub fn is_super_regular(&self) -> bool {
        (1..=self.rows.min(self.cols)).all(|t| {
            self.all_submatrices_invertible_capped(t, None, u128::MAX)
                .map(|c| c.holds())
                .unwrap_or(false)
        })
    }

    /// Scales columns so the first row is all ones, then rows so the first
    /// column is all ones. Nonzero scalings multiply each minor by a nonzero
    /// constant, so every submatrix-invertibility verdict is unchanged.
    pub fn normalize_scaling(&self) -> Result<Matrix> {
        let f = &self.field;
        if let Some(j) = (0..self.cols).find(|&j| self.get(0, j) == 0) {
            return Err(Error::ZeroInFrame { row: 0, col: j });
        }
        if let Some(i) = (0..self.rows).find(|&i| self.get(i, 0) == 0) {
            return Err(Error::ZeroInFrame { row: i, col: 0 });
        }
        let mut out = self.clone();
        for j in 0..self.cols {
            let s = f.inv(self.get(0, j))?;
            for i in 0..self.rows {
                out.data[i * self.cols + j] = f.mul(out.get(i, j), s);
            }
        }
        for i in 0..self.rows {
            let s = f.inv(out.get(i, 0))?;
            for j in 0..self.cols {
                out.data[i * self.cols + j] = f.mul(out.get(i, j), s);
            }
        }
        Ok(out)
    }
}

/// Gaussian elimination with first-nonzero pivoting; destroys `a`.
pub(crate) fn det_in_place(f: &Field, a: &mut [u32], n: usize) -> u32 {
    let mut det = 1u32;
    for c in 0..n {
        let Some(pivot) = (c..n).find(|&r| a[r * n + c] != 0) else {
            return 0;
        };
        if pivot != c {
            for j in c..n {
                a.swap(pivot * n + j, c * n + j);
            }
            det = f.neg(det);
        }
        let p = a[c * n + c];
        det = f.mul(det, p);
        let inv = f.inv(p).expect("pivot is nonzero");
        for r in c + 1..n {
            let factor = f.mul(a[r * n + c], inv);
            if factor == 0 {
                continue;
            }
            for j in c + 1..n {
                let sub = f.mul(factor, a[c * n + j]);
                a[r * n + j] = f.sub(a[r * n + j], sub);
            }
        }
    }
    det
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for row in self.iter_rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.iter_rows() {
            let cells: Vec<String> = row.iter().map(|&x| self.field.format_element(x)).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
