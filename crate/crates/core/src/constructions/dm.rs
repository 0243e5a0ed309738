//! Difference matrices over the cyclic group Z_g and their correspondence
//! with matrices whose 1x1 and 2x2 submatrices are all invertible.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A `(g, k; lambda)` difference matrix: `k` rows of `g * lambda` entries
/// in Z_g such that the entrywise differences of any two rows hit every
/// group element exactly `lambda` times.
#[derive(Clone, PartialEq, Eq)]
pub struct DifferenceMatrix {
    g: u32,
    k: usize,
    lambda: usize,
    entries: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmFailure {
    pub rows: (usize, usize),
    /// Group element whose difference count is wrong.
    pub element: u32,
    pub observed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmReport {
    pub g: u32,
    pub k: usize,
    pub lambda: usize,
    pub failure: Option<DmFailure>,
}

impl DmReport {
    pub fn verdict(&self) -> bool {
        self.failure.is_none()
    }
}

impl DifferenceMatrix {
    pub fn new(g: u32, k: usize, lambda: usize, entries: Vec<u32>) -> Result<Self> {
        if g == 0 || lambda == 0 {
            return Err(Error::BadSize("difference matrix needs g >= 1 and lambda >= 1".into()));
        }
        let width = g as usize * lambda;
        if entries.len() != k * width {
            return Err(Error::BadSize(format!(
                "({g},{k};{lambda}) needs {k}x{width} = {} entries, got {}",
                k * width,
                entries.len()
            )));
        }
        if let Some(&x) = entries.iter().find(|&&x| x >= g) {
            return Err(Error::ElementOutOfRange { value: u64::from(x), order: g });
        }
        Ok(DifferenceMatrix { g, k, lambda, entries })
    }

    /// `d_ij = i * j mod g`, a `(g, g; 1)` difference matrix when `g` is prime.
    pub fn multiplication_table(g: u32) -> Self {
        let entries = (0..g).flat_map(|i| (0..g).map(move |j| (i * j) % g)).collect();
        DifferenceMatrix { g, k: g as usize, lambda: 1, entries }
    }

    pub fn group_order(&self) -> u32 {
        self.g
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn width(&self) -> usize {
        self.g as usize * self.lambda
    }

    pub fn row(&self, i: usize) -> &[u32] {
        let w = self.width();
        &self.entries[i * w..(i + 1) * w]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.width())
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Checks the difference multiset of every unordered row pair.
    pub fn verify(&self) -> DmReport {
        let g = self.g;
        let mut counts = vec![0usize; g as usize];
        for i in 0..self.k {
            for j in i + 1..self.k {
                counts.fill(0);
                for (&a, &b) in self.row(i).iter().zip(self.row(j)) {
                    counts[((a + g - b) % g) as usize] += 1;
                }
                if let Some(e) = counts.iter().position(|&c| c != self.lambda) {
                    return DmReport {
                        g,
                        k: self.k,
                        lambda: self.lambda,
                        failure: Some(DmFailure { rows: (i, j), element: e as u32, observed: counts[e] }),
                    };
                }
            }
        }
        DmReport { g, k: self.k, lambda: self.lambda, failure: None }
    }
}

impl fmt::Debug for DifferenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DifferenceMatrix ({},{};{})", self.g, self.k, self.lambda)?;
        for row in self.iter_rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// A difference matrix together with the primitive element used to take
/// logarithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmConversion {
    pub dm: DifferenceMatrix,
    pub alpha: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixConversion {
    pub matrix: Matrix,
    pub alpha: u32,
    /// Whether the matrix is invertible, i.e. actually defines a transform.
    pub invertible: bool,
}

/// Takes entrywise discrete logarithms to the base of the field's primitive
/// element. Needs a `(q-1) x (q-1)` matrix with no zero entries and every
/// 2x2 submatrix invertible; the result is a `(q-1, q-1; 1)` difference
/// matrix over Z_{q-1}.
pub fn strong_to_dm(m: &Matrix) -> Result<DmConversion> {
    let f = m.field();
    let g = f.order() - 1;
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.rows() != g as usize {
        return Err(Error::SizeMismatch(format!("expected a {g}x{g} matrix over {f}, got {0}x{0}", m.rows())));
    }
    for i in 0..m.rows() {
        if let Some(j) = m.row(i).iter().position(|&x| x == 0) {
            return Err(Error::ZeroEntry { row: i, col: j });
        }
    }
    if m.rows() >= 2 {
        if let Some(w) = m.all_submatrices_invertible(2, None)?.witness {
            return Err(Error::Not2Regular(w));
        }
    }
    let alpha = f.primitive_element();
    let entries = m.entries().iter().map(|&x| f.discrete_log(alpha, x)).collect::<Result<Vec<_>>>()?;
    let dm = DifferenceMatrix::new(g, m.rows(), 1, entries)?;
    Ok(DmConversion { dm, alpha })
}

/// `m_ij = alpha^{d_ij}` for a `(q-1, q-1; 1)` difference matrix. The result
/// has no zero entries and all 2x2 submatrices invertible, but need not be
/// invertible itself.
pub fn dm_to_matrix(dm: &DifferenceMatrix, field: &Field) -> Result<MatrixConversion> {
    let g = field.order() - 1;
    if dm.group_order() != g || dm.rows() != g as usize || dm.lambda() != 1 {
        return Err(Error::SizeMismatch(format!(
            "{field} needs a ({g},{g};1) difference matrix, got ({},{};{})",
            dm.group_order(),
            dm.rows(),
            dm.lambda()
        )));
    }
    if let Some(fail) = dm.verify().failure {
        return Err(Error::NotDifferenceMatrix(fail.rows.0, fail.rows.1));
    }
    let alpha = field.primitive_element();
    let data = dm.entries().iter().map(|&d| field.pow(alpha, i64::from(d))).collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::new(field.clone(), dm.rows(), dm.rows(), data)?;
    let invertible = matrix.determinant()? != 0;
    Ok(MatrixConversion { matrix, alpha, invertible })
}
