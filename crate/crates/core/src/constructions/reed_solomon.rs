//! Restricted transforms from parity-check matrices of extended
//! Reed-Solomon codes. Any `t` columns of a `t`-row parity-check matrix of
//! an MDS code are independent, which is exactly the criterion for a
//! `{1..t}`-restricted transform once the matrix is completed to an
//! invertible square.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// `t x (q+1)` parity-check matrix of the doubly extended Reed-Solomon code:
/// the unit column `(0, .., 0, 1)` followed by `(1, w, .., w^{t-1})` for
/// every `w` in encoding order.
pub fn doubly_extended_parity_check(field: &Field, t: usize) -> Result<Matrix> {
    let q = field.order() as usize;
    if t == 0 || t > q + 1 {
        return Err(Error::BadT { t, max: q + 1 });
    }
    let cols = q + 1;
    let mut m = Matrix::zeros(field.clone(), t, cols);
    m.set(t - 1, 0, 1)?;
    for w in field.elements() {
        for i in 0..t {
            m.set(i, w as usize + 1, field.pow(w, i as i64)?)?;
        }
    }
    Ok(m)
}

/// `3 x (q+2)` parity-check matrix of the triply extended Reed-Solomon code:
/// `(1, w, w^2)` for each nonzero `w` in encoding order, then the three
/// unit columns.
pub fn triply_extended_parity_check(field: &Field) -> Matrix {
    let q = field.order() as usize;
    let mut data = vec![0u32; 3 * (q + 2)];
    let cols = q + 2;
    for w in 1..field.order() {
        let j = w as usize - 1;
        data[j] = 1;
        data[cols + j] = w;
        data[2 * cols + j] = field.mul(w, w);
    }
    for i in 0..3 {
        data[i * cols + q - 1 + i] = 1;
    }
    Matrix::new(field.clone(), 3, cols, data).expect("entries are field elements")
}

/// Appends unit rows `e_0, e_1, ..` in increasing order, skipping any that
/// would make the rows dependent, until the matrix is square. Fails if
/// `top` does not have full row rank.
pub fn complete_with_unit_rows(top: &Matrix) -> Result<Matrix> {
    let n = top.cols();
    if top.rows() > n || top.rank() != top.rows() {
        return Err(Error::SingularMatrix);
    }
    let mut m = top.clone();
    for i in 0..n {
        if m.rows() == n {
            break;
        }
        let mut unit = Matrix::zeros(top.field().clone(), 1, n);
        unit.set(0, i, 1)?;
        let candidate = m.stack(&unit)?;
        if candidate.rank() == candidate.rows() {
            m = candidate;
        }
    }
    if m.rows() != n || m.determinant()? == 0 {
        return Err(Error::SingularMatrix);
    }
    Ok(m)
}

fn check_independent(top: &Matrix, t: usize) -> Result<()> {
    let rows: Vec<usize> = (0..top.rows()).collect();
    match top.all_submatrices_invertible(t, Some(&rows))?.witness {
        Some(w) => Err(Error::DependentColumns(w)),
        None => Ok(()),
    }
}

/// `(q+1) x (q+1)` matrix whose inverse map is a `{1..t}`-restricted
/// `(t, q+1, q)`-AONT.
pub fn rs_restricted_doubly(field: &Field, t: usize) -> Result<Matrix> {
    let h = doubly_extended_parity_check(field, t)?;
    check_independent(&h, t)?;
    complete_with_unit_rows(&h)
}

/// `(q+2) x (q+2)` matrix, `q = 2^n`, whose inverse map is a
/// `{1,2,3}`-restricted `(3, q+2, q)`-AONT.
pub fn rs_restricted_triply(n: u32) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::BadDegree(n));
    }
    rs_restricted_triply_over(&Field::new(2, n, None)?)
}

/// The triply extended construction over an arbitrary field. Only fields of
/// characteristic 2 give a parity-check matrix with every three columns
/// independent; elsewhere this returns the dependent triple.
pub fn rs_restricted_triply_over(field: &Field) -> Result<Matrix> {
    let h = triply_extended_parity_check(field);
    check_independent(&h, 3)?;
    complete_with_unit_rows(&h)
}

/// The dual-code variant: the null space of the triply extended
/// parity-check matrix is a `(q-1) x (q+2)` matrix with every `q-1` columns
/// independent, giving a `{1..q-1}`-restricted `(q-1, q+2, q)`-AONT.
pub fn rs_restricted_triply_dual(n: u32) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::BadDegree(n));
    }
    let field = Field::new(2, n, None)?;
    let h = triply_extended_parity_check(&field);
    check_independent(&h, 3)?;
    let dual = h.null_space();
    check_independent(&dual, dual.rows())?;
    complete_with_unit_rows(&dual)
}
