//! Explicit constructions: Cauchy and Vandermonde matrices, polynomial
//! orthogonal arrays, difference-matrix conversions and the extended
//! Reed-Solomon restricted transforms.

mod dm;
mod oa;
mod reed_solomon;

pub use dm::{dm_to_matrix, strong_to_dm, DifferenceMatrix, DmConversion, DmFailure, DmReport, MatrixConversion};
pub use oa::oa_rs;
pub use reed_solomon::{
    complete_with_unit_rows, doubly_extended_parity_check, rs_restricted_doubly, rs_restricted_triply,
    rs_restricted_triply_dual, rs_restricted_triply_over, triply_extended_parity_check,
};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// `m_ij = 1 / (r_i - c_j)`. Square Cauchy matrices are super-regular.
pub fn cauchy(field: &Field, r: &[u32], c: &[u32]) -> Result<Matrix> {
    let mut seen = vec![false; field.order() as usize];
    for &x in r.iter().chain(c) {
        field.check(x)?;
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::RepeatedPoint(x));
        }
    }
    let mut data = Vec::with_capacity(r.len() * c.len());
    for &ri in r {
        for &cj in c {
            data.push(field.inv(field.sub(ri, cj))?);
        }
    }
    Matrix::new(field.clone(), r.len(), c.len(), data)
}

/// `s x s` Cauchy matrix on the points `0..s` (rows) and `s..2s` (columns),
/// by encoding.
pub fn cauchy_square(field: &Field, s: usize) -> Result<Matrix> {
    if 2 * s > field.order() as usize {
        return Err(Error::BadSize(format!("a {s}x{s} Cauchy matrix needs q >= {}", 2 * s)));
    }
    let r: Vec<u32> = (0..s as u32).collect();
    let c: Vec<u32> = (s as u32..2 * s as u32).collect();
    cauchy(field, &r, &c)
}

/// `m_ij = points_j^i` for `i = 0..s`.
pub fn vandermonde(field: &Field, points: &[u32]) -> Result<Matrix> {
    let mut seen = vec![false; field.order() as usize];
    for &x in points {
        field.check(x)?;
        if x == 0 {
            return Err(Error::ZeroPoint);
        }
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::RepeatedPoint(x));
        }
    }
    let s = points.len();
    let mut data = Vec::with_capacity(s * s);
    for i in 0..s {
        for &p in points {
            data.push(field.pow(p, i as i64)?);
        }
    }
    Matrix::new(field.clone(), s, s, data)
}

/// Vandermonde matrix on every nonzero element, in encoding order.
pub fn vandermonde_all_nonzero(field: &Field) -> Result<Matrix> {
    let points: Vec<u32> = (1..field.order()).collect();
    vandermonde(field, &points)
}

/// Deletes one row and one column of a square matrix. Submatrices of the
/// result are submatrices of the input, but the result itself may be
/// singular; callers re-verify.
pub fn shrink(m: &Matrix, row: usize, col: usize) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.rows() < 2 {
        return Err(Error::BadIndex("cannot shrink a 1x1 matrix".into()));
    }
    if row >= m.rows() || col >= m.cols() {
        return Err(Error::BadIndex(format!("({row}, {col}) outside a {0}x{0} matrix", m.rows())));
    }
    Ok(m.without(row, col))
}

/// Shrinks an invertible matrix while keeping it invertible: expanding the
/// determinant along the last row, some cofactor is nonzero. Scans rows and
/// columns from the last backwards.
pub fn shrink_invertible(m: &Matrix) -> Result<Matrix> {
    if m.determinant()? == 0 {
        return Err(Error::SingularMatrix);
    }
    for row in (0..m.rows()).rev() {
        for col in (0..m.cols()).rev() {
            let smaller = shrink(m, row, col)?;
            if smaller.determinant()? != 0 {
                return Ok(smaller);
            }
        }
    }
    unreachable!("an invertible matrix has a nonzero cofactor in every row")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    #[test]
    fn cauchy_examples() {
        let m = cauchy(&gf(5), &[0, 1], &[2, 3]).unwrap();
        assert_eq!(m, Matrix::from_rows(gf(5), &[[2u32, 3], [4, 2]]).unwrap());
        assert!(m.is_super_regular());
        let m7 = cauchy(&gf(7), &[0, 1, 2], &[3, 4, 5]).unwrap();
        assert!(m7.is_super_regular());
        assert_eq!(cauchy(&gf(3), &[0, 1], &[2, 0]).unwrap_err(), Error::RepeatedPoint(0));
        assert!(cauchy_square(&gf(5), 3).is_err());
    }

    #[test]
    fn cauchy_super_regular_exhaustive_small() {
        use itertools::Itertools;
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            let f = gf(q);
            for s in 1..=3usize.min(q as usize / 2) {
                for pts in (0..f.order()).permutations(2 * s) {
                    let m = cauchy(&f, &pts[..s], &pts[s..]).unwrap();
                    assert!(m.is_super_regular(), "q = {q}, points {pts:?}");
                }
            }
        }
    }

    #[test]
    fn vandermonde_examples() {
        let m4 = vandermonde_all_nonzero(&gf(4)).unwrap();
        assert_eq!(m4.rows(), 3);
        assert!(m4.all_submatrices_invertible(1, None).unwrap().holds());
        assert!(m4.all_submatrices_invertible(2, None).unwrap().holds());
        assert_ne!(m4.determinant().unwrap(), 0);

        let m8 = vandermonde_all_nonzero(&gf(8)).unwrap();
        assert_eq!(m8.rows(), 7);
        assert!(m8.all_submatrices_invertible(2, None).unwrap().holds());

        assert_eq!(vandermonde(&gf(5), &[1, 1]).unwrap_err(), Error::RepeatedPoint(1));
        assert_eq!(vandermonde(&gf(5), &[0, 1]).unwrap_err(), Error::ZeroPoint);
    }

    #[test]
    fn vandermonde_fails_when_group_order_composite() {
        // q - 1 = 15 is composite: two points whose ratio has order 3
        // collide on rows 0 and 3.
        let m = vandermonde_all_nonzero(&gf(16)).unwrap();
        assert!(!m.all_submatrices_invertible(2, None).unwrap().holds());
    }

    #[test]
    fn shrink_examples() {
        let f = gf(7);
        let range7 = Matrix::from_rows(
            f.clone(),
            &[[1u32, 1, 1, 1, 1], [1, 2, 3, 4, 5], [1, 3, 4, 5, 6], [1, 4, 5, 6, 2], [1, 5, 6, 2, 4]],
        )
        .unwrap();
        let smaller = shrink(&range7, 4, 4).unwrap();
        assert_eq!(smaller.rows(), 4);
        assert!(smaller.all_submatrices_invertible(1, None).unwrap().holds());
        assert!(smaller.all_submatrices_invertible(2, None).unwrap().holds());

        let id = Matrix::identity(f.clone(), 2);
        assert_eq!(shrink(&id, 0, 0).unwrap(), Matrix::identity(f.clone(), 1));
        assert!(matches!(shrink(&Matrix::identity(f.clone(), 1), 0, 0), Err(Error::BadIndex(_))));
        assert!(matches!(shrink(&id, 2, 0), Err(Error::BadIndex(_))));

        let kept = shrink_invertible(&range7).unwrap();
        assert_ne!(kept.determinant().unwrap(), 0);
    }
}
