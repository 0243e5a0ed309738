//! Fixtures shared by the benchmarks.

use aont_core::{Field, Matrix};

pub fn range7() -> Matrix {
    let f = Field::from_order(7).unwrap();
    Matrix::from_rows(
        f,
        &[[1u32, 1, 1, 1, 1], [1, 2, 3, 4, 5], [1, 3, 4, 5, 6], [1, 4, 5, 6, 2], [1, 5, 6, 2, 4]],
    )
    .unwrap()
}

/// Deterministic dense matrix with no structure, `m_ij = (7i + 3j + 1) mod q`.
pub fn dense(q: u64, n: usize) -> Matrix {
    let f = Field::from_order(q).unwrap();
    let order = f.order() as usize;
    let data = (0..n * n).map(|k| ((7 * (k / n) + 3 * (k % n) + 1) % order) as u32).collect();
    Matrix::new(f, n, n, data).unwrap()
}
