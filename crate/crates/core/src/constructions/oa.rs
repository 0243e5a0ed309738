use crate::arrays::Array;
use crate::error::{Error, Result};
use crate::field::Field;

/// Polynomial-evaluation orthogonal array of strength `s` with `k` columns.
///
/// Rows are the `q^s` polynomials of degree below `s`, in lexicographic
/// order of `(c_0, .., c_{s-1})`. Column `j < min(k, q)` evaluates at the
/// field element with encoding `j`; when `k = q + 1` the last column holds
/// `c_{s-1}`, the evaluation at infinity.
pub fn oa_rs(field: &Field, s: usize, k: usize) -> Result<Array> {
    let q = field.order() as usize;
    if k > q + 1 {
        return Err(Error::TooManyColumns { k, max: q + 1 });
    }
    if s == 0 || s > k {
        return Err(Error::BadSize(format!("strength {s} must lie in 1..={k}")));
    }
    let rows = (0..s).try_fold(1usize, |acc, _| acc.checked_mul(q));
    let rows = rows.filter(|r| r.saturating_mul(k) as u128 <= crate::arrays::DEFAULT_CELL_CAP).ok_or(
        Error::SizeCapExceeded {
            what: "orthogonal array",
            needed: (q as u128).saturating_pow(s as u32).saturating_mul(k as u128),
            cap: crate::arrays::DEFAULT_CELL_CAP,
        },
    )?;

    let finite = k.min(q);
    let mut data = Vec::with_capacity(rows * k);
    let mut coeffs = vec![0u32; s];
    for _ in 0..rows {
        for x in 0..finite as u32 {
            // Horner from the top coefficient
            let y = coeffs.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c));
            data.push(y);
        }
        if k == q + 1 {
            data.push(coeffs[s - 1]);
        }
        for digit in coeffs.iter_mut().rev() {
            *digit += 1;
            if *digit < field.order() {
                break;
            }
            *digit = 0;
        }
    }
    Array::new(field.order(), k, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts every tuple on every column subset directly, with no shared
    /// code path beyond the array storage.
    fn brute_force_strength(a: &Array, t: usize) -> bool {
        use itertools::Itertools;
        let v = a.alphabet() as usize;
        (0..a.cols()).combinations(t).all(|cols| {
            let mut counts = std::collections::HashMap::new();
            for row in a.iter_rows() {
                *counts.entry(cols.iter().map(|&c| row[c]).collect::<Vec<_>>()).or_insert(0usize) += 1;
            }
            let space = v.pow(t as u32);
            a.rows() % space == 0
                && counts.len() == space
                && counts.values().all(|&c| c == a.rows() / space)
        })
    }

    #[test]
    fn gf3_strength_two() {
        let a = oa_rs(&Field::from_order(3).unwrap(), 2, 4).unwrap();
        assert_eq!((a.rows(), a.cols()), (9, 4));
        assert!(brute_force_strength(&a, 2));
        assert!(!brute_force_strength(&a, 3));
        assert!(a.verify_oa(2).unwrap().verdict());
        let report = a.verify_oa(3).unwrap();
        assert!(!report.verdict());
        assert_eq!(report.failure.unwrap().count.expected(), None);
    }

    #[test]
    fn gf2_strength_one() {
        let a = oa_rs(&Field::from_order(2).unwrap(), 1, 2).unwrap();
        let rows: Vec<&[u32]> = a.iter_rows().collect();
        assert_eq!(rows, vec![&[0, 0][..], &[1, 1]]);
        assert!(a.verify_oa(1).unwrap().verdict());
    }

    #[test]
    fn too_many_columns() {
        assert_eq!(
            oa_rs(&Field::from_order(3).unwrap(), 2, 5).unwrap_err(),
            Error::TooManyColumns { k: 5, max: 4 }
        );
    }

    #[test]
    fn declared_strength_holds_exhaustively() {
        for q in [2u64, 3, 4, 5] {
            let f = Field::from_order(q).unwrap();
            for s in 1..=3 {
                for k in s..=(q as usize + 1) {
                    let a = oa_rs(&f, s, k).unwrap();
                    assert!(a.verify_oa(s).unwrap().verdict(), "q = {q}, s = {s}, k = {k}");
                    assert!(brute_force_strength(&a, s), "q = {q}, s = {s}, k = {k}");
                }
            }
        }
    }
}
