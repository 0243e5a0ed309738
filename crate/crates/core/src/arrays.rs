//! Array representations of transforms and the unbiasedness checks behind
//! every AONT-style definition.
//!
//! An `(N, k, v)`-array is unbiased on a column set `D` when its projection
//! onto `D` lists every `|D|`-tuple over the alphabet exactly `N / v^|D|`
//! times. Column indices here are 0-based; inputs of a transform occupy
//! columns `0..s` and outputs `s..s+n`.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::claim::AontClaim;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// Largest array (rows times columns) that [`TransformArray::from_linear`] builds.
pub const DEFAULT_CELL_CAP: u128 = 100_000_000;
/// Largest tuple counter (`v^|D|`) allocated for a single column set.
pub const DEFAULT_COUNTER_CAP: u128 = 100_000_000;

/// A plain `N x k` array over an alphabet `{0, .., v-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Array {
    v: u32,
    cols: usize,
    data: Vec<u32>,
}

/// A tuple whose count in a projection is wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCount {
    pub tuple: Vec<u32>,
    pub observed: u64,
    /// Row count `N` of the array.
    pub rows: u64,
    /// Number of possible tuples, `v^|D|`.
    pub tuple_space: u128,
}

impl TupleCount {
    /// `N / v^|D|` when that is an integer.
    pub fn expected(&self) -> Option<u64> {
        (u128::from(self.rows) % self.tuple_space == 0).then(|| (u128::from(self.rows) / self.tuple_space) as u64)
    }
}

impl fmt::Display for TupleCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tuple {:?} occurs {} times, expected ", self.tuple, self.observed)?;
        match self.expected() {
            Some(e) => write!(f, "{e}"),
            None => write!(f, "{}/{}", self.rows, self.tuple_space),
        }
    }
}

/// The first biased column set found by a verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub columns: Vec<usize>,
    pub count: TupleCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: AontClaim,
    /// Number of distinct column sets the claim requires.
    pub sets_checked: usize,
    pub failure: Option<Failure>,
}

impl VerificationReport {
    pub fn verdict(&self) -> bool {
        self.failure.is_none()
    }
}

impl Array {
    pub fn new(v: u32, cols: usize, data: Vec<u32>) -> Result<Self> {
        if v == 0 || cols == 0 {
            return Err(Error::BadSize("array needs a nonempty alphabet and at least one column".into()));
        }
        if data.len() % cols != 0 {
            return Err(Error::BadSize(format!("{} entries do not fill rows of {cols}", data.len())));
        }
        if let Some(&x) = data.iter().find(|&&x| x >= v) {
            return Err(Error::ElementOutOfRange { value: u64::from(x), order: v });
        }
        Ok(Array { v, cols, data })
    }

    pub fn alphabet(&self) -> u32 {
        self.v
    }

    pub fn rows(&self) -> usize {
        self.data.len() / self.cols
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.cols)
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    /// First tuple (in lexicographic order) whose count in the projection
    /// onto `columns` is not `N / v^|D|`, or `None` if the array is
    /// unbiased there. When `v^|D|` does not divide `N` the array cannot be
    /// unbiased and the all-zero tuple is reported.
    pub fn imbalance(&self, columns: &[usize]) -> Result<Option<TupleCount>> {
        self.imbalance_capped(columns, DEFAULT_COUNTER_CAP)
    }

    pub fn imbalance_capped(&self, columns: &[usize], cap: u128) -> Result<Option<TupleCount>> {
        if columns.is_empty() {
            return Err(Error::BadColumnSet("empty column set".into()));
        }
        if !columns.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadColumnSet(format!("{columns:?} is not strictly increasing")));
        }
        if let Some(&c) = columns.iter().find(|&&c| c >= self.cols) {
            return Err(Error::BadColumnSet(format!("column {c} out of range for {} columns", self.cols)));
        }
        let v = u128::from(self.v);
        let space = (0..columns.len()).try_fold(1u128, |acc, _| acc.checked_mul(v)).unwrap_or(u128::MAX);
        if space > cap {
            return Err(Error::SizeCapExceeded { what: "tuple counter", needed: space, cap });
        }

        let mut counts = vec![0u32; space as usize];
        for row in self.iter_rows() {
            let idx = columns.iter().fold(0usize, |acc, &c| acc * self.v as usize + row[c] as usize);
            counts[idx] += 1;
        }
        let rows = self.rows() as u128;
        let bad = counts.iter().position(|&c| u128::from(c) * space != rows);
        Ok(bad.map(|idx| {
            let mut tuple = vec![0u32; columns.len()];
            let mut rest = idx;
            for slot in tuple.iter_mut().rev() {
                *slot = (rest % self.v as usize) as u32;
                rest /= self.v as usize;
            }
            TupleCount { tuple, observed: u64::from(counts[idx]), rows: rows as u64, tuple_space: space }
        }))
    }

    pub fn is_unbiased(&self, columns: &[usize]) -> Result<bool> {
        Ok(self.imbalance(columns)?.is_none())
    }

    /// Checks every required column set in lexicographic order and reports
    /// the first biased one. Sets are checked concurrently; the merge is
    /// deterministic.
    pub(crate) fn check_sets(&self, claim: AontClaim, mut sets: Vec<Vec<usize>>) -> Result<VerificationReport> {
        sets.sort();
        sets.dedup();
        let failure = sets
            .par_iter()
            .filter(|set| !set.is_empty())
            .find_map_first(|set| match self.imbalance(set) {
                Ok(None) => None,
                Ok(Some(count)) => Some(Ok(Failure { columns: set.clone(), count })),
                Err(e) => Some(Err(e)),
            })
            .transpose()?;
        Ok(VerificationReport { claim, sets_checked: sets.len(), failure })
    }

    /// Orthogonal array of the given strength: unbiased on every
    /// `strength`-subset of columns.
    pub fn verify_oa(&self, strength: usize) -> Result<VerificationReport> {
        if strength == 0 || strength > self.cols {
            return Err(Error::BadSize(format!("strength {strength} not in 1..={}", self.cols)));
        }
        let sets = (0..self.cols).combinations(strength).collect();
        self.check_sets(AontClaim::Oa { strength }, sets)
    }

    /// Split orthogonal array: columns `0..s1` form the first part and
    /// `s1..s1+s2` the second; every choice of `t1` columns from the first
    /// and `t2` from the second must be unbiased.
    pub fn verify_soa(&self, t1: usize, t2: usize, s1: usize, s2: usize) -> Result<VerificationReport> {
        if s1 + s2 != self.cols {
            return Err(Error::BadSize(format!("s1 + s2 = {} but the array has {} columns", s1 + s2, self.cols)));
        }
        if t1 > s1 || t2 > s2 || t1 + t2 == 0 {
            return Err(Error::BadSize(format!("need t1 <= s1, t2 <= s2 and t1 + t2 >= 1 (got {t1}, {t2}, {s1}, {s2})")));
        }
        let mut sets = Vec::new();
        for left in (0..s1).combinations(t1) {
            for right in (s1..s1 + s2).combinations(t2) {
                sets.push(left.iter().chain(&right).copied().collect());
            }
        }
        self.check_sets(AontClaim::Soa { t1, t2, s1, s2 }, sets)
    }
}

impl fmt::Debug for Array {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Array({}x{} over {} symbols)", self.rows(), self.cols, self.v)
    }
}

/// How a matrix defines a transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `y = x M^-1` for square invertible `M`.
    Inverse,
    /// `y = x N` for an `s x n` matrix `N`.
    Forward,
}

/// The `(v^s, s+n, v)`-array of a map from `s` inputs to `n` outputs.
/// Columns `0..s` list every input tuple exactly once.
#[derive(Clone, PartialEq, Eq)]
pub struct TransformArray {
    field: Field,
    s: usize,
    n: usize,
    array: Array,
}

impl TransformArray {
    /// Wraps raw rows, checking that the input columns enumerate every
    /// input tuple exactly once.
    pub fn new(field: Field, s: usize, n: usize, data: Vec<u32>) -> Result<Self> {
        if s == 0 || n == 0 {
            return Err(Error::BadSize("transform needs s >= 1 and n >= 1".into()));
        }
        let expected_rows = (0..s).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(field.order())));
        let array = Array::new(field.order(), s + n, data)?;
        if expected_rows != Some(array.rows() as u128) {
            return Err(Error::NotATransform(format!(
                "expected {}^{s} rows, found {}",
                field.order(),
                array.rows()
            )));
        }
        let inputs: Vec<usize> = (0..s).collect();
        if let Some(count) = array.imbalance_capped(&inputs, u128::MAX)? {
            return Err(Error::NotATransform(format!("input columns are not a bijection: {count}")));
        }
        Ok(TransformArray { field, s, n, array })
    }

    pub fn from_linear(m: &Matrix, direction: Direction) -> Result<Self> {
        Self::from_linear_capped(m, direction, DEFAULT_CELL_CAP)
    }

    /// Enumerates inputs in lexicographic order (first input most
    /// significant) and appends the outputs of the linear map.
    pub fn from_linear_capped(m: &Matrix, direction: Direction, cell_cap: u128) -> Result<Self> {
        let field = m.field().clone();
        let map = match direction {
            Direction::Inverse => m.invert()?,
            Direction::Forward => {
                if m.cols() < m.rows() {
                    return Err(Error::BadSize(format!(
                        "forward map needs n >= s, got {}x{}",
                        m.rows(),
                        m.cols()
                    )));
                }
                m.clone()
            }
        };
        let (s, n) = (map.rows(), map.cols());
        if s == 0 {
            return Err(Error::BadSize("empty matrix".into()));
        }
        let q = u128::from(field.order());
        let rows = (0..s).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
        let cells = rows.saturating_mul((s + n) as u128);
        if cells > cell_cap {
            return Err(Error::SizeCapExceeded { what: "array representation", needed: cells, cap: cell_cap });
        }

        let width = s + n;
        let mut data = vec![0u32; rows as usize * width];
        let mut x = vec![0u32; s];
        for chunk in data.chunks_mut(width) {
            chunk[..s].copy_from_slice(&x);
            map.apply(&x, &mut chunk[s..]);
            for digit in x.iter_mut().rev() {
                *digit += 1;
                if *digit < field.order() {
                    break;
                }
                *digit = 0;
            }
        }
        let array = Array { v: field.order(), cols: width, data };
        Ok(TransformArray { field, s, n, array })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn inputs(&self) -> usize {
        self.s
    }

    pub fn outputs(&self) -> usize {
        self.n
    }

    pub fn as_array(&self) -> &Array {
        &self.array
    }

    pub fn into_array(self) -> Array {
        self.array
    }

    pub fn is_unbiased(&self, columns: &[usize]) -> Result<bool> {
        self.array.is_unbiased(columns)
    }

    /// Array of the inverse map: input and output halves exchanged.
    pub fn swap_halves(&self) -> Result<Self> {
        if self.n != self.s {
            return Err(Error::NotSquareTransform { s: self.s, n: self.n });
        }
        let s = self.s;
        let mut data = Vec::with_capacity(self.array.data.len());
        let mut rows: Vec<&[u32]> = self.array.iter_rows().collect();
        // keep inputs in lexicographic order
        rows.sort_by(|a, b| a[s..].cmp(&b[s..]));
        for row in rows {
            data.extend_from_slice(&row[s..]);
            data.extend_from_slice(&row[..s]);
        }
        let array = Array { v: self.array.v, cols: 2 * s, data };
        if let Some(count) = array.imbalance_capped(&(0..s).collect::<Vec<_>>(), u128::MAX)? {
            return Err(Error::NotATransform(format!("outputs are not a bijection: {count}")));
        }
        Ok(TransformArray { field: self.field.clone(), s, n: s, array })
    }

    fn input_cols(&self) -> Vec<usize> {
        (0..self.s).collect()
    }

    fn output_cols(&self) -> Vec<usize> {
        (self.s..self.s + self.n).collect()
    }

    fn require_square(&self) -> Result<()> {
        if self.n != self.s {
            return Err(Error::NotSquareTransform { s: self.s, n: self.n });
        }
        Ok(())
    }

    /// `(t, s, v)`-AONT.
    pub fn verify_plain(&self, t: usize) -> Result<VerificationReport> {
        self.range_sets(t, t).and_then(|sets| self.array.check_sets(AontClaim::Plain { t }, sets))
    }

    /// `([t1, t2], s, v)`-range AONT.
    pub fn verify_range(&self, t1: usize, t2: usize) -> Result<VerificationReport> {
        let sets = self.range_sets(t1, t2)?;
        self.array.check_sets(AontClaim::Range { t1, t2 }, sets)
    }

    /// `(t, s, v)`-strong AONT, i.e. range `[1, t]`.
    pub fn verify_strong(&self, t: usize) -> Result<VerificationReport> {
        let sets = self.range_sets(1, t)?;
        self.array.check_sets(AontClaim::Strong { t }, sets)
    }

    fn range_sets(&self, t1: usize, t2: usize) -> Result<Vec<Vec<usize>>> {
        self.require_square()?;
        let s = self.s;
        if t1 == 0 || t1 > t2 || t2 > s {
            return Err(Error::BadSize(format!("need 1 <= t1 <= t2 <= s = {s}, got [{t1}, {t2}]")));
        }
        let mut sets = vec![self.input_cols(), self.output_cols()];
        for t in t1..=t2 {
            for inputs in (0..s).combinations(t) {
                for outputs in (s..2 * s).combinations(s - t) {
                    sets.push(inputs.iter().chain(&outputs).copied().collect());
                }
            }
        }
        Ok(sets)
    }

    /// `(t, s, n, v)`-rectangular AONT.
    pub fn verify_rec(&self, t: usize) -> Result<VerificationReport> {
        let (s, n) = (self.s, self.n);
        if t == 0 || t > s || s > n {
            return Err(Error::BadSize(format!("need 1 <= t <= s <= n, got t = {t}, s = {s}, n = {n}")));
        }
        let mut sets = vec![self.input_cols()];
        sets.extend((s..s + n).combinations(s));
        for inputs in (0..s).combinations(t) {
            for outputs in (s..s + n).combinations(s - t) {
                sets.push(inputs.iter().chain(&outputs).copied().collect());
            }
        }
        self.array.check_sets(AontClaim::Rectangular { t, n }, sets)
    }

    /// `R`-restricted `(t, s, v)`-AONT. `restricted` holds 0-based input
    /// indices; the matching outputs are the only ones that may be hidden,
    /// and exactly `t` of them are.
    pub fn verify_restricted(&self, restricted: &[usize], t: usize) -> Result<VerificationReport> {
        self.require_square()?;
        let s = self.s;
        let mut r = restricted.to_vec();
        r.sort_unstable();
        r.dedup();
        if r.is_empty() || r.len() != restricted.len() || r.last().is_some_and(|&i| i >= s) {
            return Err(Error::BadRestriction(format!("{restricted:?} is not a set of inputs below {s}")));
        }
        if t == 0 || t > r.len() {
            return Err(Error::BadRestriction(format!("t = {t} must lie in 1..={}", r.len())));
        }
        let r_out: Vec<usize> = r.iter().map(|&i| i + s).collect();
        let mut sets = vec![self.input_cols(), self.output_cols()];
        for hidden in r_out.iter().copied().combinations(t) {
            let visible: Vec<usize> = (s..2 * s).filter(|c| !hidden.contains(c)).collect();
            for inputs in (0..s).combinations(t) {
                sets.push(inputs.iter().chain(&visible).copied().collect());
            }
        }
        self.array.check_sets(AontClaim::Restricted { r, t }, sets)
    }
}

impl fmt::Debug for TransformArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TransformArray(s = {}, n = {}, over {})", self.s, self.n, self.field)
    }
}
