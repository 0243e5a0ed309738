//! Exhaustive backtracking search for linear strong transforms, with the
//! analytic bounds used as rails.
//!
//! Candidates are normalized: first row and column all ones. Row and column
//! scalings multiply every minor by a nonzero constant, so this loses no
//! generality. Free entries are filled in row-major order over nonzero
//! encodings, and each `k x k` minor (`2 <= k <= t`) is checked as soon as
//! its bottom-right entry is placed.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use crate::claim::AontClaim;
use crate::constructions::{cauchy_square, vandermonde_all_nonzero};
use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power, Field};
use crate::linalg::{det_in_place, Matrix};

pub const DEFAULT_CANDIDATE_CAP: u128 = 1_000_000_000;

/// Orthogonal-array bound on the size of a `[t1, t2]` range transform.
pub fn bush_upper(t1: usize, q: u64) -> usize {
    (q as usize + t1 - 1).max(t1 + 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub q: u32,
    pub bush: usize,
    pub upper: usize,
    /// Size of `lower_witness`.
    pub lower: usize,
    pub lower_witness: Option<Matrix>,
    pub notes: Vec<String>,
}

/// Known bounds on the largest `s` admitting a linear strong 2-transform
/// over `GF(q)`.
pub fn analytic_bounds(q: u64) -> Result<BoundsReport> {
    if q <= 2 {
        return Err(Error::BadOrder(q));
    }
    let (p, n) = prime_power(q).ok_or(Error::BadOrder(q))?;
    let field = Field::new(p, n, None)?;
    let bush = bush_upper(1, q);
    let mut notes = vec![format!("bush: max(q + t1 - 1, t1 + 1) = {bush} at t1 = 1")];

    let upper = if p != 2 && q > 3 {
        notes.push(format!("upper: q - 2 = {} for odd q > 3", q - 2));
        q as usize - 2
    } else {
        notes.push(format!("upper: q - 1 = {}", q - 1));
        q as usize - 1
    };

    let (lower, witness) = if p == 2 && is_prime(q - 1) {
        notes.push(format!("lower: Vandermonde matrix on all nonzero points, s = {} (2^n - 1 prime)", q - 1));
        (q as usize - 1, vandermonde_all_nonzero(&field)?)
    } else {
        let s = q as usize / 2;
        notes.push(format!("lower: Cauchy matrix, s = floor(q/2) = {s}"));
        (s, cauchy_square(&field, s)?)
    };

    Ok(BoundsReport { q: q as u32, bush, upper, lower, lower_witness: Some(witness), notes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Matrix),
    ExhaustedNone,
    AbortedCap,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::ExhaustedNone => "exhausted_none",
            Outcome::AbortedCap => "aborted_cap",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub q: u32,
    pub s: usize,
    pub t: usize,
    pub outcome: Outcome,
    /// Complete candidates that reached the final determinant check.
    pub candidates_examined: u64,
    /// Partial assignments visited, including complete ones.
    pub nodes: u64,
    /// `(q-1)^((s-1)^2)`, the size of the normalized space.
    pub space: u128,
    pub elapsed: Duration,
    pub jobs: usize,
}

impl SearchResult {
    pub fn witness(&self) -> Option<&Matrix> {
        match &self.outcome {
            Outcome::Found(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub candidate_cap: u128,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { candidate_cap: DEFAULT_CANDIDATE_CAP, jobs: None }
    }
}

pub fn normalized_space(q: u32, s: usize) -> u128 {
    let free = (s.saturating_sub(1) * s.saturating_sub(1)) as u32;
    u128::from(q - 1).checked_pow(free).unwrap_or(u128::MAX)
}

/// Searches for an `s x s` matrix over `GF(q)` with every `k x k` submatrix
/// invertible for `1 <= k <= t`, plus the whole matrix invertible.
pub fn exists_strong(q: u64, s: usize, t: usize) -> Result<SearchResult> {
    let field = Field::from_order(q)?;
    exists_strong_in(&field, s, t, &SearchConfig::default())
}

pub fn exists_strong_in(field: &Field, s: usize, t: usize, config: &SearchConfig) -> Result<SearchResult> {
    if t == 0 || s < t {
        return Err(Error::BadSize(format!("need 1 <= t <= s, got s = {s}, t = {t}")));
    }
    let start = Instant::now();
    let q = field.order();
    let space = normalized_space(q, s);
    let jobs = config.jobs.unwrap_or_else(rayon::current_num_threads).max(1);
    let mut result = SearchResult {
        q,
        s,
        t,
        outcome: Outcome::AbortedCap,
        candidates_examined: 0,
        nodes: 0,
        space,
        elapsed: Duration::ZERO,
        jobs,
    };
    if space > config.candidate_cap {
        result.elapsed = start.elapsed();
        return Ok(result);
    }

    let run = || search_partitioned(field, s, t);
    let (found, nodes, leaves) = match config.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    };
    result.outcome = match found {
        Some(data) => Outcome::Found(Matrix::new(field.clone(), s, s, data)?),
        None => Outcome::ExhaustedNone,
    };
    result.nodes = nodes;
    result.candidates_examined = leaves;
    result.elapsed = start.elapsed();
    Ok(result)
}

/// Splits the tree on the first free entry. Counts are summed over the
/// subtrees up to and including the winning one, which matches a
/// sequential run exactly.
fn search_partitioned(field: &Field, s: usize, t: usize) -> (Option<Vec<u32>>, u64, u64) {
    let mut root = Dfs::new(field, s, t);
    if s == 1 {
        root.nodes = 1;
        let found = root.leaf();
        return (found.then(|| root.m.clone()), root.nodes, root.leaves);
    }
    root.nodes = 1;
    let first: Vec<u32> = root.candidates(0);
    let best = AtomicUsize::new(usize::MAX);
    let parts: Vec<(Option<Vec<u32>>, u64, u64)> = first
        .par_iter()
        .enumerate()
        .map(|(idx, &x)| {
            let mut dfs = Dfs::new(field, s, t);
            dfs.cancel = Some((&best, idx));
            dfs.m[s + 1] = x;
            dfs.nodes = 1;
            let found = dfs.descend(1);
            if found {
                best.fetch_min(idx, Ordering::Relaxed);
            }
            (found.then(|| dfs.m.clone()), dfs.nodes, dfs.leaves)
        })
        .collect();

    let mut nodes = root.nodes;
    let mut leaves = 0;
    for (found, n, l) in parts {
        nodes += n;
        leaves += l;
        if found.is_some() {
            return (found, nodes, leaves);
        }
    }
    (None, nodes, leaves)
}

struct Dfs<'a> {
    f: &'a Field,
    s: usize,
    t: usize,
    m: Vec<u32>,
    nodes: u64,
    leaves: u64,
    forbidden: Vec<bool>,
    buf: Vec<u32>,
    cancel: Option<(&'a AtomicUsize, usize)>,
}

impl<'a> Dfs<'a> {
    fn new(f: &'a Field, s: usize, t: usize) -> Self {
        Dfs {
            f,
            s,
            t,
            m: vec![1; s * s],
            nodes: 0,
            leaves: 0,
            forbidden: vec![false; f.order() as usize],
            buf: Vec::with_capacity(t * t),
            cancel: None,
        }
    }

    fn position(&self, pos: usize) -> (usize, usize) {
        (1 + pos / (self.s - 1), 1 + pos % (self.s - 1))
    }

    /// Values for free entry `pos` that keep every minor ending there
    /// invertible, in increasing order.
    fn candidates(&mut self, pos: usize) -> Vec<u32> {
        let (i, j) = self.position(pos);
        let (s, f) = (self.s, self.f);
        self.forbidden.iter_mut().for_each(|b| *b = false);
        // m_ab x != m_aj m_ib
        for a in 0..i {
            for b in 0..j {
                let num = f.mul(self.m[a * s + j], self.m[i * s + b]);
                let x = f.div(num, self.m[a * s + b]).expect("entries are nonzero");
                self.forbidden[x as usize] = true;
            }
        }
        let mut out = Vec::new();
        for x in 1..f.order() {
            if self.forbidden[x as usize] {
                continue;
            }
            self.m[i * s + j] = x;
            if self.higher_minors_ok(i, j) {
                out.push(x);
            }
        }
        out
    }

    fn higher_minors_ok(&mut self, i: usize, j: usize) -> bool {
        let s = self.s;
        for k in 3..=self.t.min(i + 1).min(j + 1) {
            for rows in (0..i).combinations(k - 1) {
                for cols in (0..j).combinations(k - 1) {
                    self.buf.clear();
                    for &r in rows.iter().chain(std::iter::once(&i)) {
                        for &c in cols.iter().chain(std::iter::once(&j)) {
                            self.buf.push(self.m[r * s + c]);
                        }
                    }
                    if det_in_place(self.f, &mut self.buf, k) == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn cancelled(&self) -> bool {
        self.cancel.is_some_and(|(best, idx)| best.load(Ordering::Relaxed) < idx)
    }

    fn descend(&mut self, pos: usize) -> bool {
        if pos == (self.s - 1) * (self.s - 1) {
            return self.leaf();
        }
        if self.cancelled() {
            return false;
        }
        let (i, j) = self.position(pos);
        for x in self.candidates(pos) {
            self.m[i * self.s + j] = x;
            self.nodes += 1;
            if self.descend(pos + 1) {
                return true;
            }
        }
        self.m[i * self.s + j] = 1;
        false
    }

    fn leaf(&mut self) -> bool {
        self.leaves += 1;
        let mut a = self.m.clone();
        det_in_place(self.f, &mut a, self.s) != 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    Analytic,
    External,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub s: usize,
    pub matrix: Matrix,
    pub source: WitnessSource,
}

/// What ended the climb.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stop {
    /// No witness exists at this size.
    Exhausted(usize),
    /// The search space at this size exceeds the candidate cap.
    Cap(usize),
}

#[derive(Debug, Clone)]
pub struct MaxStrong {
    pub q: u32,
    pub t: usize,
    /// Largest size with a witness.
    pub lower: usize,
    /// Smallest size known to bound the answer from above.
    pub upper: usize,
    /// Largest witness from each source, in increasing size.
    pub witnesses: Vec<Witness>,
    pub steps: Vec<SearchResult>,
    pub stop: Stop,
    pub bounds: BoundsReport,
}

impl MaxStrong {
    /// The exact maximum when the bounds meet.
    pub fn value(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

pub fn max_strong(q: u64, t: usize) -> Result<MaxStrong> {
    max_strong_with(q, t, &[], &SearchConfig::default())
}

/// Climbs from the best known witness with [`exists_strong_in`] until a
/// size is exhausted or out of reach. External witnesses are checked
/// against the criterion before use.
pub fn max_strong_with(q: u64, t: usize, external: &[Matrix], config: &SearchConfig) -> Result<MaxStrong> {
    if t < 2 {
        return Err(Error::BadSize(format!("maximum is bounded only for t >= 2, got t = {t}")));
    }
    let bounds = analytic_bounds(q)?;
    let field = Field::from_order(q)?;
    let claim = AontClaim::Strong { t };

    let mut witnesses = Vec::new();
    if let Some(m) = &bounds.lower_witness {
        if m.rows() >= t && claim.verify_matrix(m)?.verdict() {
            witnesses.push(Witness { s: m.rows(), matrix: m.clone(), source: WitnessSource::Analytic });
        }
    }
    for m in external {
        if m.field() != &field {
            return Err(Error::InvalidWitness(format!("witness is over {}, expected {field}", m.field())));
        }
        if !m.is_square() || m.rows() < t {
            return Err(Error::InvalidWitness(format!("witness is {}x{}", m.rows(), m.cols())));
        }
        if !claim.verify_matrix(m)?.verdict() {
            return Err(Error::InvalidWitness(format!("witness fails `{claim}`")));
        }
        witnesses.push(Witness { s: m.rows(), matrix: m.clone(), source: WitnessSource::External });
    }
    let mut best = witnesses.iter().map(|w| w.s).max().unwrap_or(t - 1);

    let mut steps = Vec::new();
    let stop = loop {
        let s = best + 1;
        let step = exists_strong_in(&field, s, t, config)?;
        let outcome = step.outcome.clone();
        steps.push(step);
        match outcome {
            Outcome::Found(m) => {
                witnesses.push(Witness { s, matrix: m, source: WitnessSource::Search });
                best = s;
            }
            Outcome::ExhaustedNone => break Stop::Exhausted(s),
            Outcome::AbortedCap => break Stop::Cap(s),
        }
    };
    witnesses.sort_by_key(|w| w.s);

    let upper = match stop {
        Stop::Exhausted(_) => best,
        Stop::Cap(_) => bounds.upper.max(best),
    };
    Ok(MaxStrong { q: field.order(), t, lower: best, upper, witnesses, steps, stop, bounds })
}
