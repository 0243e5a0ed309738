//! Claims about transforms and arrays, their text grammar, and dispatch to
//! the brute-force and submatrix-criterion verifiers.
//!
//! Grammar (one claim per string, keys in any order):
//!
//! ```text
//! aont t=T | rec t=T n=N | range t1=A t2=B | strong t=T
//! restricted R={i,j,...} t=T | oa strength=S | soa t1=A t2=B s1=C s2=D
//! ```
//!
//! Indices in `R` are 1-based in text and 0-based in [`AontClaim::Restricted`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arrays::{Direction, TransformArray, VerificationReport};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SubmatrixWitness};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AontClaim {
    Oa { strength: usize },
    Plain { t: usize },
    Rectangular { t: usize, n: usize },
    Range { t1: usize, t2: usize },
    Strong { t: usize },
    Restricted { r: Vec<usize>, t: usize },
    Soa { t1: usize, t2: usize, s1: usize, s2: usize },
}

/// Why a matrix fails its submatrix criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CriterionFailure {
    /// The square matrix itself is singular, so the map is not a bijection.
    Singular,
    Minor(SubmatrixWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub claim: AontClaim,
    pub failure: Option<CriterionFailure>,
}

impl CriterionReport {
    pub fn verdict(&self) -> bool {
        self.failure.is_none()
    }
}

impl AontClaim {
    /// How a matrix is read as a transform for this claim: rectangular
    /// claims use `y = xN`, everything else `y = x M^-1`.
    pub fn direction(&self) -> Direction {
        match self {
            AontClaim::Rectangular { .. } => Direction::Forward,
            _ => Direction::Inverse,
        }
    }

    pub fn has_criterion(&self) -> bool {
        !matches!(self, AontClaim::Oa { .. } | AontClaim::Soa { .. })
    }

    /// Checks the claim by counting tuples in the array representation.
    pub fn verify_array(&self, a: &TransformArray) -> Result<VerificationReport> {
        match self {
            AontClaim::Oa { strength } => a.as_array().verify_oa(*strength),
            AontClaim::Plain { t } => a.verify_plain(*t),
            AontClaim::Rectangular { t, n } => {
                if a.outputs() != *n {
                    return Err(Error::SizeMismatch(format!("claim has n = {n}, array has {} outputs", a.outputs())));
                }
                a.verify_rec(*t)
            }
            AontClaim::Range { t1, t2 } => a.verify_range(*t1, *t2),
            AontClaim::Strong { t } => a.verify_strong(*t),
            AontClaim::Restricted { r, t } => a.verify_restricted(r, *t),
            AontClaim::Soa { t1, t2, s1, s2 } => a.as_array().verify_soa(*t1, *t2, *s1, *s2),
        }
    }

    /// Checks the claim for a linear map through its submatrix criterion.
    pub fn verify_matrix(&self, m: &Matrix) -> Result<CriterionReport> {
        let sizes: Vec<usize>;
        let mut rows: Option<&[usize]> = None;
        match self {
            AontClaim::Oa { .. } | AontClaim::Soa { .. } => {
                return Err(Error::CriterionUnavailable(self.to_string()));
            }
            AontClaim::Rectangular { t, n } => {
                let s = m.rows();
                if m.cols() != *n {
                    return Err(Error::SizeMismatch(format!("claim has n = {n}, matrix has {} columns", m.cols())));
                }
                if *t == 0 || *t > s || s > *n {
                    return Err(Error::BadSize(format!("need 1 <= t <= s <= n, got t = {t}, s = {s}, n = {n}")));
                }
                sizes = if *t < s { vec![s, s - t] } else { vec![s] };
                return self.scan(m, &sizes, None, false);
            }
            AontClaim::Plain { t } => sizes = vec![*t],
            AontClaim::Range { t1, t2 } => sizes = (*t1..=*t2).collect(),
            AontClaim::Strong { t } => sizes = (1..=*t).collect(),
            AontClaim::Restricted { r, t } => {
                if r.is_empty() || *t == 0 || *t > r.len() {
                    return Err(Error::BadRestriction(format!("t = {t} must lie in 1..={}", r.len())));
                }
                if r.iter().any(|&i| i >= m.rows()) {
                    return Err(Error::BadRestriction(format!("{r:?} exceeds {} inputs", m.rows())));
                }
                sizes = vec![*t];
                rows = Some(r);
            }
        }
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        if sizes.iter().any(|&t| t == 0 || t > m.rows()) || sizes.is_empty() {
            return Err(Error::BadSize(format!("claim `{self}` does not fit a {0}x{0} matrix", m.rows())));
        }
        self.scan(m, &sizes, rows, true)
    }

    fn scan(&self, m: &Matrix, sizes: &[usize], rows: Option<&[usize]>, needs_inverse: bool) -> Result<CriterionReport> {
        if needs_inverse && m.determinant()? == 0 {
            return Ok(CriterionReport { claim: self.clone(), failure: Some(CriterionFailure::Singular) });
        }
        for &t in sizes {
            let check = m.all_submatrices_invertible(t, rows)?;
            if let Some(w) = check.witness {
                return Ok(CriterionReport { claim: self.clone(), failure: Some(CriterionFailure::Minor(w)) });
            }
        }
        Ok(CriterionReport { claim: self.clone(), failure: None })
    }
}

impl fmt::Display for AontClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AontClaim::Oa { strength } => write!(f, "oa strength={strength}"),
            AontClaim::Plain { t } => write!(f, "aont t={t}"),
            AontClaim::Rectangular { t, n } => write!(f, "rec t={t} n={n}"),
            AontClaim::Range { t1, t2 } => write!(f, "range t1={t1} t2={t2}"),
            AontClaim::Strong { t } => write!(f, "strong t={t}"),
            AontClaim::Restricted { r, t } => {
                let labels: Vec<String> = r.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "restricted R={{{}}} t={t}", labels.join(","))
            }
            AontClaim::Soa { t1, t2, s1, s2 } => write!(f, "soa t1={t1} t2={t2} s1={s1} s2={s2}"),
        }
    }
}

impl FromStr for AontClaim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // glue `R = { 1, 2 }` into a single token
        let mut text = String::with_capacity(s.len());
        let mut depth = 0;
        for ch in s.trim().chars() {
            match ch {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
            if !(ch.is_whitespace() && depth > 0) {
                text.push(ch);
            }
        }
        let text = text.replace(" =", "=").replace("= ", "=");
        let mut tokens = text.split_whitespace();
        let kind = tokens.next().ok_or_else(|| Error::ClaimSyntax("empty claim".into()))?;

        let mut keys = BTreeMap::new();
        for tok in tokens {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::ClaimSyntax(format!("expected key=value, got `{tok}`")))?;
            if keys.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::ClaimSyntax(format!("key `{k}` given twice")));
            }
        }
        let mut fields = Fields { keys };
        let claim = match kind {
            "aont" => AontClaim::Plain { t: fields.num("t")? },
            "rec" => AontClaim::Rectangular { t: fields.num("t")?, n: fields.num("n")? },
            "range" => AontClaim::Range { t1: fields.num("t1")?, t2: fields.num("t2")? },
            "strong" => AontClaim::Strong { t: fields.num("t")? },
            "restricted" => AontClaim::Restricted { r: fields.set("R")?, t: fields.num("t")? },
            "oa" => AontClaim::Oa { strength: fields.num("strength")? },
            "soa" => AontClaim::Soa {
                t1: fields.num("t1")?,
                t2: fields.num("t2")?,
                s1: fields.num("s1")?,
                s2: fields.num("s2")?,
            },
            other => return Err(Error::ClaimSyntax(format!("unknown claim kind `{other}`"))),
        };
        fields.finish()?;
        Ok(claim)
    }
}

struct Fields {
    keys: BTreeMap<String, String>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Result<String> {
        self.keys.remove(key).ok_or_else(|| Error::ClaimSyntax(format!("missing `{key}=`")))
    }

    fn num(&mut self, key: &str) -> Result<usize> {
        let v = self.take(key)?;
        v.parse().map_err(|_| Error::ClaimSyntax(format!("`{key}={v}` is not a nonnegative integer")))
    }

    fn set(&mut self, key: &str) -> Result<Vec<usize>> {
        let v = self.take(key)?;
        let inner = v
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| Error::ClaimSyntax(format!("`{key}` must look like {{1,2}}")))?;
        let mut out = Vec::new();
        for item in inner.split(',').filter(|x| !x.is_empty()) {
            let i: usize = item
                .parse()
                .map_err(|_| Error::ClaimSyntax(format!("`{item}` in `{key}` is not an index")))?;
            if i == 0 {
                return Err(Error::ClaimSyntax("indices in R start at 1".into()));
            }
            out.push(i - 1);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn finish(self) -> Result<()> {
        match self.keys.keys().next() {
            Some(k) => Err(Error::ClaimSyntax(format!("unexpected key `{k}`"))),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;

    #[test]
    fn parses_every_form() {
        assert_eq!("aont t=1".parse::<AontClaim>().unwrap(), AontClaim::Plain { t: 1 });
        assert_eq!("rec t=1 n=3".parse::<AontClaim>().unwrap(), AontClaim::Rectangular { t: 1, n: 3 });
        assert_eq!("range t1=1 t2=2".parse::<AontClaim>().unwrap(), AontClaim::Range { t1: 1, t2: 2 });
        assert_eq!("strong t=2".parse::<AontClaim>().unwrap(), AontClaim::Strong { t: 2 });
        assert_eq!(
            "restricted R={1,2} t=2".parse::<AontClaim>().unwrap(),
            AontClaim::Restricted { r: vec![0, 1], t: 2 }
        );
        assert_eq!(
            "restricted t=1 R = { 3, 1 }".parse::<AontClaim>().unwrap(),
            AontClaim::Restricted { r: vec![0, 2], t: 1 }
        );
        assert_eq!("oa strength=2".parse::<AontClaim>().unwrap(), AontClaim::Oa { strength: 2 });
        assert_eq!(
            "soa t1=2 t2=1 s1=3 s2=3".parse::<AontClaim>().unwrap(),
            AontClaim::Soa { t1: 2, t2: 1, s1: 3, s2: 3 }
        );
    }

    #[test]
    fn rejects_malformed_claims() {
        for bad in ["", "strong", "strong t=x", "strong t=1 t=2", "strong t=1 u=2", "weak t=1", "restricted R=1 t=1", "restricted R={0} t=1", "strong t"] {
            assert!(matches!(bad.parse::<AontClaim>(), Err(Error::ClaimSyntax(_))), "{bad:?}");
        }
    }

    #[test]
    fn criterion_dispatch() {
        let f = Field::from_order(3).unwrap();
        let id = Matrix::identity(f.clone(), 2);
        let report = "aont t=1".parse::<AontClaim>().unwrap().verify_matrix(&id).unwrap();
        assert_eq!(
            report.failure,
            Some(CriterionFailure::Minor(SubmatrixWitness { rows: vec![0], cols: vec![1] }))
        );
        let singular = Matrix::from_rows(f.clone(), &[[1u32, 1], [1, 1]]).unwrap();
        let report = "aont t=2".parse::<AontClaim>().unwrap().verify_matrix(&singular).unwrap();
        assert_eq!(report.failure, Some(CriterionFailure::Singular));
        assert!(matches!(
            "oa strength=2".parse::<AontClaim>().unwrap().verify_matrix(&id),
            Err(Error::CriterionUnavailable(_))
        ));
        assert!(matches!(
            "strong t=3".parse::<AontClaim>().unwrap().verify_matrix(&id),
            Err(Error::BadSize(_))
        ));
        let rect = Matrix::from_rows(f, &[[1u32, 1, 1], [0, 1, 2]]).unwrap();
        assert!(matches!(
            "rec t=1 n=4".parse::<AontClaim>().unwrap().verify_matrix(&rect),
            Err(Error::SizeMismatch(_))
        ));
        // all 2x2 invertible, but the zero entry breaks the 1x1 condition
        let report = "rec t=1 n=3".parse::<AontClaim>().unwrap().verify_matrix(&rect).unwrap();
        assert_eq!(
            report.failure,
            Some(CriterionFailure::Minor(SubmatrixWitness { rows: vec![1], cols: vec![0] }))
        );
    }

    fn claim_strategy() -> impl Strategy<Value = AontClaim> {
        prop_oneof![
            (1usize..9).prop_map(|strength| AontClaim::Oa { strength }),
            (1usize..9).prop_map(|t| AontClaim::Plain { t }),
            (1usize..9, 1usize..9).prop_map(|(t, n)| AontClaim::Rectangular { t, n }),
            (1usize..9, 1usize..9).prop_map(|(t1, t2)| AontClaim::Range { t1, t2 }),
            (1usize..9).prop_map(|t| AontClaim::Strong { t }),
            (proptest::collection::btree_set(0usize..9, 1..5), 1usize..5)
                .prop_map(|(r, t)| AontClaim::Restricted { r: r.into_iter().collect(), t }),
            (0usize..5, 0usize..5, 0usize..5, 0usize..5)
                .prop_map(|(t1, t2, s1, s2)| AontClaim::Soa { t1, t2, s1, s2 }),
        ]
    }

    proptest! {
        #[test]
        fn display_round_trips(claim in claim_strategy()) {
            prop_assert_eq!(claim.to_string().parse::<AontClaim>().unwrap(), claim);
        }
    }
}
