use std::path::PathBuf;

use aont_core::constructions::{
    cauchy, dm_to_matrix, oa_rs, rs_restricted_doubly, rs_restricted_triply, rs_restricted_triply_dual, shrink,
    shrink_invertible, strong_to_dm, vandermonde, vandermonde_all_nonzero,
};
use aont_core::format::Object;
use aont_core::{AontClaim, Field, Matrix, TransformArray};
use anyhow::{bail, Context as _};
use clap::ValueEnum;
use serde_json::json;

use crate::output::{read_matrix, read_object, write_object};
use crate::Context;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// `--q`, `--r`, `--c` (or `--s` for points 0..s, s..2s).
    Cauchy,
    /// `--q`, `--points` or `--all-nonzero`.
    Vandermonde,
    /// Polynomial orthogonal array: `--q`, `--s`, `--k`.
    OaRs,
    /// `--input` difference matrix, `--q`.
    DmToMatrix,
    /// `--input` matrix.
    StrongToDm,
    /// `--q`, `--t`.
    RsDoubly,
    /// `--n` (field GF(2^n)), optional `--dual`.
    RsTriply,
    /// `--input` matrix, optional `--row`/`--col` (1-based), `--t`.
    Shrink,
}

#[derive(clap::Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub c: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub points: Vec<u32>,
    #[arg(long)]
    pub all_nonzero: bool,
    #[arg(long)]
    pub dual: bool,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub row: Option<usize>,
    #[arg(long)]
    pub col: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn need<T: Copy>(value: Option<T>, kind: Kind, flag: &str) -> anyhow::Result<T> {
    value.with_context(|| format!("`construct {}` needs --{flag}", kind_name(kind)))
}

fn kind_name(kind: Kind) -> String {
    kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn check(ok: bool, what: impl FnOnce() -> String) -> anyhow::Result<()> {
    if !ok {
        bail!("self-check failed: {}", what());
    }
    Ok(())
}

fn strong_criterion(m: &Matrix, t: usize) -> anyhow::Result<bool> {
    Ok(AontClaim::Strong { t }.verify_matrix(m)?.verdict())
}

fn restricted_criterion(m: &Matrix, t: usize) -> anyhow::Result<bool> {
    let claim = AontClaim::Restricted { r: (0..t).collect(), t };
    Ok(claim.verify_matrix(m)?.verdict())
}

fn minors_hold(m: &Matrix, t: usize) -> bool {
    (1..=t.min(m.rows())).all(|k| m.all_submatrices_invertible(k, None).is_ok_and(|c| c.holds()))
}

/// Builds the object and a one-line description of what was checked.
fn build(args: &ConstructArgs) -> anyhow::Result<(Object, String)> {
    let kind = args.kind;
    let field = || -> anyhow::Result<Field> { Ok(Field::from_order(need(args.q, kind, "q")?)?) };
    Ok(match kind {
        Kind::Cauchy => {
            let f = field()?;
            let m = if args.r.is_empty() && args.c.is_empty() {
                let s = need(args.s, kind, "s")? as u32;
                cauchy(&f, &(0..s).collect::<Vec<_>>(), &(s..2 * s).collect::<Vec<_>>())?
            } else {
                cauchy(&f, &args.r, &args.c)?
            };
            check(m.is_super_regular(), || "Cauchy matrix is not super-regular".into())?;
            (Object::Matrix(m), "every square submatrix invertible".into())
        }
        Kind::Vandermonde => {
            let f = field()?;
            let m = if args.all_nonzero { vandermonde_all_nonzero(&f)? } else { vandermonde(&f, &args.points)? };
            check(m.determinant()? != 0, || "Vandermonde matrix is singular".into())?;
            let note = if strong_criterion(&m, 2)? { "invertible; strong t=2 holds" } else { "invertible" };
            (Object::Matrix(m), note.into())
        }
        Kind::OaRs => {
            let f = field()?;
            let (s, k) = (need(args.s, kind, "s")?, need(args.k, kind, "k")?);
            if k <= s {
                bail!("an array file needs outputs: k must exceed s");
            }
            let oa = oa_rs(&f, s, k)?;
            check(oa.verify_oa(s)?.verdict(), || format!("not an orthogonal array of strength {s}"))?;
            let a = TransformArray::new(f, s, k - s, oa.entries().to_vec())?;
            (Object::Array(a), format!("orthogonal array of strength {s}"))
        }
        Kind::DmToMatrix => {
            let f = field()?;
            let input = need(args.input.as_ref(), kind, "input")?;
            let Object::Dm(dm) = read_object(input)? else {
                bail!("{} is not a difference-matrix file", input.display());
            };
            let conv = dm_to_matrix(&dm, &f)?;
            check(conv.matrix.all_submatrices_invertible(2, None)?.holds(), || "a 2x2 submatrix is singular".into())?;
            let note = format!("alpha = {}; invertible = {}", conv.alpha, conv.invertible);
            (Object::Matrix(conv.matrix), note)
        }
        Kind::StrongToDm => {
            let input = need(args.input.as_ref(), kind, "input")?;
            let conv = strong_to_dm(&read_matrix(input)?)?;
            check(conv.dm.verify().verdict(), || "result is not a difference matrix".into())?;
            let note = format!("alpha = {}; difference property holds", conv.alpha);
            (Object::Dm(conv.dm), note)
        }
        Kind::RsDoubly => {
            let f = field()?;
            let t = need(args.t, kind, "t")?;
            let m = rs_restricted_doubly(&f, t)?;
            check(restricted_criterion(&m, t)?, || format!("restricted R={{1..{t}}} t={t} fails"))?;
            (Object::Matrix(m), format!("restricted R={{1..{t}}} t={t} holds"))
        }
        Kind::RsTriply => {
            let n = need(args.n, kind, "n")?;
            let (m, t) = if args.dual {
                let m = rs_restricted_triply_dual(n)?;
                let t = (1usize << n) - 1;
                (m, t)
            } else {
                (rs_restricted_triply(n)?, 3)
            };
            check(restricted_criterion(&m, t)?, || format!("restricted R={{1..{t}}} t={t} fails"))?;
            (Object::Matrix(m), format!("restricted R={{1..{t}}} t={t} holds"))
        }
        Kind::Shrink => {
            let input = need(args.input.as_ref(), kind, "input")?;
            let m = read_matrix(input)?;
            let t = args.t.unwrap_or(2);
            let small = match (args.row, args.col) {
                (Some(r), Some(c)) if r >= 1 && c >= 1 => shrink(&m, r - 1, c - 1)?,
                (None, None) => shrink_invertible(&m)?,
                _ => bail!("--row and --col are 1-based and must be given together"),
            };
            if minors_hold(&m, t) {
                check(minors_hold(&small, t), || format!("a k x k submatrix with k <= {t} became singular"))?;
            }
            let note = format!(
                "submatrices up to {t}x{t} invertible: {}; invertible: {}",
                minors_hold(&small, t),
                small.determinant()? != 0
            );
            (Object::Matrix(small), note)
        }
    })
}

pub fn run(args: &ConstructArgs, ctx: &Context) -> anyhow::Result<i32> {
    let (object, note) = build(args)?;
    write_object(&object.write(), args.out.as_deref())?;
    if let Some(path) = &args.out {
        let value = json!({
            "record": "construct",
            "kind": kind_name(args.kind),
            "object": object.kind(),
            "out": path.display().to_string(),
            "verified": note,
        });
        ctx.out.record(value, || format!("wrote {} to {} ({note})", object.kind(), path.display()));
    }
    Ok(0)
}
