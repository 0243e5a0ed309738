use std::path::PathBuf;

use aont_core::format::Object;
use aont_core::{AontClaim, CriterionFailure, CriterionReport, Matrix, TransformArray, VerificationReport};
use anyhow::bail;
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::output::{one_based, read_object, set_label};
use crate::Context;

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Matrix or array file.
    pub file: PathBuf,
    /// Claim, e.g. "strong t=2" or "restricted R={1,2} t=2".
    pub claim: String,
    #[arg(value_enum, default_value_t = Method::Both)]
    pub method: Method,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Submatrix invertibility (matrix files only).
    Criterion,
    /// Count tuples in the array representation.
    Bruteforce,
    /// Run both and require agreement.
    Both,
}

pub fn run(args: &VerifyArgs, ctx: &Context) -> anyhow::Result<i32> {
    let claim: AontClaim = args.claim.parse()?;
    let object = read_object(&args.file)?;
    if matches!(object, Object::Array(_)) && args.method != Method::Bruteforce {
        bail!(
            "method mismatch: `{}` is a raw array, which has no submatrix criterion; use `bruteforce`",
            args.file.display()
        );
    }
    if !ctx.out.json {
        println!("{:<11} {:<28} {:<8} witness", "method", "claim", "verdict");
    }
    let verdicts = match object {
        Object::Matrix(m) => verify_matrix(&m, &claim, args.method, ctx)?,
        Object::Array(a) => vec![brute_force(&a, &claim, ctx)?],
        Object::Dm(_) => bail!("`{}` is a difference matrix; claims apply to matrices and arrays", args.file.display()),
    };
    if verdicts.windows(2).any(|w| w[0] != w[1]) {
        bail!("criterion and brute force disagree on `{claim}`");
    }
    Ok(if verdicts.iter().all(|&v| v) { 0 } else { 1 })
}

fn verify_matrix(m: &Matrix, claim: &AontClaim, method: Method, ctx: &Context) -> anyhow::Result<Vec<bool>> {
    let mut verdicts = Vec::new();
    if method != Method::Bruteforce {
        let report = claim.verify_matrix(m)?;
        emit_criterion(&report, ctx);
        verdicts.push(report.verdict());
    }
    if method != Method::Criterion {
        let array = TransformArray::from_linear_capped(m, claim.direction(), ctx.cell_cap)?;
        verdicts.push(brute_force(&array, claim, ctx)?);
    }
    Ok(verdicts)
}

fn brute_force(a: &TransformArray, claim: &AontClaim, ctx: &Context) -> anyhow::Result<bool> {
    let report = claim.verify_array(a)?;
    emit_brute(&report, ctx);
    Ok(report.verdict())
}

fn emit_criterion(r: &CriterionReport, ctx: &Context) {
    let (rows, cols) = match &r.failure {
        Some(CriterionFailure::Minor(w)) => (json!(one_based(&w.rows)), json!(one_based(&w.cols))),
        _ => (Value::Null, Value::Null),
    };
    let value = json!({
        "method": "criterion",
        "claim": r.claim.to_string(),
        "verdict": r.verdict(),
        "singular": r.failure == Some(CriterionFailure::Singular),
        "witness_rows": rows,
        "witness_columns": cols,
        "witness_tuple": Value::Null,
        "counts": Value::Null,
    });
    ctx.out.record(value, || {
        let witness = match &r.failure {
            None => "-".to_string(),
            Some(CriterionFailure::Singular) => "matrix is singular".to_string(),
            Some(CriterionFailure::Minor(w)) => {
                format!("rows {} columns {} singular", set_label(&w.rows), set_label(&w.cols))
            }
        };
        format!("{:<11} {:<28} {:<8} {witness}", "criterion", r.claim.to_string(), r.verdict())
    });
}

fn emit_brute(r: &VerificationReport, ctx: &Context) {
    let (cols, tuple, counts) = match &r.failure {
        Some(f) => (
            json!(one_based(&f.columns)),
            json!(f.count.tuple),
            json!({
                "observed": f.count.observed,
                "expected": f.count.expected(),
                "rows": f.count.rows,
                "tuple_space": f.count.tuple_space.to_string(),
            }),
        ),
        None => (Value::Null, Value::Null, Value::Null),
    };
    let value = json!({
        "method": "bruteforce",
        "claim": r.claim.to_string(),
        "verdict": r.verdict(),
        "sets_checked": r.sets_checked,
        "witness_columns": cols,
        "witness_tuple": tuple,
        "counts": counts,
    });
    ctx.out.record(value, || {
        let witness = match &r.failure {
            None => format!("- ({} column sets)", r.sets_checked),
            Some(f) => format!("columns {}: {}", set_label(&f.columns), f.count),
        };
        format!("{:<11} {:<28} {:<8} {witness}", "bruteforce", r.claim.to_string(), r.verdict())
    });
}
