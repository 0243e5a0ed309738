use std::path::PathBuf;

use aont_core::search::{
    analytic_bounds, exists_strong_in, max_strong_with, MaxStrong, Outcome, SearchConfig, SearchResult, Stop,
    WitnessSource,
};
use aont_core::Field;
use clap::ArgGroup;
use serde_json::{json, Value};

use crate::output::{matrix_json, matrix_text, read_matrix};
use crate::Context;

#[derive(clap::Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["exists", "max"])))]
pub struct SearchArgs {
    #[arg(long)]
    pub q: u64,
    /// Look for one matrix of size `--s`.
    #[arg(long, requires = "s")]
    pub exists: bool,
    #[arg(long)]
    pub s: Option<usize>,
    /// Find the largest size with a witness.
    #[arg(long)]
    pub max: bool,
    /// Every k x k submatrix must be invertible for k <= t.
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    /// Known witness matrix raising the starting point of `--max`.
    #[arg(long)]
    pub witness: Vec<PathBuf>,
}

pub fn run(args: &SearchArgs, ctx: &Context) -> anyhow::Result<i32> {
    let config = SearchConfig { candidate_cap: ctx.candidate_cap, jobs: ctx.jobs };
    if args.exists {
        let s = args.s.expect("clap enforces --s");
        let field = Field::from_order(args.q)?;
        let result = exists_strong_in(&field, s, args.t, &config)?;
        emit_step(&result, ctx);
        return Ok(if result.outcome == Outcome::AbortedCap { 3 } else { 0 });
    }
    let witnesses = args.witness.iter().map(|p| read_matrix(p)).collect::<anyhow::Result<Vec<_>>>()?;
    let result = max_strong_with(args.q, args.t, &witnesses, &config)?;
    for step in &result.steps {
        emit_step(step, ctx);
    }
    emit_max(&result, ctx);
    Ok(if result.value().is_some() { 0 } else { 3 })
}

fn emit_step(r: &SearchResult, ctx: &Context) {
    let value = json!({
        "record": "search",
        "q": r.q,
        "s": r.s,
        "t": r.t,
        "outcome": r.outcome.label(),
        "witness": r.witness().map(matrix_json),
        "candidates_examined": r.candidates_examined,
        "nodes": r.nodes,
        "space": r.space.to_string(),
        "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
        "jobs": r.jobs,
    });
    ctx.out.record(value, || {
        let mut text = format!(
            "q={} s={} t={}: {} ({} candidates, {} nodes, space {}, {:.3} s)",
            r.q,
            r.s,
            r.t,
            r.outcome.label(),
            r.candidates_examined,
            r.nodes,
            r.space,
            r.elapsed.as_secs_f64()
        );
        if let Some(w) = r.witness() {
            text.push('\n');
            text.push_str(&matrix_text(w));
        }
        text
    });
}

fn source_label(s: WitnessSource) -> &'static str {
    match s {
        WitnessSource::Analytic => "analytic",
        WitnessSource::External => "external",
        WitnessSource::Search => "search",
    }
}

fn emit_max(r: &MaxStrong, ctx: &Context) {
    let (stop, stop_s) = match r.stop {
        Stop::Exhausted(s) => ("exhausted", s),
        Stop::Cap(s) => ("cap", s),
    };
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| json!({"s": w.s, "source": source_label(w.source), "matrix": matrix_json(&w.matrix)}))
        .collect();
    let value = json!({
        "record": "max",
        "q": r.q,
        "t": r.t,
        "value": r.value(),
        "interval": [r.lower, r.upper],
        "stop": stop,
        "stop_s": stop_s,
        "analytic_upper": r.bounds.upper,
        "witnesses": witnesses,
        "notes": r.bounds.notes,
    });
    ctx.out.record(value, || {
        let mut text = match r.value() {
            Some(v) => format!("max s for q={} t={}: {v}", r.q, r.t),
            None => format!("max s for q={} t={}: in [{}, {}]", r.q, r.t, r.lower, r.upper),
        };
        text.push_str(&format!("\n  stopped by {stop} at s={stop_s}; analytic upper bound {}", r.bounds.upper));
        for w in &r.witnesses {
            text.push_str(&format!("\n  witness s={} ({})\n{}", w.s, source_label(w.source), matrix_text(&w.matrix)));
        }
        text
    });
}

pub fn bounds(q: u64, ctx: &Context) -> anyhow::Result<i32> {
    let b = analytic_bounds(q)?;
    let value = json!({
        "record": "bounds",
        "q": b.q,
        "bush": b.bush,
        "upper": b.upper,
        "lower": b.lower,
        "lower_witness": b.lower_witness.as_ref().map(matrix_json),
        "notes": b.notes,
    });
    ctx.out.record(value, || {
        let mut text = format!("q={}: {} <= max s <= {} (bush bound {})", b.q, b.lower, b.upper, b.bush);
        for n in &b.notes {
            text.push_str(&format!("\n  {n}"));
        }
        text
    });
    Ok(0)
}
