use std::fs;
use std::path::Path;

use aont_core::format::{self, Object};
use aont_core::Matrix;
use anyhow::Context as _;
use serde_json::{json, Value};

pub struct Output {
    pub json: bool,
}

impl Output {
    /// Prints one JSON line, or the human rendering.
    pub fn record(&self, value: Value, human: impl FnOnce() -> String) {
        if self.json {
            println!("{value}");
        } else {
            println!("{}", human());
        }
    }
}

pub fn read_object(path: &Path) -> anyhow::Result<Object> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    format::parse(&text).with_context(|| format!("{}", path.display()))
}

pub fn read_matrix(path: &Path) -> anyhow::Result<Matrix> {
    match read_object(path)? {
        Object::Matrix(m) => Ok(m),
        other => anyhow::bail!("{} holds {}, expected a matrix", path.display(), other.kind()),
    }
}

/// Writes to `path`, or to stdout when no path is given.
pub fn write_object(text: &str, path: Option<&Path>) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!(m.iter_rows().collect::<Vec<_>>())
}

pub fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

pub fn set_label(indices: &[usize]) -> String {
    let labels: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", labels.join(","))
}

pub fn matrix_text(m: &Matrix) -> String {
    m.iter_rows()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
            format!("  {}", cells.join(""))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
