//! Plain-text file formats. Every file is ASCII decimal, single spaces,
//! newline-terminated lines.
//!
//! ```text
//! GF p n c0 .. cn      field header (`GF p 1` for prime fields)
//! MAT rows cols        then `rows` lines of `cols` encodings
//!
//! GF p n c0 .. cn
//! ARRAY v s n          then v^s lines of s + n symbols
//!
//! DM g k lambda        then k lines of g * lambda integers
//! ```

use std::fmt::Write as _;

use crate::arrays::TransformArray;
use crate::constructions::DifferenceMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Matrix(Matrix),
    Array(TransformArray),
    Dm(DifferenceMatrix),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Matrix(_) => "matrix",
            Object::Array(_) => "array",
            Object::Dm(_) => "dm",
        }
    }

    pub fn write(&self) -> String {
        match self {
            Object::Matrix(m) => write_matrix(m),
            Object::Array(a) => write_array(a),
            Object::Dm(d) => write_dm(d),
        }
    }
}

pub fn field_header(field: &Field) -> String {
    let mut out = format!("GF {} {}", field.characteristic(), field.degree());
    if field.degree() > 1 {
        for c in field.modulus() {
            write!(out, " {c}").unwrap();
        }
    }
    out
}

fn push_row(out: &mut String, row: &[u32]) {
    for (j, x) in row.iter().enumerate() {
        if j > 0 {
            out.push(' ');
        }
        write!(out, "{x}").unwrap();
    }
    out.push('\n');
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = field_header(m.field());
    writeln!(out, "\nMAT {} {}", m.rows(), m.cols()).unwrap();
    m.iter_rows().for_each(|r| push_row(&mut out, r));
    out
}

pub fn write_array(a: &TransformArray) -> String {
    let mut out = field_header(a.field());
    writeln!(out, "\nARRAY {} {} {}", a.field().order(), a.inputs(), a.outputs()).unwrap();
    a.as_array().iter_rows().for_each(|r| push_row(&mut out, r));
    out
}

pub fn write_dm(d: &DifferenceMatrix) -> String {
    let mut out = format!("DM {} {} {}\n", d.group_order(), d.rows(), d.lambda());
    d.iter_rows().for_each(|r| push_row(&mut out, r));
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    consumed: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), consumed: 0 }
    }

    /// Next line as `(1-based number, tokens)`.
    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.inner.next() {
            Some((i, line)) => {
                self.consumed = i + 1;
                Ok((i + 1, line.split_whitespace().collect()))
            }
            None => Err(Error::format(self.consumed + 1, format!("unexpected end of file, expected {what}"))),
        }
    }

    fn finish(mut self) -> Result<()> {
        for (i, line) in self.inner.by_ref() {
            if !line.trim().is_empty() {
                return Err(Error::format(i + 1, "trailing content"));
            }
        }
        Ok(())
    }
}

fn number<T: std::str::FromStr>(line: usize, token: &str) -> Result<T> {
    token.parse().map_err(|_| Error::format(line, format!("`{token}` is not a non-negative integer")))
}

fn numbers(line: usize, tokens: &[&str]) -> Result<Vec<u32>> {
    tokens.iter().map(|t| number(line, t)).collect()
}

fn expect_keyword(line: usize, tokens: &[&str], keyword: &str, args: usize) -> Result<()> {
    if tokens.first() != Some(&keyword) || tokens.len() != args + 1 {
        return Err(Error::format(line, format!("expected `{keyword}` followed by {args} integers")));
    }
    Ok(())
}

fn parse_field(line: usize, tokens: &[&str]) -> Result<Field> {
    if tokens.first() != Some(&"GF") || tokens.len() < 3 {
        return Err(Error::format(line, "expected field header `GF p n c0 .. cn`"));
    }
    let p: u32 = number(line, tokens[1])?;
    let n: u32 = number(line, tokens[2])?;
    let coeffs = numbers(line, &tokens[3..])?;
    let modulus = if coeffs.is_empty() {
        None
    } else if coeffs.len() == n as usize + 1 {
        Some(coeffs.as_slice())
    } else {
        return Err(Error::format(line, format!("degree {n} modulus needs {} coefficients", n + 1)));
    };
    Field::new(p, n, modulus).map_err(|e| Error::format(line, e.to_string()))
}

fn parse_rows(lines: &mut Lines, rows: usize, width: usize, bound: u32) -> Result<Vec<u32>> {
    let mut data = Vec::with_capacity(rows.saturating_mul(width));
    for _ in 0..rows {
        let (line, tokens) = lines.next("a data row")?;
        if tokens.len() != width {
            return Err(Error::format(line, format!("expected {width} entries, found {}", tokens.len())));
        }
        for t in tokens {
            let x: u32 = number(line, t)?;
            if x >= bound {
                return Err(Error::format(line, format!("entry {x} out of range 0..{bound}")));
            }
            data.push(x);
        }
    }
    Ok(data)
}

fn matrix_body(field: Field, line: usize, tokens: &[&str], lines: &mut Lines) -> Result<Matrix> {
    expect_keyword(line, tokens, "MAT", 2)?;
    let rows: usize = number(line, tokens[1])?;
    let cols: usize = number(line, tokens[2])?;
    let data = parse_rows(lines, rows, cols, field.order())?;
    Matrix::new(field, rows, cols, data).map_err(|e| Error::format(line, e.to_string()))
}

fn array_body(field: Field, line: usize, tokens: &[&str], lines: &mut Lines) -> Result<TransformArray> {
    expect_keyword(line, tokens, "ARRAY", 3)?;
    let v: u32 = number(line, tokens[1])?;
    let s: u32 = number(line, tokens[2])?;
    let n: usize = number(line, tokens[3])?;
    if v != field.order() {
        return Err(Error::format(line, format!("alphabet {v} differs from field order {}", field.order())));
    }
    let rows = u64::from(v)
        .checked_pow(s)
        .filter(|&r| r.saturating_mul(u64::from(s) + n as u64) as u128 <= crate::arrays::DEFAULT_CELL_CAP)
        .ok_or_else(|| Error::format(line, format!("{v}^{s} rows exceed the cell cap")))?;
    let data = parse_rows(lines, rows as usize, s as usize + n, v)?;
    TransformArray::new(field, s as usize, n, data).map_err(|e| Error::format(line, e.to_string()))
}

fn dm_body(line: usize, tokens: &[&str], lines: &mut Lines) -> Result<DifferenceMatrix> {
    expect_keyword(line, tokens, "DM", 3)?;
    let g: u32 = number(line, tokens[1])?;
    let k: usize = number(line, tokens[2])?;
    let lambda: usize = number(line, tokens[3])?;
    let data = parse_rows(lines, k, (g as usize).saturating_mul(lambda), g.max(1))?;
    DifferenceMatrix::new(g, k, lambda, data).map_err(|e| Error::format(line, e.to_string()))
}

/// Parses any of the three formats, detected from the first line(s).
pub fn parse(text: &str) -> Result<Object> {
    let mut lines = Lines::new(text);
    let (line, tokens) = lines.next("a header")?;
    let object = if tokens.first() == Some(&"DM") {
        Object::Dm(dm_body(line, &tokens, &mut lines)?)
    } else {
        let field = parse_field(line, &tokens)?;
        let (line, tokens) = lines.next("`MAT` or `ARRAY`")?;
        match tokens.first() {
            Some(&"MAT") => Object::Matrix(matrix_body(field, line, &tokens, &mut lines)?),
            Some(&"ARRAY") => Object::Array(array_body(field, line, &tokens, &mut lines)?),
            _ => return Err(Error::format(line, "expected `MAT` or `ARRAY`")),
        }
    };
    lines.finish()?;
    Ok(object)
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    match parse(text)? {
        Object::Matrix(m) => Ok(m),
        other => Err(Error::format(1, format!("expected a matrix file, found {}", other.kind()))),
    }
}

pub fn parse_array(text: &str) -> Result<TransformArray> {
    match parse(text)? {
        Object::Array(a) => Ok(a),
        other => Err(Error::format(1, format!("expected an array file, found {}", other.kind()))),
    }
}

pub fn parse_dm(text: &str) -> Result<DifferenceMatrix> {
    match parse(text)? {
        Object::Dm(d) => Ok(d),
        other => Err(Error::format(1, format!("expected a difference-matrix file, found {}", other.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::Direction;
    use proptest::prelude::*;

    const RANGE9: &str = "GF 3 2 1 0 1\nMAT 6 6\n1 1 1 1 1 1\n1 2 3 4 5 6\n1 3 2 6 7 4\n1 4 8 5 6 7\n1 5 6 3 8 2\n1 6 5 2 4 3\n";

    #[test]
    fn matrix_round_trip() {
        let m = parse_matrix(RANGE9).unwrap();
        assert_eq!(m.field().order(), 9);
        assert_eq!(m.row(2), &[1, 3, 2, 6, 7, 4]);
        assert_eq!(write_matrix(&m), RANGE9);
    }

    #[test]
    fn prime_field_header() {
        let text = "GF 5 1\nMAT 2 2\n1 1\n1 2\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.field(), &Field::new(5, 1, None).unwrap());
        assert_eq!(write_matrix(&m), text);
    }

    #[test]
    fn array_round_trip() {
        let m = parse_matrix("GF 3 1\nMAT 2 2\n1 1\n1 2\n").unwrap();
        let a = TransformArray::from_linear(&m, Direction::Inverse).unwrap();
        let text = write_array(&a);
        assert!(text.starts_with("GF 3 1\nARRAY 3 2 2\n0 0 0 0\n"));
        assert_eq!(text.lines().count(), 2 + 9);
        let back = parse_array(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(write_array(&back), text);
    }

    #[test]
    fn dm_round_trip() {
        let text = "DM 3 3 1\n0 0 0\n0 1 2\n0 2 1\n";
        let d = parse_dm(text).unwrap();
        assert!(d.verify().verdict());
        assert_eq!(write_dm(&d), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("GF 4 1\nMAT 1 1\n1\n", 1),
            ("GF 3 2 1 1 1\nMAT 1 1\n1\n", 1),
            ("GF 3 1\nMAX 1 1\n1\n", 2),
            ("GF 3 1\nMAT 2 2\n1 1\n1\n", 4),
            ("GF 3 1\nMAT 1 2\n1 3\n", 3),
            ("GF 3 1\nMAT 1 2\n1 x\n", 3),
            ("GF 3 1\nMAT 1 1\n1\n2\n", 4),
            ("GF 3 1\nMAT 2 2\n1 1\n", 4),
            ("GF 3 1\nARRAY 3 1 1\n0 0\n0 1\n0 2\n", 2),
            ("DM 3 2 1\n0 0 0\n", 3),
        ];
        for (text, line) in cases {
            match parse(text) {
                Err(Error::Format { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} parsed as {other:?}"),
            }
        }
    }

    #[test]
    fn kind_mismatch() {
        assert!(parse_array(RANGE9).is_err());
        assert!(parse_dm(RANGE9).is_err());
        assert!(parse_matrix("DM 2 1 1\n0 1\n").is_err());
    }

    proptest! {
        #[test]
        fn canonical_files_round_trip(
            q in prop::sample::select(vec![2u64, 3, 4, 5, 8, 9, 16, 25]),
            rows in 1usize..5,
            cols in 1usize..5,
            seed in proptest::collection::vec(any::<u32>(), 16),
        ) {
            let f = Field::from_order(q).unwrap();
            let data: Vec<u32> = (0..rows * cols).map(|i| seed[i % 16] % f.order()).collect();
            let m = Matrix::new(f, rows, cols, data).unwrap();
            let text = write_matrix(&m);
            let back = parse_matrix(&text).unwrap();
            prop_assert_eq!(&back, &m);
            prop_assert_eq!(write_matrix(&back), text);
        }
    }
}
