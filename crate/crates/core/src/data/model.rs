//! Text model files: a `<d> <L>` header line, then `d` rows of `L` values.
//! Lines starting with `#` are comments. Values use Rust's shortest
//! round-trip float formatting, so a save/load cycle is bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Renders `w` with optional `#` comment lines before the header.
pub fn write_model(w: &DenseMatrix, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", w.rows(), w.cols());
    for i in 0..w.rows() {
        let row: Vec<String> = w.row(i).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn save_model(w: &DenseMatrix, path: &Path, comments: &[String]) -> Result<()> {
    fs::write(path, write_model(w, comments)).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: &Path) -> Result<DenseMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_model(&text, path)
}

pub fn parse_model(text: &str, path: &Path) -> Result<DenseMatrix> {
    let err = |line: usize, msg: String| Error::Format {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, "empty model file".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let parse_dim = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| err(hline, format!("bad dimension '{s}'")))
    };
    let (rows, cols) = match dims.as_slice() {
        [r, c] => (parse_dim(r)?, parse_dim(c)?),
        _ => {
            return Err(err(
                hline,
                format!("expected '<d> <L>' header, found '{header}'"),
            ))
        }
    };

    let mut data = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        if seen_rows == rows {
            return Err(err(lineno, format!("more than the declared {rows} rows")));
        }
        let before = data.len();
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| err(lineno, format!("bad value '{tok}'")))?;
            if !v.is_finite() {
                return Err(err(lineno, format!("non-finite value '{tok}'")));
            }
            data.push(v);
        }
        if data.len() - before != cols {
            return Err(err(
                lineno,
                format!("expected {cols} values, found {}", data.len() - before),
            ));
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(err(
            last_line,
            format!("header declares {rows} rows but {seen_rows} were found"),
        ));
    }
    DenseMatrix::new(rows, cols, data)
}
