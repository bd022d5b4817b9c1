//! The subset of ARFF used by Mulan multi-label datasets.
//!
//! Numeric attributes and `{0,1}` nominal attributes are accepted. Data rows
//! are either dense comma-separated values or sparse `{index value, ...}`
//! lists with 0-based indices and implicit zeros.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::MultiLabelDataset;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Which attributes hold the labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelPosition {
    /// The last `n` attributes.
    Last(usize),
    /// The first `n` attributes.
    First(usize),
    /// Attributes with these names, in file order.
    Named(Vec<String>),
}

#[derive(Debug)]
struct Attribute {
    name: String,
    binary: bool,
}

struct Cursor<'a> {
    path: &'a Path,
}

impl Cursor<'_> {
    fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.to_path_buf(),
            line,
            msg: msg.into(),
        }
    }
}

pub fn load_arff(
    path: &Path,
    label_count: usize,
    labels_at_end: bool,
) -> Result<MultiLabelDataset> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let position = if labels_at_end {
        LabelPosition::Last(label_count)
    } else {
        LabelPosition::First(label_count)
    };
    parse_arff(&text, &position, path)
}

/// Loads an ARFF file whose label attributes are named in a Mulan XML file.
pub fn load_arff_with_xml(path: &Path, xml: &Path) -> Result<MultiLabelDataset> {
    let xml_text = fs::read_to_string(xml).map_err(|e| Error::io(xml, e))?;
    let names = parse_mulan_xml(&xml_text, xml)?;
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_arff(&text, &LabelPosition::Named(names), path)
}

/// Extracts the `name` attribute of every `<label>` element.
pub fn parse_mulan_xml(text: &str, path: &Path) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let mut rest = line;
        while let Some(start) = rest.find("<label") {
            rest = &rest[start + "<label".len()..];
            if !rest.starts_with(|c: char| c.is_whitespace()) {
                continue;
            }
            let Some(attr) = rest.find("name=") else {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    msg: "<label> element without a name attribute".into(),
                });
            };
            let after = &rest[attr + "name=".len()..];
            let quote = after.chars().next().filter(|&c| c == '"' || c == '\'');
            let Some(q) = quote else {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    msg: "label name is not quoted".into(),
                });
            };
            let Some(end) = after[1..].find(q) else {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    msg: "unterminated label name".into(),
                });
            };
            names.push(unescape_xml(&after[1..1 + end]));
            rest = &after[1 + end..];
        }
    }
    if names.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            msg: "no <label> elements found".into(),
        });
    }
    Ok(names)
}

fn unescape_xml(s: &str) -> String {
    s.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&apos;", "'")
        .replace("&amp;", "&")
}

/// Splits a leading (possibly quoted) token from `s`.
fn split_token(s: &str) -> Option<(String, &str)> {
    let s = s.trim_start();
    let first = s.chars().next()?;
    if first == '\'' || first == '"' {
        let end = s[1..].find(first)?;
        Some((s[1..1 + end].to_string(), &s[end + 2..]))
    } else {
        let end = s
            .find(|c: char| c.is_whitespace() || c == '{')
            .unwrap_or(s.len());
        Some((s[..end].to_string(), &s[end..]))
    }
}

fn strip_quotes(s: &str) -> &str {
    let s = s.trim();
    for q in ['\'', '"'] {
        if s.len() >= 2 && s.starts_with(q) && s.ends_with(q) {
            return &s[1..s.len() - 1];
        }
    }
    s
}

fn keyword(line: &str) -> Option<(String, &str)> {
    let rest = line.strip_prefix('@')?;
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    Some((rest[..end].to_ascii_lowercase(), &rest[end..]))
}

fn parse_attribute(cur: &Cursor, line: usize, rest: &str) -> Result<Attribute> {
    let (name, ty) = split_token(rest).ok_or_else(|| cur.err(line, "attribute without a name"))?;
    let ty = ty.trim();
    if ty.starts_with('{') {
        let inner = ty
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| cur.err(line, format!("unterminated nominal list for '{name}'")))?;
        let values: Vec<&str> = inner.split(',').map(strip_quotes).collect();
        if values.iter().any(|v| *v != "0" && *v != "1") {
            return Err(cur.err(
                line,
                format!("nominal attribute '{name}' has values other than {{0,1}}: {{{inner}}}"),
            ));
        }
        return Ok(Attribute { name, binary: true });
    }
    match ty.to_ascii_lowercase().as_str() {
        "numeric" | "real" | "integer" => Ok(Attribute {
            name,
            binary: false,
        }),
        other => Err(cur.err(
            line,
            format!("attribute '{name}' has unsupported type '{other}'"),
        )),
    }
}

fn parse_value(cur: &Cursor, line: usize, raw: &str, attr: &Attribute) -> Result<f64> {
    let token = strip_quotes(raw);
    if token == "?" {
        return Err(cur.err(line, format!("missing value for '{}'", attr.name)));
    }
    let v: f64 = token.parse().map_err(|_| {
        cur.err(
            line,
            format!("non-numeric value '{token}' for attribute '{}'", attr.name),
        )
    })?;
    if !v.is_finite() {
        return Err(cur.err(line, format!("non-finite value for '{}'", attr.name)));
    }
    if attr.binary && v != 0.0 && v != 1.0 {
        return Err(cur.err(
            line,
            format!(
                "value {token} of binary attribute '{}' is not 0 or 1",
                attr.name
            ),
        ));
    }
    Ok(v)
}

/// Parses ARFF text; `path` is used only in error messages.
pub fn parse_arff(text: &str, labels: &LabelPosition, path: &Path) -> Result<MultiLabelDataset> {
    let cur = Cursor { path };
    let mut attrs: Vec<Attribute> = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut row_lines: Vec<usize> = Vec::new();
    let mut in_data = false;
    let mut saw_relation = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        if !in_data {
            let (kw, rest) = keyword(trimmed).ok_or_else(|| {
                cur.err(
                    line,
                    format!("expected a header declaration, found '{trimmed}'"),
                )
            })?;
            match kw.as_str() {
                "relation" => saw_relation = true,
                "attribute" => attrs.push(parse_attribute(&cur, line, rest)?),
                "data" => {
                    if attrs.is_empty() {
                        return Err(cur.err(line, "@data before any @attribute"));
                    }
                    in_data = true;
                }
                other => return Err(cur.err(line, format!("unknown declaration '@{other}'"))),
            }
            continue;
        }

        let mut row = vec![0.0; attrs.len()];
        if let Some(inner) = trimmed.strip_prefix('{') {
            let inner = inner
                .strip_suffix('}')
                .ok_or_else(|| cur.err(line, "sparse row is missing its closing '}'"))?;
            for pair in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let mut parts = pair.split_whitespace();
                let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(cur.err(line, format!("malformed sparse entry '{pair}'")));
                };
                let i: usize = i
                    .parse()
                    .map_err(|_| cur.err(line, format!("bad sparse index '{i}'")))?;
                let attr = attrs.get(i).ok_or_else(|| {
                    cur.err(
                        line,
                        format!("sparse index {i} out of range (0..{})", attrs.len()),
                    )
                })?;
                row[i] = parse_value(&cur, line, v, attr)?;
            }
        } else {
            let fields: Vec<&str> = trimmed.split(',').collect();
            if fields.len() != attrs.len() {
                return Err(cur.err(
                    line,
                    format!("expected {} values, found {}", attrs.len(), fields.len()),
                ));
            }
            for ((slot, f), attr) in row.iter_mut().zip(fields).zip(&attrs) {
                *slot = parse_value(&cur, line, f, attr)?;
            }
        }
        rows.push(row);
        row_lines.push(line);
    }

    if !saw_relation {
        return Err(cur.err(1, "missing @relation declaration"));
    }
    if !in_data {
        return Err(cur.err(text.lines().count().max(1), "missing @data section"));
    }
    if rows.is_empty() {
        return Err(cur.err(text.lines().count().max(1), "no data rows"));
    }

    let is_label = label_mask(&cur, &attrs, labels)?;
    // Numeric label attributes are accepted as long as the data is binary.
    for (j, attr) in attrs.iter().enumerate() {
        if !is_label[j] || attr.binary {
            continue;
        }
        if let Some(i) = rows.iter().position(|r| r[j] != 0.0 && r[j] != 1.0) {
            return Err(cur.err(
                row_lines[i],
                format!(
                    "label attribute '{}' holds non-binary value {}",
                    attr.name, rows[i][j]
                ),
            ));
        }
    }

    let n = rows.len();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for row in &rows {
        for (v, &lab) in row.iter().zip(&is_label) {
            if lab {
                ys.push(*v);
            } else {
                xs.push(*v);
            }
        }
    }
    let feature_names: Vec<String> = attrs
        .iter()
        .zip(&is_label)
        .filter(|(_, &l)| !l)
        .map(|(a, _)| a.name.clone())
        .collect();
    let label_names: Vec<String> = attrs
        .iter()
        .zip(&is_label)
        .filter(|(_, &l)| l)
        .map(|(a, _)| a.name.clone())
        .collect();
    let features = DenseMatrix::new(n, feature_names.len(), xs)?;
    let labels = DenseMatrix::new(n, label_names.len(), ys)?;
    MultiLabelDataset::new(features, labels, feature_names, label_names)
}

fn label_mask(cur: &Cursor, attrs: &[Attribute], labels: &LabelPosition) -> Result<Vec<bool>> {
    let total = attrs.len();
    let count_check = |k: usize| -> Result<()> {
        if k == 0 || k >= total {
            return Err(cur.err(
                1,
                format!("label count {k} must lie in 1..{total} for {total} attributes"),
            ));
        }
        Ok(())
    };
    match labels {
        LabelPosition::Last(k) => {
            count_check(*k)?;
            Ok((0..total).map(|i| i >= total - k).collect())
        }
        LabelPosition::First(k) => {
            count_check(*k)?;
            Ok((0..total).map(|i| i < *k).collect())
        }
        LabelPosition::Named(names) => {
            let mask: Vec<bool> = attrs.iter().map(|a| names.contains(&a.name)).collect();
            if let Some(missing) = names.iter().find(|n| !attrs.iter().any(|a| &a.name == *n)) {
                return Err(cur.err(1, format!("label '{missing}' is not an attribute")));
            }
            count_check(mask.iter().filter(|&&m| m).count())?;
            Ok(mask)
        }
    }
}

fn quote_name(name: &str) -> String {
    if name.is_empty() || name.contains(|c: char| c.is_whitespace() || ",{}'\"%".contains(c)) {
        let q = if name.contains('\'') { '"' } else { '\'' };
        format!("{q}{name}{q}")
    } else {
        name.to_string()
    }
}

/// Serializes a dataset with features first and labels last.
pub fn write_arff(ds: &MultiLabelDataset, relation: &str, sparse: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "@relation {}", quote_name(relation));
    out.push('\n');
    for name in ds.feature_names() {
        let _ = writeln!(out, "@attribute {} numeric", quote_name(name));
    }
    for name in ds.label_names() {
        let _ = writeln!(out, "@attribute {} {{0,1}}", quote_name(name));
    }
    out.push_str("\n@data\n");
    for i in 0..ds.n() {
        let values = ds.features().row(i).iter().chain(ds.labels().row(i));
        if sparse {
            let entries: Vec<String> = values
                .enumerate()
                .filter(|(_, &v)| v != 0.0)
                .map(|(j, v)| format!("{j} {v}"))
                .collect();
            let _ = writeln!(out, "{{{}}}", entries.join(","));
        } else {
            let entries: Vec<String> = values.map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", entries.join(","));
        }
    }
    out
}
