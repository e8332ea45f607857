//! Report serialization: JSON with stable key order (struct declaration
//! order) and CSV with a header row, LF line endings, and all decimals at
//! 17 significant digits so re-parsing is lossless.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use hardy_means::classify::HardyConstant;

/// 17 significant digits: lossless for f64.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Quote a CSV field when it contains a delimiter, quote, or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn constant_field(c: &HardyConstant) -> String {
    match c {
        HardyConstant::Finite(v) => fmt17(*v),
        HardyConstant::Infinite => "+inf".into(),
        HardyConstant::Unknown => "unknown".into(),
    }
}

/// Write to the path when given, otherwise to stdout.
pub fn emit(out: Option<&Path>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Assemble a CSV document from a header and rows.
pub fn csv_table(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut doc = String::from(header);
    doc.push('\n');
    for row in rows {
        doc.push_str(&row);
        doc.push('\n');
    }
    doc
}
