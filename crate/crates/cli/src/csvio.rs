use std::fs;
use std::path::Path;

use crate::error::CliError;

/// Serializes rows of `f64` cells under a fixed header.
///
/// Cells use Rust's shortest round-trip float formatting, so equal values
/// always produce equal bytes and a reader recovers them exactly. Negative
/// zero normalizes to zero. Rows are newline-terminated, including the
/// last.
pub fn write_csv(
    path: &Path,
    header: &[&str],
    rows: &[Vec<f64>],
) -> Result<(), CliError> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        assert_eq!(row.len(), header.len(), "row width must match the header");
        let cells: Vec<String> = row.iter().map(|v| format!("{}", v + 0.0)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| CliError::io("write", path, e))
}

/// A parsed CSV of finite floats, stored column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(&self.columns[idx])
    }
}

/// Reads a CSV of finite floats. Empty tables, ragged rows, and
/// non-numeric or non-finite cells are schema errors.
pub fn read_csv(path: &Path) -> Result<CsvTable, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io("read", path, e))?;
    let mut lines = text.lines();
    let header: Vec<String> = match lines.next() {
        Some(line) if !line.trim().is_empty() => {
            line.split(',').map(|h| h.trim().to_string()).collect()
        }
        _ => {
            return Err(CliError::Usage(format!(
                "{}: empty CSV, expected a header row",
                path.display()
            )))
        }
    };
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); header.len()];
    let mut rows = 0usize;
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != header.len() {
            return Err(CliError::Usage(format!(
                "{} line {}: {} cells under a {}-column header",
                path.display(),
                lineno + 2,
                cells.len(),
                header.len()
            )));
        }
        for (col, cell) in cells.iter().enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| {
                CliError::Usage(format!(
                    "{} line {}: cell {cell:?} is not a number",
                    path.display(),
                    lineno + 2
                ))
            })?;
            if !value.is_finite() {
                return Err(CliError::Usage(format!(
                    "{} line {}: non-finite value {value}",
                    path.display(),
                    lineno + 2
                )));
            }
            columns[col].push(value);
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(CliError::Usage(format!(
            "{}: empty CSV, no data rows",
            path.display()
        )));
    }
    Ok(CsvTable { header, columns })
}
