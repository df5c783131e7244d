//! Table model and the two render targets. CSV uses 12 significant
//! digits in scientific notation with "." as the decimal separator; JSON
//! mirrors the same columns and rows. Both renderings are byte-stable
//! for identical inputs.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// 12 significant digits; non-finite values render as inf/-inf/nan.
fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, cells: Vec<Cell>) {
        assert_eq!(
            cells.len(),
            self.columns.len(),
            "row width must match the header"
        );
        self.rows.push(cells);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// Numeric value at (row, named column); panics on text cells and
    /// unknown names. Test and trend-check convenience.
    pub fn num(&self, row: usize, column: &str) -> f64 {
        let idx = self
            .columns
            .iter()
            .position(|c| c == column)
            .unwrap_or_else(|| panic!("no column named {column}"));
        match &self.rows[row][idx] {
            Cell::Num(x) => *x,
            Cell::Text(s) => panic!("column {column} holds text ({s}), not a number"),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                match cell {
                    Cell::Num(x) => out.push_str(&fmt_num(*x)),
                    Cell::Text(s) => out.push_str(s),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n  \"columns\": ");
        out.push_str(&serde_json::to_string(&self.columns).expect("strings serialize"));
        out.push_str(",\n  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n    [");
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                match cell {
                    // Non-finite numbers have no JSON literal; quote them
                    // in the same spelling the CSV uses.
                    Cell::Num(x) if x.is_finite() => {
                        let _ = write!(out, "{}", serde_json::Number::from_f64(*x).unwrap());
                    }
                    Cell::Num(x) => {
                        let _ = write!(out, "\"{}\"", fmt_num(*x));
                    }
                    Cell::Text(s) => {
                        out.push_str(&serde_json::to_string(s).expect("strings serialize"));
                    }
                }
            }
            out.push(']');
        }
        if !self.rows.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("]\n}\n");
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Evenly spaced sweep axis, linear or logarithmic in the parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl Axis {
    pub fn linear(start: f64, stop: f64, count: usize) -> Self {
        Axis {
            start,
            stop,
            count,
            log: false,
        }
    }

    pub fn validate(&self, name: &str) -> Result<(), crate::CliError> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(crate::CliError::Usage(format!(
                "{name}: axis bounds must be finite"
            )));
        }
        if self.count < 2 {
            return Err(crate::CliError::Usage(format!(
                "{name}: grid count must be at least 2, got {}",
                self.count
            )));
        }
        if self.log && !(self.start > 0.0 && self.stop > 0.0) {
            return Err(crate::CliError::Usage(format!(
                "{name}: log-scale bounds must be positive, got [{}, {}]",
                self.start, self.stop
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        let (a, b) = if self.log {
            (self.start.ln(), self.stop.ln())
        } else {
            (self.start, self.stop)
        };
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                let x = a + (b - a) * t;
                if self.log {
                    x.exp()
                } else {
                    x
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    // Reference constants keep every digit of the values they were
    // frozen from.
    #![allow(clippy::excessive_precision)]

    use super::*;

    #[test]
    fn csv_uses_12_significant_digits() {
        let mut t = Table::new(&["x", "label"]);
        t.push_row(vec![Cell::Num(0.57901323438996979), "row".into()]);
        let csv = t.to_csv();
        assert_eq!(csv, "x,label\n5.79013234390e-1,row\n");
    }

    #[test]
    fn non_finite_renderings() {
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_num(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_num(f64::NAN), "nan");
        let mut t = Table::new(&["x"]);
        t.push_row(vec![Cell::Num(f64::INFINITY)]);
        assert!(t.to_json().contains("\"inf\""));
    }

    #[test]
    fn json_mirrors_rows() {
        let mut t = Table::new(&["a", "b"]);
        t.push_row(vec![Cell::Num(1.0), Cell::Num(2.5)]);
        let parsed: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(parsed["columns"][1], "b");
        assert_eq!(parsed["rows"][0][1], 2.5);
    }

    #[test]
    fn axis_points_hit_endpoints() {
        let lin = Axis::linear(0.0, 1000.0, 51).points();
        assert_eq!(lin.len(), 51);
        assert_eq!(lin[0], 0.0);
        assert_eq!(lin[50], 1000.0);
        assert!((lin[10] - 200.0).abs() < 1e-12);

        let log = Axis {
            start: 1e-5,
            stop: 1e-1,
            count: 5,
            log: true,
        }
        .points();
        assert!((log[1] / log[0] - 10.0).abs() < 1e-9);
        assert!((log[4] - 1e-1).abs() < 1e-15);
    }

    #[test]
    fn axis_validation_catches_bad_grids() {
        assert!(Axis::linear(0.0, 1.0, 1).validate("t").is_err());
        let bad_log = Axis {
            start: 0.0,
            stop: 1.0,
            count: 3,
            log: true,
        };
        assert!(bad_log.validate("t").is_err());
        assert!(Axis::linear(0.0, f64::NAN, 3).validate("t").is_err());
    }
}
