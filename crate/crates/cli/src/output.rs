//! CSV and JSON rendering. Floats are written with 17 significant digits so
//! they round-trip exactly; no locale is involved.

use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use fockspace::verify::Report;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn float(v: f64) -> String {
    if v == 0.0 {
        // keep the sign of −0 out of the output
        return "0".into();
    }
    format!("{v:.16e}")
}

fn json_float(v: f64) -> Value {
    // serde_json writes the shortest round-trip form; non-finite values become strings
    if v.is_finite() {
        json!(v)
    } else {
        json!(v.to_string())
    }
}

pub struct Table {
    title: String,
    seed: u64,
    columns: Vec<String>,
    /// Leading integer columns per row.
    ints: usize,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(title: String, seed: u64, columns: &[&str]) -> Self {
        Self { title, seed, columns: columns.iter().map(|c| c.to_string()).collect(), ints: 0, rows: Vec::new() }
    }

    pub fn push(&mut self, row: &[f64]) {
        self.rows.push(row.to_vec());
    }

    /// Row whose first values are integer labels.
    pub fn push_mixed(&mut self, ints: &[f64], floats: &[f64]) {
        self.ints = ints.len();
        self.rows.push(ints.iter().chain(floats).copied().collect());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = format!("# {}; atomic units; seed={}\n{}\n", self.title, self.seed, self.columns.join(","));
                for row in &self.rows {
                    let cells: Vec<String> = row
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| if i < self.ints { format!("{}", v as i64) } else { float(v) })
                        .collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: serde_json::Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .enumerate()
                            .map(|(i, (c, &v))| (c.clone(), if i < self.ints { json!(v as i64) } else { json_float(v) }))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let doc = json!({
                    "title": self.title,
                    "units": "atomic",
                    "seed": self.seed,
                    "columns": self.columns,
                    "rows": rows,
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
            }
        }
    }
}

pub fn render_report(report: &Report, format: Format) -> Result<String, serde_json::Error> {
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(report)?),
        Format::Csv => {
            let mut s = format!(
                "# suite={}; seed={}; passed={}; failed={}; elapsed_ms={}\n",
                report.suite, report.seed, report.passed, report.failed, report.elapsed_ms
            );
            s.push_str("id,params,lhs_re,lhs_im,rhs_re,rhs_im,residual,tolerance,pass,oracle\n");
            for c in &report.cases {
                let params: Vec<String> = c.case.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},\"{}\"\n",
                    c.case.id,
                    params.join(";"),
                    float(c.case.lhs.re),
                    float(c.case.lhs.im),
                    float(c.case.rhs.re),
                    float(c.case.rhs.im),
                    float(c.case.residual),
                    float(c.tolerance),
                    c.pass,
                    c.oracle
                ));
            }
            for d in &report.discrepancies {
                s.push_str(&format!("# discrepancy {} [{}] {:?}: printed {}; adopted {}\n", d.id, d.module, d.status, d.printed, d.adopted));
            }
            s
        }
    })
}

/// Stdout or a file given by `--out`.
pub struct Sink(Option<PathBuf>);

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        Self(path)
    }

    pub fn write(&self, text: &str) -> std::io::Result<()> {
        match &self.0 {
            Some(p) => std::fs::write(p, text),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 2.0 * 2f64.sqrt() / std::f64::consts::PI, -1e-300, 123456.789, f64::MIN_POSITIVE] {
            assert_eq!(float(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(float(-0.0), "0");
    }
}
