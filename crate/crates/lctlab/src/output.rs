//! Result envelopes and their JSON and CSV renderings.

use lctlab_core::newton::{default_var_names, MonomialIdeal, Precision, Value};
use lctlab_core::{Extended, Rational};
use serde_json::{json, Map, Value as Json};

use crate::CliError;

pub fn rat_json(r: &Rational) -> Json {
    Json::String(r.to_string())
}

pub fn rats_json(v: &[Rational]) -> Json {
    Json::Array(v.iter().map(rat_json).collect())
}

pub fn extended_json(e: &Extended) -> Json {
    match e {
        Extended::Finite(r) => rat_json(r),
        Extended::Infinite => Json::String("inf".into()),
    }
}

pub fn value_json(v: &Value, tolerance: f64) -> Json {
    match v {
        Value::Exact(r) => rat_json(r),
        Value::Infinite => Json::String("inf".into()),
        Value::Approx { value, lo, hi } => json!({
            "approx": value,
            "interval": [lo, hi],
            "tolerance": tolerance,
        }),
    }
}

pub fn precision_json(p: &Precision) -> Json {
    match p {
        Precision::Exact => json!({"kind": "exact"}),
        Precision::InnerApproximation { window } => json!({"kind": "inner", "window": window}),
        Precision::Approximate { tolerance } => json!({"kind": "approximate", "tolerance": tolerance}),
    }
}

pub fn ideal_json(a: &MonomialIdeal, vars: &[String]) -> Json {
    json!({
        "gens": a.generators().iter().map(|g| g.coords().to_vec()).collect::<Vec<_>>(),
        "display": display_ideal(a, vars),
    })
}

pub fn display_ideal(a: &MonomialIdeal, vars: &[String]) -> String {
    if vars.len() == a.nvars() {
        a.display_with(vars)
    } else {
        a.display_with(&default_var_names(a.nvars()))
    }
}

/// One CSV cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Approx { value: f64, tolerance: f64 },
}

impl Cell {
    pub fn rat(r: &Rational) -> Cell {
        Cell::Text(r.to_string())
    }

    pub fn value(v: &Value, tolerance: f64) -> Cell {
        match v {
            Value::Exact(r) => Cell::rat(r),
            Value::Infinite => Cell::Text("inf".into()),
            Value::Approx { value, .. } => Cell::Approx { value: *value, tolerance },
        }
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    /// Approximate cells are written as decimals; rows holding one get the
    /// tolerance in a trailing `tol` column.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let approximate = self.rows.iter().flatten().any(|c| matches!(c, Cell::Approx { .. }));
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = self.header.clone();
        if approximate {
            header.push("tol".into());
        }
        w.write_record(&header).map_err(csv_error)?;
        for row in &self.rows {
            let mut tol = None;
            let mut out: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Text(s) => s.clone(),
                    Cell::Approx { value, tolerance } => {
                        tol = Some(*tolerance);
                        format!("{value:.15}")
                    }
                })
                .collect();
            if approximate {
                out.push(tol.map(|t| format!("~{t:e}")).unwrap_or_default());
            }
            w.write_record(&out).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Computation(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Computation(e.to_string()))
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Computation(format!("csv: {e}"))
}

/// What a subcommand produced.
#[derive(Clone, Debug)]
pub struct Report {
    pub result: Json,
    pub table: Table,
    pub svg: Option<String>,
    pub precision: Precision,
    /// Set by `check` when some property failed.
    pub failed: bool,
}

impl Report {
    pub fn new(result: Json, table: Table) -> Self {
        Self {
            result,
            table,
            svg: None,
            precision: Precision::Exact,
            failed: false,
        }
    }

    pub fn with_precision(mut self, p: Precision) -> Self {
        self.precision = p;
        self
    }

    pub fn with_svg(mut self, svg: String) -> Self {
        self.svg = Some(svg);
        self
    }
}

/// The JSON envelope: command echo, precision tag, result and warnings.
pub fn envelope(command: &str, args: &Map<String, Json>, report: &Report, warnings: &[String], timing_ms: Option<f64>) -> Json {
    let mut env = json!({
        "command": command,
        "args": Json::Object(args.clone()),
        "precision": precision_json(&report.precision),
        "result": report.result,
        "warnings": warnings,
    });
    if let Some(t) = timing_ms {
        env["timing_ms"] = json!(t);
    }
    env
}

#[cfg(test)]
mod tests {
    use super::*;
    use lctlab_core::ratlp::rat;

    #[test]
    fn csv_marks_approximations() {
        let mut t = Table::new(&["quantity", "value"]);
        t.push(vec!["lct".into(), Cell::rat(&rat(5, 6))]);
        assert_eq!(t.to_csv().unwrap(), "quantity,value\nlct,5/6\n");
        t.push(vec!["arn".into(), Cell::Approx { value: 0.5, tolerance: 1e-12 }]);
        assert_eq!(t.to_csv().unwrap(), "quantity,value,tol\nlct,5/6,\narn,0.500000000000000,~1e-12\n");
    }
}
