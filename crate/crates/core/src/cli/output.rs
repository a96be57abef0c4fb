//! JSON-lines and CSV renderings of evaluation rows.

use std::io::Write;

use serde::Serialize;

use super::route::Outcome;
use crate::asymptotics::Target;
use crate::error::Error;

/// Header of every `compute` and `table` CSV.
pub const CSV_HEADER: [&str; 12] = [
    "lambda",
    "alpha",
    "beta",
    "mu",
    "n",
    "method",
    "value",
    "digits_lost",
    "working_digits",
    "classification",
    "warnings",
    "error",
];

/// Header of every `error-curve` CSV.
pub const CURVE_HEADER: [&str; 5] = ["n", "exact", "approx", "relError", "fittedLocalOrder"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Parameters as typed on the command line.
#[derive(Debug, Clone, Serialize)]
pub struct ParamsEcho {
    pub lambda: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
}

impl ParamsEcho {
    pub fn of(target: &Target) -> Self {
        match target {
            Target::Jacobi(p) => ParamsEcho {
                lambda: p.lambda.text().to_string(),
                alpha: Some(p.alpha.text().to_string()),
                beta: Some(p.beta.text().to_string()),
                mu: None,
            },
            Target::Gegenbauer(g) => ParamsEcho {
                lambda: g.lambda.text().to_string(),
                alpha: None,
                beta: None,
                mu: Some(g.mu.text().to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Diagnostics {
    /// `null` when the sum cancelled to zero.
    pub digits_lost: Option<f64>,
    pub working_digits: u32,
    pub classification: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_exponents: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// One evaluated (params, n, method) cell.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub params: ParamsEcho,
    pub n: u64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Row {
    /// `requested` names the method column when the evaluation failed.
    pub fn new(target: &Target, n: u64, requested: &str, outcome: &Result<Outcome, Error>, digits: u32) -> Self {
        let params = ParamsEcho::of(target);
        match outcome {
            Ok(o) => Row {
                params,
                n,
                method: o.eval.method.to_string(),
                value: Some(o.eval.value.to_decimal_string(Some(digits))),
                diagnostics: Some(Diagnostics {
                    digits_lost: Some(o.eval.report.digits_lost).filter(|d| d.is_finite()),
                    working_digits: o.eval.working_digits,
                    classification: o.classification.class.to_string(),
                    error_estimate: o.eval.error_estimate,
                    eta_exponents: o.eta_exponents.clone(),
                    warnings: o.warnings.clone(),
                }),
                error: None,
            },
            Err(e) => Row {
                params,
                n,
                method: requested.to_string(),
                value: None,
                diagnostics: None,
                error: Some(e.to_string()),
            },
        }
    }

    fn csv_record(&self) -> [String; 12] {
        let opt = |s: &Option<String>| s.clone().unwrap_or_default();
        let d = self.diagnostics.as_ref();
        [
            self.params.lambda.clone(),
            opt(&self.params.alpha),
            opt(&self.params.beta),
            opt(&self.params.mu),
            self.n.to_string(),
            self.method.clone(),
            opt(&self.value),
            d.and_then(|d| d.digits_lost).map(|v| format!("{v:.3}")).unwrap_or_default(),
            d.map(|d| d.working_digits.to_string()).unwrap_or_default(),
            d.map(|d| d.classification.clone()).unwrap_or_default(),
            d.map(|d| d.warnings.join("; ")).unwrap_or_default(),
            opt(&self.error),
        ]
    }
}

/// One row of an asymptotic error curve.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveRow {
    pub n: u64,
    pub exact: String,
    pub approx: String,
    pub rel_error: String,
    /// `log2(err(n)/err(2n))`; absent on the last row.
    pub fitted_local_order: Option<String>,
}

fn json_lines<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> std::io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut *out, row)?;
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_rows(out: &mut dyn Write, format: Format, rows: &[Row]) -> std::io::Result<()> {
    match format {
        Format::Json => json_lines(out, rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for row in rows {
                w.write_record(row.csv_record())?;
            }
            w.flush()
        }
    }
}

pub fn write_curve(out: &mut dyn Write, format: Format, rows: &[CurveRow]) -> std::io::Result<()> {
    match format {
        Format::Json => json_lines(out, rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CURVE_HEADER)?;
            for r in rows {
                let order = r.fitted_local_order.clone().unwrap_or_default();
                w.write_record([r.n.to_string(), r.exact.clone(), r.approx.clone(), r.rel_error.clone(), order])?;
            }
            w.flush()
        }
    }
}
