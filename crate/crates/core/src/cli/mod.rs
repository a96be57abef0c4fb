//! The `gegnorm` command line.
//!
//! Exit codes: 0 on success, 1 when a computation does not converge or a
//! verification fails, 2 on invalid input, 3 when the working-precision cap
//! is too small for the requested budget.

mod output;
mod route;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

pub use output::{CurveRow, Diagnostics, Format, ParamsEcho, Row, CSV_HEADER, CURVE_HEADER};
pub use route::{classify, evaluate, Outcome};

use crate::asymptotics::{crossover, Target, CROSSOVER_LIMIT};
use crate::error::{Error, Result};
use crate::eval::{Budget, Method, DEFAULT_MAX_WORKING_DIGITS};
use crate::numerics::Real;
use crate::params::{GegenbauerParams, JacobiParams, Param};
use crate::verify::{self, Suite};

#[derive(Debug, Parser)]
#[command(name = "gegnorm", version, about = "Weighted L2 norms of Gegenbauer polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one norm.
    Compute(ComputeArgs),
    /// Evaluate a grid of parameters, degrees and methods.
    Table(TableArgs),
    /// Compare exact values with a truncated asymptotic series.
    ErrorCurve(CurveArgs),
    /// Smallest n where the asymptotic series meets a tolerance.
    Crossover(CrossoverArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Gegenbauer index; "p/q" enters an exact rational.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Jacobi exponent at x = 1 (requires --beta).
    #[arg(long, allow_hyphen_values = true, requires = "beta", conflicts_with = "mu")]
    alpha: Option<String>,
    /// Jacobi exponent at x = -1 (requires --alpha).
    #[arg(long, allow_hyphen_values = true, requires = "alpha")]
    beta: Option<String>,
    /// Gegenbauer weight index: weight (1 - x^2)^(mu - 1/2).
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    /// Significant decimal digits of the output.
    #[arg(long, env = "GEGNORM_DIGITS", default_value_t = 40, value_parser = clap::value_parser!(u32).range(5..))]
    digits: u32,
    /// Ceiling for automatic working-precision escalation, in digits.
    #[arg(long, default_value_t = DEFAULT_MAX_WORKING_DIGITS)]
    max_digits: u32,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget::digits(self.digits).with_max_working_digits(self.max_digits)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    n: u64,
    /// exact5F4, exact4F3, connection, recurrence, genfun, quadrature,
    /// asymptotic(M), leadingTerm, closedForm, or auto.
    #[arg(long, default_value = "auto")]
    method: String,
    /// Truncation index M for a bare "asymptotic".
    #[arg(long)]
    terms: Option<u32>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    lambda_list: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "beta_list", conflicts_with = "mu_list")]
    alpha_list: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "alpha_list")]
    beta_list: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    mu_list: Vec<String>,
    #[arg(long, default_value_t = 1)]
    n_min: u64,
    #[arg(long)]
    n_max: u64,
    #[arg(long, value_delimiter = ',', default_value = "auto")]
    methods: Vec<String>,
    /// Truncation index M for a bare "asymptotic".
    #[arg(long)]
    terms: Option<u32>,
    /// Report failures in the error column instead of stopping.
    #[arg(long)]
    keep_going: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Approx {
    /// The M-term series, or the leading term when the series is undefined.
    Auto,
    Series,
    Leading,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Strictly increasing degrees; defaults to 64, 128, ..., 16384.
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    terms: u32,
    #[arg(long, value_enum, default_value = "auto")]
    approx: Approx,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct CrossoverArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Relative error the series must reach.
    #[arg(long)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    terms: u32,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// identities, oracle, recurrence, asymptotics, special-cases or all.
    #[arg(long, default_value = "all")]
    suite: String,
}

/// Process exit code for a failed computation.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted { .. } => 3,
        Error::Domain(_) | Error::Parse(_) | Error::Pole { .. } => 2,
        Error::NoConvergence { .. } | Error::Convergence(_) | Error::NotReached { .. } => 1,
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Table(a) => table(a, out),
        Command::ErrorCurve(a) => error_curve(a, out, err),
        Command::Crossover(a) => cross(a, out),
        Command::Verify(a) => return verify_cmd(a, out, err),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

enum Failure {
    Compute(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn param(s: &str) -> Result<Param> {
    Param::parse(s)
}

fn target(lambda: &str, alpha: Option<&str>, beta: Option<&str>, mu: Option<&str>) -> Result<Target> {
    match (alpha, beta, mu) {
        (Some(a), Some(b), None) => Ok(Target::Jacobi(JacobiParams::new(param(lambda)?, param(a)?, param(b)?)?)),
        (None, None, Some(m)) => Ok(Target::Gegenbauer(GegenbauerParams::new(param(lambda)?, param(m)?)?)),
        _ => Err(Error::Domain("give either --mu or both --alpha and --beta".into())),
    }
}

impl ParamArgs {
    fn target(&self) -> Result<Target> {
        target(&self.lambda, self.alpha.as_deref(), self.beta.as_deref(), self.mu.as_deref())
    }
}

/// `None` for "auto"; a bare "asymptotic" takes `terms`.
fn method(name: &str, terms: Option<u32>) -> Result<Option<Method>> {
    match name {
        "auto" => Ok(None),
        "asymptotic" => Ok(Some(Method::Asymptotic(terms.unwrap_or(0)))),
        other => other.parse().map(Some).map_err(|_| Error::Domain(format!("unknown method '{other}'"))),
    }
}

fn compute(a: ComputeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let t = a.params.target()?;
    let m = method(&a.method, a.terms)?;
    let outcome = evaluate(&t, a.n, m, &a.budget.budget());
    if let Err(e) = outcome {
        return Err(e.into());
    }
    let row = Row::new(&t, a.n, &a.method, &outcome, a.budget.digits);
    output::write_rows(out, a.format.into(), &[row])?;
    Ok(())
}

/// One (params, n, method) grid entry; the method keeps its requested name.
type Cell<'a> = (&'a Target, u64, &'a (String, Option<Method>));

fn table(a: TableArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mut targets = Vec::new();
    for l in &a.lambda_list {
        if a.mu_list.is_empty() {
            for al in &a.alpha_list {
                for b in &a.beta_list {
                    targets.push(target(l, Some(al), Some(b), None)?);
                }
            }
        } else {
            for m in &a.mu_list {
                targets.push(target(l, None, None, Some(m))?);
            }
        }
    }
    if targets.is_empty() {
        return Err(Error::Domain("give --mu-list or both --alpha-list and --beta-list".into()).into());
    }
    let methods: Vec<(String, Option<Method>)> = a
        .methods
        .iter()
        .map(|name| Ok((name.clone(), method(name, a.terms)?)))
        .collect::<Result<_>>()?;
    let methods = &methods;
    let cells: Vec<Cell> = targets
        .iter()
        .flat_map(|t| (a.n_min..=a.n_max).flat_map(move |n| methods.iter().map(move |m| (t, n, m))))
        .collect();
    let budget = a.budget.budget();
    let outcomes: Vec<Result<Outcome>> = cells.par_iter().map(|(t, n, (_, m))| evaluate(t, *n, *m, &budget)).collect();
    let mut rows = Vec::with_capacity(cells.len());
    let mut first_error = None;
    for ((t, n, (name, _)), outcome) in cells.iter().zip(&outcomes) {
        if let (Err(e), false) = (outcome, a.keep_going) {
            first_error = Some(e.clone());
            break;
        }
        rows.push(Row::new(t, *n, name, outcome, a.budget.digits));
    }
    output::write_rows(out, a.format.into(), &rows)?;
    match first_error {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn default_n_list() -> Vec<u64> {
    (6..=14).map(|e| 1u64 << e).collect()
}

fn approx(t: &Target, n: u64, terms: u32, how: Approx, budget: &Budget) -> Result<Real> {
    let series = || evaluate(t, n, Some(Method::Asymptotic(terms)), budget);
    let leading = || evaluate(t, n, Some(Method::LeadingTerm), budget);
    let outcome = match how {
        Approx::Series => series(),
        Approx::Leading => leading(),
        Approx::Auto => match series() {
            Err(Error::Domain(_)) => leading(),
            other => other,
        },
    };
    Ok(outcome?.eval.value)
}

fn error_curve(a: CurveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let t = a.params.target()?;
    let ns = if a.n_list.is_empty() { default_n_list() } else { a.n_list.clone() };
    if ns.windows(2).any(|w| w[0] >= w[1]) || ns.first().is_some_and(|&n| n < 2) {
        return Err(Error::Domain("--n-list must be strictly increasing with n >= 2".into()).into());
    }
    let budget = a.budget.budget();
    if a.approx == Approx::Auto && evaluate(&t, ns[0], Some(Method::Asymptotic(a.terms)), &budget).is_err() {
        let _ = writeln!(err, "note: the series is undefined here; using the leading term");
    }
    let pairs: Vec<(Real, Real)> = ns
        .par_iter()
        .map(|&n| Ok((evaluate(&t, n, None, &budget)?.eval.value, approx(&t, n, a.terms, a.approx, &budget)?)))
        .collect::<Result<_>>()?;
    let errors: Vec<Real> = pairs.iter().map(|(e, x)| ((x - e) / e).abs()).collect();
    let digits = Some(a.budget.digits);
    let rows: Vec<CurveRow> = ns
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let order = ns.get(i + 1).map(|&next| {
                let ratio = (&errors[i] / &errors[i + 1]).to_f64();
                format!("{:.4}", ratio.log2() / (next as f64 / n as f64).log2())
            });
            CurveRow {
                n,
                exact: pairs[i].0.to_decimal_string(digits),
                approx: pairs[i].1.to_decimal_string(digits),
                rel_error: errors[i].to_decimal_string(Some(6)),
                fitted_local_order: order,
            }
        })
        .collect();
    output::write_curve(out, a.format.into(), &rows)?;
    Ok(())
}

#[derive(serde::Serialize)]
#[serde(rename_all = "camelCase")]
struct CrossoverRow {
    params: ParamsEcho,
    terms: u32,
    tol: f64,
    n: u64,
    rel_error: f64,
    time_ratio: f64,
}

fn cross(a: CrossoverArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let t = a.params.target()?;
    let r = crossover(&t, a.tol, a.terms, &a.budget.budget())?;
    let row = CrossoverRow {
        params: ParamsEcho::of(&t),
        terms: a.terms,
        tol: a.tol,
        n: r.n,
        rel_error: r.relative_error,
        time_ratio: r.time_ratio,
    };
    match Format::from(a.format) {
        Format::Json => {
            serde_json::to_writer(&mut *out, &row).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["lambda", "alpha", "beta", "mu", "terms", "tol", "n", "relError", "timeRatio", "limit"])?;
            let p = &row.params;
            w.write_record([
                p.lambda.clone(),
                p.alpha.clone().unwrap_or_default(),
                p.beta.clone().unwrap_or_default(),
                p.mu.clone().unwrap_or_default(),
                row.terms.to_string(),
                row.tol.to_string(),
                row.n.to_string(),
                format!("{:.6e}", row.rel_error),
                format!("{:.3}", row.time_ratio),
                CROSSOVER_LIMIT.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn verify_cmd(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let suite: Suite = match a.suite.parse() {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let checks = verify::run(suite);
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        let _ = writeln!(out, "{c}");
    }
    let _ = writeln!(out, "{} passed, {failed} failed", checks.len() - failed);
    i32::from(failed > 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("gegnorm").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn method_names() {
        assert_eq!(method("auto", None).unwrap(), None);
        assert_eq!(method("asymptotic", Some(3)).unwrap(), Some(Method::Asymptotic(3)));
        assert_eq!(method("asymptotic(2)", Some(3)).unwrap(), Some(Method::Asymptotic(2)));
        assert!(method("bogus", None).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Domain("x".into())), 2);
        assert_eq!(exit_code(&Error::PrecisionExhausted { digits_lost: 1.0, working_digits: 2 }), 3);
        assert_eq!(exit_code(&Error::NotReached { limit: 4 }), 1);
    }

    #[test]
    fn validation_failures_exit_2() {
        let (code, out, err) = run_str(&["compute", "--lambda", "-1", "--mu", "0", "--n", "3"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1);
        assert_eq!(run_str(&["compute", "--lambda", "1", "--n", "3"]).0, 2);
        assert_eq!(run_str(&["compute", "--lambda", "1", "--alpha", "0", "--n", "3"]).0, 2);
        assert_eq!(run_str(&["compute", "--lambda", "x", "--mu", "0", "--n", "3"]).0, 2);
        assert_eq!(run_str(&["verify", "--suite", "nope"]).0, 2);
    }

    #[test]
    fn precision_cap_exits_3() {
        let (code, _, _) =
            run_str(&["compute", "--lambda", "0.3", "--alpha", "0.2", "--beta", "0.9", "--n", "200", "--method", "exact5F4", "--max-digits", "40"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn csv_compute_has_fixed_header() {
        let (code, out, _) = run_str(&["compute", "--lambda", "1/2", "--alpha", "0", "--beta", "0", "--n", "3", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(out.lines().count(), 2);
    }
}
