use super::{c_at_one, gegenbauer_mass};
use crate::error::{Error, Result};
use crate::eval::{escalate, Budget, Evaluation, Method};
use crate::hypergeom::{eval_terminating, PFqSpec};
use crate::numerics::{pochhammer, CancellationReport, CompensatedSum, Precision, Real};
use crate::params::GegenbauerParams;

/// `J_n^{(λ;μ)}` from the balanced ₄F₃ at unit argument. The sum alternates,
/// so working precision escalates with the reported cancellation.
pub fn jn_exact(g: &GegenbauerParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    let (value, report, w) = escalate(budget, |prec| jn_exact_at(g, n, prec))?;
    Ok(Evaluation::new(value, Method::Exact4F3, report, w, budget))
}

fn jn_exact_at(g: &GegenbauerParams, n: u64, prec: Precision) -> Result<(Real, CancellationReport)> {
    let l = g.lambda.real(prec);
    let mu = g.mu.real(prec);
    let half = Real::one(prec) / 2i64;
    let spec = PFqSpec::new(
        vec![Real::from_i64(-(n as i64), prec), &l * 2i64 + n as i64, l.clone(), &mu + &half],
        vec![&l * 2i64, &l + &half, &mu + 1i64],
        Real::one(prec),
    );
    let (f, report) = eval_terminating(&spec)?;
    let scale = c_at_one(&l, n)?.square() * gegenbauer_mass(&mu)?;
    Ok((scale * f, report))
}

/// `J_n^{(λ;μ)}` from the connection between `C^{(λ)}` and `C^{(μ)}`.
///
/// All terms share the sign of μ, so nothing cancels.
pub fn jn_connection(g: &GegenbauerParams, n: u64, budget: &Budget) -> Result<Evaluation> {
    if g.mu.value().cmp0().is_eq() {
        return Err(Error::Domain("the connection sum divides by mu, which is 0".into()));
    }
    let (value, report, w) = escalate(budget, |prec| jn_connection_at(g, n, prec))?;
    Ok(Evaluation::new(value, Method::Connection, report, w, budget))
}

fn jn_connection_at(g: &GegenbauerParams, n: u64, prec: Precision) -> Result<(Real, CancellationReport)> {
    let l = g.lambda.real(prec);
    let mu = g.mu.real(prec);
    let ni = n as i64;
    let lm = &l - &mu;
    // T_k without the (n + μ − 2k) factor, updated by its ratio in k
    let mut t = (pochhammer(&l, ni)? / pochhammer(&(&mu + 1i64), ni)?).square() * pochhammer(&(&mu * 2i64), ni)?
        / pochhammer(&Real::one(prec), ni)?;
    let mut acc = CompensatedSum::new(prec);
    acc.add(&(&t * (&mu + ni)));
    for k in 1..=ni / 2 {
        if t.is_zero() {
            break;
        }
        let outer = (&lm + (k - 1)) * (&mu + (ni - k + 1)) / ((&l + (ni - k)) * k);
        let j = ni - 2 * k;
        t = t * outer.square() * ((j + 2) * (j + 1)) / ((&mu * 2i64 + j) * (&mu * 2i64 + (j + 1)));
        acc.add(&(&t * (&mu + j)));
    }
    let (sum, report) = acc.finish();
    Ok((gegenbauer_mass(&mu)? / &mu * sum, report))
}

/// Coefficients `[a_n, b_n, c_n]` of `a_n J_n − b_n J_{n+1} + c_n J_{n+2} = 0`.
pub fn recurrence_coefficients(lambda: &Real, mu: &Real, n: u64) -> [Real; 3] {
    let n = n as i64;
    let l2 = lambda * 2i64 + n;
    let a = l2.square() * (&l2 - mu);
    let quad = (lambda + 1i64) * (2 * n) + lambda * 3i64 + (n * n + 1);
    let b = (lambda + (n + 1)) * quad * 2i64;
    let c = Real::from_i64((n + 2) * (n + 2), lambda.precision()) * (mu + (n + 2));
    [a, b, c]
}

/// `|a J_n − b J_{n+1} + c J_{n+2}|` relative to the largest of the three products.
pub fn recurrence_residual(lambda: &Real, mu: &Real, n: u64, j: [&Real; 3]) -> Real {
    let [a, b, c] = recurrence_coefficients(lambda, mu, n);
    let (x, y, z) = (a * j[0], b * j[1], c * j[2]);
    let scale = x.abs().max(y.abs()).max(z.abs());
    ((x - y + z).abs()) / scale
}

/// `J_0..=J_{n_max}` by running the three-term recurrence forward from
/// `J_0, J_1`.
///
/// Stability of the forward direction is not established, so each value
/// carries a relative error bound propagated alongside the recurrence, and
/// the working precision grows until that bound fits the budget.
pub fn jn_recurrence(g: &GegenbauerParams, n_max: u64, budget: &Budget) -> Result<Vec<Evaluation>> {
    if n_max < 2 {
        return Err(Error::Domain(format!("recurrence needs n_max >= 2, got {n_max}")));
    }
    let ((values, bounds), _, w) = escalate(budget, |prec| recurrence_run(g, n_max, prec))?;
    let unit = unit_roundoff(w);
    Ok(values
        .into_iter()
        .zip(bounds)
        .map(|(v, e)| {
            let amplification = Real::int_pow(10, &Real::from_f64((e / unit).log10().max(0.0), w));
            let report = CancellationReport::new(&v.abs() * &amplification, v.abs());
            let mut eval = Evaluation::new(v, Method::Recurrence, report, w, budget);
            eval.error_estimate = Some(e);
            eval
        })
        .collect())
}

fn unit_roundoff(prec: Precision) -> f64 {
    2f64.powi(1 - prec.bits() as i32)
}

type Run = (Vec<Real>, Vec<f64>);

fn recurrence_run(g: &GegenbauerParams, n_max: u64, prec: Precision) -> Result<(Run, CancellationReport)> {
    let seed = Budget::new(prec);
    let l = g.lambda.real(prec);
    let mu = g.mu.real(prec);
    let u = unit_roundoff(prec);
    let mut values = vec![jn_exact(g, 0, &seed)?.value, jn_exact(g, 1, &seed)?.value];
    let mut bounds = vec![u, u];
    for n in 0..n_max - 1 {
        let i = n as usize;
        let [a, b, c] = recurrence_coefficients(&l, &mu, n);
        let x = a * &values[i];
        let y = b * &values[i + 1];
        let next = (&y - &x) / &c;
        let denom = (&c * &next).abs();
        let rx = (x.abs() / &denom).to_f64();
        let ry = (y.abs() / &denom).to_f64();
        // inherited error plus a few roundings of the two products
        let e = rx * bounds[i] + ry * bounds[i + 1] + 4.0 * u * (rx + ry) + u;
        values.push(next);
        bounds.push(e);
    }
    let worst = bounds.iter().cloned().fold(u, f64::max);
    let lost = (worst / u).log10().max(0.0);
    let one = Real::one(prec);
    let report = CancellationReport::new(Real::int_pow(10, &Real::from_f64(lost, prec)), one);
    Ok(((values, bounds), report))
}
