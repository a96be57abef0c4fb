// Taylor coefficients of the generating functions and their rational form.

use gegenbauer_norms::error::Result;
use gegenbauer_norms::eval::Budget;
use gegenbauer_norms::genfun::{gen_fn_coefficients_j, gen_fn_rational_form, rational_form_series};
use gegenbauer_norms::numerics::{Precision, Real};
use gegenbauer_norms::params::{GegenbauerParams, Param};

pub fn run_example() -> Result<()> {
    let g = GegenbauerParams::new(Param::parse("2.5")?, Param::parse("0.5")?)?;
    let series = gen_fn_coefficients_j(&g, 6, &Budget::digits(30))?;
    println!("[z^n] of the generating function at lambda = 2.5, mu = 0.5:");
    for (n, c) in series.coefficients.iter().enumerate() {
        println!("  {n}: {c:.25}");
    }

    // lambda - mu = 2 gives p(z) / (1-z)^(2 lambda + 2k - 1)
    let lambda = Real::parse("2.5", Precision::digits(30))?;
    let (numerator, exponent) = gen_fn_rational_form(&lambda, 2)?;
    println!("numerator degree {}, denominator (1-z)^{exponent}", numerator.len() - 1);
    let expanded = rational_form_series(&numerator, exponent, 6);
    for n in 0..=6 {
        println!("  {n}: {:.25}", expanded.coefficient(n));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
