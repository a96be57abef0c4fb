// Gauss-Jacobi rules as an independent check on the exact sums.

use gegenbauer_norms::error::Result;
use gegenbauer_norms::eval::Budget;
use gegenbauer_norms::exact::in_exact;
use gegenbauer_norms::numerics::{jacobi_mass, Precision, Real};
use gegenbauer_norms::params::{JacobiParams, Param};
use gegenbauer_norms::quadrature::{build_rule, in_oracle};

pub fn run_example() -> Result<()> {
    let prec = Precision::digits(40);
    let (alpha, beta) = (Real::parse("0.3", prec)?, Real::parse("-0.5", prec)?);
    let rule = build_rule(&alpha, &beta, 6)?;
    println!("6-node rule, exact to degree {}", rule.degree);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        println!("  x = {x:.20}  w = {w:.20}");
    }
    println!("sum of weights {:.30}", rule.mass());
    println!("weight mass    {:.30}", jacobi_mass(&alpha, &beta)?);

    let budget = Budget::digits(40);
    let p = JacobiParams::new(Param::parse("1.5")?, Param::parse("0.3")?, Param::parse("-0.5")?)?;
    for n in [5u64, 30, 60] {
        let exact = in_exact(&p, n, &budget)?.value;
        let oracle = in_oracle(&p, n, &budget)?.value;
        println!("n = {n}: exact {exact:.25}  quadrature {oracle:.25}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
