// Large-n expansions: interlaced series and leading terms.

use gegenbauer_norms::asymptotics::{gegen_leading_term, in_asymptotic};
use gegenbauer_norms::error::Result;
use gegenbauer_norms::eval::Budget;
use gegenbauer_norms::exact::{in_exact, jn};
use gegenbauer_norms::numerics::Precision;
use gegenbauer_norms::params::{GegenbauerParams, JacobiParams, Param};

pub fn run_example() -> Result<()> {
    let budget = Budget::digits(25);
    let p = JacobiParams::new(Param::parse("0.7")?, Param::parse("0.3")?, Param::parse("1.45")?)?;
    let n = 1024;
    let exact = in_exact(&p, n, &budget)?.value;
    println!("I_{n} = {exact:.20}");
    for m in 0..=3 {
        let (approx, expansion) = in_asymptotic(&p, n, m, &budget)?;
        let rel = ((&approx.value - &exact) / &exact).abs();
        println!("  M = {m}: relative error {rel:.3}, {} terms", expansion.terms.len());
    }

    // mu = lambda - 1/2: J_n ~ log n + gamma + 2 log 2 at lambda = 1
    let g = GegenbauerParams::new(Param::parse("1/1")?, Param::parse("1/2")?)?;
    let lead = gegen_leading_term(&g, n, Precision::digits(25))?;
    println!("J_{n} = {:.20}, leading term {:.20} ({})", jn(&g, n, &budget)?.value, lead.value, lead.case);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
