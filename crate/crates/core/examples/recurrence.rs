// A whole sequence J_0..J_N from the three-term recurrence.

use gegenbauer_norms::error::Result;
use gegenbauer_norms::eval::Budget;
use gegenbauer_norms::exact::{jn_exact, jn_recurrence};
use gegenbauer_norms::params::{GegenbauerParams, Param};

pub fn run_example() -> Result<()> {
    let g = GegenbauerParams::new(Param::parse("0.7")?, Param::parse("0.2")?)?;
    let budget = Budget::digits(30);
    let seq = jn_recurrence(&g, 20, &budget)?;
    for (n, e) in seq.iter().enumerate().step_by(5) {
        let check = jn_exact(&g, n as u64, &budget)?.value;
        println!("J_{n} = {:.25} (4F3: {check:.25}, bound {:.1e})", e.value, e.error_estimate.unwrap_or(0.0));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
