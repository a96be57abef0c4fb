// Where the asymptotic series becomes accurate enough to replace the exact sum.

use gegenbauer_norms::asymptotics::{crossover, Target};
use gegenbauer_norms::error::Result;
use gegenbauer_norms::eval::Budget;
use gegenbauer_norms::params::{GegenbauerParams, Param};

pub fn run_example() -> Result<()> {
    let target = Target::Gegenbauer(GegenbauerParams::new(Param::parse("0.7")?, Param::parse("0.1")?)?);
    for (m, tol) in [(0u32, 1e-3), (2, 1e-8)] {
        let r = crossover(&target, tol, m, &Budget::digits(25))?;
        println!("M = {m}, tol = {tol:e}: n = {} (relative error {:.2e})", r.n, r.relative_error);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
