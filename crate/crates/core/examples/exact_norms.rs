// Exact norms through the terminating hypergeometric sums and closed forms.

use gegenbauer_norms::error::Result;
use gegenbauer_norms::eval::Budget;
use gegenbauer_norms::exact::{in_, in_exact, jn, jn_lambda_minus_k};
use gegenbauer_norms::params::{GegenbauerParams, JacobiParams, Param};

pub fn run_example() -> Result<()> {
    let budget = Budget::digits(40);

    // Legendre: 2/(2n+1)
    let legendre = JacobiParams::new(Param::parse("1/2")?, Param::parse("0/1")?, Param::parse("0/1")?)?;
    let v = in_exact(&legendre, 3, &budget)?;
    println!("I_3 Legendre = {} via {}", v.value, v.method);

    // A generic Jacobi weight; the dispatcher picks the route.
    let jacobi = JacobiParams::new(Param::parse("0.7")?, Param::parse("0.3")?, Param::parse("1.45")?)?;
    for n in [0u64, 10, 60] {
        let v = in_(&jacobi, n, &budget)?;
        println!("I_{n} = {} via {} ({:.1} digits cancelled)", v.value, v.method, v.report.digits_lost);
    }

    // Chebyshev of the second kind: pi/2 for every n
    let cheb = GegenbauerParams::new(Param::parse("1/1")?, Param::parse("1/1")?)?;
    println!("J_40 Chebyshev U = {}", jn(&cheb, 40, &budget)?.value);

    // lambda - mu = 1 at lambda = 1: (n+1) pi
    println!("J_9 (lambda=1, mu=0) = {}", jn_lambda_minus_k(&Param::parse("1/1")?, 1, 9, &budget)?.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
