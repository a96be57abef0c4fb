//! Extended-precision scalars and the gamma family.
//!
//! [`Real`] is an MPFR float with an explicit binary precision. Binary
//! operations produce a result at the larger of the two operand precisions,
//! so a computation started at a given [`Precision`] stays there unless a
//! caller deliberately widens it.

mod real;
mod special;
mod sum;

pub use real::{Precision, Real};
pub use special::{
    binomial_real, digamma, gamma_fn, harmonic, jacobi_mass, log_abs_gamma, log_gamma, pochhammer, rgamma,
};
pub use sum::{CancellationReport, CompensatedSum};
