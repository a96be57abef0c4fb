//! Every example under examples/ runs to completion.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(exact_norms, "exact_norms.rs");
example!(quadrature_oracle, "quadrature_oracle.rs");
example!(generating_function, "generating_function.rs");
example!(asymptotic_series, "asymptotic_series.rs");
example!(recurrence, "recurrence.rs");
example!(crossover, "crossover.rs");

#[test]
fn exact_norms_runs() {
    exact_norms::run_example().expect("exact norms example");
}

#[test]
fn quadrature_oracle_runs() {
    quadrature_oracle::run_example().expect("quadrature example");
}

#[test]
fn generating_function_runs() {
    generating_function::run_example().expect("generating function example");
}

#[test]
fn asymptotic_series_runs() {
    asymptotic_series::run_example().expect("asymptotic example");
}

#[test]
fn recurrence_runs() {
    recurrence::run_example().expect("recurrence example");
}

#[test]
fn crossover_runs() {
    crossover::run_example().expect("crossover example");
}
