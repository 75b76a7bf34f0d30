//! At |z| = 1 the power series diverges; Cesàro and Abel means recover the
//! partial-fraction value.

use std::f64::consts::PI;

use zeta_series::series::{self, DirichletSpec};
use zeta_series::summation::SummationMethod;
use zeta_series::{Complex64, EvalConfig};

fn main() -> zeta_series::Result<()> {
    let cfg = EvalConfig::default().with_target(1e-9).with_max_terms(1 << 23);
    let ones = DirichletSpec::ones();
    let one = Complex64::new(1.0, 0.0);
    let s = Complex64::new(2.0, 0.0);

    match series::rhs_zeta_series(&ones, s, one, SummationMethod::Direct, &cfg) {
        Err(e) => println!("direct at z = 1: {e}"),
        Ok(r) => println!("direct at z = 1 unexpectedly gave {r}"),
    }
    let exact = (PI / PI.tanh() - 1.0) / 2.0;
    for method in [SummationMethod::Cesaro(1), SummationMethod::Cesaro(2), SummationMethod::abel()] {
        let r = series::rhs_zeta_series(&ones, s, one, method, &cfg)?;
        println!("{method:?}: {r}  (exact {exact:.15})");
    }
    let r = series::rhs_derivative(&ones, s, one, 1, SummationMethod::Cesaro(2), &cfg)?;
    println!("(C,2) of Σ (-1)^(k+1) k ζ(2k+2): {r}");
    Ok(())
}
