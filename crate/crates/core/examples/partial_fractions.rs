//! Σ 1/(n^s + z) against Σ (-1)^k ζ(ks + s) z^k, and the derivative forms.

use std::f64::consts::PI;

use zeta_series::series::{self, DirichletSpec};
use zeta_series::summation::SummationMethod;
use zeta_series::{Complex64, EvalConfig};

fn main() -> zeta_series::Result<()> {
    let cfg = EvalConfig::default();
    let ones = DirichletSpec::ones();
    let s = Complex64::new(2.0, 0.0);
    for z in [Complex64::new(0.25, 0.0), Complex64::new(-0.5, 0.3), Complex64::new(0.0, 0.9)] {
        let l = series::lhs_partial_fraction(&ones, s, z, &cfg)?;
        let r = series::rhs_zeta_series(&ones, s, z, SummationMethod::Direct, &cfg)?;
        println!("z = {z}: lhs {l}\n{:>w$}rhs {r}", "", w = z.to_string().len() + 6);
    }

    let w: f64 = 0.5;
    let coth = PI / (2.0 * w) / (PI * w).tanh() - 1.0 / (2.0 * w * w);
    let l = series::lhs_partial_fraction(&ones, s, Complex64::new(w * w, 0.0), &cfg)?;
    println!("Σ 1/(n² + 1/4) = {}  (coth form {coth})", l.value.re);

    let z = Complex64::new(0.5, 0.0);
    for m in 1..=3 {
        let l = series::lhs_derivative(&ones, s, z, m, &cfg)?;
        let r = series::rhs_derivative(&ones, s, z, m, SummationMethod::Direct, &cfg)?;
        println!("m = {m}: Σ 1/(n²+z)^{} = {:.15} / {:.15}", m + 1, l.value.re, r.value.re);
    }
    Ok(())
}
