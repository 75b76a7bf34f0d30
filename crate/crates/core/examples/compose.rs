//! Σ F(z/n^s) = Σ a_k ζ(ks) z^k for power series F, plus the Dirichlet and
//! general-Dirichlet versions.

use std::f64::consts::PI;

use zeta_series::series::{self, DirichletSpec, GeneralDirichletSpec, PowerSeriesSpec};
use zeta_series::summation::SummationMethod;
use zeta_series::{Complex64, EvalConfig};

fn main() -> zeta_series::Result<()> {
    let cfg = EvalConfig::default();
    let c = |x: f64| Complex64::new(x, 0.0);

    let pair = series::compose_series(&PowerSeriesSpec::exp_minus_one(), c(2.0), c(1.0), &cfg)?;
    println!("Σ (e^(1/n²) - 1):  {} | {}", pair.lhs, pair.rhs);
    let pair = series::compose_series(&PowerSeriesSpec::sin(), c(2.0), c(0.5), &cfg)?;
    println!("Σ sin(1/(2n²)):    {} | {}", pair.lhs, pair.rhs);

    let ln = PowerSeriesSpec::ln_one_plus();
    let boundary = EvalConfig::default().with_target(1e-9).with_max_terms(1 << 23);
    let l = series::compose_lhs(&ln, c(2.0), c(1.0), &cfg)?;
    let r = series::compose_rhs(&ln, c(2.0), c(1.0), SummationMethod::abel(), &boundary)?;
    println!("Σ ln(1 + 1/n²):    {l} | {r}  (ln(sinh π/π) = {:.15})", (PI.sinh() / PI).ln());

    let pair = series::dirichlet_compose(&PowerSeriesSpec::sin(), &DirichletSpec::mobius(), c(2.5), c(0.5), Complex64::new(0.2, 0.1), &cfg)?;
    println!("Σ μ(n) n^(-s') sin(z/n^s): {} | {}", pair.lhs, pair.rhs);
    let pair = series::general_dirichlet_compose(&PowerSeriesSpec::exp_minus_one(), &GeneralDirichletSpec::linear(), c(1.5), c(0.3), &cfg)?;
    println!("general Dirichlet, λ_n = n:      {} | {}", pair.lhs, pair.rhs);
    Ok(())
}
