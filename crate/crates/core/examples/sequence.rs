//! Σ a_n/(b_n - z) for an arbitrary increasing sequence b_n, here n² + n.

use zeta_series::series::{self, SequenceSpec};
use zeta_series::summation::SummationMethod;
use zeta_series::{Complex64, EvalConfig};

fn main() -> zeta_series::Result<()> {
    let cfg = EvalConfig::default();
    let seq = SequenceSpec::reciprocal_quadratic();
    let r5 = 5f64.sqrt();
    let closed = 1.0 + r5 / 5.0 * std::f64::consts::PI * (std::f64::consts::PI * r5 / 2.0).tan();
    let pair = series::sequence_series(&seq, Complex64::new(1.0, 0.0), SummationMethod::Direct, &cfg)?;
    println!("Σ 1/(n² + n - 1): lhs {}\n                  rhs {}\n           closed form {closed:.15}", pair.lhs, pair.rhs);
    for z in [Complex64::new(-1.5, 0.0), Complex64::new(0.5, 1.0)] {
        let pair = series::sequence_series(&seq, z, SummationMethod::Direct, &cfg)?;
        println!("z = {z}: gap {:.1e}", pair.discrepancy());
    }
    Ok(())
}
