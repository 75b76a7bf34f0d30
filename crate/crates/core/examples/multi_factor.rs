//! Σ_n a_n Π_i 1/(n^β_i + α_i z) expanded over compositions.

use zeta_series::series::{self, DirichletSpec, Factor};
use zeta_series::{Complex64, EvalConfig};

fn main() -> zeta_series::Result<()> {
    let cfg = EvalConfig::default();
    let factors = [
        Factor::new(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)),
        Factor::new(Complex64::new(3.0, 0.0), Complex64::new(-1.0, 0.0)),
    ];
    for z in [Complex64::new(0.3, 0.0), Complex64::new(-0.4, 0.5)] {
        let pair = series::multi_factor_series(&factors, &DirichletSpec::ones(), z, &cfg)?;
        println!("z = {z}: {} | {}", pair.lhs, pair.rhs);
    }
    Ok(())
}
