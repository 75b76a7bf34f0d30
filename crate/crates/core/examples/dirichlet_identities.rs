//! The same identity for other coefficient sequences: μ(n) gives 1/ζ, Λ(n)
//! gives -ζ'/ζ, φ(n) gives ζ(s-1)/ζ(s), a character gives its L-function.

use zeta_series::series::{self, DirichletSpec};
use zeta_series::summation::SummationMethod;
use zeta_series::{arith, Complex64, EvalConfig};

fn main() -> zeta_series::Result<()> {
    let cfg = EvalConfig::default();
    let z = Complex64::new(0.5, 0.0);
    let specs = [
        (DirichletSpec::mobius(), 2.0),
        (DirichletSpec::von_mangoldt(), 2.0),
        (DirichletSpec::totient(), 3.0),
        (DirichletSpec::beta(), 2.0),
        (DirichletSpec::character(arith::character(5, 2)?), 2.0),
        (DirichletSpec::beta().drop_first(), 2.0),
    ];
    for (spec, s) in specs {
        let s = Complex64::new(s, 0.0);
        let l = series::lhs_partial_fraction(&spec, s, z, &cfg)?;
        let r = series::rhs_zeta_series(&spec, s, z, SummationMethod::Direct, &cfg)?;
        println!("{:<16} s = {}: {:+.15} {:+.15}  gap {:.1e}", spec.name(), s.re, l.value, r.value, (l.value - r.value).norm());
    }
    Ok(())
}
