//! Poles at -n^s lie on a logarithmic spiral for non-real s; residues are
//! measured from the partial-fraction side.

use zeta_series::poles::{self, ResidueVariant};
use zeta_series::series::DirichletSpec;
use zeta_series::{Complex64, EvalConfig};

fn main() -> zeta_series::Result<()> {
    let s = Complex64::new(2.0, 1.0);
    println!("n,re,im,abs,arg");
    for r in poles::spiral_export(s, 12)? {
        println!("{},{},{},{},{}", r.n, r.re, r.im, r.abs, r.arg);
    }

    let cfg = EvalConfig::default();
    let ones = DirichletSpec::ones();
    for n in 1..=3 {
        let p = poles::residue(&ones, Complex64::new(2.0, 0.0), n, ResidueVariant::Plain, &cfg)?;
        println!("residue at {}: {} (error {:.1e})", p.location, p.measured_residue.unwrap(), p.abs_error.unwrap());
    }
    let w = ResidueVariant::Weighted { q: Complex64::new(1.0, 0.0), m: 1 };
    let p = poles::residue(&ones, Complex64::new(4.0, 0.0), 3, w, &cfg)?;
    println!("weighted n ln n at -81: {} expected {}", p.measured_residue.unwrap(), p.expected_residue.unwrap());
    match poles::residue(&DirichletSpec::mobius(), Complex64::new(2.0, 0.0), 4, ResidueVariant::Plain, &cfg) {
        Err(e) => println!("μ(4) = 0: {e}"),
        Ok(p) => println!("unexpected pole {p:?}"),
    }
    Ok(())
}
