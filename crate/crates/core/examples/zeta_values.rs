//! Riemann, Hurwitz and Dirichlet L-values with their error bounds.

use zeta_series::specialfns::{dirichlet_beta, hurwitz_zeta, l_function, zeta, zeta_deriv};
use zeta_series::{arith, Complex64, EvalConfig};

fn main() -> zeta_series::Result<()> {
    let cfg = EvalConfig::default();
    println!("ζ(2)      = {}", zeta(Complex64::new(2.0, 0.0), &cfg)?);
    println!("ζ(3+4i)   = {}", zeta(Complex64::new(3.0, 4.0), &cfg)?);
    println!("ζ'(2)     = {}", zeta_deriv(1, Complex64::new(2.0, 0.0), &cfg)?);
    println!("ζ(3, 1/4) = {}", hurwitz_zeta(Complex64::new(3.0, 0.0), 0.25, &cfg)?);
    println!("β(2)      = {}", dirichlet_beta(Complex64::new(2.0, 0.0), &cfg)?);
    for chi in arith::characters(5)? {
        println!("L(2, χ mod 5 #{}) = {}", chi.index(), l_function(Complex64::new(2.0, 0.0), &chi, &cfg)?);
    }
    Ok(())
}
