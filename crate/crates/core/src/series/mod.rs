//! Both sides of the partial-fraction / power-series identities.

mod compose;
mod multi;
mod partial_fraction;
mod sequence;
mod spec;
mod tail;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::result::SumResult;
use crate::summation::SummationMethod;

pub use compose::{
    compose_lhs, compose_rhs, compose_series, dirichlet_compose, dirichlet_compose_lhs, dirichlet_compose_rhs,
    general_dirichlet_compose, general_dirichlet_compose_lhs, general_dirichlet_compose_rhs,
};
pub use multi::{multi_factor_lhs, multi_factor_rhs, multi_factor_series, Factor};
pub use partial_fraction::{
    lhs_derivative, lhs_partial_fraction, rhs_derivative, rhs_zeta_series, MAX_PF_DERIVATIVE,
};
pub use sequence::{sequence_lhs, sequence_rhs, sequence_series};
pub use spec::{
    AnalyticFn, CoeffFn, DirichletSpec, ExpTailFn, GeneralDirichletSpec, Growth, LambdaFn, MajorantFn,
    MomentFn, PowerSeriesSpec, SequenceSpec, SeriesFn,
};

/// Relative distance to a pole below which evaluation is refused.
pub const POLE_EXCLUSION: f64 = 1e-9;

/// Relative slack when deciding whether `|z|` sits on a boundary circle.
pub const BOUNDARY_SLACK: f64 = 1e-12;

/// Values of the two sides of an identity at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidePair {
    pub lhs: SumResult,
    pub rhs: SumResult,
}

impl SidePair {
    pub fn discrepancy(&self) -> f64 {
        (self.lhs.value - self.rhs.value).norm()
    }

    /// Whether the two sides agree within their combined error estimates plus `tol`.
    pub fn agrees(&self, tol: f64) -> bool {
        self.discrepancy() <= self.lhs.abs_error_estimate + self.rhs.abs_error_estimate + tol
    }
}

/// `Σ n^q ln^m(n) / (n^p + z)`.
pub fn lhs_weighted(m: u32, q: Complex64, p: Complex64, z: Complex64, cfg: &crate::EvalConfig) -> Result<SumResult> {
    let spec = weighted_spec(m, q, p)?;
    lhs_partial_fraction(&spec, p, z, cfg)
}

/// `(-1)^m Σ_k (-1)^k ζ^(m)(pk + p - q) z^k`.
pub fn rhs_weighted_series(
    m: u32,
    q: Complex64,
    p: Complex64,
    z: Complex64,
    method: SummationMethod,
    cfg: &crate::EvalConfig,
) -> Result<SumResult> {
    let spec = weighted_spec(m, q, p)?;
    rhs_zeta_series(&spec, p, z, method, cfg)
}

fn weighted_spec(m: u32, q: Complex64, p: Complex64) -> Result<DirichletSpec> {
    if !(q.re < p.re - 1.0) {
        return Err(Error::Domain(format!("need Re(q) < Re(p) - 1, got q = {q}, p = {p}")));
    }
    DirichletSpec::weighted(q, m)
}

/// Rejects `z` outside the disc of radius `radius`, at the singular point
/// `pole`, and on the circle unless a summation method was chosen.
pub(crate) fn boundary_guard(z: Complex64, pole: Option<Complex64>, radius: f64, method: &SummationMethod) -> Result<()> {
    let az = z.norm();
    if az > radius * (1.0 + BOUNDARY_SLACK) {
        return Err(Error::Radius(format!("|z| = {az} exceeds the radius {radius}")));
    }
    if let Some(pole) = pole {
        if (z - pole).norm() <= POLE_EXCLUSION * radius {
            return Err(Error::Pole(format!("z = {z} is the singular point {pole}")));
        }
    }
    if az >= radius * (1.0 - BOUNDARY_SLACK) && matches!(method, SummationMethod::Direct) {
        return Err(Error::Boundary(format!(
            "|z| = {az} lies on the circle of radius {radius}; choose a cesaro or abel method"
        )));
    }
    Ok(())
}

/// Power-series coefficients evaluated once, in order, and reused.
pub(crate) struct Coefficients<F> {
    eval: F,
    cache: Vec<SumResult>,
}

/// Deviation from the limit below which a coefficient is taken as settled.
const SETTLED: f64 = 1e-20;

/// Hard cap on coefficients evaluated before the limit value takes over.
const MAX_SETTLE: usize = 100_000;

impl<F: FnMut(usize) -> Result<SumResult>> Coefficients<F> {
    pub(crate) fn new(eval: F) -> Self {
        Self { eval, cache: Vec::new() }
    }

    pub(crate) fn get(&mut self, k: usize) -> Result<SumResult> {
        while self.cache.len() <= k {
            let next = (self.eval)(self.cache.len())?;
            self.cache.push(next);
        }
        Ok(self.cache[k])
    }

    /// Evaluates coefficients until `deviation(k)`, a bound on the distance to
    /// their limit, becomes negligible; callers use the limit from there on.
    pub(crate) fn settle<D: Fn(usize) -> f64>(&mut self, deviation: &D, cap: usize) -> Result<Vec<SumResult>> {
        let mut k = 0;
        while deviation(k) >= SETTLED && k < cap.min(MAX_SETTLE) {
            self.get(k)?;
            k += 1;
        }
        self.get(k)?;
        Ok(self.cache.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_classification() {
        let d = SummationMethod::Direct;
        let pole = Some(Complex64::new(-1.0, 0.0));
        assert!(boundary_guard(Complex64::new(0.5, 0.5), pole, 1.0, &d).is_ok());
        assert!(matches!(boundary_guard(Complex64::new(0.0, 1.2), pole, 1.0, &d), Err(Error::Radius(_))));
        assert!(matches!(boundary_guard(Complex64::new(0.0, 1.0), pole, 1.0, &d), Err(Error::Boundary(_))));
        assert!(boundary_guard(Complex64::new(0.0, 1.0), pole, 1.0, &SummationMethod::Cesaro(1)).is_ok());
        assert!(matches!(boundary_guard(Complex64::new(-1.0, 0.0), pole, 1.0, &SummationMethod::abel()), Err(Error::Pole(_))));
    }

    #[test]
    fn weighted_domain() {
        let cfg = crate::EvalConfig::default();
        let c = |x: f64| Complex64::new(x, 0.0);
        assert!(matches!(
            rhs_weighted_series(0, c(1.0), c(2.0), c(0.5), SummationMethod::Direct, &cfg),
            Err(Error::Domain(_))
        ));
        let l = lhs_weighted(1, c(0.0), c(2.0), c(0.5), &cfg).unwrap();
        let r = rhs_weighted_series(1, c(0.0), c(2.0), c(0.5), SummationMethod::Direct, &cfg).unwrap();
        assert!((l.value - r.value).norm() < 1e-11);
    }
}
