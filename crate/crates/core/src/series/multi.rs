//! `Σ a_n Π_i 1/(n^(β_i) + α_i z)` and its multi-index power series.

use num_complex::Complex64;

use crate::config::{EvalConfig, MIN_TARGET_ABS_ERROR};
use crate::error::{Error, Result};
use crate::result::{Method, SumResult};
use crate::summation::SummationMethod;
use crate::util::{binomial_geometric_tail, pow_neg};

use super::spec::DirichletSpec;
use super::tail::sum_with_tail;
use super::{lhs_partial_fraction, rhs_zeta_series, SidePair, POLE_EXCLUSION};

/// One factor `1/(n^beta + alpha z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub beta: Complex64,
    pub alpha: Complex64,
}

impl Factor {
    pub fn new(beta: Complex64, alpha: Complex64) -> Self {
        Self { beta, alpha }
    }
}

fn check(factors: &[Factor], spec: &DirichletSpec, z: Complex64, cfg: &EvalConfig) -> Result<Complex64> {
    cfg.validate()?;
    if factors.is_empty() {
        return Err(Error::Domain("at least one factor is required".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite z = {z}")));
    }
    for f in factors {
        if !(f.beta.re > 1.0) || !f.alpha.re.is_finite() || !f.alpha.im.is_finite() {
            return Err(Error::Domain(format!("factor exponent {} must have real part above 1", f.beta)));
        }
    }
    let total: Complex64 = factors.iter().map(|f| f.beta).sum();
    spec.check_abscissa(total)?;
    let reach = factors.iter().map(|f| f.alpha.norm()).fold(0.0, f64::max) * z.norm();
    if reach >= 1.0 {
        return Err(Error::Radius(format!("|z| max|α| = {reach} must be below 1")));
    }
    Ok(total)
}

/// `Σ a_n Π_i 1/(n^(β_i) + α_i z)`.
pub fn multi_factor_lhs(factors: &[Factor], spec: &DirichletSpec, z: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
    let total = check(factors, spec, z, cfg)?;
    if let [f] = factors {
        return lhs_partial_fraction(spec, f.beta, f.alpha * z, cfg);
    }
    let term = |n: u64| -> Result<Complex64> {
        let a = spec.coeff(n);
        if a == Complex64::new(0.0, 0.0) {
            return Ok(a);
        }
        let ln = (n as f64).ln();
        let mut t = a;
        for f in factors {
            let nb = (f.beta * ln).exp();
            let d = nb + f.alpha * z;
            if d.norm() <= POLE_EXCLUSION * nb.norm() {
                return Err(Error::Pole(format!("factor {} vanishes at n = {n}", f.beta)));
            }
            t /= d;
        }
        Ok(t)
    };
    let sigma0 = total.re;
    let growth = spec.growth();
    // Π 1/(1 - u_i) with u_i = |α_i z| / N^(Re β_i)
    let amplification = |n: u64| {
        factors.iter().fold(1.0, |acc, f| {
            let u = (f.alpha * z).norm() / (n as f64).powf(f.beta.re);
            acc / (1.0 - u)
        })
    };
    if !spec.has_closed_form() {
        return sum_with_tail(term, |n| growth.tail_bound(n, sigma0) * amplification(n), 32, cfg, true);
    }
    // leading tail f(Σβ) - partial, remainder T(σ0) (Π 1/(1-u_i) - 1)
    let target = cfg.target_abs_error;
    let sub = cfg.with_target((target / 4.0).max(MIN_TARGET_ABS_ERROR));
    let f_total = spec.value(total, &sub)?;
    let mut n_cut = 32u64;
    let mut best = f64::INFINITY;
    while n_cut <= cfg.max_terms as u64 {
        let mut direct = Complex64::new(0.0, 0.0);
        let mut partial = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for n in 1..=n_cut {
            let t = term(n)?;
            direct += t;
            abs += t.norm();
            let a = spec.coeff(n);
            if a != Complex64::new(0.0, 0.0) {
                partial += a * pow_neg((n as f64).ln(), total);
            }
        }
        let remainder = growth.tail_bound(n_cut, sigma0) * (amplification(n_cut) - 1.0);
        let err = remainder + f_total.abs_error_estimate + 4.0 * f64::EPSILON * (abs + f_total.value.norm());
        best = best.min(err);
        if err <= target {
            return SumResult::new(direct + f_total.value - partial, err, n_cut as usize, Method::EulerMaclaurinTail)
                .finite();
        }
        n_cut *= 2;
    }
    Err(Error::Convergence(format!("multi-factor tail bound {best:.3e} above target {target:.1e}")))
}

/// Calls `visit` with every composition of `degree` into `parts` non-negative parts.
fn compositions(degree: usize, parts: usize, visit: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn go(rest: usize, slot: usize, buf: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
        if slot + 1 == buf.len() {
            buf[slot] = rest;
            return visit(buf);
        }
        for k in 0..=rest {
            buf[slot] = k;
            go(rest - k, slot + 1, buf, visit)?;
        }
        Ok(())
    }
    let mut buf = vec![0; parts];
    go(degree, 0, &mut buf, visit)
}

/// `Σ_{m_1..m_r >= 0} f(Σ (m_i+1) β_i) Π (-α_i z)^(m_i)`, truncated by total degree.
///
/// The `a_1` part is summed in closed form as `a_1 Π 1/(1 + α_i z)`; the rest is
/// bounded per degree `d` by `δ C(d+r-1, r-1) (max|α_i z| 2^(-min Re β_i))^d`.
pub fn multi_factor_rhs(factors: &[Factor], spec: &DirichletSpec, z: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
    let total = check(factors, spec, z, cfg)?;
    if let [f] = factors {
        return rhs_zeta_series(spec, f.beta, f.alpha * z, SummationMethod::Direct, cfg);
    }
    let a1 = spec.coeff(1);
    let fixed: Complex64 = factors.iter().filter(|f| f.alpha == Complex64::new(0.0, 0.0)).map(|f| f.beta).sum();
    let moving: Vec<Factor> = factors.iter().copied().filter(|f| f.alpha != Complex64::new(0.0, 0.0)).collect();
    let mut value = factors.iter().fold(a1, |acc, f| acc / (1.0 + f.alpha * z));
    if moving.is_empty() {
        let f = spec.value(total, cfg)?;
        return SumResult::new(f.value, f.abs_error_estimate, f.terms_used, f.method).finite();
    }
    let x = moving.iter().map(|f| (f.alpha * z).norm()).fold(0.0, f64::max);
    let beta_min = moving.iter().map(|f| f.beta.re).fold(f64::INFINITY, f64::min);
    let y = x * 2f64.powf(-beta_min);
    let delta0 = spec.growth().tail_bound(1, total.re);
    let amplification = moving.iter().fold(1.0, |acc, f| acc / (1.0 - (f.alpha * z).norm()));
    let sub = cfg.with_target((cfg.target_abs_error / (4.0 * amplification)).max(MIN_TARGET_ABS_ERROR));
    let mut err = 4.0 * f64::EPSILON * value.norm();
    let mut evaluated = 0usize;
    let r = moving.len();
    for degree in 0.. {
        compositions(degree, r, &mut |ms| {
            let mut arg = fixed;
            let mut weight = Complex64::new(1.0, 0.0);
            for (f, &mi) in moving.iter().zip(ms) {
                arg += f.beta * (mi + 1) as f64;
                weight *= (-f.alpha * z).powi(mi as i32);
            }
            let c = spec.value(arg, &sub)?;
            value += (c.value - a1) * weight;
            err += weight.norm() * c.abs_error_estimate;
            evaluated += 1;
            Ok(())
        })?;
        let tail = delta0 * binomial_geometric_tail(r - 1, degree, y);
        if tail <= cfg.target_abs_error / 2.0 {
            return SumResult::new(value, err + tail, evaluated, Method::Direct).finite();
        }
        if evaluated >= cfg.max_terms {
            break;
        }
    }
    Err(Error::Convergence(format!(
        "multi-factor series not converged within {} coefficients",
        cfg.max_terms
    )))
}

/// Both sides of the multi-factor identity.
pub fn multi_factor_series(factors: &[Factor], spec: &DirichletSpec, z: Complex64, cfg: &EvalConfig) -> Result<SidePair> {
    Ok(SidePair {
        lhs: multi_factor_lhs(factors, spec, z, cfg)?,
        rhs: multi_factor_rhs(factors, spec, z, cfg)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::lhs_derivative;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn repeated_factor_is_first_derivative() {
        let cfg = EvalConfig::default();
        let ones = DirichletSpec::ones();
        let fs = [Factor::new(c(2.0), c(1.0)), Factor::new(c(2.0), c(1.0))];
        let d = lhs_derivative(&ones, c(2.0), c(0.3), 1, &cfg).unwrap();
        let pair = multi_factor_series(&fs, &ones, c(0.3), &cfg).unwrap();
        assert!((pair.lhs.value - d.value).norm() < 1e-11, "{} vs {}", pair.lhs.value, d.value);
        assert!((pair.rhs.value - d.value).norm() < 1e-11, "{} vs {}", pair.rhs.value, d.value);
    }

    #[test]
    fn mixed_factors_agree() {
        let cfg = EvalConfig::default();
        let fs = [
            Factor::new(c(2.0), c(1.0)),
            Factor::new(c(3.0), c(-1.0)),
            Factor::new(Complex64::new(2.5, 0.3), c(0.0)),
        ];
        for spec in [DirichletSpec::ones(), DirichletSpec::mobius()] {
            let pair = multi_factor_series(&fs, &spec, c(0.4), &cfg).unwrap();
            assert!(pair.agrees(1e-10), "{}: {:?}", spec.name(), pair);
        }
    }

    #[test]
    fn radius_and_domain() {
        let cfg = EvalConfig::default();
        let ones = DirichletSpec::ones();
        let fs = [Factor::new(c(2.0), c(2.0)), Factor::new(c(2.0), c(1.0))];
        assert!(matches!(multi_factor_rhs(&fs, &ones, c(0.5), &cfg), Err(Error::Radius(_))));
        let bad = [Factor::new(c(1.0), c(1.0)), Factor::new(c(2.0), c(1.0))];
        assert!(matches!(multi_factor_lhs(&bad, &ones, c(0.1), &cfg), Err(Error::Domain(_))));
        assert!(matches!(multi_factor_lhs(&[], &ones, c(0.1), &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn compositions_count() {
        let mut n = 0;
        compositions(4, 3, &mut |_| {
            n += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(n, 15);
    }
}
