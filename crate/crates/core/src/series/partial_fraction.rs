//! `Σ a_n / (n^s + z)^(m+1)` and its power series `Σ (-1)^(k+m) C(k,m) f((k+1)s) z^(k-m)`.

use num_complex::Complex64;

use crate::config::{EvalConfig, MIN_TARGET_ABS_ERROR};
use crate::error::{Error, Result};
use crate::result::{Method, SumResult};
use crate::summation::{abel_limit, cesaro_sum, SummationMethod};
use crate::util::{binom, binomial_geometric_tail, shifted_binomial_series};

use super::spec::DirichletSpec;
use super::tail::sum_with_tail;
use super::{boundary_guard, Coefficients, POLE_EXCLUSION};

/// Largest derivative order accepted by [`lhs_derivative`] and [`rhs_derivative`].
pub const MAX_PF_DERIVATIVE: usize = 6;

/// `Σ a_n / (n^s + z)`.
pub fn lhs_partial_fraction(spec: &DirichletSpec, s: Complex64, z: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
    lhs_derivative(spec, s, z, 0, cfg)
}

/// `Σ_{k>=0} (-1)^k f((k+1)s) z^k`, with `f` the sum of `spec`.
pub fn rhs_zeta_series(
    spec: &DirichletSpec,
    s: Complex64,
    z: Complex64,
    method: SummationMethod,
    cfg: &EvalConfig,
) -> Result<SumResult> {
    rhs_derivative(spec, s, z, 0, method, cfg)
}

fn check_inputs(spec: &DirichletSpec, s: Complex64, z: Complex64, m: usize, cfg: &EvalConfig) -> Result<()> {
    cfg.validate()?;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite z = {z}")));
    }
    if m > MAX_PF_DERIVATIVE {
        return Err(Error::Domain(format!("derivative order {m} exceeds {MAX_PF_DERIVATIVE}")));
    }
    spec.check_abscissa(s)
}

/// `n^s`, principal branch.
fn power(n: u64, s: Complex64) -> Complex64 {
    (s * (n as f64).ln()).exp()
}

/// `Σ a_n / (n^s + z)^(m+1)`.
///
/// The first `N` terms are summed directly, with `N` large enough that
/// `|z| / N^σ <= 1/4`. When the spec has a closed form, the tail is expanded
/// as `Σ_j C(m+j, j) (-z)^j [f((m+1+j)s) - Σ_{n<=N} a_n n^(-(m+1+j)s)]`
/// with a rigorous geometric remainder; otherwise the tail is bounded
/// directly through the growth envelope.
pub fn lhs_derivative(spec: &DirichletSpec, s: Complex64, z: Complex64, m: usize, cfg: &EvalConfig) -> Result<SumResult> {
    check_inputs(spec, s, z, m, cfg)?;
    let sigma = s.re;
    let term = |n: u64| -> Result<Complex64> {
        let a = spec.coeff(n);
        if a == Complex64::new(0.0, 0.0) {
            return Ok(a);
        }
        let ns = power(n, s);
        let d = ns + z;
        if d.norm() <= POLE_EXCLUSION * ns.norm() {
            return Err(Error::Pole(format!("z = {z} is within the exclusion radius of -{n}^s = {}", -ns)));
        }
        Ok(a / d.powi(m as i32 + 1))
    };
    let n0 = ((4.0 * z.norm()).powf(1.0 / sigma).ceil() as u64).max(32);
    if !spec.has_closed_form() && !spec.has_tail_sum() {
        let g = spec.growth();
        let p = (m + 1) as f64;
        return sum_with_tail(
            term,
            |n| {
                let r = z.norm() / (n as f64).powf(sigma);
                if r >= 0.5 {
                    f64::INFINITY
                } else {
                    g.tail_bound(n, p * sigma) / (1.0 - r).powf(p)
                }
            },
            n0,
            cfg,
            true,
        );
    }

    let target = cfg.target_abs_error;
    let mut n_cut = n0;
    let mut best_err = f64::INFINITY;
    loop {
        if n_cut > cfg.max_terms as u64 {
            return Err(Error::Convergence(format!(
                "partial-fraction tail not resolved: best error {best_err:.3e} above {target:.1e}"
            )));
        }
        let mut direct = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for n in 1..=n_cut {
            let t = term(n)?;
            direct += t;
            abs += t.norm();
        }
        let r = z.norm() / (n_cut as f64).powf(sigma);
        let tail_scale = spec.growth().tail_bound(n_cut, (m + 1) as f64 * sigma);
        let mut tail = Complex64::new(0.0, 0.0);
        let mut err = 2.0 * f64::EPSILON * abs;
        let mut remainder = f64::INFINITY;
        let mut mz = Complex64::new(1.0, 0.0);
        for j in 0..=200usize {
            let weight = binom(m + j, j) * z.norm().powi(j as i32);
            let share = target / (4.0 * weight.max(1.0) * 2f64.powi(j as i32 + 1));
            let t = spec.tail(s * (m + 1 + j) as f64, n_cut, share, cfg)?;
            tail += binom(m + j, j) * mz * t.value;
            err += weight * t.abs_error_estimate;
            mz *= -z;
            remainder = tail_scale * binomial_geometric_tail(m, j, r);
            if remainder <= target / 4.0 {
                break;
            }
        }
        let total = err + remainder;
        best_err = best_err.min(total);
        if total <= target {
            return SumResult::new(direct + tail, total, n_cut as usize, Method::EulerMaclaurinTail).finite();
        }
        n_cut = n_cut.saturating_mul(4);
    }
}

/// `Σ_{k>=m} (-1)^(k+m) C(k, m) f((k+1)s) z^(k-m)`, the `m`-th derivative form.
///
/// Inside the unit disc the series is summed directly with the split
/// `a_1/(1+z)^(m+1) + Σ (-1)^(k+m) C(k,m) (f((k+1)s) - a_1) z^(k-m)`,
/// whose tail is bounded through `|f((k+1)s) - a_1| <= 2^(-σ(k-K)) δ_K`.
/// On `|z| = 1` an explicit Cesàro or Abel method is required.
pub fn rhs_derivative(
    spec: &DirichletSpec,
    s: Complex64,
    z: Complex64,
    m: usize,
    method: SummationMethod,
    cfg: &EvalConfig,
) -> Result<SumResult> {
    check_inputs(spec, s, z, m, cfg)?;
    method.validate()?;
    boundary_guard(z, Some(Complex64::new(-1.0, 0.0)), 1.0, &method)?;
    let a1 = spec.coeff(1);
    let sub = cfg.with_target(
        (cfg.target_abs_error * (1.0 - z.norm()).max(0.0).powi(m as i32 + 1) / 4.0).max(MIN_TARGET_ABS_ERROR),
    );
    let mut coeffs = Coefficients::new(|k| spec.value(s * (k + 1) as f64, &sub));
    let growth = spec.growth();
    let delta = |k: usize| growth.tail_bound(1, (k + 1) as f64 * s.re);
    let q = 2f64.powf(-s.re);
    match method {
        SummationMethod::Direct => rhs_engine(&mut coeffs, a1, m, z, &delta, q, cfg),
        SummationMethod::Abel(schedule) => abel_limit(|r| rhs_engine(&mut coeffs, a1, m, z * r, &delta, q, cfg), schedule, cfg),
        SummationMethod::Cesaro(order) => {
            let table = coeffs.settle(&delta, cfg.max_terms)?;
            let coeff_err = table.iter().map(|c| c.abs_error_estimate).fold(0.0, f64::max);
            let values: Vec<Complex64> = table.iter().map(|c| c.value).collect();
            let stream = |i: usize| {
                let k = m + i;
                let c = values.get(k).copied().unwrap_or(a1);
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                c * (sign * binom(k, m)) * z.powi(i as i32)
            };
            let r = cesaro_sum(&stream, order, cfg)?;
            Ok(SumResult {
                abs_error_estimate: r.abs_error_estimate + coeff_err,
                ..r
            })
        }
    }
}

pub(crate) fn rhs_engine<F, D>(
    coeffs: &mut Coefficients<F>,
    a1: Complex64,
    m: usize,
    z: Complex64,
    delta: &D,
    q: f64,
    cfg: &EvalConfig,
) -> Result<SumResult>
where
    F: FnMut(usize) -> Result<SumResult>,
    D: Fn(usize) -> f64,
{
    let az = z.norm();
    let mut value = a1 / (1.0 + z).powi(m as i32 + 1);
    let mut err = 4.0 * f64::EPSILON * value.norm();
    let mut zk = Complex64::new(1.0, 0.0);
    let mut k = m;
    loop {
        let c = coeffs.get(k)?;
        let sign = if (k - m) % 2 == 0 { 1.0 } else { -1.0 };
        let w = binom(k, m);
        let t = (c.value - a1) * (sign * w) * zk;
        value += t;
        err += w * az.powi((k - m) as i32) * c.abs_error_estimate + 2.0 * f64::EPSILON * t.norm();
        k += 1;
        zk *= z;
        let tail = delta(k) * az.powi((k - m) as i32) * shifted_binomial_series(k, m, az * q);
        if tail <= cfg.target_abs_error / 2.0 {
            return SumResult::new(value, err + tail, k - m, Method::Direct).finite();
        }
        if k - m >= cfg.max_terms {
            return Err(Error::Convergence(format!(
                "power series tail {tail:.3e} above target after {} terms",
                cfg.max_terms
            )));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn lhs_reduces_to_zeta_at_origin() {
        let cfg = EvalConfig::default();
        let r = lhs_partial_fraction(&DirichletSpec::ones(), c(2.0), c(0.0), &cfg).unwrap();
        assert!((r.value.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(r.abs_error_estimate <= 1e-12);
    }

    #[test]
    fn lhs_coth_value() {
        let cfg = EvalConfig::default();
        let r = lhs_partial_fraction(&DirichletSpec::ones(), c(2.0), c(0.25), &cfg).unwrap();
        let expected = PI / (PI / 2.0).tanh() - 2.0;
        assert!((r.value.re - expected).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn rhs_known_values() {
        let cfg = EvalConfig::default();
        let ones = DirichletSpec::ones();
        let r = rhs_zeta_series(&ones, c(2.0), c(-0.25), SummationMethod::Direct, &cfg).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-12, "{}", r.value);
        let r = rhs_zeta_series(&ones, c(2.0), c(-1.0 / 16.0), SummationMethod::Direct, &cfg).unwrap();
        assert!((r.value.re - (8.0 - 2.0 * PI)).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn both_sides_agree_with_derivatives() {
        let cfg = EvalConfig::default();
        let z = Complex64::new(0.3, -0.2);
        for spec in [DirichletSpec::ones(), DirichletSpec::mobius(), DirichletSpec::totient()] {
            let s = Complex64::new(3.2, 0.5);
            for m in 0..=3 {
                let l = lhs_derivative(&spec, s, z, m, &cfg).unwrap();
                let r = rhs_derivative(&spec, s, z, m, SummationMethod::Direct, &cfg).unwrap();
                let tol = l.abs_error_estimate + r.abs_error_estimate + 1e-12;
                assert!((l.value - r.value).norm() <= tol, "{} m={m}: {} vs {}", spec.name(), l.value, r.value);
            }
        }
    }

    #[test]
    fn guards() {
        let cfg = EvalConfig::default();
        let ones = DirichletSpec::ones();
        let direct = SummationMethod::Direct;
        assert!(matches!(rhs_zeta_series(&ones, c(2.0), c(1.5), direct, &cfg), Err(Error::Radius(_))));
        assert!(matches!(rhs_zeta_series(&ones, c(2.0), c(-1.0), SummationMethod::abel(), &cfg), Err(Error::Pole(_))));
        assert!(matches!(rhs_zeta_series(&ones, c(2.0), c(1.0), direct, &cfg), Err(Error::Boundary(_))));
        assert!(matches!(lhs_partial_fraction(&ones, c(2.0), c(-4.0), &cfg), Err(Error::Pole(_))));
        assert!(matches!(lhs_partial_fraction(&ones, c(1.0), c(0.5), &cfg), Err(Error::Domain(_))));
        assert!(matches!(lhs_derivative(&ones, c(2.0), c(0.5), 7, &cfg), Err(Error::Domain(_))));
        // μ(4) = 0, so -4^2 is not a pole of the Möbius partial fraction
        assert!(lhs_partial_fraction(&DirichletSpec::mobius(), c(2.0), c(-16.0), &cfg).is_ok());
    }

    #[test]
    fn boundary_by_cesaro_and_abel() {
        let cfg = EvalConfig::default().with_target(1e-8).with_max_terms(1 << 22);
        let ones = DirichletSpec::ones();
        let expected = (PI / PI.tanh() - 1.0) / 2.0;
        let r = rhs_zeta_series(&ones, c(2.0), c(1.0), SummationMethod::Cesaro(1), &cfg).unwrap();
        assert!((r.value.re - expected).abs() < 1e-7, "{}", r.value);
        let r = rhs_zeta_series(&ones, c(2.0), c(1.0), SummationMethod::abel(), &cfg).unwrap();
        assert!((r.value.re - expected).abs() < 1e-7, "{}", r.value);
    }

    #[test]
    fn lhs_without_closed_form() {
        let cfg = EvalConfig::default().with_target(1e-10);
        let plain = DirichletSpec::new("ones", |_| c(1.0), crate::series::Growth::bounded(1.0));
        let a = lhs_partial_fraction(&plain, c(3.0), c(0.7), &cfg).unwrap();
        let b = lhs_partial_fraction(&DirichletSpec::ones(), c(3.0), c(0.7), &cfg).unwrap();
        assert!((a.value - b.value).norm() < 1e-10);
    }
}
