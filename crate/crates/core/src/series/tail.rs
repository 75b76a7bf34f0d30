//! Direct summation with a tail bound, and a Richardson fallback.

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::result::{Method, SumResult};
use crate::util::Extrapolator;

/// `Σ_{n>=1} term(n)` where `tail(N)` bounds `|Σ_{n>N} term(n)|`.
///
/// The cutoff doubles from `n_start` until the bound meets the target or
/// `cfg.max_terms` is reached. With `richardson` set, the partial sums at the
/// doubling checkpoints are also extrapolated in `1/N`; that estimate is
/// returned when the bound alone cannot reach the target.
pub(crate) fn sum_with_tail<T, B>(term: T, tail: B, n_start: u64, cfg: &EvalConfig, richardson: bool) -> Result<SumResult>
where
    T: Fn(u64) -> Result<Complex64>,
    B: Fn(u64) -> f64,
{
    let cap = cfg.max_terms as u64;
    let mut n = 0u64;
    let mut next = n_start.max(1).min(cap);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    let mut ex = Extrapolator::new();
    let mut best_bound = f64::INFINITY;
    loop {
        while n < next {
            n += 1;
            let t = term(n)?;
            sum += t;
            abs += t.norm();
        }
        let rounding = 2.0 * f64::EPSILON * abs;
        let bound = tail(n);
        best_bound = best_bound.min(bound);
        if bound + rounding <= cfg.target_abs_error {
            return SumResult::new(sum, bound + rounding, n as usize, Method::Direct).finite();
        }
        if richardson {
            let value = ex.push(1.0 / n as f64, sum);
            let change = ex.last_change();
            if ex.len() >= 4 && change + rounding <= cfg.target_abs_error {
                return SumResult::new(value, change + rounding, n as usize, Method::Richardson).finite();
            }
        }
        if n >= cap {
            return Err(Error::Convergence(format!(
                "tail bound {best_bound:.3e} above target {:.1e} after {n} terms",
                cfg.target_abs_error
            )));
        }
        next = n.saturating_mul(2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_path_and_fallback() {
        let cfg = EvalConfig::default().with_target(1e-10);
        let r = sum_with_tail(|n| Ok(Complex64::new(0.5f64.powi(n as i32), 0.0)), |n| 0.5f64.powi(n as i32), 8, &cfg, false)
            .unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-10);
        assert_eq!(r.method, Method::Direct);

        // Σ 1/(n^2+n) = 1, with no bound supplied
        let r = sum_with_tail(|n| Ok(Complex64::new(1.0 / (n * n + n) as f64, 0.0)), |_| f64::INFINITY, 16, &cfg, true)
            .unwrap();
        assert_eq!(r.method, Method::Richardson);
        assert!((r.value.re - 1.0).abs() < 1e-9, "{}", r.value);

        let small = cfg.with_max_terms(64);
        assert!(matches!(
            sum_with_tail(|n| Ok(Complex64::new(1.0 / n as f64, 0.0)), |_| f64::INFINITY, 16, &small, false),
            Err(Error::Convergence(_))
        ));
    }
}
