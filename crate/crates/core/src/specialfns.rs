//! Riemann, Hurwitz and Dirichlet-L values for `Re(s) > 1`.
//!
//! Everything goes through one Euler–Maclaurin kernel for
//! `Σ_{n≥0} (-ln(n+a))^m q^(-s) (n+a)^(-s)`: `N` direct terms, an integral
//! term, and Bernoulli corrections up to the configured order. The remainder
//! after `j` corrections is bounded by
//!
//! ```text
//! |R| <= 4/(2π)^(2j) · Σ_i C(m,i) |Q^(i)(s)| ∫_X^∞ (ln x)^(m-i) x^(-σ-2j) dx,   X = N + a
//! ```
//!
//! where `Q(s) = s(s+1)…(s+2j-1)`, which uses `|B_2j|/(2j)! <= 4/(2π)^(2j)`.
//! Derivatives in `s` are taken analytically, term by term.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::CharacterTable;
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::result::{Method, SumResult};
use crate::util::{binom, log_power_integral};

/// Distance from the line `Re(s) = 1` below which arguments are rejected.
pub const DOMAIN_EPS: f64 = 1e-9;

/// Highest derivative order accepted by [`zeta_deriv`].
pub const MAX_DERIV_ORDER: u32 = 8;

/// `B_{2j} / (2j)!` for `j = 1..=15`.
const BERNOULLI_OVER_FACTORIAL: [f64; 15] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
    657931.0 / 186134520519971831808000000.0,
    -3392780147.0 / 37893265687455865519472640000000.0,
    1723168255201.0 / 759790291646040068357842010112000000.0,
];

const FIRST_N: usize = 16;

pub(crate) fn check_half_plane(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument s = {s}")));
    }
    if s.re <= 1.0 + DOMAIN_EPS {
        return Err(Error::Domain(format!("Re(s) must exceed 1, got s = {s}")));
    }
    Ok(())
}

/// Coefficients in `h` of `Π_{t<count} (s + t + h)`, truncated after degree `deg`.
fn rising_jet(s: Complex64, count: usize, deg: usize) -> Vec<Complex64> {
    let mut poly = vec![Complex64::new(0.0, 0.0); deg + 1];
    poly[0] = Complex64::new(1.0, 0.0);
    for t in 0..count {
        let c = s + t as f64;
        for i in (0..=deg).rev() {
            let shifted = if i > 0 { poly[i - 1] } else { Complex64::new(0.0, 0.0) };
            poly[i] = poly[i] * c + shifted;
        }
    }
    poly
}

/// i-th derivative values `P^(i)(s) = i! [h^i]` from a jet.
fn jet_derivatives(jet: &[Complex64]) -> Vec<Complex64> {
    let mut fact = 1.0;
    jet.iter()
        .enumerate()
        .map(|(i, c)| {
            if i > 0 {
                fact *= i as f64;
            }
            c * fact
        })
        .collect()
}

struct Kernel {
    value: Complex64,
    remainder: f64,
    sum_abs: f64,
}

/// Remainder bound after `j` corrections, for the `m`-th derivative.
fn remainder_bound(s: Complex64, x: f64, log_scale: f64, m: u32, j: usize) -> f64 {
    let q = jet_derivatives(&rising_jet(s, 2 * j, m as usize));
    let alpha = s.re + 2.0 * j as f64;
    let mut total = 0.0;
    for (i, qi) in q.iter().enumerate() {
        total += binom(m as usize, i) * qi.norm() * log_power_integral(x, alpha, m - i as u32);
    }
    4.0 / (2.0 * PI).powi(2 * j as i32) * total * (-s.re * log_scale).exp()
}

/// Best remainder over `1..=max_j` corrections at cutoff `n`.
fn best_correction_count(s: Complex64, a: f64, log_scale: f64, m: u32, n: usize, max_j: usize) -> (usize, f64) {
    let x = n as f64 + a;
    (1..=max_j)
        .map(|j| (j, remainder_bound(s, x, log_scale, m, j)))
        .fold((1, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
}

fn em_kernel(s: Complex64, a: f64, log_scale: f64, m: u32, n: usize, corrections: usize) -> Kernel {
    debug_assert!(m == 0 || log_scale == 0.0);
    let mut value = Complex64::new(0.0, 0.0);
    let mut sum_abs = 0.0;
    for k in 0..n {
        let l = (k as f64 + a).ln();
        let t = (-s * (l + log_scale)).exp() * (-l).powi(m as i32);
        sum_abs += t.norm();
        value += t;
    }

    let x = n as f64 + a;
    let lx = x.ln();
    let base = (-s * (lx + log_scale)).exp(); // X^{-s}, scaled
    let neg_l = -lx;

    // ∫_N^∞ (x+a)^{-s} dx = X^{1-s}/(s-1), differentiated m times
    let u = s - 1.0;
    let mut integral = Complex64::new(0.0, 0.0);
    let mut fact = 1.0;
    for i in 0..=m {
        if i > 0 {
            fact *= i as f64;
        }
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        integral += binom(m as usize, i as usize) * neg_l.powi((m - i) as i32) * sign * fact / u.powi(i as i32 + 1);
    }
    integral *= base * x;

    let half = base * neg_l.powi(m as i32) * 0.5;

    let mut corr = Complex64::new(0.0, 0.0);
    for j in 1..=corrections {
        let p = jet_derivatives(&rising_jet(s, 2 * j - 1, m as usize));
        let mut d = Complex64::new(0.0, 0.0);
        for (i, pi) in p.iter().enumerate() {
            d += binom(m as usize, i) * pi * neg_l.powi(m as i32 - i as i32);
        }
        corr += d * BERNOULLI_OVER_FACTORIAL[j - 1] * base * x.powi(1 - 2 * j as i32);
    }
    sum_abs += integral.norm() + half.norm();
    Kernel {
        value: value + integral + half + corr,
        remainder: remainder_bound(s, x, log_scale, m, corrections),
        sum_abs,
    }
}

/// Fixed-cutoff Euler–Maclaurin evaluation of the `m`-th `s`-derivative of
/// `ζ(s, a)`: exactly `n_direct` direct terms, and the best number of
/// corrections up to `order/2`. The reported bound never increases with
/// `order` for fixed `n_direct`.
pub fn hurwitz_em(s: Complex64, a: f64, m: u32, n_direct: usize, order: usize) -> Result<SumResult> {
    check_half_plane(s)?;
    check_shift(a)?;
    if m > MAX_DERIV_ORDER {
        return Err(Error::Domain(format!("derivative order {m} exceeds {MAX_DERIV_ORDER}")));
    }
    let max_j = (order / 2).clamp(1, BERNOULLI_OVER_FACTORIAL.len());
    let n = n_direct.max(1);
    let (j, _) = best_correction_count(s, a, 0.0, m, n, max_j);
    let k = em_kernel(s, a, 0.0, m, n, j);
    SumResult::new(
        k.value,
        k.remainder + 2.0 * f64::EPSILON * k.sum_abs,
        n,
        Method::EulerMaclaurinTail,
    )
    .finite()
}

fn check_shift(a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("Hurwitz shift must lie in (0, 1], got {a}")));
    }
    Ok(())
}

/// Adaptive evaluation of `(d/ds)^m Σ_{n≥0} q^(-s) (n+a)^(-s)`.
fn adaptive(s: Complex64, a: f64, log_scale: f64, m: u32, cfg: &EvalConfig) -> Result<SumResult> {
    cfg.validate()?;
    check_half_plane(s)?;
    let max_j = (cfg.euler_maclaurin_order / 2).clamp(1, BERNOULLI_OVER_FACTORIAL.len());
    let mut n = FIRST_N;
    loop {
        let (j, bound) = best_correction_count(s, a, log_scale, m, n, max_j);
        if bound <= cfg.target_abs_error {
            let k = em_kernel(s, a, log_scale, m, n, j);
            return SumResult::new(
                k.value,
                k.remainder + 2.0 * f64::EPSILON * k.sum_abs,
                n,
                Method::EulerMaclaurinTail,
            )
            .finite();
        }
        if n >= cfg.max_terms {
            return Err(Error::Convergence(format!(
                "Euler–Maclaurin bound {bound:.3e} above target {:.3e} at the {} term cap (s = {s})",
                cfg.target_abs_error, cfg.max_terms
            )));
        }
        n = (n + n / 4).min(cfg.max_terms);
    }
}

/// `Σ_{n>n0} (-ln n)^m n^(-s)` to absolute accuracy `abs_target`.
///
/// Unlike the other entry points there is no floor on the target: tails are
/// small, and their rounding error scales with their own size.
pub fn zeta_tail(s: Complex64, m: u32, n0: u64, abs_target: f64, max_terms: usize) -> Result<SumResult> {
    check_half_plane(s)?;
    if m > MAX_DERIV_ORDER {
        return Err(Error::Domain(format!("derivative order {m} exceeds {MAX_DERIV_ORDER}")));
    }
    let a = n0 as f64 + 1.0;
    let target = abs_target.max(f64::MIN_POSITIVE);
    let max_j = BERNOULLI_OVER_FACTORIAL.len();
    let mut n = FIRST_N;
    loop {
        let (j, bound) = best_correction_count(s, a, 0.0, m, n, max_j);
        if bound <= target || n >= max_terms {
            let k = em_kernel(s, a, 0.0, m, n, j);
            let err = k.remainder + 2.0 * f64::EPSILON * k.sum_abs;
            return SumResult::new(k.value, err, n, Method::EulerMaclaurinTail).finite();
        }
        n += n / 4;
    }
}

/// Riemann zeta `ζ(s)` for `Re(s) > 1`.
pub fn zeta(s: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
    adaptive(s, 1.0, 0.0, 0, cfg)
}

/// `ζ^(m)(s) = Σ (-ln n)^m n^(-s)`, for `m <= 8`.
pub fn zeta_deriv(m: u32, s: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
    if m > MAX_DERIV_ORDER {
        return Err(Error::Domain(format!("derivative order {m} exceeds {MAX_DERIV_ORDER}")));
    }
    adaptive(s, 1.0, 0.0, m, cfg)
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n+a)^(-s)`, `0 < a <= 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64, cfg: &EvalConfig) -> Result<SumResult> {
    check_shift(a)?;
    adaptive(s, a, 0.0, 0, cfg)
}

/// `Σ_{n≥0} (q n + r)^(-s) = q^(-s) ζ(s, r/q)`, summed without forming the
/// (possibly huge) Hurwitz value first.
fn progression_sum(s: Complex64, r: u64, q: u64, cfg: &EvalConfig) -> Result<SumResult> {
    let a = r as f64 / q as f64;
    check_shift(a)?;
    adaptive(s, a, (q as f64).ln(), 0, cfg)
}

/// Dirichlet beta `β(s) = Σ_{n≥0} (-1)^n (2n+1)^(-s) = 4^(-s)[ζ(s,1/4) - ζ(s,3/4)]`.
pub fn dirichlet_beta(s: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
    check_half_plane(s)?;
    let half = cfg.with_target((cfg.target_abs_error / 2.0).max(crate::config::MIN_TARGET_ABS_ERROR));
    let a = progression_sum(s, 1, 4, &half)?;
    let b = progression_sum(s, 3, 4, &half)?;
    SumResult::new(
        a.value - b.value,
        a.abs_error_estimate + b.abs_error_estimate,
        a.terms_used + b.terms_used,
        Method::EulerMaclaurinTail,
    )
    .finite()
}

/// `L(s, χ) = q^(-s) Σ_{a=1..q} χ(a) ζ(s, a/q)`.
pub fn l_function(s: Complex64, chi: &CharacterTable, cfg: &EvalConfig) -> Result<SumResult> {
    check_half_plane(s)?;
    let q = chi.modulus();
    let units: Vec<u64> = (1..=q).filter(|&r| chi.value(r).norm() > 0.0).collect();
    let share = (cfg.target_abs_error / units.len() as f64).max(crate::config::MIN_TARGET_ABS_ERROR);
    let sub = cfg.with_target(share);
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut terms = 0;
    for r in units {
        let part = progression_sum(s, r, q, &sub)?;
        let c = chi.value(r);
        value += c * part.value;
        err += c.norm() * part.abs_error_estimate;
        terms += part.terms_used;
    }
    SumResult::new(value, err, terms, Method::EulerMaclaurinTail).finite()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::character;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn tails_match_direct_sums() {
        let s = Complex64::new(2.5, 1.0);
        for m in 0..3u32 {
            let direct: Complex64 = (11..=200_000u64)
                .map(|n| {
                    let l = (n as f64).ln();
                    (-s * l).exp() * (-l).powi(m as i32)
                })
                .sum();
            let t = zeta_tail(s, m, 10, 1e-20, 1 << 20).unwrap();
            let rest = 200_000f64.powf(-1.5) * 200_000f64.ln().powi(m as i32) / 1.5 * 2.0;
            assert!((t.value - direct).norm() < rest, "m={m}: {} vs {direct}", t.value);
        }
        let tiny = zeta_tail(Complex64::new(30.0, 0.0), 0, 100, 1e-80, 1 << 20).unwrap();
        assert!(tiny.abs_error_estimate < 1e-70 && tiny.value.re > 0.0);
    }

    #[test]
    fn even_zeta_values() {
        let z2 = zeta(c(2.0, 0.0), &cfg()).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-14);
        assert!(z2.value.im.abs() < 1e-15);
        let z4 = zeta(c(4.0, 0.0), &cfg()).unwrap();
        assert!((z4.value.re - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn large_argument_tends_to_one() {
        let v = zeta(c(40.0, 0.0), &cfg()).unwrap().value.re;
        let expected = 1.0 + 2f64.powi(-40) + 3f64.powi(-40);
        assert!((v - expected).abs() < 1e-15);
    }

    #[test]
    fn domain_is_enforced() {
        for s in [c(1.0, 0.0), c(0.5, 3.0), c(1.0 + 1e-10, 0.0), c(f64::NAN, 0.0)] {
            assert!(matches!(zeta(s, &cfg()), Err(Error::Domain(_))), "{s}");
        }
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), 0.0, &cfg()), Err(Error::Domain(_))));
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), 1.5, &cfg()), Err(Error::Domain(_))));
        assert!(matches!(zeta_deriv(9, c(2.0, 0.0), &cfg()), Err(Error::Domain(_))));
    }

    #[test]
    fn cap_too_small_is_a_convergence_error() {
        let tight = EvalConfig::new(1e-14, 16, 2).unwrap();
        assert!(matches!(zeta(c(1.01, 0.0), &tight), Err(Error::Convergence(_))));
    }

    #[test]
    fn hurwitz_special_shifts() {
        let z2 = zeta(c(2.0, 0.0), &cfg()).unwrap().value;
        let h1 = hurwitz_zeta(c(2.0, 0.0), 1.0, &cfg()).unwrap().value;
        assert!((h1 - z2).norm() < 1e-15);
        let h_half = hurwitz_zeta(c(2.0, 0.0), 0.5, &cfg()).unwrap().value;
        assert!((h_half.re - 4.934802200544679).abs() < 1e-12);
    }

    #[test]
    fn derivative_order_zero_is_zeta() {
        let s = c(2.5, 1.0);
        let a = zeta(s, &cfg()).unwrap().value;
        let b = zeta_deriv(0, s, &cfg()).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn beta_and_l_agree() {
        let s = c(2.0, 0.0);
        let beta = dirichlet_beta(s, &cfg()).unwrap();
        assert!((beta.value.re - 0.915965594177219).abs() < 1e-14);
        let chi = character(4, 1).unwrap();
        let l = l_function(s, &chi, &cfg()).unwrap();
        assert!((l.value - beta.value).norm() < 1e-14);
        let b40 = dirichlet_beta(c(40.0, 0.0), &cfg()).unwrap().value.re;
        assert!((b40 - (1.0 - 3f64.powi(-40))).abs() < 1e-15);
    }

    #[test]
    fn principal_character_mod_one_is_zeta() {
        let chi = character(1, 0).unwrap();
        let s = c(3.0, -2.0);
        let l = l_function(s, &chi, &cfg()).unwrap().value;
        let z = zeta(s, &cfg()).unwrap().value;
        assert!((l - z).norm() < 1e-14);
    }

    #[test]
    fn fixed_cutoff_bound_is_monotone_in_order() {
        for s in [c(1.3, 0.0), c(2.0, 5.0), c(4.0, -1.0)] {
            let mut prev = f64::INFINITY;
            for order in (2..=30).step_by(2) {
                let r = hurwitz_em(s, 1.0, 1, 20, order).unwrap();
                assert!(r.abs_error_estimate <= prev);
                prev = r.abs_error_estimate;
            }
        }
    }
}
