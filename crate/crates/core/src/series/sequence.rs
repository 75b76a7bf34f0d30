//! `Σ a_n / (b_n - z)^(m+1) = Σ_{k>=m} C(k,m) (Σ_n a_n b_n^(-(k+1))) z^(k-m)`.

use num_complex::Complex64;

use crate::config::{EvalConfig, MIN_TARGET_ABS_ERROR};
use crate::error::{Error, Result};
use crate::result::{Method, SumResult};
use crate::summation::{abel_limit, cesaro_sum, SummationMethod};
use crate::util::{binom, binomial_geometric_tail, shifted_binomial_series};

use super::partial_fraction::MAX_PF_DERIVATIVE;
use super::spec::SequenceSpec;
use super::tail::sum_with_tail;
use super::{boundary_guard, Coefficients, SidePair, POLE_EXCLUSION};

fn check(z: Complex64, m: usize, cfg: &EvalConfig) -> Result<()> {
    cfg.validate()?;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite z = {z}")));
    }
    if m > MAX_PF_DERIVATIVE {
        return Err(Error::Domain(format!("derivative order {m} exceeds {MAX_PF_DERIVATIVE}")));
    }
    Ok(())
}

/// `Σ a_n / (b_n - z)^(m+1)`.
pub fn sequence_lhs(seq: &SequenceSpec, z: Complex64, m: usize, cfg: &EvalConfig) -> Result<SumResult> {
    check(z, m, cfg)?;
    let term = |n: u64| -> Result<Complex64> {
        let a = seq.a(n);
        if a == Complex64::new(0.0, 0.0) {
            return Ok(a);
        }
        let b = seq.b(n);
        let d = b - z;
        if d.norm() <= POLE_EXCLUSION * b.norm() {
            return Err(Error::Pole(format!("z = {z} is within the exclusion radius of b_{n} = {b}")));
        }
        Ok(a / d.powi(m as i32 + 1))
    };
    let p = (m + 1) as f64;
    let ratio = |n: u64| z.norm() / seq.b(n + 1).norm();
    let mut n0 = 32u64;
    while ratio(n0) > 0.25 {
        n0 *= 2;
        if n0 > cfg.max_terms as u64 {
            return Err(Error::Convergence(format!("|b_n| does not outgrow |z| = {} within the cap", z.norm())));
        }
    }
    if !seq.has_moments() {
        return sum_with_tail(
            term,
            |n| {
                let r = ratio(n);
                if r >= 0.5 {
                    f64::INFINITY
                } else {
                    seq.tail_bound(n, p) / (1.0 - r).powf(p)
                }
            },
            n0,
            cfg,
            true,
        );
    }
    let target = cfg.target_abs_error;
    let mut n_cut = n0;
    let mut best = f64::INFINITY;
    while n_cut <= cfg.max_terms as u64 {
        let mut direct = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for n in 1..=n_cut {
            let t = term(n)?;
            direct += t;
            abs += t.norm();
        }
        let r = ratio(n_cut);
        let scale = seq.tail_bound(n_cut, p);
        let mut tail = Complex64::new(0.0, 0.0);
        let mut err = 2.0 * f64::EPSILON * abs;
        let mut rem = f64::INFINITY;
        let mut zj = Complex64::new(1.0, 0.0);
        for j in 0..=200usize {
            let weight = binom(m + j, j) * z.norm().powi(j as i32);
            let sub = cfg.with_target((target / (4.0 * weight.max(1.0))).max(MIN_TARGET_ABS_ERROR));
            let power = (m + 1 + j) as i32;
            let mv = seq.moment(power as u32, &sub)?;
            let mut partial = Complex64::new(0.0, 0.0);
            let mut partial_abs = 0.0;
            for n in 1..=n_cut {
                let a = seq.a(n);
                if a != Complex64::new(0.0, 0.0) {
                    let t = a / seq.b(n).powi(power);
                    partial += t;
                    partial_abs += t.norm();
                }
            }
            tail += binom(m + j, j) * zj * (mv.value - partial);
            err += weight * (mv.abs_error_estimate + 2.0 * f64::EPSILON * (partial_abs + mv.value.norm()));
            zj *= z;
            rem = scale * binomial_geometric_tail(m, j, r);
            if rem <= target / 4.0 {
                break;
            }
        }
        let total = err + rem;
        best = best.min(total);
        if total <= target {
            return SumResult::new(direct + tail, total, n_cut as usize, Method::EulerMaclaurinTail).finite();
        }
        n_cut *= 4;
    }
    Err(Error::Convergence(format!("sequence tail bound {best:.3e} above target {target:.1e}")))
}

/// `Σ_{k>=m} C(k,m) d_k z^(k-m)` with `d_k = Σ_n a_n b_n^(-(k+1))`.
///
/// The `n = 1` part of every `d_k` is summed in closed form as
/// `a_1/(b_1 - z)^(m+1)`; the remaining inner sums shrink at least like
/// `|b_2|^(-k)`, which bounds the truncated tail.
pub fn sequence_rhs(seq: &SequenceSpec, z: Complex64, m: usize, method: SummationMethod, cfg: &EvalConfig) -> Result<SumResult> {
    check(z, m, cfg)?;
    method.validate()?;
    let b1 = seq.b(1);
    let b2 = seq.b(2).norm();
    boundary_guard(z, Some(b1), b1.norm(), &method)?;
    let a1 = seq.a(1);
    let rel = (z.norm() / b1.norm()).min(1.0);
    let sub = cfg.with_target((cfg.target_abs_error * (1.0 - rel).powi(m as i32 + 1) / 4.0).max(MIN_TARGET_ABS_ERROR));
    // e_k = Σ_{n>=2} a_n b_n^(-(k+1))
    let mut coeffs = Coefficients::new(|k: usize| {
        let power = k as i32 + 1;
        if seq.has_moments() {
            let mv = seq.moment(power as u32, &sub)?;
            let first = a1 / b1.powi(power);
            Ok(SumResult {
                value: mv.value - first,
                abs_error_estimate: mv.abs_error_estimate + 2.0 * f64::EPSILON * first.norm(),
                ..mv
            })
        } else {
            sum_with_tail(
                |i| Ok(seq.a(i + 1) / seq.b(i + 1).powi(power)),
                |i| seq.tail_bound(i + 1, power as f64),
                32,
                &sub,
                true,
            )
        }
    });
    let deviation = |k: usize| seq.tail_bound(1, (k + 1) as f64);
    let engine = |coeffs: &mut Coefficients<_>, z: Complex64| -> Result<SumResult> {
        let az = z.norm();
        let mut value = a1 / (b1 - z).powi(m as i32 + 1);
        let mut err = 4.0 * f64::EPSILON * value.norm();
        let mut heuristic = false;
        let mut zk = Complex64::new(1.0, 0.0);
        let mut k = m;
        loop {
            let c: SumResult = coeffs.get(k)?;
            heuristic |= c.method.is_heuristic();
            let w = binom(k, m);
            let t = c.value * w * zk;
            value += t;
            err += w * az.powi((k - m) as i32) * c.abs_error_estimate + 2.0 * f64::EPSILON * t.norm();
            k += 1;
            zk *= z;
            let tail = deviation(k) * az.powi((k - m) as i32) * shifted_binomial_series(k, m, az / b2);
            if tail <= cfg.target_abs_error / 2.0 {
                let method = if heuristic { Method::Richardson } else { Method::Direct };
                return SumResult::new(value, err + tail, k - m, method).finite();
            }
            if k - m >= cfg.max_terms {
                return Err(Error::Convergence(format!(
                    "sequence power series tail {tail:.3e} above target after {} terms",
                    cfg.max_terms
                )));
            }
        }
    };
    match method {
        SummationMethod::Direct => engine(&mut coeffs, z),
        SummationMethod::Abel(schedule) => abel_limit(|r| engine(&mut coeffs, z * r), schedule, cfg),
        SummationMethod::Cesaro(order) => {
            let table = coeffs.settle(&deviation, cfg.max_terms)?;
            let coeff_err = table.iter().map(|c| c.abs_error_estimate).fold(0.0, f64::max);
            let stream = |i: usize| {
                let k = m + i;
                let e = table.get(k).map_or(Complex64::new(0.0, 0.0), |c| c.value);
                (a1 / b1.powi(k as i32 + 1) + e) * binom(k, m) * z.powi(i as i32)
            };
            let r = cesaro_sum(&stream, order, cfg)?;
            Ok(SumResult {
                abs_error_estimate: r.abs_error_estimate + coeff_err,
                ..r
            })
        }
    }
}

/// Both sides at derivative order zero.
pub fn sequence_series(seq: &SequenceSpec, z: Complex64, method: SummationMethod, cfg: &EvalConfig) -> Result<SidePair> {
    Ok(SidePair {
        lhs: sequence_lhs(seq, z, 0, cfg)?,
        rhs: sequence_rhs(seq, z, 0, method, cfg)?,
    })
}
