//! `Σ b_n n^(-s') f(z/n^s) = Σ a_k g(ks + s') z^k` and its general-exponent form.

use num_complex::Complex64;

use crate::config::{EvalConfig, MIN_TARGET_ABS_ERROR};
use crate::error::{Error, Result};
use crate::result::{Method, SumResult};
use crate::specialfns::DOMAIN_EPS;
use crate::summation::{abel_limit, cesaro_sum, SummationMethod};
use crate::util::pow_neg;

use super::spec::{DirichletSpec, GeneralDirichletSpec, PowerSeriesSpec};
use super::tail::sum_with_tail;
use super::{boundary_guard, Coefficients, SidePair};

fn finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite {what} = {z}")))
    }
}

/// Validates a Dirichlet composition and returns the leading index of `f`.
///
/// `relaxed` applies the plain-ζ rule: `Re s > 1`, or `Re s > 1/2` when `a_1 = 0`.
fn check(f: &PowerSeriesSpec, g: &DirichletSpec, s: Complex64, s_prime: Complex64, z: Complex64, relaxed: bool, cfg: &EvalConfig) -> Result<u64> {
    cfg.validate()?;
    finite(s, "s")?;
    finite(s_prime, "s'")?;
    finite(z, "z")?;
    let k_min = f.leading_index();
    let floor = if relaxed && k_min >= 2 { 0.5 } else { 1.0 };
    if s.re <= floor + DOMAIN_EPS {
        return Err(Error::Domain(format!("Re(s) must exceed {floor}, got s = {s}")));
    }
    g.check_abscissa(s * k_min as f64 + s_prime)?;
    Ok(k_min)
}

/// `Σ_n f(z/n^s)`.
pub fn compose_lhs(f: &PowerSeriesSpec, s: Complex64, z: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
    let ones = DirichletSpec::ones();
    let k_min = check(f, &ones, s, Complex64::new(0.0, 0.0), z, true, cfg)?;
    dc_lhs(f, &ones, s, Complex64::new(0.0, 0.0), z, k_min, cfg)
}

/// `Σ_k a_k ζ(ks) z^k`.
pub fn compose_rhs(
    f: &PowerSeriesSpec,
    s: Complex64,
    z: Complex64,
    method: SummationMethod,
    cfg: &EvalConfig,
) -> Result<SumResult> {
    let ones = DirichletSpec::ones();
    let k_min = check(f, &ones, s, Complex64::new(0.0, 0.0), z, true, cfg)?;
    dc_rhs(f, &ones, s, Complex64::new(0.0, 0.0), z, k_min, method, cfg)
}

/// Both sides of `Σ_n f(z/n^s) = Σ_k a_k ζ(ks) z^k` inside the disc of `f`.
pub fn compose_series(f: &PowerSeriesSpec, s: Complex64, z: Complex64, cfg: &EvalConfig) -> Result<SidePair> {
    Ok(SidePair {
        lhs: compose_lhs(f, s, z, cfg)?,
        rhs: compose_rhs(f, s, z, SummationMethod::Direct, cfg)?,
    })
}

/// `Σ_n b_n n^(-s') f(z/n^s)`.
pub fn dirichlet_compose_lhs(
    f: &PowerSeriesSpec,
    g: &DirichletSpec,
    s: Complex64,
    s_prime: Complex64,
    z: Complex64,
    cfg: &EvalConfig,
) -> Result<SumResult> {
    let k_min = check(f, g, s, s_prime, z, false, cfg)?;
    dc_lhs(f, g, s, s_prime, z, k_min, cfg)
}

/// `Σ_k a_k g(ks + s') z^k`.
pub fn dirichlet_compose_rhs(
    f: &PowerSeriesSpec,
    g: &DirichletSpec,
    s: Complex64,
    s_prime: Complex64,
    z: Complex64,
    method: SummationMethod,
    cfg: &EvalConfig,
) -> Result<SumResult> {
    let k_min = check(f, g, s, s_prime, z, false, cfg)?;
    dc_rhs(f, g, s, s_prime, z, k_min, method, cfg)
}

pub fn dirichlet_compose(
    f: &PowerSeriesSpec,
    g: &DirichletSpec,
    s: Complex64,
    s_prime: Complex64,
    z: Complex64,
    cfg: &EvalConfig,
) -> Result<SidePair> {
    Ok(SidePair {
        lhs: dirichlet_compose_lhs(f, g, s, s_prime, z, cfg)?,
        rhs: dirichlet_compose_rhs(f, g, s, s_prime, z, SummationMethod::Direct, cfg)?,
    })
}

fn dc_lhs(
    f: &PowerSeriesSpec,
    g: &DirichletSpec,
    s: Complex64,
    s_prime: Complex64,
    z: Complex64,
    k_min: u64,
    cfg: &EvalConfig,
) -> Result<SumResult> {
    let sigma = s.re;
    let inner = cfg.with_target(MIN_TARGET_ABS_ERROR);
    let term = |n: u64| -> Result<Complex64> {
        let b = g.coeff(n);
        if b == Complex64::new(0.0, 0.0) {
            return Ok(b);
        }
        let ln = (n as f64).ln();
        let w = z * pow_neg(ln, s);
        Ok(b * pow_neg(ln, s_prime) * f.eval(w, &inner)?.value)
    };
    // keep |z| N^(-σ) inside both a quarter and half the radius
    let rho = (f.radius() / 2.0).min(0.25);
    let n0 = ((z.norm() / rho).powf(1.0 / sigma).ceil() as u64).max(32);
    let growth = g.growth();
    let lead = k_min as f64 * sigma + s_prime.re;
    let remainder = |n: u64, j: u64| {
        let r = z.norm() / (n as f64).powf(sigma);
        let t = growth.tail_bound(n, lead);
        if t == 0.0 {
            0.0
        } else {
            t * (n as f64).powf(k_min as f64 * sigma) * f.majorant(j, r)
        }
    };
    if !g.has_closed_form() && !g.has_tail_sum() {
        return sum_with_tail(term, |n| remainder(n, k_min), n0, cfg, true);
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
        // each f value carries a relative rounding error of a few ulps
        let mut err = 8.0 * f64::EPSILON * abs;
        let mut tail = Complex64::new(0.0, 0.0);
        let mut rem = f64::INFINITY;
        let mut zk = z.powi(k_min as i32 - 1);
        for k in k_min..=k_min + 400 {
            zk *= z;
            let a = f.coeff(k);
            let rem_k = remainder(n_cut, k + 1);
            if a != Complex64::new(0.0, 0.0) {
                let weight = a.norm() * zk.norm();
                let share = target / (4.0 * weight.max(1.0) * 2f64.powi((k - k_min) as i32 + 1));
                let t = g.tail(s * k as f64 + s_prime, n_cut, share, cfg)?;
                tail += a * zk * t.value;
                err += weight * t.abs_error_estimate;
            }
            rem = rem_k;
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
    Err(Error::Convergence(format!("composition tail bound {best:.3e} above target {target:.1e}")))
}

/// Shape of `Σ_k a_k v_k z^k` where `v_k → b_1 w_1^k` with
/// `|v_k - b_1 w_1^k| <= deviation(K) ratio^(k-K)` for `k >= K`.
struct PowerRhs<'a, D, A> {
    f: &'a PowerSeriesSpec,
    k_min: u64,
    b1: Complex64,
    w1: Complex64,
    ratio: f64,
    deviation: D,
    /// bound on `|v_k|` for all `k >= K`
    abs_bound: A,
}

impl<D: Fn(u64) -> f64, A: Fn(u64) -> f64> PowerRhs<'_, D, A> {
    fn limit(&self, k: u64) -> Complex64 {
        self.b1 * self.w1.powi(k as i32)
    }

    fn interior<F>(&self, coeffs: &mut Coefficients<F>, z: Complex64, cfg: &EvalConfig) -> Result<SumResult>
    where
        F: FnMut(usize) -> Result<SumResult>,
    {
        let az = z.norm();
        let split = self.f.has_closed_form();
        let (mut value, mut err) = if split {
            let v = self.f.eval(z * self.w1, cfg)?;
            (v.value * self.b1, v.abs_error_estimate * self.b1.norm())
        } else {
            (Complex64::new(0.0, 0.0), 0.0)
        };
        let mut zk = z.powi(self.k_min as i32 - 1);
        let mut k = self.k_min;
        loop {
            zk *= z;
            let a = self.f.coeff(k);
            if a != Complex64::new(0.0, 0.0) {
                let c = coeffs.get(k as usize)?;
                let v = if split { c.value - self.limit(k) } else { c.value };
                let t = a * v * zk;
                value += t;
                err += a.norm() * az.powi(k as i32) * c.abs_error_estimate + 2.0 * f64::EPSILON * t.norm();
            }
            k += 1;
            let tail = if split {
                let d = (self.deviation)(k);
                if d == 0.0 {
                    0.0
                } else {
                    // δ_K ratio^(-K) majorant(K, |z| ratio), in logs to avoid overflow
                    let m = self.f.majorant(k, az * self.ratio);
                    if m == 0.0 {
                        0.0
                    } else {
                        (d.ln() - k as f64 * self.ratio.ln() + m.ln()).exp()
                    }
                }
            } else {
                (self.abs_bound)(k) * self.f.majorant(k, az)
            };
            if tail <= cfg.target_abs_error / 2.0 {
                return SumResult::new(value, err + tail, (k - self.k_min) as usize, Method::Direct).finite();
            }
            if (k - self.k_min) as usize >= cfg.max_terms {
                return Err(Error::Convergence(format!(
                    "composition power series tail {tail:.3e} above target after {} terms",
                    cfg.max_terms
                )));
            }
        }
    }

    fn run<F>(&self, coeffs: &mut Coefficients<F>, z: Complex64, method: SummationMethod, cfg: &EvalConfig) -> Result<SumResult>
    where
        F: FnMut(usize) -> Result<SumResult>,
    {
        method.validate()?;
        boundary_guard(z, None, self.f.radius(), &method)?;
        match method {
            SummationMethod::Direct => self.interior(coeffs, z, cfg),
            SummationMethod::Abel(schedule) => abel_limit(|r| self.interior(coeffs, z * r, cfg), schedule, cfg),
            SummationMethod::Cesaro(order) => {
                let table = coeffs.settle(&|k| (self.deviation)(k as u64), cfg.max_terms)?;
                let coeff_err = table.iter().map(|c| c.abs_error_estimate).fold(0.0, f64::max);
                let stream = |k: usize| {
                    let k64 = k as u64;
                    let a = self.f.coeff(k64);
                    if k64 < self.k_min || a == Complex64::new(0.0, 0.0) {
                        return Complex64::new(0.0, 0.0);
                    }
                    let v = table.get(k).map_or_else(|| self.limit(k64), |c| c.value);
                    a * v * z.powi(k as i32)
                };
                let r = cesaro_sum(&stream, order, cfg)?;
                Ok(SumResult {
                    abs_error_estimate: r.abs_error_estimate + coeff_err,
                    ..r
                })
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn dc_rhs(
    f: &PowerSeriesSpec,
    g: &DirichletSpec,
    s: Complex64,
    s_prime: Complex64,
    z: Complex64,
    k_min: u64,
    method: SummationMethod,
    cfg: &EvalConfig,
) -> Result<SumResult> {
    let sub = cfg.with_target((cfg.target_abs_error / 4.0).max(MIN_TARGET_ABS_ERROR));
    let mut coeffs = Coefficients::new(|k: usize| {
        if (k as u64) < k_min {
            Ok(SumResult::exact(Complex64::new(0.0, 0.0)))
        } else {
            g.value(s * k as f64 + s_prime, &sub)
        }
    });
    let growth = g.growth();
    let b1 = g.coeff(1);
    let engine = PowerRhs {
        f,
        k_min,
        b1,
        w1: Complex64::new(1.0, 0.0),
        ratio: 2f64.powf(-s.re),
        deviation: |k: u64| growth.tail_bound(1, k.max(k_min) as f64 * s.re + s_prime.re),
        abs_bound: |k: u64| b1.norm() + growth.tail_bound(1, k.max(k_min) as f64 * s.re + s_prime.re),
    };
    engine.run(&mut coeffs, z, method, cfg)
}

fn check_general(f: &PowerSeriesSpec, gd: &GeneralDirichletSpec, s: Complex64, z: Complex64, cfg: &EvalConfig) -> Result<()> {
    cfg.validate()?;
    finite(z, "z")?;
    if f.leading_index() == 0 {
        return Err(Error::Domain("f must vanish at the origin".into()));
    }
    gd.check_abscissa(s)
}

/// `Σ_n f(z e^(-λ_n s))`.
pub fn general_dirichlet_compose_lhs(
    f: &PowerSeriesSpec,
    gd: &GeneralDirichletSpec,
    s: Complex64,
    z: Complex64,
    cfg: &EvalConfig,
) -> Result<SumResult> {
    check_general(f, gd, s, z, cfg)?;
    let sigma = s.re;
    let k_min = f.leading_index();
    let inner = cfg.with_target(MIN_TARGET_ABS_ERROR);
    let term = |n: u64| -> Result<Complex64> { Ok(f.eval(z * (-s * gd.lambda(n)).exp(), &inner)?.value) };
    let rho = (f.radius() / 2.0).min(0.25);
    let mut n0 = 32u64;
    while z.norm() * (-gd.lambda(n0 + 1) * sigma).exp() > rho {
        n0 *= 2;
        if n0 > cfg.max_terms as u64 {
            return Err(Error::Convergence("exponents grow too slowly for the requested z".into()));
        }
    }
    // Σ_{n>N} e^(-λ_n kσ) <= e^(-λ_{N+1}(k-k_min)σ) T_N(k_min σ)
    let remainder = |n: u64, j: u64| {
        let e = (-gd.lambda(n + 1) * sigma).exp();
        let t = gd.tail_bound(n, k_min as f64 * sigma);
        let m = f.majorant(j, z.norm() * e);
        if t == 0.0 || m == 0.0 {
            0.0
        } else {
            t * e.powi(-(k_min as i32)) * m
        }
    };
    if !gd.has_closed_form() {
        return sum_with_tail(term, |n| remainder(n, k_min), n0, cfg, false);
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
        let mut err = 8.0 * f64::EPSILON * abs;
        let mut tail = Complex64::new(0.0, 0.0);
        let mut rem = f64::INFINITY;
        let mut zk = z.powi(k_min as i32 - 1);
        for k in k_min..=k_min + 400 {
            zk *= z;
            let a = f.coeff(k);
            if a != Complex64::new(0.0, 0.0) {
                let weight = a.norm() * zk.norm();
                let sub = cfg.with_target((target / (4.0 * weight.max(1.0))).max(MIN_TARGET_ABS_ERROR));
                let arg = s * k as f64;
                let dv = gd.value(arg, &sub)?;
                let partial = gd.partial_sum(arg, n_cut);
                tail += a * zk * (dv.value - partial);
                err += weight * (dv.abs_error_estimate + 2.0 * f64::EPSILON * (partial.norm() + dv.value.norm()) * n_cut as f64);
            }
            rem = remainder(n_cut, k + 1);
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
    Err(Error::Convergence(format!("composition tail bound {best:.3e} above target {target:.1e}")))
}

/// `Σ_k a_k D(ks) z^k`.
pub fn general_dirichlet_compose_rhs(
    f: &PowerSeriesSpec,
    gd: &GeneralDirichletSpec,
    s: Complex64,
    z: Complex64,
    method: SummationMethod,
    cfg: &EvalConfig,
) -> Result<SumResult> {
    check_general(f, gd, s, z, cfg)?;
    let sigma = s.re;
    let k_min = f.leading_index();
    let sub = cfg.with_target((cfg.target_abs_error / 4.0).max(MIN_TARGET_ABS_ERROR));
    let mut coeffs = Coefficients::new(|k: usize| {
        if (k as u64) < k_min {
            Ok(SumResult::exact(Complex64::new(0.0, 0.0)))
        } else {
            gd.value(s * k as f64, &sub)
        }
    });
    let l1 = gd.lambda(1);
    let l2 = gd.lambda(2);
    // Σ_{n>=2} e^(-λ_n kσ)
    let rest = |k: u64| {
        let x = k.max(k_min) as f64 * sigma;
        (2..=64u64).map(|n| (-gd.lambda(n) * x).exp()).sum::<f64>() + gd.tail_bound(64, x)
    };
    let engine = PowerRhs {
        f,
        k_min,
        b1: Complex64::new(1.0, 0.0),
        w1: (-s * l1).exp(),
        ratio: (-l2 * sigma).exp(),
        deviation: rest,
        abs_bound: |k: u64| gd.abs_bound(k.max(k_min) as f64 * sigma),
    };
    engine.run(&mut coeffs, z, method, cfg)
}

pub fn general_dirichlet_compose(
    f: &PowerSeriesSpec,
    gd: &GeneralDirichletSpec,
    s: Complex64,
    z: Complex64,
    cfg: &EvalConfig,
) -> Result<SidePair> {
    Ok(SidePair {
        lhs: general_dirichlet_compose_lhs(f, gd, s, z, cfg)?,
        rhs: general_dirichlet_compose_rhs(f, gd, s, z, SummationMethod::Direct, cfg)?,
    })
}
