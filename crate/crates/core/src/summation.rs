//! Summability methods for series that do not converge classically.
//!
//! Cesàro sums use the binomial (C,k) means, built from `k`-fold iterated
//! sums of partial sums. Abel sums follow the radial path `r ↑ 1`. Error
//! estimates for both are heuristic.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::result::{Method, SumResult};
use crate::util::{binom, Extrapolator};

pub const MAX_CESARO_ORDER: u8 = 4;

/// Radii `r_j = 1 - 2^(-j)` for `j = first..=last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbelSchedule {
    pub first: u32,
    pub last: u32,
}

impl Default for AbelSchedule {
    fn default() -> Self {
        AbelSchedule { first: 3, last: 40 }
    }
}

impl AbelSchedule {
    pub fn validate(&self) -> Result<()> {
        if self.first == 0 || self.last < self.first + 2 || self.last > 52 {
            return Err(Error::Config(format!(
                "Abel schedule must satisfy 1 <= first, first + 2 <= last <= 52, got {}..={}",
                self.first, self.last
            )));
        }
        Ok(())
    }

    pub fn radius(j: u32) -> f64 {
        1.0 - 0.5f64.powi(j as i32)
    }
}

/// How to sum a power series, in particular on its circle of convergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummationMethod {
    Direct,
    Cesaro(u8),
    Abel(AbelSchedule),
}

impl SummationMethod {
    pub fn abel() -> Self {
        SummationMethod::Abel(AbelSchedule::default())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SummationMethod::Direct => Ok(()),
            SummationMethod::Cesaro(k) => check_order(*k),
            SummationMethod::Abel(s) => s.validate(),
        }
    }
}

fn check_order(k: u8) -> Result<()> {
    if !(1..=MAX_CESARO_ORDER).contains(&k) {
        return Err(Error::Config(format!("Cesàro order must be in 1..={MAX_CESARO_ORDER}, got {k}")));
    }
    Ok(())
}

impl fmt::Display for SummationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummationMethod::Direct => f.write_str("direct"),
            SummationMethod::Cesaro(k) => write!(f, "cesaro:{k}"),
            SummationMethod::Abel(_) => f.write_str("abel"),
        }
    }
}

impl FromStr for SummationMethod {
    type Err = Error;

    /// Accepts `direct`, `abel`, and `cesaro:k`.
    fn from_str(s: &str) -> Result<Self> {
        let m = match s {
            "direct" => SummationMethod::Direct,
            "abel" => SummationMethod::abel(),
            _ => {
                let k = s
                    .strip_prefix("cesaro:")
                    .and_then(|k| k.parse::<u8>().ok())
                    .ok_or_else(|| Error::Config(format!("unknown summation method '{s}'")))?;
                SummationMethod::Cesaro(k)
            }
        };
        m.validate()?;
        Ok(m)
    }
}

/// A series given term by term; `term(k)` must be a pure function of `k`.
pub trait PartialSumStream {
    fn term(&self, k: usize) -> Complex64;
}

impl<F: Fn(usize) -> Complex64> PartialSumStream for F {
    fn term(&self, k: usize) -> Complex64 {
        self(k)
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    sum: Complex64,
    comp: Complex64,
}

impl Accumulator {
    fn add(&mut self, x: Complex64) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.comp.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}

const FIRST_CHECKPOINT: usize = 64;
const WINDOW: usize = 10;

/// Cesàro (C,k) sum: `k`-fold iterated sums of partial sums divided by `C(K+k, k)`.
///
/// Means are sampled at `K = 64, 128, 256, …` and extrapolated in `1/K`,
/// since for these means the error has an expansion in powers of `1/K`
/// (sampling at even `K` also smooths the `(-1)^K` component of boundary
/// series). Convergence is declared once the change between consecutive
/// estimates is below the target while the spread of the last ten raw
/// means is either below the target too or shrinking geometrically from one
/// checkpoint to the next. The reported error is that change (and the
/// spread, when it is the settled case).
pub fn cesaro_sum<S: PartialSumStream + ?Sized>(stream: &S, order: u8, cfg: &EvalConfig) -> Result<SumResult> {
    cfg.validate()?;
    check_order(order)?;
    let depth = order as usize;
    let mut levels = vec![Accumulator::default(); depth + 1];
    let mut window = [Complex64::new(0.0, 0.0); WINDOW];
    let mut last_raw: Option<Complex64> = None;
    let mut spreads: Vec<f64> = Vec::new();
    let mut ex = Extrapolator::new();
    let mut next_checkpoint = FIRST_CHECKPOINT;

    // K counts terms 0..K-1, so the mean divides by C(K-1+k, k)
    for k in 1..=cfg.max_terms {
        let t = stream.term(k - 1);
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::Convergence(format!("non-finite term at index {}", k - 1)));
        }
        levels[0].add(t);
        let mut current = levels[0].value();
        for level in levels.iter_mut().skip(1) {
            level.add(current);
            current = level.value();
        }
        let mean = current / binom(k - 1 + depth, depth);
        window[k % WINDOW] = mean;

        if k == next_checkpoint {
            let spread = window.iter().map(|w| (w - mean).norm()).fold(0.0, f64::max);
            let extrapolated = ex.push(1.0 / k as f64, mean);
            let mut candidates = Vec::with_capacity(2);
            if let Some(prev) = last_raw {
                candidates.push((mean, (mean - prev).norm()));
            }
            if ex.len() >= 3 {
                candidates.push((extrapolated, ex.last_change()));
            }
            // oscillation of the raw means must be negligible or visibly dying out
            let n = spreads.len();
            let decaying = n >= 2 && spread <= 0.75 * spreads[n - 1] && spreads[n - 1] <= 0.75 * spreads[n - 2];
            let settled = spread < cfg.target_abs_error;
            if settled || (decaying && spread < 1e-2) {
                if let Some((value, change)) = candidates.into_iter().min_by(|a, b| a.1.total_cmp(&b.1)) {
                    if change < cfg.target_abs_error {
                        let estimate = if settled { change.max(spread) } else { change };
                        return SumResult::new(value, estimate, k, Method::Cesaro(order)).finite();
                    }
                }
            }
            spreads.push(spread);
            last_raw = Some(mean);
            next_checkpoint *= 2;
        }
    }
    Err(Error::Convergence(format!(
        "Cesàro means of order {order} did not stabilise to {:.1e} within {} terms",
        cfg.target_abs_error, cfg.max_terms
    )))
}

/// Smallest Cesàro order in `1..=max_order` under which the stream stabilises.
pub fn cesaro_min_order<S: PartialSumStream + ?Sized>(
    stream: &S,
    max_order: u8,
    cfg: &EvalConfig,
) -> Result<(u8, SumResult)> {
    check_order(max_order)?;
    let mut last_err = None;
    for k in 1..=max_order {
        match cesaro_sum(stream, k, cfg) {
            Ok(r) => return Ok((k, r)),
            Err(e @ Error::Convergence(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one order tried"))
}

/// Abel limit `lim_{r→1⁻} F(r)` along the radial path.
///
/// `F` is sampled at the schedule radii and extrapolated polynomially in
/// `1 - r`; the error estimate is the change between the last two
/// extrapolants plus the largest inner error estimate.
pub fn abel_limit<F>(mut f: F, schedule: AbelSchedule, cfg: &EvalConfig) -> Result<SumResult>
where
    F: FnMut(f64) -> Result<SumResult>,
{
    cfg.validate()?;
    schedule.validate()?;
    let mut ex = Extrapolator::new();
    let mut inner_err = 0.0f64;
    let mut terms = 0usize;
    let mut best: Option<(Complex64, f64)> = None;
    let mut growing = 0;
    let mut prev_change = f64::INFINITY;
    for j in schedule.first..=schedule.last {
        let r = AbelSchedule::radius(j);
        let inner = f(r)?;
        inner_err = inner_err.max(inner.abs_error_estimate);
        terms = terms.saturating_add(inner.terms_used);
        let value = ex.push(1.0 - r, inner.value);
        if ex.len() < 3 {
            continue;
        }
        let change = ex.last_change();
        if best.map_or(true, |(_, e)| change < e) {
            best = Some((value, change));
        }
        if change + inner_err < cfg.target_abs_error {
            return SumResult::new(value, change + inner_err, terms.min(cfg.max_terms), Method::Abel).finite();
        }
        growing = if change > prev_change { growing + 1 } else { 0 };
        prev_change = change;
        if growing >= 3 && ex.len() >= 6 {
            break;
        }
    }
    let (value, change) = best.expect("schedule has at least three radii");
    Err(Error::Convergence(format!(
        "Abel extrapolants did not settle: best {value} with change {change:.3e}, target {:.1e}",
        cfg.target_abs_error
    )))
}
