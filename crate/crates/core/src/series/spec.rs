//! Coefficient sequences and the functions they generate.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::arith::{self, CharacterTable};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::result::{Method, SumResult};
use crate::specialfns::{self, DOMAIN_EPS};
use crate::util::{exp_m1, pow_neg};

use super::tail::sum_with_tail;

pub type CoeffFn = Arc<dyn Fn(u64) -> Complex64 + Send + Sync>;
pub type SeriesFn = Arc<dyn Fn(Complex64, &EvalConfig) -> Result<SumResult> + Send + Sync>;
/// `(s, n0, abs_target) ↦ Σ_{n>n0} a_n n^(-s)`.
pub type TailSumFn = Arc<dyn Fn(Complex64, u64, f64) -> Result<SumResult> + Send + Sync>;

/// Envelope `|a_n| <= scale · n^power · (1 + ln n)^log_power`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth {
    pub scale: f64,
    pub power: f64,
    pub log_power: u32,
}

impl Growth {
    pub const fn new(scale: f64, power: f64, log_power: u32) -> Self {
        Self {
            scale,
            power,
            log_power,
        }
    }

    pub const fn bounded(scale: f64) -> Self {
        Self::new(scale, 0.0, 0)
    }

    /// Abscissa of absolute convergence implied by the envelope.
    pub fn abscissa(&self) -> f64 {
        self.power + 1.0
    }

    /// Envelope of `|a_n| n^(-sigma)`.
    pub fn term(&self, n: u64, sigma: f64) -> f64 {
        let x = n as f64;
        self.scale * x.powf(self.power - sigma) * (1.0 + x.ln()).powi(self.log_power as i32)
    }

    /// Upper bound for `Σ_{n > n0} |a_n| n^(-sigma)`; infinite when it diverges.
    pub fn tail_bound(&self, n0: u64, sigma: f64) -> f64 {
        let alpha = sigma - self.power;
        if !(alpha > 1.0) || self.scale == 0.0 {
            return if self.scale == 0.0 { 0.0 } else { f64::INFINITY };
        }
        // the envelope decreases from x* = exp(l/alpha - 1) on
        let l = self.log_power as f64;
        let x_star = (l / alpha - 1.0).exp();
        let mut n = n0 + 1;
        let mut sum = 0.0;
        while (n as f64) < x_star {
            sum += self.term(n, sigma);
            n += 1;
            if n > n0 + 1_000_000 {
                return f64::INFINITY;
            }
        }
        // Σ_{k>=n} g(k) <= g(n) + ∫_n^∞ g, and with 1 + ln x = ln(e x)
        // the integral is n^(1-alpha) Σ_l l!/(l-i)! ln(e n)^(l-i) / (alpha-1)^(i+1)
        let beta = alpha - 1.0;
        let le = 1.0 + (n as f64).ln();
        let k = self.log_power;
        let mut poly = 0.0;
        let mut falling = 1.0;
        for i in 0..=k {
            if i > 0 {
                falling *= (k - i + 1) as f64;
            }
            poly += falling * le.powi((k - i) as i32) / beta.powi(i as i32 + 1);
        }
        let integral = self.scale * (-beta * (n as f64).ln()).exp() * poly;
        sum + self.term(n, sigma) + integral
    }
}

/// A Dirichlet series `Σ a_n n^(-s)` with a growth envelope and, optionally,
/// a closed form for its sum.
#[derive(Clone)]
pub struct DirichletSpec {
    name: String,
    coeff: CoeffFn,
    growth: Growth,
    closed_form: Option<SeriesFn>,
    tail_sum: Option<TailSumFn>,
}

impl fmt::Debug for DirichletSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletSpec")
            .field("name", &self.name)
            .field("growth", &self.growth)
            .field("closed_form", &self.closed_form.is_some())
            .field("tail_sum", &self.tail_sum.is_some())
            .finish()
    }
}

impl DirichletSpec {
    pub fn new(name: impl Into<String>, coeff: impl Fn(u64) -> Complex64 + Send + Sync + 'static, growth: Growth) -> Self {
        Self {
            name: name.into(),
            coeff: Arc::new(coeff),
            growth,
            closed_form: None,
            tail_sum: None,
        }
    }

    /// Attaches a direct evaluator of the tails `Σ_{n>n0} a_n n^(-s)`.
    pub fn with_tail_sum(mut self, f: impl Fn(Complex64, u64, f64) -> Result<SumResult> + Send + Sync + 'static) -> Self {
        self.tail_sum = Some(Arc::new(f));
        self
    }

    /// Attaches a closed form, called only for `Re s` above the abscissa.
    pub fn with_closed_form(
        mut self,
        f: impl Fn(Complex64, &EvalConfig) -> Result<SumResult> + Send + Sync + 'static,
    ) -> Self {
        self.closed_form = Some(Arc::new(f));
        self
    }

    /// `a_n = 1`, generating ζ(s).
    pub fn ones() -> Self {
        Self::new("ones", |_| Complex64::new(1.0, 0.0), Growth::bounded(1.0))
            .with_closed_form(specialfns::zeta)
            .with_tail_sum(|s, n0, target| specialfns::zeta_tail(s, 0, n0, target, 1 << 24))
    }

    /// `a_n = μ(n)`, generating 1/ζ(s).
    pub fn mobius() -> Self {
        Self::new(
            "mobius",
            |n| Complex64::new(arith::shared_sieve().mobius(n) as f64, 0.0),
            Growth::bounded(1.0),
        )
        .with_closed_form(|s, cfg| {
            let z = specialfns::zeta(s, &tighter(cfg))?;
            quotient(SumResult::exact(Complex64::new(1.0, 0.0)), z)
        })
    }

    /// `a_n = Λ(n)`, generating -ζ'(s)/ζ(s).
    pub fn von_mangoldt() -> Self {
        Self::new(
            "von-mangoldt",
            |n| Complex64::new(arith::shared_sieve().von_mangoldt(n), 0.0),
            Growth::new(1.0, 0.0, 1),
        )
        .with_closed_form(|s, cfg| {
            let c = tighter(cfg);
            let d = specialfns::zeta_deriv(1, s, &c)?;
            let z = specialfns::zeta(s, &c)?;
            let q = quotient(d, z)?;
            Ok(SumResult { value: -q.value, ..q })
        })
    }

    /// `a_n = φ(n)`, generating ζ(s-1)/ζ(s).
    pub fn totient() -> Self {
        Self::new(
            "totient",
            |n| Complex64::new(arith::shared_sieve().totient(n) as f64, 0.0),
            Growth::new(1.0, 1.0, 0),
        )
        .with_closed_form(|s, cfg| {
            let c = tighter(cfg);
            let num = specialfns::zeta(s - 1.0, &c)?;
            let den = specialfns::zeta(s, &c)?;
            quotient(num, den)
        })
    }

    /// `a_n = χ(n)`, generating L(s, χ).
    pub fn character(table: CharacterTable) -> Self {
        let table = Arc::new(table);
        let name = format!("char:{}:{}", table.modulus(), table.index());
        let coeffs = Arc::clone(&table);
        Self::new(name, move |n| coeffs.value(n), Growth::bounded(1.0))
            .with_closed_form(move |s, cfg| specialfns::l_function(s, &table, cfg))
    }

    /// The non-principal character mod 4, generating Dirichlet's β(s).
    pub fn beta() -> Self {
        let chi = arith::character(4, 1).expect("modulus 4 has two characters");
        Self {
            name: "beta".into(),
            ..Self::character(chi)
        }
        .with_closed_form(specialfns::dirichlet_beta)
    }

    /// `a_n = n^q (ln n)^m`, generating `(-1)^m ζ^(m)(s - q)`.
    pub fn weighted(q: Complex64, m: u32) -> Result<Self> {
        if m > specialfns::MAX_DERIV_ORDER {
            return Err(Error::Domain(format!(
                "derivative order {m} exceeds {}",
                specialfns::MAX_DERIV_ORDER
            )));
        }
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite weight exponent {q}")));
        }
        let coeff = move |n: u64| {
            let ln = (n as f64).ln();
            (q * ln).exp() * ln.powi(m as i32)
        };
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        Ok(Self::new(format!("weighted({q},{m})"), coeff, Growth::new(1.0, q.re, m))
            .with_closed_form(move |s, cfg| {
                let d = specialfns::zeta_deriv(m, s - q, cfg)?;
                Ok(SumResult {
                    value: d.value * sign,
                    ..d
                })
            })
            .with_tail_sum(move |s, n0, target| {
                let d = specialfns::zeta_tail(s - q, m, n0, target, 1 << 24)?;
                Ok(SumResult {
                    value: d.value * sign,
                    ..d
                })
            }))
    }

    /// Same coefficients with `a_1` replaced by zero.
    pub fn drop_first(&self) -> Self {
        let inner = Arc::clone(&self.coeff);
        let a1 = self.coeff(1);
        let mut out = Self::new(
            format!("{}-without-first", self.name),
            move |n| if n == 1 { Complex64::new(0.0, 0.0) } else { inner(n) },
            self.growth,
        );
        out.tail_sum = self.tail_sum.clone();
        if let Some(f) = self.closed_form.clone() {
            out = out.with_closed_form(move |s, cfg| {
                let r = f(s, cfg)?;
                Ok(SumResult {
                    value: r.value - a1,
                    ..r
                })
            });
        }
        out
    }

    /// Coefficients `a_n n^q ln^m(n)`; keeps a closed form only for the all-ones spec.
    pub fn weighted_by(&self, q: Complex64, m: u32) -> Result<Self> {
        if self.name == "ones" {
            return Self::weighted(q, m);
        }
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite weight exponent {q}")));
        }
        let inner = Arc::clone(&self.coeff);
        let g = self.growth;
        Ok(Self::new(
            format!("{}*weighted({q},{m})", self.name),
            move |n| {
                let ln = (n as f64).ln();
                inner(n) * (q * ln).exp() * ln.powi(m as i32)
            },
            Growth::new(g.scale, g.power + q.re, g.log_power + m),
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coeff(&self, n: u64) -> Complex64 {
        (self.coeff)(n)
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    pub fn sigma_a(&self) -> f64 {
        self.growth.abscissa()
    }

    pub fn has_closed_form(&self) -> bool {
        self.closed_form.is_some()
    }

    pub fn has_tail_sum(&self) -> bool {
        self.tail_sum.is_some()
    }

    /// `Σ_{n>n0} a_n n^(-s)`: directly when a tail evaluator is attached,
    /// otherwise as the closed form minus the partial sum.
    pub fn tail(&self, s: Complex64, n0: u64, abs_target: f64, cfg: &EvalConfig) -> Result<SumResult> {
        self.check_abscissa(s)?;
        if let Some(t) = &self.tail_sum {
            return t(s, n0, abs_target);
        }
        let f = self.value(s, &cfg.with_target(abs_target.max(crate::config::MIN_TARGET_ABS_ERROR)))?;
        let mut partial = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for n in 1..=n0 {
            let a = self.coeff(n);
            if a != Complex64::new(0.0, 0.0) {
                let t = a * pow_neg((n as f64).ln(), s);
                partial += t;
                abs += t.norm();
            }
        }
        let err = f.abs_error_estimate + 2.0 * f64::EPSILON * (abs + f.value.norm());
        SumResult::new(f.value - partial, err, f.terms_used.max(n0 as usize), f.method).finite()
    }

    /// DomainError unless `Re s` exceeds the abscissa of absolute convergence.
    pub fn check_abscissa(&self, s: Complex64) -> Result<()> {
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite argument s = {s}")));
        }
        if s.re <= self.sigma_a() + DOMAIN_EPS {
            return Err(Error::Domain(format!(
                "{}: Re(s) = {} is not above the abscissa {}",
                self.name,
                s.re,
                self.sigma_a()
            )));
        }
        Ok(())
    }

    /// `Σ_{n <= n_max} a_n n^(-s)`.
    pub fn partial_sum(&self, s: Complex64, n_max: u64) -> Complex64 {
        (1..=n_max)
            .map(|n| {
                let a = self.coeff(n);
                if a == Complex64::new(0.0, 0.0) {
                    a
                } else {
                    a * pow_neg((n as f64).ln(), s)
                }
            })
            .sum()
    }

    /// Sum of the series at `s`, by closed form when available.
    pub fn value(&self, s: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
        self.check_abscissa(s)?;
        if let Some(f) = &self.closed_form {
            return f(s, cfg);
        }
        let g = self.growth;
        sum_with_tail(
            |n| {
                let a = self.coeff(n);
                Ok(if a == Complex64::new(0.0, 0.0) {
                    a
                } else {
                    a * pow_neg((n as f64).ln(), s)
                })
            },
            |n| g.tail_bound(n, s.re),
            32,
            cfg,
            true,
        )
    }
}

fn tighter(cfg: &EvalConfig) -> EvalConfig {
    cfg.with_target((cfg.target_abs_error / 4.0).max(crate::config::MIN_TARGET_ABS_ERROR))
}

/// `a / b` with first-order error propagation, made rigorous by using `|b| - err_b`.
fn quotient(a: SumResult, b: SumResult) -> Result<SumResult> {
    let denom = b.value.norm() - b.abs_error_estimate;
    if !(denom > 0.0) {
        return Err(Error::Convergence(format!("denominator {} not resolved", b.value)));
    }
    let value = a.value / b.value;
    let err = (a.abs_error_estimate + value.norm() * b.abs_error_estimate) / denom + 2.0 * f64::EPSILON * value.norm();
    SumResult::new(value, err, a.terms_used.max(b.terms_used), a.method).finite()
}

pub type MajorantFn = Arc<dyn Fn(u64, f64) -> f64 + Send + Sync>;
pub type AnalyticFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A power series `f(z) = Σ_{k>=1} a_k z^k` with radius of convergence and a
/// majorant `majorant(k0, r) >= Σ_{k>=k0} |a_k| r^k` for `r` below the radius.
#[derive(Clone)]
pub struct PowerSeriesSpec {
    name: String,
    coeff: CoeffFn,
    radius: f64,
    closed_form: Option<AnalyticFn>,
    majorant: MajorantFn,
}

impl fmt::Debug for PowerSeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PowerSeriesSpec")
            .field("name", &self.name)
            .field("radius", &self.radius)
            .field("closed_form", &self.closed_form.is_some())
            .finish()
    }
}

fn ln_factorial(k: u64) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `Σ_{k>=k0} r^k / k!`.
fn factorial_majorant(k0: u64, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let mut k = k0.max(1);
    let mut term = (k as f64 * r.ln() - ln_factorial(k)).exp();
    let mut sum = 0.0;
    loop {
        sum += term;
        let ratio = r / (k + 1) as f64;
        if ratio < 0.5 {
            return sum + term * ratio / (1.0 - ratio);
        }
        term *= ratio;
        k += 1;
    }
}

impl PowerSeriesSpec {
    pub fn new(
        name: impl Into<String>,
        coeff: impl Fn(u64) -> Complex64 + Send + Sync + 'static,
        radius: f64,
        majorant: impl Fn(u64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            coeff: Arc::new(coeff),
            radius,
            closed_form: None,
            majorant: Arc::new(majorant),
        }
    }

    /// Power series with `|a_k| <= scale · rho^(-k)`; radius `rho`.
    pub fn with_geometric_bound(
        name: impl Into<String>,
        coeff: impl Fn(u64) -> Complex64 + Send + Sync + 'static,
        scale: f64,
        rho: f64,
    ) -> Self {
        Self::new(name, coeff, rho, move |k0, r| {
            let x = r / rho;
            if x >= 1.0 {
                f64::INFINITY
            } else {
                scale * x.powi(k0.max(1) as i32) / (1.0 - x)
            }
        })
    }

    /// Polynomial `Σ_{k=1}^{d} c_k z^k`; `coeffs[0]` is `c_1`.
    pub fn polynomial(name: impl Into<String>, coeffs: Vec<Complex64>) -> Self {
        let cs = Arc::new(coeffs);
        let for_coeff = Arc::clone(&cs);
        let p = Arc::clone(&cs);
        let mut out = Self::new(
            name,
            move |k| {
                if k == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    for_coeff.get(k as usize - 1).copied().unwrap_or_default()
                }
            },
            f64::INFINITY,
            move |k0, r| {
                cs.iter()
                    .enumerate()
                    .filter(|(i, _)| *i as u64 + 1 >= k0)
                    .map(|(i, c)| c.norm() * r.powi(i as i32 + 1))
                    .sum()
            },
        );
        out.closed_form = Some(Arc::new(move |z| p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| (acc + c) * z)));
        out
    }

    pub fn with_closed_form(mut self, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.closed_form = Some(Arc::new(f));
        self
    }

    /// `e^z - 1`.
    pub fn exp_minus_one() -> Self {
        Self::new(
            "exp-minus-one",
            |k| {
                if k == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new((-ln_factorial(k)).exp(), 0.0)
                }
            },
            f64::INFINITY,
            factorial_majorant,
        )
        .with_closed_form(exp_m1)
    }

    /// `ln(1 + z)`.
    pub fn ln_one_plus() -> Self {
        Self::new(
            "ln-one-plus",
            |k| {
                if k == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                    Complex64::new(sign / k as f64, 0.0)
                }
            },
            1.0,
            |k0, r| {
                if r >= 1.0 {
                    f64::INFINITY
                } else {
                    let k0 = k0.max(1);
                    r.powi(k0 as i32) / (k0 as f64 * (1.0 - r))
                }
            },
        )
        .with_closed_form(|z| (1.0 + z).ln())
    }

    /// `sin z`.
    pub fn sin() -> Self {
        Self::new(
            "sin",
            |k| {
                if k % 2 == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    let sign = if k % 4 == 1 { 1.0 } else { -1.0 };
                    Complex64::new(sign * (-ln_factorial(k)).exp(), 0.0)
                }
            },
            f64::INFINITY,
            factorial_majorant,
        )
        .with_closed_form(|z| z.sin())
    }

    /// `f(z) = z`.
    pub fn identity() -> Self {
        Self::polynomial("identity", vec![Complex64::new(1.0, 0.0)])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coeff(&self, k: u64) -> Complex64 {
        if k == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            (self.coeff)(k)
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn majorant(&self, k0: u64, r: f64) -> f64 {
        (self.majorant)(k0, r)
    }

    pub fn has_closed_form(&self) -> bool {
        self.closed_form.is_some()
    }

    /// Index of the first non-zero coefficient, searched up to `k = 64`.
    pub fn leading_index(&self) -> u64 {
        (1..=64).find(|&k| self.coeff(k) != Complex64::new(0.0, 0.0)).unwrap_or(64)
    }

    /// `f(w)`, by closed form or by summing the series inside its disc.
    pub fn eval(&self, w: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
        if let Some(f) = &self.closed_form {
            let v = f(w);
            return SumResult::new(v, 4.0 * f64::EPSILON * v.norm().max(f64::MIN_POSITIVE), 0, Method::ClosedForm)
                .finite();
        }
        let r = w.norm();
        if r >= self.radius {
            return Err(Error::Radius(format!(
                "{}: |w| = {r} is outside the radius {}",
                self.name, self.radius
            )));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        let mut wk = Complex64::new(1.0, 0.0);
        let mut abs = 0.0;
        for k in 1..=cfg.max_terms as u64 {
            wk *= w;
            let t = self.coeff(k) * wk;
            sum += t;
            abs += t.norm();
            let tail = self.majorant(k + 1, r);
            if tail <= cfg.target_abs_error {
                return SumResult::new(sum, tail + 2.0 * f64::EPSILON * abs, k as usize, Method::Direct).finite();
            }
        }
        Err(Error::Convergence(format!(
            "{}: power series at {w} not converged within {} terms",
            self.name, cfg.max_terms
        )))
    }
}

pub type LambdaFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;
pub type ExpTailFn = Arc<dyn Fn(u64, f64) -> f64 + Send + Sync>;

/// A general Dirichlet series `D(s) = Σ e^(-λ_n s)` with increasing exponents.
///
/// `tail_bound(N, sigma)` must bound `Σ_{n>N} e^(-λ_n sigma)` for `sigma > sigma_a`.
#[derive(Clone)]
pub struct GeneralDirichletSpec {
    name: String,
    lambda: LambdaFn,
    sigma_a: f64,
    tail_bound: ExpTailFn,
    closed_form: Option<SeriesFn>,
}

impl fmt::Debug for GeneralDirichletSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneralDirichletSpec")
            .field("name", &self.name)
            .field("sigma_a", &self.sigma_a)
            .field("closed_form", &self.closed_form.is_some())
            .finish()
    }
}

impl GeneralDirichletSpec {
    /// Validates that `λ_1 >= 0` and the exponents strictly increase over the first thousand terms.
    pub fn new(
        name: impl Into<String>,
        lambda: impl Fn(u64) -> f64 + Send + Sync + 'static,
        sigma_a: f64,
        tail_bound: impl Fn(u64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let name = name.into();
        let first = lambda(1);
        if !(first >= 0.0) {
            return Err(Error::Domain(format!("{name}: λ_1 = {first} must be non-negative")));
        }
        let mut prev = first;
        for n in 2..=1000 {
            let l = lambda(n);
            if !(l > prev) {
                return Err(Error::Domain(format!("{name}: exponents not increasing at n = {n}")));
            }
            prev = l;
        }
        Ok(Self {
            name,
            lambda: Arc::new(lambda),
            sigma_a,
            tail_bound: Arc::new(tail_bound),
            closed_form: None,
        })
    }

    pub fn with_closed_form(
        mut self,
        f: impl Fn(Complex64, &EvalConfig) -> Result<SumResult> + Send + Sync + 'static,
    ) -> Self {
        self.closed_form = Some(Arc::new(f));
        self
    }

    /// `λ_n = n`, so `D(s) = 1/(e^s - 1)`.
    pub fn linear() -> Self {
        Self::new("linear", |n| n as f64, 0.0, |n, sigma| {
            (-(n as f64 + 1.0) * sigma).exp() / (-(-sigma).exp_m1())
        })
        .expect("λ_n = n increases")
        .with_closed_form(|s, _| {
            let v = 1.0 / exp_m1(s);
            SumResult::new(v, 4.0 * f64::EPSILON * v.norm(), 0, Method::ClosedForm).finite()
        })
    }

    /// `λ_n = ln n`, so `D(s) = ζ(s)`.
    pub fn logarithmic() -> Self {
        Self::new("log", |n| (n as f64).ln(), 1.0, |n, sigma| {
            Growth::bounded(1.0).tail_bound(n, sigma)
        })
        .expect("ln n increases")
        .with_closed_form(specialfns::zeta)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lambda(&self, n: u64) -> f64 {
        (self.lambda)(n)
    }

    pub fn sigma_a(&self) -> f64 {
        self.sigma_a
    }

    pub fn tail_bound(&self, n: u64, sigma: f64) -> f64 {
        if sigma <= self.sigma_a {
            f64::INFINITY
        } else {
            (self.tail_bound)(n, sigma)
        }
    }

    pub fn has_closed_form(&self) -> bool {
        self.closed_form.is_some()
    }

    pub fn check_abscissa(&self, s: Complex64) -> Result<()> {
        if !(s.re.is_finite() && s.im.is_finite()) || s.re <= self.sigma_a + DOMAIN_EPS {
            return Err(Error::Domain(format!(
                "{}: Re(s) = {} is not above the abscissa {}",
                self.name, s.re, self.sigma_a
            )));
        }
        Ok(())
    }

    pub fn partial_sum(&self, s: Complex64, n_max: u64) -> Complex64 {
        (1..=n_max).map(|n| (-s * self.lambda(n)).exp()).sum()
    }

    /// `Σ_n e^(-λ_n sigma)`, an upper bound for `|D(s)|` at `Re s = sigma`.
    pub fn abs_bound(&self, sigma: f64) -> f64 {
        const M: u64 = 64;
        (1..=M).map(|n| (-sigma * self.lambda(n)).exp()).sum::<f64>() + self.tail_bound(M, sigma)
    }

    pub fn value(&self, s: Complex64, cfg: &EvalConfig) -> Result<SumResult> {
        self.check_abscissa(s)?;
        if let Some(f) = &self.closed_form {
            return f(s, cfg);
        }
        sum_with_tail(
            |n| Ok((-s * self.lambda(n)).exp()),
            |n| self.tail_bound(n, s.re),
            32,
            cfg,
            false,
        )
    }
}

/// Coefficient and denominator sequences for `Σ a_n / (b_n - z)`.
///
/// `growth` bounds `|a_n|`; `b_lower = (B, beta)` asserts `|b_n| >= B n^beta`.
#[derive(Clone)]
pub struct SequenceSpec {
    name: String,
    a: CoeffFn,
    b: CoeffFn,
    growth: Growth,
    b_lower: (f64, f64),
    moments: Option<MomentFn>,
}

/// `j ↦ Σ_n a_n b_n^(-j)` in closed form.
pub type MomentFn = Arc<dyn Fn(u32, &EvalConfig) -> Result<SumResult> + Send + Sync>;

impl fmt::Debug for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceSpec")
            .field("name", &self.name)
            .field("growth", &self.growth)
            .field("b_lower", &self.b_lower)
            .field("moments", &self.moments.is_some())
            .finish()
    }
}

impl SequenceSpec {
    /// Validates the lower envelope and that `|b_n|` is non-decreasing over the first thousand terms.
    pub fn new(
        name: impl Into<String>,
        a: impl Fn(u64) -> Complex64 + Send + Sync + 'static,
        b: impl Fn(u64) -> Complex64 + Send + Sync + 'static,
        growth: Growth,
        b_lower: (f64, f64),
    ) -> Result<Self> {
        let name = name.into();
        let (scale, beta) = b_lower;
        if !(scale > 0.0) || beta - growth.power <= 1.0 {
            return Err(Error::Domain(format!(
                "{name}: need |b_n| >= B n^beta with B > 0 and beta > {} for absolute convergence",
                growth.abscissa()
            )));
        }
        let mut prev = 0.0;
        for n in 1..=1000u64 {
            let bn = b(n).norm();
            if bn < prev || bn < scale * (n as f64).powf(beta) * (1.0 - 1e-12) {
                return Err(Error::Domain(format!("{name}: |b_n| envelope violated at n = {n}")));
            }
            prev = bn;
        }
        Ok(Self {
            name,
            a: Arc::new(a),
            b: Arc::new(b),
            growth,
            b_lower,
            moments: None,
        })
    }

    /// Attaches closed forms for the moments `Σ a_n b_n^(-j)`, `j >= 1`.
    pub fn with_moments(mut self, f: impl Fn(u32, &EvalConfig) -> Result<SumResult> + Send + Sync + 'static) -> Self {
        self.moments = Some(Arc::new(f));
        self
    }

    /// `a_n = 1`, `b_n = n^2 + n`.
    pub fn reciprocal_quadratic() -> Self {
        Self::new(
            "n2n",
            |_| Complex64::new(1.0, 0.0),
            |n| Complex64::new((n * n + n) as f64, 0.0),
            Growth::bounded(1.0),
            (1.0, 2.0),
        )
        .expect("n^2 + n >= n^2")
    }

    /// `b_n = n^s` and the coefficients of `spec`; the sequence form of a Dirichlet identity.
    pub fn from_dirichlet(spec: &DirichletSpec, s: Complex64) -> Result<Self> {
        spec.check_abscissa(s)?;
        let spec_a = spec.clone();
        let spec_m = spec.clone();
        Ok(Self::new(
            format!("{}^{s}", spec.name()),
            move |n| spec_a.coeff(n),
            move |n| (s * (n as f64).ln()).exp(),
            spec.growth(),
            (1.0, s.re),
        )?
        .with_moments(move |j, cfg| spec_m.value(s * j as f64, cfg)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn a(&self, n: u64) -> Complex64 {
        (self.a)(n)
    }

    pub fn b(&self, n: u64) -> Complex64 {
        (self.b)(n)
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    pub fn has_moments(&self) -> bool {
        self.moments.is_some()
    }

    /// `Σ_n a_n b_n^(-j)`: closed form when attached, otherwise summed with
    /// the envelope tail bound and a Richardson fallback.
    pub fn moment(&self, j: u32, cfg: &EvalConfig) -> Result<SumResult> {
        if let Some(m) = &self.moments {
            return m(j, cfg);
        }
        sum_with_tail(
            |n| Ok(self.a(n) / self.b(n).powi(j as i32)),
            |n| self.tail_bound(n, j as f64),
            32,
            cfg,
            true,
        )
    }

    /// Upper bound for `Σ_{n>n0} |a_n| |b_n|^(-j)`.
    pub fn tail_bound(&self, n0: u64, j: f64) -> f64 {
        let (scale, beta) = self.b_lower;
        scale.powf(-j) * self.growth.tail_bound(n0, beta * j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn growth_tail_bound_dominates_brute_force() {
        for g in [Growth::bounded(1.0), Growth::new(1.0, 0.0, 1), Growth::new(1.0, 1.0, 0), Growth::new(2.0, 0.5, 3)] {
            for sigma in [2.2, 3.0, 5.5] {
                let n0 = 10;
                let brute: f64 = (n0 + 1..2_000_000).map(|n| g.term(n, sigma)).sum();
                let bound = g.tail_bound(n0, sigma);
                if sigma - g.power > 1.3 {
                    assert!(bound >= brute, "{g:?} sigma={sigma}: {bound} < {brute}");
                    assert!(bound < 3.0 * brute + 1e-300, "{g:?} sigma={sigma}: {bound} loose vs {brute}");
                }
            }
        }
        assert!(Growth::bounded(1.0).tail_bound(5, 1.0).is_infinite());
    }

    #[test]
    fn closed_forms_match_partial_sums() {
        let cfg = EvalConfig::default();
        let s = Complex64::new(3.5, 0.7);
        let specs = [
            DirichletSpec::ones(),
            DirichletSpec::mobius(),
            DirichletSpec::von_mangoldt(),
            DirichletSpec::totient(),
            DirichletSpec::beta(),
            DirichletSpec::character(arith::character(5, 2).unwrap()),
            DirichletSpec::weighted(c(0.5), 2).unwrap(),
            DirichletSpec::ones().drop_first(),
        ];
        for spec in specs {
            let n = 200_000;
            let partial = spec.partial_sum(s, n);
            let tail = spec.growth().tail_bound(n, s.re);
            let v = spec.value(s, &cfg).unwrap();
            assert!(
                (v.value - partial).norm() <= tail + 1e-10,
                "{}: {} vs {} (tail {tail})",
                spec.name(),
                v.value,
                partial
            );
        }
    }

    #[test]
    fn value_without_closed_form_uses_tail_bound() {
        let cfg = EvalConfig::default().with_target(1e-10);
        let plain = DirichletSpec::new("ones", |_| c(1.0), Growth::bounded(1.0));
        let r = plain.value(c(4.0), &cfg).unwrap();
        let pi4 = std::f64::consts::PI.powi(4) / 90.0;
        assert!((r.value.re - pi4).abs() < 1e-10);
        assert!(r.abs_error_estimate <= 1e-10);
    }

    #[test]
    fn abscissa_is_enforced() {
        let cfg = EvalConfig::default();
        assert!(matches!(DirichletSpec::totient().value(c(2.0), &cfg), Err(Error::Domain(_))));
        assert!(DirichletSpec::totient().value(c(2.5), &cfg).is_ok());
        assert!(matches!(DirichletSpec::ones().value(c(0.5), &cfg), Err(Error::Domain(_))));
    }

    #[test]
    fn power_series_majorants_bound_tails() {
        for f in [
            PowerSeriesSpec::exp_minus_one(),
            PowerSeriesSpec::ln_one_plus(),
            PowerSeriesSpec::sin(),
            PowerSeriesSpec::identity(),
        ] {
            let r: f64 = 0.7;
            for k0 in [1u64, 3, 10] {
                let brute: f64 = (k0..400).map(|k| f.coeff(k).norm() * r.powi(k as i32)).sum();
                assert!(f.majorant(k0, r) >= brute * (1.0 - 1e-12), "{} k0={k0}", f.name());
            }
        }
        let cfg = EvalConfig::default();
        let w = Complex64::new(0.3, -0.4);
        for f in [PowerSeriesSpec::exp_minus_one(), PowerSeriesSpec::ln_one_plus(), PowerSeriesSpec::sin()] {
            let series = PowerSeriesSpec::new("copy", {
                let g = f.clone();
                move |k| g.coeff(k)
            }, f.radius(), {
                let g = f.clone();
                move |k0, r| g.majorant(k0, r)
            });
            let a = series.eval(w, &cfg).unwrap();
            let b = f.eval(w, &cfg).unwrap();
            assert!((a.value - b.value).norm() < 1e-12, "{}", f.name());
        }
    }

    #[test]
    fn general_dirichlet_specs() {
        let cfg = EvalConfig::default();
        let s = Complex64::new(1.5, 0.2);
        let lin = GeneralDirichletSpec::linear();
        let direct = lin.partial_sum(s, 200);
        assert!((lin.value(s, &cfg).unwrap().value - direct).norm() < 1e-12);
        assert!(lin.abs_bound(1.5) >= direct.norm());
        assert!(GeneralDirichletSpec::new("bad", |n| 5.0 - n as f64, 0.0, |_, _| 0.0).is_err());
        assert!(matches!(
            GeneralDirichletSpec::logarithmic().value(c(1.0), &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sequence_validation() {
        assert!(SequenceSpec::new("bad", |_| c(1.0), |n| c(n as f64), Growth::bounded(1.0), (1.0, 1.0)).is_err());
        let seq = SequenceSpec::reciprocal_quadratic();
        assert_eq!(seq.b(3), c(12.0));
        let brute: f64 = (11..1_000_000u64).map(|n| 1.0 / (n * n + n) as f64).sum();
        assert!(seq.tail_bound(10, 1.0) >= brute);
    }
}
