//! The verification corpus: worked identities with known values, plus
//! seeded random instances of every identity family.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::catalog::{self, Params};
use crate::config::EvalConfig;
use crate::error::Result;
use crate::report::{IdentityReport, SuiteReport};
use crate::result::SumResult;
use crate::series::{self, DirichletSpec, PowerSeriesSpec, SequenceSpec};
use crate::summation::SummationMethod;

type Evaluation = Box<dyn Fn() -> Result<(SumResult, SumResult)> + Send + Sync>;

/// One corpus entry: a description and a thunk producing its two sides.
pub struct CorpusCase {
    pub id: String,
    pub description: String,
    eval: Evaluation,
}

impl CorpusCase {
    fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        eval: impl Fn() -> Result<(SumResult, SumResult)> + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            eval: Box::new(eval),
        }
    }

    pub fn run(&self, tolerance: f64) -> IdentityReport {
        match (self.eval)() {
            Ok((l, r)) => IdentityReport::compare(self.id.clone(), &l, &r, tolerance),
            Err(e) => IdentityReport::from_error(self.id.clone(), &e, tolerance),
        }
        .with_note(self.description.clone())
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn exact(v: f64) -> SumResult {
    SumResult::exact(c(v))
}

/// Settings for summability on the unit circle.
fn boundary_cfg() -> EvalConfig {
    EvalConfig::default().with_target(1e-9).with_max_terms(1 << 23)
}

fn scaled(r: SumResult, k: f64) -> SumResult {
    SumResult {
        value: r.value * k,
        abs_error_estimate: r.abs_error_estimate * k.abs(),
        ..r
    }
}

/// π/(2w) coth(πw) - 1/(2w²).
pub fn coth_closed_form(w: f64) -> f64 {
    PI / (2.0 * w) / (PI * w).tanh() - 1.0 / (2.0 * w * w)
}

/// Σ 1/(n⁴ + 1) = -1/2 + (π√2/4)(sinh π√2 + sin π√2)/(cosh π√2 - cos π√2).
pub fn quartic_closed_form() -> f64 {
    let x = PI * SQRT_2;
    -0.5 + x / 4.0 * (x.sinh() + x.sin()) / (x.cosh() - x.cos())
}

/// Σ 1/(n² + n - 1) = 1 + (√5/5) π tan(π√5/2).
pub fn quadratic_sequence_closed_form() -> f64 {
    let r5 = 5f64.sqrt();
    1.0 + r5 / 5.0 * PI * (PI * r5 / 2.0).tan()
}

fn pf_cases(id: &str, spec_name: &'static str, s: f64, zs: &[(&str, Complex64)]) -> Vec<CorpusCase> {
    zs.iter()
        .map(|&(label, z)| {
            CorpusCase::new(
                format!("{id}/z={label}"),
                format!("Σ a_n/(n^{s}+z) against Σ (-1)^k f(ks+s) z^k for a_n from {spec_name}"),
                move || {
                    let spec = catalog::spec_by_name(spec_name)?;
                    let cfg = EvalConfig::default();
                    Ok((
                        series::lhs_partial_fraction(&spec, c(s), z, &cfg)?,
                        series::rhs_zeta_series(&spec, c(s), z, SummationMethod::Direct, &cfg)?,
                    ))
                },
            )
        })
        .collect()
}

fn worked_cases() -> Vec<CorpusCase> {
    let mut out = Vec::new();
    for w in [0.3, 0.5, 0.9] {
        out.push(CorpusCase::new(
            format!("1/z={w}"),
            "Σ 1/(n²+w²) against the coth closed form",
            move || {
                let l = series::lhs_partial_fraction(&DirichletSpec::ones(), c(2.0), c(w * w), &EvalConfig::default())?;
                Ok((l, exact(coth_closed_form(w))))
            },
        ));
    }
    out.push(CorpusCase::new("7.1", "Σ 1/(n²+1) against the (C,1) sum of Σ (-1)^k ζ(2k+2)", || {
        let ones = DirichletSpec::ones();
        let cfg = boundary_cfg();
        Ok((
            series::lhs_partial_fraction(&ones, c(2.0), c(1.0), &cfg)?,
            series::rhs_zeta_series(&ones, c(2.0), c(1.0), SummationMethod::Cesaro(1), &cfg)?,
        ))
    }));
    out.push(CorpusCase::new("7.2", "Σ 1/(n³+1) against the (C,1) sum of Σ (-1)^k ζ(3k+3)", || {
        let ones = DirichletSpec::ones();
        let cfg = boundary_cfg();
        Ok((
            series::lhs_partial_fraction(&ones, c(3.0), c(1.0), &cfg)?,
            series::rhs_zeta_series(&ones, c(3.0), c(1.0), SummationMethod::Cesaro(1), &cfg)?,
        ))
    }));
    out.push(CorpusCase::new("7.3", "Σ 1/(n²+1)² against the (C,2) sum of Σ (-1)^(k+1) k ζ(2k+2)", || {
        let ones = DirichletSpec::ones();
        let cfg = boundary_cfg();
        Ok((
            series::lhs_derivative(&ones, c(2.0), c(1.0), 1, &cfg)?,
            series::rhs_derivative(&ones, c(2.0), c(1.0), 1, SummationMethod::Cesaro(2), &cfg)?,
        ))
    }));
    out.push(CorpusCase::new("7.4", "Σ ln(1+1/n²) against the Abel limit of Σ (-1)^(k+1) ζ(2k) z^k/k", || {
        let f = PowerSeriesSpec::ln_one_plus();
        let cfg = boundary_cfg();
        Ok((
            series::compose_lhs(&f, c(2.0), c(1.0), &cfg)?,
            series::compose_rhs(&f, c(2.0), c(1.0), SummationMethod::abel(), &cfg)?,
        ))
    }));
    out.push(CorpusCase::new("7.4/closed", "Σ ln(1+1/n²) against ln(sinh π/π)", || {
        let l = series::compose_lhs(&PowerSeriesSpec::ln_one_plus(), c(2.0), c(1.0), &EvalConfig::default())?;
        Ok((l, exact((PI.sinh() / PI).ln())))
    }));
    out.push(CorpusCase::new("7.5", "Σ (e^(1/n²) - 1) against Σ ζ(2k)/k!", || {
        let pair = series::compose_series(&PowerSeriesSpec::exp_minus_one(), c(2.0), c(1.0), &EvalConfig::default())?;
        Ok((pair.lhs, pair.rhs))
    }));
    out.push(CorpusCase::new("7.6", "Σ sin(1/(2n²)) against Σ (-1)^k ζ(4k+2)/(2^(2k+1)(2k+1)!)", || {
        let pair = series::compose_series(&PowerSeriesSpec::sin(), c(2.0), c(0.5), &EvalConfig::default())?;
        Ok((pair.lhs, pair.rhs))
    }));
    let zs = [("0.5", c(0.5)), ("-0.5", c(-0.5)), ("0.9i", Complex64::new(0.0, 0.9))];
    out.extend(pf_cases("7.7", "mobius", 2.0, &zs));
    out.extend(pf_cases("7.8", "von-mangoldt", 2.0, &zs));
    out.extend(pf_cases("7.9", "totient", 3.0, &zs));
    out.extend(pf_cases("7.10", "beta", 2.0, &zs));
    out.push(CorpusCase::new(
        "7.10/shifted",
        "Σ_{n>=2} χ₄(n)/(n²+z) against Σ (-1)^k (β(2k+2) - 1) z^k",
        || {
            let spec = DirichletSpec::beta().drop_first();
            let cfg = EvalConfig::default();
            let z = c(0.5);
            Ok((
                series::lhs_partial_fraction(&spec, c(2.0), z, &cfg)?,
                series::rhs_zeta_series(&spec, c(2.0), z, SummationMethod::Direct, &cfg)?,
            ))
        },
    ));
    out.push(CorpusCase::new("7.11", "Σ ζ(2n)/4^n = 1/2", || {
        let r = series::rhs_zeta_series(&DirichletSpec::ones(), c(2.0), c(-0.25), SummationMethod::Direct, &EvalConfig::default())?;
        Ok((scaled(r, 0.25), exact(0.5)))
    }));
    out.push(CorpusCase::new("7.11/lhs", "Σ 1/(n² - 1/4) = 2", || {
        let l = series::lhs_partial_fraction(&DirichletSpec::ones(), c(2.0), c(-0.25), &EvalConfig::default())?;
        Ok((l, exact(2.0)))
    }));
    out.push(CorpusCase::new("7.12", "Σ ζ(2n)/16^n = 1/2 - π/8", || {
        let r = series::rhs_zeta_series(
            &DirichletSpec::ones(),
            c(2.0),
            c(-1.0 / 16.0),
            SummationMethod::Direct,
            &EvalConfig::default(),
        )?;
        Ok((scaled(r, 1.0 / 16.0), exact(0.5 - PI / 8.0)))
    }));
    out.push(CorpusCase::new("7.13", "Σ 1/(n⁴+1) against its closed form", || {
        let l = series::lhs_partial_fraction(&DirichletSpec::ones(), c(4.0), c(1.0), &EvalConfig::default())?;
        Ok((l, exact(quartic_closed_form())))
    }));
    out.push(CorpusCase::new("7.13/rhs", "Abel limit of Σ (-1)^k ζ(4k+4) against the closed form", || {
        let r = series::rhs_zeta_series(&DirichletSpec::ones(), c(4.0), c(1.0), SummationMethod::abel(), &boundary_cfg())?;
        Ok((r, exact(quartic_closed_form())))
    }));
    out.push(CorpusCase::new("7.14", "Σ 1/(n²+n-1) both sides of the sequence identity", || {
        let seq = SequenceSpec::reciprocal_quadratic();
        let pair = series::sequence_series(&seq, c(1.0), SummationMethod::Direct, &EvalConfig::default())?;
        Ok((pair.lhs, pair.rhs))
    }));
    out.push(CorpusCase::new("7.14/closed", "Σ 1/(n²+n-1) against its closed form", || {
        let seq = SequenceSpec::reciprocal_quadratic();
        let l = series::sequence_lhs(&seq, c(1.0), 0, &EvalConfig::default())?;
        Ok((l, exact(quadratic_sequence_closed_form())))
    }));
    out
}

/// Seed of the random corpus instances.
pub const RANDOM_SEED: u64 = 0x5eed_2e7a;

/// Number of random instances in the corpus.
pub const RANDOM_CASES: usize = 18;

/// A random admissible instance of identity family `id`, with `|z| <= 0.9`.
pub fn random_params(id: &str, rng: &mut StdRng) -> Params {
    let mut p = Params::default();
    let r: f64 = rng.gen_range(0.0..0.9);
    let theta: f64 = rng.gen_range(-PI..PI);
    p.z = Complex64::from_polar(r, theta);
    p.s = Complex64::new(rng.gen_range(2.2..4.0), rng.gen_range(-1.0..1.0));
    let specs = ["ones", "mobius", "von-mangoldt", "beta", "char:5:1"];
    p.spec = specs[rng.gen_range(0..specs.len())].to_string();
    match id {
        "weighted" => {
            p.m = rng.gen_range(0..3);
            p.q = c(rng.gen_range(-0.5..(p.s.re - 1.2)));
        }
        "derivative" => p.m = rng.gen_range(1..4),
        "dirichlet" | "sequence" => {
            if rng.gen_bool(0.3) {
                p.spec = "totient".into();
                p.s.re += 1.0;
            }
            p.seq = "dirichlet".into();
        }
        "multi-factor" => {
            p.factors = (0..rng.gen_range(2..4))
                .map(|_| {
                    series::Factor::new(
                        Complex64::new(rng.gen_range(1.5..3.0), rng.gen_range(-0.5..0.5)),
                        Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(-PI..PI)),
                    )
                })
                .collect();
        }
        "compose" | "dirichlet-compose" | "general-dirichlet" => {
            let fs = ["exp", "sin", "identity", "ln"];
            p.f = fs[rng.gen_range(0..fs.len())].to_string();
            p.s_prime = Complex64::new(rng.gen_range(0.0..1.0), rng.gen_range(-0.5..0.5));
            p.lambda = if rng.gen_bool(0.5) { "linear" } else { "log" }.into();
        }
        _ => {}
    }
    p
}

fn random_cases() -> Vec<CorpusCase> {
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
    (0..RANDOM_CASES)
        .map(|i| {
            let id = catalog::IDENTITIES[i % catalog::IDENTITIES.len()];
            let p = random_params(id, &mut rng);
            CorpusCase::new(
                format!("random/{i:02}/{id}"),
                format!("{id} at s = {}, z = {}, spec {}", p.s, p.z, p.spec),
                move || {
                    let cfg = EvalConfig::default();
                    Ok((
                        catalog::evaluate(id, catalog::Side::Lhs, &p, &cfg)?,
                        catalog::evaluate(id, catalog::Side::Rhs, &p, &cfg)?,
                    ))
                },
            )
        })
        .collect()
}

/// The full corpus.
pub fn corpus() -> Vec<CorpusCase> {
    let mut all = worked_cases();
    all.extend(random_cases());
    all
}

/// Runs every case whose id equals `only` or starts with `only/`, or all of them.
pub fn run_suite(tolerance: f64, only: Option<&str>) -> SuiteReport {
    let cases: Vec<CorpusCase> = corpus()
        .into_iter()
        .filter(|case| match only {
            Some(sel) => case.id == sel || case.id.starts_with(&format!("{sel}/")),
            None => true,
        })
        .collect();
    let reports = cases.par_iter().map(|case| case.run(tolerance)).collect();
    SuiteReport::new(tolerance, reports)
}
