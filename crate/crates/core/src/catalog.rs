//! Named identities, specs and argument parsing shared by the CLI and the corpus.

use num_complex::Complex64;

use crate::arith;
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::report::IdentityReport;
use crate::result::SumResult;
use crate::series::{self, DirichletSpec, Factor, GeneralDirichletSpec, PowerSeriesSpec, SequenceSpec};
use crate::summation::SummationMethod;

/// Identity families accepted by [`evaluate`].
pub const IDENTITIES: [&str; 9] = [
    "order-p",
    "weighted",
    "derivative",
    "multi-factor",
    "dirichlet",
    "compose",
    "dirichlet-compose",
    "general-dirichlet",
    "sequence",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lhs,
    Rhs,
}

/// Parameters of one identity instance; unused fields are ignored.
#[derive(Debug, Clone)]
pub struct Params {
    pub s: Complex64,
    pub z: Complex64,
    pub spec: String,
    pub method: SummationMethod,
    pub m: u32,
    pub q: Complex64,
    pub s_prime: Complex64,
    pub factors: Vec<Factor>,
    pub f: String,
    pub lambda: String,
    pub seq: String,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            s: Complex64::new(2.0, 0.0),
            z: Complex64::new(0.5, 0.0),
            spec: "ones".into(),
            method: SummationMethod::Direct,
            m: 0,
            q: Complex64::new(0.0, 0.0),
            s_prime: Complex64::new(0.0, 0.0),
            factors: vec![
                Factor::new(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)),
                Factor::new(Complex64::new(3.0, 0.0), Complex64::new(-1.0, 0.0)),
            ],
            f: "exp".into(),
            lambda: "linear".into(),
            seq: "n2n".into(),
        }
    }
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<Complex64>()
        .map_err(|_| Error::Config(format!("cannot parse complex number {text:?}")))
        .and_then(|z| {
            if z.re.is_finite() && z.im.is_finite() {
                Ok(z)
            } else {
                Err(Error::Config(format!("non-finite complex number {text:?}")))
            }
        })
}

/// Parses `beta:alpha` pairs separated by commas.
pub fn parse_factors(text: &str) -> Result<Vec<Factor>> {
    text.split(',')
        .map(|part| {
            let (b, a) = part
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("factor {part:?} is not beta:alpha")))?;
            Ok(Factor::new(parse_complex(b)?, parse_complex(a)?))
        })
        .collect()
}

/// `ones`, `mobius`, `von-mangoldt`, `totient`, `beta`, `char:q:index`.
pub fn spec_by_name(name: &str) -> Result<DirichletSpec> {
    match name {
        "ones" => Ok(DirichletSpec::ones()),
        "mobius" => Ok(DirichletSpec::mobius()),
        "von-mangoldt" => Ok(DirichletSpec::von_mangoldt()),
        "totient" => Ok(DirichletSpec::totient()),
        "beta" => Ok(DirichletSpec::beta()),
        _ => {
            let parts: Vec<&str> = name.split(':').collect();
            match parts.as_slice() {
                ["char", q, idx] => {
                    let q = q.parse().map_err(|_| Error::Config(format!("bad modulus in {name:?}")))?;
                    let idx = idx.parse().map_err(|_| Error::Config(format!("bad index in {name:?}")))?;
                    Ok(DirichletSpec::character(arith::character(q, idx)?))
                }
                _ => Err(Error::Config(format!("unknown spec {name:?}"))),
            }
        }
    }
}

/// `exp` (e^z - 1), `ln` (ln(1+z)), `sin`, `identity`.
pub fn power_series_by_name(name: &str) -> Result<PowerSeriesSpec> {
    match name {
        "exp" => Ok(PowerSeriesSpec::exp_minus_one()),
        "ln" => Ok(PowerSeriesSpec::ln_one_plus()),
        "sin" => Ok(PowerSeriesSpec::sin()),
        "identity" => Ok(PowerSeriesSpec::identity()),
        _ => Err(Error::Config(format!("unknown power series {name:?}"))),
    }
}

/// `linear` (λ_n = n) or `log` (λ_n = ln n).
pub fn general_by_name(name: &str) -> Result<GeneralDirichletSpec> {
    match name {
        "linear" => Ok(GeneralDirichletSpec::linear()),
        "log" => Ok(GeneralDirichletSpec::logarithmic()),
        _ => Err(Error::Config(format!("unknown exponent sequence {name:?}"))),
    }
}

/// `n2n` (b_n = n² + n, a_n = 1) or `dirichlet` (b_n = n^s with the coefficients of `spec`).
pub fn sequence_by_name(name: &str, spec: &DirichletSpec, s: Complex64) -> Result<SequenceSpec> {
    match name {
        "n2n" => Ok(SequenceSpec::reciprocal_quadratic()),
        "dirichlet" => SequenceSpec::from_dirichlet(spec, s),
        _ => Err(Error::Config(format!("unknown sequence {name:?}"))),
    }
}

fn direct_only(id: &str, method: &SummationMethod) -> Result<()> {
    if matches!(method, SummationMethod::Direct) {
        Ok(())
    } else {
        Err(Error::Config(format!("{id} is evaluated inside its disc only; use method direct")))
    }
}

/// Evaluates one side of a catalogued identity.
pub fn evaluate(id: &str, side: Side, p: &Params, cfg: &EvalConfig) -> Result<SumResult> {
    let (lhs, method) = (side == Side::Lhs, p.method);
    match id {
        "order-p" => {
            let ones = DirichletSpec::ones();
            if lhs {
                series::lhs_partial_fraction(&ones, p.s, p.z, cfg)
            } else {
                series::rhs_zeta_series(&ones, p.s, p.z, method, cfg)
            }
        }
        "weighted" => {
            if lhs {
                series::lhs_weighted(p.m, p.q, p.s, p.z, cfg)
            } else {
                series::rhs_weighted_series(p.m, p.q, p.s, p.z, method, cfg)
            }
        }
        "derivative" => {
            let spec = spec_by_name(&p.spec)?;
            if lhs {
                series::lhs_derivative(&spec, p.s, p.z, p.m as usize, cfg)
            } else {
                series::rhs_derivative(&spec, p.s, p.z, p.m as usize, method, cfg)
            }
        }
        "multi-factor" => {
            direct_only(id, &method)?;
            let spec = spec_by_name(&p.spec)?;
            if lhs {
                series::multi_factor_lhs(&p.factors, &spec, p.z, cfg)
            } else {
                series::multi_factor_rhs(&p.factors, &spec, p.z, cfg)
            }
        }
        "dirichlet" => {
            let spec = spec_by_name(&p.spec)?;
            if lhs {
                series::lhs_partial_fraction(&spec, p.s, p.z, cfg)
            } else {
                series::rhs_zeta_series(&spec, p.s, p.z, method, cfg)
            }
        }
        "compose" => {
            let f = power_series_by_name(&p.f)?;
            if lhs {
                series::compose_lhs(&f, p.s, p.z, cfg)
            } else {
                series::compose_rhs(&f, p.s, p.z, method, cfg)
            }
        }
        "dirichlet-compose" => {
            let f = power_series_by_name(&p.f)?;
            let g = spec_by_name(&p.spec)?;
            if lhs {
                series::dirichlet_compose_lhs(&f, &g, p.s, p.s_prime, p.z, cfg)
            } else {
                series::dirichlet_compose_rhs(&f, &g, p.s, p.s_prime, p.z, method, cfg)
            }
        }
        "general-dirichlet" => {
            let f = power_series_by_name(&p.f)?;
            let gd = general_by_name(&p.lambda)?;
            if lhs {
                series::general_dirichlet_compose_lhs(&f, &gd, p.s, p.z, cfg)
            } else {
                series::general_dirichlet_compose_rhs(&f, &gd, p.s, p.z, method, cfg)
            }
        }
        "sequence" => {
            let spec = spec_by_name(&p.spec)?;
            let seq = sequence_by_name(&p.seq, &spec, p.s)?;
            if lhs {
                series::sequence_lhs(&seq, p.z, p.m as usize, cfg)
            } else {
                series::sequence_rhs(&seq, p.z, p.m as usize, method, cfg)
            }
        }
        _ => Err(Error::Config(format!(
            "unknown identity {id:?}; expected one of {}",
            IDENTITIES.join(", ")
        ))),
    }
}

/// Evaluates both sides and compares them.
pub fn verify(id: &str, p: &Params, tolerance: f64, cfg: &EvalConfig) -> Result<IdentityReport> {
    if !IDENTITIES.contains(&id) {
        return Err(Error::Config(format!("unknown identity {id:?}")));
    }
    let both = evaluate(id, Side::Lhs, p, cfg).and_then(|l| Ok((l, evaluate(id, Side::Rhs, p, cfg)?)));
    match both {
        Ok((l, r)) => Ok(IdentityReport::compare(id, &l, &r, tolerance)),
        Err(e @ Error::Config(_)) => Err(e),
        Err(e) => Ok(IdentityReport::from_error(id, &e, tolerance)),
    }
}
