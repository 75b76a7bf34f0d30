//! Poles `z = -n^s` of the partial-fraction functions and their residues.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::series::{lhs_partial_fraction, DirichletSpec};
use crate::specialfns::DOMAIN_EPS;
use crate::util::Extrapolator;

/// A pole `-n^s`, optionally with its expected and measured residue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleRecord {
    pub n: u64,
    pub location: Complex64,
    pub expected_residue: Option<Complex64>,
    pub measured_residue: Option<Complex64>,
    /// `|expected - measured|`
    pub abs_error: Option<f64>,
}

/// Which function's residue is measured at `-n^s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResidueVariant {
    /// `Σ a_n/(n^s + z)`, residue `a_n`.
    Plain,
    /// `Σ_k (-1)^k f^(m)(ks + s - q) z^k`, i.e. `(-1)^m Σ a_n n^q ln^m(n)/(n^s + z)`,
    /// residue `(-1)^m n^q ln^m(n) a_n`.
    Weighted { q: Complex64, m: u32 },
}

/// `-n^s` on the principal branch, `-exp(s ln n)`.
pub fn pole_location(s: Complex64, n: u64) -> Complex64 {
    let w = (s * (n as f64).ln()).exp();
    // + 0.0 turns the -0 of a real pole into +0
    Complex64::new(-w.re, -w.im + 0.0)
}

fn check(s: Complex64, count: u64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) || s.re <= 1.0 + DOMAIN_EPS {
        return Err(Error::Domain(format!("Re(s) must exceed 1, got s = {s}")));
    }
    if count == 0 {
        return Err(Error::Domain("count must be at least 1".into()));
    }
    Ok(())
}

/// The first `count` pole locations.
pub fn pole_locations(s: Complex64, count: u64) -> Result<Vec<PoleRecord>> {
    check(s, count)?;
    Ok((1..=count)
        .map(|n| PoleRecord {
            n,
            location: pole_location(s, n),
            expected_residue: None,
            measured_residue: None,
            abs_error: None,
        })
        .collect())
}

/// One row of the spiral table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralRow {
    pub n: u64,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    /// principal argument in `(-π, π]`
    pub arg: f64,
}

pub fn spiral_export(s: Complex64, count: u64) -> Result<Vec<SpiralRow>> {
    Ok(pole_locations(s, count)?
        .into_iter()
        .map(|p| {
            let arg = p.location.arg();
            SpiralRow {
                n: p.n,
                re: p.location.re,
                im: p.location.im,
                abs: p.location.norm(),
                // a signed zero imaginary part would otherwise give -π on the negative axis
                arg: if arg <= -PI { PI } else { arg },
            }
        })
        .collect())
}

const FIRST_EXPONENT: i32 = 2;
const LAST_EXPONENT: i32 = 6;

/// Residue at `-n^s`, measured as the limit of `(z + n^s) g(z)` along
/// `z = -n^s + ρ_j d`, `ρ_j = 10^(-j) max(1, |n^s|)`, `j = 2..6`, where `d`
/// points from the pole toward the origin. The samples are extrapolated to
/// `ρ = 0`. When the largest step is not well inside the gap to the
/// neighbouring poles, their terms are subtracted before sampling.
pub fn residue(spec: &DirichletSpec, s: Complex64, n: u64, variant: ResidueVariant, cfg: &EvalConfig) -> Result<PoleRecord> {
    residue_along(spec, s, n, variant, None, cfg)
}

/// [`residue`] with an explicit unit approach direction.
pub fn residue_along(
    spec: &DirichletSpec,
    s: Complex64,
    n: u64,
    variant: ResidueVariant,
    direction: Option<Complex64>,
    cfg: &EvalConfig,
) -> Result<PoleRecord> {
    check(s, n)?;
    let (f, sign) = match variant {
        ResidueVariant::Plain => (spec.clone(), 1.0),
        ResidueVariant::Weighted { q, m } => {
            let g = spec.weighted_by(q, m)?;
            g.check_abscissa(s)?;
            (g, if m % 2 == 0 { 1.0 } else { -1.0 })
        }
    };
    f.check_abscissa(s)?;
    let a_n = f.coeff(n);
    if a_n == Complex64::new(0.0, 0.0) {
        return Err(Error::NotAPole(format!("coefficient {n} of {} vanishes, so -{n}^s is regular", f.name())));
    }
    let ns = -pole_location(s, n);
    let dir = match direction {
        Some(d) if d.norm() > 0.0 => d / d.norm(),
        Some(_) => return Err(Error::Domain("approach direction must be non-zero".into())),
        None => ns / ns.norm(),
    };
    let scale = ns.norm().max(1.0);
    let neighbours: Vec<u64> = [n.checked_sub(1).filter(|&k| k >= 1), Some(n + 1)].into_iter().flatten().collect();
    let gap = neighbours
        .iter()
        .map(|&k| (pole_location(s, k) + ns).norm())
        .fold(f64::INFINITY, f64::min);
    let subtract = 10f64.powi(-FIRST_EXPONENT) * scale >= 0.1 * gap;

    let mut ex = Extrapolator::new();
    let mut value = Complex64::new(0.0, 0.0);
    for j in FIRST_EXPONENT..=LAST_EXPONENT {
        let rho = 10f64.powi(-j) * scale;
        let z = -ns + dir * rho;
        // the product with ρ shrinks absolute errors, so the sum itself may be coarser
        let g = lhs_partial_fraction(&f, s, z, &cfg.with_target(cfg.target_abs_error / rho.min(1.0)))?;
        let mut v = g.value;
        if subtract {
            for &k in &neighbours {
                let ak = f.coeff(k);
                if ak != Complex64::new(0.0, 0.0) {
                    v -= ak / (-pole_location(s, k) + z);
                }
            }
        }
        value = ex.push(rho, v * (dir * rho));
    }
    let measured = value * sign;
    let expected = a_n * sign;
    Ok(PoleRecord {
        n,
        location: -ns,
        expected_residue: Some(expected),
        measured_residue: Some(measured),
        abs_error: Some((expected - measured).norm()),
    })
}
