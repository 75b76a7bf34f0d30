//! Acceptance criteria. Each criterion prints one `pass`/`FAIL` line; the
//! process exits non-zero if any criterion fails.

mod common;

use std::f64::consts::PI;

use common::{c, C};
use rand::SeedableRng;
use zeta_series::catalog::{self, Side};
use zeta_series::corpus;
use zeta_series::poles::{self, ResidueVariant};
use zeta_series::series::{self, DirichletSpec, PowerSeriesSpec, SequenceSpec};
use zeta_series::specialfns;
use zeta_series::summation::{self, SummationMethod};
use zeta_series::{EvalConfig, Error, SumResult};

type Outcome = Result<String, String>;

fn within(what: &str, got: C, want: C, tol: f64) -> Result<f64, String> {
    let gap = (got - want).norm();
    if gap <= tol {
        Ok(gap)
    } else {
        Err(format!("{what}: got {got}, want {want}, gap {gap:.3e} > {tol:e}"))
    }
}

fn ok<T>(r: zeta_series::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn boundary() -> EvalConfig {
    EvalConfig::default().with_target(1e-9).with_max_terms(1 << 23)
}

fn closed_form_coth() -> Outcome {
    let mut worst = 0.0f64;
    for w in [0.3, 0.5, 0.9] {
        let l = ok(series::lhs_partial_fraction(&DirichletSpec::ones(), c(2.0), c(w * w), &EvalConfig::default()), "lhs")?;
        worst = worst.max(within(&format!("w = {w}"), l.value, c(corpus::coth_closed_form(w)), 1e-10)?);
    }
    Ok(format!("max gap {worst:.1e}"))
}

fn quarter_series() -> Outcome {
    let cfg = EvalConfig::default();
    let ones = DirichletSpec::ones();
    let r = ok(series::rhs_zeta_series(&ones, c(2.0), c(-0.25), SummationMethod::Direct, &cfg), "rhs")?;
    let a = within("Σ ζ(2n)/4^n", r.value / 4.0, c(0.5), 1e-12)?;
    let l = ok(series::lhs_partial_fraction(&ones, c(2.0), c(-0.25), &cfg), "lhs")?;
    let b = within("Σ 1/(n² - 1/4)", l.value, c(2.0), 1e-12)?;
    within("rhs vs lhs", r.value, l.value, 1e-12)?;
    Ok(format!("gaps {a:.1e}, {b:.1e}"))
}

fn sixteenth_series() -> Outcome {
    let r = ok(
        series::rhs_zeta_series(&DirichletSpec::ones(), c(2.0), c(-1.0 / 16.0), SummationMethod::Direct, &EvalConfig::default()),
        "rhs",
    )?;
    let g = within("Σ ζ(2n)/16^n", r.value / 16.0, c(0.5 - PI / 8.0), 1e-12)?;
    Ok(format!("gap {g:.1e}"))
}

fn quartic() -> Outcome {
    let l = ok(series::lhs_partial_fraction(&DirichletSpec::ones(), c(4.0), c(1.0), &EvalConfig::default()), "lhs")?;
    let g = within("Σ 1/(n⁴+1)", l.value, c(corpus::quartic_closed_form()), 1e-10)?;
    Ok(format!("gap {g:.1e}"))
}

fn quadratic_sequence() -> Outcome {
    let pair = ok(
        series::sequence_series(&SequenceSpec::reciprocal_quadratic(), c(1.0), SummationMethod::Direct, &EvalConfig::default()),
        "sequence",
    )?;
    let want = c(corpus::quadratic_sequence_closed_form());
    let a = within("lhs", pair.lhs.value, want, 1e-10)?;
    let b = within("rhs", pair.rhs.value, want, 1e-10)?;
    Ok(format!("gaps {a:.1e}, {b:.1e}"))
}

fn cesaro_boundary() -> Outcome {
    let cfg = boundary();
    let ones = DirichletSpec::ones();
    let want = c((PI / PI.tanh() - 1.0) / 2.0);
    // Σ_{k>=1} (-1)^(k+1) ζ(2k) as a raw stream; its (C,1) sum is Σ 1/(n²+1)
    let zetas: Vec<C> = (1..=600).map(|k| specialfns::zeta(c(2.0 * k as f64), &EvalConfig::default()).unwrap().value).collect();
    let stream = |k: usize| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sign * zetas.get(k).copied().unwrap_or(c(1.0))
    };
    let raw = ok(summation::cesaro_sum(&stream, 1, &cfg), "raw stream")?;
    let a = within("raw (C,1)", raw.value, want, 1e-6)?;
    let r2 = ok(series::rhs_zeta_series(&ones, c(2.0), c(1.0), SummationMethod::Cesaro(1), &cfg), "ζ(2k)")?;
    let b = within("ζ(2k) series", r2.value, want, 1e-6)?;
    let r3 = ok(series::rhs_zeta_series(&ones, c(3.0), c(1.0), SummationMethod::Cesaro(1), &cfg), "ζ(3k)")?;
    let direct = common::partial_fraction_ones(3.0, c(1.0), 1_000_000);
    let d = within("ζ(3k) series", r3.value, direct, 1e-6)?;
    Ok(format!("gaps {a:.1e}, {b:.1e}, {d:.1e}"))
}

fn cesaro_two() -> Outcome {
    let ones = DirichletSpec::ones();
    let r = ok(series::rhs_derivative(&ones, c(2.0), c(1.0), 1, SummationMethod::Cesaro(2), &boundary()), "(C,2)")?;
    let direct = common::kahan(|n| c(1.0 / ((n * n + 1) as f64).powi(2)), 1_000_000) + c(1.0 / (3.0 * 1_000_000.5f64.powi(3)));
    let g = within("(C,2) vs Σ 1/(n²+1)²", r.value, direct, 1e-5)?;
    Ok(format!("gap {g:.1e}"))
}

fn compose() -> Outcome {
    let cfg = EvalConfig::default();
    let n = 1_000_000;
    let tail = 1.0 / (n as f64 + 0.5);
    let exp_oracle = common::kahan(|k| c((1.0 / (k * k) as f64).exp_m1()), n) + c(tail);
    let sin_oracle = common::kahan(|k| c((0.5 / (k * k) as f64).sin()), n) + c(0.5 * tail);
    let ln_oracle = common::kahan(|k| c((1.0 / (k * k) as f64).ln_1p()), n) + c(tail);

    let exp = ok(series::compose_series(&PowerSeriesSpec::exp_minus_one(), c(2.0), c(1.0), &cfg), "exp")?;
    let a = within("exp lhs", exp.lhs.value, exp_oracle, 1e-9)?.max(within("exp rhs", exp.rhs.value, exp_oracle, 1e-9)?);
    let sin = ok(series::compose_series(&PowerSeriesSpec::sin(), c(2.0), c(0.5), &cfg), "sin")?;
    let b = within("sin lhs", sin.lhs.value, sin_oracle, 1e-9)?.max(within("sin rhs", sin.rhs.value, sin_oracle, 1e-9)?);
    let ln = PowerSeriesSpec::ln_one_plus();
    let abel = ok(series::compose_rhs(&ln, c(2.0), c(1.0), SummationMethod::abel(), &boundary()), "ln abel")?;
    let d = within("ln abel", abel.value, ln_oracle, 1e-6)?;
    let closed = c((PI.sinh() / PI).ln());
    within("ln abel vs closed form", abel.value, closed, 1e-6)?;
    let l = ok(series::compose_lhs(&ln, c(2.0), c(1.0), &cfg), "ln lhs")?;
    let e = within("ln lhs vs closed form", l.value, closed, 1e-9)?;
    Ok(format!("gaps {a:.1e}, {b:.1e}, abel {d:.1e}, closed {e:.1e}"))
}

fn dirichlet_specs() -> Outcome {
    let cfg = EvalConfig::default();
    let mut worst = 0.0f64;
    for (spec, s) in [(DirichletSpec::mobius(), 2.0), (DirichletSpec::von_mangoldt(), 2.0), (DirichletSpec::totient(), 3.0)] {
        for z in [c(0.5), c(-0.5), C::new(0.0, 0.9)] {
            let l = ok(series::lhs_partial_fraction(&spec, c(s), z, &cfg), spec.name())?;
            let r = ok(series::rhs_zeta_series(&spec, c(s), z, SummationMethod::Direct, &cfg), spec.name())?;
            worst = worst.max(within(&format!("{} at z = {z}", spec.name()), l.value, r.value, 1e-8)?);
        }
    }
    Ok(format!("max gap {worst:.1e}"))
}

fn character() -> Outcome {
    let cfg = EvalConfig::default();
    let spec = DirichletSpec::beta();
    let mut worst = 0.0f64;
    for z in [c(0.5), c(-0.5), C::new(0.0, 0.9)] {
        let r = ok(series::rhs_zeta_series(&spec, c(2.0), z, SummationMethod::Direct, &cfg), "rhs")?;
        let betas = common::power_side(|s| specialfns::dirichlet_beta(c(s), &cfg).unwrap().value, 2.0, z);
        worst = worst.max(within("β series", r.value, betas, 1e-9)?);
        let l = ok(series::lhs_partial_fraction(&spec, c(2.0), z, &cfg), "lhs")?;
        worst = worst.max(within("χ₄ lhs", l.value, r.value, 1e-9)?);
    }
    let shifted = spec.drop_first();
    let z = c(0.5);
    let l = ok(series::lhs_partial_fraction(&shifted, c(2.0), z, &cfg), "shifted lhs")?;
    let r = ok(series::rhs_zeta_series(&shifted, c(2.0), z, SummationMethod::Direct, &cfg), "shifted rhs")?;
    let minus_one = common::power_side(|s| specialfns::dirichlet_beta(c(s), &cfg).unwrap().value - 1.0, 2.0, z);
    worst = worst.max(within("shifted", l.value, r.value, 1e-9)?);
    worst = worst.max(within("shifted β - 1 series", r.value, minus_one, 1e-9)?);
    Ok(format!("max gap {worst:.1e}"))
}

fn residues() -> Outcome {
    let cfg = EvalConfig::default();
    let mut worst = 0.0f64;
    let mut check = |spec: &DirichletSpec, s: f64, n: u64, variant: ResidueVariant, want: C| -> Result<(), String> {
        let r = ok(poles::residue(spec, c(s), n, variant, &cfg), &format!("{} s={s} n={n}", spec.name()))?;
        let expected = r.expected_residue.unwrap();
        within("expected", expected, want, 1e-12 * want.norm())?;
        let rel = r.abs_error.unwrap() / want.norm();
        worst = worst.max(rel);
        if rel <= 1e-5 {
            Ok(())
        } else {
            Err(format!("{} s={s} n={n} {variant:?}: relative error {rel:.2e}", spec.name()))
        }
    };
    let ones = DirichletSpec::ones();
    for s in [2.0, 3.0, 2.5] {
        for n in 1..=3 {
            check(&ones, s, n, ResidueVariant::Plain, c(1.0))?;
        }
    }
    for (q, m) in [(1.0, 0u32), (0.0, 1), (1.0, 1)] {
        for n in [2u64, 3] {
            let nf = n as f64;
            let want = nf.powf(q) * nf.ln().powi(m as i32) * if m % 2 == 0 { 1.0 } else { -1.0 };
            check(&ones, 4.0, n, ResidueVariant::Weighted { q: c(q), m }, c(want))?;
        }
    }
    check(&ones, 3.0, 2, ResidueVariant::Weighted { q: c(1.0), m: 0 }, c(2.0))?;
    check(&DirichletSpec::mobius(), 2.0, 2, ResidueVariant::Plain, c(-1.0))?;
    match poles::residue(&DirichletSpec::mobius(), c(2.0), 4, ResidueVariant::Plain, &cfg) {
        Err(Error::NotAPole(_)) => {}
        other => return Err(format!("μ(4) = 0 should give NotAPoleError, got {other:?}")),
    }
    Ok(format!("max relative error {worst:.1e}"))
}

fn properties_and_guards() -> Outcome {
    let cfg = EvalConfig::default();
    let mut rng = rand::rngs::StdRng::seed_from_u64(20_261_016);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let id = catalog::IDENTITIES[i % catalog::IDENTITIES.len()];
        let p = corpus::random_params(id, &mut rng);
        let l: SumResult = ok(catalog::evaluate(id, Side::Lhs, &p, &cfg), &format!("{id} lhs {p:?}"))?;
        let r: SumResult = ok(catalog::evaluate(id, Side::Rhs, &p, &cfg), &format!("{id} rhs {p:?}"))?;
        let gap = (l.value - r.value).norm();
        if gap > l.abs_error_estimate + r.abs_error_estimate + 1e-10 {
            return Err(format!("{id} {p:?}: lhs {l}, rhs {r}"));
        }
        worst = worst.max(gap);
    }
    let ones = DirichletSpec::ones();
    let guards = [
        ("radius", series::rhs_zeta_series(&ones, c(2.0), c(1.5), SummationMethod::Direct, &cfg), "RadiusError"),
        ("boundary", series::rhs_zeta_series(&ones, c(2.0), c(1.0), SummationMethod::Direct, &cfg), "BoundaryError"),
        ("pole", series::lhs_partial_fraction(&ones, c(2.0), c(-4.0), &cfg), "PoleError"),
        (
            "compose radius",
            series::compose_rhs(&PowerSeriesSpec::ln_one_plus(), c(2.0), c(1.2), SummationMethod::Direct, &cfg),
            "RadiusError",
        ),
        ("sequence pole", series::sequence_lhs(&SequenceSpec::reciprocal_quadratic(), c(6.0), 0, &cfg), "PoleError"),
    ];
    for (what, r, kind) in guards {
        match r {
            Err(e) if e.kind() == kind => {}
            other => return Err(format!("{what} guard: expected {kind}, got {other:?}")),
        }
    }
    Ok(format!("50 instances, max gap {worst:.1e}; 5 guards"))
}

fn spiral() -> Outcome {
    let s = C::new(2.0, 1.0);
    let rows = ok(poles::spiral_export(s, 100), "spiral")?;
    let x: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let mut unwrapped = Vec::with_capacity(rows.len());
    let mut prev = PI;
    for r in &rows {
        let mut a = r.arg;
        while a - prev > PI {
            a -= 2.0 * PI;
        }
        while a - prev < -PI {
            a += 2.0 * PI;
        }
        unwrapped.push(a);
        prev = a;
    }
    let arg: Vec<f64> = unwrapped.iter().map(|a| a - PI).collect();
    let modulus: Vec<f64> = rows.iter().map(|r| r.abs.ln()).collect();
    let im = common::slope(&x, &arg);
    let re = common::slope(&x, &modulus);
    if (im - s.im).abs() > 1e-9 || (re - s.re).abs() > 1e-9 {
        return Err(format!("slopes {re}, {im}"));
    }
    Ok(format!("slopes {re:.12}, {im:.12}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("coth closed form, z in {0.3, 0.5, 0.9}", closed_form_coth),
        ("Σ ζ(2n)/4^n = 1/2 and lhs 2", quarter_series),
        ("Σ ζ(2n)/16^n = 1/2 - π/8", sixteenth_series),
        ("Σ 1/(n⁴+1) closed form", quartic),
        ("Σ 1/(n²+n-1) sequence identity", quadratic_sequence),
        ("(C,1) boundary sums for ζ(2k) and ζ(3k)", cesaro_boundary),
        ("(C,2) sum for Σ 1/(n²+1)²", cesaro_two),
        ("composed series: exp, sin, ln with Abel", compose),
        ("μ, Λ, φ identities", dirichlet_specs),
        ("χ mod 4 and its shifted variant", character),
        ("residues", residues),
        ("randomized equivalence and guards", properties_and_guards),
        ("spiral regression slopes", spiral),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} pass  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} acceptance criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
