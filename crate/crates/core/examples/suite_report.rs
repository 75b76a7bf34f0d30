//! Runs the verification corpus and prints a one-line summary per case.

fn main() {
    let tol = std::env::args().nth(1).and_then(|t| t.parse().ok()).unwrap_or(1e-8);
    let suite = zeta_series::corpus::run_suite(tol, None);
    for r in &suite.reports {
        println!("{:<32} {:<22} {:.1e}", r.identity_id, r.status.to_string(), r.abs_discrepancy.unwrap_or(f64::NAN));
    }
    let s = &suite.summary;
    println!("{} cases: {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped);
}
