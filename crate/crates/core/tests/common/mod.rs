//! Independent brute-force oracles. Nothing here calls into the library.
#![allow(dead_code)]

use num_complex::Complex64;

pub type C = Complex64;

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Compensated sum of `f(1..=n)`.
pub fn kahan<F: Fn(u64) -> C>(f: F, n: u64) -> C {
    let mut sum = C::new(0.0, 0.0);
    let mut comp = C::new(0.0, 0.0);
    for k in (1..=n).rev() {
        let y = f(k) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// ζ(s) for Re s > 1: 999 direct terms plus a three-correction Euler–Maclaurin tail at 1000.
pub fn zeta(s: C) -> C {
    let n = 1000.0f64;
    let head = kahan(|k| (-s * (k as f64).ln()).exp(), 999);
    let p = |e: C| (e * n.ln()).exp();
    head + p(c(1.0) - s) / (s - 1.0) + p(-s) / 2.0 + s * p(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * p(-s - 3.0) / 720.0
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * p(-s - 5.0) / 30240.0
}

/// Σ_{n≤N} 1/(n^s + z) plus the midpoint integral of the first three terms
/// of the expansion of the tail.
pub fn partial_fraction_ones(s: f64, z: C, n: u64) -> C {
    let head = kahan(|k| 1.0 / ((k as f64).powf(s) + z), n);
    let x = n as f64 + 0.5;
    let t = |j: f64| x.powf(1.0 - j * s) / (j * s - 1.0);
    head + t(1.0) - z * t(2.0) + z * z * t(3.0)
}

/// Σ_{k≥0} (-z)^k f(ks + s), summed until terms drop below 1e-18.
pub fn power_side<F: Fn(f64) -> C>(f: F, s: f64, z: C) -> C {
    let mut total = C::new(0.0, 0.0);
    let mut zk = C::new(1.0, 0.0);
    for k in 0..5000 {
        let term = zk * f(k as f64 * s + s);
        total += term;
        if term.norm() < 1e-18 && k > 4 {
            break;
        }
        zk *= -z;
    }
    total
}

pub fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
