//! Small numeric kernels shared across the evaluators.

use num_complex::Complex64;

/// `x^(-s)` given `ln x`, computed as `exp(-s ln x)` so no branch choice is involved.
#[inline]
pub(crate) fn pow_neg(ln_x: f64, s: Complex64) -> Complex64 {
    (-s * ln_x).exp()
}

/// `e^z - 1` without cancellation near `z = 0`.
pub(crate) fn exp_m1(z: Complex64) -> Complex64 {
    let (sin_half, sin_y) = ((z.im / 2.0).sin(), z.im.sin());
    let em1 = z.re.exp_m1();
    Complex64::new(em1 * z.im.cos() - 2.0 * sin_half * sin_half, (em1 + 1.0) * sin_y)
}

/// Binomial coefficient C(k, m) as a float.
pub(crate) fn binom(k: usize, m: usize) -> f64 {
    if m > k {
        return 0.0;
    }
    let m = m.min(k - m);
    (0..m).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// `∫_x^∞ (ln t)^k t^(-alpha) dt` for `x >= 1`, `alpha > 1`.
pub(crate) fn log_power_integral(x: f64, alpha: f64, k: u32) -> f64 {
    debug_assert!(x >= 1.0);
    if alpha <= 1.0 {
        return f64::INFINITY;
    }
    let beta = alpha - 1.0;
    let lx = x.ln();
    let mut sum = 0.0;
    // k!/(k-l)! built up incrementally
    let mut falling = 1.0;
    for l in 0..=k {
        if l > 0 {
            falling *= (k - l + 1) as f64;
        }
        sum += falling * lx.powi((k - l) as i32) / beta.powi(l as i32 + 1);
    }
    (-beta * lx).exp() * sum
}

/// `Σ_{j > j0} C(m + j, j) r^j` for `0 <= r < 1`.
pub(crate) fn binomial_geometric_tail(m: usize, j0: usize, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    if r >= 1.0 {
        return f64::INFINITY;
    }
    let mut j = j0 + 1;
    let mut term = binom(m + j, j) * r.powi(j as i32);
    let mut sum = 0.0;
    loop {
        sum += term;
        let ratio = (m + j + 1) as f64 / (j + 1) as f64 * r;
        // the ratio decreases in j, so once below one the rest is dominated by a geometric series
        if ratio < 1.0 {
            let rest = term * ratio / (1.0 - ratio);
            if ratio < 0.5 || rest <= 1e-3 * sum {
                return sum + rest;
            }
        }
        term *= ratio;
        j += 1;
        if j > 1_000_000 {
            return f64::INFINITY;
        }
    }
}

/// `Σ_{i >= 0} C(k0 + i, m) x^i` for `0 <= x < 1`.
pub(crate) fn shifted_binomial_series(k0: usize, m: usize, x: f64) -> f64 {
    if x >= 1.0 {
        return f64::INFINITY;
    }
    let mut i = 0usize;
    let mut term = binom(k0, m);
    let mut sum = 0.0;
    loop {
        sum += term;
        if x == 0.0 {
            return sum;
        }
        let k = k0 + i + 1;
        // C(k, m) / C(k - 1, m) = k / (k - m)
        let ratio = if k > m { k as f64 / (k - m) as f64 * x } else { x };
        if k > m && ratio < 1.0 {
            let rest = term * ratio / (1.0 - ratio);
            if ratio < 0.5 || rest <= 1e-3 * sum {
                return sum + rest;
            }
        }
        term = if k > m { term * ratio } else { binom(k, m) * x.powi(i as i32 + 1) };
        i += 1;
        if i > 1_000_000 {
            return f64::INFINITY;
        }
    }
}

/// Neville–Aitken polynomial extrapolation to `h = 0`, fed one point at a time.
#[derive(Debug, Default)]
pub(crate) struct Extrapolator {
    hs: Vec<f64>,
    row: Vec<Complex64>,
    diagonal: Vec<Complex64>,
}

impl Extrapolator {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Adds `(h, value)` and returns the newest diagonal element.
    pub(crate) fn push(&mut self, h: f64, value: Complex64) -> Complex64 {
        self.hs.push(h);
        let n = self.hs.len();
        let mut new_row = Vec::with_capacity(n);
        new_row.push(value);
        for j in 1..n {
            let hi = self.hs[n - 1 - j];
            let hn = self.hs[n - 1];
            let prev = self.row[j - 1];
            let cur = new_row[j - 1];
            // P_{i..n}(0) from P_{i+1..n}(0) and P_{i..n-1}(0)
            new_row.push(cur + (cur - prev) * (hn / (hi - hn)));
        }
        let best = new_row[n - 1];
        self.row = new_row;
        self.diagonal.push(best);
        best
    }

    /// Difference between the last two diagonal elements.
    pub(crate) fn last_change(&self) -> f64 {
        let d = &self.diagonal;
        if d.len() < 2 {
            f64::INFINITY
        } else {
            (d[d.len() - 1] - d[d.len() - 2]).norm()
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.hs.len()
    }
}
