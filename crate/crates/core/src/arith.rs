//! Möbius, von Mangoldt and totient tables, and Dirichlet characters.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest sieve limit accepted at all.
pub const MAX_SIEVE_LIMIT: usize = 100_000_000;

/// Default memory budget for [`build_sieve`], in bytes.
pub const DEFAULT_SIEVE_BUDGET: usize = 1 << 30;

/// Bytes per sieved integer: μ (i8), Λ (f64), φ (u64), least prime factor (u32).
const BYTES_PER_ENTRY: usize = 1 + 8 + 8 + 4;

/// Arithmetic-function tables for `1..=limit`; entry `i` holds the value at `n = i + 1`.
#[derive(Debug, Clone)]
pub struct ArithSieve {
    limit: usize,
    mobius: Vec<i8>,
    von_mangoldt: Vec<f64>,
    totient: Vec<u64>,
}

impl ArithSieve {
    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn mobius_table(&self) -> &[i8] {
        &self.mobius
    }

    pub fn von_mangoldt_table(&self) -> &[f64] {
        &self.von_mangoldt
    }

    pub fn totient_table(&self) -> &[u64] {
        &self.totient
    }

    /// μ(n), falling back to trial division beyond the table.
    pub fn mobius(&self, n: u64) -> i8 {
        match self.index(n) {
            Some(i) => self.mobius[i],
            None => mobius(n),
        }
    }

    pub fn von_mangoldt(&self, n: u64) -> f64 {
        match self.index(n) {
            Some(i) => self.von_mangoldt[i],
            None => von_mangoldt(n),
        }
    }

    pub fn totient(&self, n: u64) -> u64 {
        match self.index(n) {
            Some(i) => self.totient[i],
            None => totient(n),
        }
    }

    fn index(&self, n: u64) -> Option<usize> {
        (n >= 1 && n as usize <= self.limit).then(|| n as usize - 1)
    }
}

/// Table size of [`shared_sieve`].
pub const SHARED_SIEVE_LIMIT: usize = 1 << 20;

/// Process-wide immutable sieve backing the registry coefficient sequences.
pub fn shared_sieve() -> &'static ArithSieve {
    static SIEVE: OnceLock<ArithSieve> = OnceLock::new();
    SIEVE.get_or_init(|| build_sieve(SHARED_SIEVE_LIMIT).expect("shared sieve fits the default budget"))
}

/// Linear sieve up to `limit` within the default memory budget.
pub fn build_sieve(limit: usize) -> Result<ArithSieve> {
    build_sieve_with_budget(limit, DEFAULT_SIEVE_BUDGET)
}

pub fn build_sieve_with_budget(limit: usize, budget_bytes: usize) -> Result<ArithSieve> {
    if limit == 0 {
        return Err(Error::Range("sieve limit must be at least 1".into()));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Capacity(format!("sieve limit {limit} exceeds {MAX_SIEVE_LIMIT}")));
    }
    let needed = limit.saturating_mul(BYTES_PER_ENTRY);
    if needed > budget_bytes {
        return Err(Error::Capacity(format!(
            "sieve to {limit} needs {needed} bytes, budget is {budget_bytes}"
        )));
    }

    // index by n directly here; the public tables drop slot 0
    let mut lpf = vec![0u32; limit + 1];
    let mut mu = vec![0i8; limit + 1];
    let mut phi = vec![0u64; limit + 1];
    let mut primes: Vec<u32> = Vec::new();
    mu[1] = 1;
    phi[1] = 1;
    for i in 2..=limit {
        if lpf[i] == 0 {
            lpf[i] = i as u32;
            mu[i] = -1;
            phi[i] = i as u64 - 1;
            primes.push(i as u32);
        }
        for &p in &primes {
            let p_us = p as usize;
            if p > lpf[i] || i * p_us > limit {
                break;
            }
            let ip = i * p_us;
            lpf[ip] = p;
            if p == lpf[i] {
                mu[ip] = 0;
                phi[ip] = phi[i] * p as u64;
            } else {
                mu[ip] = -mu[i];
                phi[ip] = phi[i] * (p as u64 - 1);
            }
        }
    }

    let mut lambda = vec![0.0f64; limit + 1];
    for n in 2..=limit {
        let p = lpf[n] as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            lambda[n] = (p as f64).ln();
        }
    }

    Ok(ArithSieve {
        limit,
        mobius: mu.split_off(1),
        von_mangoldt: lambda.split_off(1),
        totient: phi.split_off(1),
    })
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "μ is defined for n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn von_mangoldt(n: u64) -> f64 {
    match factorize(n).as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    }
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// One cyclic factor of `(Z/qZ)^*`: residues mod `modulus` generated by `generator`.
#[derive(Debug, Clone)]
struct CyclicFactor {
    modulus: u64,
    order: u64,
    /// discrete log of each residue mod `modulus`, `None` off the subgroup
    log: Vec<Option<u64>>,
    /// 2-power factor of order 2 from `-1`; residues are first divided by it
    sign_split: bool,
}

fn cyclic_factors(q: u64) -> Vec<CyclicFactor> {
    let mut out = Vec::new();
    for (p, e) in factorize(q) {
        let pe = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => out.push(log_table(4, 3, 2, false)),
                _ => {
                    out.push(log_table(pe, pe - 1, 2, false));
                    out.push(log_table(pe, 5, pe / 4, true));
                }
            }
        } else {
            let order = pe / p * (p - 1);
            let g = primitive_root(pe, order);
            out.push(log_table(pe, g, order, false));
        }
    }
    out
}

fn log_table(modulus: u64, generator: u64, order: u64, sign_split: bool) -> CyclicFactor {
    let mut log = vec![None; modulus as usize];
    let mut x = 1u64;
    for k in 0..order {
        log[x as usize] = Some(k);
        x = x * generator % modulus;
    }
    CyclicFactor {
        modulus,
        order,
        log,
        sign_split,
    }
}

fn primitive_root(m: u64, order: u64) -> u64 {
    let prime_divisors: Vec<u64> = factorize(order).into_iter().map(|(p, _)| p).collect();
    (2..m)
        .find(|&g| gcd(g, m) == 1 && prime_divisors.iter().all(|&r| pow_mod(g, order / r, m) != 1))
        .expect("odd prime powers have primitive roots")
}

impl CyclicFactor {
    fn discrete_log(&self, a: u64) -> u64 {
        let r = a % self.modulus;
        if self.modulus > 4 && self.modulus % 2 == 0 {
            // (Z/2^e)^* = <-1> x <5>
            let negative = r % 4 == 3;
            if self.sign_split {
                let r = if negative { self.modulus - r } else { r };
                self.log[r as usize].expect("unit")
            } else {
                u64::from(negative)
            }
        } else {
            self.log[r as usize].expect("unit")
        }
    }
}

/// Values of a Dirichlet character mod `q`, indexed by residue `0..q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    modulus: u64,
    index: u64,
    values: Vec<Complex64>,
}

impl CharacterTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// χ(n) for any integer `n`.
    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// True when every value is real.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }
}

/// `e^{2πi k/n}` with exact values on the quarter turns.
fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    if (4 * k) % n == 0 {
        match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    } else {
        Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
    }
}

/// Order of the character group mod `q`, i.e. φ(q).
pub fn character_count(q: u64) -> u64 {
    totient(q.max(1))
}

/// The character mod `q` with the given index; index 0 is principal.
///
/// Indices enumerate the group through its cyclic decomposition in mixed
/// radix, one digit per cyclic factor.
pub fn character(q: u64, index: u64) -> Result<CharacterTable> {
    if q == 0 {
        return Err(Error::Range("modulus must be at least 1".into()));
    }
    let count = character_count(q);
    if index >= count {
        return Err(Error::Range(format!(
            "character index {index} outside the group of order {count} mod {q}"
        )));
    }
    let factors = cyclic_factors(q);
    let mut digits = Vec::with_capacity(factors.len());
    let mut rest = index;
    for f in &factors {
        digits.push(rest % f.order);
        rest /= f.order;
    }
    let common: u64 = factors.iter().map(|f| f.order).fold(1, |a, b| a / gcd(a, b) * b);

    let values = (0..q)
        .map(|r| {
            if gcd(r, q) != 1 {
                // q = 1 keeps the single residue 0 as a unit
                return if q == 1 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            }
            let phase: u64 = factors
                .iter()
                .zip(&digits)
                .map(|(f, &d)| d * f.discrete_log(r) % f.order * (common / f.order))
                .sum();
            root_of_unity(phase % common, common)
        })
        .collect();
    Ok(CharacterTable { modulus: q, index, values })
}

/// All characters mod `q`, in index order.
pub fn characters(q: u64) -> Result<Vec<CharacterTable>> {
    (0..character_count(q)).map(|i| character(q, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divisors(n: usize) -> impl Iterator<Item = usize> {
        (1..=n).filter(move |d| n % d == 0)
    }

    #[test]
    fn small_tables_match_factorisation() {
        let s = build_sieve(10).unwrap();
        assert_eq!(s.mobius_table(), &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert_eq!(s.totient_table(), &[1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
        for n in 1..=10u64 {
            assert_eq!(s.mobius(n), mobius(n));
            assert_eq!(s.totient(n), totient(n));
        }
    }

    #[test]
    fn totient_by_gcd_counting() {
        let s = build_sieve(200).unwrap();
        for n in 1..=200u64 {
            let count = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(s.totient(n), count, "n = {n}");
        }
    }

    #[test]
    fn von_mangoldt_on_prime_powers() {
        let s = build_sieve(9).unwrap();
        assert_eq!(s.von_mangoldt(8), 2f64.ln());
        assert_eq!(s.von_mangoldt(9), 3f64.ln());
        assert_eq!(s.von_mangoldt(6), 0.0);
        assert_eq!(s.von_mangoldt(1), 0.0);
    }

    #[test]
    fn fallback_beyond_table() {
        let s = build_sieve(10).unwrap();
        assert_eq!(s.mobius(30), -1);
        assert_eq!(s.totient(36), 12);
        assert_eq!(s.von_mangoldt(49), 7f64.ln());
    }

    #[test]
    fn divisor_sum_identities_exhaustive() {
        let limit = 100_000;
        let s = build_sieve(limit).unwrap();
        let (mu, phi, lam) = (s.mobius_table(), s.totient_table(), s.von_mangoldt_table());
        let mut mu_sum = vec![0i64; limit + 1];
        let mut phi_sum = vec![0u64; limit + 1];
        let mut lam_sum = vec![0f64; limit + 1];
        for d in 1..=limit {
            for m in (d..=limit).step_by(d) {
                mu_sum[m] += mu[d - 1] as i64;
                phi_sum[m] += phi[d - 1];
                lam_sum[m] += lam[d - 1];
            }
        }
        for n in 1..=limit {
            assert_eq!(mu_sum[n], i64::from(n == 1), "Σμ at {n}");
            assert_eq!(phi_sum[n], n as u64, "Σφ at {n}");
            assert!((lam_sum[n] - (n as f64).ln()).abs() <= 1e-12, "ΣΛ at {n}");
        }
        // spot check against the brute divisor loop
        assert_eq!(divisors(12).map(|d| mu[d - 1] as i64).sum::<i64>(), 0);
    }

    #[test]
    fn sieve_limits() {
        assert!(matches!(build_sieve(0), Err(Error::Range(_))));
        assert!(matches!(build_sieve(MAX_SIEVE_LIMIT + 1), Err(Error::Capacity(_))));
        assert!(matches!(build_sieve_with_budget(1000, 100), Err(Error::Capacity(_))));
    }

    #[test]
    fn known_characters() {
        let t = character(1, 0).unwrap();
        assert_eq!(t.value(7), Complex64::new(1.0, 0.0));
        let c4 = character(4, 1).unwrap();
        assert_eq!(
            c4.values(),
            &[0.0, 1.0, 0.0, -1.0].map(|x| Complex64::new(x, 0.0))
        );
        let c3 = character(3, 1).unwrap();
        assert_eq!(c3.value(1).re, 1.0);
        assert_eq!(c3.value(2).re, -1.0);
        assert_eq!(c3.value(3).re, 0.0);
        assert!(matches!(character(4, 2), Err(Error::Range(_))));
        assert!(matches!(character(0, 0), Err(Error::Range(_))));
    }

    #[test]
    fn characters_are_multiplicative_and_orthogonal() {
        for q in [3u64, 4, 5, 7, 8, 9, 12, 15, 16, 24] {
            let all = characters(q).unwrap();
            assert_eq!(all.len() as u64, totient(q));
            for chi in &all {
                for a in 0..q {
                    for b in 0..q {
                        let lhs = chi.value(a * b);
                        let rhs = chi.value(a) * chi.value(b);
                        assert!((lhs - rhs).norm() < 1e-12, "q={q} idx={} a={a} b={b}", chi.index());
                    }
                    let v = chi.value(a);
                    if gcd(a, q) == 1 {
                        assert!((v.norm() - 1.0).abs() < 1e-12);
                    } else {
                        assert_eq!(v.norm(), 0.0);
                    }
                }
                let total: Complex64 = chi.values().iter().sum();
                if chi.is_principal() {
                    assert!((total.re - totient(q) as f64).abs() < 1e-12);
                } else {
                    assert!(total.norm() < 1e-12, "q={q} idx={}", chi.index());
                }
            }
            // distinct characters
            for i in 0..all.len() {
                for j in i + 1..all.len() {
                    assert_ne!(all[i].values(), all[j].values());
                }
            }
        }
    }
}
