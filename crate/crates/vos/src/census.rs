//! Counting and density machinery: sieved censuses of sequence counts,
//! natural densities of the index classes of 2, and the Artin constant that
//! normalizes all of them.
//!
//! The censuses work over m = 2n-1 with a smallest-prime-factor sieve on odd
//! numbers, from which exact multiplicative orders, totients and irreducible
//! counts follow by dynamic programming.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, gcd, lcm, pow_mod};
use crate::error::{Error, Result};
use crate::sequences::order_two_odd;

/// Largest x accepted by [`ord_parity_sieve`].
pub const ORD_CENSUS_LIMIT: u64 = 10_000_000;

/// Largest x accepted by [`value_census`].
pub const VALUE_CENSUS_LIMIT: u64 = 1_000_000;

/// Largest x accepted by [`very_odd_lengths`].
pub const LENGTH_LIST_LIMIT: u64 = 100_000;

/// Density, within all primes, of odd primes modulo which 2 has odd order.
pub const ODD_ORDER_PRIME_DENSITY: f64 = 7.0 / 24.0;

/// Census output: exact counts keyed by label, first witnesses, heuristic
/// predictions where a formula exists, and count/prediction ratios.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub x: u64,
    pub counts: BTreeMap<String, u64>,
    pub smallest: BTreeMap<String, u64>,
    pub predicted: BTreeMap<String, f64>,
    pub ratios: BTreeMap<String, f64>,
}

/// Smallest prime factor for every odd number up to m; entry i describes
/// 2i+1, and entry 0 (the unit) is set to 1.
fn odd_spf_sieve(m: u64) -> Vec<u32> {
    let len = (m / 2 + 1) as usize;
    let mut spf = vec![0u32; len];
    spf[0] = 1;
    let mut p = 3u64;
    while p * p <= m {
        if spf[(p / 2) as usize] == 0 {
            let mut q = p * p;
            while q <= m {
                let idx = (q / 2) as usize;
                if spf[idx] == 0 {
                    spf[idx] = p as u32;
                }
                q += 2 * p;
            }
        }
        p += 2;
    }
    for (i, slot) in spf.iter_mut().enumerate().skip(1) {
        if *slot == 0 {
            *slot = (2 * i + 1) as u32;
        }
    }
    spf
}

fn is_sieved_prime(spf: &[u32], i: usize) -> bool {
    i >= 1 && spf[i] as usize == 2 * i + 1
}

/// Multiplicative order of 2 modulo a prime p, given the odd-number
/// smallest-prime-factor table covering p.
fn prime_ord(p: u64, spf: &[u32]) -> u64 {
    let mut n = p - 1;
    let mut prime_factors = vec![2u64];
    n >>= n.trailing_zeros();
    while n > 1 {
        let q = spf[(n / 2) as usize] as u64;
        prime_factors.push(q);
        while n.is_multiple_of(q) {
            n /= q;
        }
    }
    let mut t = p - 1;
    for q in prime_factors {
        while t.is_multiple_of(q) && pow_mod(2, t / q, p) == 1 {
            t /= q;
        }
    }
    t
}

/// Exact order of 2 modulo every odd number covered by the factor table
/// (entry i holds the order modulo 2i+1).  Orders at primes are computed in
/// parallel; composites are filled by lcm over coprime parts, prime powers
/// by p-adic lifting.
fn odd_ord_sieve(spf: &[u32]) -> Vec<u64> {
    let len = spf.len();
    let mut ord = vec![0u64; len];
    ord[0] = 1;
    let primes: Vec<usize> = (1..len).filter(|&i| is_sieved_prime(spf, i)).collect();
    let prime_ords: Vec<(usize, u64)> = primes
        .par_iter()
        .map(|&i| (i, prime_ord((2 * i + 1) as u64, spf)))
        .collect();
    for (i, o) in prime_ords {
        ord[i] = o;
    }
    for i in 1..len {
        if ord[i] != 0 {
            continue;
        }
        let v = (2 * i + 1) as u64;
        let p = spf[i] as u64;
        let mut q = p;
        let mut rest = v / p;
        while rest.is_multiple_of(p) {
            q *= p;
            rest /= p;
        }
        ord[i] = if rest == 1 {
            // v = p^a: the order either stays or picks up one factor of p
            let prev = ord[((q / p) / 2) as usize];
            if pow_mod(2, prev, v) == 1 {
                prev
            } else {
                prev * p
            }
        } else {
            lcm(ord[(q / 2) as usize], ord[(rest / 2) as usize])
        };
    }
    ord
}

/// Euler totient of every odd number up to m, odd-indexed like the others.
fn odd_phi_sieve(spf: &[u32]) -> Vec<u64> {
    let len = spf.len();
    let mut phi = vec![0u64; len];
    phi[0] = 1;
    for i in 1..len {
        let v = (2 * i + 1) as u64;
        let p = spf[i] as u64;
        let mut q = p;
        let mut rest = v / p;
        while rest.is_multiple_of(p) {
            q *= p;
            rest /= p;
        }
        phi[i] = (q / p) * (p - 1) * phi[(rest / 2) as usize];
    }
    phi
}

/// Number of irreducible binary factors of X^v + 1 for every odd v up to m:
/// the divisor sum of phi(d)/ord(d), accumulated sieve-style.
fn odd_i2_sieve(ord: &[u64], phi: &[u64]) -> Vec<u64> {
    let len = ord.len();
    let mut c = vec![0u64; len];
    for i in 0..len {
        let d = 2 * i + 1;
        debug_assert_eq!(phi[i] % ord[i], 0, "each cyclotomic layer splits evenly");
        let w = phi[i] / ord[i];
        let mut j = i;
        while j < len {
            c[j] += w;
            j += d;
        }
    }
    c
}

/// Counts, over n <= x, the lengths with at least one very odd sequence
/// (label "N", complement "N0"), together with the count "P" of odd primes
/// up to 2x-1 modulo which 2 has odd order.  The prediction for "P" is
/// 7/24 times the offset logarithmic integral.
pub fn ord_parity_sieve(x: u64) -> Result<CensusReport> {
    if x == 0 {
        return Err(Error::domain("census bound must be at least 1"));
    }
    if x > ORD_CENSUS_LIMIT {
        return Err(Error::size("census bound too large", x));
    }
    let m = 2 * x - 1;
    let spf = odd_spf_sieve(m);
    let ord = odd_ord_sieve(&spf);
    let mut n_count = 0u64;
    let mut p_count = 0u64;
    for (i, &o) in ord.iter().enumerate() {
        if o % 2 == 1 {
            n_count += 1;
            if is_sieved_prime(&spf, i) {
                p_count += 1;
            }
        }
    }
    let mut counts = BTreeMap::new();
    counts.insert("N".into(), n_count);
    counts.insert("N0".into(), x - n_count);
    counts.insert("P".into(), p_count);
    let mut predicted = BTreeMap::new();
    let mut ratios = BTreeMap::new();
    if m >= 10 {
        let p_pred = ODD_ORDER_PRIME_DENSITY * li(m as f64)?;
        predicted.insert("P".into(), p_pred);
        ratios.insert("P".into(), p_count as f64 / p_pred);
    }
    Ok(CensusReport {
        x,
        counts,
        smallest: BTreeMap::new(),
        predicted,
        ratios,
    })
}

/// The lengths n <= x admitting at least one very odd sequence, in order.
pub fn very_odd_lengths(x: u64) -> Result<Vec<u64>> {
    if x > LENGTH_LIST_LIMIT {
        return Err(Error::size("length list bound too large", x));
    }
    (1..=x)
        .filter_map(|n| match order_two_odd(2 * n - 1) {
            Ok(true) => Some(Ok(n)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// Census of exact sequence counts: for each requested v (1 or a power of
/// two) the label "Nv" counts lengths n <= x whose count S(n) equals v.
/// Also reports "N"/"N0" as in [`ord_parity_sieve`], "P" and "P2" (odd-order
/// primes up to 2x-1, and those of index exactly 2), first witnesses, and
/// heuristic predictions for N2, N4 and N8.
pub fn value_census(x: u64, values: &[u64]) -> Result<CensusReport> {
    if x == 0 {
        return Err(Error::domain("census bound must be at least 1"));
    }
    if x > VALUE_CENSUS_LIMIT {
        return Err(Error::size("census bound too large", x));
    }
    let mut wanted: Vec<u64> = values.to_vec();
    wanted.sort_unstable();
    wanted.dedup();
    for &v in &wanted {
        if v == 0 || !v.is_power_of_two() {
            return Err(Error::domain(format!(
                "sequence counts are powers of two, not {v}"
            )));
        }
    }
    let m = 2 * x - 1;
    let spf = odd_spf_sieve(m);
    let ord = odd_ord_sieve(&spf);
    let phi = odd_phi_sieve(&spf);
    let i2 = odd_i2_sieve(&ord, &phi);

    let mut counts = BTreeMap::new();
    let mut smallest = BTreeMap::new();
    let mut n_count = 0u64;
    let mut p_count = 0u64;
    let mut p2_count = 0u64;
    let mut value_counts = vec![0u64; wanted.len()];
    for i in 0..ord.len() {
        if ord[i].is_multiple_of(2) {
            continue;
        }
        n_count += 1;
        if is_sieved_prime(&spf, i) {
            p_count += 1;
            if phi[i] / ord[i] == 2 {
                p2_count += 1;
            }
        }
        let h = (i2[i] - 1) / 2;
        if let Ok(target) = usize::try_from(h) {
            if let Some(slot) = wanted.iter().position(|&v| {
                target < 64 && v == 1u64 << target
            }) {
                value_counts[slot] += 1;
                let label = format!("N{}", wanted[slot]);
                smallest.entry(label).or_insert((i + 1) as u64);
            }
        }
    }
    counts.insert("N".into(), n_count);
    counts.insert("N0".into(), x - n_count);
    counts.insert("P".into(), p_count);
    counts.insert("P2".into(), p2_count);
    for (slot, &v) in wanted.iter().enumerate() {
        counts.insert(format!("N{v}"), value_counts[slot]);
    }

    let mut predicted = BTreeMap::new();
    let mut ratios = BTreeMap::new();
    if x >= 10 {
        let a = artin_cached();
        let xf = x as f64;
        for &v in &wanted {
            let pred = match v {
                2 => Some(a * xf / xf.ln()),
                4 => Some(a / 2.0 * (2.0 * xf).sqrt() / (2.0 * xf).sqrt().ln()),
                8 => Some(8.0 * a / 45.0 * xf / xf.ln()),
                _ => None,
            };
            if let Some(p) = pred {
                predicted.insert(format!("N{v}"), p);
            }
        }
        let p_pred = ODD_ORDER_PRIME_DENSITY * li(m as f64)?;
        predicted.insert("P".into(), p_pred);
        predicted.insert("P2".into(), a / 2.0 * li(m as f64)?);
        for (label, pred) in &predicted {
            if *pred > 0.0 {
                if let Some(&c) = counts.get(label) {
                    ratios.insert(label.clone(), c as f64 / pred);
                }
            }
        }
    }
    Ok(CensusReport {
        x,
        counts,
        smallest,
        predicted,
        ratios,
    })
}

fn artin_factor(p: f64) -> f64 {
    1.0 - 1.0 / (p * (p - 1.0))
}

/// Natural density, within all primes, of the primes of index exactly m:
/// order of 2 equal to (p-1)/m with odd quotient.  Exactly zero for m odd
/// or m twice an odd number times two (2-adic valuation 2), where the class
/// is empty.
pub fn pm_density(m: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("index must be positive"));
    }
    if m % 2 == 1 || (m.is_multiple_of(4) && !m.is_multiple_of(8)) {
        return Ok(0.0);
    }
    let eps = if m.is_multiple_of(8) { 2.0 } else { 1.0 };
    let mf = m as f64;
    let mut d = 2.0 * artin_cached() * eps / (3.0 * mf * mf);
    for &(p, _) in factorize(m)?.factors() {
        let pf = p as f64;
        d *= (pf * pf - 1.0) / (pf * pf - pf - 1.0);
    }
    Ok(d)
}

/// Natural density of primes of index exactly 2e lying additionally in the
/// residue class a mod f.  Computed through the splitting behaviour in the
/// relevant cyclotomic-Kummer extensions; the Euler product over primes not
/// dividing the moduli is folded exactly into the Artin constant.
pub fn progression_density(e: u64, a: u64, f: u64) -> Result<f64> {
    if e == 0 || f == 0 {
        return Err(Error::domain("index half and modulus must be positive"));
    }
    let a = a % f;
    if gcd(a, f) != 1 {
        return Err(Error::domain(
            "residue class must be coprime to the modulus",
        ));
    }
    let m = 2 * e;
    if m.is_multiple_of(4) && !m.is_multiple_of(8) {
        return Ok(0.0); // the index class itself is empty
    }
    // members satisfy p = 1 + m mod 2m; merge with the requested class
    let Some((ap, big_f)) = crate::primes::crt_merge(a, f, (1 + m) % (2 * m), 2 * m) else {
        return Ok(0.0);
    };
    debug_assert_eq!(big_f, lcm(f, 2 * m));
    let g0 = gcd(big_f, m);
    // when the modulus pins p mod 8 but the base congruence does not, the
    // quadratic character of 2 is decided by the class: wrong sign kills
    // the class, right sign doubles the density
    let mut eta = 1.0;
    if big_f % 8 == 0 && !g0.is_multiple_of(8) {
        match ap % 8 {
            1 | 7 => eta = 2.0,
            _ => return Ok(0.0),
        }
    }
    let eps = if m.is_multiple_of(8) { 2.0 } else { 1.0 };
    let phi_of = |n: u64| -> Result<f64> { Ok(factorize(n)?.phi() as f64) };
    let mut delta =
        eta * eps * phi_of(g0)? / (phi_of(big_f)? * m as f64 * phi_of(m)?);
    let m_fact = factorize(m)?;
    for &(l, a_f) in factorize(big_f)?.factors() {
        if l == 2 {
            continue;
        }
        let alpha = m_fact.nu(l);
        let lf = l as f64;
        if a_f > alpha {
            // the modulus sees one more power of l than the index does;
            // the class must allow l-divisibility of p-1 beyond the index
            let lpow = l.pow(alpha + 1);
            if ap % lpow == 1 % lpow {
                delta *= 1.0 - 1.0 / lf;
            }
        } else {
            delta *= 1.0 - 1.0 / (lf * lf);
        }
        delta /= artin_factor(lf);
    }
    delta /= artin_factor(2.0);
    Ok(delta * artin_cached())
}

static ARTIN: OnceLock<f64> = OnceLock::new();

pub(crate) fn artin_cached() -> f64 {
    *ARTIN.get_or_init(compute_artin)
}

/// The Artin constant, the product over all primes of 1 - 1/(p(p-1)),
/// accurate to full double precision.  The requested precision is a
/// contract check, not a knob: anything in [1e-13, 1e-2] is served by the
/// same fully converged value.
pub fn artin_constant(precision: f64) -> Result<f64> {
    if !precision.is_finite() || !(1e-13..=1e-2).contains(&precision) {
        return Err(Error::domain(
            "precision must lie between 1e-13 and 1e-2",
        ));
    }
    Ok(artin_cached())
}

/// The plain truncation of the defining product over primes up to `limit`;
/// converges only like 1/(limit log limit), which is the point of exposing
/// it next to the accelerated value.
pub fn artin_truncated(limit: u64) -> Result<f64> {
    if limit < 2 {
        return Err(Error::domain("truncation limit must be at least 2"));
    }
    if limit > 10_000_000 {
        return Err(Error::size("truncation limit too large", limit));
    }
    Ok(crate::primes::sieve_primes(limit)
        .iter()
        .map(|&p| artin_factor(p as f64))
        .product())
}

/// Riemann zeta for real s >= 2, via Euler-Maclaurin with a short direct sum.
fn zeta(s: f64) -> f64 {
    debug_assert!(s >= 2.0);
    if s > 128.0 {
        return 1.0;
    }
    let n = 64f64;
    // ascending magnitude, so the small terms are not lost to rounding
    let mut sum = 0.0;
    let mut k = 63f64;
    while k >= 1.0 {
        sum += k.powf(-s);
        k -= 1.0;
    }
    sum += n.powf(1.0 - s) / (s - 1.0);
    sum += 0.5 * n.powf(-s);
    sum += s * n.powf(-s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0;
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * n.powf(-s - 5.0) / 30240.0;
    sum
}

/// Prime zeta P(s) = sum over primes of p^{-s}, via Moebius inversion of
/// log zeta.
fn prime_zeta(s: f64) -> f64 {
    let mut total = 0.0;
    let mut j = 1u64;
    while (j as f64) * s <= 128.0 {
        let mu = factorize(j).expect("small j").moebius();
        if mu != 0 {
            total += f64::from(mu) / j as f64 * zeta(j as f64 * s).ln();
        }
        j += 1;
    }
    total
}

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97,
];

/// Accelerated evaluation: direct factors below 100, then the tail of
/// log A resummed over k >= 2 as (1 - L_k)/k times the tail prime zeta,
/// where L_k is the Lucas sequence; the quotient defining each factor has
/// the golden ratio and its conjugate as roots, which is what makes the
/// Lucas numbers appear.
fn compute_artin() -> f64 {
    let mut ln_a = 0.0;
    for &p in &SMALL_PRIMES {
        ln_a += artin_factor(p as f64).ln();
    }
    let mut l_prev = 2.0f64; // L_0
    let mut l_cur = 1.0f64; // L_1
    // The exact term at k is below phi^k * 101^-k / k, already < 1e-27 by
    // k = 15, so stopping at 14 loses nothing.  Going further is actively
    // harmful: once zeta(k) rounds to 1.0 (k >= 53) the computed tail
    // collapses to -sum p^-k, and the Lucas coefficient amplifies that
    // rounding artifact into the seventh decimal place.
    for k in 2..=14u32 {
        let l_k = l_cur + l_prev;
        l_prev = l_cur;
        l_cur = l_k;
        let kf = f64::from(k);
        let mut tail = prime_zeta(kf);
        for &p in &SMALL_PRIMES {
            tail -= (p as f64).powf(-kf);
        }
        ln_a += (1.0 - l_k) / kf * tail;
    }
    ln_a.exp()
}

fn simpson_slice(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    (fa + 4.0 * fm + fb) * h / 6.0
}

#[allow(clippy::too_many_arguments)] // recursive quadrature carries its cached endpoints
fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_slice(fa, flm, fm, m - a);
    let right = simpson_slice(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
            + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
    }
}

/// Offset logarithmic integral: the integral from 2 to x of dt/log t.
pub fn li(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 2.0 {
        return Err(Error::domain("the logarithmic integral starts at 2"));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let f = |t: f64| 1.0 / t.ln();
    let (a, b) = (2.0, x);
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson_slice(fa, fm, fb, b - a);
    Ok(adaptive_simpson(
        &f,
        a,
        b,
        fa,
        fm,
        fb,
        whole,
        1e-10,
        48,
    ))
}
