//! Integer arithmetic: factorization, multiplicative functions, orders,
//! residual indices, irreducible-factor counts, and field levels.
//!
//! Everything here works on `u64` values with 128-bit intermediates, so all
//! modular arithmetic is exact up to 2^64.  Factorization uses trial division
//! below 10^6 and Brent's cycle-finding variant of Pollard rho above it, with
//! a deterministic Miller-Rabin primality test that is exact for all 64-bit
//! inputs.

use crate::error::{Error, Result};

/// (a * b) mod m without overflow.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// a^e mod m by binary exponentiation.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least common multiple; panics on overflow, which cannot happen for the
/// order values this crate combines (orders divide their modulus).
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    let g = gcd(a, b);
    let wide = (a / g) as u128 * b as u128;
    u64::try_from(wide).expect("lcm overflows u64")
}

/// 2-adic valuation.  `nu2(0)` is undefined and returns 64.
#[inline]
pub fn nu2(n: u64) -> u32 {
    n.trailing_zeros()
}

/// Deterministic Miller-Rabin, exact for all n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // This base set is known to be exhaustive below 2^64.
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn pollard_rho(n: u64) -> u64 {
    // Brent's improvement: batch gcds, backtrack on failure.
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut q) = (2u64, 2u64, 1u64);
        let (mut ys, mut r, m) = (2u64, 1u64, 128u64);
        let mut g = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r <<= 1;
        }
        if g == n {
            // Redo the last batch one step at a time.
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// A positive integer together with its sorted prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Prime factors with exponents, sorted by prime.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn phi(&self) -> u64 {
        let mut acc = 1u64;
        for &(p, e) in &self.factors {
            acc *= p.pow(e - 1) * (p - 1);
        }
        acc
    }

    pub fn moebius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Number of prime factors that occur with exponent exactly one.
    pub fn omega_unit(&self) -> u32 {
        self.factors.iter().filter(|&&(_, e)| e == 1).count() as u32
    }

    /// Exponent of `p` in the factorization.
    pub fn nu(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..prev {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Factors `n >= 1`.  `factorize(1)` has an empty factor list.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize: argument must be positive"));
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    // Wheel over residues coprime to 30.
    let mut d = 7u64;
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut step = 0;
    while d <= TRIAL_LIMIT && d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += STEPS[step];
        step = (step + 1) % STEPS.len();
    }
    if rest > 1 {
        if rest < TRIAL_LIMIT * TRIAL_LIMIT || is_prime(rest) {
            // Below the square of the trial bound the cofactor is prime.
            factors.push((rest, 1));
        } else {
            let mut stack = vec![rest];
            let mut found: Vec<u64> = Vec::new();
            while let Some(v) = stack.pop() {
                if is_prime(v) {
                    found.push(v);
                } else {
                    let f = pollard_rho(v);
                    stack.push(f);
                    stack.push(v / f);
                }
            }
            found.sort_unstable();
            for p in found {
                match factors.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, e)) => *e += 1,
                    None => factors.push((p, 1)),
                }
            }
        }
    }
    factors.sort_unstable();
    Ok(Factorization { value: n, factors })
}

/// Multiplicative order of `a` modulo an odd prime `p`, given the
/// factorization of p - 1.
fn order_mod_prime(a: u64, p: u64, phi_factors: &[(u64, u32)]) -> u64 {
    let mut ord = p - 1;
    for &(f, _) in phi_factors {
        while ord.is_multiple_of(f) && pow_mod(a, ord / f, p) == 1 {
            ord /= f;
        }
    }
    ord
}

/// Order of `a` modulo p^e for odd prime p: the order modulo p, lifted by
/// the exponent deficit of a^ord - 1.
fn order_mod_prime_power(a: u64, p: u64, e: u32) -> Result<u64> {
    let pe = p.pow(e);
    let a = a % pe;
    let phi_factors = factorize(p - 1)?;
    let d = order_mod_prime(a, p, phi_factors.factors());
    if e == 1 {
        return Ok(d);
    }
    let x = pow_mod(a, d, pe);
    if x == 1 {
        return Ok(d);
    }
    let mut v = 0u32;
    let mut rem = x - 1;
    while rem.is_multiple_of(p) {
        rem /= p;
        v += 1;
    }
    Ok(d * p.pow(e - v))
}

/// Order of odd `a` modulo 2^e.
fn order_mod_two_power(a: u64, e: u32) -> u64 {
    if e == 0 {
        return 1;
    }
    let m = 1u64 << e;
    let a = a & (m - 1);
    if a == 1 {
        return 1;
    }
    if e == 1 {
        return 1;
    }
    if a == m - 1 {
        return 2;
    }
    if a % 4 == 1 {
        1 << (e - nu2(a - 1))
    } else {
        // a = 3 mod 4: a^2 = 1 + 2^(nu2(a+1)+1) * odd.
        1 << (e - nu2(a + 1))
    }
}

/// Multiplicative order of `a` modulo `m`; requires gcd(a, m) = 1.
/// `multiplicative_order(a, 1)` is 1.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("order: modulus must be positive"));
    }
    if m == 1 {
        return Ok(1);
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::domain(format!(
            "order: base {a} is not invertible modulo {m}"
        )));
    }
    let mut ord = 1u64;
    for &(p, e) in factorize(m)?.factors() {
        let part = if p == 2 {
            order_mod_two_power(a, e)
        } else {
            order_mod_prime_power(a, p, e)?
        };
        ord = lcm(ord, part);
    }
    Ok(ord)
}

/// Residual index phi(n) / ord_q(n): the index of the subgroup generated by
/// q inside (Z/nZ)^*.  Requires gcd(q, n) = 1.
pub fn residual_index(q: u64, n: u64) -> Result<u64> {
    let f = factorize(n)?;
    let ord = multiplicative_order(q, n)?;
    Ok(f.phi() / ord)
}

/// Number of distinct irreducible factors of X^n - 1 over F_q: the divisor
/// sum of phi(d) / ord_q(d).  Requires gcd(n, q) = 1.
pub fn irreducible_count(q: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("irreducible_count: n must be positive"));
    }
    if q < 2 {
        return Err(Error::domain("irreducible_count: q must be at least 2"));
    }
    if gcd(q, n) != 1 {
        return Err(Error::domain(format!(
            "irreducible_count: q = {q} and n = {n} are not coprime"
        )));
    }
    let f = factorize(n)?;
    // Orders of q modulo every prime power dividing n, indexed per factor.
    let mut ords: Vec<Vec<u64>> = Vec::with_capacity(f.factors().len());
    for &(p, e) in f.factors() {
        let mut per_power = Vec::with_capacity(e as usize);
        for j in 1..=e {
            let part = if p == 2 {
                order_mod_two_power(q, j)
            } else {
                order_mod_prime_power(q, p, j)?
            };
            per_power.push(part);
        }
        ords.push(per_power);
    }
    let factors = f.factors();
    let mut total = 0u64;
    // Walk divisor exponent tuples, carrying phi(d) and ord_q(d).
    fn walk(
        idx: usize,
        phi: u64,
        ord: u64,
        factors: &[(u64, u32)],
        ords: &[Vec<u64>],
        total: &mut u64,
    ) {
        if idx == factors.len() {
            debug_assert_eq!(phi % ord, 0);
            *total += phi / ord;
            return;
        }
        let (p, e) = factors[idx];
        walk(idx + 1, phi, ord, factors, ords, total);
        let mut pk = 1u64;
        for j in 1..=e {
            pk *= p;
            walk(
                idx + 1,
                phi * (pk / p) * (p - 1),
                lcm(ord, ords[idx][(j - 1) as usize]),
                factors,
                ords,
                total,
            );
        }
    }
    walk(0, 1, 1, factors, &ords, &mut total);
    Ok(total)
}

/// Rank bound for certain elliptic surfaces: the irreducible-factor count
/// i_q(d), plus a record of whether the divisibility hypothesis d | p^n + 1
/// actually holds (p the characteristic underlying q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlmerRank {
    pub rank: u64,
    /// True when d divides p^n + 1 for some n, i.e. -1 lies in the subgroup
    /// generated by p modulo d.  Checked exactly.
    pub hypothesis_holds: bool,
}

/// Computes the rank value i_q(d) for a prime power q and d coprime to 6q.
pub fn ulmer_rank(q: u64, d: u64) -> Result<UlmerRank> {
    let qf = factorize(q)?;
    if qf.factors().len() != 1 {
        return Err(Error::domain(format!("ulmer_rank: q = {q} is not a prime power")));
    }
    let p = qf.factors()[0].0;
    if d == 0 || gcd(d, 6 * p) != 1 {
        return Err(Error::domain(format!(
            "ulmer_rank: d = {d} must be coprime to 6q"
        )));
    }
    let hypothesis_holds = if d <= 2 {
        true
    } else {
        let t = multiplicative_order(p, d)?;
        t % 2 == 0 && pow_mod(p, t / 2, d) == d - 1
    };
    Ok(UlmerRank {
        rank: irreducible_count(q, d)?,
        hypothesis_holds,
    })
}

/// Level (Stufe) of the m-th cyclotomic field: the least number of squares
/// summing to -1, or `Orderable` when -1 is not a sum of squares at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Level {
    /// The field is formally real (m = 1 or 2; the field is the rationals).
    Orderable,
    One,
    Two,
    Four,
}

impl Level {
    pub fn as_text(&self) -> &'static str {
        match self {
            Level::Orderable => "orderable",
            Level::One => "1",
            Level::Two => "2",
            Level::Four => "4",
        }
    }
}

/// Level of the m-th cyclotomic field.  For odd m > 1 the answer is decided
/// by the parity of the order of 2 modulo m; for m = 2u with u odd the field
/// coincides with the u-th cyclotomic field.
pub fn stufe_level(m: u64) -> Result<Level> {
    if m == 0 {
        return Err(Error::domain("stufe_level: m must be positive"));
    }
    if m <= 2 {
        return Ok(Level::Orderable);
    }
    if m.is_multiple_of(4) {
        return Ok(Level::One);
    }
    let odd = if m.is_multiple_of(2) { m / 2 } else { m };
    if odd == 1 {
        return Ok(Level::Orderable);
    }
    let ord = multiplicative_order(2, odd)?;
    Ok(if ord % 2 == 0 { Level::Two } else { Level::Four })
}
