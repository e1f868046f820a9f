//! Dense polynomials over GF(2), packed 64 coefficients per word, and the
//! complete factorization of X^m + 1 for odd m.
//!
//! The factorization route avoids finite-field tower arithmetic: the degrees
//! of the irreducible factors are known in advance from the 2-cyclotomic
//! cosets modulo each divisor d of m (phi(d)/ord_2(d) factors of degree
//! ord_2(d)), so each cyclotomic part is split by the characteristic-2 trace
//! map with seeded randomness.  Results are deterministic for a fixed seed.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{factorize, multiplicative_order};
use crate::error::{Error, Result};

/// Default seed for the equal-degree splitting walk.
pub const DEFAULT_SPLIT_SEED: u64 = 0x9a3c_51f0_27bd_4e61;

/// Largest m accepted by [`factor_cyclic`].
pub const FACTOR_DEGREE_LIMIT: u64 = 1 << 20;

/// A polynomial over GF(2).  Bit k of word k/64 is the coefficient of X^k;
/// trailing zero words are trimmed, and the zero polynomial has no words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (q, r) = (shift / 64, shift % 64);
    if r == 0 {
        for (i, w) in src.iter().enumerate() {
            dst[q + i] ^= w;
        }
    } else {
        let mut carry = 0u64;
        for (i, w) in src.iter().enumerate() {
            dst[q + i] ^= (w << r) | carry;
            carry = w >> (64 - r);
        }
        if carry != 0 {
            dst[q + src.len()] ^= carry;
        }
    }
}

/// Interleaves the bits of x with zeros.
fn spread(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_ffff_0000_ffff;
    v = (v | (v << 8)) & 0x00ff_00ff_00ff_00ff;
    v = (v | (v << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    pub fn x() -> Self {
        Gf2Poly { words: vec![2] }
    }

    /// X^k.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / 64 + 1];
        words[k / 64] = 1u64 << (k % 64);
        Gf2Poly { words }
    }

    /// X^d + 1.
    pub fn x_power_plus_one(d: usize) -> Self {
        let mut p = Self::monomial(d);
        p.words[0] ^= 1;
        trim(&mut p.words);
        Gf2Poly { words: p.words }
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        trim(&mut words);
        Gf2Poly { words }
    }

    /// Builds a polynomial from the exponents of its nonzero terms.
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let top = exponents.iter().copied().max().unwrap_or(0);
        let mut words = vec![0u64; top / 64 + 1];
        for &e in exponents {
            words[e / 64] ^= 1u64 << (e % 64);
        }
        Self::from_words(words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + (63 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / 64)
            .is_some_and(|w| w >> (k % 64) & 1 == 1)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (short, long) = if self.words.len() <= other.words.len() {
            (&self.words, &other.words)
        } else {
            (&other.words, &self.words)
        };
        let mut words = long.clone();
        for (i, w) in short.iter().enumerate() {
            words[i] ^= w;
        }
        Self::from_words(words)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = if self.words.len() <= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let mut out = vec![0u64; (da + db) / 64 + 1];
        for (i, &word) in a.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                xor_shifted(&mut out, &b.words, i * 64 + bit);
            }
        }
        Self::from_words(out)
    }

    pub fn square(&self) -> Self {
        let mut out = vec![0u64; self.words.len() * 2];
        for (i, &w) in self.words.iter().enumerate() {
            out[2 * i] = spread(w as u32);
            out[2 * i + 1] = spread((w >> 32) as u32);
        }
        Self::from_words(out)
    }

    /// Quotient and remainder; errors on division by zero.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::domain("polynomial division by zero"))?;
        let mut r = self.words.clone();
        let sd = match self.degree() {
            Some(d) if d >= dd => d,
            _ => return Ok((Self::zero(), self.clone())),
        };
        let mut q = vec![0u64; (sd - dd) / 64 + 1];
        // Track the highest possibly-nonzero word to keep division quadratic
        // in words rather than bits.
        let mut top_word = sd / 64;
        loop {
            while top_word + 1 > 0 && r.get(top_word) == Some(&0) {
                if top_word == 0 {
                    break;
                }
                top_word -= 1;
            }
            let w = match r.get(top_word) {
                Some(&w) if w != 0 => w,
                _ => break,
            };
            let deg = top_word * 64 + (63 - w.leading_zeros() as usize);
            if deg < dd {
                break;
            }
            let shift = deg - dd;
            q[shift / 64] |= 1u64 << (shift % 64);
            xor_shifted(&mut r, &divisor.words, shift);
        }
        Ok((Self::from_words(q), Self::from_words(r)))
    }

    pub fn rem(&self, modulus: &Self) -> Result<Self> {
        Ok(self.divrem(modulus)?.1)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.mul(other).rem(modulus)
    }

    /// X^(2^k) mod `modulus`, by k modular squarings.
    pub fn x_frobenius_mod(k: usize, modulus: &Self) -> Result<Self> {
        let mut t = Self::x().rem(modulus)?;
        for _ in 0..k {
            t = t.square().rem(modulus)?;
        }
        Ok(t)
    }

    /// Coefficient reversal X^deg * p(1/X); requires a nonzero constant term
    /// so that the degree is preserved and the map is an involution.
    pub fn reciprocal(&self) -> Result<Self> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::domain("reciprocal of the zero polynomial"))?;
        if !self.coeff(0) {
            return Err(Error::domain(
                "reciprocal requires a nonzero constant term",
            ));
        }
        let mut words = vec![0u64; deg / 64 + 1];
        for k in 0..=deg {
            if self.coeff(k) {
                let j = deg - k;
                words[j / 64] |= 1u64 << (j % 64);
            }
        }
        Ok(Self::from_words(words))
    }

    /// Deterministic irreducibility test over GF(2).
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => {
                return Err(Error::domain("irreducibility needs degree >= 1"))
            }
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let x = Self::x().rem(self)?;
        let mut checkpoints: Vec<usize> = factorize(d as u64)
            .expect("degree is positive")
            .factors()
            .iter()
            .map(|&(p, _)| d / p as usize)
            .collect();
        checkpoints.sort_unstable();
        let mut t = x.clone();
        let mut next = 0usize;
        for i in 1..=d {
            t = t.square().rem(self)?;
            while next < checkpoints.len() && checkpoints[next] == i {
                if !self.gcd(&t.add(&x)).is_one() {
                    return Ok(false);
                }
                next += 1;
            }
        }
        Ok(t == x)
    }

    /// Serialization: contiguous lowercase hex, least-significant word first;
    /// every word except the final one is padded to 16 digits.
    pub fn to_hex(&self) -> String {
        if self.words.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, w) in self.words.iter().enumerate() {
            if i + 1 == self.words.len() {
                out.push_str(&format!("{w:x}"));
            } else {
                out.push_str(&format!("{w:016x}"));
            }
        }
        out
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::domain("empty polynomial literal"));
        }
        let n_words = s.len().div_ceil(16);
        let mut words = Vec::with_capacity(n_words);
        for i in 0..n_words {
            let chunk = if i + 1 < n_words {
                &s[i * 16..(i + 1) * 16]
            } else {
                &s[i * 16..]
            };
            let w = u64::from_str_radix(chunk, 16)
                .map_err(|_| Error::domain(format!("bad hex polynomial: {s:?}")))?;
            words.push(w);
        }
        Ok(Self::from_words(words))
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_hex(s)
    }
}

impl Ord for Gf2Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Irreducible factors of X^m + 1 belonging to one divisor d of m: the
/// factors of the d-th cyclotomic polynomial, each of degree ord_2(d).
#[derive(Debug, Clone)]
pub struct FactorGroup {
    pub divisor: u64,
    pub degree: u64,
    pub factors: Vec<Gf2Poly>,
}

/// Small deterministic generator (splitmix64) used wherever seeded
/// randomness is needed; kept crate-internal so all modules share one
/// stream definition.
pub(crate) struct SplitMix(u64);

impl SplitMix {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix(seed)
    }

    pub(crate) fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn poly_below(&mut self, degree_bound: usize) -> Gf2Poly {
        let mut words = vec![0u64; degree_bound / 64 + 1];
        for w in words.iter_mut() {
            *w = self.next();
        }
        let extra = 64 - (degree_bound % 64);
        if extra < 64 {
            let last = words.len() - 1;
            words[last] &= u64::MAX >> extra;
        }
        Gf2Poly::from_words(words)
    }
}

/// Splits a product of distinct irreducibles of common degree k using the
/// characteristic-2 trace map on random elements.
fn equal_degree_split(f: Gf2Poly, k: usize, rng: &mut SplitMix) -> Vec<Gf2Poly> {
    let deg = f.degree().expect("nonzero product");
    if deg == k {
        return vec![f];
    }
    loop {
        let a = rng.poly_below(deg);
        if a.is_zero() {
            continue;
        }
        // T(a) = a + a^2 + a^4 + ... + a^(2^(k-1)) mod f lands in GF(2) on
        // each irreducible component, so gcd(T(a), f) splits f with
        // probability about 1/2 per component pair.
        let mut acc = a.clone();
        let mut t = a;
        for _ in 1..k {
            t = t.square().rem(&f).expect("nonzero modulus");
            acc = acc.add(&t);
        }
        let g = f.gcd(&acc);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < deg {
                let (q, r) = f.divrem(&g).expect("nonzero divisor");
                debug_assert!(r.is_zero());
                let mut out = equal_degree_split(g, k, rng);
                out.extend(equal_degree_split(q, k, rng));
                return out;
            }
        }
    }
}

/// Factors X^m + 1 over GF(2) for odd m, grouped by divisor of m.  Groups
/// arrive in ascending divisor order; factors within a group are sorted.
pub fn factor_cyclic(m: u64, seed: u64) -> Result<Vec<FactorGroup>> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "factor_cyclic: m = {m} must be odd and positive"
        )));
    }
    if m > FACTOR_DEGREE_LIMIT {
        return Err(Error::size("factor_cyclic: m too large", m));
    }
    let divisors = factorize(m)?.divisors();
    let mut rng = SplitMix::new(seed ^ m);
    let mut cyclo: HashMap<u64, Gf2Poly> = HashMap::new();
    let mut groups = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut den = Gf2Poly::one();
        for &e in &divisors {
            if e < d && d % e == 0 {
                den = den.mul(&cyclo[&e]);
            }
        }
        let (phi_d, rem) = Gf2Poly::x_power_plus_one(d as usize).divrem(&den)?;
        debug_assert!(rem.is_zero());
        cyclo.insert(d, phi_d.clone());
        let k = multiplicative_order(2, d)? as usize;
        let expect = factorize(d)?.phi() as usize / k;
        let mut factors = if expect == 1 {
            vec![phi_d]
        } else {
            equal_degree_split(phi_d, k, &mut rng)
        };
        debug_assert_eq!(factors.len(), expect);
        factors.sort_unstable();
        groups.push(FactorGroup {
            divisor: d,
            degree: k as u64,
            factors,
        });
    }
    Ok(groups)
}

/// All irreducible factors of X^m + 1 in one flat sorted list.
pub fn factor_cyclic_flat(m: u64, seed: u64) -> Result<Vec<Gf2Poly>> {
    let mut all: Vec<Gf2Poly> = factor_cyclic(m, seed)?
        .into_iter()
        .flat_map(|g| g.factors)
        .collect();
    all.sort_unstable();
    Ok(all)
}
