//! Very odd sequences: 0/1 sequences whose aperiodic autocorrelations
//!
//! ```text
//!   A_k = sum_i a_i * a_{i+k},   0 <= k <= n-1
//! ```
//!
//! are all odd.  Writing a sequence as a polynomial a(X) over GF(2), the
//! condition is equivalent to a(X) * X^{n-1} a(1/X) = 1 + X + ... + X^{2n-2},
//! so the sequences of length n correspond to the ways of picking one factor
//! from each reciprocal pair of irreducible factors of (X^{2n-1}+1)/(X+1).
//! That makes the count S(n) either 0 (when the order of 2 modulo 2n-1 is
//! even) or a power of 2, and gives both an exact counting formula and an
//! explicit enumeration.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::arith::{factorize, irreducible_count, pow_mod};
use crate::error::{Error, Result};
use crate::gf2poly::{factor_cyclic, Gf2Poly, DEFAULT_SPLIT_SEED};

/// Default cap on the number of sequences materialized by [`enumerate_vos`].
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

/// Largest length accepted by the exhaustive scan in [`brute_force_vos`].
pub const BRUTE_FORCE_LIMIT: u64 = 25;

/// A 0/1 sequence a_1..a_n, packed 64 entries per word (entry i at bit i of
/// word i/64).  Length is at least 1 and bits past the length are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSequence {
    words: Vec<u64>,
    len: usize,
}

impl BitSequence {
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::domain("sequence length must be at least 1"));
        }
        let need = len.div_ceil(64);
        if words.len() < need {
            words.resize(need, 0);
        }
        words.truncate(need);
        let extra = 64 - (len % 64);
        if extra < 64 {
            words[need - 1] &= u64::MAX >> extra;
        }
        Ok(BitSequence { words, len })
    }

    /// Reads a polynomial's coefficients as a sequence of the given length;
    /// the polynomial degree must be below `len`.
    pub fn from_poly(p: &Gf2Poly, len: usize) -> Result<Self> {
        if p.degree().is_some_and(|d| d >= len) {
            return Err(Error::domain(format!(
                "polynomial degree {:?} does not fit in length {len}",
                p.degree()
            )));
        }
        Self::from_words(p.words().to_vec(), len)
    }

    pub fn to_poly(&self) -> Gf2Poly {
        Gf2Poly::from_words(self.words.clone())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of ones; equals A_0.
    pub fn ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Aperiodic autocorrelation A_k = sum_i a_i a_{i+k}.
    pub fn autocorrelation(&self, k: usize) -> u64 {
        if k >= self.len {
            return 0;
        }
        let (q, r) = (k / 64, k % 64);
        let w = &self.words;
        let mut total = 0u64;
        for i in 0..w.len() - q {
            let mut shifted = w[i + q] >> r;
            if r > 0 && i + q + 1 < w.len() {
                shifted |= w[i + q + 1] << (64 - r);
            }
            total += (w[i] & shifted).count_ones() as u64;
        }
        total
    }

    /// The full profile A_0..A_{n-1}.
    pub fn autocorrelation_profile(&self) -> Vec<u64> {
        (0..self.len).map(|k| self.autocorrelation(k)).collect()
    }

    /// True iff every A_k, 0 <= k <= n-1, is odd.
    pub fn is_very_odd(&self) -> bool {
        // A_{n-1} = a_1 a_n, so both endpoints must be 1; cheap early exits.
        if !self.get(0) || !self.get(self.len - 1) {
            return false;
        }
        (0..self.len).all(|k| self.autocorrelation(k) % 2 == 1)
    }

    /// True iff the sequence is a concatenation of two or more copies of a
    /// strictly shorter block.
    pub fn is_periodic(&self) -> bool {
        let n = self.len;
        for d in factorize(n as u64).expect("n >= 1").divisors() {
            let d = d as usize;
            if d == n {
                continue;
            }
            if (d..n).all(|i| self.get(i) == self.get(i - d)) {
                return true;
            }
        }
        false
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::domain("empty sequence literal"));
        }
        let mut words = vec![0u64; s.len().div_ceil(64)];
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => words[i / 64] |= 1u64 << (i % 64),
                '0' => {}
                other => {
                    return Err(Error::domain(format!(
                        "sequence literal must be 0/1, found {other:?}"
                    )))
                }
            }
        }
        Self::from_words(words, s.len())
    }
}

/// The exact number of very odd sequences of length n: zero, or a power of
/// two reported through its exponent so that huge counts stay representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SCount {
    Zero,
    PowerOfTwo { h: u64 },
}

impl SCount {
    /// The count as an integer, when it fits in 128 bits.
    pub fn value(&self) -> Option<u128> {
        match self {
            SCount::Zero => Some(0),
            SCount::PowerOfTwo { h } if *h < 128 => Some(1u128 << h),
            SCount::PowerOfTwo { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SCount::Zero)
    }

    pub fn exponent(&self) -> Option<u64> {
        match self {
            SCount::Zero => None,
            SCount::PowerOfTwo { h } => Some(*h),
        }
    }
}

impl fmt::Display for SCount {
    /// Exact digits when the value fits in 128 bits, otherwise "2^h".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SCount::Zero => f.write_str("0"),
            SCount::PowerOfTwo { h } if *h < 128 => write!(f, "{}", 1u128 << h),
            SCount::PowerOfTwo { h } => write!(f, "2^{h}"),
        }
    }
}

/// True iff 2 has odd multiplicative order modulo every prime factor of m
/// (equivalently, odd order modulo m itself).  m must be odd.
pub(crate) fn order_two_odd(m: u64) -> Result<bool> {
    debug_assert!(m % 2 == 1);
    Ok(factorize(m)?.factors().iter().all(|&(p, _)| prime_order_odd(p)))
}

/// S(n): the number of very odd sequences of length n.  Zero when the order
/// of 2 modulo 2n-1 is even, else 2^((i_2(2n-1)-1)/2).
pub fn s_count(n: u64) -> Result<SCount> {
    if n == 0 {
        return Err(Error::domain("sequence length must be at least 1"));
    }
    let m = n
        .checked_mul(2)
        .and_then(|t| t.checked_sub(1))
        .filter(|&m| m <= (1 << 63))
        .ok_or_else(|| Error::size("2n-1 exceeds 63 bits", n))?;
    if !order_two_odd(m)? {
        return Ok(SCount::Zero);
    }
    let i2 = irreducible_count(2, m)?;
    debug_assert!(i2 % 2 == 1, "odd order forces an odd factor count");
    Ok(SCount::PowerOfTwo { h: (i2 - 1) / 2 })
}

/// All very odd sequences of length n, via the factorization of X^{2n-1}+1:
/// every irreducible factor other than X+1 pairs with its distinct
/// reciprocal, and each choice of one factor per pair multiplies out to one
/// sequence.  Deterministic order (Gray walk over the sorted pairs).
pub fn enumerate_vos(n: u64, cap: Option<u64>) -> Result<Vec<BitSequence>> {
    let count = s_count(n)?;
    if count.is_zero() {
        return Ok(Vec::new());
    }
    let h = count.exponent().expect("nonzero count");
    let cap = cap.unwrap_or(DEFAULT_ENUM_CAP);
    if h >= 64 || (1u64 << h) > cap {
        return Err(Error::Size {
            message: format!("enumeration cap {cap} exceeded; the exact count is {count}"),
            magnitude: count.to_string(),
        });
    }
    let m = 2 * n - 1;
    let mut pairs: Vec<(Gf2Poly, Gf2Poly)> = Vec::with_capacity(h as usize);
    for group in factor_cyclic(m, DEFAULT_SPLIT_SEED)? {
        if group.divisor == 1 {
            continue; // the X+1 factor is fixed, not paired
        }
        let mut used = vec![false; group.factors.len()];
        for i in 0..group.factors.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let partner = group.factors[i].reciprocal()?;
            let j = group.factors.iter().position(|f| *f == partner).ok_or_else(|| {
                Error::domain("internal: reciprocal partner missing from factor group")
            })?;
            debug_assert!(j != i, "self-reciprocal factor despite odd order");
            used[j] = true;
            pairs.push((group.factors[i].clone(), partner));
        }
    }
    debug_assert_eq!(pairs.len() as u64, h);

    let mut out = Vec::with_capacity(1 << h);
    let mut cur = Gf2Poly::one();
    for (first, _) in &pairs {
        cur = cur.mul(first);
    }
    let push = |cur: &Gf2Poly, out: &mut Vec<BitSequence>| -> Result<()> {
        let seq = BitSequence::from_poly(cur, n as usize)?;
        debug_assert!(seq.is_very_odd());
        out.push(seq);
        Ok(())
    };
    push(&cur, &mut out)?;
    for i in 1u64..(1 << h) {
        // Gray step: exactly the pair at the lowest set bit of i flips.
        let bit = i.trailing_zeros() as usize;
        let gray = i ^ (i >> 1);
        let (old, new) = if gray >> bit & 1 == 1 {
            (&pairs[bit].0, &pairs[bit].1)
        } else {
            (&pairs[bit].1, &pairs[bit].0)
        };
        let (q, r) = cur.divrem(old)?;
        debug_assert!(r.is_zero());
        cur = q.mul(new);
        push(&cur, &mut out)?;
    }
    Ok(out)
}

/// Independent oracle: all very odd sequences of length n by scanning every
/// one of the 2^n candidates.  Ascending order by the packed bit word.
pub fn brute_force_vos(n: u64) -> Result<Vec<BitSequence>> {
    if n == 0 {
        return Err(Error::domain("sequence length must be at least 1"));
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::size("exhaustive scan limited to length 25", n));
    }
    let n = n as u32;
    let hits: Vec<u64> = (0..1u64 << n)
        .into_par_iter()
        .filter(|&s| word_is_very_odd(s, n))
        .collect();
    hits.into_iter()
        .map(|s| BitSequence::from_words(vec![s], n as usize))
        .collect()
}

fn word_is_very_odd(s: u64, n: u32) -> bool {
    // Endpoints and total weight first: they reject most candidates.
    if s & 1 == 0 || s >> (n - 1) & 1 == 0 || s.count_ones().is_multiple_of(2) {
        return false;
    }
    (1..n).all(|k| (s & (s >> k)).count_ones() % 2 == 1)
}

/// Composition of very odd sequences: the coefficients of a(X)·b(X^{2n-1})
/// where n is the length of a.  The result has length 2mn-n-m+1 and is again
/// very odd.
pub fn tensor(a: &BitSequence, b: &BitSequence) -> Result<BitSequence> {
    if !a.is_very_odd() {
        return Err(Error::domain(format!("left input {a} is not very odd")));
    }
    if !b.is_very_odd() {
        return Err(Error::domain(format!("right input {b} is not very odd")));
    }
    let (n, m) = (a.len(), b.len());
    let stride = 2 * n - 1;
    let spread_b = Gf2Poly::from_exponents(
        &(0..m).filter(|&j| b.get(j)).map(|j| j * stride).collect::<Vec<_>>(),
    );
    let product = a.to_poly().mul(&spread_b);
    let out_len = 2 * m * n - n - m + 1;
    let out = BitSequence::from_poly(&product, out_len)?;
    debug_assert!(out.is_very_odd());
    Ok(out)
}

/// ord_2(p) is odd iff 2^(odd part of p-1) = 1 mod p; no factoring needed.
/// Shared with the prime-classification and census modules so every route
/// agrees on membership of a single prime.
pub(crate) fn prime_order_odd(p: u64) -> bool {
    debug_assert!(p % 2 == 1 && p > 1);
    let mut t = p - 1;
    while t.is_multiple_of(2) {
        t /= 2;
    }
    pow_mod(2, t, p) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> BitSequence {
        s.parse().unwrap()
    }

    fn naive_autocorrelation(bits: &[bool], k: usize) -> u64 {
        (0..bits.len() - k)
            .filter(|&i| bits[i] && bits[i + k])
            .count() as u64
    }

    #[test]
    fn profile_known_values() {
        assert_eq!(
            seq("101011100011").autocorrelation_profile(),
            vec![7, 3, 3, 1, 3, 3, 3, 1, 1, 1, 1, 1]
        );
        assert_eq!(seq("1").autocorrelation_profile(), vec![1]);
        assert_eq!(seq("1101").autocorrelation_profile(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn very_odd_verdicts() {
        assert!(seq("101011100011").is_very_odd());
        assert!(seq("1").is_very_odd());
        assert!(seq("1101").is_very_odd());
        assert!(seq("1011").is_very_odd());
        assert!(!seq("11").is_very_odd()); // A_0 = 2
        assert!(!seq("111").is_very_odd());
        assert!(!seq("0110").is_very_odd());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<BitSequence>().is_err());
        assert!("10a1".parse::<BitSequence>().is_err());
        assert_eq!(seq("0101").to_string(), "0101");
    }

    #[test]
    fn count_known_values() {
        let h = |n: u64| s_count(n).unwrap();
        assert_eq!(h(1).value(), Some(1));
        assert_eq!(h(2).value(), Some(0));
        assert_eq!(h(3).value(), Some(0));
        assert_eq!(h(4).value(), Some(2));
        assert_eq!(h(5).value(), Some(0));
        assert_eq!(h(12).value(), Some(2));
        assert_eq!(h(16).value(), Some(8));
        assert_eq!(h(25).value(), Some(4));
        assert_eq!(h(37).value(), Some(16));
        assert_eq!(h(64).value(), Some(512));
        assert!(s_count(0).is_err());
    }

    #[test]
    fn enumerate_small_lengths() {
        let four: Vec<String> = enumerate_vos(4, None)
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut sorted = four.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["1011", "1101"]);
        assert!(enumerate_vos(2, None).unwrap().is_empty());
        let twelve = enumerate_vos(12, None).unwrap();
        assert_eq!(twelve.len(), 2);
        assert!(twelve.iter().any(|s| s.to_string() == "101011100011"));
    }

    #[test]
    fn enumerate_cap_reports_exact_count() {
        let err = enumerate_vos(64, Some(4)).unwrap_err();
        match err {
            Error::Size { message, magnitude } => {
                assert!(message.contains("512"), "message = {message}");
                assert_eq!(magnitude, "512");
            }
            other => panic!("expected size error, got {other:?}"),
        }
    }

    #[test]
    fn enumerate_matches_brute_force_to_16() {
        for n in 1..=16u64 {
            let mut a: Vec<String> = enumerate_vos(n, None)
                .unwrap()
                .iter()
                .map(|s| s.to_string())
                .collect();
            let mut b: Vec<String> = brute_force_vos(n)
                .unwrap()
                .iter()
                .map(|s| s.to_string())
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "n = {n}");
            assert_eq!(a.len() as u128, s_count(n).unwrap().value().unwrap());
        }
        assert!(brute_force_vos(26).is_err());
    }

    #[test]
    fn factor_identity_for_enumerated_sequences() {
        for n in [4u64, 12, 16] {
            let m = 2 * n - 1;
            for s in enumerate_vos(n, None).unwrap() {
                let b = s.to_poly();
                let product = Gf2Poly::x_power_plus_one(1)
                    .mul(&b)
                    .mul(&b.reciprocal().unwrap());
                assert_eq!(product, Gf2Poly::x_power_plus_one(m as usize));
            }
        }
    }

    #[test]
    fn tensor_cases() {
        let a = seq("1101");
        let t = tensor(&a, &a).unwrap();
        assert_eq!(t.len(), 25);
        assert!(t.is_very_odd());
        // length-1 identity on either side
        assert_eq!(tensor(&seq("1"), &a).unwrap(), a);
        assert_eq!(tensor(&a, &seq("1")).unwrap(), a);
        assert!(tensor(&seq("11"), &a).is_err());
        // all four tensor squares of length-4 sequences are length-25 very
        // odd sequences, and S(25) = 4, so they are exactly the enumeration.
        let fours = enumerate_vos(4, None).unwrap();
        let mut squares: Vec<String> = fours
            .iter()
            .flat_map(|x| fours.iter().map(move |y| tensor(x, y).unwrap().to_string()))
            .collect();
        squares.sort();
        squares.dedup();
        let mut all: Vec<String> = enumerate_vos(25, None)
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        all.sort();
        assert_eq!(squares, all);
    }

    #[test]
    fn tensor_is_injective_on_pairs() {
        let fours = enumerate_vos(4, None).unwrap();
        let twelves = enumerate_vos(12, None).unwrap();
        let mut seen = std::collections::HashSet::new();
        for a in &fours {
            for b in &twelves {
                assert!(seen.insert(tensor(a, b).unwrap()), "tensor collision");
            }
        }
        assert_eq!(seen.len(), fours.len() * twelves.len());
    }

    #[test]
    fn periodicity() {
        assert!(seq("110110").is_periodic());
        assert!(seq("1111").is_periodic());
        assert!(!seq("101011100011").is_periodic());
        assert!(!seq("1").is_periodic());
        assert!(!seq("110").is_periodic());
        for n in [4u64, 12, 16] {
            for s in enumerate_vos(n, None).unwrap() {
                assert!(!s.is_periodic(), "{s} should be aperiodic");
            }
        }
    }

    #[test]
    fn nonzero_counts_force_length_residue() {
        // S(n) > 0 requires 2n-1 = +-1 mod 8, i.e. n = 0 or 1 mod 4.
        for n in 1..=2000u64 {
            if !s_count(n).unwrap().is_zero() {
                assert!(n % 4 == 0 || n % 4 == 1, "n = {n}");
            }
        }
    }

    #[test]
    fn count_supermultiplicative_under_tensor_lengths() {
        for m in 1..=40u64 {
            for n in 1..=40u64 {
                let (sm, sn) = (s_count(m).unwrap(), s_count(n).unwrap());
                if let (Some(hm), Some(hn)) = (sm.exponent(), sn.exponent()) {
                    let combined = s_count(2 * m * n - n - m + 1).unwrap();
                    let hc = combined.exponent().expect("tensor target must be nonzero");
                    assert!(hc >= hm + hn, "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn squared_length_identity_characterized() {
        // S(n^2 + (n-1)^2) = S(n)^2 > 0 exactly when 2n-1 is a prime power
        // p^k with odd-order 2 mod p whose order grows from p to p^2.
        // (n = 1 is degenerate on both sides and excluded.)
        for n in 2..=200u64 {
            let m = 2 * n - 1;
            let target = s_count(n * n + (n - 1) * (n - 1)).unwrap();
            let base = s_count(n).unwrap();
            let lhs = match (target.exponent(), base.exponent()) {
                (Some(ht), Some(hb)) => ht == 2 * hb,
                _ => false,
            };
            let f = factorize(m).unwrap();
            let rhs = f.factors().len() == 1 && {
                let p = f.factors()[0].0;
                prime_order_odd(p)
                    && crate::arith::multiplicative_order(2, p).unwrap()
                        != crate::arith::multiplicative_order(2, p * p).unwrap()
            };
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    proptest! {
        #[test]
        fn autocorrelation_matches_naive(bits in proptest::collection::vec(any::<bool>(), 1..200)) {
            let mut words = vec![0u64; bits.len().div_ceil(64)];
            for (i, &b) in bits.iter().enumerate() {
                if b {
                    words[i / 64] |= 1 << (i % 64);
                }
            }
            let s = BitSequence::from_words(words, bits.len()).unwrap();
            for k in 0..bits.len() {
                prop_assert_eq!(s.autocorrelation(k), naive_autocorrelation(&bits, k));
            }
        }

        #[test]
        fn display_round_trip(bits in "[01]{1,150}") {
            prop_assume!(!bits.is_empty());
            let s: BitSequence = bits.parse().unwrap();
            prop_assert_eq!(s.to_string(), bits);
        }
    }
}
