//! Classification of odd primes by the multiplicative order of 2: the class
//! P of primes with odd ord_2(p), its refinement P_m by the index
//! m = (p-1)/ord_2(p), the non-Wieferich subclass P'_m, and a constrained
//! search that finds primes in prescribed classes and congruence classes.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, gcd, is_prime, multiplicative_order, pow_mod};
use crate::error::{Error, Result};
use crate::sequences::prime_order_odd;

/// Largest bound accepted by [`pm_members`].
pub const PM_SCAN_LIMIT: u64 = 100_000_000;

/// Largest bound accepted by [`wieferich_scan`].
pub const WIEFERICH_SCAN_LIMIT: u64 = 10_000_000;

fn simple_odd_sieve(limit: u64) -> Vec<bool> {
    // is_prime_odd[i] refers to 2i+1
    let n = (limit as usize).div_ceil(2);
    let mut flags = vec![true; n.max(1)];
    flags[0] = false; // 1
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if flags[i] {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j < n {
                flags[j] = false;
                j += p;
            }
        }
        i += 1;
    }
    flags
}

/// All primes up to `limit`, ascending; odd-only segmented sieve with
/// segments processed in parallel and merged in order.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    if limit < 1 << 16 {
        let flags = simple_odd_sieve(limit);
        let mut out = vec![2];
        out.extend(
            flags
                .iter()
                .enumerate()
                .filter(|&(_, &f)| f)
                .map(|(i, _)| 2 * i as u64 + 1),
        );
        return out;
    }
    let root = (limit as f64).sqrt() as u64 + 2;
    let base: Vec<u64> = {
        let flags = simple_odd_sieve(root);
        flags
            .iter()
            .enumerate()
            .filter(|&(_, &f)| f)
            .map(|(i, _)| 2 * i as u64 + 1)
            .collect()
    };
    const SEGMENT_ODDS: u64 = 1 << 19; // 2^20 integers per segment
    let segments: Vec<(u64, u64)> = {
        let mut v = Vec::new();
        let mut lo = 3u64;
        while lo <= limit {
            let hi = (lo + 2 * SEGMENT_ODDS).min(limit + 1);
            v.push((lo, hi));
            lo = hi + 1 - (hi % 2); // first odd number not below hi
        }
        v
    };
    let chunks: Vec<Vec<u64>> = segments
        .par_iter()
        .map(|&(lo, hi)| {
            let count = ((hi - lo) as usize).div_ceil(2);
            let mut flags = vec![true; count];
            for &p in &base {
                if p * p >= hi {
                    break;
                }
                let mut start = p * p;
                if start < lo {
                    start = lo.div_ceil(p) * p;
                    if start % 2 == 0 {
                        start += p;
                    }
                }
                let mut j = start;
                while j < hi {
                    flags[((j - lo) / 2) as usize] = false;
                    j += 2 * p;
                }
            }
            flags
                .iter()
                .enumerate()
                .filter(|&(_, &f)| f)
                .map(|(i, _)| lo + 2 * i as u64)
                .collect()
        })
        .collect();
    let mut out = vec![2];
    for c in chunks {
        out.extend(c);
    }
    out
}

/// Everything the order of 2 says about one odd prime.  `index` is
/// r_2(p) = (p-1)/ord_2(p); the class flags `in_pm` and `in_pm_prime` are
/// relative to m = index, the only m for which p can be a member.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeClass {
    pub p: u64,
    pub ord2: u64,
    pub index: u64,
    /// ord_2(p) odd.
    pub in_p: bool,
    /// 2^(p-1) = 1 mod p^2.
    pub wieferich: bool,
    /// (p-1)/index odd and ord_2(p) = (p-1)/index; equivalent to `in_p`.
    pub in_pm: bool,
    /// member of P_m with 2^((p-1)/m) != 1 mod p^2.
    pub in_pm_prime: bool,
}

pub fn classify_prime(p: u64) -> Result<PrimeClass> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    if p >= 3_037_000_499 {
        return Err(Error::size("p^2 must fit in 64 bits", p));
    }
    let ord2 = multiplicative_order(2, p)?;
    let index = (p - 1) / ord2;
    let in_p = ord2 % 2 == 1;
    let psq = p * p;
    let wieferich = pow_mod(2, p - 1, psq) == 1;
    let in_pm_prime = in_p && pow_mod(2, ord2, psq) != 1;
    Ok(PrimeClass {
        p,
        ord2,
        index,
        in_p,
        wieferich,
        in_pm: in_p,
        in_pm_prime,
    })
}

/// All primes p <= x with (p-1)/m odd and ord_2(p) = (p-1)/m, ascending.
/// The scan is honest: classes that are provably empty (odd m, or m with
/// 2-adic valuation exactly 2) still run and come back empty.
pub fn pm_members(m: u64, x: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::domain("index m must be positive"));
    }
    if x > PM_SCAN_LIMIT {
        return Err(Error::size("pm_members bound too large", x));
    }
    let modulus = 2 * m;
    let residue = (1 + m) % modulus;
    let primes = sieve_primes(x);
    Ok(primes
        .into_par_iter()
        .filter(|&p| {
            if p < 3 || p % modulus != residue {
                return false;
            }
            let k = (p - 1) / m;
            debug_assert_eq!(k % 2, 1);
            if pow_mod(2, k, p) != 1 {
                return false;
            }
            // minimality: no proper divisor of k may already give 1
            factorize(k)
                .expect("k >= 1")
                .factors()
                .iter()
                .all(|&(l, _)| pow_mod(2, k / l, p) != 1)
        })
        .collect())
}

/// All Wieferich primes up to x: 2^(p-1) = 1 mod p^2.
pub fn wieferich_scan(x: u64) -> Result<Vec<u64>> {
    if x > WIEFERICH_SCAN_LIMIT {
        return Err(Error::size("wieferich_scan bound too large", x));
    }
    Ok(sieve_primes(x)
        .into_par_iter()
        .filter(|&p| p > 2 && pow_mod(2, p - 1, p * p) == 1)
        .collect())
}

/// Primes p <= x with odd ord_2(p), ascending.
pub fn odd_order_primes(x: u64) -> Vec<u64> {
    sieve_primes(x)
        .into_par_iter()
        .filter(|&p| p > 2 && prime_order_odd(p))
        .collect()
}

/// Constraints for a class-plus-congruence prime search.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SearchSpec {
    /// Target r_2(p), with ord_2(p) = (p-1)/index required odd.
    pub index: Option<u64>,
    /// Required congruences p = a mod f.
    pub required: Vec<(u64, u64)>,
    /// Forbidden congruences p != a mod f.
    pub forbidden: Vec<(u64, u64)>,
    /// Additionally require 2^((p-1)/index) != 1 mod p^2.
    pub non_wieferich: bool,
    /// Inclusive search limit.
    pub bound: u64,
}

/// Merges x = r1 mod m1 with x = r2 mod m2; None when inconsistent.
pub(crate) fn crt_merge(r1: u64, m1: u64, r2: u64, m2: u64) -> Option<(u64, u64)> {
    let g = gcd(m1, m2);
    if r1 % g != r2 % g {
        return None;
    }
    let lcm = m1 / g * m2;
    // step through the first progression; moduli here are small
    let mut x = r1 % lcm;
    while x % m2 != r2 % m2 {
        x += m1;
    }
    Some((x, lcm))
}

/// Smallest prime satisfying the spec, scanning the merged congruence class
/// in ascending order, or None when nothing exists up to the bound.
pub fn constrained_prime_search(spec: &SearchSpec) -> Result<Option<u64>> {
    if spec.non_wieferich && spec.index.is_none() {
        return Err(Error::domain(
            "the non-Wieferich condition is relative to a target index",
        ));
    }
    // start from "p odd"
    let (mut residue, mut modulus) = (1u64, 2u64);
    if let Some(m) = spec.index {
        if m == 0 {
            return Err(Error::domain("target index must be positive"));
        }
        // (p-1)/m odd means p = 1 + m mod 2m
        let (r, mm) = crt_merge(residue, modulus, (1 + m) % (2 * m), 2 * m)
            .ok_or_else(|| Error::domain("index parity contradicts the parity of p"))?;
        residue = r;
        modulus = mm;
    }
    for &(a, f) in &spec.required {
        if f == 0 {
            return Err(Error::domain("congruence modulus must be positive"));
        }
        let (r, mm) = crt_merge(residue, modulus, a % f, f).ok_or_else(|| {
            Error::domain(format!("congruence p = {a} mod {f} is inconsistent"))
        })?;
        residue = r;
        modulus = mm;
    }
    let mut p = if residue < 3 { residue + modulus } else { residue };
    while p <= spec.bound {
        if candidate_passes(p, spec) {
            return Ok(Some(p));
        }
        p += modulus;
    }
    Ok(None)
}

fn candidate_passes(p: u64, spec: &SearchSpec) -> bool {
    if spec.forbidden.iter().any(|&(a, f)| p % f == a % f) {
        return false;
    }
    if !is_prime(p) {
        return false;
    }
    if let Some(m) = spec.index {
        let k = (p - 1) / m;
        if pow_mod(2, k, p) != 1 {
            return false;
        }
        let minimal = factorize(k)
            .expect("k >= 1")
            .factors()
            .iter()
            .all(|&(l, _)| pow_mod(2, k / l, p) != 1);
        if !minimal {
            return false;
        }
        if spec.non_wieferich && pow_mod(2, k, p * p) == 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::irreducible_count;

    #[test]
    fn sieve_matches_trial_division() {
        let primes = sieve_primes(10_000);
        assert_eq!(primes.len(), 1229);
        assert!(primes.iter().all(|&p| is_prime(p)));
        assert_eq!(primes[0], 2);
        assert_eq!(*primes.last().unwrap(), 9973);
        // crossing segment boundaries
        let big = sieve_primes(2_000_000);
        assert_eq!(big.len(), 148933);
    }

    #[test]
    fn classification_examples() {
        let c7 = classify_prime(7).unwrap();
        assert_eq!((c7.ord2, c7.index), (3, 2));
        assert!(c7.in_p && c7.in_pm && c7.in_pm_prime && !c7.wieferich);

        let c1093 = classify_prime(1093).unwrap();
        assert_eq!(c1093.ord2, 364);
        assert!(c1093.wieferich && !c1093.in_p);

        let c3511 = classify_prime(3511).unwrap();
        assert_eq!((c3511.ord2, c3511.index), (1755, 2));
        assert!(c3511.wieferich);
        assert!(c3511.in_pm && !c3511.in_pm_prime);

        assert!(classify_prime(9).is_err());
        assert!(classify_prime(2).is_err());
    }

    #[test]
    fn pm_member_lists() {
        assert_eq!(pm_members(2, 100).unwrap(), vec![7, 23, 47, 71, 79]);
        let to_1000 = pm_members(2, 1000).unwrap();
        assert!(to_1000.starts_with(&[7, 23, 47, 71, 79, 103, 167, 191, 199]));
        for &p in &to_1000 {
            let c = classify_prime(p).unwrap();
            assert_eq!(c.index, 2);
            assert!(c.in_p);
        }
        assert!(pm_members(3, 10_000).unwrap().is_empty());
        assert!(pm_members(4, 10_000).unwrap().is_empty());
        assert!(pm_members(1, 10_000).unwrap().is_empty());
        assert!(pm_members(0, 10).is_err());
    }

    #[test]
    fn wieferich_examples() {
        assert_eq!(wieferich_scan(4000).unwrap(), vec![1093, 3511]);
        assert!(wieferich_scan(1000).unwrap().is_empty());
        assert_eq!(wieferich_scan(1093).unwrap(), vec![1093]);
        assert!(wieferich_scan(WIEFERICH_SCAN_LIMIT + 1).is_err());
    }

    #[test]
    fn odd_order_primes_are_plus_minus_one_mod_eight() {
        let members = odd_order_primes(100_000);
        assert!(members.starts_with(&[7, 23, 31, 47, 71, 73, 79]));
        for &p in &members {
            assert!(p % 8 == 1 || p % 8 == 7, "p = {p}");
            // each member sits in exactly one P_m, for m = its own index,
            // and that m is even with 2-adic valuation != 2
            let c = classify_prime(p).unwrap();
            assert!(c.in_pm);
            assert_eq!(c.index % 2, 0);
            assert_ne!(c.index.trailing_zeros(), 2, "p = {p}");
        }
    }

    #[test]
    fn pm_without_pm_prime_forces_wieferich() {
        for &p in odd_order_primes(1_000_000).iter() {
            let c = classify_prime(p).unwrap();
            if c.in_pm && !c.in_pm_prime {
                assert!(c.wieferich, "p = {p}");
            }
        }
    }

    #[test]
    fn constrained_search_smallest_members() {
        // index 2, p = 1 mod 3: the smallest such prime is 7
        let got = constrained_prime_search(&SearchSpec {
            index: Some(2),
            required: vec![(1, 3)],
            bound: 10_000,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(got, Some(7));
        // index 2, p = 1 mod 15, p != 1 mod 13: smallest is 271
        let got = constrained_prime_search(&SearchSpec {
            index: Some(2),
            required: vec![(1, 15)],
            forbidden: vec![(1, 13)],
            bound: 10_000,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(got, Some(271));
        // index 8, p = 2 mod 3, p = 1 mod 5, p != 1 mod 11 or 13: 1721
        let got = constrained_prime_search(&SearchSpec {
            index: Some(8),
            required: vec![(2, 3), (1, 5)],
            forbidden: vec![(1, 11), (1, 13)],
            bound: 10_000,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(got, Some(1721));
    }

    #[test]
    fn alternative_witnesses_satisfy_the_same_constraints() {
        // larger members of the same classes, useful cross-checks that the
        // constraint sets admit several solutions
        let c79 = classify_prime(79).unwrap();
        assert_eq!((c79.index, 79 % 3), (2, 1));
        assert!(c79.in_p);
        let c991 = classify_prime(991).unwrap();
        assert_eq!((c991.index, 991 % 15, 991 % 13), (2, 1, 3));
        assert!(c991.in_p);
        let c1721 = classify_prime(1721).unwrap();
        assert_eq!(c1721.index, 8);
        assert!(c1721.in_p);
        assert_eq!((1721 % 3, 1721 % 5, 1721 % 11, 1721 % 13), (2, 1, 5, 5));
    }

    #[test]
    fn search_edge_cases() {
        // inconsistent congruences
        assert!(constrained_prime_search(&SearchSpec {
            required: vec![(1, 4), (3, 4)],
            bound: 100,
            ..Default::default()
        })
        .is_err());
        // index 2 forces p = 3 mod 4, clashing with p = 1 mod 4
        assert!(constrained_prime_search(&SearchSpec {
            index: Some(2),
            required: vec![(1, 4)],
            bound: 100,
            ..Default::default()
        })
        .is_err());
        // nothing in an empty class: index 4 has no members
        let none = constrained_prime_search(&SearchSpec {
            index: Some(4),
            bound: 50_000,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(none, None);
        assert!(constrained_prime_search(&SearchSpec {
            non_wieferich: true,
            bound: 100,
            ..Default::default()
        })
        .is_err());
    }

    #[test]
    fn exchange_principle_on_equal_index_primes() {
        // swapping p for q with the same index and the same order-gcd
        // against m preserves the irreducible count of X^(pm)+1
        assert_eq!(irreducible_count(2, 7 * 23).unwrap(), 9);
        assert_eq!(irreducible_count(2, 79 * 23).unwrap(), 9);
        let pool = odd_order_primes(3000);
        let mut checked = 0;
        'outer: for (i, &p) in pool.iter().enumerate() {
            let cp = classify_prime(p).unwrap();
            for &q in &pool[i + 1..] {
                let cq = classify_prime(q).unwrap();
                if cp.index != cq.index {
                    continue;
                }
                for m in [3u64, 5, 9, 11, 23, 25, 33, 47] {
                    if m % p == 0 || m % q == 0 {
                        continue;
                    }
                    let om = multiplicative_order(2, m).unwrap();
                    if gcd(cp.ord2, om) != gcd(cq.ord2, om) {
                        continue;
                    }
                    assert_eq!(
                        irreducible_count(2, p * m).unwrap(),
                        irreducible_count(2, q * m).unwrap(),
                        "p={p} q={q} m={m}"
                    );
                    checked += 1;
                    if checked >= 60 {
                        break 'outer;
                    }
                }
            }
        }
        assert!(checked >= 50, "only {checked} exchange instances found");
    }

    #[test]
    fn exchange_principle_for_squares() {
        // i_2(49) = i_2(113) = 5 and the order gcds against 23 agree, so the
        // square can be exchanged for a single prime
        assert_eq!(irreducible_count(2, 49).unwrap(), 5);
        assert_eq!(irreducible_count(2, 113).unwrap(), 5);
        assert_eq!(irreducible_count(2, 49 * 23).unwrap(), 15);
        assert_eq!(irreducible_count(2, 113 * 23).unwrap(), 15);
        // programmatic instances: p^2 against a prime q with matching
        // irreducible count and order gcds
        let mut checked = 0;
        for p in [7u64, 23, 47] {
            let ip = irreducible_count(2, p * p).unwrap();
            let op = multiplicative_order(2, p * p).unwrap();
            for q in sieve_primes(5000) {
                if q == p || q < 3 {
                    continue;
                }
                if irreducible_count(2, q).unwrap() != ip {
                    continue;
                }
                let oq = multiplicative_order(2, q).unwrap();
                for m in [23u64, 31, 73] {
                    if m == p || m == q {
                        continue;
                    }
                    let om = multiplicative_order(2, m).unwrap();
                    if gcd(op, om) != gcd(oq, om) {
                        continue;
                    }
                    assert_eq!(
                        irreducible_count(2, p * p * m).unwrap(),
                        irreducible_count(2, q * m).unwrap(),
                        "p={p} q={q} m={m}"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked >= 5, "only {checked} square-exchange instances");
    }
}
