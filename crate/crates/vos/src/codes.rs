//! The coding-theory side of very odd sequences: each one generates a
//! [2n, n] self-dual binary code (cyclic code of length 2n-1 from the
//! sequence polynomial, extended by an overall parity bit), and cyclic
//! difference sets with odd parameters induce candidate sequences through a
//! gcd with X^N + 1.
//!
//! The self-duality is exactly the very-odd condition: rows i and j of the
//! generator matrix overlap in A_|i-j| positions among the cyclic part and
//! share the parity bit, so their inner product is A_|i-j| + 1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly::{Gf2Poly, SplitMix};
use crate::sequences::BitSequence;

/// Largest dimension for which the exact codeword scan is attempted.
pub const EXHAUSTIVE_DIMENSION_LIMIT: usize = 28;

/// A binary linear code given by independent generator rows, packed one
/// codeword per u128 (bit i = coordinate i), so lengths up to 128.
#[derive(Debug, Clone)]
pub struct BinaryLinearCode {
    length: usize,
    rows: Vec<u128>,
}

fn rank(rows: &[u128]) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for &row in rows {
        let mut v = row;
        for &b in &basis {
            let pivot = 127 - b.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

impl BinaryLinearCode {
    pub fn new(length: usize, rows: Vec<u128>) -> Result<Self> {
        if length == 0 || length > 128 {
            return Err(Error::domain(format!(
                "code length {length} outside supported range 1..=128"
            )));
        }
        if rows.is_empty() {
            return Err(Error::domain("a code needs at least one generator row"));
        }
        let mask = if length == 128 {
            u128::MAX
        } else {
            (1u128 << length) - 1
        };
        if rows.iter().any(|&r| r & !mask != 0) {
            return Err(Error::domain("generator row exceeds the code length"));
        }
        if rank(&rows) != rows.len() {
            return Err(Error::domain("generator rows are linearly dependent"));
        }
        Ok(BinaryLinearCode { length, rows })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    /// G * G^T = 0 and dimension = length / 2.
    pub fn is_self_dual(&self) -> bool {
        if 2 * self.rows.len() != self.length {
            return false;
        }
        self.rows.iter().enumerate().all(|(i, &a)| {
            self.rows[i..]
                .iter()
                .all(|&b| (a & b).count_ones() % 2 == 0)
        })
    }

    /// Self-orthogonality plus row weights divisible by 4 force every
    /// codeword weight to be divisible by 4; an exact doubly-even test that
    /// avoids enumeration.
    pub fn rows_doubly_even(&self) -> bool {
        let self_orthogonal = self.rows.iter().enumerate().all(|(i, &a)| {
            self.rows[i + 1..]
                .iter()
                .all(|&b| (a & b).count_ones() % 2 == 0)
        });
        self_orthogonal && self.rows.iter().all(|&r| r.count_ones() % 4 == 0)
    }
}

/// Builds the [2n, n] code of a very odd sequence: row i holds X^i * b(X)
/// inside the cyclic length 2n-1 plus the parity coordinate.
pub fn build_self_dual_code(s: &BitSequence) -> Result<BinaryLinearCode> {
    if !s.is_very_odd() {
        return Err(Error::domain(format!(
            "sequence {s} is not very odd; the construction would not be self-dual"
        )));
    }
    let n = s.len();
    if n > 64 {
        return Err(Error::size("code length 2n exceeds 128", n as u64));
    }
    let poly = s.to_poly();
    let words = poly.words();
    let mut base: u128 = words[0] as u128;
    if words.len() > 1 {
        base |= (words[1] as u128) << 64;
    }
    // A_0 is odd for a very odd sequence, so every row needs the parity bit.
    let parity = 1u128 << (2 * n - 1);
    let rows = (0..n).map(|i| (base << i) | parity).collect();
    BinaryLinearCode::new(2 * n, rows)
}

/// Exact weight data from a full codeword scan.
#[derive(Debug, Clone, Serialize)]
pub struct CodeProperties {
    pub length: usize,
    pub dimension: usize,
    pub self_dual: bool,
    pub doubly_even: bool,
    pub min_distance: u32,
    /// weight_enumerator[w] = number of codewords of weight w.
    pub weight_enumerator: Vec<u64>,
}

/// Scans all 2^dimension codewords (Gray order, one row XOR per step).
pub fn code_properties(c: &BinaryLinearCode) -> Result<CodeProperties> {
    let k = c.dimension();
    if k > EXHAUSTIVE_DIMENSION_LIMIT {
        return Err(Error::size(
            "dimension too large for exhaustive enumeration",
            k as u64,
        ));
    }
    let mut counts = vec![0u64; c.length() + 1];
    counts[0] = 1;
    let mut cw = 0u128;
    let mut min_w = u32::MAX;
    for i in 1u64..1 << k {
        cw ^= c.rows()[i.trailing_zeros() as usize];
        let w = cw.count_ones();
        counts[w as usize] += 1;
        min_w = min_w.min(w);
    }
    let doubly_even = counts
        .iter()
        .enumerate()
        .all(|(w, &cnt)| cnt == 0 || w % 4 == 0);
    Ok(CodeProperties {
        length: c.length(),
        dimension: k,
        self_dual: c.is_self_dual(),
        doubly_even,
        min_distance: if k == 0 { 0 } else { min_w },
        weight_enumerator: counts,
    })
}

/// Random-codeword weight statistics for codes too large to scan; the
/// minimum is only an upper bound on the true distance.
#[derive(Debug, Clone, Serialize)]
pub struct SampledWeights {
    pub samples: u64,
    pub min_weight: u32,
    pub all_doubly_even: bool,
}

pub fn sampled_weights(c: &BinaryLinearCode, samples: u64, seed: u64) -> SampledWeights {
    let k = c.dimension();
    let mut rng = SplitMix::new(seed);
    let mut min_w = u32::MAX;
    let mut all_div4 = true;
    let mask = if k == 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    };
    let mut done = 0u64;
    while done < samples {
        let msg = (rng.next() as u128 | (rng.next() as u128) << 64) & mask;
        if msg == 0 {
            continue;
        }
        let mut cw = 0u128;
        let mut m = msg;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            cw ^= c.rows()[i];
        }
        let w = cw.count_ones();
        min_w = min_w.min(w);
        all_div4 &= w.is_multiple_of(4);
        done += 1;
    }
    SampledWeights {
        samples,
        min_weight: min_w,
        all_doubly_even: all_div4,
    }
}

/// A verified 2-(N, K, lambda) cyclic difference set.
#[derive(Debug, Clone, Serialize)]
pub struct DifferenceSetWitness {
    pub modulus: u64,
    pub set: Vec<u64>,
    pub k: u64,
    pub lambda: u64,
}

/// Checks that every nonzero residue occurs equally often among pairwise
/// differences; the error names the first residue breaking the balance.
pub fn verify_difference_set(set: &[u64], modulus: u64) -> Result<DifferenceSetWitness> {
    if modulus < 2 {
        return Err(Error::domain("difference set modulus must be at least 2"));
    }
    if set.is_empty() {
        return Err(Error::domain("difference set must be nonempty"));
    }
    let mut d: Vec<u64> = set.iter().map(|&v| v % modulus).collect();
    d.sort_unstable();
    if d.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::domain("residues are not distinct modulo N"));
    }
    let mut counts = vec![0u64; modulus as usize];
    for &a in &d {
        for &b in &d {
            if a != b {
                counts[((a + modulus - b) % modulus) as usize] += 1;
            }
        }
    }
    let lambda = counts[1];
    for (res, &cnt) in counts.iter().enumerate().skip(1) {
        if cnt != lambda {
            return Err(Error::domain(format!(
                "not a difference set: residue {res} occurs {cnt} times, residue 1 occurs {lambda} times"
            )));
        }
    }
    let k = d.len() as u64;
    debug_assert_eq!(k * (k - 1), lambda * (modulus - 1));
    Ok(DifferenceSetWitness {
        modulus,
        set: d,
        k,
        lambda,
    })
}

/// Converts a difference set with odd K and lambda into a very odd sequence
/// of length (N+1)/2 by extracting gcd(sum of X^d, X^N + 1).  The claimed
/// construction does not hold for every such set — (15,7,3) and (21,5,1)
/// have odd parameters but even order of 2 — so the postcondition is checked
/// and failures are reported as domain errors rather than bad sequences.
pub fn difference_set_sequence(w: &DifferenceSetWitness) -> Result<BitSequence> {
    let n = w.modulus;
    if n.is_multiple_of(2) {
        return Err(Error::domain("modulus N must be odd"));
    }
    if w.k.is_multiple_of(2) || w.lambda.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "K = {} and lambda = {} must both be odd",
            w.k, w.lambda
        )));
    }
    let indicator =
        Gf2Poly::from_exponents(&w.set.iter().map(|&d| d as usize).collect::<Vec<_>>());
    let g = indicator.gcd(&Gf2Poly::x_power_plus_one(n as usize));
    let expected = (n as usize - 1) / 2;
    if g.degree() != Some(expected) {
        return Err(Error::domain(format!(
            "induced divisor has degree {:?}, want {expected}; no very odd sequence arises from this set",
            g.degree()
        )));
    }
    let seq = BitSequence::from_poly(&g, expected + 1)?;
    if !seq.is_very_odd() {
        return Err(Error::domain(
            "induced sequence fails the odd-autocorrelation check",
        ));
    }
    Ok(seq)
}

/// Search budget guarding [`find_difference_sets`].
pub const DEFAULT_SEARCH_NODES: u64 = 50_000_000;

/// Exhaustive search for K-element difference sets modulo N, normalized to
/// contain 0 (every difference set has a translate that does).  Results are
/// ascending; stops after `max_results` sets.
pub fn find_difference_sets(
    modulus: u64,
    k: u64,
    max_results: usize,
    node_budget: Option<u64>,
) -> Result<Vec<Vec<u64>>> {
    if !(2..=40).contains(&modulus) {
        return Err(Error::domain(
            "subset search supported for moduli 2..=40 only",
        ));
    }
    if k == 0 || k > modulus {
        return Err(Error::domain("need 1 <= K <= N"));
    }
    let pairs = k * (k - 1);
    if !pairs.is_multiple_of(modulus - 1) {
        return Ok(Vec::new()); // K(K-1) = lambda(N-1) has no integer solution
    }
    let lambda = pairs / (modulus - 1);
    let budget = node_budget.unwrap_or(DEFAULT_SEARCH_NODES);
    let mut counts = vec![0u64; modulus as usize];
    let mut chosen = vec![0u64];
    let mut out = Vec::new();
    let mut nodes = 0u64;
    search(
        modulus,
        k,
        lambda,
        1,
        &mut chosen,
        &mut counts,
        &mut out,
        max_results,
        budget,
        &mut nodes,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: u64,
    k: u64,
    lambda: u64,
    next: u64,
    chosen: &mut Vec<u64>,
    counts: &mut [u64],
    out: &mut Vec<Vec<u64>>,
    max_results: usize,
    budget: u64,
    nodes: &mut u64,
) -> Result<()> {
    if chosen.len() as u64 == k {
        if counts.iter().skip(1).all(|&c| c == lambda) {
            out.push(chosen.clone());
        }
        return Ok(());
    }
    let remaining = k - chosen.len() as u64;
    for v in next..=n - remaining {
        if out.len() >= max_results {
            return Ok(());
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::size("difference-set search budget exhausted", *nodes));
        }
        let mut ok = true;
        for i in 0..chosen.len() {
            let c = chosen[i];
            let d1 = ((v + n - c) % n) as usize;
            let d2 = ((c + n - v) % n) as usize;
            counts[d1] += 1;
            counts[d2] += 1;
            if counts[d1] > lambda || counts[d2] > lambda {
                // undo this partial pair and everything before it
                counts[d1] -= 1;
                counts[d2] -= 1;
                for &c2 in &chosen[..i] {
                    counts[((v + n - c2) % n) as usize] -= 1;
                    counts[((c2 + n - v) % n) as usize] -= 1;
                }
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        chosen.push(v);
        search(n, k, lambda, v + 1, chosen, counts, out, max_results, budget, nodes)?;
        chosen.pop();
        for &c in chosen.iter() {
            counts[((v + n - c) % n) as usize] -= 1;
            counts[((c + n - v) % n) as usize] -= 1;
        }
    }
    Ok(())
}
