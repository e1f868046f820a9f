//! The tableau calculus behind the value distribution of the irreducible
//! count i_2.  A squarefree odd m = p_1...p_s whose prime factors all have
//! odd order of 2 is summarised by a 2-row tableau: the top row holds the
//! residual indices e_i = r_2(p_i) and the bottom row the lambda-reduced
//! orders l_i.  The subset formula recovers i_2(m) from the tableau alone,
//! so candidate factorization shapes for a target value can be enumerated
//! and then realized by explicit prime search.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{factorize, gcd, is_prime, lcm, multiplicative_order, nu2, pow_mod};
use crate::error::{Error, Result};
use crate::sequences::order_two_odd;

/// Largest target value accepted by [`enumerate_solution_tableaux`].
pub const ENUM_VALUE_LIMIT: u64 = 100_000;

/// Largest 1+2e accepted by [`max_omega_stats`].
pub const STATS_VALUE_LIMIT: u64 = 10_000;

/// Largest witness-scan bound accepted by [`max_omega_stats`].
pub const STATS_SCAN_LIMIT: u64 = 10_000_000;

/// Largest prime-search bound accepted by [`realize_tableau`].
pub const REALIZE_BOUND_LIMIT: u64 = 100_000_000;

/// Any odd number whose squarefull part interacts with another factor's
/// order (p^2 | m together with p | ord_2(q) for another prime q | m) has
/// irreducible count at least 11 + 4·7.  Below this threshold the collapsed
/// column accounting used for the omega-1 lower bound is provably complete.
pub const TYPE_II_THRESHOLD: u64 = 39;

/// Two-row tableau: columns (e, l) with e positive and even, l positive and
/// odd, sorted by e and then l.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Tableau {
    columns: Vec<(u64, u64)>,
}

impl Tableau {
    pub fn new(mut columns: Vec<(u64, u64)>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::domain("a tableau needs at least one column"));
        }
        for &(e, l) in &columns {
            if e == 0 || e % 2 != 0 {
                return Err(Error::domain(format!("top entry {e} must be even and positive")));
            }
            if l % 2 == 0 {
                return Err(Error::domain(format!("bottom entry {l} must be odd")));
            }
        }
        columns.sort_unstable();
        Ok(Tableau { columns })
    }

    pub fn columns(&self) -> &[(u64, u64)] {
        &self.columns
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    pub fn top(&self) -> Vec<u64> {
        self.columns.iter().map(|c| c.0).collect()
    }

    pub fn bottom(&self) -> Vec<u64> {
        self.columns.iter().map(|c| c.1).collect()
    }

    /// Solution tableau: at least two columns, no top entry with 2-adic
    /// valuation exactly 2, bottom row realizable.  Columns violating the
    /// valuation condition would need primes from an empty index class.
    pub fn is_solution(&self) -> bool {
        self.size() >= 2
            && self.columns.iter().all(|&(e, _)| nu2(e) != 2)
            && is_realizable(&self.bottom()).unwrap_or(false)
    }

    /// Generalized solution tableau: the valuation condition on the top row
    /// is dropped (such columns correspond to prime powers, not primes).
    pub fn is_generalized_solution(&self) -> bool {
        self.size() >= 2 && is_realizable(&self.bottom()).unwrap_or(false)
    }

    pub fn value(&self) -> Result<u64> {
        tableau_value(self)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (e, l)) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}/{l}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Tableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix('(').unwrap_or(body);
        let body = body.strip_suffix(')').unwrap_or(body);
        let mut columns = Vec::new();
        for item in body.split_whitespace() {
            let (e, l) = item
                .split_once('/')
                .ok_or_else(|| Error::domain(format!("column '{item}' is not of the form e/l")))?;
            let e: u64 = e
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad top entry in '{item}'")))?;
            let l: u64 = l
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad bottom entry in '{item}'")))?;
            columns.push((e, l));
        }
        Tableau::new(columns)
    }
}

/// Componentwise l_i = lcm over j != i of gcd(a_j, a_i).  Defined for at
/// least two entries; every l_i divides a_i.
pub fn lambda_map(a: &[u64]) -> Result<Vec<u64>> {
    if a.len() < 2 {
        return Err(Error::domain("lambda map needs at least two entries"));
    }
    if a.contains(&0) {
        return Err(Error::domain("lambda map entries must be positive"));
    }
    Ok((0..a.len())
        .map(|i| {
            a.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1u64, |acc, (_, &x)| lcm(acc, gcd(x, a[i])))
        })
        .collect())
}

/// True iff for every prime p dividing some entry, the maximal p-adic
/// valuation among the entries is attained at least twice.  Exactly the
/// image (equivalently, the fixed points) of [`lambda_map`].
pub fn is_realizable(a: &[u64]) -> Result<bool> {
    if a.len() < 2 {
        return Err(Error::domain("realizability needs at least two entries"));
    }
    if a.contains(&0) {
        return Err(Error::domain("entries must be positive"));
    }
    let mut best: std::collections::BTreeMap<u64, (u32, u32)> = Default::default();
    for &x in a {
        for &(p, v) in factorize(x)?.factors() {
            let entry = best.entry(p).or_insert((0, 0));
            match v.cmp(&entry.0) {
                std::cmp::Ordering::Greater => *entry = (v, 1),
                std::cmp::Ordering::Equal => entry.1 += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Ok(best.values().all(|&(_, count)| count >= 2))
}

/// The tableau of a squarefree odd m with at least two prime factors, all of
/// odd order: e_i = r_2(p_i) and l = lambda of the orders, columns sorted.
pub fn tableau_of(m: u64) -> Result<Tableau> {
    if m.is_multiple_of(2) {
        return Err(Error::domain(format!("{m} is even")));
    }
    let f = factorize(m)?;
    if !f.is_squarefree() {
        return Err(Error::domain(format!("{m} is not squarefree")));
    }
    if f.omega() < 2 {
        return Err(Error::domain(format!("{m} needs at least two prime factors")));
    }
    let primes: Vec<u64> = f.factors().iter().map(|&(p, _)| p).collect();
    tableau_of_primes(&primes)
}

/// Tableau built directly from a list of at least two distinct odd primes
/// with odd order of 2; equivalent to `tableau_of` of their product but
/// safe from overflow of the product.
pub fn tableau_of_primes(primes: &[u64]) -> Result<Tableau> {
    if primes.len() < 2 {
        return Err(Error::domain("need at least two primes"));
    }
    let mut seen = BTreeSet::new();
    let mut ords = Vec::with_capacity(primes.len());
    let mut tops = Vec::with_capacity(primes.len());
    for &p in primes {
        if p < 3 || !is_prime(p) {
            return Err(Error::domain(format!("{p} is not an odd prime")));
        }
        if !seen.insert(p) {
            return Err(Error::domain(format!("repeated prime {p}")));
        }
        let ord = multiplicative_order(2, p)?;
        if ord % 2 == 0 {
            return Err(Error::domain(format!("order of 2 modulo {p} is even")));
        }
        ords.push(ord);
        tops.push((p - 1) / ord);
    }
    let bottoms = lambda_map(&ords)?;
    Tableau::new(tops.into_iter().zip(bottoms).collect())
}

fn lcm128(a: u128, b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    let g = {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    (a / g).checked_mul(b)
}

/// Subset-sum value of a column list; None on overflow.
fn columns_value(cols: &[(u64, u64)]) -> Option<u128> {
    let s = cols.len();
    if s >= 32 {
        return None;
    }
    let mut total: u128 = 0;
    for mask in 0u64..1 << s {
        let mut prod_e: u128 = 1;
        let mut prod_l: u128 = 1;
        let mut l_lcm: u128 = 1;
        for (i, &(e, l)) in cols.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod_e = prod_e.checked_mul(e as u128)?;
                prod_l = prod_l.checked_mul(l as u128)?;
                l_lcm = lcm128(l_lcm, l as u128)?;
            }
        }
        // the lcm of the chosen l's divides their product
        let term = prod_e.checked_mul(prod_l / l_lcm)?;
        total = total.checked_add(term)?;
    }
    Some(total)
}

/// Sum over all 2^s column subsets of prod(e_i) * prod(l_i) / lcm(l_i); for
/// the tableau of a squarefree m this equals i_2(m).
pub fn tableau_value(t: &Tableau) -> Result<u64> {
    let v = columns_value(t.columns())
        .ok_or_else(|| Error::size("tableau value overflows", t.size()))?;
    u64::try_from(v).map_err(|_| Error::size("tableau value overflows 64 bits", t.size()))
}

/// All (generalized, if flagged) solution tableaux with at least two columns
/// and value exactly r.  The search is exhaustive: the column count is at
/// most log_3 r, the top row satisfies prod(1+e_i) <= r, and the bottom-row
/// lcm L obeys prod(e_i)·L < r because realizability forces the full-subset
/// term up to at least prod(e_i)·L.
pub fn enumerate_solution_tableaux(r: u64, generalized: bool) -> Result<Vec<Tableau>> {
    if r.is_multiple_of(2) {
        return Err(Error::domain("target value must be odd"));
    }
    if r > ENUM_VALUE_LIMIT {
        return Err(Error::size("enumeration target too large", r));
    }
    let mut out: BTreeSet<Tableau> = BTreeSet::new();
    if r < 9 {
        return Ok(Vec::new()); // the smallest two-column value is (2/1 2/1) = 9
    }
    let mut max_s = 1;
    while 3u64.checked_pow(max_s + 1).map(|v| v <= r) == Some(true) {
        max_s += 1;
    }
    let mut tops: Vec<Vec<u64>> = Vec::new();
    for s in 2..=max_s {
        collect_top_rows(s as usize, 2, 1, r, generalized, &mut Vec::new(), &mut tops);
    }
    for top in tops {
        let prod_e: u64 = top.iter().product();
        let mut big_l = 1u64;
        while prod_e.saturating_mul(big_l) < r {
            assign_bottom_row(&top, big_l, r, &mut out)?;
            big_l += 2;
        }
    }
    Ok(out.into_iter().collect())
}

fn top_entry_allowed(e: u64, generalized: bool) -> bool {
    e.is_multiple_of(2) && (generalized || nu2(e) != 2)
}

fn collect_top_rows(
    s: usize,
    min_e: u64,
    prod_1pe: u128,
    r: u64,
    generalized: bool,
    acc: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if acc.len() == s {
        out.push(acc.clone());
        return;
    }
    let remaining = (s - acc.len()) as u32;
    let mut e = min_e;
    loop {
        if !top_entry_allowed(e, generalized) {
            e += 2;
            continue;
        }
        // nondecreasing rows: (1+e) to the power of the remaining slots is a
        // lower bound for the final product
        match (1 + e as u128).checked_pow(remaining) {
            Some(lb) if prod_1pe * lb <= r as u128 => {}
            _ => break,
        }
        acc.push(e);
        collect_top_rows(s, e, prod_1pe * (1 + e as u128), r, generalized, acc, out);
        acc.pop();
        e += 2;
    }
}

/// Fills the bottom row with divisors of `big_l` whose lcm is exactly
/// `big_l` and which satisfy realizability, keeping the canonical order
/// inside blocks of equal top entries.
fn assign_bottom_row(top: &[u64], big_l: u64, r: u64, out: &mut BTreeSet<Tableau>) -> Result<()> {
    let lf = factorize(big_l)?;
    let mut divisors = lf.divisors();
    divisors.sort_unstable();
    let powers: Vec<(u64, u32)> = lf.factors().to_vec();
    // per-divisor valuation profile against big_l's primes
    let val_profiles: Vec<Vec<u32>> = divisors
        .iter()
        .map(|&d| {
            powers
                .iter()
                .map(|&(p, _)| {
                    let mut v = 0;
                    let mut x = d;
                    while x % p == 0 {
                        v += 1;
                        x /= p;
                    }
                    v
                })
                .collect()
        })
        .collect();
    let s = top.len();
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    // counts of entries attaining the maximal valuation, per prime of big_l
    let mut attain: Vec<u32> = vec![0; powers.len()];
    #[allow(clippy::too_many_arguments)] // backtracking state threaded explicitly
    fn rec(
        top: &[u64],
        divisors: &[u64],
        profiles: &[Vec<u32>],
        powers: &[(u64, u32)],
        big_l: u64,
        r: u64,
        running_lcm: u64,
        chosen: &mut Vec<usize>,
        attain: &mut Vec<u32>,
        out: &mut BTreeSet<Tableau>,
    ) {
        let s = top.len();
        let i = chosen.len();
        if i == s {
            if running_lcm != big_l {
                return;
            }
            if attain.iter().zip(powers).any(|(&c, &(_, _))| c < 2) {
                return;
            }
            let cols: Vec<(u64, u64)> = top
                .iter()
                .zip(chosen.iter())
                .map(|(&e, &di)| (e, divisors[di]))
                .collect();
            if columns_value(&cols) == Some(r as u128) {
                let t = Tableau::new(cols).expect("columns validated by construction");
                debug_assert!(t.is_generalized_solution());
                out.insert(t);
            }
            return;
        }
        // with only (s - i) slots left, a prime of big_l that no entry can
        // reach twice any more is a dead end
        let slots_left = (s - i) as u32;
        if attain.iter().any(|&c| c + slots_left < 2) {
            return;
        }
        let start = if i > 0 && top[i] == top[i - 1] {
            chosen[i - 1]
        } else {
            0
        };
        for di in start..divisors.len() {
            chosen.push(di);
            let mut touched = Vec::new();
            for (k, &(_, maxv)) in powers.iter().enumerate() {
                if profiles[di][k] == maxv {
                    attain[k] += 1;
                    touched.push(k);
                }
            }
            rec(
                top,
                divisors,
                profiles,
                powers,
                big_l,
                r,
                lcm(running_lcm, divisors[di]),
                chosen,
                attain,
                out,
            );
            for k in touched {
                attain[k] -= 1;
            }
            chosen.pop();
        }
    }
    rec(
        top, &divisors, &val_profiles, &powers, big_l, r, 1, &mut chosen, &mut attain, out,
    );
    Ok(())
}

/// Primes p <= bound with residual index exactly e and order divisible by l
/// with odd cofactor; returns (p, ord) pairs in ascending order.  Every such
/// prime lies in the progression 1 + e·l mod 2·e·l.
fn column_candidates(e: u64, l: u64, bound: u64) -> Result<Vec<(u64, u64)>> {
    let step = 2 * e * l;
    let mut out = Vec::new();
    let mut p = 1 + e * l;
    while p <= bound {
        if p > 2 && is_prime(p) {
            let k = (p - 1) / e;
            debug_assert!(k % 2 == 1 && k.is_multiple_of(l));
            if pow_mod(2, k, p) == 1 {
                let minimal = factorize(k)?
                    .factors()
                    .iter()
                    .all(|&(q, _)| pow_mod(2, k / q, p) != 1);
                if minimal {
                    out.push((p, k));
                }
            }
        }
        p += step;
    }
    Ok(out)
}

fn realize_search(
    t: &Tableau,
    candidates: &[Vec<(u64, u64)>],
    first_only: bool,
) -> Result<Vec<Vec<u64>>> {
    let cols = t.columns();
    let s = cols.len();
    let mut results = Vec::new();
    let mut stack: Vec<(u64, u64)> = Vec::with_capacity(s);
    fn rec(
        t: &Tableau,
        cols: &[(u64, u64)],
        candidates: &[Vec<(u64, u64)>],
        stack: &mut Vec<(u64, u64)>,
        results: &mut Vec<Vec<u64>>,
        first_only: bool,
    ) -> Result<bool> {
        let i = stack.len();
        if i == cols.len() {
            let primes: Vec<u64> = stack.iter().map(|c| c.0).collect();
            // the pairwise gcd conditions already force the lambda data to
            // match, but the contract is verified, not assumed
            if tableau_of_primes(&primes)? == *t {
                results.push(primes);
                return Ok(first_only);
            }
            return Ok(false);
        }
        for &(p, ord) in &candidates[i] {
            if stack.iter().any(|&(q, _)| q == p) {
                continue;
            }
            // identical columns are filled in ascending prime order
            if i > 0 && cols[i] == cols[i - 1] && p < stack[i - 1].0 {
                continue;
            }
            let ok = stack.iter().enumerate().all(|(j, &(_, oj))| {
                gcd(ord, oj) == gcd(cols[i].1, cols[j].1)
            });
            if !ok {
                continue;
            }
            stack.push((p, ord));
            let done = rec(t, cols, candidates, stack, results, first_only)?;
            stack.pop();
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
    rec(t, cols, candidates, &mut stack, &mut results, first_only)?;
    Ok(results)
}

fn realize_prepare(t: &Tableau, bound: u64) -> Result<Vec<Vec<(u64, u64)>>> {
    if !t.is_solution() {
        return Err(Error::domain(format!("{t} is not a solution tableau")));
    }
    if bound > REALIZE_BOUND_LIMIT {
        return Err(Error::size("realization bound too large", bound));
    }
    t.columns()
        .iter()
        .map(|&(e, l)| column_candidates(e, l, bound))
        .collect()
}

/// Distinct primes p_1,...,p_s <= bound whose product has tableau exactly
/// `t`, or None within the bound.  Candidates are scanned in ascending
/// order, so the first solution in column-lexicographic order is returned.
pub fn realize_tableau(t: &Tableau, bound: u64) -> Result<Option<Vec<u64>>> {
    let candidates = realize_prepare(t, bound)?;
    let mut found = realize_search(t, &candidates, true)?;
    Ok(found.pop())
}

/// Every realization within the bound, in column-lexicographic order.
pub fn realize_tableau_all(t: &Tableau, bound: u64) -> Result<Vec<Vec<u64>>> {
    let candidates = realize_prepare(t, bound)?;
    realize_search(t, &candidates, false)
}

/// Witness data accompanying [`OmegaStats`].
#[derive(Debug, Clone, Serialize)]
pub struct OmegaWitnesses {
    /// Solution tableau attaining r_mu (when r_mu >= 2).
    pub max_columns: Option<Tableau>,
    /// Whether a single prime can reach the value (index class 2e nonempty).
    pub single_class_feasible: bool,
    /// Factorization of the smallest witness found by the scan.
    pub min_witness: Option<String>,
    /// Generalized tableau attaining the omega-1 lower bound.
    pub lower_bound: Option<Tableau>,
}

/// Extremal statistics for the target value r = 1+2e of i_2.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaStats {
    /// The target value 1+2e.
    pub value: u64,
    /// Maximum number of prime factors among squarefree witnesses: the
    /// maximum column count over solution tableaux of the value, joined
    /// with the single-prime case; 0 when no squarefree witness exists.
    pub r_mu: u64,
    /// Smallest odd m <= bound with odd order and i_2(m) = 1+2e.
    pub min_mu: Option<u64>,
    /// Lower bound for the maximum count of primes dividing a witness
    /// exactly once; columns whose top entry has 2-adic valuation 2 can
    /// only be filled by prime powers, so they do not contribute.
    pub r_omega1_lower: u64,
    /// True when the lower bound is provably exact: below the type-II
    /// threshold no squarefull factor can interact with another factor's
    /// order, so the collapsed-column accounting is complete.
    pub lower_exact: bool,
    pub witnesses: OmegaWitnesses,
}

/// Computes r_mu exactly by tableau enumeration, scans for the smallest
/// witness up to `bound`, and reports a witness-backed lower bound for the
/// unitary-prime count.
pub fn max_omega_stats(e: u64, bound: u64) -> Result<OmegaStats> {
    if e == 0 {
        return Err(Error::domain("e must be positive"));
    }
    let r = 1 + 2 * e;
    if r > STATS_VALUE_LIMIT {
        return Err(Error::size("target value too large", r));
    }
    if bound > STATS_SCAN_LIMIT {
        return Err(Error::size("witness scan bound too large", bound));
    }
    let strict = enumerate_solution_tableaux(r, false)?;
    let general = enumerate_solution_tableaux(r, true)?;
    let single_class_feasible = nu2(2 * e) != 2;

    let mut r_mu = u64::from(single_class_feasible);
    let mut max_columns = None;
    for t in &strict {
        if (t.size() as u64) > r_mu {
            r_mu = t.size() as u64;
            max_columns = Some(t.clone());
        }
    }

    // each top entry with valuation 2 forces a prime power, contributing no
    // unitary prime
    let mut r_omega1_lower = 0u64;
    let mut lower_bound = None;
    if single_class_feasible {
        r_omega1_lower = 1;
    }
    for t in &general {
        let penalty = t.columns().iter().filter(|&&(e, _)| nu2(e) == 2).count();
        let score = (t.size() - penalty) as u64;
        if score > r_omega1_lower {
            r_omega1_lower = score;
            lower_bound = Some(t.clone());
        }
    }

    let mut min_mu = None;
    let mut min_witness = None;
    let mut m = 3u64;
    while m <= bound {
        if order_two_odd(m)? && crate::arith::irreducible_count(2, m)? == r {
            let f = factorize(m)?;
            if min_mu.is_none() {
                min_mu = Some(m);
                min_witness = Some(
                    f.factors()
                        .iter()
                        .map(|&(p, a)| {
                            if a == 1 {
                                p.to_string()
                            } else {
                                format!("{p}^{a}")
                            }
                        })
                        .collect::<Vec<_>>()
                        .join("*"),
                );
            }
            // scan hits refine the lower bound with their actual unitary count
            r_omega1_lower = r_omega1_lower.max(u64::from(f.omega_unit()));
        }
        m += 2;
    }

    Ok(OmegaStats {
        value: r,
        r_mu,
        min_mu,
        r_omega1_lower,
        lower_exact: r < TYPE_II_THRESHOLD,
        witnesses: OmegaWitnesses {
            max_columns,
            single_class_feasible,
            min_witness,
            lower_bound,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::irreducible_count;

    fn t(s: &str) -> Tableau {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let a = t("(2/3 2/15 8/5)");
        assert_eq!(a.to_string(), "(2/3 2/15 8/5)");
        assert_eq!(a.size(), 3);
        // sorting is canonical
        let b = Tableau::new(vec![(8, 5), (2, 15), (2, 3)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(t("2/1").to_string(), "(2/1)");
        assert!("(3/2)".parse::<Tableau>().is_err()); // odd top
        assert!("(2/4)".parse::<Tableau>().is_err()); // even bottom
        assert!("(2-3)".parse::<Tableau>().is_err());
        assert!("()".parse::<Tableau>().is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_map(&[3, 45]).unwrap(), vec![3, 3]);
        assert_eq!(lambda_map(&[6, 10, 15]).unwrap(), vec![6, 10, 15]);
        assert_eq!(lambda_map(&[4, 2]).unwrap(), vec![2, 2]);
        assert_eq!(lambda_map(&[39, 495, 215]).unwrap(), vec![3, 15, 5]);
        assert!(lambda_map(&[5]).is_err());
        assert!(lambda_map(&[0, 3]).is_err());
    }

    #[test]
    fn realizability_examples() {
        assert!(is_realizable(&[2, 2]).unwrap());
        assert!(!is_realizable(&[4, 2]).unwrap());
        assert!(is_realizable(&[3, 15, 5]).unwrap());
        assert!(is_realizable(&[1, 1]).unwrap());
        assert!(!is_realizable(&[1, 5]).unwrap());
        assert!(is_realizable(&[5]).is_err());
    }

    #[test]
    fn lambda_is_idempotent() {
        // deterministic splitmix-style generator
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^ (z >> 31)
        };
        for _ in 0..10_000 {
            let s = 2 + (next() % 5) as usize;
            let a: Vec<u64> = (0..s).map(|_| 1 + next() % 1_000_000).collect();
            let l = lambda_map(&a).unwrap();
            assert_eq!(lambda_map(&l).unwrap(), l, "a = {a:?}");
            for (x, y) in a.iter().zip(&l) {
                assert_eq!(x % y, 0, "lambda entries divide the originals");
            }
        }
    }

    #[test]
    fn lambda_image_is_exactly_the_realizable_tuples() {
        // exhaustive for s in {2,3} and entries up to 12
        for s in 2..=3usize {
            let mut tuple = vec![1u64; s];
            loop {
                let fixed = lambda_map(&tuple).unwrap() == tuple;
                assert_eq!(
                    is_realizable(&tuple).unwrap(),
                    fixed,
                    "tuple = {tuple:?}"
                );
                let mut i = 0;
                loop {
                    if i == s {
                        break;
                    }
                    tuple[i] += 1;
                    if tuple[i] <= 12 {
                        break;
                    }
                    tuple[i] = 1;
                    i += 1;
                }
                if i == s {
                    break;
                }
            }
        }
    }

    #[test]
    fn lcm_identity_over_subsets() {
        let mut state = 0xfeed_f00d_dead_beefu64;
        let mut next = move || {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^ (z >> 31)
        };
        for _ in 0..1000 {
            let s = 2 + (next() % 4) as usize;
            let a: Vec<u64> = (0..s).map(|_| 1 + next() % 10_000).collect();
            let l = lambda_map(&a).unwrap();
            for mask in 1u32..1 << s {
                if mask.count_ones() < 2 {
                    continue;
                }
                let mut lcm_a: u128 = 1;
                let mut lcm_l: u128 = 1;
                let mut prod_a: u128 = 1;
                let mut prod_l: u128 = 1;
                for i in 0..s {
                    if mask >> i & 1 == 1 {
                        lcm_a = lcm128(lcm_a, a[i] as u128).unwrap();
                        lcm_l = lcm128(lcm_l, l[i] as u128).unwrap();
                        prod_a *= a[i] as u128;
                        prod_l *= l[i] as u128;
                    }
                }
                // lcm(a_v) * prod(l_v) = lcm(l_v) * prod(a_v)
                assert_eq!(lcm_a * prod_l, lcm_l * prod_a, "a={a:?} mask={mask}");
            }
        }
    }

    #[test]
    fn tableau_of_known_products() {
        assert_eq!(tableau_of(79 * 991 * 1721).unwrap(), t("(2/3 2/15 8/5)"));
        assert_eq!(tableau_of(7 * 23).unwrap(), t("(2/1 2/1)"));
        assert_eq!(tableau_of(7 * 631).unwrap(), t("(2/3 14/3)"));
        assert_eq!(tableau_of(71 * 174991).unwrap(), t("(2/5 38/5)"));
        assert!(tableau_of(49 * 73).is_err()); // not squarefree
        assert!(tableau_of(7 * 11).is_err()); // 11 has even order
        assert!(tableau_of(7).is_err()); // single factor
        assert!(tableau_of(7 * 46).is_err()); // even
    }

    #[test]
    fn tableau_values() {
        assert_eq!(t("(2/3 2/15 8/5)").value().unwrap(), 601);
        assert_eq!(t("(2/5 38/5)").value().unwrap(), 421);
        assert_eq!(t("(2/1 2/1)").value().unwrap(), 9);
        assert_eq!(t("(4/3 8/3)").value().unwrap(), 109);
        assert_eq!(t("(2/3 14/3)").value().unwrap(), 101);
        assert_eq!(t("(2/1)").value().unwrap(), 3);
    }

    #[test]
    fn tableau_value_matches_irreducible_count_small() {
        for m in (3u64..30_000).step_by(2) {
            if !order_two_odd(m).unwrap() {
                continue;
            }
            let f = factorize(m).unwrap();
            if !f.is_squarefree() || !(2..=3).contains(&f.omega()) {
                continue;
            }
            assert_eq!(
                tableau_of(m).unwrap().value().unwrap(),
                irreducible_count(2, m).unwrap(),
                "m = {m}"
            );
        }
    }

    #[test]
    fn enumeration_frozen_targets() {
        let e27: Vec<String> = enumerate_solution_tableaux(27, false)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(e27, vec!["(2/1 2/1 2/1)", "(2/1 8/1)"]);

        let e101 = enumerate_solution_tableaux(101, false).unwrap();
        assert_eq!(e101, vec![t("(2/3 14/3)")]);

        assert!(enumerate_solution_tableaux(5, false).unwrap().is_empty());
        assert!(enumerate_solution_tableaux(3, false).unwrap().is_empty());
        assert_eq!(enumerate_solution_tableaux(9, false).unwrap(), vec![t("(2/1 2/1)")]);

        // a generalized-only column pattern appears at 109
        assert!(enumerate_solution_tableaux(109, false).unwrap().is_empty());
        let g109 = enumerate_solution_tableaux(109, true).unwrap();
        assert!(g109.contains(&t("(4/3 8/3)")), "{g109:?}");

        let s25 = enumerate_solution_tableaux(25, false).unwrap();
        assert_eq!(s25, vec![t("(2/5 2/5)")]);
        let g25 = enumerate_solution_tableaux(25, true).unwrap();
        assert_eq!(g25, vec![t("(2/5 2/5)"), t("(4/1 4/1)")]);

        assert!(enumerate_solution_tableaux(10, false).is_err());
    }

    #[test]
    fn enumeration_postconditions() {
        for r in (9u64..=2001).step_by(2) {
            // largest s with 3^s <= r, in exact arithmetic
            let mut max_s = 0usize;
            let mut pow = 1u64;
            while pow * 3 <= r {
                pow *= 3;
                max_s += 1;
            }
            for tab in enumerate_solution_tableaux(r, false).unwrap() {
                assert!(tab.is_solution());
                assert_eq!(tab.value().unwrap(), r);
                assert!(tab.size() <= max_s, "r = {r}, tableau {tab}");
            }
            for tab in enumerate_solution_tableaux(r, true).unwrap() {
                assert!(tab.is_generalized_solution());
                assert_eq!(tab.value().unwrap(), r);
                assert!(tab.size() <= max_s, "r = {r}, tableau {tab}");
            }
        }
    }

    #[test]
    fn realize_small_tableaux() {
        assert_eq!(
            realize_tableau(&t("(2/1 2/1)"), 100).unwrap(),
            Some(vec![7, 23])
        );
        let all = realize_tableau_all(&t("(2/1 2/1)"), 200).unwrap();
        assert!(all.contains(&vec![7, 23]) && all.contains(&vec![7, 167]));
        for primes in &all {
            assert_eq!(tableau_of_primes(primes).unwrap(), t("(2/1 2/1)"));
        }
    }

    #[test]
    fn realize_three_column_example() {
        let tab = t("(2/3 2/15 8/5)");
        let first = realize_tableau(&tab, 2000).unwrap().unwrap();
        assert_eq!(tableau_of_primes(&first).unwrap(), tab);
        let product: u64 = first.iter().product();
        assert_eq!(irreducible_count(2, product).unwrap(), 601);

        let all = realize_tableau_all(&tab, 2000).unwrap();
        assert!(all.contains(&vec![79, 991, 1721]), "{all:?}");
        assert!(all.contains(&first));
        assert_eq!(irreducible_count(2, 79 * 991 * 1721).unwrap(), 601);
    }

    #[test]
    fn realize_deep_column_example() {
        let tab = t("(2/5 38/5)");
        // the published witness pair verifies
        assert_eq!(tableau_of_primes(&[71, 174991]).unwrap(), tab);
        assert_eq!(irreducible_count(2, 71 * 174991).unwrap(), 421);
        // the search itself honours the contract within a modest bound
        if let Some(primes) = realize_tableau(&tab, 200_000).unwrap() {
            assert_eq!(tableau_of_primes(&primes).unwrap(), tab);
        }
    }

    #[test]
    fn realize_rejects_non_solutions() {
        // valuation-2 top entry
        assert!(realize_tableau(&t("(2/3 4/3)"), 1000).is_err());
        // bottom row not realizable
        assert!(realize_tableau(&t("(2/3 2/5)"), 1000).is_err());
        // single column
        assert!(realize_tableau(&t("(2/1)"), 1000).is_err());
    }

    #[test]
    fn omega_stats_examples() {
        let s50 = max_omega_stats(50, 10_000).unwrap();
        assert_eq!((s50.value, s50.r_mu), (101, 2));
        assert_eq!(s50.min_mu, Some(4417));
        assert_eq!(s50.witnesses.min_witness.as_deref(), Some("7*631"));
        assert_eq!(s50.r_omega1_lower, 2);
        assert!(!s50.lower_exact);
        assert!(!s50.witnesses.single_class_feasible); // nu2(100) = 2

        let s2 = max_omega_stats(2, 100).unwrap();
        assert_eq!((s2.value, s2.r_mu), (5, 0));
        assert_eq!(s2.min_mu, Some(49));
        assert_eq!(s2.witnesses.min_witness.as_deref(), Some("7^2"));
        assert_eq!(s2.r_omega1_lower, 0);
        assert!(s2.lower_exact);

        // e = (3^3 - 1)/2: three columns are attainable
        let s13 = max_omega_stats(13, 700).unwrap();
        assert_eq!((s13.value, s13.r_mu), (27, 3));
        assert_eq!(s13.min_mu, Some(623));
        assert_eq!(s13.witnesses.min_witness.as_deref(), Some("7*89"));
        assert!(s13.lower_exact);
        assert_eq!(s13.r_omega1_lower, 3);

        let s18 = max_omega_stats(18, 20_000).unwrap();
        assert_eq!((s18.value, s18.r_mu), (37, 0));
        assert_eq!(s18.min_mu, Some(127 * 127));
        assert_eq!(s18.r_omega1_lower, 0);
        assert!(s18.lower_exact);

        let s19 = max_omega_stats(19, 100).unwrap();
        assert_eq!((s19.value, s19.r_mu), (39, 1));
        assert!(!s19.lower_exact);
        assert!(s19.r_omega1_lower >= 1);
    }
}
