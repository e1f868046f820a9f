//! Tableaux tie the factor count i_2(m) = #(irreducible factors of X^m - 1
//! over GF(2)) to the shape of m's prime factorization.  This walks the
//! full chain for the value 601: parse a tableau, evaluate it, search for
//! primes realizing it, and cross-check the factor count directly.

use vos::arith::irreducible_count;
use vos::tableaux::{
    enumerate_solution_tableaux, max_omega_stats, realize_tableau_all, tableau_of_primes,
    tableau_value, Tableau,
};

fn main() -> vos::Result<()> {
    let t: Tableau = "(2/3 2/15 8/5)".parse()?;
    println!("tableau        {t}");
    println!("value          {}", tableau_value(&t)?);

    let witnesses = realize_tableau_all(&t, 2000)?;
    println!("realizations with primes below 2000 ({} total, first six):", witnesses.len());
    for primes in witnesses.iter().take(6) {
        let m: u64 = primes.iter().product();
        println!(
            "  {primes:?}  ->  m = {m},  i_2(m) = {}",
            irreducible_count(2, m)?
        );
    }

    // the reverse direction: a prime triple determines its tableau
    let back = tableau_of_primes(&[79, 991, 1721])?;
    println!("tableau of (79, 991, 1721): {back}");

    println!();
    println!("all two-plus-column solution tableaux of value 101:");
    for t in enumerate_solution_tableaux(101, false)? {
        println!("  {t}");
    }

    println!();
    let stats = max_omega_stats(50, 10_000_000)?;
    println!("extremal shape data for value {}:", stats.value);
    println!("  widest squarefree witness: {} primes", stats.r_mu);
    if let Some(t) = &stats.witnesses.max_columns {
        println!("    attained by {t}");
    }
    if let (Some(m), Some(f)) = (stats.min_mu, &stats.witnesses.min_witness) {
        println!("  smallest witness: {m} = {f}");
    }
    Ok(())
}
