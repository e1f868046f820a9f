//! Density landscape of the index classes: the accelerated constant
//! against plain truncation, per-class densities, and two empirical
//! cross-checks of densities inside arithmetic progressions.

use vos::census::{artin_constant, artin_truncated, pm_density, progression_density};
use vos::primes::pm_members;

fn main() -> vos::Result<()> {
    let a = artin_constant(1e-12)?;
    println!("Artin constant        {a:.15}");
    for limit in [100u64, 10_000, 1_000_000] {
        let t = artin_truncated(limit)?;
        println!("  truncated at {limit:>7}: {t:.15}  (off by {:+.2e})", t - a);
    }

    println!();
    println!("class densities (fraction of all primes):");
    for m in [1u64, 2, 3, 4, 6, 8, 12] {
        let d = pm_density(m)?;
        let note = if d == 0.0 { "  (empty class)" } else { "" };
        println!("  index {m:>2}: {d:.9}{note}");
    }

    // index-2 primes split by residue mod 3: the density formula says the
    // two admissible classes carry 2/5 and 3/5 of the total
    println!();
    let x = 1_000_000u64;
    let members = pm_members(2, x)?;
    let total = members.len() as f64;
    println!("index-2 primes below 10^6: {}", members.len());
    for r in [1u64, 2] {
        let count = members.iter().filter(|&&p| p % 3 == r).count();
        let predicted = progression_density(1, r, 3)? / pm_density(2)?;
        println!(
            "  p = {r} mod 3: {count:>6}  fraction {:.4}  predicted {:.4}",
            count as f64 / total,
            predicted
        );
    }

    // every index-2 prime is 7 mod 8; the formula knows it too
    let off = members.iter().filter(|&&p| p % 8 != 7).count();
    println!();
    println!(
        "members not 7 mod 8: {off}  (density of the 7 mod 8 class: {:.9} = full class {:.9})",
        progression_density(1, 7, 8)?,
        pm_density(2)?
    );
    Ok(())
}
