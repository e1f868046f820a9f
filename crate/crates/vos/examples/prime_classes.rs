//! Where a prime sits relative to the order of 2: the odd-order class, the
//! index-m subclasses, and the Wieferich exceptions that separate the
//! strict subclass from the plain one.

use vos::primes::{classify_prime, pm_members, wieferich_scan};

fn main() -> vos::Result<()> {
    println!("p        ord_2(p)   index   odd order   Wieferich   strict index member");
    for p in [7u64, 23, 31, 73, 89, 127, 1093, 3511] {
        let c = classify_prime(p)?;
        println!(
            "{:<8} {:<10} {:<7} {:<11} {:<11} {}",
            c.p, c.ord2, c.index, c.in_p, c.wieferich, c.in_pm_prime
        );
    }

    println!();
    let w = wieferich_scan(1_000_000)?;
    println!("Wieferich primes below 10^6: {w:?}");

    println!();
    let members = pm_members(2, 100_000)?;
    println!(
        "index-2 primes below 10^5: {} of them, starting {:?}",
        members.len(),
        &members[..8.min(members.len())]
    );
    Ok(())
}
