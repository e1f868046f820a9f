//! The count of very odd sequences for every length up to a bound.
//! Most lengths have none at all; the survivors follow the parity of the
//! order of 2 modulo 2n-1, and their counts are the powers of two printed
//! here.
//!
//!     cargo run --example count_lengths -- 100

use vos::sequences::s_count;

fn main() -> vos::Result<()> {
    let bound: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("numeric bound"))
        .unwrap_or(100);
    let mut nonzero = 0u64;
    println!("  n   count");
    for n in 1..=bound {
        let c = s_count(n)?;
        if !c.is_zero() {
            nonzero += 1;
            println!("{n:>3}   {c}");
        }
    }
    println!("---");
    println!(
        "{nonzero} of {bound} lengths admit any very odd sequence \
         ({:.1}%, tending to 7/24 = 29.2% of odd 2n-1)",
        100.0 * nonzero as f64 / bound as f64
    );
    Ok(())
}
