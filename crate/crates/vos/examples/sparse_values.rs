//! Census of sequence counts: which lengths admit very odd sequences,
//! how the exact counts 2, 4, 8 distribute, and how the observed counts
//! track their predicted densities.

use vos::census::{value_census, very_odd_lengths};

fn main() -> vos::Result<()> {
    let lengths = very_odd_lengths(64)?;
    println!("lengths up to 64 with sequences: {lengths:?}");

    let report = value_census(100_000, &[2, 4, 8])?;
    println!();
    println!("census to x = {}:", report.x);
    for (label, count) in &report.counts {
        print!("  {label:<4} {count:>7}");
        if let Some(first) = report.smallest.get(label) {
            print!("   first at n = {first}");
        }
        if let Some(pred) = report.predicted.get(label) {
            print!("   predicted {pred:>9.1}");
        }
        if let Some(ratio) = report.ratios.get(label) {
            print!("   ratio {ratio:.3}");
        }
        println!();
    }
    println!();
    println!("N  = lengths with any sequence, N0 = lengths with none");
    println!("Nv = lengths with exactly v, P/P2 = odd-order / index-2 primes to 2x-1");
    Ok(())
}
