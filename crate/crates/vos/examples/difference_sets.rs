//! Cyclic difference sets with odd lambda turn into very odd sequences.
//! Verify the quadratic-residue set modulo 23, convert it, then search
//! small moduli exhaustively for more examples.

use vos::codes::{difference_set_sequence, find_difference_sets, verify_difference_set};

fn main() -> vos::Result<()> {
    let qr23: Vec<u64> = vec![1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18];
    let w = verify_difference_set(&qr23, 23)?;
    println!(
        "QR(23): ({}, {}, {}) difference set",
        w.modulus, w.k, w.lambda
    );
    let s = difference_set_sequence(&w)?;
    println!("  as a sequence: {s} (length {}, very odd: {})", s.len(), s.is_very_odd());

    println!();
    println!("exhaustive search, moduli 7..=23 (complements omitted):");
    for modulus in 7..=23u64 {
        for k in 3..=(modulus - 1) / 2 {
            // lambda = k(k-1)/(modulus-1) must come out an odd integer for
            // the sequence connection; the verifier checks the set anyway
            let sets = find_difference_sets(modulus, k, 3, None)?;
            for set in sets {
                let w = verify_difference_set(&set, modulus)?;
                println!(
                    "  ({:>2}, {:>2}, {:>2})  {:?}{}",
                    modulus,
                    w.k,
                    w.lambda,
                    w.set,
                    if w.lambda % 2 == 1 { "  [odd lambda]" } else { "" }
                );
            }
        }
    }
    Ok(())
}
