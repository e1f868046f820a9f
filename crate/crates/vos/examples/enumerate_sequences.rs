//! List every very odd sequence of one length, then compose two of them
//! into a longer one.  Enumeration works through the factorization of
//! X^{2n-1} + 1 over GF(2): each reciprocal pair of irreducible factors
//! contributes one binary choice.

use vos::sequences::{enumerate_vos, s_count, tensor};

fn main() -> vos::Result<()> {
    let n = 16;
    println!("S({n}) = {}", s_count(n)?);
    for s in enumerate_vos(n, None)? {
        println!("  {s}   weight {}", s.ones());
    }

    // composition: a length-a and a length-b sequence interleave into a
    // very odd sequence of length 2ab - a - b + 1
    let left = &enumerate_vos(4, None)?[0];
    let right = &enumerate_vos(4, None)?[1];
    let combined = tensor(left, right)?;
    println!();
    println!("{left} composed with {right}:");
    println!("  {combined}   (length {}, very odd: {})", combined.len(), combined.is_very_odd());
    Ok(())
}
