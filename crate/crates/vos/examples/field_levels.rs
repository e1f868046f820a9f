//! Two consumers of the same order-parity machinery: the level (Stufe) of
//! cyclotomic fields, and a rank formula for function fields whose value
//! is again the irreducible factor count.

use vos::arith::{stufe_level, ulmer_rank};

fn main() -> vos::Result<()> {
    println!("level of the m-th cyclotomic field:");
    println!("  m       level");
    for m in [1u64, 2, 3, 4, 7, 8, 12, 15, 23, 89, 161] {
        println!("  {m:<7} {}", stufe_level(m)?.as_text());
    }

    println!();
    println!("rank values i_q(d) with the order hypothesis checked exactly:");
    for (q, d) in [(2u64, 5u64), (2, 7), (2, 13), (2, 23), (4, 35), (3, 13), (9, 91)] {
        let r = ulmer_rank(q, d)?;
        println!(
            "  q = {q}, d = {d:<4} rank {:<5} hypothesis holds: {}",
            r.rank, r.hypothesis_holds
        );
    }
    Ok(())
}
