//! Verify a 0/1 sequence and print its full autocorrelation profile.
//!
//!     cargo run --example check_sequence -- 101011100011

use vos::sequences::BitSequence;

fn main() -> vos::Result<()> {
    let input = std::env::args().nth(1).unwrap_or_else(|| "101011100011".into());
    let s: BitSequence = input.parse()?;
    println!("sequence  {s}");
    println!("length    {}", s.len());
    println!("weight    {}", s.ones());
    let profile = s.autocorrelation_profile();
    println!("profile   {profile:?}");
    if s.is_very_odd() {
        println!("verdict   very odd (every shifted overlap count is odd)");
    } else {
        let k = profile.iter().position(|v| v % 2 == 0).expect("some even entry");
        println!("verdict   not very odd (first even overlap at shift {k})");
    }
    Ok(())
}
