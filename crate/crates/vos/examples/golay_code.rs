//! From a length-12 very odd sequence to the extended binary Golay code:
//! a [24, 12] self-dual code with minimum distance 8, whose 759 weight-8
//! words form the octads of a Steiner system.

use vos::codes::{build_self_dual_code, code_properties};
use vos::sequences::enumerate_vos;

fn main() -> vos::Result<()> {
    let s = enumerate_vos(12, None)?.into_iter().next().expect("S(12) = 2");
    println!("seed sequence   {s}");
    let code = build_self_dual_code(&s)?;
    let props = code_properties(&code)?;
    println!(
        "code            [{}, {}]  self-dual: {}  doubly even: {}",
        props.length, props.dimension, props.self_dual, props.doubly_even
    );
    println!("min distance    {}", props.min_distance);
    println!("weight enumerator:");
    for (w, &count) in props.weight_enumerator.iter().enumerate() {
        if count > 0 {
            println!("  weight {w:>2}: {count}");
        }
    }
    Ok(())
}
