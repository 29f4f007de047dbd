//! ρ ↦ (b, ρ_b) ↦ ρ over a box of weights, for every parameter preset.
//!
//! cargo run --example round_trip -- 3

use bgparam::packet::{parameter, round_trip_check, PARAMETER_PRESETS};

fn main() -> bgparam::error::Result<()> {
    let h: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    for name in PARAMETER_PRESETS {
        let r = round_trip_check(&parameter(name)?, h)?;
        println!("{name:<14} members {:>4} fibers {:>4} ok {}", r.members, r.fibers, r.ok());
        for d in &r.discrepancies {
            println!("    {d}");
        }
    }
    Ok(())
}
