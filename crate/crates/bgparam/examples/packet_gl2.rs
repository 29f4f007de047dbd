//! The packet of φ = 1 ⊕ 1 for GL2.
//!
//! cargo run --example packet_gl2

use bgparam::io::format::fmt_b;
use bgparam::lattice::ivec;
use bgparam::packet::{build_packet_member, central_character_square, enumerate_fiber, parameter};

fn main() -> bgparam::error::Result<()> {
    let p = parameter("gl2-triv")?;
    for lam in [[1, 0], [0, 0], [2, 0], [1, 1]] {
        let l = build_packet_member(&p, &ivec(&lam), 0)?;
        let fiber = enumerate_fiber(&p, &l.b)?;
        let cc = central_character_square(&p, &ivec(&lam), 0)?;
        println!(
            "ρ = {lam:?}: b = {:<6} G_b levi {:?}  fiber size {}  ω = κ_G: {}",
            fmt_b(&l.b),
            l.levi,
            fiber.members.len(),
            cc.equal
        );
    }
    Ok(())
}
