//! φ = St ⊕ St for GL4: M = GL2 x GL2 and a nontrivial S_φ.
//!
//! cargo run --example packet_gl4

use bgparam::io::format::fmt_b;
use bgparam::lattice::ivec;
use bgparam::packet::{build_packet_member, enumerate_fiber, parameter};

fn main() -> bgparam::error::Result<()> {
    let p = parameter("gl4-st2")?;
    println!("rank of A_M̂ = {}, |W_φ| = {}", p.rank(), p.w_phi.len());
    for lam in [[1, 0], [1, 1], [2, 0], [0, 0]] {
        let l = build_packet_member(&p, &ivec(&lam), 0)?;
        let f = enumerate_fiber(&p, &l.b)?;
        println!("λ = {lam:?}: b = {:<10} w = {:?}  fiber {}", fmt_b(&l.b), l.w_word, f.members.len());
    }
    Ok(())
}
