//! Weight multiplicities by Freudenthal's formula.
//!
//! cargo run --example freudenthal

use bgparam::disconnected::weights::{weight_multiplicities, weyl_dimension};
use bgparam::io::presets::{gl_datum, sl_datum};
use bgparam::lattice::ivec;

fn main() -> bgparam::error::Result<()> {
    let sl3 = sl_datum(3);
    let adj = weight_multiplicities(&sl3, &ivec(&[1, 1]))?;
    println!("SL3 adjoint: dim {}, zero weight multiplicity {}", adj.dimension(), adj.get(&ivec(&[0, 0])));
    for lam in [[2, 1, 0], [3, 1, 0], [2, 2, 0]] {
        let t = weight_multiplicities(&gl_datum(3), &ivec(&lam))?;
        println!("GL3 {lam:?}: {} weights, dim {} = {}", t.multiplicities.len(), t.dimension(), weyl_dimension(&gl_datum(3), &ivec(&lam))?);
    }
    Ok(())
}
