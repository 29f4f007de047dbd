//! Coinvariants of a Galois action and π₁ of a few groups.
//!
//! cargo run --example coinvariants

use bgparam::io::presets::group;
use bgparam::lattice::{coinvariants, IntegerMatrix, LatticeAction};

fn main() -> bgparam::error::Result<()> {
    let swap = LatticeAction::new(2, vec![IntegerMatrix::from_i64(&[vec![0, 1], vec![1, 0]])])?;
    let c = coinvariants(2, &swap);
    println!("Z^2 / (swap - 1): free rank {}, torsion {:?}", c.free_rank, c.torsion);
    assert_eq!((c.free_rank, c.torsion.len()), (1, 0));

    for name in ["gl2", "sl2", "pgl2", "sp4", "so6", "u3"] {
        let g = group(name)?;
        let pi1 = &g.pi1()?.pi1;
        let tors: Vec<String> = pi1.torsion.iter().map(|x| x.to_string()).collect();
        println!("{name:>5}: π₁(G)_Γ = Z^{} ⊕ [{}]", pi1.free_rank, tors.join(","));
    }
    Ok(())
}
