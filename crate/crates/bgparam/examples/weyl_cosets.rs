//! Transporter sets, minimal double coset representatives and the geometric lemma index.
//!
//! cargo run --example weyl_cosets

use bgparam::io::presets::group;
use bgparam::weyl::{double_coset_reps, geometric_lemma_index, transporter_set};

fn main() -> bgparam::error::Result<()> {
    let g = group("gl4")?;
    let l = [0, 2];
    let words = |ws: &[usize]| ws.iter().map(|&w| format!("{:?}", g.weyl.get(w).word)).collect::<Vec<_>>();

    let t = transporter_set(&g, &l, &l)?;
    println!("W(L,L) for L = GL2xGL2: {} elements", t.len());
    let reps = double_coset_reps(&g, &l, &l)?;
    println!("W[L,L] = {:?}", words(&reps));
    assert_eq!(reps.len(), 2);

    for x in geometric_lemma_index(&g, &l, &l)? {
        println!("  w = {:<14} L ∩ w⁻¹Lw = {:?}  wLw⁻¹ ∩ L = {:?}", format!("{:?}", g.weyl.get(x.w).word), x.left, x.right);
    }
    Ok(())
}
