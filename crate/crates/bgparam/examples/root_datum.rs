//! Based root data, duals and Cartan matrices.
//!
//! cargo run --example root_datum

use bgparam::io::presets::{group_datum, GROUP_PRESETS};
use bgparam::root_datum::{dual_datum, Group};

fn main() -> bgparam::error::Result<()> {
    for name in GROUP_PRESETS {
        let (d, a) = group_datum(name)?;
        let g = Group::new(d.clone(), a.clone())?;
        let (dd, _) = dual_datum(&d, &a);
        println!(
            "{:<14} rank {} roots {:>2} |W| {:>3} |W^rel| {:>3} dual roots {:>2}",
            d.name,
            d.rank,
            d.roots.len(),
            g.weyl.order(),
            g.rel.len(),
            dd.roots.len()
        );
    }
    let (sp4, _) = group_datum("sp4")?;
    let (so5, _) = group_datum("so5")?;
    let c = sp4.cartan_matrix();
    println!("Sp4 Cartan: {c:?}");
    assert_eq!(so5.cartan_matrix()[0][1], c[1][0]);
    Ok(())
}
