//! Character tables of small finite groups.
//!
//! cargo run --example character_table

use bgparam::disconnected::finite_group::{character_table, simple_modules, FiniteGroup};
use bgparam::endoscopy::fmt_cyclo;

fn main() -> bgparam::error::Result<()> {
    for (name, g) in [("Z/3", FiniteGroup::cyclic(3)), ("S3", FiniteGroup::symmetric(3)), ("S4", FiniteGroup::symmetric(4))] {
        let t = character_table(&g);
        println!("{name} ({} classes)", t.classes.len());
        for row in &t.values {
            let vals: Vec<String> = row.iter().map(fmt_cyclo).collect();
            println!("  {}", vals.join("  "));
        }
        let mods = simple_modules(&g, None)?;
        let sq: usize = mods.iter().map(|m| m.dim * m.dim).sum();
        assert_eq!(sq, g.order());
    }
    Ok(())
}
