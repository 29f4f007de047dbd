//! Irreducible representations of disconnected groups as pairs (λ, E).
//!
//! cargo run --example disconnected

use bgparam::disconnected::preset;

fn main() -> bgparam::error::Result<()> {
    for (name, h) in [("o2", 2), ("gl1sq-s2", 1)] {
        let g = preset(name)?;
        let split = g.pi0_weyl_split();
        println!("{name}: |W°| = {}, |π₀| = {}", split.identity_weyl_order, split.component_order);
        for c in g.classify_irr(h)? {
            let lam: Vec<String> = c.lambda.iter().map(|x| x.to_string()).collect();
            println!("  λ = ({})  |A^λ| = {}  E#{}  dim {}", lam.join(","), c.a_lambda.len(), c.module_index, c.dim);
        }
    }
    Ok(())
}
