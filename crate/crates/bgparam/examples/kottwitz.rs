//! Elements of B(G) through their invariants (L, κ).
//!
//! cargo run --example kottwitz

use bgparam::io::format::{fmt_b, parse_b};
use bgparam::io::presets::group;
use bgparam::kottwitz::{basic_plus_lift, classify, enumerate_stratum, fmt_point, kappa_push, newton};

fn main() -> bgparam::error::Result<()> {
    let g = group("gl2")?;
    for s in [":1,0", "0:1", "0:0"] {
        let b = parse_b(s)?;
        let nu = newton(&g, &b)?;
        println!("{:>6}  ν = {:<10} stratum {:?}  κ_G = {:?}", fmt_b(&b), fmt_point(&nu), classify(&g, &b)?, kappa_push(&g, &b)?.free);
    }
    // walls are rejected
    for s in [":1,1", ":0,1"] {
        let b = parse_b(s)?;
        println!("{s:>6}  {}", basic_plus_lift(&g, &b.levi, b.kappa.clone()).unwrap_err());
    }
    let g = group("gl3")?;
    for levi in [vec![], vec![0], vec![1], vec![0, 1]] {
        println!("GL3 stratum {levi:?}: {} elements with |κ| ≤ 1", enumerate_stratum(&g, &levi, 1)?.len());
    }
    Ok(())
}
