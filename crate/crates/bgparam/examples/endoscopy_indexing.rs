//! Embedded endoscopic data and the indexing bijection for GL4.
//!
//! cargo run --example endoscopy_indexing

use bgparam::endoscopy::{endoscopic_group_from_s, indexing_bijection_check, s_from_strs, EndoscopicDatum};
use bgparam::packet::parameter;

fn main() -> bgparam::error::Result<()> {
    let p = parameter("gl4-triv")?;
    for s in [["0", "0", "0", "0"], ["0", "0", "1/2", "1/2"]] {
        let e = endoscopic_group_from_s(&p.g, &EndoscopicDatum { s: s_from_strs(&s)?, twist: vec![] })?;
        println!("s = {s:?}: |W_H| = {}", e.h.weyl.order());
        for levi in p.g.standard_parabolics() {
            let r = indexing_bijection_check(&p, &levi, &e)?;
            println!("  L = {levi:?}: {} embedded data, {} = {}  ok {}", r.embedded.len(), r.lhs_size, r.rhs_size, r.ok());
        }
    }
    Ok(())
}
