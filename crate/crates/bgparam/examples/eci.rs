//! Both sides of the endoscopic character identity.
//!
//! cargo run --example eci

use bgparam::endoscopy::{eci_both_sides, endoscopic_group_from_s, render, s_from_strs, EndoscopicDatum};
use bgparam::lattice::ivec;
use bgparam::packet::{build_packet_member, parameter};

fn main() -> bgparam::error::Result<()> {
    let cases: [(&str, &[i64], &[&str]); 4] = [
        ("gl2-triv", &[1, 0], &["0", "0"]),
        ("gl2-triv", &[1, 0], &["0", "1/2"]),
        ("gl4-st2", &[1, 0], &["0", "0", "0", "0"]),
        ("gl4-st2", &[1, 0], &["0", "0", "1/2", "1/2"]),
    ];
    for (name, lam, s) in cases {
        let p = parameter(name)?;
        let b = build_packet_member(&p, &ivec(lam), 0)?.b;
        let e = endoscopic_group_from_s(&p.g, &EndoscopicDatum { s: s_from_strs(s)?, twist: vec![] })?;
        let r = eci_both_sides(&p, &b, &e)?;
        println!("{name} s = {s:?}");
        println!("  stable: {}", render(&r.lhs_stable));
        println!("  lhs:    {}", render(&r.lhs));
        println!("  rhs:    {}", render(&r.rhs));
        println!("  dropped {} non-regular term(s); ok {}", r.discarded.multiplicity(), r.ok());
    }
    Ok(())
}
