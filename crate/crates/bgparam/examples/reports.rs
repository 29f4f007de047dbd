//! JSON reports as written by `rk`.
//!
//! cargo run --example reports

use bgparam::io::format::parse_b;
use bgparam::io::presets::group;
use bgparam::io::report::bset_report;

fn main() -> bgparam::error::Result<()> {
    let g = group("gl2")?;
    let r = bset_report("gl2", &g, &parse_b("0:1")?)?;
    print!("{}", r.to_json());
    assert!(r.ok());
    Ok(())
}
