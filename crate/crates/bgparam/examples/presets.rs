//! Shipped presets, written out as TOML and read back.
//!
//! cargo run --example presets

use bgparam::io::format::{to_toml, GroupFile, ParamFile};
use bgparam::io::presets::{group_datum, GROUP_PRESETS};
use bgparam::packet::{parameter_datum, PARAMETER_PRESETS};

fn main() -> bgparam::error::Result<()> {
    for name in GROUP_PRESETS {
        let (d, a) = group_datum(name)?;
        let text = to_toml(&GroupFile::from_datum(&d, &a));
        let (f, _, _) = GroupFile::parse(&text, name)?;
        assert_eq!(to_toml(&f), text);
    }
    println!("{} group presets round-trip", GROUP_PRESETS.len());
    for name in PARAMETER_PRESETS {
        let d = parameter_datum(name)?;
        let text = to_toml(&ParamFile::from_datum(&d));
        assert_eq!(ParamFile::parse(&text, name)?.1, d);
    }
    println!("{} parameter presets round-trip", PARAMETER_PRESETS.len());
    println!("\n# gl4-st2\n{}", to_toml(&ParamFile::from_datum(&parameter_datum("gl4-st2")?)));
    Ok(())
}
