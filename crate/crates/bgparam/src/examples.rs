//! Worked examples bundled with the `rk examples` command.

use crate::disconnected;
use crate::endoscopy::{fmt_cyclo, s_from_strs, EndoscopicDatum};
use crate::error::Result;
use crate::io::format::parse_b;
use crate::io::presets::group;
use crate::io::report::{self, Report};
use crate::lattice::ivec;
use crate::packet::{build_packet_member, parameter};

fn endo(s: &[&str]) -> Result<EndoscopicDatum> {
    Ok(EndoscopicDatum { s: s_from_strs(s)?, twist: Vec::new() })
}

fn coefficients(r: &Report, side: &str) -> Vec<String> {
    r.result[side]
        .as_array()
        .map(|a| a.iter().map(|t| t["coefficient"].as_str().unwrap_or_default().to_string()).collect())
        .unwrap_or_default()
}

pub fn all() -> Result<Vec<(String, Report)>> {
    let mut out = Vec::new();

    let p = parameter("gl2-triv")?;
    let mut r = report::packet_report(&p, Some((&ivec(&[1, 0]), 0)), None, 0)?;
    let lab = build_packet_member(&p, &ivec(&[1, 0]), 0)?;
    r.check("G_b = T", lab.b.levi.is_empty());
    r.check("singleton fiber", r.result["fiber"]["members"].as_array().map_or(0, Vec::len) == 1);
    out.push(("gl2-std-packet".into(), r));

    let mut r = report::eci_report(&p, &endo(&["0", "0"])?, &lab.b)?;
    let pairing = r.result["pairings"][0]["value"].as_str() == Some("2");
    r.check("⟨π,1⟩_reg = 2", pairing);
    let single = coefficients(&r, "lhs") == ["2"] && coefficients(&r, "rhs") == ["2"];
    r.check("both sides 2·Θ", single);
    out.push(("gl2-std-eci".into(), r));

    let p = parameter("gl4-st2")?;
    let b = build_packet_member(&p, &ivec(&[1, 0]), 0)?.b;
    let mut r = report::eci_report(&p, &endo(&["0", "0", "0", "0"])?, &b)?;
    let e = crate::endoscopy::endoscopic_group_from_s(&p.g, &endo(&["0", "0", "0", "0"])?)?;
    let j = crate::endoscopy::jacquet_geometric_terms(&p, &e, &b.levi, 0)?;
    let reg = crate::endoscopy::regular_part(&j);
    r.check("three geometric-lemma terms", j.multiplicity() == 3);
    r.check(
        "regular part is 2·Θ of one label",
        reg.terms.len() == 1 && fmt_cyclo(&reg.terms[0].coefficient) == "2",
    );
    r.check("one discarded term", r.result["discarded"].as_array().map_or(0, Vec::len) == 1);
    out.push(("gl4-st-st-eci".into(), r));

    let r = report::eci_report(&p, &endo(&["0", "0", "1/2", "1/2"])?, &b)?;
    out.push(("gl4-st-st-split-eci".into(), r));

    let g = group("gl4")?;
    let mut r = report::weyl_report("gl4", &g, &[0, 2], &[0, 2], "double-coset")?;
    r.check("two double cosets", r.result["count"] == 2);
    out.push(("gl4-double-cosets".into(), r));

    let g = group("gl2")?;
    for (name, b) in [("gl2-bset-torus", ":1,0"), ("gl2-bset-basic", "0:1")] {
        out.push((name.into(), report::bset_report("gl2", &g, &parse_b(b)?)?));
    }

    let o2 = disconnected::preset("o2")?;
    let mut r = report::irr_report_for("O2", &o2, 1)?;
    r.check("three classes at height 1", r.result["count"] == 3);
    out.push(("o2-irreducibles".into(), r));

    for name in ["gl3-triv", "gl4-st2", "sl2", "gl2xgl2-swap"] {
        let r = report::packet_report(&parameter(name)?, None, None, 2)?;
        out.push((format!("{name}-round-trip"), r));
    }
    Ok(out)
}
