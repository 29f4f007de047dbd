//! Declarative TOML inputs for groups, parameters and endoscopic data.
//!
//! Every input is either a preset name or a file.  Files are validated before
//! anything is computed and failures carry `file:line`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::endoscopy::{parse_rational, EndoscopicDatum};
use crate::error::{Error, Result};
use crate::kottwitz::BElement;
use crate::lattice::{FgElement, IVec, IntegerMatrix};
use crate::packet::ParameterDatum;
use crate::root_datum::{BasedRootDatum, GaloisAction, Group};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub simple_roots: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub simple_coroots: Vec<Vec<i64>>,
    /// Γ generators on `X*(T)`, each a list of rows.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub galois: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default)]
    pub levi_m: Vec<usize>,
    #[serde(default)]
    pub sphi_simple: Vec<Vec<i64>>,
    #[serde(default)]
    pub r_phi: Vec<Vec<usize>>,
    #[serde(default = "yes")]
    pub tempered: bool,
    #[serde(default)]
    pub label: String,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoFile {
    /// Exponents of `s`, as strings `"p/q"` or integers-as-strings.
    pub s: Vec<String>,
    #[serde(default)]
    pub twist: Vec<usize>,
}

fn iv(v: &[i64]) -> IVec {
    v.iter().map(|&x| x.into()).collect()
}

fn small(v: &[num_bigint::BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("preset entries fit in i64")).collect()
}

/// Line (1-based) of the first `key =` in `src`, or 1.
pub fn line_of(src: &str, key: &str) -> usize {
    src.lines()
        .position(|l| {
            let t = l.trim_start();
            t.strip_prefix(key).is_some_and(|r| r.trim_start().starts_with('='))
        })
        .map_or(1, |i| i + 1)
}

fn line_at(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

fn parse_toml<T: for<'de> Deserialize<'de>>(src: &str, file: &str) -> Result<T> {
    toml::from_str(src).map_err(|e| Error::Validation {
        file: file.to_string(),
        line: e.span().map_or(1, |s| line_at(src, s.start)),
        msg: e.message().to_string(),
    })
}

fn invalid(file: &str, src: &str, key: &str, e: impl std::fmt::Display) -> Error {
    Error::Validation { file: file.to_string(), line: line_of(src, key), msg: e.to_string() }
}

impl GroupFile {
    pub fn parse(src: &str, file: &str) -> Result<(Self, BasedRootDatum, GaloisAction)> {
        let f: GroupFile = parse_toml(src, file)?;
        let (d, a) = f.build().map_err(|(key, e)| invalid(file, src, key, e))?;
        Ok((f, d, a))
    }

    fn build(&self) -> std::result::Result<(BasedRootDatum, GaloisAction), (&'static str, Error)> {
        if let Some(p) = &self.preset {
            if self.name.is_some() || self.rank.is_some() || !self.simple_roots.is_empty() || !self.galois.is_empty() {
                return Err(("preset", Error::InvalidDatum("`preset` excludes explicit fields".into())));
            }
            return super::presets::group_datum(p).map_err(|e| ("preset", e));
        }
        let rank = self.rank.ok_or(("rank", Error::InvalidDatum("missing `rank`".into())))?;
        let name = self.name.clone().unwrap_or_else(|| "G".into());
        for (key, vs) in [("simple_roots", &self.simple_roots), ("simple_coroots", &self.simple_coroots)] {
            if vs.iter().any(|v| v.len() != rank) {
                return Err((key, Error::InvalidDatum(format!("`{key}` entries must have length {rank}"))));
            }
        }
        let roots: Vec<IVec> = self.simple_roots.iter().map(|v| iv(v)).collect();
        let coroots: Vec<IVec> = self.simple_coroots.iter().map(|v| iv(v)).collect();
        let d = BasedRootDatum::from_simple(&name, rank, &roots, &coroots).map_err(|e| ("simple_roots", e))?;
        let mut gens = Vec::new();
        for m in &self.galois {
            if m.len() != rank || m.iter().any(|r| r.len() != rank) {
                return Err(("galois", Error::InvalidAction(format!("Γ generators must be {rank}×{rank}"))));
            }
            gens.push(IntegerMatrix::from_i64(m));
        }
        let a = GaloisAction { generators: gens };
        Group::new(d.clone(), a.clone()).map_err(|e| ("galois", e))?;
        Ok((d, a))
    }

    pub fn from_datum(d: &BasedRootDatum, a: &GaloisAction) -> Self {
        GroupFile {
            preset: None,
            name: Some(d.name.clone()),
            rank: Some(d.rank),
            simple_roots: d.simple.iter().map(|&r| small(&d.roots[r])).collect(),
            simple_coroots: d.simple.iter().map(|&r| small(&d.coroots[r])).collect(),
            galois: a
                .generators
                .iter()
                .map(|m| (0..m.rows()).map(|i| small(&m.row(i))).collect())
                .collect(),
        }
    }
}

impl ParamFile {
    pub fn parse(src: &str, file: &str) -> Result<(Self, ParameterDatum)> {
        let f: ParamFile = parse_toml(src, file)?;
        let d = f.datum().map_err(|(key, e)| invalid(file, src, key, e))?;
        Ok((f, d))
    }

    pub fn datum(&self) -> std::result::Result<ParameterDatum, (&'static str, Error)> {
        if let Some(p) = &self.preset {
            if self.group.is_some() || !self.levi_m.is_empty() || !self.sphi_simple.is_empty() || !self.r_phi.is_empty() {
                return Err(("preset", Error::InvalidParameter("`preset` excludes explicit fields".into())));
            }
            return crate::packet::parameter_datum(p).map_err(|e| ("preset", e));
        }
        let group = self.group.clone().ok_or(("group", Error::InvalidParameter("missing `group`".into())))?;
        let mut levi = self.levi_m.clone();
        levi.sort_unstable();
        levi.dedup();
        Ok(ParameterDatum {
            group,
            levi_m: levi,
            sphi_simple: self.sphi_simple.iter().map(|v| iv(v)).collect(),
            r_phi: self.r_phi.clone(),
            tempered: self.tempered,
            label: if self.label.is_empty() { "φ".into() } else { self.label.clone() },
        })
    }

    pub fn from_datum(d: &ParameterDatum) -> Self {
        ParamFile {
            preset: None,
            group: Some(d.group.clone()),
            levi_m: d.levi_m.clone(),
            sphi_simple: d.sphi_simple.iter().map(|v| small(v)).collect(),
            r_phi: d.r_phi.clone(),
            tempered: d.tempered,
            label: d.label.clone(),
        }
    }
}

impl EndoFile {
    pub fn parse(src: &str, file: &str) -> Result<(Self, EndoscopicDatum)> {
        let f: EndoFile = parse_toml(src, file)?;
        let d = f.datum().map_err(|e| invalid(file, src, "s", e))?;
        Ok((f, d))
    }

    pub fn datum(&self) -> Result<EndoscopicDatum> {
        let s = self.s.iter().map(|x| parse_rational(x).map_err(Error::InvalidEndoscopic)).collect::<Result<_>>()?;
        Ok(EndoscopicDatum { s, twist: self.twist.clone() })
    }

    pub fn from_datum(d: &EndoscopicDatum) -> Self {
        EndoFile { s: d.s.iter().map(|x| x.to_string()).collect(), twist: d.twist.clone() }
    }
}

pub fn to_toml<T: Serialize>(x: &T) -> String {
    toml::to_string(x).expect("input structs serialize to TOML")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Validation { file: path.display().to_string(), line: 0, msg: e.to_string() })
}

fn is_file_arg(arg: &str) -> bool {
    arg.ends_with(".toml") || Path::new(arg).is_file()
}

/// A group given as a preset name or a TOML file.
pub fn load_group(arg: &str) -> Result<(String, Group)> {
    if is_file_arg(arg) {
        let (_, d, a) = GroupFile::parse(&read(Path::new(arg))?, arg)?;
        Ok((d.name.clone(), Group::new(d, a)?))
    } else {
        Ok((arg.to_string(), super::presets::group(arg)?))
    }
}

/// A parameter datum given as a preset name or a TOML file.  A `group` key in
/// a file naming another TOML file is resolved relative to it.
pub fn load_param(arg: &str) -> Result<(ParameterDatum, Group)> {
    let d = if is_file_arg(arg) {
        let (_, mut d) = ParamFile::parse(&read(Path::new(arg))?, arg)?;
        if d.group.ends_with(".toml") {
            let base = Path::new(arg).parent().unwrap_or(Path::new("."));
            d.group = base.join(&d.group).display().to_string();
        }
        d
    } else {
        crate::packet::parameter_datum(arg)?
    };
    let (_, g) = load_group(&d.group)?;
    Ok((d, g))
}

/// An endoscopic datum as a TOML file or an inline list such as `0,1/2`.
pub fn load_endo(arg: &str) -> Result<EndoscopicDatum> {
    if is_file_arg(arg) {
        Ok(EndoFile::parse(&read(Path::new(arg))?, arg)?.1)
    } else {
        let s = arg.split(',').map(|x| parse_rational(x).map_err(Error::InvalidEndoscopic)).collect::<Result<_>>()?;
        Ok(EndoscopicDatum { s, twist: Vec::new() })
    }
}

fn ints(s: &str) -> std::result::Result<Vec<i64>, String> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| x.trim().parse().map_err(|_| format!("bad integer `{x}`"))).collect()
}

/// `LEVI:KAPPA[;TORSION]`, e.g. `:1,0` for `T` or `0:1` for `G = GL2`.
pub fn parse_b(arg: &str) -> Result<BElement> {
    let bad = |m: String| Error::Validation { file: "--b".into(), line: 0, msg: m };
    let (l, k) = arg.split_once(':').ok_or_else(|| bad("expected LEVI:KAPPA".into()))?;
    let (free, tors) = k.split_once(';').unwrap_or((k, ""));
    let mut levi: Vec<usize> = ints(l).map_err(bad)?.into_iter().map(|x| x as usize).collect();
    levi.sort_unstable();
    Ok(BElement { levi, kappa: FgElement { free: iv(&ints(free).map_err(bad)?), torsion: iv(&ints(tors).map_err(bad)?) } })
}

pub fn fmt_b(b: &BElement) -> String {
    let j = |v: &[num_bigint::BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let l = b.levi.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    if b.kappa.torsion.is_empty() {
        format!("{l}:{}", j(&b.kappa.free))
    } else {
        format!("{l}:{};{}", j(&b.kappa.free), j(&b.kappa.torsion))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_file_round_trip() {
        for name in super::super::presets::GROUP_PRESETS {
            let (d, a) = super::super::presets::group_datum(name).unwrap();
            let f = GroupFile::from_datum(&d, &a);
            let text = to_toml(&f);
            let (f2, d2, a2) = GroupFile::parse(&text, "x.toml").unwrap();
            assert_eq!(f, f2, "{name}");
            assert_eq!(a, a2);
            assert_eq!(d2.simple_roots(), d.simple_roots());
        }
    }

    #[test]
    fn param_file_round_trip() {
        for name in crate::packet::PARAMETER_PRESETS {
            let d = crate::packet::parameter_datum(name).unwrap();
            let text = to_toml(&ParamFile::from_datum(&d));
            let (_, d2) = ParamFile::parse(&text, "p.toml").unwrap();
            assert_eq!(d, d2);
        }
    }

    #[test]
    fn errors_carry_lines() {
        let src = "name = \"X\"\nrank = 2\nsimple_roots = [[1, -1]]\nsimple_coroots = [[1, -1, 0]]\n";
        match GroupFile::parse(src, "g.toml") {
            Err(Error::Validation { file, line, .. }) => assert_eq!((file.as_str(), line), ("g.toml", 4)),
            other => panic!("{other:?}"),
        }
        match GroupFile::parse("rank = 2\nbogus = 1\n", "g.toml") {
            Err(Error::Validation { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match EndoFile::parse("twist = []\ns = [\"1/0\"]\n", "e.toml") {
            Err(Error::Validation { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn b_strings() {
        for s in [":1,0", "0:1", "0,2:1,0", "0:1;1"] {
            assert_eq!(fmt_b(&parse_b(s).unwrap()), s);
        }
    }
}
