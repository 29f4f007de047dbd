//! Versioned JSON reports for the command line.
//!
//! Big integers are written as JSON numbers when they fit in `i64`, rationals as
//! `"p/q"` strings; object keys are sorted, so identical inputs give identical bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::disconnected::{finite_group::SimpleModule, Disconnected};
use crate::endoscopy::{self, fmt_cyclo, EciReport, Endoscopic, FormalDistribution, IndexingReport};
use crate::error::Result;
use crate::kottwitz::{self, BElement};
use crate::lattice::FgElement;
use crate::packet::{self, Parameter, PacketLabel};
use crate::root_datum::Group;
use crate::weyl;

pub const SCHEMA_VERSION: &str = "bgparam.report/1";

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub checks: Vec<(String, bool)>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Report { command: command.into(), input, result: Value::Null, checks: Vec::new() }
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    pub fn to_value(&self) -> Value {
        let checks: serde_json::Map<String, Value> = self.checks.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "input": self.input,
            "result": self.result,
            "checks": checks,
            "ok": self.ok(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }
}

pub fn int(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn rat(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn rats(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn fg(e: &FgElement) -> Value {
    json!({ "free": ints(&e.free), "torsion": ints(&e.torsion) })
}

pub fn b_element(b: &BElement) -> Value {
    json!({ "levi": b.levi, "kappa": fg(&b.kappa) })
}

fn word(g: &Group, w: usize) -> Value {
    json!(g.weyl.get(w).word)
}

pub fn weyl_report(name: &str, g: &Group, l1: &[usize], l2: &[usize], kind: &str) -> Result<Report> {
    let mut r = Report::new("weyl", json!({ "group": name, "l1": l1, "l2": l2, "kind": kind }));
    g.check_levi(l1)?;
    g.check_levi(l2)?;
    let elements: Vec<Value> = match kind {
        "transporter" => weyl::transporter_set(g, l1, l2)?.into_iter().map(|w| json!({ "word": word(g, w) })).collect(),
        "double-coset" => weyl::double_coset_reps(g, l1, l2)?.into_iter().map(|w| json!({ "word": word(g, w) })).collect(),
        "geometric" => weyl::geometric_lemma_index(g, l1, l2)?
            .into_iter()
            .map(|x| json!({ "word": word(g, x.w), "left": x.left, "right": x.right }))
            .collect(),
        _ => {
            return Err(crate::error::Error::Validation {
                file: "--kind".into(),
                line: 0,
                msg: format!("unknown kind `{kind}`; expected transporter, double-coset or geometric"),
            })
        }
    };
    let pool = if kind == "geometric" { g.rel.clone() } else { weyl::transporter_set(g, l1, l2)? };
    if kind != "transporter" {
        let brute = weyl::double_cosets(g, &g.levi_rel_weyl(l2), &pool, &g.levi_rel_weyl(l1)).len();
        r.check("count matches brute-force double cosets", elements.len() == brute);
    }
    r.result = json!({ "count": elements.len(), "elements": elements, "weyl_order": g.weyl.order() });
    Ok(r)
}

pub fn bset_report(name: &str, g: &Group, b: &BElement) -> Result<Report> {
    let mut r = Report::new("bset", json!({ "group": name, "b": b_element(b) }));
    let stratum = kottwitz::classify(g, b)?;
    let nu = kottwitz::newton(g, b)?;
    let pushed = kottwitz::kappa_push(g, b)?;
    let lift = kottwitz::basic_plus_lift(g, &b.levi, b.kappa.clone());
    r.check("stratum equals levi", stratum == b.levi);
    r.check("basic-plus lift accepts", lift.as_ref().is_ok_and(|x| x == b));
    r.check("newton point dominant", g.is_dominant(&nu));
    r.result = json!({
        "newton": rats(&nu),
        "stratum": stratum,
        "basic": b.is_basic(g),
        "kappa_g": fg(&pushed),
    });
    Ok(r)
}

fn module(m: &SimpleModule) -> Value {
    json!({ "dim": m.dim, "character": m.character.iter().map(fmt_cyclo).collect::<Vec<_>>() })
}

/// Irreducibles of `S_φ` up to height, with the usual dimension checks.
pub fn irr_report(p: &Parameter, height: i64) -> Result<Report> {
    irr_report_for(&p.datum.label, &p.sphi, height)
}

pub fn irr_report_for(label: &str, s: &Disconnected, height: i64) -> Result<Report> {
    let mut r = Report::new("irr", json!({ "group": label, "height": height }));
    let classes = s.classify_irr(height)?;
    let mut out = Vec::new();
    let mut squares = true;
    let mut weyl_dims = true;
    for c in &classes {
        let (stab, mods) = s.modules_for(&c.lambda)?;
        let sum: usize = mods.iter().map(|m| m.dim * m.dim).sum();
        squares &= sum == stab.len();
        let table = crate::disconnected::weights::weight_multiplicities(&s.datum.identity_component, &c.lambda)?;
        weyl_dims &= table.dimension()
            == crate::disconnected::weights::weyl_dimension(&s.datum.identity_component, &c.lambda)?;
        out.push(json!({
            "lambda": ints(&c.lambda),
            "a_lambda_order": c.a_lambda.len(),
            "module_index": c.module_index,
            "module": module(&c.module),
            "dim": int(&c.dim),
        }));
    }
    r.check("sum of squared module dimensions equals |A^λ|", squares);
    r.check("Freudenthal total equals Weyl dimension", weyl_dims);
    r.check("π₀ splitting", s.pi0_weyl_split().ok());
    r.result = json!({ "classes": out, "count": classes.len() });
    Ok(r)
}

pub fn packet_label(g: &Group, l: &PacketLabel) -> Value {
    json!({
        "b": b_element(&l.b),
        "levi": l.levi,
        "w": l.w_word,
        "w_class": word(g, l.w_class),
        "double_coset": word(g, l.double_coset),
        "lambda": ints(&l.lambda),
        "lambda_l": ints(&l.lambda_l),
        "e_index": l.e_index,
        "e_l_index": l.e_l_index,
        "e_dim": l.e_dim,
        "parameter": l.parameter_label,
        "descent": { "lambda": ints(&l.descent.lambda), "killed": l.descent.killed.iter().map(|v| ints(v)).collect::<Vec<_>>() },
    })
}

fn fiber_value(p: &Parameter, f: &packet::Fiber) -> Value {
    json!({
        "b": b_element(&f.b),
        "members": f.members.iter().map(|m| json!({
            "lambda": ints(&m.lambda),
            "e_index": m.e_index,
            "e_l_index": m.e_l_index,
            "w": word(&p.g, m.w),
            "double_coset": word(&p.g, m.double_coset),
        })).collect::<Vec<_>>(),
        "double_cosets": f.double_cosets.iter().map(|&w| word(&p.g, w)).collect::<Vec<_>>(),
    })
}

/// One member from `rho = (λ, E)`, the fiber over `b`, or a round-trip sweep.
pub fn packet_report(
    p: &Parameter,
    rho: Option<(&[BigInt], usize)>,
    b: Option<&BElement>,
    height: i64,
) -> Result<Report> {
    let mut r = Report::new(
        "packet",
        json!({
            "parameter": p.datum.label,
            "rho": rho.map(|(l, e)| json!({ "lambda": ints(l), "e": e })),
            "b": b.map(b_element),
            "height": height,
        }),
    );
    if let Some((lambda, e)) = rho {
        let lab = packet::build_packet_member(p, lambda, e)?;
        let fiber = packet::enumerate_fiber(p, &lab.b)?;
        let cc = packet::central_character_square(p, lambda, e)?;
        let found = fiber.members.iter().any(|m| m.lambda == lab.lambda && m.e_index == lab.e_index);
        r.check("member lies in its fiber", found);
        r.check("fiber bijection", fiber.bijection_ok);
        r.check("central character equals κ_G(b)", cc.equal);
        r.result = json!({
            "member": packet_label(&p.g, &lab),
            "fiber": fiber_value(p, &fiber),
            "central_character": { "omega": fg(&cc.omega), "kappa_g": fg(&cc.kappa_g) },
        });
    } else if let Some(b) = b {
        let fiber = packet::enumerate_fiber(p, b)?;
        r.check("fiber bijection", fiber.bijection_ok);
        r.result = json!({ "fiber": fiber_value(p, &fiber) });
    } else {
        let rt = packet::round_trip_check(p, height)?;
        r.check("injective", rt.injective);
        r.check("exhaustive", rt.exhaustive);
        r.check("levi stabilizers agree", rt.levi_stabilizers_agree);
        r.check("no discrepancies", rt.discrepancies.is_empty());
        r.result = json!({
            "members": rt.members,
            "fibers": rt.fibers,
            "discrepancies": rt.discrepancies,
        });
    }
    Ok(r)
}

pub fn distribution(d: &FormalDistribution) -> Value {
    Value::Array(
        d.terms
            .iter()
            .map(|t| {
                json!({
                    "levi": t.levi,
                    "param": t.param_tag,
                    "s": t.s_tag,
                    "rho": t.rho_tag,
                    "coefficient": fmt_cyclo(&t.coefficient),
                    "sign": t.sign_token,
                    "delta_halves": t.delta_twist,
                    "regular": t.regular,
                    "provenance": t.provenance,
                })
            })
            .collect(),
    )
}

pub fn indexing(g: &Group, e: &Endoscopic, x: &IndexingReport) -> Value {
    json!({
        "levi": x.levi,
        "embedded": x.embedded.iter().map(|d| json!({ "w": d.w_word, "h_levi": d.h_levi, "class_size": d.class_size })).collect::<Vec<_>>(),
        "rows": x.rows.iter().map(|row| json!({
            "datum": row.datum,
            "h_coset": e.h.weyl.get(row.h_coset).word,
            "g_coset": word(g, row.g_coset),
        })).collect::<Vec<_>>(),
        "lhs_size": x.lhs_size,
        "rhs_size": x.rhs_size,
    })
}

pub fn eci_value(p: &Parameter, e: &Endoscopic, x: &EciReport) -> Value {
    json!({
        "b": b_element(&x.b),
        "h_roots": e.h_roots.len(),
        "lhs_stable": distribution(&x.lhs_stable),
        "lhs": distribution(&x.lhs),
        "rhs": distribution(&x.rhs),
        "discarded": distribution(&x.discarded),
        "pairings": x.pairings.iter().map(|(k, v)| json!({ "rho": k, "value": fmt_cyclo(&v.value), "cosets": v.cosets })).collect::<Vec<_>>(),
        "bijection": indexing(&p.g, e, &x.bijection),
        "rendered": { "lhs": endoscopy::render(&x.lhs), "rhs": endoscopy::render(&x.rhs) },
    })
}

pub fn eci_report(p: &Parameter, datum: &endoscopy::EndoscopicDatum, b: &BElement) -> Result<Report> {
    let mut r = Report::new(
        "eci",
        json!({ "parameter": p.datum.label, "s": rats(&datum.s), "twist": datum.twist, "b": b_element(b) }),
    );
    let e = endoscopy::endoscopic_group_from_s(&p.g, datum)?;
    let x = endoscopy::eci_both_sides(p, b, &e)?;
    r.check("indexing bijection", x.bijection.ok());
    r.check("coset bookkeeping", x.bookkeeping_ok);
    r.check("pairing independent of representative", x.pairing_consistent);
    r.check("both sides equal", x.equal);
    r.result = eci_value(p, &e, &x);
    Ok(r)
}
