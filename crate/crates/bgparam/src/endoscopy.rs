//! Endoscopic data at the level of root data, embedded data, the indexing
//! bijection, geometric-lemma terms and the two sides of the character identity.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::disconnected::cyclotomic::Cyclo;
use crate::disconnected::{CharValue, Disconnected, TorusPoint};
use crate::error::{Error, Result};
use crate::kottwitz::{classify, BElement};
use crate::lattice::{iqdot, saturated_kernel, IVec, IntegerMatrix, QVec};
use crate::packet::{enumerate_fiber, match_module, FiberMember, Parameter};
use crate::root_datum::{BasedRootDatum, Group, StandardLevi};
use crate::weyl::{geometric_lemma_index, left_cosets, root_in_levi, transporter_set};

/// `s` as exponents on `X*(T̂) = X_*(T)`, i.e. a vector of `X*(T) ⊗ Q` modulo `X*(T)`,
/// optionally conjugated by a Weyl word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoscopicDatum {
    pub s: QVec,
    #[serde(default)]
    pub twist: Vec<usize>,
}

/// The group `H` with `Ĥ = Z_Ĝ(η(s))°`, realized on the same torus.
#[derive(Debug)]
pub struct Endoscopic {
    pub datum: EndoscopicDatum,
    pub s: QVec,
    pub h: Group,
    /// Root indices of `G` that are roots of `H`.
    pub h_roots: Vec<usize>,
    /// Weyl element of `H` to the same element of `W`.
    pub h_to_g: Vec<usize>,
}

fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

pub fn endoscopic_group_from_s(g: &Group, datum: &EndoscopicDatum) -> Result<Endoscopic> {
    let n = g.rank();
    if datum.s.len() != n {
        return Err(Error::InvalidEndoscopic(format!("s has {} entries, expected {n}", datum.s.len())));
    }
    if datum.twist.iter().any(|&i| i >= g.nsimple()) {
        return Err(Error::InvalidEndoscopic("twist word uses an unknown simple reflection".into()));
    }
    let tw = g.weyl.from_word(&datum.twist);
    let s: QVec = g.weyl.get(tw).chr.mul_qvec(&datum.s).iter().map(frac).collect();
    for gamma in &g.galois.generators {
        let d: QVec = gamma.mul_qvec(&s).iter().zip(&s).map(|(a, b)| a - b).collect();
        if d.iter().any(|x| !x.is_integer()) {
            return Err(Error::InvalidEndoscopic("s is not Γ-fixed".into()));
        }
    }
    let h_roots: Vec<usize> =
        (0..g.datum.roots.len()).filter(|&r| iqdot(&g.datum.coroots[r], &s).is_integer()).collect();
    let pos: Vec<usize> = h_roots.iter().copied().filter(|&r| g.positive[r]).collect();
    let pos_set: BTreeSet<&IVec> = pos.iter().map(|&r| &g.datum.roots[r]).collect();
    let simple: Vec<usize> = pos
        .iter()
        .copied()
        .filter(|&r| {
            !pos.iter().any(|&a| {
                let d: IVec = g.datum.roots[r].iter().zip(&g.datum.roots[a]).map(|(x, y)| x - y).collect();
                pos_set.contains(&d)
            })
        })
        .collect();
    let hd = BasedRootDatum::from_simple(
        &format!("H({})", g.name()),
        n,
        &simple.iter().map(|&r| g.datum.roots[r].clone()).collect::<Vec<_>>(),
        &simple.iter().map(|&r| g.datum.coroots[r].clone()).collect::<Vec<_>>(),
    )?;
    if hd.roots.len() != h_roots.len() {
        return Err(Error::InvalidEndoscopic("integral roots do not form a closed subsystem".into()));
    }
    let h = Group::new(hd, g.galois.clone())?;
    let by_matrix: HashMap<&IntegerMatrix, usize> =
        g.weyl.elements.iter().enumerate().map(|(i, e)| (&e.chr, i)).collect();
    let h_to_g = h
        .weyl
        .elements
        .iter()
        .map(|e| by_matrix.get(&e.chr).copied().ok_or_else(|| Error::InvalidEndoscopic("W_H ⊄ W".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Endoscopic { datum: datum.clone(), s, h, h_roots, h_to_g })
}

impl Endoscopic {
    /// H-simple positions whose roots lie in the Levi `levi` of `G`.
    pub fn h_levi_in(&self, g: &Group, levi: &[usize]) -> StandardLevi {
        let gl: BTreeSet<&IVec> = g.levi_roots(levi).into_iter().map(|r| &g.datum.roots[r]).collect();
        (0..self.h.nsimple()).filter(|&i| gl.contains(self.h.simple_root(i))).collect()
    }

    pub fn g_to_h(&self, w: usize) -> Option<usize> {
        self.h_to_g.iter().position(|&x| x == w)
    }
}

/// `η(s)` inside `S_{φ,L}`: it lies in `A_M̂`, with these exponents on `X*(A_M̂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SCertificate {
    pub levi: StandardLevi,
    #[serde(serialize_with = "ser_qvec", deserialize_with = "de_qvec")]
    pub a_m_exponents: QVec,
    pub component: String,
}

/// Exponents of a torus element on `X*(A_M̂)` if it lies in `A_M̂`.
pub fn a_m_exponents(p: &Parameter, u: &[BigRational]) -> Option<QVec> {
    let n = p.g.rank();
    let basis = &p.dm.a_hat_basis;
    let perp: Vec<IVec> = if basis.is_empty() {
        (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
    } else {
        saturated_kernel(&IntegerMatrix::from_rows(basis))
    };
    if perp.iter().any(|r| !iqdot(r, u).is_integer()) {
        return None;
    }
    let f = p.rank();
    Some(
        (0..f)
            .map(|i| {
                let e: IVec = (0..f).map(|j| BigInt::from((i == j) as i64)).collect();
                frac(&iqdot(&p.lift(&e), u))
            })
            .collect(),
    )
}

pub fn s_in_levi_check(p: &Parameter, e: &Endoscopic, levi: &[usize]) -> Result<SCertificate> {
    if !p.levi_m().iter().all(|i| levi.contains(i)) {
        return Err(Error::NotContained { inner: p.levi_m().to_vec(), outer: levi.to_vec() });
    }
    let ex = a_m_exponents(p, &e.s)
        .ok_or_else(|| Error::InvalidEndoscopic("φ does not factor through η: η(s) is not in A_M̂".into()))?;
    Ok(SCertificate { levi: levi.to_vec(), a_m_exponents: ex, component: "identity".into() })
}

/// A representative `(H_L, w)` of an inner class in `X^𝔢_L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedDatum {
    pub w: usize,
    pub w_word: Vec<usize>,
    pub h_levi: StandardLevi,
    pub class_size: usize,
}

/// `W(L, H)`: `w` such that every `γ` composed with some `h ∈ W_H` fixes `w⁻¹ 𝔄_L`.
pub fn w_l_h(g: &Group, e: &Endoscopic, levi: &[usize]) -> Result<Vec<usize>> {
    let dl = g.levi(levi)?;
    let a: Vec<QVec> = dl.a_basis.iter().map(|v| crate::lattice::to_q(v)).collect();
    Ok((0..g.weyl.order())
        .filter(|&w| {
            let winv = g.weyl.inv(w);
            let ys: Vec<QVec> = a.iter().map(|v| g.act(winv, v)).collect();
            g.gamma_cochar.iter().all(|gamma| {
                e.h_to_g.iter().any(|&h| ys.iter().all(|y| g.act(h, &gamma.mul_qvec(y)) == *y))
            })
        })
        .collect())
}

/// A point of the open facet of `L`: the projection of the sum of positive coroots.
fn facet_point(g: &Group, levi: &[usize]) -> Result<QVec> {
    let n = g.rank();
    let mut x = vec![BigInt::zero(); n];
    for r in g.positive_roots() {
        for (xi, c) in x.iter_mut().zip(&g.datum.coroots[r]) {
            *xi += c;
        }
    }
    Ok(g.levi(levi)?.project(&crate::lattice::to_q(&x)))
}

pub fn enumerate_embedded(g: &Group, levi: &[usize], e: &Endoscopic) -> Result<Vec<EmbeddedDatum>> {
    let pool = w_l_h(g, e, levi)?;
    let wh: Vec<usize> = e.h_to_g.clone();
    let classes = crate::weyl::double_cosets(g, &g.levi_weyl(levi), &pool, &wh);
    let xl = facet_point(g, levi)?;
    let mut out = Vec::new();
    for class in classes {
        let rep = class[0];
        let mut y = g.act(g.weyl.inv(rep), &xl);
        let mut hw = 0;
        while let Some(i) = (0..e.h.nsimple()).find(|&i| e.h.simple_pairing(i, &y).is_negative()) {
            let s = e.h.weyl.simple[i];
            y = e.h.act(s, &y);
            hw = e.h.weyl.mul(s, hw);
        }
        let w = g.weyl.mul(rep, g.weyl.inv(e.h_to_g[hw]));
        let h_levi = (0..e.h.nsimple()).filter(|&i| e.h.simple_pairing(i, &y).is_zero()).collect();
        out.push(EmbeddedDatum { w, w_word: g.weyl.get(w).word.clone(), h_levi, class_size: class.len() });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionRow {
    pub datum: usize,
    /// Least element of `W^rel_{H_L} v`, as an element of `W_H`.
    pub h_coset: usize,
    /// Least element of `W^rel_L g`.
    pub g_coset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexingReport {
    pub levi: StandardLevi,
    pub embedded: Vec<EmbeddedDatum>,
    pub rows: Vec<BijectionRow>,
    pub lhs_size: usize,
    pub rhs_size: usize,
    pub forward_defined: bool,
    pub backward_defined: bool,
    pub mutually_inverse: bool,
}

impl IndexingReport {
    pub fn ok(&self) -> bool {
        self.forward_defined && self.backward_defined && self.mutually_inverse && self.lhs_size == self.rhs_size
    }
}

struct Indexing {
    h_m: StandardLevi,
    embedded: Vec<EmbeddedDatum>,
    /// Per embedded datum: least elements of `W^rel_{H_L}\W^rel(H_M, H_L)`.
    lhs: Vec<Vec<usize>>,
    /// Least elements of `W^rel_L\W^rel(M, L)`.
    rhs: Vec<usize>,
    trans: BTreeSet<usize>,
}

fn indexing(p: &Parameter, levi: &[usize], e: &Endoscopic) -> Result<Indexing> {
    let g = &p.g;
    let h_m = e.h_levi_in(g, p.levi_m());
    let embedded = enumerate_embedded(g, levi, e)?;
    let mut lhs = Vec::new();
    for emb in &embedded {
        let t = transporter_set(&e.h, &h_m, &emb.h_levi)?;
        lhs.push(left_cosets(&e.h, &e.h.levi_rel_weyl(&emb.h_levi), &t).iter().map(|c| c[0]).collect());
    }
    let trans: BTreeSet<usize> = transporter_set(g, p.levi_m(), levi)?.into_iter().collect();
    let tv: Vec<usize> = trans.iter().copied().collect();
    let rhs = left_cosets(g, &g.levi_rel_weyl(levi), &tv).iter().map(|c| c[0]).collect();
    Ok(Indexing { h_m, embedded, lhs, rhs, trans })
}

/// `(𝔢_L, v) ↦ W^rel_L (w_𝔢 v)`.
fn forward(p: &Parameter, levi: &[usize], e: &Endoscopic, ix: &Indexing, datum: usize, v: usize) -> Option<usize> {
    let g = &p.g;
    let x = g.weyl.mul(ix.embedded[datum].w, e.h_to_g[v]);
    g.levi_weyl(levi)
        .into_iter()
        .map(|a| g.weyl.mul(a, x))
        .find(|y| ix.trans.contains(y))
        .map(|y| p.coset_id(levi, y))
}

/// `W^rel_L g ↦ (𝔢_L, W^rel_{H_L} v)` with `g ∈ W_L w_𝔢 v`.
fn backward(p: &Parameter, levi: &[usize], e: &Endoscopic, ix: &Indexing, gc: usize) -> Option<(usize, usize)> {
    let g = &p.g;
    let wl = g.levi_weyl(levi);
    for (k, emb) in ix.embedded.iter().enumerate() {
        let winv = g.weyl.inv(emb.w);
        let ht = transporter_set(&e.h, &ix.h_m, &emb.h_levi).ok()?;
        let hl = e.h.levi_rel_weyl(&emb.h_levi);
        for &a in &wl {
            let cand = g.weyl.mul(winv, g.weyl.mul(a, gc));
            if let Some(v) = e.g_to_h(cand) {
                if ht.contains(&v) {
                    let c = hl.iter().map(|&x| e.h.weyl.mul(x, v)).min().expect("nonempty");
                    return Some((k, c));
                }
            }
        }
    }
    None
}

/// Both sides of `⊔ W^rel_{H_L}\W^rel(H_M,H_L) = W^rel_L\W^rel(M,L)` and the maps between them.
pub fn indexing_bijection_check(p: &Parameter, levi: &[usize], e: &Endoscopic) -> Result<IndexingReport> {
    let ix = indexing(p, levi, e)?;
    let mut rows = Vec::new();
    let mut forward_defined = true;
    let mut mutually_inverse = true;
    let mut image = BTreeSet::new();
    for (k, cosets) in ix.lhs.iter().enumerate() {
        for &v in cosets {
            match forward(p, levi, e, &ix, k, v) {
                Some(gc) => {
                    rows.push(BijectionRow { datum: k, h_coset: v, g_coset: gc });
                    image.insert(gc);
                    if backward(p, levi, e, &ix, gc) != Some((k, v)) {
                        mutually_inverse = false;
                    }
                }
                None => forward_defined = false,
            }
        }
    }
    let mut backward_defined = true;
    for &gc in &ix.rhs {
        match backward(p, levi, e, &ix, gc) {
            Some((k, v)) => {
                if forward(p, levi, e, &ix, k, v) != Some(gc) {
                    mutually_inverse = false;
                }
            }
            None => backward_defined = false,
        }
    }
    let lhs_size = ix.lhs.iter().map(Vec::len).sum();
    if image.len() != rows.len() {
        mutually_inverse = false;
    }
    Ok(IndexingReport {
        levi: levi.to_vec(),
        embedded: ix.embedded,
        rows,
        lhs_size,
        rhs_size: ix.rhs.len(),
        forward_defined,
        backward_defined,
        mutually_inverse,
    })
}

fn ser_cyclo<S: Serializer>(c: &Cyclo, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_cyclo(c))
}

fn ser_qvec<S: Serializer>(v: &QVec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn de_qvec<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<QVec, D::Error> {
    let v: Vec<String> = Deserialize::deserialize(d)?;
    v.iter().map(|x| parse_rational(x).map_err(serde::de::Error::custom)).collect()
}

pub fn parse_rational(x: &str) -> std::result::Result<BigRational, String> {
    let t = x.trim();
    let (a, b) = t.split_once('/').unwrap_or((t, "1"));
    let a: BigInt = a.trim().parse().map_err(|_| format!("bad rational `{x}`"))?;
    let b: BigInt = b.trim().parse().map_err(|_| format!("bad rational `{x}`"))?;
    if b.is_zero() {
        return Err(format!("zero denominator in `{x}`"));
    }
    Ok(BigRational::new(a, b))
}

/// Rational coefficients print as rationals; others in the power basis.
pub fn fmt_cyclo(c: &Cyclo) -> String {
    match c.to_rational() {
        Some(q) => q.to_string(),
        None => c.to_string(),
    }
}

/// One labelled distribution with its formal tags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub levi: StandardLevi,
    pub param_tag: String,
    pub s_tag: String,
    /// Label of `ρ_L` when the term is a single `Θ_{π_{ρ_L}}`.
    pub rho_tag: String,
    #[serde(serialize_with = "ser_cyclo")]
    pub coefficient: Cyclo,
    pub sign_token: bool,
    /// Exponent of `δ̄` in halves.
    pub delta_twist: i8,
    pub regular: bool,
    pub provenance: Vec<String>,
}

impl Term {
    fn key(&self) -> (StandardLevi, String, String, String, i8, bool, bool) {
        (
            self.levi.clone(),
            self.param_tag.clone(),
            self.s_tag.clone(),
            self.rho_tag.clone(),
            self.delta_twist,
            self.sign_token,
            self.regular,
        )
    }
}

/// Finite formal sum of [`Term`]s, canonically sorted and merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FormalDistribution {
    pub terms: Vec<Term>,
}

impl FormalDistribution {
    pub fn add(&mut self, t: Term) {
        if let Some(x) = self.terms.iter_mut().find(|x| x.key() == t.key()) {
            x.coefficient = x.coefficient.add(&t.coefficient);
            x.provenance.extend(t.provenance);
            x.provenance.sort();
        } else {
            self.terms.push(t);
        }
        self.terms.retain(|x| !x.coefficient.is_zero());
        self.terms.sort_by_key(|x| x.key());
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of merged contributions.
    pub fn multiplicity(&self) -> usize {
        self.terms.iter().map(|t| t.provenance.len()).sum()
    }

    /// Equality of labels and coefficients, ignoring provenance.
    pub fn same_sum(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| a.key() == b.key() && a.coefficient == b.coefficient)
    }
}

fn fmt_q(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn fmt_i(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// `W_φ`-element `v` with `g v⁻¹ ∈ W^rel_L w₀`, `w₀` the least element of the double coset.
fn frame_shift(p: &Parameter, levi: &[usize], g: usize) -> usize {
    let w0 = p.double_coset_id(levi, g);
    let target = p.coset_id(levi, w0);
    *p.w_phi
        .iter()
        .find(|&&v| p.coset_id(levi, p.g.weyl.mul(g, p.g.weyl.inv(v))) == target)
        .expect("g lies in the double coset of w₀")
}

fn act_s(p: &Parameter, v: usize, s: &[BigRational]) -> QVec {
    p.g.weyl.get(v).chr.mul_qvec(s)
}

/// Canonical label of `ʷη(s)` as an element of `S_{ʷφ,L}`, up to conjugacy.
pub fn s_tag(p: &Parameter, levi: &[usize], g: usize, s: &[BigRational]) -> Result<String> {
    let w0 = p.double_coset_id(levi, g);
    let v = frame_shift(p, levi, g);
    let vs = act_s(p, v, s);
    let mut best: Option<QVec> = None;
    for h in p.w_phi_levi(w0, levi) {
        let x = a_m_exponents(p, &act_s(p, h, &vs))
            .ok_or_else(|| Error::InvalidEndoscopic("η(s) is not in A_M̂".into()))?;
        if best.as_ref().map_or(true, |b| x < *b) {
            best = Some(x);
        }
    }
    Ok(fmt_q(&best.expect("W_{φ,L} contains the identity")))
}

fn param_tag(p: &Parameter, levi: &[usize], g: usize) -> String {
    format!("{}^w{}", p.datum.label, p.double_coset_id(levi, g))
}

fn rho_tag(lambda: &[BigInt], e: usize) -> String {
    format!("λ={} E#{e}", fmt_i(lambda))
}

/// Geometric-lemma terms of `J^H SΘ^H_{φ_H}` towards `H_L`, one per `W^{rel,H_M,H_L}`.
pub fn jacquet_geometric_terms(p: &Parameter, e: &Endoscopic, levi: &[usize], datum: usize) -> Result<FormalDistribution> {
    let ix = indexing(p, levi, e)?;
    let emb = ix
        .embedded
        .get(datum)
        .ok_or_else(|| Error::InvalidEndoscopic(format!("no embedded datum #{datum}")))?;
    let mut out = FormalDistribution::default();
    for gi in geometric_lemma_index(&e.h, &ix.h_m, &emb.h_levi)? {
        let regular = ix.h_m.iter().all(|&j| root_in_levi(&e.h, e.h.act_root(gi.w, e.h.datum.simple[j]), &emb.h_levi));
        let prov = format!("datum {datum}, w = {:?}", e.h.weyl.get(gi.w).word);
        if regular {
            let gc = forward(p, levi, e, &ix, datum, gi.w)
                .ok_or_else(|| Error::InvalidEndoscopic("regular term outside W^rel(M,L)".into()))?;
            out.add(Term {
                levi: emb.h_levi.clone(),
                param_tag: param_tag(p, levi, gc),
                s_tag: s_tag(p, levi, gc, &e.s)?,
                rho_tag: String::new(),
                coefficient: Cyclo::one(1),
                sign_token: false,
                delta_twist: 0,
                regular: true,
                provenance: vec![prov],
            });
        } else {
            out.add(Term {
                levi: gi.right.clone(),
                param_tag: format!("non-regular: {:?} ∩ w{}", gi.left, gi.w),
                s_tag: String::new(),
                rho_tag: String::new(),
                coefficient: Cyclo::one(1),
                sign_token: false,
                delta_twist: 0,
                regular: false,
                provenance: vec![prov],
            });
        }
    }
    Ok(out)
}

pub fn regular_part(d: &FormalDistribution) -> FormalDistribution {
    FormalDistribution { terms: d.terms.iter().filter(|t| t.regular).cloned().collect() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingValue {
    #[serde(serialize_with = "ser_cyclo")]
    pub value: Cyclo,
    /// `|W_{φ,L}|⁻¹ Σ_{v ∈ W_φ}`, which must agree with the coset sum.
    #[serde(serialize_with = "ser_cyclo")]
    pub averaged: Cyclo,
    pub cosets: usize,
}

fn trace(group: &Disconnected, lambda: &[BigInt], e_l: usize, ex: QVec) -> Result<Cyclo> {
    match group.char_eval(&group.irr(lambda, e_l)?, &TorusPoint::Exponents(ex), 0)? {
        CharValue::Number(c) => Ok(c),
        CharValue::Formal(_) => unreachable!("exponents were supplied"),
    }
}

/// `⟨π, η(s)⟩_reg` computed in the frame of `w` with `λ^w = λ`.
pub fn regular_pairing_at(
    p: &Parameter,
    levi: &[usize],
    w: usize,
    lambda: &[BigInt],
    e_index: usize,
    s: &[BigRational],
) -> Result<PairingValue> {
    let group = Disconnected::new(p.s_group_at(w, levi)?)?;
    let (stab, mods) = p.sphi.modules_for(lambda)?;
    let module = mods
        .get(e_index)
        .ok_or_else(|| Error::InvalidParameter(format!("A^λ has no simple module #{e_index}")))?;
    let e_l = match_module(&p.sphi, &stab, module, &group, lambda)?;
    let h = p.w_phi_levi(w, levi);
    let mut value = Cyclo::zero(1);
    let cosets = left_cosets(&p.g, &h, &p.w_phi);
    for c in &cosets {
        let ex = a_m_exponents(p, &act_s(p, c[0], s)).ok_or_else(|| Error::InvalidEndoscopic("η(s) ∉ A_M̂".into()))?;
        value = value.add(&trace(&group, lambda, e_l, ex)?);
    }
    let mut total = Cyclo::zero(1);
    for &v in &p.w_phi {
        let ex = a_m_exponents(p, &act_s(p, v, s)).ok_or_else(|| Error::InvalidEndoscopic("η(s) ∉ A_M̂".into()))?;
        total = total.add(&trace(&group, lambda, e_l, ex)?);
    }
    let averaged = total.scale(&BigRational::new(BigInt::one(), BigInt::from(h.len())));
    Ok(PairingValue { value, averaged, cosets: cosets.len() })
}

pub fn regular_pairing(p: &Parameter, b: &BElement, member: &FiberMember, e: &Endoscopic) -> Result<PairingValue> {
    s_in_levi_check(p, e, &p.g.full_levi())?;
    regular_pairing_at(p, &b.levi, member.w, &member.lambda, member.e_index, &e.s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EciReport {
    pub b: BElement,
    pub levi: StandardLevi,
    /// `Σ_{𝔢_L}` regular parts transported to `G_b`, as `Θ^{L_b, ʷη(s)}_{ʷφ}` labels.
    pub lhs_stable: FormalDistribution,
    /// Non-regular terms dropped by the regular part.
    pub discarded: FormalDistribution,
    pub lhs: FormalDistribution,
    pub rhs: FormalDistribution,
    pub pairings: Vec<(String, PairingValue)>,
    pub bijection: IndexingReport,
    pub bookkeeping_ok: bool,
    pub pairing_consistent: bool,
    pub equal: bool,
}

impl EciReport {
    pub fn ok(&self) -> bool {
        self.equal && self.bookkeeping_ok && self.pairing_consistent && self.bijection.ok()
    }
}

/// Both sides of the endoscopic character identity on `G_b`, expanded in the
/// basis `Θ_{π_{ρ_L}}`.
pub fn eci_both_sides(p: &Parameter, b: &BElement, e: &Endoscopic) -> Result<EciReport> {
    let g = &p.g;
    classify(g, b)?;
    let levi = b.levi.clone();
    a_m_exponents(p, &e.s)
        .ok_or_else(|| Error::InvalidEndoscopic("φ does not factor through η: η(s) is not in A_M̂".into()))?;
    let ix = indexing(p, &levi, e)?;
    let bijection = indexing_bijection_check(p, &levi, e)?;
    let y = g.levi(&levi)?.newton(&b.kappa);

    let mut lhs_stable = FormalDistribution::default();
    let mut discarded = FormalDistribution::default();
    let mut lhs = FormalDistribution::default();
    for k in 0..ix.embedded.len() {
        let terms = jacquet_geometric_terms(p, e, &levi, k)?;
        for t in terms.terms.iter().filter(|t| !t.regular) {
            discarded.add(t.clone());
        }
        let ht = transporter_set(&e.h, &ix.h_m, &ix.embedded[k].h_levi)?;
        let hl = e.h.levi_rel_weyl(&ix.embedded[k].h_levi);
        for cls in left_cosets(&e.h, &hl, &ht) {
            let gc = forward(p, &levi, e, &ix, k, cls[0])
                .ok_or_else(|| Error::InvalidEndoscopic("indexing map undefined".into()))?;
            let prov = format!("datum {k}, v = {:?} ↦ g = {:?}", e.h.weyl.get(cls[0]).word, g.weyl.get(gc).word);
            lhs_stable.add(Term {
                levi: levi.clone(),
                param_tag: param_tag(p, &levi, gc),
                s_tag: s_tag(p, &levi, gc, &e.s)?,
                rho_tag: String::new(),
                coefficient: Cyclo::one(1),
                sign_token: true,
                delta_twist: 1,
                regular: true,
                provenance: vec![prov.clone()],
            });
            expand_basic(p, &levi, gc, &y, &e.s, &prov, &mut lhs)?;
        }
    }

    let fiber = enumerate_fiber(p, b)?;
    let mut rhs = FormalDistribution::default();
    let mut pairings = Vec::new();
    let mut bookkeeping_ok = fiber.bijection_ok;
    let mut pairing_consistent = true;
    for m in &fiber.members {
        let pv = regular_pairing_at(p, &levi, m.w, &m.lambda, m.e_index, &e.s)?;
        pairing_consistent &= pv.value == pv.averaged;
        bookkeeping_ok &= coset_bookkeeping(p, &levi, m.w);
        let tag = rho_tag(&m.lambda, m.e_index);
        rhs.add(Term {
            levi: levi.clone(),
            param_tag: param_tag(p, &levi, m.w),
            s_tag: String::new(),
            rho_tag: tag.clone(),
            coefficient: pv.value.clone(),
            sign_token: true,
            delta_twist: 1,
            regular: true,
            provenance: vec![format!("member w = {:?}", g.weyl.get(m.w).word)],
        });
        pairings.push((tag, pv));
    }
    let equal = lhs.same_sum(&rhs);
    Ok(EciReport {
        b: b.clone(),
        levi,
        lhs_stable,
        discarded,
        lhs,
        rhs,
        pairings,
        bijection,
        bookkeeping_ok,
        pairing_consistent,
        equal,
    })
}

/// `Θ^{L_b, ᵍη(s)}_{ᵍφ} = e(G_b) Σ_{ρ_L} tr(ᵍη(s) | ρ_L) Θ_{π_{ρ_L}}`, with `ρ_L`
/// running over the pairs with central character `κ_L(b_L)`.
fn expand_basic(
    p: &Parameter,
    levi: &[usize],
    gc: usize,
    y: &[BigRational],
    s: &[BigRational],
    prov: &str,
    out: &mut FormalDistribution,
) -> Result<()> {
    let Some(lg) = p.pull_back(gc, y) else { return Ok(()) };
    let mut found = None;
    for &v in &p.w_phi {
        let l = p.action(v).mul_vec(&lg);
        if crate::disconnected::weights::is_dominant(&p.sphi.datum.identity_component, &l) && p.sphi.orbit_rep(&l) == l {
            found = Some((v, l));
            break;
        }
    }
    let (v, lambda) = found.ok_or_else(|| Error::InconsistentElement("no dominant W_φ-conjugate".into()))?;
    let frame = p.g.weyl.mul(gc, p.g.weyl.inv(v));
    let group = Disconnected::new(p.s_group_at(frame, levi)?)?;
    let (stab, mods) = group.modules_for(&lambda)?;
    let ex = a_m_exponents(p, &act_s(p, v, s)).ok_or_else(|| Error::InvalidEndoscopic("η(s) ∉ A_M̂".into()))?;
    for (k, m) in mods.iter().enumerate() {
        let e = match_module(&group, &stab, m, &p.sphi, &lambda)?;
        out.add(Term {
            levi: levi.to_vec(),
            param_tag: param_tag(p, levi, gc),
            s_tag: String::new(),
            rho_tag: rho_tag(&lambda, e),
            coefficient: trace(&group, &lambda, k, ex.clone())?,
            sign_token: true,
            delta_twist: 1,
            regular: true,
            provenance: vec![prov.to_string()],
        });
    }
    Ok(())
}

/// `|W^rel_L w W_φ / W_φ| = |W^rel_L / W_{ʷφ,L}|`.
pub fn coset_bookkeeping(p: &Parameter, levi: &[usize], w: usize) -> bool {
    let g = &p.g;
    let wl = g.levi_rel_weyl(levi);
    let mut cosets = BTreeSet::new();
    for &a in &wl {
        let x = g.weyl.mul(a, w);
        let c: BTreeSet<usize> = p.w_phi.iter().map(|&v| g.weyl.mul(x, v)).collect();
        cosets.insert(c);
    }
    let winv = g.weyl.inv(w);
    let conj: BTreeSet<usize> = p.w_phi.iter().map(|&v| g.weyl.mul(g.weyl.mul(w, v), winv)).collect();
    let stab = wl.iter().filter(|x| conj.contains(x)).count();
    cosets.len() * stab == wl.len()
}

/// Human-readable one-line rendering of a distribution.
pub fn render(d: &FormalDistribution) -> String {
    let mut s = String::new();
    for (i, t) in d.terms.iter().enumerate() {
        if i > 0 {
            s.push_str(" + ");
        }
        let _ = write!(s, "{}·Θ[{:?} {} {}{}]", fmt_cyclo(&t.coefficient), t.levi, t.param_tag, t.s_tag, t.rho_tag);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// `s` from exponent strings.
pub fn s_from_strs(xs: &[&str]) -> Result<QVec> {
    xs.iter().map(|x| parse_rational(x).map_err(Error::InvalidEndoscopic)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ivec;
    use crate::packet::{build_packet_member, parameter};

    fn endo(p: &Parameter, s: &[&str]) -> Endoscopic {
        endoscopic_group_from_s(&p.g, &EndoscopicDatum { s: s_from_strs(s).unwrap(), twist: vec![] }).unwrap()
    }

    #[test]
    fn gl2_trivial_s() {
        let p = parameter("gl2-triv").unwrap();
        let e = endo(&p, &["0", "0"]);
        assert_eq!(e.h.weyl.order(), 2);
        let b = build_packet_member(&p, &ivec(&[1, 0]), 0).unwrap().b;
        let r = eci_both_sides(&p, &b, &e).unwrap();
        assert!(r.ok(), "{}\n{}", render(&r.lhs), render(&r.rhs));
        assert_eq!(r.bijection.lhs_size, 2);
        assert_eq!(r.bijection.rhs_size, 2);
        assert_eq!(r.rhs.terms.len(), 1);
        assert_eq!(fmt_cyclo(&r.rhs.terms[0].coefficient), "2");
        assert_eq!(r.lhs_stable.terms.len(), 1);
        assert_eq!(r.lhs_stable.multiplicity(), 2);
    }

    #[test]
    fn gl2_elliptic_s_pairs_to_zero() {
        let p = parameter("gl2-triv").unwrap();
        let e = endo(&p, &["0", "1/2"]);
        assert_eq!(e.h.weyl.order(), 1);
        let b = build_packet_member(&p, &ivec(&[1, 0]), 0).unwrap().b;
        let r = eci_both_sides(&p, &b, &e).unwrap();
        assert!(r.ok(), "{}\n{}", render(&r.lhs), render(&r.rhs));
        assert!(r.rhs.is_empty());
        assert_eq!(r.pairings.len(), 1);
        assert!(r.pairings[0].1.value.is_zero());
    }

    #[test]
    fn s_outside_a_m_is_rejected() {
        let p = parameter("gl2-st").unwrap();
        let e = endo(&p, &["0", "1/2"]);
        assert!(matches!(s_in_levi_check(&p, &e, &[0]), Err(Error::InvalidEndoscopic(_))));
        assert!(matches!(s_in_levi_check(&p, &e, &[]), Err(Error::NotContained { .. })));
        let e1 = endo(&p, &["1/3", "1/3"]);
        assert_eq!(s_in_levi_check(&p, &e1, &[0]).unwrap().a_m_exponents.len(), 1);
    }

    #[test]
    fn gl4_st_st_jacquet() {
        let p = parameter("gl4-st2").unwrap();
        let e = endo(&p, &["0", "0", "0", "0"]);
        let levi = vec![0, 2];
        let emb = enumerate_embedded(&p.g, &levi, &e).unwrap();
        assert_eq!(emb.len(), 1);
        let j = jacquet_geometric_terms(&p, &e, &levi, 0).unwrap();
        assert_eq!(j.multiplicity(), 3);
        let reg = regular_part(&j);
        assert_eq!(reg.terms.len(), 1);
        assert_eq!(fmt_cyclo(&reg.terms[0].coefficient), "2");
        assert_eq!(j.terms.iter().filter(|t| !t.regular).count(), 1);
        let b = build_packet_member(&p, &ivec(&[1, 0]), 0).unwrap().b;
        let r = eci_both_sides(&p, &b, &e).unwrap();
        assert!(r.ok(), "{}\n{}", render(&r.lhs), render(&r.rhs));
        assert_eq!(r.discarded.multiplicity(), 1);
    }

    #[test]
    fn gl4_split_s_embedded_data() {
        let p = parameter("gl4-st2").unwrap();
        let e = endo(&p, &["0", "0", "1/2", "1/2"]);
        assert_eq!(e.h.weyl.order(), 4);
        let levi = vec![0, 2];
        let emb = enumerate_embedded(&p.g, &levi, &e).unwrap();
        assert_eq!(emb.len(), 3);
        let rep = indexing_bijection_check(&p, &levi, &e).unwrap();
        assert!(rep.ok());
        let b = build_packet_member(&p, &ivec(&[1, 0]), 0).unwrap().b;
        let r = eci_both_sides(&p, &b, &e).unwrap();
        assert!(r.ok(), "{}\n{}", render(&r.lhs), render(&r.rhs));
    }

    #[test]
    fn bijection_on_presets() {
        for name in ["gl2-triv", "gl3-triv", "gl3-st2", "gl4-st2", "sl2", "gl2xgl2-swap"] {
            let p = parameter(name).unwrap();
            let n = p.g.rank();
            let e = endo(&p, &vec!["0"; n]);
            for levi in p.g.standard_parabolics() {
                if !p.levi_m().iter().all(|i| levi.contains(i)) {
                    continue;
                }
                let rep = indexing_bijection_check(&p, &levi, &e).unwrap();
                assert!(rep.ok(), "{name} {levi:?}: {rep:?}");
            }
        }
    }

    #[test]
    fn non_fixed_s_is_rejected() {
        let p = parameter("gl2xgl2-swap").unwrap();
        let d = EndoscopicDatum { s: s_from_strs(&["1/2", "0", "0", "0"]).unwrap(), twist: vec![] };
        assert!(matches!(endoscopic_group_from_s(&p.g, &d), Err(Error::InvalidEndoscopic(_))));
    }
}
