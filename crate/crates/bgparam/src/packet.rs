//! From an enhanced parameter `ρ = (λ, E)` to `(b, π_b)`, fibers over `b`, and
//! the consistency checks of the construction.
//!
//! All work on `S_φ` happens in the coordinates `X*(A_M̂)` given by the free
//! quotient of `π₁(M)_Γ`; Weyl elements of `Ĝ` act through `coords_M ∘ w ∘ α_M`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::disconnected::weights::is_dominant;
use crate::disconnected::{natural_quotient_rep, DescentCertificate, Disconnected, DisconnectedGroupDatum};
use crate::error::{Error, Result};
use crate::kottwitz::{basic_plus_lift, classify, kappa_push, BElement};
use crate::lattice::{dot, ivec, saturated_kernel, to_integral, FgElement, IVec, IntegerMatrix};
use crate::root_datum::{BasedRootDatum, Group, LeviData, StandardLevi};
use crate::weyl::{chamber_locate, double_cosets, is_minimal, transporter_set};

/// User-facing description of `φ` through `(M, S_φ°, R_φ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterDatum {
    pub group: String,
    pub levi_m: StandardLevi,
    /// Simple roots of `S_φ°` given as roots of `Ĝ` (vectors in `X*(T̂)`); only
    /// their restriction to `A_M̂` matters.
    pub sphi_simple: Vec<IVec>,
    /// Generators of `R_φ` as words in the simple reflections of `W`.
    pub r_phi: Vec<Vec<usize>>,
    pub tempered: bool,
    pub label: String,
}

/// A validated parameter datum together with `W_φ` inside `W^rel`.
#[derive(Debug)]
pub struct Parameter {
    pub datum: ParameterDatum,
    pub g: Arc<Group>,
    pub dm: Arc<LeviData>,
    /// `S_φ` with identity component on `X*(A_M̂)` and components `R_φ`.
    pub sphi: Disconnected,
    /// `W_Ĝ(A_M̂)` realized as minimal elements of `W^rel` normalizing `M`.
    pub normalizer: Vec<usize>,
    pub w_phi: Vec<usize>,
    pub r_phi: Vec<usize>,
    actions: BTreeMap<usize, IntegerMatrix>,
}

impl Parameter {
    pub fn new(g: Arc<Group>, datum: ParameterDatum) -> Result<Self> {
        let m = datum.levi_m.clone();
        let dm = g.levi(&m)?;
        let f = dm.free_rank();
        let bad = |msg: String| Error::InvalidParameter(format!("{}: {msg}", datum.label));

        for r in g.levi_roots(&m) {
            if !is_zero(&restrict(&dm, &g.datum.coroots[r])) {
                return Err(bad("a coroot of M survives on A_M̂".into()));
            }
        }

        let mut actions = BTreeMap::new();
        let mut normalizer = Vec::new();
        for w in transporter_set(&g, &m, &m)? {
            if is_minimal(&g, w, &m, &m) {
                let a = a_m_action(&g, &dm, w).ok_or_else(|| bad("non-integral action on X*(A_M̂)".into()))?;
                normalizer.push(w);
                actions.insert(w, a);
            }
        }

        let simple: Vec<IVec> = datum.sphi_simple.iter().map(|v| restrict(&dm, v)).collect();
        let mut coroots = Vec::new();
        for a in &simple {
            let c = normalizer
                .iter()
                .find_map(|w| reflection_coroot(&actions[w], a))
                .ok_or_else(|| bad(format!("reflection in {a:?} is not realized in W_Ĝ(A_M̂)")))?;
            coroots.push(c);
        }
        let identity = BasedRootDatum::from_simple("S_phi", f, &simple, &coroots)?;
        let restricted_roots: BTreeSet<IVec> = g.datum.coroots.iter().map(|c| restrict(&dm, c)).collect();
        if let Some(r) = identity.roots.iter().find(|r| !restricted_roots.contains(*r)) {
            return Err(bad(format!("{r:?} is not the restriction of a root of Ĝ")));
        }

        let mut r_phi = Vec::new();
        for word in &datum.r_phi {
            if word.iter().any(|&i| i >= g.nsimple()) {
                return Err(bad(format!("word {word:?} uses an unknown simple reflection")));
            }
            let w = g.weyl.from_word(word);
            if !actions.contains_key(&w) {
                return Err(bad(format!("R_φ generator {word:?} is not a minimal element normalizing M")));
            }
            r_phi.push(w);
        }
        let sphi = Disconnected::new(DisconnectedGroupDatum {
            identity_component: identity,
            component_generators: r_phi.iter().map(|w| actions[w].clone()).collect(),
            cocycle: None,
        })
        .map_err(|e| bad(format!("R_φ does not preserve B_φ: {e}")))?;

        let mut wphi_mats: BTreeSet<IntegerMatrix> = BTreeSet::new();
        for x in &sphi.identity.weyl.elements {
            for c in &sphi.pi0_matrices {
                wphi_mats.insert(x.chr.mul(c));
            }
        }
        let w_phi: Vec<usize> = normalizer.iter().copied().filter(|w| wphi_mats.contains(&actions[w])).collect();
        if w_phi.len() != wphi_mats.len() || !sphi.pi0_weyl_split().ok() {
            return Err(bad("W_φ is not W_φ° ⋊ R_φ inside W_Ĝ(A_M̂)".into()));
        }
        let r_phi = w_phi.iter().copied().filter(|w| sphi.pi0_matrices.contains(&actions[w])).collect();
        Ok(Parameter { datum, g, dm, sphi, normalizer, w_phi, r_phi, actions })
    }

    pub fn rank(&self) -> usize {
        self.dm.free_rank()
    }

    pub fn levi_m(&self) -> &[usize] {
        &self.datum.levi_m
    }

    /// Matrix of an element of `W_Ĝ(A_M̂)` on `X*(A_M̂)`.
    pub fn action(&self, w: usize) -> &IntegerMatrix {
        &self.actions[&w]
    }

    /// Integral lift of `λ ∈ X*(A_M̂)` to `X*(T̂) = X_*(T)`.
    pub fn lift(&self, lambda: &[BigInt]) -> IVec {
        lift(&self.dm, lambda)
    }

    /// Pairing coordinates of `v ∈ X_*(A_M̂) ⊂ X*(T)` against `X*(A_M̂)`.
    pub fn dual_coords(&self, v: &[BigInt]) -> IVec {
        let f = self.rank();
        (0..f)
            .map(|i| {
                let e: IVec = (0..f).map(|j| BigInt::from((i == j) as i64)).collect();
                dot(&self.lift(&e), v)
            })
            .collect()
    }

    /// `λ^w = α_M⁻¹(w⁻¹ y)` when integral.
    pub fn pull_back(&self, w: usize, y: &[num_rational::BigRational]) -> Option<IVec> {
        let z = self.g.act(self.g.weyl.inv(w), y);
        if !self.dm.contains_point(&z) {
            return None;
        }
        to_integral(&self.dm.coords(&z))
    }

    /// Least element of `W^rel_L w W_φ`.
    pub fn double_coset_id(&self, levi: &[usize], w: usize) -> usize {
        let wl = self.g.levi_rel_weyl(levi);
        let mut best = usize::MAX;
        for &a in &wl {
            let aw = self.g.weyl.mul(a, w);
            for &v in &self.w_phi {
                best = best.min(self.g.weyl.mul(aw, v));
            }
        }
        best
    }

    /// Least element of `W^rel_L w`.
    pub fn coset_id(&self, levi: &[usize], w: usize) -> usize {
        self.g.levi_rel_weyl(levi).iter().map(|&a| self.g.weyl.mul(a, w)).min().expect("W_L is nonempty")
    }

    /// `W_{φ, L^w} = W_φ ∩ w⁻¹ W^rel_L w`.
    pub fn w_phi_levi(&self, w: usize, levi: &[usize]) -> Vec<usize> {
        let wl: BTreeSet<usize> = self.g.levi_rel_weyl(levi).into_iter().collect();
        let winv = self.g.weyl.inv(w);
        self.w_phi
            .iter()
            .copied()
            .filter(|&v| wl.contains(&self.g.weyl.mul(self.g.weyl.mul(w, v), winv)))
            .collect()
    }

    /// `S_{φ, L^w}` where `L^w = w⁻¹ L w ⊇ M`: roots of `S_φ°` vanishing on
    /// `A_{L^w}`, and the part of `W_{φ,L^w}` preserving the induced positive system.
    pub fn s_group_at(&self, w: usize, levi: &[usize]) -> Result<DisconnectedGroupDatum> {
        let dl = self.g.levi(levi)?;
        let id = &self.sphi.datum.identity_component;
        let positive: Vec<usize> = (0..id.roots.len())
            .filter(|&r| self.sphi.identity.positive[r])
            .filter(|&r| is_zero(&restrict(&dl, &self.g.act_cochar(w, &self.lift(&id.roots[r])))))
            .collect();
        let pos_set: BTreeSet<&IVec> = positive.iter().map(|&r| &id.roots[r]).collect();
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&r| {
                !positive.iter().any(|&a| {
                    let d: IVec = id.roots[r].iter().zip(&id.roots[a]).map(|(x, y)| x - y).collect();
                    pos_set.contains(&d)
                })
            })
            .collect();
        let levi_datum = BasedRootDatum::from_simple(
            "S_phi_L",
            self.rank(),
            &simple.iter().map(|&r| id.roots[r].clone()).collect::<Vec<_>>(),
            &simple.iter().map(|&r| id.coroots[r].clone()).collect::<Vec<_>>(),
        )?;
        let comps: Vec<IntegerMatrix> = self
            .w_phi_levi(w, levi)
            .into_iter()
            .map(|v| self.actions[&v].clone())
            .filter(|a| positive.iter().all(|&r| pos_set.contains(&a.mul_vec(&id.roots[r]))))
            .collect();
        let gens = comps.into_iter().filter(|a| *a != IntegerMatrix::identity(self.rank())).collect();
        Ok(DisconnectedGroupDatum { identity_component: levi_datum, component_generators: gens, cocycle: None })
    }

    /// Killed cocharacters for the descent of `λ` to `S_{φ,L^w}`: `X_*(A_M̂)`
    /// intersected with the span of the roots of `L^w`, in pairing coordinates.
    pub fn descent_lattice(&self, w: usize, levi: &[usize]) -> Vec<IVec> {
        let n = self.g.rank();
        let winv = self.g.weyl.inv(w);
        let span: Vec<IVec> = self
            .g
            .levi_roots(levi)
            .into_iter()
            .map(|r| self.g.act_char(winv, &self.g.datum.roots[r]))
            .collect();
        let basis = &self.dm.a_hat_basis;
        if span.is_empty() || basis.is_empty() {
            return Vec::new();
        }
        let perp = saturated_kernel(&IntegerMatrix::from_rows(&span));
        let a = IntegerMatrix::from_cols(n, basis);
        let killed = if perp.is_empty() {
            (0..basis.len()).map(|i| (0..basis.len()).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
        } else {
            saturated_kernel(&IntegerMatrix::from_rows(&perp).mul(&a))
        };
        killed.iter().map(|k| self.dual_coords(&a.mul_vec(k))).collect()
    }
}

fn is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn restrict(d: &LeviData, x: &[BigInt]) -> IVec {
    d.pi1.project(x).free
}

fn lift(d: &LeviData, lambda: &[BigInt]) -> IVec {
    let e = FgElement { free: lambda.to_vec(), torsion: vec![BigInt::zero(); d.pi1.torsion.len()] };
    d.pi1.lift(&e)
}

fn a_m_action(g: &Group, dm: &LeviData, w: usize) -> Option<IntegerMatrix> {
    let f = dm.free_rank();
    let cols: Option<Vec<IVec>> = (0..f)
        .map(|j| {
            let e: IVec = (0..f).map(|i| BigInt::from((i == j) as i64)).collect();
            to_integral(&dm.coords(&g.act(w, &dm.alpha_int(&e))))
        })
        .collect();
    Some(IntegerMatrix::from_cols(f, &cols?))
}

/// `α^∨` with `S = 1 − α ⊗ α^∨`, when `S` is the reflection in `α`.
fn reflection_coroot(s: &IntegerMatrix, alpha: &[BigInt]) -> Option<IVec> {
    let f = alpha.len();
    let k = alpha.iter().position(|x| !x.is_zero())?;
    let mut c = Vec::with_capacity(f);
    for j in 0..f {
        let v = BigInt::from((k == j) as i64) - s.get(k, j);
        if !(&v % &alpha[k]).is_zero() {
            return None;
        }
        c.push(v / &alpha[k]);
    }
    for i in 0..f {
        for j in 0..f {
            if BigInt::from((i == j) as i64) - s.get(i, j) != &alpha[i] * &c[j] {
                return None;
            }
        }
    }
    (dot(alpha, &c) == BigInt::from(2)).then_some(c)
}

/// Output of the construction for one `ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketLabel {
    pub b: BElement,
    pub levi: StandardLevi,
    /// Chamber witness `w` with `w α_M(λ)` dominant, and its reduced word.
    pub w: usize,
    pub w_word: Vec<usize>,
    /// Least element of `W^rel_L w`.
    pub w_class: usize,
    /// Least element of `W^rel_L w W_φ`; labels the `L`-conjugacy class of `ʷφ`.
    pub double_coset: usize,
    /// `R_φ`-orbit representative of `λ` in `X*(A_M̂)`.
    pub lambda: IVec,
    /// `λ_L = κ_L(b_L)|_{A_L̂}`.
    pub lambda_l: IVec,
    pub e_index: usize,
    /// Index of `E_{L,w}` among the simple modules of `π₀(S_{φ,L^w})`.
    pub e_l_index: usize,
    pub e_dim: usize,
    pub parameter_label: String,
    pub descent: DescentCertificate,
}

/// Index of the module of `target` whose character matches `module` on the same matrices.
pub(crate) fn match_module(
    src: &Disconnected,
    src_stab: &[usize],
    module: &crate::disconnected::finite_group::SimpleModule,
    dst: &Disconnected,
    lambda: &[BigInt],
) -> Result<usize> {
    let (dst_stab, mods) = dst.modules_for(lambda)?;
    let src_chars: BTreeMap<&IntegerMatrix, _> =
        src_stab.iter().zip(&module.character).map(|(&a, c)| (&src.pi0_matrices[a], c)).collect();
    let dst_mats: BTreeSet<&IntegerMatrix> = dst_stab.iter().map(|&a| &dst.pi0_matrices[a]).collect();
    if dst_mats != src_chars.keys().copied().collect() {
        return Err(Error::InconsistentElement(format!("A^λ_L ≠ A^λ at λ = {lambda:?}")));
    }
    mods.iter()
        .position(|m| dst_stab.iter().zip(&m.character).all(|(&a, c)| src_chars[&dst.pi0_matrices[a]] == c))
        .ok_or_else(|| Error::InconsistentElement("E has no counterpart among modules of A^λ_L".into()))
}

fn check_torsion_free(d: &LeviData) -> Result<()> {
    if d.pi1.is_torsion_free() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "Z(L̂)^Γ is disconnected for L = {:?}; the action of Z^λ on E is not part of the datum",
            d.levi
        )))
    }
}

/// The construction `ρ ↦ (b, π_b)`.
pub fn build_packet_member(p: &Parameter, lambda: &[BigInt], module: usize) -> Result<PacketLabel> {
    let g = &p.g;
    let rho = p.sphi.irr(lambda, module)?;
    let x = p.dm.alpha_int(&rho.lambda);
    let cw = chamber_locate(g, &x)?;
    let (w, levi) = (cw.w, cw.q.clone());
    let dl = g.levi(&levi)?;
    check_torsion_free(&dl)?;

    let kappa = dl.pi1.project(&g.act_cochar(w, &p.lift(&rho.lambda)));
    let b = basic_plus_lift(g, &levi, kappa)?;
    if dl.newton(&b.kappa) != cw.image {
        return Err(Error::WallAssertion("ν_{b_L} differs from α_{ʷM}(ʷλ)".into()));
    }
    if p.pull_back(w, &cw.image).as_deref() != Some(&rho.lambda[..]) {
        return Err(Error::InconsistentElement("λ_{L,w} does not pull back to λ".into()));
    }

    let levi_group = Disconnected::new(p.s_group_at(w, &levi)?)?;
    let e_l_index = match_module(&p.sphi, &rho.a_lambda, &rho.module, &levi_group, &rho.lambda)?;
    let descent = natural_quotient_rep(&rho.lambda, &p.descent_lattice(w, &levi))?;
    let double_coset = p.double_coset_id(&levi, w);
    Ok(PacketLabel {
        lambda_l: b.kappa.free.clone(),
        b,
        w_word: g.weyl.get(w).word.clone(),
        w_class: p.coset_id(&levi, w),
        double_coset,
        parameter_label: format!("{}^w{}", p.datum.label, double_coset),
        levi,
        w,
        lambda: rho.lambda.clone(),
        e_index: rho.module_index,
        e_l_index,
        e_dim: rho.module.dim,
        descent,
    })
}

/// One class of `I(φ, b)/~`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiberMember {
    pub lambda: IVec,
    pub e_index: usize,
    pub e_l_index: usize,
    /// Least `w` in its double coset class with `λ^w = λ`.
    pub w: usize,
    pub w_class: usize,
    pub double_coset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub b: BElement,
    pub members: Vec<FiberMember>,
    /// Double cosets `W_L\W(M,L)/W_φ` with integral `λ^w`.
    pub double_cosets: Vec<usize>,
    /// Each such double coset carries exactly one `R_φ`-orbit of dominant `λ^w`.
    pub bijection_ok: bool,
}

/// `I(φ, b)/~` through `W^rel_L\W^rel(M,L)/W_φ`.
pub fn enumerate_fiber(p: &Parameter, b: &BElement) -> Result<Fiber> {
    let g = &p.g;
    classify(g, b)?;
    let levi = b.levi.clone();
    let dl = g.levi(&levi)?;
    check_torsion_free(&dl)?;
    let y = dl.newton(&b.kappa);
    let trans = transporter_set(g, p.levi_m(), &levi)?;
    let classes = double_cosets(g, &g.levi_rel_weyl(&levi), &trans, &p.w_phi);

    let mut members = Vec::new();
    let mut dcs = Vec::new();
    let mut bijection_ok = true;
    for class in classes {
        let mut dominant: BTreeMap<IVec, usize> = BTreeMap::new();
        let mut integral = false;
        for &w in &class {
            if let Some(l) = p.pull_back(w, &y) {
                integral = true;
                if is_dominant(&p.sphi.datum.identity_component, &l) {
                    dominant.entry(l).or_insert(w);
                }
            }
        }
        if !integral {
            continue;
        }
        let orbits: BTreeSet<IVec> = dominant.keys().map(|l| p.sphi.orbit_rep(l)).collect();
        if orbits.len() != 1 {
            bijection_ok = false;
            continue;
        }
        dcs.push(class[0]);
        let lambda = orbits.into_iter().next().expect("one orbit");
        let w = dominant[&lambda];
        if g.act(w, &p.dm.alpha_int(&lambda)) != y {
            return Err(Error::InconsistentElement("no w with α_{ʷM}(ʷλ) = α_L(λ_L)".into()));
        }
        let (stab, mods) = p.sphi.modules_for(&lambda)?;
        let levi_group = Disconnected::new(p.s_group_at(w, &levi)?)?;
        let (_, levi_mods) = levi_group.modules_for(&lambda)?;
        for e_l in 0..levi_mods.len() {
            let e = match_module(&levi_group, &levi_group.stabilizer_a_lambda(&lambda), &levi_mods[e_l], &p.sphi, &lambda)?;
            debug_assert!(e < mods.len() && stab.len() == levi_group.stabilizer_a_lambda(&lambda).len());
            members.push(FiberMember {
                lambda: lambda.clone(),
                e_index: e,
                e_l_index: e_l,
                w,
                w_class: p.coset_id(&levi, w),
                double_coset: class[0],
            });
        }
    }
    members.sort();
    Ok(Fiber { b: b.clone(), members, double_cosets: dcs, bijection_ok })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub label: String,
    pub height: i64,
    pub members: usize,
    pub fibers: usize,
    pub injective: bool,
    pub exhaustive: bool,
    pub levi_stabilizers_agree: bool,
    pub discrepancies: Vec<String>,
}

impl RoundTripReport {
    pub fn ok(&self) -> bool {
        self.injective && self.exhaustive && self.levi_stabilizers_agree && self.discrepancies.is_empty()
    }
}

fn in_box(l: &[BigInt], height: i64) -> bool {
    l.iter().all(|x| !x.is_negative() && *x <= BigInt::from(height))
}

/// Every `ρ` with `λ ∈ [0, height]^rank` is recovered from its fiber; distinct
/// `ρ` have distinct `(b, [w], E_L)`; every fiber member maps back to `b`.
pub fn round_trip_check(p: &Parameter, height: i64) -> Result<RoundTripReport> {
    let mut by_b: BTreeMap<BElement, Vec<PacketLabel>> = BTreeMap::new();
    let mut discrepancies = Vec::new();
    let mut levi_stabilizers_agree = true;
    let mut members = 0;
    for rho in p.sphi.classify_irr(height)? {
        members += 1;
        match build_packet_member(p, &rho.lambda, rho.module_index) {
            Ok(lab) => by_b.entry(lab.b.clone()).or_default().push(lab),
            Err(Error::InconsistentElement(msg)) => {
                levi_stabilizers_agree = false;
                discrepancies.push(format!("λ = {:?}: {msg}", rho.lambda));
            }
            Err(e) => return Err(e),
        }
    }
    let mut injective = true;
    let mut exhaustive = true;
    for (b, labels) in &by_b {
        let keys: BTreeSet<(usize, usize)> = labels.iter().map(|l| (l.double_coset, l.e_l_index)).collect();
        if keys.len() != labels.len() {
            injective = false;
            discrepancies.push(format!("two ρ share the label of b = {b:?}"));
        }
        let fiber = enumerate_fiber(p, b)?;
        if !fiber.bijection_ok {
            exhaustive = false;
            discrepancies.push(format!("double cosets over b = {b:?} do not match R_φ-orbits"));
        }
        let got: BTreeSet<(IVec, usize)> = fiber.members.iter().map(|m| (m.lambda.clone(), m.e_index)).collect();
        for l in labels {
            if !got.contains(&(l.lambda.clone(), l.e_index)) {
                injective = false;
                discrepancies.push(format!("λ = {:?}, E #{} missing from its fiber", l.lambda, l.e_index));
            }
        }
        for m in &fiber.members {
            let back = build_packet_member(p, &m.lambda, m.e_index)?;
            let from_box = labels.iter().any(|l| l.lambda == m.lambda && l.e_index == m.e_index);
            if back.b != *b || (in_box(&m.lambda, height) && !from_box) {
                exhaustive = false;
                discrepancies.push(format!("fiber member λ = {:?} of b = {b:?} does not come from a ρ", m.lambda));
            }
            if back.double_coset != m.double_coset || back.e_l_index != m.e_l_index {
                exhaustive = false;
                discrepancies.push(format!("fiber member λ = {:?} has inconsistent provenance", m.lambda));
            }
        }
    }
    Ok(RoundTripReport {
        label: p.datum.label.clone(),
        height,
        members,
        fibers: by_b.len(),
        injective,
        exhaustive,
        levi_stabilizers_agree,
        discrepancies,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCharacterSquare {
    pub omega: FgElement,
    pub kappa_g: FgElement,
    pub equal: bool,
}

/// `ω_ρ` on `Z(Ĝ)^Γ` against `κ_G(b)`.
pub fn central_character_square(p: &Parameter, lambda: &[BigInt], module: usize) -> Result<CentralCharacterSquare> {
    let d = p.g.pi1()?;
    check_torsion_free(&d)?;
    let rho = p.sphi.irr(lambda, module)?;
    let omega = d.pi1.project(&p.lift(&rho.lambda));
    let label = build_packet_member(p, lambda, module)?;
    let kappa_g = kappa_push(&p.g, &label.b)?;
    Ok(CentralCharacterSquare { equal: omega == kappa_g, omega, kappa_g })
}

pub const PARAMETER_PRESETS: &[&str] = &[
    "gl2-triv",
    "gl3-triv",
    "gl4-triv",
    "gl2-st",
    "gl3-st",
    "gl3-st2",
    "gl3-st2-low",
    "gl4-st2",
    "sl2",
    "sl2-st",
    "sl2-o2",
    "res-quad-torus",
    "gl2xgl2-swap",
];

fn diff(n: usize, i: usize, j: usize) -> IVec {
    (0..n).map(|k| (k == i) as i64 - (k == j) as i64).map(Into::into).collect()
}

pub fn parameter_datum(name: &str) -> Result<ParameterDatum> {
    let mk = |group: &str, m: &[usize], simple: Vec<IVec>, r: Vec<Vec<usize>>, label: &str| ParameterDatum {
        group: group.into(),
        levi_m: m.to_vec(),
        sphi_simple: simple,
        r_phi: r,
        tempered: true,
        label: label.into(),
    };
    Ok(match name {
        "gl2-triv" => mk("gl2", &[], vec![diff(2, 0, 1)], vec![], "GL2: 1+1"),
        "gl3-triv" => mk("gl3", &[], vec![diff(3, 0, 1), diff(3, 1, 2)], vec![], "GL3: 1+1+1"),
        "gl4-triv" => mk("gl4", &[], (0..3).map(|i| diff(4, i, i + 1)).collect(), vec![], "GL4: 1+1+1+1"),
        "gl2-st" => mk("gl2", &[0], vec![], vec![], "GL2: St"),
        "gl3-st" => mk("gl3", &[0, 1], vec![], vec![], "GL3: St"),
        "gl3-st2" => mk("gl3", &[0], vec![], vec![], "GL3: St2+1"),
        "gl3-st2-low" => mk("gl3", &[1], vec![], vec![], "GL3: 1+St2"),
        "gl4-st2" => mk("gl4", &[0, 2], vec![diff(4, 1, 2)], vec![], "GL4: St+St"),
        "sl2" => mk("sl2", &[], vec![ivec(&[1])], vec![], "SL2: 1+1"),
        "sl2-st" => mk("sl2", &[0], vec![], vec![], "SL2: St"),
        "sl2-o2" => mk("sl2", &[], vec![], vec![vec![0]], "SL2: dihedral"),
        "res-quad-torus" => mk("res-torus", &[], vec![], vec![], "Res T: 1"),
        "gl2xgl2-swap" => mk("gl2xgl2-swap", &[], vec![diff(4, 0, 1)], vec![], "Res GL2: 1+1"),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    })
}

pub fn parameter(name: &str) -> Result<Parameter> {
    let d = parameter_datum(name)?;
    let g = Arc::new(crate::io::presets::group(&d.group)?);
    Parameter::new(g, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{qvec, rat};

    fn el(free: &[i64]) -> FgElement {
        FgElement { free: ivec(free), torsion: vec![] }
    }

    #[test]
    fn presets_validate() {
        for name in PARAMETER_PRESETS {
            let p = parameter(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(p.w_phi.len(), p.sphi.identity.weyl.order() * p.sphi.pi0.order(), "{name}");
        }
        assert_eq!(parameter("gl4-st2").unwrap().w_phi.len(), 2);
        assert_eq!(parameter("gl3-triv").unwrap().w_phi.len(), 6);
        assert_eq!(parameter("sl2-o2").unwrap().r_phi.len(), 2);
    }

    #[test]
    fn unrealized_reflection_is_rejected() {
        let mut d = parameter_datum("gl3-st2").unwrap();
        d.sphi_simple = vec![ivec(&[0, 1, -1])];
        let g = Arc::new(crate::io::presets::group("gl3").unwrap());
        assert!(Parameter::new(g, d).is_err());
    }

    #[test]
    fn gl2_standard_representation() {
        // 1+1 for GL_2: ρ = Std is non-basic with G_b = T and a singleton fiber
        let p = parameter("gl2-triv").unwrap();
        let lab = build_packet_member(&p, &ivec(&[1, 0]), 0).unwrap();
        assert_eq!(lab.levi, Vec::<usize>::new());
        assert_eq!(lab.b.kappa, el(&[1, 0]));
        let fiber = enumerate_fiber(&p, &lab.b).unwrap();
        assert_eq!(fiber.members.len(), 1);
        assert_eq!(fiber.members[0].lambda, ivec(&[1, 0]));
        let triv = build_packet_member(&p, &ivec(&[0, 0]), 0).unwrap();
        assert_eq!((triv.levi, triv.b.kappa), (vec![0], el(&[0])));
        let det = build_packet_member(&p, &ivec(&[1, 1]), 0).unwrap();
        assert_eq!(det.b.kappa, el(&[2]));
    }

    #[test]
    fn gl4_st_st() {
        let p = parameter("gl4-st2").unwrap();
        assert_eq!(p.rank(), 2);
        let lab = build_packet_member(&p, &ivec(&[1, 0]), 0).unwrap();
        assert_eq!(lab.levi, vec![0, 2]);
        assert!(!lab.b.is_basic(&p.g));
        assert_eq!(crate::kottwitz::newton(&p.g, &lab.b).unwrap(), vec![rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)]);
        assert_eq!(enumerate_fiber(&p, &lab.b).unwrap().members.len(), 1);
        let basic = build_packet_member(&p, &ivec(&[1, 1]), 0).unwrap();
        assert_eq!(basic.levi, vec![0, 1, 2]);
    }

    #[test]
    fn s_group_levi_cuts() {
        let p = parameter("gl4-st2").unwrap();
        let at_m = p.s_group_at(0, &[0, 2]).unwrap();
        assert!(at_m.identity_component.roots.is_empty());
        assert!(at_m.component_generators.is_empty());
        let at_g = p.s_group_at(0, &[0, 1, 2]).unwrap();
        assert_eq!(at_g.identity_component.roots.len(), 2);
        let q = parameter("gl3-triv").unwrap();
        assert_eq!(q.s_group_at(0, &[0]).unwrap().identity_component.roots.len(), 2);
    }

    #[test]
    fn dihedral_parameter() {
        let p = parameter("sl2-o2").unwrap();
        let a = build_packet_member(&p, &ivec(&[0]), 0).unwrap();
        let b = build_packet_member(&p, &ivec(&[0]), 1).unwrap();
        assert_eq!(a.b, b.b);
        assert_ne!(a.e_l_index, b.e_l_index);
        let c = build_packet_member(&p, &ivec(&[2]), 0).unwrap();
        assert_eq!(c.levi, Vec::<usize>::new());
        assert_eq!(enumerate_fiber(&p, &c.b).unwrap().members.len(), 1);
        assert_eq!(enumerate_fiber(&p, &a.b).unwrap().members.len(), 2);
    }

    #[test]
    fn round_trips() {
        for (name, h) in [("gl2-triv", 3), ("gl3-triv", 2), ("sl2-st", 4), ("sl2-o2", 3), ("gl2xgl2-swap", 2)] {
            let r = round_trip_check(&parameter(name).unwrap(), h).unwrap();
            assert!(r.ok(), "{name}: {:?}", r.discrepancies);
        }
        let r = round_trip_check(&parameter("sl2-st").unwrap(), 4).unwrap();
        assert_eq!((r.members, r.fibers), (1, 1));
    }

    #[test]
    fn central_characters() {
        let p = parameter("gl2-triv").unwrap();
        for (l, v) in [([1, 0], 1), ([0, 0], 0), ([1, 1], 2)] {
            let c = central_character_square(&p, &ivec(&l), 0).unwrap();
            assert!(c.equal);
            assert_eq!(c.omega, el(&[v]));
        }
    }

    #[test]
    fn descent_kills_levi_directions() {
        let p = parameter("gl2-triv").unwrap();
        let k = p.descent_lattice(0, &[0]);
        assert!(k == vec![ivec(&[1, -1])] || k == vec![ivec(&[-1, 1])]);
        assert!(p.descent_lattice(0, &[]).is_empty());
        assert_eq!(p.pull_back(1, &qvec(&[1, 0])), Some(ivec(&[0, 1])));
    }
}
