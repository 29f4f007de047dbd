//! Based root data with a finite Galois action, their Weyl groups, the
//! relative Weyl group and the per-Levi lattices `𝔄_L`, `X_*(A_L̂)`,
//! `X*(Z(L̂)^Γ)` together with the isomorphism `α_L`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    dot, iqdot, is_zero_vec, linalg, quotient_coinvariants, saturated_kernel, to_q, FgAbelianGroup, FgElement, IVec,
    IntegerMatrix, LatticeAction, QVec, CLOSURE_CAP,
};

/// A standard Levi, as a sorted list of positions in the simple-root list.
pub type StandardLevi = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasedRootDatum {
    pub name: String,
    pub rank: usize,
    pub roots: Vec<IVec>,
    pub coroots: Vec<IVec>,
    /// Indices into `roots` of the simple roots.
    pub simple: Vec<usize>,
}

impl BasedRootDatum {
    /// Datum generated by simple roots and coroots.
    pub fn from_simple(name: &str, rank: usize, simple_roots: &[IVec], simple_coroots: &[IVec]) -> Result<Self> {
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidDatum("simple roots and coroots differ in number".into()));
        }
        let mut roots: Vec<IVec> = simple_roots.to_vec();
        let mut coroots: Vec<IVec> = simple_coroots.to_vec();
        let mut seen: HashMap<IVec, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut queue: VecDeque<usize> = (0..roots.len()).collect();
        while let Some(k) = queue.pop_front() {
            for (a, ac) in simple_roots.iter().zip(simple_coroots) {
                let (r, rc) = (roots[k].clone(), coroots[k].clone());
                let nr = reflect(&r, a, ac);
                let nrc = reflect(&rc, ac, a);
                if !seen.contains_key(&nr) {
                    if roots.len() > 4096 {
                        return Err(Error::InvalidDatum("root system is infinite".into()));
                    }
                    seen.insert(nr.clone(), roots.len());
                    roots.push(nr);
                    coroots.push(nrc);
                    queue.push_back(roots.len() - 1);
                }
            }
        }
        let d = BasedRootDatum {
            name: name.to_string(),
            rank,
            roots,
            coroots,
            simple: (0..simple_roots.len()).collect(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn simple_roots(&self) -> Vec<IVec> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<IVec> {
        self.simple.iter().map(|&i| self.coroots[i].clone()).collect()
    }

    /// `⟨α_i, α_j^∨⟩` on simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<BigInt>> {
        let (r, c) = (self.simple_roots(), self.simple_coroots());
        r.iter().map(|a| c.iter().map(|b| dot(a, b)).collect()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidDatum(m.to_string()));
        if self.roots.len() != self.coroots.len() {
            return bad("roots and coroots are not parallel");
        }
        if self.roots.iter().chain(&self.coroots).any(|v| v.len() != self.rank) {
            return bad("vector of wrong length");
        }
        for (a, ac) in self.roots.iter().zip(&self.coroots) {
            if dot(a, ac) != BigInt::from(2) {
                return bad("a root does not pair to 2 with its coroot");
            }
        }
        let set: BTreeSet<&IVec> = self.roots.iter().collect();
        if set.len() != self.roots.len() {
            return bad("repeated root");
        }
        if self.simple.iter().any(|&i| i >= self.roots.len()) {
            return bad("simple index out of range");
        }
        let sr = self.simple_roots();
        if linalg::rank(&sr.iter().map(|v| to_q(v)).collect::<Vec<_>>(), self.rank) != sr.len() {
            return bad("simple roots are linearly dependent");
        }
        let cm = self.cartan_matrix();
        for i in 0..cm.len() {
            for j in 0..cm.len() {
                if i != j && (cm[i][j].is_positive() || (cm[i][j].is_zero() != cm[j][i].is_zero())) {
                    return bad("simple roots do not give a generalized Cartan matrix");
                }
            }
        }
        // Closure under simple reflections must reproduce exactly the given roots.
        let index: HashMap<&IVec, usize> = self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut reached = vec![false; self.roots.len()];
        let mut queue: VecDeque<usize> = self.simple.iter().copied().collect();
        for &i in &self.simple {
            reached[i] = true;
        }
        while let Some(k) = queue.pop_front() {
            for &s in &self.simple {
                let nr = reflect(&self.roots[k], &self.roots[s], &self.coroots[s]);
                let nrc = reflect(&self.coroots[k], &self.coroots[s], &self.roots[s]);
                match index.get(&nr) {
                    None => return bad("roots are not closed under simple reflections"),
                    Some(&j) => {
                        if self.coroots[j] != nrc {
                            return bad("coroot assignment is not Weyl equivariant");
                        }
                        if !reached[j] {
                            reached[j] = true;
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return bad("some root is not a Weyl image of a simple root");
        }
        Ok(())
    }
}

/// `x - ⟨x, b⟩ a`
fn reflect(x: &[BigInt], a: &[BigInt], b: &[BigInt]) -> IVec {
    let p = dot(x, b);
    x.iter().zip(a).map(|(xi, ai)| xi - &p * ai).collect()
}

/// Dual datum: roots and coroots swap roles.
pub fn dual_datum(r: &BasedRootDatum, action: &GaloisAction) -> (BasedRootDatum, GaloisAction) {
    let d = BasedRootDatum {
        name: format!("dual of {}", r.name),
        rank: r.rank,
        roots: r.coroots.clone(),
        coroots: r.roots.clone(),
        simple: r.simple.clone(),
    };
    (d, GaloisAction { generators: action.cochar_generators() })
}

/// Finite image of Γ acting on the character lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct GaloisAction {
    pub generators: Vec<IntegerMatrix>,
}

impl GaloisAction {
    pub fn trivial() -> Self {
        GaloisAction { generators: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| *g == IntegerMatrix::identity(g.rows()))
    }

    /// Contragredient matrices acting on cocharacters.
    pub fn cochar_generators(&self) -> Vec<IntegerMatrix> {
        self.generators
            .iter()
            .map(|g| g.unimodular_inverse().expect("galois generator is unimodular").transpose())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    /// `perm[j]` is the index of `w(α_j)`.
    pub perm: Vec<u16>,
    /// Reduced word in simple positions.
    pub word: Vec<usize>,
    pub chr: IntegerMatrix,
    pub cochr: IntegerMatrix,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.word.iter().copied().collect()
    }
}

/// Absolute Weyl group, enumerated breadth-first from the identity.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    index: HashMap<Vec<u16>, usize>,
    /// Element id of each simple reflection.
    pub simple: Vec<usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn get(&self, id: usize) -> &WeylElement {
        &self.elements[id]
    }

    pub fn lookup(&self, perm: &[u16]) -> usize {
        self.index[perm]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (&self.elements[a].perm, &self.elements[b].perm);
        let p: Vec<u16> = pb.iter().map(|&j| pa[j as usize]).collect();
        self.index[&p]
    }

    pub fn inv(&self, a: usize) -> usize {
        let pa = &self.elements[a].perm;
        let mut p = vec![0u16; pa.len()];
        for (j, &k) in pa.iter().enumerate() {
            p[k as usize] = j as u16;
        }
        self.index[&p]
    }

    /// Element from a word in simple positions.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &i| self.mul(acc, self.simple[i]))
    }

    /// Subgroup generated by the given elements, sorted.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Validated group datum with everything derived from it.
#[derive(Debug)]
pub struct Group {
    pub datum: BasedRootDatum,
    pub galois: GaloisAction,
    pub weyl: WeylGroup,
    pub positive: Vec<bool>,
    /// Coordinates of every root in the simple roots.
    pub simple_coords: Vec<Vec<i64>>,
    /// Root permutation of each Γ generator.
    pub gamma_perms: Vec<Vec<u16>>,
    pub gamma_cochar: Vec<IntegerMatrix>,
    /// Γ-orbits of simple positions, each sorted, ordered by least member.
    pub orbits: Vec<Vec<usize>>,
    /// Γ-fixed Weyl elements, sorted.
    pub rel: Vec<usize>,
    /// Restricted simple reflection for each orbit.
    pub rel_simple: Vec<usize>,
    levi_cache: Mutex<HashMap<StandardLevi, Arc<LeviData>>>,
}

impl Group {
    pub fn new(datum: BasedRootDatum, galois: GaloisAction) -> Result<Self> {
        datum.validate()?;
        let n = datum.rank;
        let nroots = datum.roots.len();
        let nsimple = datum.simple.len();
        let root_index: HashMap<IVec, usize> = datum.roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

        let sr: Vec<QVec> = datum.simple_roots().iter().map(|v| to_q(v)).collect();
        let srt = linalg::transpose(&sr, n);
        let mut simple_coords = Vec::with_capacity(nroots);
        let mut positive = Vec::with_capacity(nroots);
        for r in &datum.roots {
            let c = linalg::solve(&srt, nsimple, &to_q(r))
                .ok_or_else(|| Error::InvalidDatum("root outside the span of simple roots".into()))?;
            let c: Vec<i64> = c
                .iter()
                .map(|x| {
                    if x.is_integer() {
                        i64::try_from(x.to_integer()).map_err(|_| Error::InvalidDatum("huge root coordinate".into()))
                    } else {
                        Err(Error::InvalidDatum("root is not an integral combination of simple roots".into()))
                    }
                })
                .collect::<Result<_>>()?;
            let pos = c.iter().all(|&x| x >= 0);
            let neg = c.iter().all(|&x| x <= 0);
            if !pos && !neg {
                return Err(Error::InvalidDatum("root with mixed-sign simple coordinates".into()));
            }
            positive.push(pos);
            simple_coords.push(c);
        }

        for g in &galois.generators {
            if g.rows() != n || g.cols() != n {
                return Err(Error::InvalidAction("galois generator of wrong size".into()));
            }
        }
        LatticeAction::new(n, galois.generators.clone())?;
        let gamma_cochar = galois.cochar_generators();
        let mut gamma_perms = Vec::new();
        for (g, gc) in galois.generators.iter().zip(&gamma_cochar) {
            let mut perm = Vec::with_capacity(nroots);
            for (j, r) in datum.roots.iter().enumerate() {
                let img = g.mul_vec(r);
                let k = *root_index
                    .get(&img)
                    .ok_or_else(|| Error::InvalidAction("galois generator does not preserve the roots".into()))?;
                if gc.mul_vec(&datum.coroots[j]) != datum.coroots[k] {
                    return Err(Error::InvalidAction("galois generator does not preserve the coroots".into()));
                }
                perm.push(k as u16);
            }
            if datum.simple.iter().any(|&s| !datum.simple.contains(&(perm[s] as usize))) {
                return Err(Error::InvalidAction("galois generator does not preserve the simple roots".into()));
            }
            gamma_perms.push(perm);
        }

        let weyl = enumerate_weyl(&datum, &root_index)?;

        let simple_pos: HashMap<usize, usize> = datum.simple.iter().enumerate().map(|(p, &r)| (r, p)).collect();
        let mut orbit_of = vec![usize::MAX; nsimple];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..nsimple {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut orb = BTreeSet::from([i]);
            let mut queue = VecDeque::from([i]);
            while let Some(p) = queue.pop_front() {
                for perm in &gamma_perms {
                    let q = simple_pos[&(perm[datum.simple[p]] as usize)];
                    if orb.insert(q) {
                        queue.push_back(q);
                    }
                }
            }
            for &p in &orb {
                orbit_of[p] = orbits.len();
            }
            orbits.push(orb.into_iter().collect());
        }

        let rel: Vec<usize> = (0..weyl.order())
            .filter(|&w| {
                let p = &weyl.elements[w].perm;
                gamma_perms.iter().all(|g| (0..nroots).all(|j| g[p[j] as usize] == p[g[j] as usize]))
            })
            .collect();

        let rel_simple: Vec<usize> = orbits
            .iter()
            .map(|o| {
                let oset: BTreeSet<usize> = o.iter().copied().collect();
                (0..weyl.order())
                    .filter(|&w| weyl.elements[w].support().is_subset(&oset))
                    .max_by_key(|&w| weyl.elements[w].length())
                    .expect("identity is in every parabolic subgroup")
            })
            .collect();
        if rel_simple.iter().any(|w| rel.binary_search(w).is_err()) {
            return Err(Error::InvalidDatum("restricted simple reflection is not Γ-fixed".into()));
        }

        Ok(Group {
            datum,
            galois,
            weyl,
            positive,
            simple_coords,
            gamma_perms,
            gamma_cochar,
            orbits,
            rel,
            rel_simple,
            levi_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.datum.name
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn nsimple(&self) -> usize {
        self.datum.simple.len()
    }

    pub fn full_levi(&self) -> StandardLevi {
        (0..self.nsimple()).collect()
    }

    pub fn simple_root(&self, i: usize) -> &IVec {
        &self.datum.roots[self.datum.simple[i]]
    }

    pub fn simple_coroot(&self, i: usize) -> &IVec {
        &self.datum.coroots[self.datum.simple[i]]
    }

    /// Root indices of the Levi root system `Φ_J`.
    pub fn levi_roots(&self, levi: &[usize]) -> Vec<usize> {
        (0..self.datum.roots.len())
            .filter(|&r| self.simple_coords[r].iter().enumerate().all(|(i, &c)| c == 0 || levi.contains(&i)))
            .collect()
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.datum.roots.len()).filter(|&r| self.positive[r]).collect()
    }

    /// Whether the simple subset is Γ-stable.
    pub fn is_gamma_stable(&self, levi: &[usize]) -> bool {
        self.orbits.iter().all(|o| o.iter().all(|i| levi.contains(i)) || o.iter().all(|i| !levi.contains(i)))
    }

    pub fn check_levi(&self, levi: &[usize]) -> Result<()> {
        if levi.iter().any(|&i| i >= self.nsimple()) || levi.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDatum(format!("malformed simple subset {levi:?}")));
        }
        if !self.is_gamma_stable(levi) {
            return Err(Error::NotGammaStable(levi.to_vec()));
        }
        Ok(())
    }

    /// Elements of `W_J`, sorted.
    pub fn levi_weyl(&self, levi: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = levi.iter().copied().collect();
        (0..self.weyl.order()).filter(|&w| self.weyl.elements[w].support().is_subset(&set)).collect()
    }

    /// `W^rel_J = W_J ∩ W^Γ`, sorted.
    pub fn levi_rel_weyl(&self, levi: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = levi.iter().copied().collect();
        self.rel.iter().copied().filter(|&w| self.weyl.elements[w].support().is_subset(&set)).collect()
    }

    /// Γ-stable simple subsets ordered by size, then lexicographically.
    pub fn standard_parabolics(&self) -> Vec<StandardLevi> {
        let k = self.orbits.len();
        let mut out: Vec<StandardLevi> = (0..1u64 << k)
            .map(|mask| {
                let mut l: Vec<usize> =
                    (0..k).filter(|b| mask >> b & 1 == 1).flat_map(|b| self.orbits[b].iter().copied()).collect();
                l.sort_unstable();
                l
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// `⟨α_i, x⟩` for the simple root at position `i` and a cocharacter point.
    pub fn simple_pairing(&self, i: usize, x: &[BigRational]) -> BigRational {
        iqdot(self.simple_root(i), x)
    }

    pub fn root_pairing(&self, r: usize, x: &[BigRational]) -> BigRational {
        iqdot(&self.datum.roots[r], x)
    }

    /// Whether `x` is Γ-fixed in the cocharacter space.
    pub fn is_gamma_fixed_point(&self, x: &[BigRational]) -> bool {
        self.gamma_cochar.iter().all(|g| g.mul_qvec(x) == x)
    }

    /// Basis of the Γ-fixed subspace of cocharacters (`𝔄_T`).
    pub fn fixed_cochar_basis(&self) -> Vec<IVec> {
        let n = self.rank();
        let act = LatticeAction { rank: n, generators: self.gamma_cochar.clone() };
        crate::lattice::invariants_saturated(n, &act)
    }

    /// Cochar matrix action of a Weyl element on a rational point.
    pub fn act(&self, w: usize, x: &[BigRational]) -> QVec {
        self.weyl.elements[w].cochr.mul_qvec(x)
    }

    pub fn act_char(&self, w: usize, x: &[BigInt]) -> IVec {
        self.weyl.elements[w].chr.mul_vec(x)
    }

    pub fn act_cochar(&self, w: usize, x: &[BigInt]) -> IVec {
        self.weyl.elements[w].cochr.mul_vec(x)
    }

    /// Image of root index `r` under `w`.
    pub fn act_root(&self, w: usize, r: usize) -> usize {
        self.weyl.elements[w].perm[r] as usize
    }

    /// Whether the point is in the closed dominant chamber.
    pub fn is_dominant(&self, x: &[BigRational]) -> bool {
        (0..self.nsimple()).all(|i| !self.simple_pairing(i, x).is_negative())
    }

    /// Cached per-Levi data.
    pub fn levi(&self, levi: &[usize]) -> Result<Arc<LeviData>> {
        self.check_levi(levi)?;
        if let Some(d) = self.levi_cache.lock().expect("levi cache").get(levi) {
            return Ok(d.clone());
        }
        let d = Arc::new(LeviData::compute(self, levi)?);
        self.levi_cache.lock().expect("levi cache").insert(levi.to_vec(), d.clone());
        Ok(d)
    }

    /// `X*(Z(Ĝ)^Γ)` as a finitely generated abelian group.
    pub fn pi1(&self) -> Result<Arc<LeviData>> {
        self.levi(&self.full_levi())
    }

    /// Natural map `X*(Z(L̂)^Γ) → X*(Z(L̂')^Γ)` for `L ⊂ L'`.
    pub fn push(&self, from: &[usize], to: &[usize], e: &FgElement) -> Result<FgElement> {
        if !from.iter().all(|i| to.contains(i)) {
            return Err(Error::NotContained { inner: from.to_vec(), outer: to.to_vec() });
        }
        let (a, b) = (self.levi(from)?, self.levi(to)?);
        Ok(b.pi1.project(&a.pi1.lift(e)))
    }
}

fn enumerate_weyl(datum: &BasedRootDatum, root_index: &HashMap<IVec, usize>) -> Result<WeylGroup> {
    let n = datum.rank;
    let nroots = datum.roots.len();
    let id = WeylElement {
        perm: (0..nroots as u16).collect(),
        word: Vec::new(),
        chr: IntegerMatrix::identity(n),
        cochr: IntegerMatrix::identity(n),
    };
    let mut gens = Vec::new();
    for &s in &datum.simple {
        let (a, ac) = (&datum.roots[s], &datum.coroots[s]);
        let perm: Vec<u16> = datum.roots.iter().map(|r| root_index[&reflect(r, a, ac)] as u16).collect();
        let mut chr = IntegerMatrix::identity(n);
        let mut cochr = IntegerMatrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                chr.set(r, c, chr.get(r, c) - &a[r] * &ac[c]);
                cochr.set(r, c, cochr.get(r, c) - &ac[r] * &a[c]);
            }
        }
        gens.push((perm, chr, cochr));
    }
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id.perm.clone(), 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, (gp, gc, gcc)) in gens.iter().enumerate() {
            let xe = &elements[x];
            let perm: Vec<u16> = gp.iter().map(|&j| xe.perm[j as usize]).collect();
            if index.contains_key(&perm) {
                continue;
            }
            if elements.len() >= CLOSURE_CAP {
                return Err(Error::CapExceeded(CLOSURE_CAP));
            }
            let mut word = xe.word.clone();
            word.push(i);
            let e = WeylElement { perm: perm.clone(), word, chr: xe.chr.mul(gc), cochr: xe.cochr.mul(gcc) };
            index.insert(perm, elements.len());
            elements.push(e);
            queue.push_back(elements.len() - 1);
        }
    }
    let simple = (0..datum.simple.len()).map(|i| index[&gens[i].0]).collect();
    Ok(WeylGroup { elements, index, simple })
}

/// Lattices and maps attached to a Γ-stable standard Levi.
#[derive(Clone, Debug)]
pub struct LeviData {
    pub levi: StandardLevi,
    /// `X*(Z(L̂)^Γ) = π₁(L)_Γ`.
    pub pi1: FgAbelianGroup,
    /// Integral basis of `𝔄_L ∩ X_*(T)`.
    pub a_basis: Vec<IVec>,
    /// Basis of `X_*(A_L̂)` inside `X*(T)`.
    pub a_hat_basis: Vec<IVec>,
    /// Columns of `α_L`, one per free coordinate.
    pub alpha_cols: Vec<QVec>,
    /// Rows of the projection onto `𝔄_L` along the relation space.
    pub proj: Vec<QVec>,
    /// Spanning vectors of the rational relation space.
    pub relations: Vec<IVec>,
}

impl LeviData {
    fn compute(g: &Group, levi: &[usize]) -> Result<Self> {
        let n = g.rank();
        let mut rel_cols: Vec<IVec> = levi.iter().map(|&i| g.simple_coroot(i).clone()).collect();
        let act = LatticeAction { rank: n, generators: g.gamma_cochar.clone() };
        rel_cols.extend(act.relation_columns());
        let pi1 = quotient_coinvariants(n, &levi.iter().map(|&i| g.simple_coroot(i).clone()).collect::<Vec<_>>(), &act);

        let id = IntegerMatrix::identity(n);
        let mut a_rows: Vec<IVec> = g.gamma_cochar.iter().flat_map(|m| m.sub(&id).row_vecs()).collect();
        a_rows.extend(levi.iter().map(|&i| g.simple_root(i).clone()));
        let a_basis = kernel_or_full(n, &a_rows);

        let mut h_rows: Vec<IVec> = g.galois.generators.iter().flat_map(|m| m.sub(&id).row_vecs()).collect();
        h_rows.extend(levi.iter().map(|&i| g.simple_coroot(i).clone()));
        let a_hat_basis = kernel_or_full(n, &h_rows);

        let rq: Vec<QVec> = rel_cols.iter().map(|v| to_q(v)).collect();
        let rbasis = linalg::independent_subset(&rq, n);
        if a_basis.len() + rbasis.len() != n || a_basis.len() != pi1.free_rank {
            return Err(Error::InvalidDatum(format!("levi {levi:?}: 𝔄_L is not complementary to the relations")));
        }
        let mut kcols: Vec<QVec> = a_basis.iter().map(|v| to_q(v)).collect();
        kcols.extend(rbasis.iter().cloned());
        let kmat = linalg::transpose(&kcols, n);
        let kinv = linalg::inverse(&kmat).ok_or_else(|| Error::InvalidDatum("singular projection".into()))?;
        let k_a: Vec<QVec> = kmat.iter().map(|row| row[..a_basis.len()].to_vec()).collect();
        let proj = linalg::mat_mul(&k_a, &kinv[..a_basis.len()], n);

        let alpha_cols = (0..pi1.free_rank)
            .map(|j| linalg::mat_vec(&proj, &to_q(&pi1.section.col(j))))
            .collect();
        Ok(LeviData { levi: levi.to_vec(), pi1, a_basis, a_hat_basis, alpha_cols, proj, relations: rel_cols })
    }

    pub fn free_rank(&self) -> usize {
        self.pi1.free_rank
    }

    /// `α_L` applied to free coordinates.
    pub fn alpha(&self, c: &[BigRational]) -> QVec {
        let n = self.proj.len();
        let mut x = vec![BigRational::zero(); n];
        for (col, cj) in self.alpha_cols.iter().zip(c) {
            for (xi, v) in x.iter_mut().zip(col) {
                *xi += v * cj;
            }
        }
        x
    }

    pub fn alpha_int(&self, c: &[BigInt]) -> QVec {
        self.alpha(&to_q(c))
    }

    /// Free coordinates of a rational cocharacter (inverse of `α_L` on `𝔄_L`).
    pub fn coords(&self, x: &[BigRational]) -> QVec {
        self.pi1.free_coords(x)
    }

    /// Projection of a rational cocharacter to `𝔄_L`.
    pub fn project(&self, y: &[BigRational]) -> QVec {
        linalg::mat_vec(&self.proj, y)
    }

    /// Whether `x` lies in `𝔄_L`.
    pub fn contains_point(&self, x: &[BigRational]) -> bool {
        self.project(x) == x
    }

    /// Newton point of the class of `κ`; torsion does not contribute.
    pub fn newton(&self, kappa: &FgElement) -> QVec {
        self.alpha_int(&kappa.free)
    }
}

fn kernel_or_full(n: usize, rows: &[IVec]) -> Vec<IVec> {
    if rows.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    }
    saturated_kernel(&IntegerMatrix::from_rows(rows))
}

/// Whether every vector in `inner` lies in the rational span of `outer`.
pub fn span_contains(n: usize, outer: &[QVec], inner: &[QVec]) -> bool {
    inner.iter().all(|v| is_zero_vec(v) || linalg::in_span(outer, v, n))
}
