//! Representations of disconnected reductive groups `𝖦 = 𝖦° ⋊ π₀` through the
//! highest-weight pairs `(λ, E)`.

pub mod cyclotomic;
pub mod finite_group;
pub mod weights;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kottwitz::box_points;
use crate::lattice::{dot, iqdot, ivec, IVec, IntegerMatrix, QVec};
use crate::root_datum::{BasedRootDatum, GaloisAction, Group};
use cyclotomic::{root_of_unity, Cyclo};
use finite_group::{simple_modules, Cocycle, FiniteGroup, SimpleModule};
use weights::{is_dominant, weight_multiplicities, weyl_dimension};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisconnectedGroupDatum {
    pub identity_component: BasedRootDatum,
    /// Generators of `W_𝖦(𝖳,𝖡)` acting on `X*(𝖳)`.
    pub component_generators: Vec<IntegerMatrix>,
    /// Cocycle on the component group in the enumeration order of [`Disconnected::new`].
    #[serde(default)]
    pub cocycle: Option<Cocycle>,
}

/// Validated disconnected group.
#[derive(Debug)]
pub struct Disconnected {
    pub datum: DisconnectedGroupDatum,
    pub identity: Group,
    pub pi0: FiniteGroup,
    pub pi0_matrices: Vec<IntegerMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub identity_weyl_order: usize,
    pub component_order: usize,
    pub intersection_trivial: bool,
    pub normalizes: bool,
    pub semidirect_order: usize,
}

impl SplitReport {
    pub fn ok(&self) -> bool {
        self.intersection_trivial && self.normalizes
    }
}

impl Disconnected {
    pub fn new(datum: DisconnectedGroupDatum) -> Result<Self> {
        let galois = GaloisAction { generators: datum.component_generators.clone() };
        let identity = Group::new(datum.identity_component.clone(), galois)?;
        let n = datum.identity_component.rank;
        let (pi0, pi0_matrices) =
            FiniteGroup::from_generators(IntegerMatrix::identity(n), &datum.component_generators, |a, b| a.mul(b))?;
        if let Some(c) = &datum.cocycle {
            c.check(&pi0)?;
        }
        Ok(Disconnected { datum, identity, pi0, pi0_matrices })
    }

    pub fn rank(&self) -> usize {
        self.datum.identity_component.rank
    }

    /// `W_𝖦(𝖳) = W_{𝖦°}(𝖳) ⋊ W_𝖦(𝖳,𝖡)`, certified.
    pub fn pi0_weyl_split(&self) -> SplitReport {
        let w = &self.identity.weyl;
        let wset: BTreeSet<&IntegerMatrix> = w.elements.iter().map(|e| &e.chr).collect();
        let id = IntegerMatrix::identity(self.rank());
        let intersection_trivial = self.pi0_matrices.iter().all(|m| *m == id || !wset.contains(m));
        let normalizes = self.pi0_matrices.iter().all(|a| {
            let ainv = a.unimodular_inverse().expect("unimodular");
            w.simple.iter().all(|&s| wset.contains(&a.mul(&w.elements[s].chr).mul(&ainv)))
        });
        SplitReport {
            identity_weyl_order: w.order(),
            component_order: self.pi0.order(),
            intersection_trivial,
            normalizes,
            semidirect_order: w.order() * self.pi0.order(),
        }
    }

    pub fn act(&self, a: usize, lambda: &[BigInt]) -> IVec {
        self.pi0_matrices[a].mul_vec(lambda)
    }

    /// `A^λ`, sorted with the identity first.
    pub fn stabilizer_a_lambda(&self, lambda: &[BigInt]) -> Vec<usize> {
        (0..self.pi0.order()).filter(|&a| self.act(a, lambda) == lambda).collect()
    }

    /// Coset representatives of `π₀/A^λ` (least element of each left coset).
    pub fn coset_reps(&self, stab: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for c in 0..self.pi0.order() {
            if seen.contains(&c) {
                continue;
            }
            reps.push(c);
            seen.extend(stab.iter().map(|&h| self.pi0.mul(c, h)));
        }
        reps
    }

    pub fn orbit(&self, lambda: &[BigInt]) -> BTreeSet<IVec> {
        (0..self.pi0.order()).map(|a| self.act(a, lambda)).collect()
    }

    /// Canonical orbit representative: the lexicographically greatest member.
    pub fn orbit_rep(&self, lambda: &[BigInt]) -> IVec {
        self.orbit(lambda).into_iter().next_back().expect("orbit contains λ")
    }

    fn restricted_cocycle(&self, stab: &[usize]) -> Option<Cocycle> {
        self.datum.cocycle.as_ref().map(|c| Cocycle {
            n: c.n,
            exponents: stab.iter().map(|&a| stab.iter().map(|&b| c.exponents[a][b]).collect()).collect(),
        })
    }

    /// Simple modules of `𝒜^λ`.
    pub fn modules_for(&self, lambda: &[BigInt]) -> Result<(Vec<usize>, Vec<SimpleModule>)> {
        let stab = self.stabilizer_a_lambda(lambda);
        let sub = self.pi0.restrict(&stab);
        let mods = simple_modules(&sub, self.restricted_cocycle(&stab).as_ref())?;
        Ok((stab, mods))
    }

    pub fn irr(&self, lambda: &[BigInt], module: usize) -> Result<IrrClass> {
        if !is_dominant(&self.datum.identity_component, lambda) {
            return Err(Error::InvalidParameter(format!("λ = {lambda:?} is not dominant")));
        }
        let rep = self.orbit_rep(lambda);
        let (stab, mods) = self.modules_for(&rep)?;
        let m = mods
            .get(module)
            .cloned()
            .ok_or_else(|| Error::InvalidParameter(format!("A^λ has no simple module #{module}")))?;
        let index = self.pi0.order() / stab.len();
        let dim = weyl_dimension(&self.datum.identity_component, &rep)? * BigInt::from(m.dim * index);
        Ok(IrrClass { lambda: rep, a_lambda: stab, module_index: module, module: m, dim })
    }

    /// One class per `(π₀-orbit of λ, E)` with λ dominant in `[0, bound]^rank`.
    pub fn classify_irr(&self, bound: i64) -> Result<Vec<IrrClass>> {
        let mut reps = BTreeSet::new();
        for p in box_points(&vec![(0, bound); self.rank()]) {
            let l = ivec(&p);
            if is_dominant(&self.datum.identity_component, &l) {
                reps.insert(self.orbit_rep(&l));
            }
        }
        let mut out = Vec::new();
        for l in reps {
            let (_, mods) = self.modules_for(&l)?;
            for k in 0..mods.len() {
                out.push(self.irr(&l, k)?);
            }
        }
        Ok(out)
    }

    /// Formal character or exact value of `𝓛(λ, E)` at `t·a`.
    pub fn char_eval(&self, pair: &IrrClass, t: &TorusPoint, a: usize) -> Result<CharValue> {
        let reps = self.coset_reps(&pair.a_lambda);
        let stab: BTreeSet<usize> = pair.a_lambda.iter().copied().collect();
        let pos = |x: usize| pair.a_lambda.iter().position(|&y| y == x).expect("in stabilizer");
        let mut formal: BTreeMap<IVec, Cyclo> = BTreeMap::new();
        if a == 0 {
            let dim_e = BigInt::from(pair.module.dim);
            for &c in &reps {
                let table = weight_multiplicities(&self.datum.identity_component, &self.act(c, &pair.lambda))?;
                for (mu, m) in &table.multiplicities {
                    let e = formal.entry(mu.clone()).or_insert_with(|| Cyclo::zero(1));
                    *e = e.add(&Cyclo::from_rational(1, (m * &dim_e).into()));
                }
            }
        } else {
            let torus = self.datum.identity_component.roots.is_empty();
            let twisted = self.datum.cocycle.as_ref().map_or(false, |c| !c.is_trivial());
            if !torus || twisted {
                return Err(Error::Unsupported(
                    "trace of a non-identity component needs explicit twist data".into(),
                ));
            }
            for &c in &reps {
                let conj = self.pi0.mul(self.pi0.mul(self.pi0.inv(c), a), c);
                if !stab.contains(&conj) {
                    continue;
                }
                let mu = self.act(c, &pair.lambda);
                let v = pair.module.character[pos(conj)].clone();
                let e = formal.entry(mu).or_insert_with(|| Cyclo::zero(1));
                *e = e.add(&v);
            }
        }
        formal.retain(|_, v| !v.is_zero());
        Ok(match t {
            TorusPoint::Formal => CharValue::Formal(formal),
            TorusPoint::Exponents(u) => CharValue::Number(
                formal.iter().fold(Cyclo::zero(1), |acc, (mu, v)| acc.add(&v.mul(&root_of_unity(&iqdot(mu, u))))),
            ),
        })
    }
}

/// An irreducible representation `𝓛(λ, E)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrClass {
    pub lambda: IVec,
    pub a_lambda: Vec<usize>,
    pub module_index: usize,
    pub module: SimpleModule,
    pub dim: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusPoint {
    /// Return the formal character `Σ c_μ e^μ`.
    Formal,
    /// `t(μ) = exp(2πi ⟨μ, u⟩)`.
    Exponents(QVec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CharValue {
    Formal(BTreeMap<IVec, Cyclo>),
    Number(Cyclo),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentCertificate {
    pub lambda: IVec,
    pub killed: Vec<IVec>,
}

/// Certifies that `λ` is trivial on the cocharacter sublattice `killed`, so that
/// the representation factors through the quotient by the corresponding torus.
pub fn natural_quotient_rep(lambda: &[BigInt], killed: &[IVec]) -> Result<DescentCertificate> {
    for k in killed {
        if !dot(lambda, k).is_zero() {
            return Err(Error::DescentFailed(format!("λ = {lambda:?} pairs nontrivially with {k:?}")));
        }
    }
    Ok(DescentCertificate { lambda: lambda.to_vec(), killed: killed.to_vec() })
}

/// Presets used by tests and examples.
pub fn preset(name: &str) -> Result<Disconnected> {
    let torus = |n: usize| BasedRootDatum::from_simple(&format!("T{n}"), n, &[], &[]).expect("torus");
    let datum = match name {
        "o2" => DisconnectedGroupDatum {
            identity_component: torus(1),
            component_generators: vec![IntegerMatrix::from_i64(&[vec![-1]])],
            cocycle: None,
        },
        "gl1sq-s2" => DisconnectedGroupDatum {
            identity_component: torus(2),
            component_generators: vec![IntegerMatrix::from_i64(&[vec![0, 1], vec![1, 0]])],
            cocycle: None,
        },
        "gl2" => DisconnectedGroupDatum {
            identity_component: crate::io::presets::gl_datum(2),
            component_generators: Vec::new(),
            cocycle: None,
        },
        "sl2" => DisconnectedGroupDatum {
            identity_component: crate::io::presets::sl_datum(2),
            component_generators: Vec::new(),
            cocycle: None,
        },
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Disconnected::new(datum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{qvec, rat};

    #[test]
    fn split_examples() {
        let o2 = preset("o2").unwrap().pi0_weyl_split();
        assert_eq!((o2.identity_weyl_order, o2.component_order), (1, 2));
        assert!(o2.ok());
        let gl2 = preset("gl2").unwrap().pi0_weyl_split();
        assert_eq!((gl2.identity_weyl_order, gl2.component_order), (2, 1));
        let t = preset("gl1sq-s2").unwrap().pi0_weyl_split();
        assert_eq!((t.identity_weyl_order, t.component_order, t.semidirect_order), (1, 2, 2));
        assert!(t.ok());
    }

    #[test]
    fn stabilizers() {
        let o2 = preset("o2").unwrap();
        assert_eq!(o2.stabilizer_a_lambda(&ivec(&[0])).len(), 2);
        assert_eq!(o2.stabilizer_a_lambda(&ivec(&[3])).len(), 1);
        let t = preset("gl1sq-s2").unwrap();
        assert_eq!(t.stabilizer_a_lambda(&ivec(&[2, 2])).len(), 2);
        assert_eq!(t.stabilizer_a_lambda(&ivec(&[1, 0])).len(), 1);
    }

    #[test]
    fn o2_classification_matches_hand_list() {
        // O_2(C): det-twisted pair at weight 0, and one induced 2-dimensional class per n > 0
        let o2 = preset("o2").unwrap();
        let c = o2.classify_irr(1).unwrap();
        let summary: Vec<(IVec, usize, BigInt)> = c.iter().map(|x| (x.lambda.clone(), x.module.dim, x.dim.clone())).collect();
        assert_eq!(
            summary,
            vec![(ivec(&[0]), 1, BigInt::from(1)), (ivec(&[0]), 1, BigInt::from(1)), (ivec(&[1]), 1, BigInt::from(2))]
        );
        assert!(c[0].module.is_trivial() && !c[1].module.is_trivial());
    }

    #[test]
    fn gl2_classification() {
        let g = preset("gl2").unwrap();
        let c = g.classify_irr(1).unwrap();
        let l: Vec<IVec> = c.iter().map(|x| x.lambda.clone()).collect();
        assert_eq!(l, vec![ivec(&[0, 0]), ivec(&[1, 0]), ivec(&[1, 1])]);
    }

    #[test]
    fn induced_torus_class() {
        let t = preset("gl1sq-s2").unwrap();
        let x = t.irr(&ivec(&[1, 0]), 0).unwrap();
        assert_eq!(x.dim, BigInt::from(2));
        assert_eq!(x.lambda, ivec(&[1, 0]));
        assert_eq!(t.irr(&ivec(&[0, 1]), 0).unwrap(), x);
    }

    #[test]
    fn char_eval_examples() {
        let sl2 = preset("sl2").unwrap();
        let p = sl2.irr(&ivec(&[2]), 0).unwrap();
        let CharValue::Formal(f) = sl2.char_eval(&p, &TorusPoint::Formal, 0).unwrap() else { panic!() };
        let keys: Vec<IVec> = f.keys().cloned().collect();
        assert_eq!(keys, vec![ivec(&[-2]), ivec(&[0]), ivec(&[2])]);
        assert!(f.values().all(|v| *v == Cyclo::one(1)));
        let at_id = sl2.char_eval(&p, &TorusPoint::Exponents(qvec(&[0])), 0).unwrap();
        assert_eq!(at_id, CharValue::Number(Cyclo::from_int(1, 3)));

        let o2 = preset("o2").unwrap();
        let p = o2.irr(&ivec(&[1]), 0).unwrap();
        let CharValue::Formal(f) = o2.char_eval(&p, &TorusPoint::Formal, 0).unwrap() else { panic!() };
        assert_eq!(f.keys().cloned().collect::<Vec<_>>(), vec![ivec(&[-1]), ivec(&[1])]);
        // oracle: explicit induced matrices diag(q, q⁻¹) and [[0,1],[1,0]]
        assert_eq!(o2.char_eval(&p, &TorusPoint::Exponents(qvec(&[0])), 1).unwrap(), CharValue::Number(Cyclo::zero(1)));
        let at_quarter = o2.char_eval(&p, &TorusPoint::Exponents(vec![rat(1, 4)]), 0).unwrap();
        assert_eq!(at_quarter, CharValue::Number(Cyclo::zeta(4, 1).add(&Cyclo::zeta(4, -1))));
        let sgn = o2.irr(&ivec(&[0]), 1).unwrap();
        assert_eq!(o2.char_eval(&sgn, &TorusPoint::Formal, 1).unwrap(), CharValue::Formal(BTreeMap::from([(ivec(&[0]), Cyclo::from_int(1, -1))])));
        let gl2 = preset("gl2").unwrap();
        let p = gl2.irr(&ivec(&[1, 0]), 0).unwrap();
        assert!(matches!(gl2.char_eval(&p, &TorusPoint::Formal, 0), Ok(CharValue::Formal(_))));
    }

    #[test]
    fn descent() {
        assert!(natural_quotient_rep(&ivec(&[1, 0]), &[]).is_ok());
        assert!(natural_quotient_rep(&ivec(&[0, 0]), &[ivec(&[1, -1])]).is_ok());
        assert!(natural_quotient_rep(&ivec(&[1, 0]), &[ivec(&[1, -1])]).is_err());
    }
}
