//! Relative Weyl coset combinatorics.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dot, QVec};
use crate::root_datum::{Group, StandardLevi};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberWitness {
    pub w: usize,
    pub q: StandardLevi,
    pub image: QVec,
}

/// Greedy ascent into the closed dominant chamber, lowest violated orbit first.
pub fn chamber_locate(g: &Group, x: &[BigRational]) -> Result<ChamberWitness> {
    if !g.is_gamma_fixed_point(x) {
        return Err(Error::InvalidDatum("point is not Γ-fixed".into()));
    }
    let mut y = x.to_vec();
    let mut w = 0;
    while let Some(i) = (0..g.nsimple()).find(|&i| g.simple_pairing(i, &y).is_negative()) {
        let o = g.orbits.iter().position(|o| o.contains(&i)).expect("every simple position has an orbit");
        let s = g.rel_simple[o];
        y = g.act(s, &y);
        w = g.weyl.mul(s, w);
    }
    let q = facet(g, &y);
    Ok(ChamberWitness { w, q, image: y })
}

/// Simple positions pairing to zero with `y`.
pub fn facet(g: &Group, y: &[BigRational]) -> StandardLevi {
    (0..g.nsimple()).filter(|&i| g.simple_pairing(i, y).is_zero()).collect()
}

/// Whether `y` lies in the open facet `𝔄_Q^+`.
pub fn in_open_facet(g: &Group, q: &[usize], y: &[BigRational]) -> bool {
    (0..g.nsimple()).all(|i| {
        let p = g.simple_pairing(i, y);
        if q.contains(&i) {
            p.is_zero()
        } else {
            p.is_positive()
        }
    })
}

/// `{w ∈ W^rel : w 𝔄_{L1} ⊇ 𝔄_{L2}}`.
pub fn transporter_set(g: &Group, l1: &[usize], l2: &[usize]) -> Result<Vec<usize>> {
    let d2 = g.levi(l2)?;
    g.check_levi(l1)?;
    Ok(g.rel
        .iter()
        .copied()
        .filter(|&w| {
            l1.iter().all(|&j| {
                let r = &g.datum.roots[g.act_root(w, g.datum.simple[j])];
                d2.a_basis.iter().all(|b| dot(r, b).is_zero())
            })
        })
        .collect())
}

fn preserves_positivity(g: &Group, w: usize, levi: &[usize]) -> bool {
    levi.iter().all(|&j| g.positive[g.act_root(w, g.datum.simple[j])])
}

/// Minimal representatives: `w(L1∩B) ⊂ B` and `w⁻¹(L2∩B) ⊂ B`.
pub fn is_minimal(g: &Group, w: usize, l1: &[usize], l2: &[usize]) -> bool {
    preserves_positivity(g, w, l1) && preserves_positivity(g, g.weyl.inv(w), l2)
}

/// `W^rel[L1, L2]`.
pub fn double_coset_reps(g: &Group, l1: &[usize], l2: &[usize]) -> Result<Vec<usize>> {
    Ok(transporter_set(g, l1, l2)?.into_iter().filter(|&w| is_minimal(g, w, l1, l2)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricIndex {
    pub w: usize,
    /// `L1 ∩ w⁻¹ L2 w` as a subset of `L1`.
    pub left: StandardLevi,
    /// `w L1 w⁻¹ ∩ L2` as a subset of `L2`.
    pub right: StandardLevi,
}

/// Whether root `r` lies in `Φ_J`.
pub fn root_in_levi(g: &Group, r: usize, levi: &[usize]) -> bool {
    g.simple_coords[r].iter().enumerate().all(|(i, &c)| c == 0 || levi.contains(&i))
}

/// `{j ∈ L1 : w α_j ∈ Φ_{L2}}`.
pub fn intersection_levi(g: &Group, w: usize, l1: &[usize], l2: &[usize]) -> StandardLevi {
    l1.iter().copied().filter(|&j| root_in_levi(g, g.act_root(w, g.datum.simple[j]), l2)).collect()
}

/// `W^{rel, L1, L2}` with the intersection Levis.
pub fn geometric_lemma_index(g: &Group, l1: &[usize], l2: &[usize]) -> Result<Vec<GeometricIndex>> {
    g.check_levi(l1)?;
    g.check_levi(l2)?;
    Ok(g.rel
        .iter()
        .copied()
        .filter(|&w| is_minimal(g, w, l1, l2))
        .map(|w| GeometricIndex {
            w,
            left: intersection_levi(g, w, l1, l2),
            right: intersection_levi(g, g.weyl.inv(w), l2, l1),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilizer {
    pub elements: Vec<usize>,
    /// The Levi whose relative Weyl group equals the stabilizer, for dominant points.
    pub levi: Option<StandardLevi>,
}

pub fn stabilizer(g: &Group, x: &[BigRational]) -> Stabilizer {
    let elements = g.rel.iter().copied().filter(|&w| g.act(w, x) == x).collect();
    let levi = g.is_dominant(x).then(|| facet(g, x));
    Stabilizer { elements, levi }
}

/// Partition of `elems` into classes `H1 w H2`, each sorted, ordered by least member.
pub fn double_cosets(g: &Group, h1: &[usize], elems: &[usize], h2: &[usize]) -> Vec<Vec<usize>> {
    let pool: BTreeSet<usize> = elems.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &w in &pool {
        if seen.contains(&w) {
            continue;
        }
        let mut class = BTreeSet::new();
        for &a in h1 {
            let aw = g.weyl.mul(a, w);
            for &b in h2 {
                class.insert(g.weyl.mul(aw, b));
            }
        }
        debug_assert!(class.is_subset(&pool), "elements are not stable under the double coset action");
        seen.extend(class.iter().copied());
        out.push(class.into_iter().collect());
    }
    out
}

/// Partition into right cosets `H w`.
pub fn left_cosets(g: &Group, h: &[usize], elems: &[usize]) -> Vec<Vec<usize>> {
    double_cosets(g, h, elems, &[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::presets;
    use crate::lattice::{qvec, to_q};

    #[test]
    fn chamber_examples() {
        let g = presets::group("gl3").unwrap();
        let c = chamber_locate(&g, &qvec(&[0, 2, 1])).unwrap();
        assert_eq!((c.image.clone(), c.q.clone()), (qvec(&[2, 1, 0]), vec![]));
        assert_eq!(g.act(c.w, &qvec(&[0, 2, 1])), c.image);
        let c = chamber_locate(&g, &qvec(&[1, 0, 1])).unwrap();
        assert_eq!((c.image, c.q), (qvec(&[1, 1, 0]), vec![0]));
        let c = chamber_locate(&g, &qvec(&[4, 4, 4])).unwrap();
        assert_eq!((c.w, c.q), (0, vec![0, 1]));
    }

    #[test]
    fn gl4_block_levi_sets() {
        let g = presets::group("gl4").unwrap();
        let l = vec![0, 2];
        let t = transporter_set(&g, &l, &l).unwrap();
        let brute: Vec<usize> = (0..24)
            .filter(|&w| {
                let lw: BTreeSet<usize> = g.levi_weyl(&l).into_iter().collect();
                let conj: BTreeSet<usize> =
                    lw.iter().map(|&u| g.weyl.mul(g.weyl.mul(w, u), g.weyl.inv(w))).collect();
                conj == lw
            })
            .collect();
        assert_eq!(t, brute);
        assert_eq!(t.len(), 8);
        let d = double_coset_reps(&g, &l, &l).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.len(), left_cosets(&g, &g.levi_weyl(&l), &t).len());
        let swap = d[1];
        assert_eq!(g.act_cochar(swap, &crate::lattice::ivec(&[1, 2, 3, 4])), crate::lattice::ivec(&[3, 4, 1, 2]));
        let gi = geometric_lemma_index(&g, &l, &l).unwrap();
        let lw = g.levi_weyl(&l);
        let all: Vec<usize> = (0..24).collect();
        assert_eq!(gi.len(), double_cosets(&g, &lw, &all, &lw).len());
        assert_eq!(gi.len(), 3);
        let middle = gi.iter().find(|x| x.left.len() == 0).unwrap();
        assert!(middle.right.is_empty());
    }

    #[test]
    fn trivial_cases() {
        let g = presets::group("gl2").unwrap();
        assert_eq!(transporter_set(&g, &[], &[0]).unwrap(), vec![0, 1]);
        assert_eq!(double_coset_reps(&g, &[0], &[0]).unwrap(), vec![0]);
        assert_eq!(double_coset_reps(&g, &[], &[]).unwrap(), vec![0, 1]);
        assert_eq!(geometric_lemma_index(&g, &[], &[]).unwrap().len(), 2);
        assert_eq!(geometric_lemma_index(&g, &[0], &[0]).unwrap().len(), 1);
    }

    #[test]
    fn stabilizer_examples() {
        let g = presets::group("gl3").unwrap();
        let s = stabilizer(&g, &qvec(&[3, 2, 1]));
        assert_eq!((s.elements.len(), s.levi), (1, Some(vec![])));
        let s = stabilizer(&g, &qvec(&[1, 1, 0]));
        assert_eq!(s.elements, g.levi_rel_weyl(&[0]));
        let s = stabilizer(&g, &qvec(&[2, 2, 2]));
        assert_eq!((s.elements.len(), s.levi), (6, Some(vec![0, 1])));
    }

    #[test]
    fn relative_chambers_with_galois() {
        let g = presets::group("u3").unwrap();
        let basis = g.fixed_cochar_basis();
        assert_eq!(basis.len(), 1);
        let x: QVec = to_q(&basis[0]).into_iter().map(|v| -v).collect();
        let c = chamber_locate(&g, &x).unwrap();
        assert!(g.is_dominant(&c.image));
        assert!(in_open_facet(&g, &c.q, &c.image));
    }
}
