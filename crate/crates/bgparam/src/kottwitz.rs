//! The Kottwitz set through its complete invariants `(L, κ_L)`.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ivec, FgElement, QVec};
use crate::root_datum::{Group, StandardLevi};
use crate::weyl::{facet, in_open_facet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BElement {
    pub levi: StandardLevi,
    pub kappa: FgElement,
}

impl BElement {
    pub fn is_basic(&self, g: &Group) -> bool {
        self.levi.len() == g.nsimple()
    }
}

pub fn newton(g: &Group, b: &BElement) -> Result<QVec> {
    Ok(g.levi(&b.levi)?.newton(&b.kappa))
}

/// Image of `κ_L(b)` in `X*(Z(Ĝ)^Γ)`.
pub fn kappa_push(g: &Group, b: &BElement) -> Result<FgElement> {
    g.push(&b.levi, &g.full_levi(), &b.kappa)
}

/// The stratum `B(G)_P` containing `b`; must agree with `b.levi`.
pub fn classify(g: &Group, b: &BElement) -> Result<StandardLevi> {
    let nu = newton(g, b)?;
    if !g.is_dominant(&nu) {
        return Err(Error::InconsistentElement(format!("Newton point {} is not dominant", fmt_point(&nu))));
    }
    let q = facet(g, &nu);
    if q != b.levi {
        return Err(Error::InconsistentElement(format!(
            "Newton point {} lies in the facet of {:?}, not {:?}",
            fmt_point(&nu),
            q,
            b.levi
        )));
    }
    Ok(q)
}

/// Accepts `(L, κ)` only when the Newton point is strictly inside `𝔄_Q^+`.
pub fn basic_plus_lift(g: &Group, levi: &[usize], kappa: FgElement) -> Result<BElement> {
    let d = g.levi(levi)?;
    if kappa.free.len() != d.pi1.free_rank || kappa.torsion.len() != d.pi1.torsion.len() {
        return Err(Error::InconsistentElement("κ has the wrong shape for this Levi".into()));
    }
    let kappa = d.pi1.reduce(&kappa);
    let nu = d.newton(&kappa);
    if !in_open_facet(g, levi, &nu) {
        let hit = if g.is_dominant(&nu) { format!("facet {:?}", facet(g, &nu)) } else { "a non-dominant chamber".into() };
        return Err(Error::WallAssertion(format!(
            "Newton point {} of κ on {:?} lies in {hit}",
            fmt_point(&nu),
            levi
        )));
    }
    Ok(BElement { levi: levi.to_vec(), kappa })
}

/// All elements of `B(G)_P` with free κ-coordinates in `[-radius, radius]`.
pub fn enumerate_stratum(g: &Group, levi: &[usize], radius: i64) -> Result<Vec<BElement>> {
    let d = g.levi(levi)?;
    let torsion: Vec<(i64, i64)> =
        d.pi1.torsion.iter().map(|t| (0, i64::try_from(t).unwrap_or(64).min(64) - 1)).collect();
    let mut out = Vec::new();
    for free in box_points(&vec![(-radius, radius); d.free_rank()]) {
        for t in box_points(&torsion) {
            if let Ok(b) = basic_plus_lift(g, levi, d.pi1.element(ivec(&free), ivec(&t))) {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// Integer points of a box, lexicographically.
pub fn box_points(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out.into_iter().flat_map(|v| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

pub fn fmt_point(x: &[num_rational::BigRational]) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// `true` when every coordinate is strictly positive on the complement of `q`.
pub fn clears_walls(g: &Group, q: &[usize], nu: &[num_rational::BigRational]) -> bool {
    (0..g.nsimple()).filter(|i| !q.contains(i)).all(|i| g.simple_pairing(i, nu).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::presets;
    use crate::lattice::{qvec, rat};

    fn el(free: &[i64], tors: &[i64]) -> FgElement {
        FgElement { free: ivec(free), torsion: ivec(tors) }
    }

    #[test]
    fn newton_examples() {
        let g = presets::group("gl2").unwrap();
        let b = BElement { levi: vec![0], kappa: el(&[1], &[]) };
        assert_eq!(newton(&g, &b).unwrap(), vec![rat(1, 2), rat(1, 2)]);
        let b = BElement { levi: vec![], kappa: el(&[1, 0], &[]) };
        assert_eq!(newton(&g, &b).unwrap(), qvec(&[1, 0]));
        let b = BElement { levi: vec![], kappa: el(&[0, 0], &[]) };
        assert_eq!(newton(&g, &b).unwrap(), qvec(&[0, 0]));
    }

    #[test]
    fn kappa_push_examples() {
        let g = presets::group("gl2").unwrap();
        let b = BElement { levi: vec![], kappa: el(&[1, 0], &[]) };
        assert_eq!(kappa_push(&g, &b).unwrap(), el(&[1], &[]));
        let b = BElement { levi: vec![], kappa: el(&[0, 0], &[]) };
        assert_eq!(kappa_push(&g, &b).unwrap(), el(&[0], &[]));
        // X*(T̂) = Z maps onto X*(Z(Ĝ)) = Z/2 for the adjoint group
        let g = presets::group("pgl2").unwrap();
        let b = BElement { levi: vec![], kappa: el(&[1], &[]) };
        assert_eq!(kappa_push(&g, &b).unwrap(), el(&[], &[1]));
    }

    #[test]
    fn classify_examples() {
        let g = presets::group("gl2").unwrap();
        assert_eq!(classify(&g, &BElement { levi: vec![0], kappa: el(&[3], &[]) }).unwrap(), vec![0]);
        assert_eq!(classify(&g, &BElement { levi: vec![], kappa: el(&[1, 0], &[]) }).unwrap(), Vec::<usize>::new());
        let g4 = presets::group("gl4").unwrap();
        let b = BElement { levi: vec![0, 2], kappa: el(&[1, 0], &[]) };
        assert_eq!(classify(&g4, &b).unwrap(), vec![0, 2]);
        assert!(classify(&g4, &BElement { levi: vec![0, 2], kappa: el(&[0, 1], &[]) }).is_err());
    }

    #[test]
    fn basic_plus_lift_walls() {
        let g = presets::group("gl2").unwrap();
        assert!(basic_plus_lift(&g, &[], el(&[1, 0], &[])).is_ok());
        assert!(matches!(basic_plus_lift(&g, &[], el(&[1, 1], &[])), Err(Error::WallAssertion(_))));
        assert!(matches!(basic_plus_lift(&g, &[], el(&[0, 1], &[])), Err(Error::WallAssertion(_))));
    }

    #[test]
    fn strata_cover_torus_box() {
        let g = presets::group("gl3").unwrap();
        let t = enumerate_stratum(&g, &[], 2).unwrap();
        let brute = itertools::iproduct!(-2..=2i64, -2..=2i64, -2..=2i64).filter(|(a, b, c)| a > b && b > c).count();
        assert_eq!(t.len(), brute);
        let basic = enumerate_stratum(&g, &[0, 1], 2).unwrap();
        assert_eq!(basic.len(), 5);
    }
}
