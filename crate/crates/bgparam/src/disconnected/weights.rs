//! Weight multiplicities of irreducible highest-weight modules.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dot, iqdot, linalg, to_q, IVec, QVec};
use crate::root_datum::BasedRootDatum;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiplicityTable {
    pub highest: IVec,
    pub multiplicities: BTreeMap<IVec, BigInt>,
}

impl WeightMultiplicityTable {
    pub fn dimension(&self) -> BigInt {
        self.multiplicities.values().sum()
    }

    pub fn get(&self, mu: &[BigInt]) -> BigInt {
        self.multiplicities.get(mu).cloned().unwrap_or_else(BigInt::zero)
    }
}

struct Positive {
    roots: Vec<IVec>,
    coroots: Vec<IVec>,
    simple: Vec<(IVec, IVec)>,
    rho: QVec,
}

fn positive_system(d: &BasedRootDatum) -> Result<Positive> {
    let sr: Vec<QVec> = d.simple_roots().iter().map(|v| to_q(v)).collect();
    let srt = linalg::transpose(&sr, d.rank);
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for (r, c) in d.roots.iter().zip(&d.coroots) {
        let coords = linalg::solve(&srt, sr.len(), &to_q(r))
            .ok_or_else(|| Error::InvalidDatum("root outside the simple span".into()))?;
        if coords.iter().all(|x| !x.is_negative()) {
            roots.push(r.clone());
            coroots.push(c.clone());
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut rho = vec![BigRational::zero(); d.rank];
    for r in &roots {
        for (x, y) in rho.iter_mut().zip(r) {
            *x += BigRational::from_integer(y.clone()) * &half;
        }
    }
    let simple = d.simple.iter().map(|&i| (d.roots[i].clone(), d.coroots[i].clone())).collect();
    Ok(Positive { roots, coroots, simple, rho })
}

pub fn is_dominant(d: &BasedRootDatum, lambda: &[BigInt]) -> bool {
    d.simple.iter().all(|&i| !dot(lambda, &d.coroots[i]).is_negative())
}

/// `∏_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
pub fn weyl_dimension(d: &BasedRootDatum, lambda: &[BigInt]) -> Result<BigInt> {
    let p = positive_system(d)?;
    let lr: QVec = to_q(lambda).iter().zip(&p.rho).map(|(a, b)| a + b).collect();
    let mut num = BigRational::one();
    for c in &p.coroots {
        num *= iqdot(c, &lr) / iqdot(c, &p.rho);
    }
    if !num.is_integer() {
        return Err(Error::InvalidDatum("Weyl dimension is not an integer".into()));
    }
    Ok(num.to_integer())
}

fn dominant_conjugate(p: &Positive, mu: &[BigInt]) -> IVec {
    let mut x = mu.to_vec();
    loop {
        let Some((a, ac)) = p.simple.iter().find(|(_, ac)| dot(&x, ac).is_negative()) else { return x };
        let k = dot(&x, ac);
        x = x.iter().zip(a).map(|(xi, ai)| xi - &k * ai).collect();
    }
}

fn below(d: &BasedRootDatum, p: &Positive, lambda: &[BigInt], mu: &[BigInt]) -> bool {
    let diff: IVec = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    if diff.iter().all(Zero::is_zero) {
        return true;
    }
    let sr: Vec<QVec> = p.simple.iter().map(|(a, _)| to_q(a)).collect();
    let srt = linalg::transpose(&sr, d.rank);
    match linalg::solve(&srt, sr.len(), &to_q(&diff)) {
        Some(c) => {
            let back: QVec = (0..d.rank)
                .map(|i| c.iter().zip(&sr).fold(BigRational::zero(), |acc, (cj, s)| acc + cj * &s[i]))
                .collect();
            back == to_q(&diff) && c.iter().all(|x| x.is_integer() && !x.is_negative())
        }
        None => false,
    }
}

static CACHE: Mutex<Option<HashMap<(String, IVec), WeightMultiplicityTable>>> = Mutex::new(None);

/// Freudenthal's recursion with the invariant form `(x,y) = Σ_β ⟨x,β^∨⟩⟨y,β^∨⟩`.
pub fn weight_multiplicities(d: &BasedRootDatum, lambda: &[BigInt]) -> Result<WeightMultiplicityTable> {
    if !is_dominant(d, lambda) {
        return Err(Error::InvalidDatum("highest weight is not dominant".into()));
    }
    let key = (format!("{:?}", (&d.roots, &d.coroots, &d.simple)), lambda.to_vec());
    if let Some(t) = CACHE.lock().expect("weight cache").get_or_insert_with(HashMap::new).get(&key) {
        return Ok(t.clone());
    }
    let p = positive_system(d)?;
    let form = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        p.coroots.iter().fold(BigRational::zero(), |acc, c| acc + iqdot(c, x) * iqdot(c, y))
    };
    let shift = |x: &[BigInt]| -> QVec { to_q(x).iter().zip(&p.rho).map(|(a, b)| a + b).collect() };
    let lr = shift(lambda);
    let top = form(&lr, &lr);

    let mut mult: BTreeMap<IVec, BigInt> = BTreeMap::from([(lambda.to_vec(), BigInt::one())]);
    let mut level: Vec<IVec> = vec![lambda.to_vec()];
    while !level.is_empty() {
        let mut next: Vec<IVec> = Vec::new();
        for nu in &level {
            for (a, _) in &p.simple {
                let mu: IVec = nu.iter().zip(a).map(|(x, y)| x - y).collect();
                if mult.contains_key(&mu) || next.contains(&mu) {
                    continue;
                }
                if below(d, &p, lambda, &dominant_conjugate(&p, &mu)) {
                    next.push(mu);
                }
            }
        }
        next.sort();
        for mu in &next {
            let mr = shift(mu);
            let denom = &top - form(&mr, &mr);
            let mut acc = BigRational::zero();
            for r in &p.roots {
                let rq = to_q(r);
                let mut k = 1i64;
                loop {
                    let nu: IVec = mu.iter().zip(r).map(|(x, y)| x + y * k).collect();
                    let Some(m) = mult.get(&nu) else { break };
                    acc += BigRational::from_integer(m.clone()) * form(&to_q(&nu), &rq);
                    k += 1;
                }
            }
            let val = BigRational::from_integer(2.into()) * acc / denom;
            if !val.is_integer() || val.is_negative() {
                return Err(Error::InvalidDatum("Freudenthal recursion produced a non-integral multiplicity".into()));
            }
            mult.insert(mu.clone(), val.to_integer());
        }
        level = next;
    }
    mult.retain(|_, m| !m.is_zero());
    let t = WeightMultiplicityTable { highest: lambda.to_vec(), multiplicities: mult };
    CACHE.lock().expect("weight cache").get_or_insert_with(HashMap::new).insert(key, t.clone());
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::presets;
    use crate::lattice::ivec;

    #[test]
    fn sl2_adjoint() {
        let d = presets::group_datum("sl2").unwrap().0;
        let t = weight_multiplicities(&d, &ivec(&[2])).unwrap();
        assert_eq!(t.multiplicities.len(), 3);
        assert!(t.multiplicities.values().all(|m| m.is_one()));
        assert_eq!(t.dimension(), BigInt::from(3));
    }

    #[test]
    fn sl3_adjoint_zero_weight() {
        let d = presets::group_datum("sl3").unwrap().0;
        let t = weight_multiplicities(&d, &ivec(&[1, 1])).unwrap();
        assert_eq!(t.get(&ivec(&[0, 0])), BigInt::from(2));
        assert_eq!(t.dimension(), BigInt::from(8));
        assert_eq!(weyl_dimension(&d, &ivec(&[1, 1])).unwrap(), BigInt::from(8));
    }

    #[test]
    fn zero_weight_is_trivial() {
        for name in ["gl3", "sp4", "so6", "sl4"] {
            let d = presets::group_datum(name).unwrap().0;
            let t = weight_multiplicities(&d, &vec![BigInt::zero(); d.rank]).unwrap();
            assert_eq!(t.multiplicities.len(), 1);
            assert_eq!(t.dimension(), BigInt::one());
        }
    }

    #[test]
    fn gl_n_symmetric_powers() {
        // Sym^k of the standard representation of GL_3 has dimension C(k+2, 2)
        let d = presets::group_datum("gl3").unwrap().0;
        for k in 0..5i64 {
            let t = weight_multiplicities(&d, &ivec(&[k, 0, 0])).unwrap();
            assert_eq!(t.dimension(), BigInt::from((k + 1) * (k + 2) / 2));
            assert!(t.multiplicities.values().all(|m| m.is_one()));
        }
    }

    #[test]
    fn multiplicities_are_weyl_symmetric() {
        let d = presets::group_datum("sp4").unwrap().0;
        let t = weight_multiplicities(&d, &ivec(&[2, 1])).unwrap();
        for (mu, m) in &t.multiplicities {
            let swapped = ivec(&[mu[1].clone().try_into().unwrap(), mu[0].clone().try_into().unwrap()]);
            let negated: IVec = mu.iter().map(|x| -x).collect();
            assert_eq!(&t.get(&swapped), m);
            assert_eq!(&t.get(&negated), m);
        }
        assert_eq!(t.dimension(), weyl_dimension(&d, &ivec(&[2, 1])).unwrap());
    }
}
