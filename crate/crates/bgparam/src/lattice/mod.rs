//! Integer lattice algebra: Smith normal form, finitely generated abelian
//! groups, invariants and coinvariants of finite lattice actions.

pub mod linalg;
mod matrix;

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use matrix::IntegerMatrix;

use crate::error::{Error, Result};

pub type IVec = Vec<BigInt>;
pub type QVec = Vec<BigRational>;

/// Default cap for finite group closures.
pub const CLOSURE_CAP: usize = 1_000_000;

pub fn ivec(xs: &[i64]) -> IVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

pub fn to_q(v: &[BigInt]) -> QVec {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn qdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Pairing of an integer vector with a rational one.
pub fn iqdot(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| {
        if x.is_zero() {
            acc
        } else {
            acc + BigRational::from_integer(x.clone()) * y
        }
    })
}

/// Integer vector if every entry is integral.
pub fn to_integral(v: &[BigRational]) -> Option<IVec> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Result of a Smith normal form computation: `u * a * v == d`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> IVec {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.get(i, t).is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    debug_assert_eq!(u.mul(a).mul(&v), d);
    Snf { u, d, v }
}

/// Row Hermite normal form: returns `(h, t)` with `t` unimodular and `h = t * a`
/// in echelon form with positive pivots and reduced entries above each pivot.
pub fn row_hermite(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let (r, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut t = IntegerMatrix::identity(r);
    let mut row = 0;
    for c in 0..n {
        if row == r {
            break;
        }
        loop {
            let best = (row..r)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&i, &j| h.get(i, c).abs().cmp(&h.get(j, c).abs()));
            let Some(p) = best else { break };
            h.swap_rows(row, p);
            t.swap_rows(row, p);
            let mut clean = true;
            for i in row + 1..r {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -(h.get(i, c) / h.get(row, c));
                h.add_row(i, row, &q);
                t.add_row(i, row, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(row, c).is_zero() {
            continue;
        }
        if h.get(row, c).is_negative() {
            h.negate_row(row);
            t.negate_row(row);
        }
        for i in 0..row {
            let q = -h.get(i, c).div_floor(h.get(row, c));
            h.add_row(i, row, &q);
            t.add_row(i, row, &q);
        }
        row += 1;
    }
    (h, t)
}

/// Basis of {x in Z^n : a x = 0}. The result spans a saturated sublattice.
pub fn saturated_kernel(a: &IntegerMatrix) -> Vec<IVec> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols()).map(|j| snf.v.col(j)).collect()
}

/// An integer solution of `a x = b` for rational `b`, if any.
pub fn solve_integer(a: &IntegerMatrix, b: &[BigRational]) -> Option<IVec> {
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_qvec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, x) in ub.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !x.is_zero() {
                return None;
            }
        } else {
            let q = x / BigRational::from_integer(d);
            if !q.is_integer() {
                return None;
            }
            y[i] = q.to_integer();
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Element of a finitely generated abelian group in reduced cokernel coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FgElement {
    pub free: IVec,
    pub torsion: IVec,
}

impl FgElement {
    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.free) && is_zero_vec(&self.torsion)
    }
}

/// A finitely generated abelian group realized as the cokernel of an integer
/// relation matrix on `Z^ambient_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    pub ambient_rank: usize,
    pub free_rank: usize,
    /// Invariant factors `d_1 | d_2 | ...`, each at least 2.
    pub torsion: IVec,
    /// Relations, one per column.
    pub presentation: IntegerMatrix,
    /// Quotient map: free coordinate rows first, then torsion rows.
    pub quotient: IntegerMatrix,
    /// Representatives in `Z^ambient_rank` of the abstract generators.
    pub section: IntegerMatrix,
}

impl FgAbelianGroup {
    pub fn from_relations(ambient_rank: usize, relations: &IntegerMatrix) -> Self {
        assert_eq!(relations.rows(), ambient_rank);
        let snf = smith_normal_form(relations);
        let diag = snf.diagonal();
        let rank = snf.rank();
        let uinv = snf.u.unimodular_inverse().expect("SNF transform is unimodular");
        let mut free_rows = Vec::new();
        let mut free_cols = Vec::new();
        let mut tors_rows = Vec::new();
        let mut tors_cols = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..ambient_rank {
            if i < rank {
                if diag[i].is_one() {
                    continue;
                }
                torsion.push(diag[i].clone());
                tors_rows.push(snf.u.row(i));
                tors_cols.push(uinv.col(i));
            } else {
                free_rows.push(snf.u.row(i));
                free_cols.push(uinv.col(i));
            }
        }
        let free_rank = free_rows.len();
        if free_rank > 0 {
            let (h, t) = row_hermite(&IntegerMatrix::from_rows(&free_rows));
            let tinv = t.unimodular_inverse().expect("hermite transform is unimodular");
            free_rows = h.row_vecs();
            free_cols = IntegerMatrix::from_cols(ambient_rank, &free_cols).mul(&tinv).col_vecs();
        }
        let mut rows = free_rows;
        rows.extend(tors_rows);
        let mut cols = free_cols;
        cols.extend(tors_cols);
        let quotient = if rows.is_empty() {
            IntegerMatrix::zeros(0, ambient_rank)
        } else {
            IntegerMatrix::from_rows(&rows)
        };
        FgAbelianGroup {
            ambient_rank,
            free_rank,
            torsion,
            presentation: relations.clone(),
            quotient,
            section: IntegerMatrix::from_cols(ambient_rank, &cols),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_count() == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn zero(&self) -> FgElement {
        FgElement { free: vec![BigInt::zero(); self.free_rank], torsion: vec![BigInt::zero(); self.torsion.len()] }
    }

    /// Class of an ambient vector.
    pub fn project(&self, v: &[BigInt]) -> FgElement {
        let c = self.quotient.mul_vec(v);
        let free = c[..self.free_rank].to_vec();
        let torsion = c[self.free_rank..].iter().zip(&self.torsion).map(|(x, d)| x.mod_floor(d)).collect();
        FgElement { free, torsion }
    }

    /// Canonical representative vector of an element.
    pub fn lift(&self, e: &FgElement) -> IVec {
        let mut coords = e.free.clone();
        coords.extend(e.torsion.iter().cloned());
        self.section.mul_vec(&coords)
    }

    pub fn reduce(&self, e: &FgElement) -> FgElement {
        FgElement {
            free: e.free.clone(),
            torsion: e.torsion.iter().zip(&self.torsion).map(|(x, d)| x.mod_floor(d)).collect(),
        }
    }

    pub fn add(&self, a: &FgElement, b: &FgElement) -> FgElement {
        self.reduce(&FgElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        })
    }

    /// Free coordinates of a rational ambient vector (the rationalized quotient).
    pub fn free_coords(&self, x: &[BigRational]) -> QVec {
        (0..self.free_rank)
            .map(|i| iqdot(&self.quotient.row(i), x))
            .collect()
    }

    /// Whether an ambient vector maps to zero.
    pub fn is_relation(&self, v: &[BigInt]) -> bool {
        self.project(v).is_zero()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    /// Coordinates of the element `free || torsion`, used for enumeration.
    pub fn element(&self, free: IVec, torsion: IVec) -> FgElement {
        self.reduce(&FgElement { free, torsion })
    }
}

/// A finite group of lattice automorphisms given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeAction {
    pub rank: usize,
    pub generators: Vec<IntegerMatrix>,
}

impl LatticeAction {
    pub fn new(rank: usize, generators: Vec<IntegerMatrix>) -> Result<Self> {
        for g in &generators {
            if g.rows() != rank || g.cols() != rank {
                return Err(Error::InvalidAction(format!("generator is {}x{}, expected {rank}x{rank}", g.rows(), g.cols())));
            }
            if !g.is_unimodular() {
                return Err(Error::InvalidAction("generator has determinant other than +-1".into()));
            }
        }
        let a = LatticeAction { rank, generators };
        a.closure(CLOSURE_CAP)?;
        Ok(a)
    }

    pub fn trivial(rank: usize) -> Self {
        LatticeAction { rank, generators: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        let id = IntegerMatrix::identity(self.rank);
        self.generators.iter().all(|g| *g == id)
    }

    /// All group elements by breadth-first closure.
    pub fn closure(&self, cap: usize) -> Result<Vec<IntegerMatrix>> {
        let id = IntegerMatrix::identity(self.rank);
        let mut seen: HashSet<IntegerMatrix> = HashSet::new();
        let mut out = vec![id.clone()];
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.mul(&x);
                if seen.insert(y.clone()) {
                    if out.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }

    /// Contragredient action `g -> g^{-T}`.
    pub fn dual(&self) -> LatticeAction {
        LatticeAction {
            rank: self.rank,
            generators: self
                .generators
                .iter()
                .map(|g| g.unimodular_inverse().expect("unimodular").transpose())
                .collect(),
        }
    }

    /// Columns `(g - 1) e_i` for all generators.
    pub fn relation_columns(&self) -> Vec<IVec> {
        let id = IntegerMatrix::identity(self.rank);
        self.generators.iter().flat_map(|g| g.sub(&id).col_vecs()).collect()
    }

    /// Stacked `(g - 1)` blocks.
    pub fn stacked_differences(&self) -> IntegerMatrix {
        let id = IntegerMatrix::identity(self.rank);
        let blocks: Vec<IntegerMatrix> = self.generators.iter().map(|g| g.sub(&id)).collect();
        if blocks.is_empty() {
            IntegerMatrix::zeros(0, self.rank)
        } else {
            IntegerMatrix::vstack(&blocks)
        }
    }
}

/// `L / <x - g x>` for the lattice `L = Z^rank`.
pub fn coinvariants(lattice_rank: usize, action: &LatticeAction) -> FgAbelianGroup {
    quotient_coinvariants(lattice_rank, &[], action)
}

/// `L / (<extra> + <x - g x>)`: coinvariants of a quotient lattice.
pub fn quotient_coinvariants(lattice_rank: usize, extra: &[IVec], action: &LatticeAction) -> FgAbelianGroup {
    let mut cols: Vec<IVec> = extra.to_vec();
    cols.extend(action.relation_columns());
    let rel = if cols.is_empty() {
        IntegerMatrix::zeros(lattice_rank, 0)
    } else {
        IntegerMatrix::from_cols(lattice_rank, &cols)
    };
    FgAbelianGroup::from_relations(lattice_rank, &rel)
}

/// Basis of the fixed sublattice `{x : g x = x for all g}`; always saturated.
pub fn invariants_saturated(lattice_rank: usize, action: &LatticeAction) -> Vec<IVec> {
    let stacked = action.stacked_differences();
    if stacked.rows() == 0 {
        return (0..lattice_rank)
            .map(|i| (0..lattice_rank).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    saturated_kernel(&stacked)
}

/// Whether the span of `basis` is saturated in `Z^n`.
pub fn is_saturated(n: usize, basis: &[IVec]) -> bool {
    if basis.is_empty() {
        return true;
    }
    let snf = smith_normal_form(&IntegerMatrix::from_cols(n, basis));
    snf.diagonal().iter().all(|d| d.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_i64(rows)
    }

    fn gcd_all(a: &IntegerMatrix) -> BigInt {
        let mut g = BigInt::zero();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                g = g.gcd(a.get(i, j));
            }
        }
        g
    }

    fn check(a: &IntegerMatrix) -> Snf {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn snf_identity() {
        assert_eq!(check(&m(&[vec![1, 0], vec![0, 1]])).diagonal(), ivec(&[1, 1]));
    }

    #[test]
    fn snf_two_by_two_against_minors() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let d = check(&a).diagonal();
        let d1 = gcd_all(&a);
        let d1d2 = a.det().abs();
        assert_eq!(d[0], d1);
        assert_eq!(&d[0] * &d[1], d1d2);
        assert_eq!(d, ivec(&[2, 4]));
    }

    #[test]
    fn snf_zero() {
        assert_eq!(check(&m(&[vec![0, 0], vec![0, 0]])).diagonal(), ivec(&[0, 0]));
    }

    #[test]
    fn snf_rectangular() {
        let a = m(&[vec![3, 6, 9], vec![12, 15, 18]]);
        let s = check(&a);
        assert_eq!(s.diagonal(), ivec(&[3, 9]));
    }

    #[test]
    fn coinvariants_trivial_and_swap() {
        let g = coinvariants(2, &LatticeAction::trivial(2));
        assert_eq!((g.free_rank, g.torsion.len()), (2, 0));
        let swap = LatticeAction::new(2, vec![m(&[vec![0, 1], vec![1, 0]])]).unwrap();
        let g = coinvariants(2, &swap);
        assert_eq!((g.free_rank, g.torsion.len()), (1, 0));
        assert_eq!(g.project(&ivec(&[1, 0])), g.project(&ivec(&[0, 1])));
    }

    #[test]
    fn type_a_cartan_quotient_is_cyclic() {
        for n in 2..=5usize {
            let cartan: Vec<IVec> = (0..n - 1)
                .map(|i| {
                    (0..n - 1)
                        .map(|j| BigInt::from(if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 }))
                        .collect()
                })
                .collect();
            let g = quotient_coinvariants(n - 1, &cartan, &LatticeAction::trivial(n - 1));
            let oracle = smith_normal_form(&IntegerMatrix::from_cols(n - 1, &cartan));
            let nontrivial: Vec<BigInt> = oracle.diagonal().into_iter().filter(|d| !d.is_one()).collect();
            assert_eq!(g.free_rank, 0);
            assert_eq!(g.torsion, nontrivial);
            assert_eq!(g.torsion, vec![BigInt::from(n)]);
        }
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(invariants_saturated(3, &LatticeAction::trivial(3)).len(), 3);
        let swap = LatticeAction::new(2, vec![m(&[vec![0, 1], vec![1, 0]])]).unwrap();
        let inv = invariants_saturated(2, &swap);
        assert_eq!(inv.len(), 1);
        assert!(inv[0] == ivec(&[1, 1]) || inv[0] == ivec(&[-1, -1]));
        let rot3 = LatticeAction::new(2, vec![m(&[vec![0, -1], vec![1, -1]])]).unwrap();
        assert!(invariants_saturated(2, &rot3).is_empty());
        let g = rot3.stacked_differences();
        assert_eq!(smith_normal_form(&g).rank(), 2);
    }

    #[test]
    fn closure_orders() {
        let rot3 = LatticeAction::new(2, vec![m(&[vec![0, -1], vec![1, -1]])]).unwrap();
        assert_eq!(rot3.closure(CLOSURE_CAP).unwrap().len(), 3);
        let bad = LatticeAction::new(2, vec![m(&[vec![2, 0], vec![0, 1]])]);
        assert!(bad.is_err());
        let infinite = LatticeAction { rank: 2, generators: vec![m(&[vec![1, 1], vec![0, 1]])] };
        assert!(matches!(infinite.closure(50), Err(Error::CapExceeded(50))));
    }

    #[test]
    fn hermite_rows() {
        let (h, t) = row_hermite(&m(&[vec![2, 2, 1, 1], vec![1, 1, 0, 0]]));
        assert_eq!(h, m(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]));
        assert!(t.is_unimodular());
    }

    #[test]
    fn group_section_and_quotient() {
        let rel = IntegerMatrix::from_cols(3, &[ivec(&[2, 0, 0]), ivec(&[0, 1, -1])]);
        let g = FgAbelianGroup::from_relations(3, &rel);
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.torsion, ivec(&[2]));
        let q = g.quotient.mul(&g.section);
        assert_eq!(q, IntegerMatrix::identity(2));
        for c in rel.col_vecs() {
            assert!(g.is_relation(&c));
        }
    }

    #[test]
    fn integer_solutions() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_integer(&a, &qvec(&[4, 9])), Some(ivec(&[2, 3])));
        assert_eq!(solve_integer(&a, &qvec(&[1, 0])), None);
    }
}
