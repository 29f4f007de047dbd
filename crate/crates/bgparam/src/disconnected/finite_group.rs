//! Small finite groups by multiplication table: conjugacy classes, character
//! tables (Dixon's modular method), explicit simple modules and cocycles.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::cyclotomic::Cyclo;
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    /// `table[a][b]` is the index of `a·b`; element 0 is the identity.
    pub table: Vec<Vec<usize>>,
    /// Indices of the generators.
    pub generators: Vec<usize>,
}

impl FiniteGroup {
    /// Closure of `gens` under `mul`, breadth-first from `identity`.
    pub fn from_generators<T, F>(identity: T, gens: &[T], mul: F) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let y = mul(&elems[i], g);
                if !index.contains_key(&y) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::CapExceeded(MAX_ORDER));
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let table = elems.iter().map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect()).collect();
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok((FiniteGroup { table, generators }, elems))
    }

    pub fn trivial() -> Self {
        FiniteGroup { table: vec![vec![0]], generators: Vec::new() }
    }

    /// Cyclic group of order `n`, generated by element 1.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup { table, generators: if n > 1 { vec![1] } else { Vec::new() } }
    }

    /// Symmetric group on `n` letters.
    pub fn symmetric(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        let mut gens = Vec::new();
        if n > 1 {
            let mut t = id.clone();
            t.swap(0, 1);
            gens.push(t);
            let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(c);
        }
        Self::from_generators(id, &gens, |a, b| b.iter().map(|&i| a[i]).collect()).expect("small symmetric group").0
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.table[a].iter().position(|&x| x == 0).expect("group element has an inverse")
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by least member (identity first).
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let c: BTreeSet<usize> = (0..n).map(|g| self.mul(self.mul(g, a), self.inv(g))).collect();
            for &x in &c {
                class_of[x] = out.len();
            }
            out.push(c.into_iter().collect());
        }
        out
    }

    pub fn class_index(&self, classes: &[Vec<usize>]) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (k, c) in classes.iter().enumerate() {
            for &x in c {
                idx[x] = k;
            }
        }
        idx
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
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

    /// The subgroup on `elems` (which must be closed) as a group in its own right.
    pub fn restrict(&self, elems: &[usize]) -> FiniteGroup {
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        assert_eq!(elems.first(), Some(&0), "subgroup must list the identity first");
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        let generators = (1..elems.len()).collect();
        FiniteGroup { table, generators }
    }
}

/// Character table with values in `Q(ζ_e)`, `e` the exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub classes: Vec<Vec<usize>>,
    /// `values[χ][k]`, rows sorted by degree then by values.
    pub values: Vec<Vec<Cyclo>>,
    pub conductor: u64,
}

impl CharacterTable {
    pub fn degree(&self, chi: usize) -> usize {
        self.values[chi][0].to_rational().expect("degree is rational").to_integer().try_into().expect("small degree")
    }

    pub fn value(&self, g: &FiniteGroup, chi: usize, x: usize) -> Cyclo {
        let idx = g.class_index(&self.classes);
        self.values[chi][idx[x]].clone()
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("primitive root exists")
}

/// Kernel over `F_p` of a square matrix restricted to a subspace basis.
fn kernel_mod(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let iv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * iv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..ncols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Character table by simultaneous diagonalization of class matrices mod p.
pub fn character_table(g: &FiniteGroup) -> CharacterTable {
    let n = g.order() as u64;
    let classes = g.classes();
    let r = classes.len();
    let cidx = g.class_index(&classes);
    let e = g.exponent() as u64;
    let p = (1..).map(|k| k * e + 1).find(|&q| q > 2 * n && is_prime(q)).expect("Dirichlet");
    let z = pow_mod(primitive_root(p), (p - 1) / e, p);

    // coef[j][i][k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let mut coef = vec![vec![vec![0u64; r]; r]; r];
    for (k, &zk) in reps.iter().enumerate() {
        for x in 0..g.order() {
            let y = g.mul(g.inv(x), zk);
            coef[cidx[y]][cidx[x]][k] += 1;
        }
    }

    // simultaneous eigenspaces, as bases of row vectors in F_p^r
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| (i == j) as u64).collect()).collect()];
    for j in 0..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            // A_j v with (A_j)_{ik} = coef[j][i][k]; find λ with (A_j - λ)(B c) = 0
            let apply = |v: &[u64]| -> Vec<u64> {
                (0..r).map(|i| (0..r).map(|k| coef[j][i][k] * v[k] % p).sum::<u64>() % p).collect()
            };
            let images: Vec<Vec<u64>> = space.iter().map(|b| apply(b)).collect();
            let d = space.len();
            let mut found = 0;
            for lam in 0..p {
                // rows: coordinates i, columns: basis vectors
                let rows: Vec<Vec<u64>> = (0..r)
                    .map(|i| (0..d).map(|t| (images[t][i] + p - lam * space[t][i] % p) % p).collect())
                    .collect();
                let ker = kernel_mod(&rows, d, p);
                if ker.is_empty() {
                    continue;
                }
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| (0..r).map(|i| (0..d).map(|t| c[t] * space[t][i] % p).sum::<u64>() % p).collect())
                    .collect();
                found += sub.len();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            assert_eq!(found, d, "class matrices must be simultaneously diagonalizable");
        }
        spaces = next;
    }
    assert!(spaces.iter().all(|s| s.len() == 1), "class sums separate the characters");

    let inv_class: Vec<usize> = reps.iter().map(|&x| cidx[g.inv(x)]).collect();
    let mut values = Vec::new();
    for space in spaces {
        let v = &space[0];
        let s0 = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|x| x * s0 % p).collect();
        let mut sum = 0u64;
        for k in 0..r {
            let term = omega[k] * omega[inv_class[k]] % p * inv_mod(classes[k].len() as u64 % p, p) % p;
            sum = (sum + term) % p;
        }
        let deg2 = n % p * inv_mod(sum, p) % p;
        let deg = (1..=n).find(|d| d * d % p == deg2).expect("degree squared is a square");
        let chi_mod: Vec<u64> =
            (0..r).map(|k| omega[k] * deg % p * inv_mod(classes[k].len() as u64 % p, p) % p).collect();
        let row: Vec<Cyclo> = reps
            .iter()
            .map(|&x| {
                let o = g.element_order(x) as u64;
                let zo = pow_mod(z, e / o, p);
                let mut val = Cyclo::zero(e);
                for l in 0..o {
                    let mut m = 0u64;
                    for t in 0..o {
                        let xt = cidx[g.pow(x, t as usize)];
                        m = (m + chi_mod[xt] * pow_mod(zo, (o - l * t % o) % o, p)) % p;
                    }
                    m = m * inv_mod(o % p, p) % p;
                    if m != 0 {
                        val = val.add(&Cyclo::zeta(e, (l * (e / o)) as i64).scale(&BigRational::from_integer(m.into())));
                    }
                }
                val
            })
            .collect();
        values.push(row);
    }
    values.sort_by(|a, b| {
        let da = a[0].to_rational().expect("degree");
        let db = b[0].to_rational().expect("degree");
        da.cmp(&db).then_with(|| format!("{:?}", a.iter().map(|c| c.to_string()).collect::<Vec<_>>()).cmp(&format!(
            "{:?}",
            b.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        )))
    });
    // put the trivial character first among degree-one characters
    if let Some(pos) = values.iter().position(|row| row.iter().all(|c| *c == Cyclo::one(1))) {
        let t = values.remove(pos);
        values.insert(0, t);
    }
    CharacterTable { classes, values, conductor: e }
}

/// 2-cocycle with values `ζ_n^{exponents[a][b]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle {
    pub n: u64,
    pub exponents: Vec<Vec<i64>>,
}

impl Cocycle {
    pub fn trivial(order: usize) -> Self {
        Cocycle { n: 1, exponents: vec![vec![0; order]; order] }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().flatten().all(|&x| x.rem_euclid(self.n as i64) == 0)
    }

    pub fn check(&self, g: &FiniteGroup) -> Result<()> {
        let m = self.n as i64;
        let c = |a: usize, b: usize| self.exponents[a][b];
        let o = g.order();
        if self.exponents.len() != o || self.exponents.iter().any(|r| r.len() != o) {
            return Err(Error::InvalidParameter("cocycle table has the wrong size".into()));
        }
        for a in 0..o {
            for b in 0..o {
                for d in 0..o {
                    let lhs = c(a, b) + c(g.mul(a, b), d);
                    let rhs = c(b, d) + c(a, g.mul(b, d));
                    if (lhs - rhs).rem_euclid(m) != 0 {
                        return Err(Error::InvalidParameter("cocycle identity fails".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `f` with `c(a,b) = f(a) f(b) / f(ab)`, as exponents of `ζ_N`, found by search
    /// over the values on generators.
    pub fn trivialize(&self, g: &FiniteGroup) -> Option<(u64, Vec<i64>)> {
        let big = self.n * g.order() as u64;
        let scale = (big / self.n) as i64;
        let gens = &g.generators;
        let total = (big as usize).checked_pow(gens.len() as u32)?;
        if total > 1_000_000 {
            return None;
        }
        'search: for code in 0..total {
            let mut f = vec![None; g.order()];
            f[0] = Some(scale * self.exponents[0][0]);
            let mut rest = code;
            let mut queue = VecDeque::from([0usize]);
            let gen_vals: Vec<i64> = gens
                .iter()
                .map(|_| {
                    let v = (rest % big as usize) as i64;
                    rest /= big as usize;
                    v
                })
                .collect();
            while let Some(x) = queue.pop_front() {
                for (gi, &s) in gens.iter().enumerate() {
                    let y = g.mul(x, s);
                    // f(xs) = f(x) f(s) / c(x,s)
                    let v = f[x].expect("visited") + gen_vals[gi] - scale * self.exponents[x][s];
                    match f[y] {
                        None => {
                            f[y] = Some(v);
                            queue.push_back(y);
                        }
                        Some(old) if (old - v).rem_euclid(big as i64) != 0 => continue 'search,
                        _ => {}
                    }
                }
            }
            for (gi, &s) in gens.iter().enumerate() {
                if (f[s].expect("generator visited") - gen_vals[gi]).rem_euclid(big as i64) != 0 {
                    continue 'search;
                }
            }
            let f: Vec<i64> = f.into_iter().map(|v| v.expect("connected").rem_euclid(big as i64)).collect();
            let ok = (0..g.order()).all(|a| {
                (0..g.order()).all(|b| (scale * self.exponents[a][b] - f[a] - f[b] + f[g.mul(a, b)]).rem_euclid(big as i64) == 0)
            });
            if ok {
                return Some((big, f));
            }
        }
        None
    }
}

/// Explicit simple module: a matrix for every group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleModule {
    pub dim: usize,
    /// `matrices[x]` is the action of element `x`, row-major.
    pub matrices: Vec<Vec<Vec<Cyclo>>>,
    /// Trace of each element.
    pub character: Vec<Cyclo>,
}

impl SimpleModule {
    pub fn is_trivial(&self) -> bool {
        self.dim == 1 && self.character.iter().all(|c| *c == Cyclo::one(1))
    }
}

fn cmat_mul(a: &[Vec<Cyclo>], b: &[Vec<Cyclo>], n: u64) -> Vec<Vec<Cyclo>> {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).fold(Cyclo::zero(n), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

/// Row reduction over a cyclotomic field; returns (reduced rows, pivots).
pub fn cyclo_rref(m: &[Vec<Cyclo>], ncols: usize) -> (Vec<Vec<Cyclo>>, Vec<usize>) {
    let mut a = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let iv = a[r][c].inv().expect("nonzero pivot");
        a[r] = a[r].iter().map(|x| x.mul(&iv)).collect();
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Explicit simple modules of the group algebra twisted by a trivializable cocycle.
pub fn simple_modules(g: &FiniteGroup, cocycle: Option<&Cocycle>) -> Result<Vec<SimpleModule>> {
    if g.order() > MAX_ORDER {
        return Err(Error::CapExceeded(MAX_ORDER));
    }
    let twist = match cocycle {
        Some(c) if !c.is_trivial() => {
            c.check(g)?;
            Some(c.trivialize(g).ok_or(Error::CocycleNotTrivializable)?)
        }
        _ => None,
    };
    let table = character_table(g);
    let mut out = Vec::new();
    for chi in 0..table.values.len() {
        let mut m = module_for_character(g, &table, chi)?;
        if let Some((big, f)) = &twist {
            for x in 0..g.order() {
                let s = Cyclo::zeta(*big, f[x]);
                m.matrices[x] = m.matrices[x].iter().map(|row| row.iter().map(|v| v.mul(&s)).collect()).collect();
                m.character[x] = m.character[x].mul(&s);
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Spin-up of `e_χ ε_ψ` inside the group algebra, where `ψ` is a linear character
/// of a cyclic subgroup occurring once in `χ`.
fn module_for_character(g: &FiniteGroup, table: &CharacterTable, chi: usize) -> Result<SimpleModule> {
    let n = table.conductor;
    let o = g.order();
    let deg = table.degree(chi);
    let chiv: Vec<Cyclo> = (0..o).map(|x| table.value(g, chi, x)).collect();
    let ord = BigRational::from_integer((o as i64).into());

    // e_χ = χ(1)/|G| Σ χ(x⁻¹) x
    let e_chi: Vec<Cyclo> = (0..o)
        .map(|x| chiv[g.inv(x)].scale(&(BigRational::from_integer((deg as i64).into()) / &ord)))
        .collect();

    let mut gen_vec: Option<Vec<Cyclo>> = None;
    'outer: for h in 0..o {
        let cyc = g.subgroup(&[h]);
        let m = cyc.len();
        for k in 0..m as i64 {
            // ψ(h^t) = ζ_m^{kt}
            let psi = |t: usize| Cyclo::zeta(m as u64, k * t as i64).lift(n);
            let mult = (0..m).fold(Cyclo::zero(n), |acc, t| acc.add(&chiv[g.pow(h, t)].mul(&psi(t).conj())));
            if mult != Cyclo::from_int(n, m as i64) {
                continue;
            }
            let mut eps = vec![Cyclo::zero(n); o];
            let inv_m = BigRational::new(1.into(), (m as i64).into());
            for t in 0..m {
                eps[g.pow(h, t)] = psi(t).conj().scale(&inv_m);
            }
            let v = group_algebra_mul(g, &e_chi, &eps, n);
            if v.iter().any(|c| !c.is_zero()) {
                gen_vec = Some(v);
                break 'outer;
            }
        }
    }
    let v = gen_vec.ok_or_else(|| Error::Unsupported("no cyclic subgroup isolates this character".into()))?;

    // spin up under left multiplication by generators
    let mut basis: Vec<Vec<Cyclo>> = Vec::new();
    let mut queue = VecDeque::from([v]);
    while let Some(w) = queue.pop_front() {
        let mut trial = basis.clone();
        trial.push(w.clone());
        if cyclo_rref(&trial, o).1.len() > basis.len() {
            basis.push(w.clone());
            for &s in &g.generators {
                queue.push_back(left_mul(g, s, &w));
            }
        }
        if basis.len() > deg {
            break;
        }
    }
    if basis.len() != deg {
        return Err(Error::Unsupported("spin-up produced the wrong dimension".into()));
    }

    // coordinates of x·b_i in the basis
    let bt: Vec<Vec<Cyclo>> = (0..o).map(|c| basis.iter().map(|b| b[c].clone()).collect()).collect();
    let mut matrices = Vec::with_capacity(o);
    for x in 0..o {
        let mut cols = Vec::with_capacity(deg);
        for b in &basis {
            let img = left_mul(g, x, b);
            cols.push(solve_cyclo(&bt, deg, &img).ok_or_else(|| Error::Unsupported("module not closed".into()))?);
        }
        let mat: Vec<Vec<Cyclo>> = (0..deg).map(|i| (0..deg).map(|j| cols[j][i].clone()).collect()).collect();
        matrices.push(mat);
    }
    let character: Vec<Cyclo> =
        matrices.iter().map(|m| (0..deg).fold(Cyclo::zero(n), |acc, i| acc.add(&m[i][i]))).collect();
    if character != chiv {
        return Err(Error::Unsupported("constructed module has the wrong character".into()));
    }
    let module = SimpleModule { dim: deg, matrices, character };
    if commutant_dim(g, &module, n) != 1 {
        return Err(Error::Unsupported("constructed module is not simple".into()));
    }
    Ok(module)
}

fn group_algebra_mul(g: &FiniteGroup, a: &[Cyclo], b: &[Cyclo], n: u64) -> Vec<Cyclo> {
    let mut out = vec![Cyclo::zero(n); g.order()];
    for (x, ax) in a.iter().enumerate() {
        if ax.is_zero() {
            continue;
        }
        for (y, by) in b.iter().enumerate() {
            if !by.is_zero() {
                let z = g.mul(x, y);
                out[z] = out[z].add(&ax.mul(by));
            }
        }
    }
    out
}

fn left_mul(g: &FiniteGroup, s: usize, v: &[Cyclo]) -> Vec<Cyclo> {
    let mut out = vec![Cyclo::zero(v[0].n); g.order()];
    for (y, c) in v.iter().enumerate() {
        out[g.mul(s, y)] = c.clone();
    }
    out
}

fn solve_cyclo(a: &[Vec<Cyclo>], ncols: usize, b: &[Cyclo]) -> Option<Vec<Cyclo>> {
    let aug: Vec<Vec<Cyclo>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = cyclo_rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let n = b[0].n;
    let mut x = vec![Cyclo::zero(n); ncols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[row][ncols].clone();
    }
    Some(x)
}

/// Dimension of `{X : X ρ(s) = ρ(s) X for all generators s}`.
pub fn commutant_dim(g: &FiniteGroup, m: &SimpleModule, n: u64) -> usize {
    let d = m.dim;
    let mut rows = Vec::new();
    for &s in &g.generators {
        let r = &m.matrices[s];
        // (X r - r X)_{ij} = Σ_k X_{ik} r_{kj} - r_{ik} X_{kj}
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![Cyclo::zero(n); d * d];
                for k in 0..d {
                    row[i * d + k] = row[i * d + k].add(&r[k][j]);
                    row[k * d + j] = row[k * d + j].sub(&r[i][k]);
                }
                rows.push(row);
            }
        }
    }
    d * d - cyclo_rref(&rows, d * d).1.len()
}

/// Multiply explicit matrices; used by callers composing module actions.
pub fn module_product(m: &SimpleModule, a: usize, b: usize) -> Vec<Vec<Cyclo>> {
    let n = m.character.first().map_or(1, |c| c.n);
    cmat_mul(&m.matrices[a], &m.matrices[b], n)
}

/// `Σ dim² = |G|` check.
pub fn dimension_identity_holds(g: &FiniteGroup, modules: &[SimpleModule]) -> bool {
    modules.iter().map(|m| m.dim * m.dim).sum::<usize>() == g.order()
}

/// Inner product `⟨χ, ψ⟩` of two class functions given per element.
pub fn inner_product(g: &FiniteGroup, a: &[Cyclo], b: &[Cyclo]) -> Cyclo {
    let s = (0..g.order()).fold(Cyclo::zero(1), |acc, x| acc.add(&a[x].mul(&b[x].conj())));
    s.scale(&BigRational::new(BigRational::one().to_integer(), (g.order() as i64).into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(g: &FiniteGroup) -> Vec<usize> {
        let mut d: Vec<usize> = simple_modules(g, None).unwrap().iter().map(|m| m.dim).collect();
        d.sort();
        d
    }

    #[test]
    fn cyclic_and_symmetric() {
        assert_eq!(dims(&FiniteGroup::cyclic(2)), vec![1, 1]);
        assert_eq!(dims(&FiniteGroup::symmetric(3)), vec![1, 1, 2]);
        assert_eq!(dims(&FiniteGroup::symmetric(4)), vec![1, 1, 2, 3, 3]);
        assert_eq!(dims(&FiniteGroup::cyclic(5)), vec![1; 5]);
    }

    #[test]
    fn orthogonality() {
        for g in [FiniteGroup::symmetric(3), FiniteGroup::symmetric(4), FiniteGroup::cyclic(6)] {
            let mods = simple_modules(&g, None).unwrap();
            assert!(dimension_identity_holds(&g, &mods));
            for (i, a) in mods.iter().enumerate() {
                for (j, b) in mods.iter().enumerate() {
                    let ip = inner_product(&g, &a.character, &b.character);
                    assert_eq!(ip, Cyclo::from_int(1, (i == j) as i64));
                }
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        assert_eq!(module_product(a, x, y), a.matrices[g.mul(x, y)]);
                    }
                }
            }
        }
    }

    #[test]
    fn dihedral_group() {
        let r = vec![1usize, 2, 3, 0];
        let s = vec![0usize, 3, 2, 1];
        let (g, _) = FiniteGroup::from_generators(vec![0, 1, 2, 3], &[r, s], |a, b| b.iter().map(|&i| a[i]).collect())
            .unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(dims(&g), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn cyclic_cocycles_trivialize() {
        for n in 2..6usize {
            let g = FiniteGroup::cyclic(n);
            // c(a,b) = ζ_n^{a b} is a coboundary-twisted symmetric cocycle on Z/n
            let c = Cocycle { n: n as u64, exponents: (0..n).map(|a| (0..n).map(|b| (a * b) as i64).collect()).collect() };
            if c.check(&g).is_err() {
                continue;
            }
            let (big, f) = c.trivialize(&g).expect("cyclic groups have trivial H²");
            for a in 0..n {
                for b in 0..n {
                    let lhs = (big / c.n) as i64 * c.exponents[a][b];
                    assert_eq!((lhs - f[a] - f[b] + f[g.mul(a, b)]).rem_euclid(big as i64), 0);
                }
            }
            let mods = simple_modules(&g, Some(&c)).unwrap();
            assert_eq!(mods.len(), n);
            assert!(mods.iter().all(|m| m.dim == 1));
        }
    }

    #[test]
    fn carry_cocycle_on_cyclic_group() {
        // the carry cocycle c(a,b) = ζ_2^{[a+b ≥ n]} on Z/n
        let n = 4;
        let g = FiniteGroup::cyclic(n);
        let c = Cocycle { n: 2, exponents: (0..n).map(|a| (0..n).map(|b| (a + b >= n) as i64).collect()).collect() };
        c.check(&g).unwrap();
        let mods = simple_modules(&g, Some(&c)).unwrap();
        assert_eq!(mods.len(), 4);
        for m in &mods {
            for a in 0..n {
                for b in 0..n {
                    let lhs = m.matrices[a][0][0].mul(&m.matrices[b][0][0]);
                    let rhs = Cyclo::zeta(2, c.exponents[a][b]).mul(&m.matrices[g.mul(a, b)][0][0]);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
