//! Exact linear algebra over the rationals on row-major `Vec<QVec>` matrices.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::QVec;

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &[QVec], ncols: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut a: Vec<QVec> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[QVec], ncols: usize) -> usize {
    rref(m, ncols).1.len()
}

/// Basis of the right kernel {x : m x = 0}.
pub fn kernel(m: &[QVec], ncols: usize) -> Vec<QVec> {
    let (r, pivots) = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(m: &[QVec]) -> Option<Vec<QVec>> {
    let n = m.len();
    let aug: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, 2 * n);
    if n > 0 && (pivots.len() < n || pivots[n - 1] >= n) {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Some solution of `a x = b`, if one exists.
pub fn solve(a: &[QVec], ncols: usize, b: &[BigRational]) -> Option<QVec> {
    let aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[row][ncols].clone();
    }
    Some(x)
}

pub fn transpose(m: &[QVec], ncols: usize) -> Vec<QVec> {
    (0..ncols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &[QVec], b: &[QVec], bcols: usize) -> Vec<QVec> {
    a.iter()
        .map(|row| {
            (0..bcols)
                .map(|j| {
                    row.iter().zip(b).fold(BigRational::zero(), |acc, (x, brow)| {
                        if x.is_zero() {
                            acc
                        } else {
                            acc + x * &brow[j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[QVec], v: &[BigRational]) -> QVec {
    a.iter()
        .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Basis (as vectors) of the span of the given vectors, keeping the earliest independent ones.
pub fn independent_subset(vs: &[QVec], dim: usize) -> Vec<QVec> {
    let mut kept: Vec<QVec> = Vec::new();
    for v in vs {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if rank(&trial, dim) > kept.len() {
            kept.push(v.clone());
        }
    }
    kept
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[QVec], v: &[BigRational], dim: usize) -> bool {
    let mut trial = basis.to_vec();
    let r0 = rank(&trial, dim);
    trial.push(v.to_vec());
    rank(&trial, dim) == r0
}
