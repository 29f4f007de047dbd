//! Named groups and parameters compiled into the library.

use crate::error::{Error, Result};
use crate::lattice::{IVec, IntegerMatrix};
use crate::root_datum::{BasedRootDatum, GaloisAction, Group};

pub const GROUP_PRESETS: &[&str] = &[
    "gl1", "gl2", "gl3", "gl4", "gl5", "gl6", "sl2", "sl3", "sl4", "pgl2", "sp4", "so4", "so5", "so6", "gl2xgl2-swap",
    "u3", "res-torus",
];

fn e(n: usize, i: usize) -> IVec {
    (0..n).map(|j| (i == j) as i64).map(Into::into).collect()
}

fn diff(n: usize, i: usize, j: usize) -> IVec {
    (0..n).map(|k| (k == i) as i64 - (k == j) as i64).map(Into::into).collect()
}

fn sum(n: usize, i: usize, j: usize) -> IVec {
    (0..n).map(|k| (k == i) as i64 + (k == j) as i64).map(Into::into).collect()
}

fn scale(v: IVec, k: i64) -> IVec {
    v.into_iter().map(|x| x * k).collect()
}

pub fn gl_datum(n: usize) -> BasedRootDatum {
    let s: Vec<IVec> = (0..n.saturating_sub(1)).map(|i| diff(n, i, i + 1)).collect();
    BasedRootDatum::from_simple(&format!("GL{n}"), n, &s, &s).expect("GL_n datum")
}

/// Simply connected `SL_n` on the weight lattice.
pub fn sl_datum(n: usize) -> BasedRootDatum {
    let r = n - 1;
    let roots: Vec<IVec> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 })
                .map(Into::into)
                .collect()
        })
        .collect();
    let coroots: Vec<IVec> = (0..r).map(|i| e(r, i)).collect();
    BasedRootDatum::from_simple(&format!("SL{n}"), r, &roots, &coroots).expect("SL_n datum")
}

fn perm_matrix(n: usize, p: &[usize]) -> IntegerMatrix {
    let cols: Vec<IVec> = (0..n).map(|j| e(n, p[j])).collect();
    IntegerMatrix::from_cols(n, &cols)
}

pub fn group_datum(name: &str) -> Result<(BasedRootDatum, GaloisAction)> {
    let triv = GaloisAction::trivial();
    let d = match name {
        "gl1" | "gl2" | "gl3" | "gl4" | "gl5" | "gl6" => gl_datum(name[2..].parse().expect("digit")),
        "sl2" | "sl3" | "sl4" => sl_datum(name[2..].parse().expect("digit")),
        "pgl2" => BasedRootDatum::from_simple("PGL2", 1, &[vec![1.into()]], &[vec![2.into()]])?,
        "sp4" => BasedRootDatum::from_simple("Sp4", 2, &[diff(2, 0, 1), scale(e(2, 1), 2)], &[diff(2, 0, 1), e(2, 1)])?,
        "so5" => BasedRootDatum::from_simple("SO5", 2, &[diff(2, 0, 1), e(2, 1)], &[diff(2, 0, 1), scale(e(2, 1), 2)])?,
        "so4" => {
            let s = [diff(2, 0, 1), sum(2, 0, 1)];
            BasedRootDatum::from_simple("SO4", 2, &s, &s)?
        }
        "so6" => {
            let s = [diff(3, 0, 1), diff(3, 1, 2), sum(3, 1, 2)];
            BasedRootDatum::from_simple("SO6", 3, &s, &s)?
        }
        "gl2xgl2-swap" => {
            let s = [diff(4, 0, 1), diff(4, 2, 3)];
            let d = BasedRootDatum::from_simple("GL2xGL2", 4, &s, &s)?;
            return Ok((d, GaloisAction { generators: vec![perm_matrix(4, &[2, 3, 0, 1])] }));
        }
        "u3" => {
            let d = gl_datum(3);
            let flip = IntegerMatrix::from_i64(&[vec![0, 0, -1], vec![0, -1, 0], vec![-1, 0, 0]]);
            return Ok((BasedRootDatum { name: "U3".into(), ..d }, GaloisAction { generators: vec![flip] }));
        }
        "res-torus" => {
            let d = BasedRootDatum::from_simple("ResT", 2, &[], &[])?;
            return Ok((d, GaloisAction { generators: vec![perm_matrix(2, &[1, 0])] }));
        }
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Ok((d, triv))
}

pub fn group(name: &str) -> Result<Group> {
    let (d, a) = group_datum(name)?;
    Group::new(d, a)
}
