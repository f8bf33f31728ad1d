//! Exact dense linear algebra over ℚ(i).

use num_traits::{One, Zero};

use crate::arith::GaussianRational as Q;

pub type Mat = Vec<Vec<Q>>;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for k in 0..rows {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[k].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of `{v : m v = 0}`, one vector per free column (that entry set to 1).
pub fn nullspace(m: &Mat, cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        out.push(v);
    }
    out
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut aug: Mat = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|c| if c == r { Q::one() } else { Q::zero() }));
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(k, &p)| k != p) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}
