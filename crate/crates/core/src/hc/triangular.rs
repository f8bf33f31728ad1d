//! The triangular decomposition `so_n = n ⊕ u ⊕ a ⊕ t_m ⊕ ū ⊕ n̄`.

use num_traits::{One, Zero};

use crate::arith::GaussianRational as Q;
use crate::uea::so::{dim, so_algebra};
use crate::uea::{Element, Generator};

use super::linalg::{nullspace, Mat};

fn unit(d: usize, k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[k] = Q::one();
    v
}

fn letter(j: usize, i: usize) -> usize {
    Generator::new(j, i).expect("valid generator").letter() as usize
}

/// `c·A_{j,i}` as a coordinate vector of length `d`.
fn coord(d: usize, j: usize, i: usize, c: Q) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[letter(j, i)] = c;
    v
}

fn add_vec(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn to_element(rank: usize, v: &[Q]) -> Element {
    let mut out = Element::zero(rank);
    for (a, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out += &Element::generator(rank, Generator::from_letter(a as u8)).scale(c);
        }
    }
    out
}

/// Coordinates of `[x, y]` for coordinate vectors in so_rank.
pub fn bracket_coords(rank: usize, x: &[Q], y: &[Q]) -> Vec<Q> {
    let alg = so_algebra(rank);
    let mut out = vec![Q::zero(); dim(rank)];
    for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for &(h, k) in alg.straightener().bracket(a as u8, b as u8) {
                out[h as usize] += &(ca * cb).scale_int(k);
            }
        }
    }
    out
}

/// Root data of `m = so_{n−2}` with respect to `T_1, …, T_r`, in so_{n−2} coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub r: usize,
    /// `T_i = i A_{n−2i, n−1−2i}`.
    pub t: Vec<Vec<Q>>,
    /// Positive roots (lexicographically positive eigenvalue vectors) and root vectors.
    pub positive: Vec<(Vec<i64>, Vec<Q>)>,
    /// Root vectors for the negated roots, in the same order.
    pub negative: Vec<Vec<Q>>,
}

impl RootSystem {
    pub fn new(n: usize) -> Self {
        let mr = n.saturating_sub(2);
        let d = dim(mr);
        let r = mr / 2;
        let t: Vec<Vec<Q>> = (1..=r).map(|i| coord(d, n - 2 * i, n - 1 - 2 * i, Q::i())).collect();
        // ad T_k as a d×d matrix (column a = [T_k, A_a]).
        let ad: Vec<Mat> = t
            .iter()
            .map(|tk| {
                let cols: Vec<Vec<Q>> = (0..d).map(|a| bracket_coords(mr, tk, &unit(d, a))).collect();
                (0..d).map(|row| (0..d).map(|a| cols[a][row].clone()).collect()).collect()
            })
            .collect();
        let mut roots: Vec<(Vec<i64>, Vec<Q>)> = Vec::new();
        let total = 3usize.pow(r as u32);
        for code in 0..total {
            let lam: Vec<i64> = (0..r).map(|k| (code / 3usize.pow(k as u32) % 3) as i64 - 1).collect();
            if lam.iter().all(|&x| x == 0) {
                continue;
            }
            let mut stacked: Mat = Vec::new();
            for (k, m) in ad.iter().enumerate() {
                for (row, line) in m.iter().enumerate() {
                    let mut l = line.clone();
                    l[row] -= &Q::from_int(lam[k]);
                    stacked.push(l);
                }
            }
            let ker = nullspace(&stacked, d);
            assert!(ker.len() <= 1, "root spaces of so_n are one-dimensional");
            if let Some(v) = ker.into_iter().next() {
                roots.push((lam, v));
            }
        }
        let lex_pos = |l: &[i64]| l.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0);
        let mut positive: Vec<(Vec<i64>, Vec<Q>)> = roots.iter().filter(|(l, _)| lex_pos(l)).cloned().collect();
        positive.sort_by(|a, b| b.0.cmp(&a.0));
        let negative: Vec<Vec<Q>> = positive
            .iter()
            .map(|(l, _)| {
                let neg: Vec<i64> = l.iter().map(|x| -x).collect();
                roots.iter().find(|(m, _)| *m == neg).expect("roots come in ± pairs").1.clone()
            })
            .collect();
        assert_eq!(2 * positive.len() + r, d, "root space decomposition must span m");
        Self { r, t, positive, negative }
    }

    /// `ρ(T_i)`: half the sum of the positive roots.
    pub fn rho(&self) -> Vec<Q> {
        (0..self.r).map(|k| Q::from_ratio(self.positive.iter().map(|(l, _)| l[k]).sum::<i64>(), 2)).collect()
    }
}

/// The full adapted basis of complexified so_n.
#[derive(Clone, Debug)]
pub struct TriangularBasis {
    pub n: usize,
    pub h: Element,
    pub x: Vec<Element>,
    pub xbar: Vec<Element>,
    pub t: Vec<Element>,
    pub u_pos: Vec<Element>,
    pub u_neg: Vec<Element>,
    pub positive_roots: Vec<Vec<i64>>,
    /// Rows are the basis vectors `X, U_pos, H, T, U_neg, X̄` in A-coordinates.
    pub change_of_basis: Mat,
}

/// Coordinates of `H`, `X_i`, `X̄_i` in so_n.
pub(crate) fn split_vectors(n: usize) -> (Vec<Q>, Vec<Vec<Q>>, Vec<Vec<Q>>) {
    let d = dim(n);
    let h = coord(d, n, n - 1, Q::i());
    let x = (1..=n - 2).map(|i| add_vec(&coord(d, n - 1, i, Q::one()), &coord(d, n, i, Q::i()))).collect();
    let xbar = (1..=n - 2).map(|i| add_vec(&coord(d, n - 1, i, Q::one()), &coord(d, n, i, -Q::i()))).collect();
    (h, x, xbar)
}

/// Embeds a so_{n−2} coordinate vector into so_n (letters are rank independent).
pub(crate) fn lift(n: usize, v: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); dim(n)];
    out[..v.len()].clone_from_slice(v);
    out
}

impl TriangularBasis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "triangular basis needs n >= 2");
        let roots = RootSystem::new(n);
        let (h, x, xbar) = split_vectors(n);
        let mut rows: Mat = Vec::new();
        rows.extend(x.iter().cloned());
        rows.extend(roots.positive.iter().map(|(_, v)| lift(n, v)));
        rows.push(h.clone());
        rows.extend(roots.t.iter().map(|v| lift(n, v)));
        rows.extend(roots.negative.iter().map(|v| lift(n, v)));
        rows.extend(xbar.iter().cloned());
        let el = |v: &[Q]| to_element(n, v);
        Self {
            n,
            h: el(&h),
            x: x.iter().map(|v| el(v)).collect(),
            xbar: xbar.iter().map(|v| el(v)).collect(),
            t: roots.t.iter().map(|v| el(&lift(n, v))).collect(),
            u_pos: roots.positive.iter().map(|(_, v)| el(&lift(n, v))).collect(),
            u_neg: roots.negative.iter().map(|v| el(&lift(n, v))).collect(),
            positive_roots: roots.positive.iter().map(|(l, _)| l.clone()).collect(),
            change_of_basis: rows,
        }
    }
}
