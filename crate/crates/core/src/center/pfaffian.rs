//! Pfaffians of the matrix of generators.

use std::collections::HashSet;

use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::report::Verification;
use crate::uea::{commutator, Element, Generator};

use super::iwasawa::IwasawaGens;

/// `Pf(i_{2k}, …, i_1)` for `indices = [i_{2k}, …, i_1]`, expanded along `i_{2k}`:
/// `Σ_{j=1}^{2k−1} (−1)^{j+1} A_{i_{2k}, i_j} Pf(indices without i_{2k}, i_j)`.
pub fn build_pf(indices: &[usize], n: usize) -> Result<Element> {
    if indices.len() % 2 == 1 {
        return Err(Error::OddPfaffian(indices.len()));
    }
    let mut seen = HashSet::new();
    for &k in indices {
        if !seen.insert(k) {
            return Err(Error::RepeatedIndex(k));
        }
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { rank: n, j: k, i: k });
        }
    }
    Ok(pf_rec(indices, n))
}

fn pf_rec(list: &[usize], n: usize) -> Element {
    let len = list.len();
    if len == 0 {
        return Element::one(n);
    }
    let top = list[0];
    let mut out = Element::zero(n);
    for j in 1..len {
        // list[len − j] is i_j.
        let pos = len - j;
        let rest: Vec<usize> = list[1..].iter().enumerate().filter(|&(k, _)| k + 1 != pos).map(|(_, &v)| v).collect();
        let term = &Element::gen(n, top, list[pos]).expect("checked indices") * &pf_rec(&rest, n);
        if j % 2 == 1 {
            out += &term;
        } else {
            out += &-&term;
        }
    }
    out
}

/// `PF_{2m} = Pf(2m, 2m−1, …, 1)` in rank `2m`.
pub fn build_pf_full(m: usize) -> Element {
    let idx: Vec<usize> = (1..=2 * m).rev().collect();
    build_pf(&idx, 2 * m).expect("distinct indices")
}

/// Checks `i·PF_{2m} = (H − m + 1) PF_{2m−2} − Σ_{i≤2m−2} X_i [A_{2m−1,i}, PF_{2m−2}]` in rank `2m`.
pub fn iwasawa_pf_check(m: usize) -> Verification {
    assert!(m >= 1, "m must be at least 1");
    let n = 2 * m;
    let gens = IwasawaGens::new(n);
    let pf = build_pf_full(m);
    let prev = build_pf_full(m - 1).embed(n).expect("smaller Pfaffian fits");
    let mut rhs = &gens.h_minus(m as i64 - 1, 1) * &prev;
    for i in 1..=n - 2 {
        let b = prev.ad(Generator::new(n - 1, i).expect("valid generator"));
        rhs += &-&(&gens.x[i - 1] * &b);
    }
    let residual = &pf.scale(&GaussianRational::i()) - &rhs;
    Verification::from_residual(|| serde_json::json!({ "m": m }), residual.len())
}

/// The Pfaffian commutes with `A_{2m,2m−1}`; used as a cheap sanity check.
pub fn commutes_with_last_generator(m: usize) -> bool {
    let n = 2 * m;
    commutator(&build_pf_full(m), &Element::gen(n, n, n - 1).expect("valid")).map(|c| c.is_zero()).unwrap_or(false)
}
