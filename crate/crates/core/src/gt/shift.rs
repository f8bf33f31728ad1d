//! The shift operators `ϖ_{±ℓ}` between GT(λ) and GT(λ + e_ℓ) of SO(n−1).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::coeff::{a_coeff, l_value, sigma};
use super::pattern::{interleaves, is_dominant};
use super::rep::{CMat, RepAction};

/// `σ_{a,b}`-style shift of a weight: adds `sgn ℓ` to entry `|ℓ|`.
pub fn shift_weight(lambda: &[i64], ell: i64) -> Vec<i64> {
    let mut out = lambda.to_vec();
    if ell != 0 {
        out[ell.unsigned_abs() as usize - 1] += ell.signum();
    }
    out
}

/// Admissible `ℓ` for so_n: `±1..±⌊(n−1)/2⌋`, plus `0` when `n` is even.
pub fn shift_indices(n: usize) -> Vec<i64> {
    let k = ((n - 1) / 2) as i64;
    let mut v = if n.is_multiple_of(2) { vec![0] } else { Vec::new() };
    for j in 1..=k {
        v.push(j);
        v.push(-j);
    }
    v
}

/// Candidate SO(n) weights λ̃ used to embed both GT(λ) and GT(λ + e_ℓ).
fn embedding_candidates(n: usize, lambda: &[i64], ell: i64) -> Vec<Vec<i64>> {
    let shifted = shift_weight(lambda, ell);
    let mut first = shift_weight(lambda, if ell > 0 { ell } else { 1 });
    if n.is_multiple_of(2) {
        first.push(if ell == 0 { *lambda.last().unwrap_or(&0) } else { 0 });
    }
    vec![first, upper_envelope(n, lambda, &shifted), upper_envelope(n, lambda, lambda)]
}

/// Entrywise maximum of two SO(n−1) weights, completed to an SO(n) weight.
fn upper_envelope(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
    if n % 2 == 1 {
        if let (Some(x), Some(p), Some(q)) = (out.last_mut(), a.last(), b.last()) {
            *x = p.abs().max(q.abs());
        }
    } else {
        out.push(0);
    }
    out
}

/// The pair `ϖ_ℓ : GT(λ) → GT(λ + e_ℓ)` and `ϖ_{−ℓ} : GT(λ + e_ℓ) → GT(λ)`.
pub struct ShiftData {
    pub n: usize,
    pub ell: i64,
    pub lambda_tilde: Vec<i64>,
    pub source: RepAction,
    /// `None` when λ + e_ℓ is not dominant; every shift then vanishes.
    pub target: Option<RepAction>,
    pub up: CMat,
    pub down: CMat,
}

impl ShiftData {
    pub fn is_degenerate(&self) -> bool {
        self.target.is_none()
    }

    /// `l_{n−2,ℓ}`, read off the top row λ.
    pub fn l(&self) -> i64 {
        l_value(&self.source.patterns()[0].rows, self.n - 2, self.ell)
    }

    /// The parameter at which the central element is evaluated.
    pub fn u(&self) -> f64 {
        let l = self.l() as f64;
        if self.n % 2 == 1 { l + 0.5 } else { l }
    }
}

fn check_shift(n: usize, lambda: &[i64], ell: i64) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidShift { n, ell });
    }
    if !shift_indices(n).contains(&ell) {
        return Err(Error::InvalidShift { n, ell });
    }
    if !is_dominant(n - 1, lambda) {
        return Err(Error::NonDominant { group: n - 1, weight: lambda.to_vec() });
    }
    Ok(())
}

fn valid_embedding(n: usize, tilde: &[i64], lambda: &[i64], shifted: &[i64]) -> bool {
    is_dominant(n, tilde) && interleaves(tilde, lambda) && (!is_dominant(n - 1, shifted) || interleaves(tilde, shifted))
}

pub fn build_shift(n: usize, lambda: &[i64], ell: i64) -> Result<ShiftData> {
    check_shift(n, lambda, ell)?;
    let shifted = shift_weight(lambda, ell);
    let tilde = embedding_candidates(n, lambda, ell)
        .into_iter()
        .find(|t| valid_embedding(n, t, lambda, &shifted))
        .ok_or_else(|| Error::NoEmbeddingWeight { group: n, lambda: lambda.to_vec(), shifted: shifted.clone() })?;
    build_shift_with(n, lambda, ell, &tilde)
}

/// As [`build_shift`], with an explicit SO(n) weight λ̃.
pub fn build_shift_with(n: usize, lambda: &[i64], ell: i64, tilde: &[i64]) -> Result<ShiftData> {
    check_shift(n, lambda, ell)?;
    let shifted = shift_weight(lambda, ell);
    if !valid_embedding(n, tilde, lambda, &shifted) {
        return Err(Error::NoEmbeddingWeight { group: n, lambda: lambda.to_vec(), shifted });
    }
    let source = RepAction::new(n - 1, lambda)?;
    if !is_dominant(n - 1, &shifted) {
        let up = DMatrix::zeros(0, source.size());
        let down = DMatrix::zeros(source.size(), 0);
        return Ok(ShiftData { n, ell, lambda_tilde: tilde.to_vec(), source, target: None, up, down });
    }
    let target = RepAction::new(n - 1, &shifted)?;
    let up = shift_matrix(n, &source, &target, ell, tilde)?;
    let down = shift_matrix(n, &target, &source, -ell, tilde)?;
    Ok(ShiftData { n, ell, lambda_tilde: tilde.to_vec(), source, target: Some(target), up, down })
}

/// `ϖ_b Q = a_{n−2,b}(Q̂) σ_{n−2,b} Q`, with `Q̂` the pattern extended by λ̃.
fn shift_matrix(n: usize, from: &RepAction, to: &RepAction, b: i64, tilde: &[i64]) -> Result<CMat> {
    let mut m = CMat::zeros(to.size(), from.size());
    for (c, p) in from.patterns().iter().enumerate() {
        let mut rows = p.rows.clone();
        rows.push(tilde.to_vec());
        let a = a_coeff(&rows, n - 2, b)?;
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut image = sigma(&rows, n - 2, b).expect("nonzero coefficient has a target");
        image.pop();
        let r = to.position(&image).ok_or_else(|| Error::Invalid(format!("shifted pattern {image:?} is not in the target module")))?;
        m[(r, c)] += a;
    }
    Ok(m)
}
