//! The Gelfand-Tsetlin action of so_N on the irreducible module of highest weight λ.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::uea::so::{dim, matrix_bracket};
use crate::uea::{Element, Generator};

use super::coeff::{a_coeff, indices, sigma};
use super::pattern::{enumerate_patterns, GTPattern};

pub type CMat = DMatrix<Complex64>;

pub struct RepAction {
    group: usize,
    lambda: Vec<i64>,
    patterns: Vec<GTPattern>,
    index: HashMap<GTPattern, usize>,
    /// `τ(A_{j,i})` indexed by the letter of `A_{j,i}`.
    gens: Vec<CMat>,
}

impl RepAction {
    pub fn new(group: usize, lambda: &[i64]) -> Result<Self> {
        let patterns = enumerate_patterns(group, lambda)?;
        let index: HashMap<GTPattern, usize> = patterns.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let size = patterns.len();
        let mut gens: Vec<CMat> = vec![CMat::zeros(size, size); dim(group)];
        for k in 1..group {
            let g = Generator::new(k + 1, k)?;
            let mut m = CMat::zeros(size, size);
            if k == 1 {
                for (c, p) in patterns.iter().enumerate() {
                    m[(c, c)] = Complex64::new(0.0, -(p.q(1, 1) as f64));
                }
            } else {
                let level = k - 1;
                for (c, p) in patterns.iter().enumerate() {
                    for j in indices(level) {
                        let a = a_coeff(&p.rows, level, j)?;
                        if a == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        let target = sigma(&p.rows, level, j).expect("nonzero coefficient has a target");
                        let r = index[&GTPattern { rows: target }];
                        m[(r, c)] += a;
                    }
                }
            }
            gens[g.letter() as usize] = m;
        }
        // A_{j,i} = [A_{j,j−1}, A_{j−1,i}] for j > i + 1.
        for j in 3..=group {
            for i in (1..j - 1).rev() {
                let a = &gens[Generator::new(j, j - 1)?.letter() as usize];
                let b = &gens[Generator::new(j - 1, i)?.letter() as usize];
                let m = a * b - b * a;
                gens[Generator::new(j, i)?.letter() as usize] = m;
            }
        }
        Ok(Self { group, lambda: lambda.to_vec(), patterns, index, gens })
    }

    pub fn group(&self) -> usize {
        self.group
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn size(&self) -> usize {
        self.patterns.len()
    }

    pub fn patterns(&self) -> &[GTPattern] {
        &self.patterns
    }

    pub fn position(&self, rows: &[Vec<i64>]) -> Option<usize> {
        self.index.get(&GTPattern { rows: rows.to_vec() }).copied()
    }

    pub fn gen(&self, g: Generator) -> &CMat {
        &self.gens[g.letter() as usize]
    }

    /// `τ(A_{j,i})`, with `A_{j,i} = −A_{i,j}`.
    pub fn gen_signed(&self, j: usize, i: usize) -> CMat {
        if j > i {
            self.gen(Generator::new(j, i).expect("valid index")).clone()
        } else {
            -self.gen(Generator::new(i, j).expect("valid index"))
        }
    }

    pub fn identity(&self) -> CMat {
        CMat::identity(self.size(), self.size())
    }

    /// `τ(x)` with the parameter `u` specialised.
    pub fn element_matrix(&self, x: &Element, u: &GaussianRational) -> Result<CMat> {
        let top = x.max_index();
        if top > self.group {
            return Err(Error::IndexExceedsRank { index: top, rank: self.group });
        }
        let mut out = CMat::zeros(self.size(), self.size());
        for (mono, c) in x.sorted_terms() {
            let (re, im) = c.eval(u).to_f64_pair();
            let mut m = self.identity();
            for &l in mono.letters() {
                m = &m * &self.gens[l as usize];
            }
            out += m * Complex64::new(re, im);
        }
        Ok(out)
    }

    /// Largest entry of `[τ(a), τ(b)] − τ([a, b])` over all basis pairs.
    pub fn bracket_residual(&self) -> f64 {
        let all: Vec<Generator> = Generator::all(self.group).collect();
        let mut worst = 0.0f64;
        for (k, &a) in all.iter().enumerate() {
            for &b in &all[k + 1..] {
                let (ma, mb) = (self.gen(a), self.gen(b));
                let mut r = ma * mb - mb * ma;
                for (g, c) in matrix_bracket(self.group, a, b) {
                    r -= self.gen(g) * Complex64::new(c as f64, 0.0);
                }
                worst = worst.max(max_abs(&r));
            }
        }
        worst
    }

    /// The scalar by which `Σ A_{j,i}²` acts: `|ρ|² − |λ + ρ|²`.
    pub fn casimir_scalar(&self) -> f64 {
        let rho = |i: usize| (self.group as f64 - 2.0 * i as f64) / 2.0;
        (1..=self.lambda.len()).map(|i| rho(i).powi(2) - (self.lambda[i - 1] as f64 + rho(i)).powi(2)).sum()
    }

    /// Largest entry of `Σ τ(A_{j,i})² − casimir_scalar · I`.
    pub fn casimir_residual(&self) -> f64 {
        let mut m = self.identity() * Complex64::new(-self.casimir_scalar(), 0.0);
        for g in &self.gens {
            m += g * g;
        }
        max_abs(&m)
    }

    /// `Σ_{1≤i<j≤k} τ(A_{j,i})²`.
    pub fn omega(&self, k: usize) -> CMat {
        let mut m = CMat::zeros(self.size(), self.size());
        for l in 0..dim(k) {
            m += &self.gens[l] * &self.gens[l];
        }
        m
    }
}

/// `τ` on the GT basis of the SO(N)-module of highest weight λ.
pub fn rep_matrices(group: usize, lambda: &[i64]) -> Result<RepAction> {
    RepAction::new(group, lambda)
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
