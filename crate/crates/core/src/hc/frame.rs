//! An alternative ordered basis of complexified so_n with its own PBW order.

use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{GaussianRational as Q, UPoly};
use crate::uea::pbw::{merge_terms, Letter, Monomial, Straightener, Terms};
use crate::uea::so::{dim, so_algebra};
use crate::uea::{Element, Generator};

use super::linalg::{inverse, Mat};

/// Frame letter `f` is the vector `vectors[f]` in the `A_{j,i}` coordinates of
/// so_rank; the letter order is the PBW order used for straightening.
pub struct Frame {
    rank: usize,
    vectors: Mat,
    // A-letter a ↦ its expansion in frame letters.
    inverse: Vec<Vec<(Letter, Q)>>,
    straightener: Straightener<Q>,
}

fn sparse(v: &[Q]) -> Vec<(Letter, Q)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as Letter, c.clone())).collect()
}

impl Frame {
    /// Panics unless `vectors` is a basis.
    pub fn new(rank: usize, vectors: Mat) -> Self {
        let d = dim(rank);
        assert_eq!(vectors.len(), d, "a frame needs exactly dim so_n vectors");
        // Columns of the change of basis are the frame vectors.
        let cols: Mat = (0..d).map(|a| (0..d).map(|f| vectors[f][a].clone()).collect()).collect();
        let inv = inverse(&cols).expect("frame vectors are not a basis");
        // inv[f][a] = coefficient of frame letter f in A-letter a.
        let inverse: Vec<Vec<(Letter, Q)>> = (0..d).map(|a| sparse(&(0..d).map(|f| inv[f][a].clone()).collect::<Vec<_>>())).collect();
        let alg = so_algebra(rank);
        let mut table = vec![Vec::new(); d * d];
        for p in 0..d {
            for q in 0..d {
                let mut in_a = vec![Q::zero(); d];
                for (a, ca) in sparse(&vectors[p]) {
                    for (b, cb) in sparse(&vectors[q]) {
                        for &(h, k) in alg.straightener().bracket(a, b) {
                            in_a[h as usize] += &(&ca * &cb).scale_int(k);
                        }
                    }
                }
                let mut in_f = vec![Q::zero(); d];
                for (a, c) in sparse(&in_a) {
                    for (f, cf) in &inverse[a as usize] {
                        in_f[*f as usize] += &(&c * cf);
                    }
                }
                table[p * d + q] = sparse(&in_f);
            }
        }
        Self { rank, vectors, inverse, straightener: Straightener::new(d, table) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, f: Letter) -> &[Q] {
        &self.vectors[f as usize]
    }

    pub fn straightener(&self) -> &Straightener<Q> {
        &self.straightener
    }

    /// Frame letter `f` as an element of U(so_rank).
    pub fn letter_element(&self, f: Letter) -> Element {
        let mut out = Element::zero(self.rank);
        for (a, c) in sparse(&self.vectors[f as usize]) {
            out += &Element::generator(self.rank, Generator::from_letter(a)).scale(&c);
        }
        out
    }

    /// Rewrites `x` in the PBW basis of this frame.
    pub fn to_frame(&self, x: &Element) -> Terms {
        assert_eq!(x.rank(), self.rank, "rank mismatch");
        let items: Vec<(&Monomial, &UPoly)> = x.raw_terms().iter().collect();
        items
            .par_iter()
            .fold(Terms::default, |mut acc, (m, c)| {
                let mut words: Vec<(Vec<Letter>, Q)> = vec![(Vec::new(), num_traits::One::one())];
                for &a in m.letters() {
                    let mut next = Vec::with_capacity(words.len() * 2);
                    for (w, k) in &words {
                        for (f, cf) in &self.inverse[a as usize] {
                            let mut w2 = w.clone();
                            w2.push(*f);
                            next.push((w2, k * cf));
                        }
                    }
                    words = next;
                }
                let scaled: Vec<(Vec<Letter>, UPoly)> = words.into_iter().map(|(w, k)| (w, c.scale(&k))).collect();
                let t = self.straightener.straighten_words(scaled.iter().map(|(w, p)| (w.as_slice(), p)));
                acc = merge_terms(acc, t);
                acc
            })
            .reduce(Terms::default, merge_terms)
    }

    /// Maps frame-PBW terms back to an element in the standard basis.
    pub fn to_element(&self, t: &Terms) -> Element {
        let mut words: Vec<(Vec<Generator>, UPoly)> = Vec::new();
        for (m, c) in t {
            let mut partial: Vec<(Vec<Generator>, Q)> = vec![(Vec::new(), num_traits::One::one())];
            for &f in m.letters() {
                let mut next = Vec::new();
                for (w, k) in &partial {
                    for (a, ca) in sparse(&self.vectors[f as usize]) {
                        let mut w2 = w.clone();
                        w2.push(Generator::from_letter(a));
                        next.push((w2, k * &ca));
                    }
                }
                partial = next;
            }
            words.extend(partial.into_iter().map(|(w, k)| (w, c.scale(&k))));
        }
        Element::from_words(self.rank, &words).expect("frame letters fit the rank")
    }
}
