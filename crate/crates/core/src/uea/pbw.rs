//! PBW straightening over an arbitrary ordered Lie algebra basis.
//!
//! A basis is a set of letters `0..dim` whose numeric order is the PBW order,
//! together with structure constants `[b_p, b_q] = Σ c_{pq}^r b_r`. A monomial
//! is a non-decreasing word; every product of monomials is rewritten into a
//! combination of monomials by inserting letters one at a time from the left:
//!
//! `g·x₁x₂…x_k = x₁·(g·x₂…x_k) + [g, x₁]·x₂…x_k`   when `g > x₁`.
//!
//! Termination: the first summand keeps the degree and moves `g` one place to
//! the right (the number of letters smaller than `g` in front of it drops by
//! one), the second lowers the degree by one. Insertions are memoized per
//! `(letter, monomial)`.

use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use rustc_hash::{FxBuildHasher, FxHashMap};
use smallvec::SmallVec;

use crate::arith::{GaussianRational, UPoly};

pub type Letter = u8;

/// A PBW-ordered word of letters (non-decreasing); the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[Letter; 8]>);

impl Monomial {
    pub fn unit() -> Self {
        Self(SmallVec::new())
    }

    pub fn single(l: Letter) -> Self {
        Self(SmallVec::from_slice(&[l]))
    }

    /// Wraps an already sorted word.
    pub fn from_sorted(word: &[Letter]) -> Self {
        debug_assert!(word.windows(2).all(|w| w[0] <= w[1]));
        Self(SmallVec::from_slice(word))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    fn prepend(l: Letter, rest: &[Letter]) -> Self {
        let mut v = SmallVec::with_capacity(rest.len() + 1);
        v.push(l);
        v.extend_from_slice(rest);
        Self(v)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Scalars used for structure constants and for the integer (or exact)
/// expansions of monomial products.
pub trait StructScalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `target += self · p`.
    fn accumulate(&self, target: &mut UPoly, p: &UPoly);
}

impl StructScalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("structure-constant expansion overflowed i64")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("structure-constant expansion overflowed i64")
    }
    fn accumulate(&self, target: &mut UPoly, p: &UPoly) {
        target.add_scaled_int(p, *self);
    }
}

impl StructScalar for GaussianRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn accumulate(&self, target: &mut UPoly, p: &UPoly) {
        target.add_scaled(p, self);
    }
}

pub type Expansion<S> = Vec<(Monomial, S)>;

/// Entries above this count flush the insertion memo.
const MEMO_LIMIT: usize = 4_000_000;

/// Structure constants plus the memoized straightening machinery.
pub struct Straightener<S: StructScalar> {
    dim: usize,
    brackets: Vec<Vec<(Letter, S)>>,
    memo: DashMap<(Letter, Monomial), Arc<Expansion<S>>, FxBuildHasher>,
}

fn add_into<S: StructScalar>(acc: &mut FxHashMap<Monomial, S>, m: Monomial, c: S) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = e.get().add(&c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn into_sorted<S: StructScalar>(acc: FxHashMap<Monomial, S>) -> Expansion<S> {
    let mut v: Expansion<S> = acc.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

impl<S: StructScalar> Straightener<S> {
    /// `brackets[p * dim + q]` is `[b_p, b_q]`. Antisymmetry is checked.
    pub fn new(dim: usize, brackets: Vec<Vec<(Letter, S)>>) -> Self {
        assert_eq!(brackets.len(), dim * dim, "bracket table has wrong size");
        assert!(dim <= Letter::MAX as usize + 1, "too many letters");
        Self { dim, brackets, memo: DashMap::with_hasher(FxBuildHasher) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket(&self, p: Letter, q: Letter) -> &[(Letter, S)] {
        &self.brackets[p as usize * self.dim + q as usize]
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear_memo(&self) {
        self.memo.clear();
    }

    /// Normal form of `g · m` for a sorted `m`.
    pub fn lmul(&self, g: Letter, m: &[Letter]) -> Arc<Expansion<S>> {
        if m.is_empty() || g <= m[0] {
            return Arc::new(vec![(Monomial::prepend(g, m), S::one())]);
        }
        let key = (g, Monomial(SmallVec::from_slice(m)));
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let x1 = m[0];
        let rest = &m[1..];
        let mut acc: FxHashMap<Monomial, S> = FxHashMap::default();
        for (t, c) in self.lmul(g, rest).iter() {
            for (t2, c2) in self.lmul(x1, t.letters()).iter() {
                add_into(&mut acc, t2.clone(), c.mul(c2));
            }
        }
        for (h, c) in self.bracket(g, x1) {
            for (t, c2) in self.lmul(*h, rest).iter() {
                add_into(&mut acc, t.clone(), c.mul(c2));
            }
        }
        let out = Arc::new(into_sorted(acc));
        if self.memo.len() > MEMO_LIMIT {
            self.memo.clear();
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// Left-multiply a whole expansion by letters `prefix` (applied right to left).
    fn prefix_mul(&self, prefix: &[Letter], start: Expansion<S>) -> Expansion<S> {
        let mut cur = start;
        for &l in prefix.iter().rev() {
            let mut acc: FxHashMap<Monomial, S> = FxHashMap::default();
            for (t, c) in &cur {
                for (t2, c2) in self.lmul(l, t.letters()).iter() {
                    add_into(&mut acc, t2.clone(), c.mul(c2));
                }
            }
            cur = acc.into_iter().collect();
        }
        cur
    }

    /// Normal form of an arbitrary word.
    pub fn word(&self, w: &[Letter]) -> Expansion<S> {
        let mut out = self.prefix_mul(w, vec![(Monomial::unit(), S::one())]);
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Normal form of the product of two monomials.
    pub fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Expansion<S> {
        match (a.0.last(), b.0.first()) {
            (None, _) => vec![(b.clone(), S::one())],
            (_, None) => vec![(a.clone(), S::one())],
            (Some(&x), Some(&y)) if x <= y => {
                let mut v = a.0.clone();
                v.extend_from_slice(&b.0);
                vec![(Monomial(v), S::one())]
            }
            _ => self.prefix_mul(a.letters(), vec![(b.clone(), S::one())]),
        }
    }

    /// `[b_g, m]` expanded by the derivation rule.
    pub fn ad_mono(&self, g: Letter, m: &Monomial) -> Expansion<S> {
        let w = m.letters();
        let mut acc: FxHashMap<Monomial, S> = FxHashMap::default();
        for k in 0..w.len() {
            let br = self.bracket(g, w[k]);
            if br.is_empty() {
                continue;
            }
            let prefix = &w[..k];
            let suffix = &w[k + 1..];
            for (h, c) in br {
                let tail: Expansion<S> = self.lmul(*h, suffix).iter().map(|(t, c2)| (t.clone(), c.mul(c2))).collect();
                for (t, c3) in self.prefix_mul(prefix, tail) {
                    add_into(&mut acc, t, c3);
                }
            }
        }
        into_sorted(acc)
    }
}

/// Exact linear combination of monomials with `UPoly` coefficients.
pub type Terms = FxHashMap<Monomial, UPoly>;

pub fn add_term(acc: &mut Terms, m: Monomial, c: &UPoly) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            e.get_mut().add_assign_ref(c);
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

fn add_scaled_term<S: StructScalar>(acc: &mut Terms, m: Monomial, k: &S, c: &UPoly) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            k.accumulate(e.get_mut(), c);
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            let mut p = UPoly::zero();
            k.accumulate(&mut p, c);
            if !p.is_zero() {
                e.insert(p);
            }
        }
    }
}

pub fn merge_terms(mut a: Terms, b: Terms) -> Terms {
    if a.len() < b.len() {
        return merge_terms(b, a);
    }
    for (m, c) in b {
        add_term(&mut a, m, &c);
    }
    a
}

// Below this many monomial pairs the work is done on the calling thread.
const PAR_THRESHOLD: usize = 4096;

impl<S: StructScalar> Straightener<S> {
    pub fn mul_terms(&self, x: &Terms, y: &Terms) -> Terms {
        let ys: Vec<(&Monomial, &UPoly)> = y.iter().collect();
        let xs: Vec<(&Monomial, &UPoly)> = x.iter().collect();
        let work = |acc: &mut Terms, (m1, c1): (&Monomial, &UPoly)| {
            for (m2, c2) in &ys {
                let c = c1 * *c2;
                if c.is_zero() {
                    continue;
                }
                for (t, k) in self.mono_mul(m1, m2) {
                    add_scaled_term(acc, t, &k, &c);
                }
            }
        };
        if xs.len() * ys.len() < PAR_THRESHOLD {
            let mut acc = Terms::default();
            for t in xs {
                work(&mut acc, t);
            }
            return acc;
        }
        xs.into_par_iter()
            .fold(Terms::default, |mut acc, t| {
                work(&mut acc, t);
                acc
            })
            .reduce(Terms::default, merge_terms)
    }

    pub fn ad_terms(&self, g: Letter, x: &Terms) -> Terms {
        let xs: Vec<(&Monomial, &UPoly)> = x.iter().collect();
        let work = |acc: &mut Terms, (m, c): (&Monomial, &UPoly)| {
            for (t, k) in self.ad_mono(g, m) {
                add_scaled_term(acc, t, &k, c);
            }
        };
        if xs.len() < PAR_THRESHOLD / 16 {
            let mut acc = Terms::default();
            for t in xs {
                work(&mut acc, t);
            }
            return acc;
        }
        xs.into_par_iter()
            .fold(Terms::default, |mut acc, t| {
                work(&mut acc, t);
                acc
            })
            .reduce(Terms::default, merge_terms)
    }

    /// Straighten a combination of arbitrary (possibly unsorted) words.
    pub fn straighten_words<'a>(&self, words: impl IntoIterator<Item = (&'a [Letter], &'a UPoly)>) -> Terms {
        let mut acc = Terms::default();
        for (w, c) in words {
            for (t, k) in self.word(w) {
                add_scaled_term(&mut acc, t, &k, c);
            }
        }
        acc
    }
}
