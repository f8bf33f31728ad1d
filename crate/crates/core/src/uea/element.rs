//! Elements of U(so_n) ⊗ ℚ(i)[u] kept in PBW normal form.

use std::fmt;

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{GaussianRational, UPoly};
use crate::error::{Error, Result};

use super::pbw::{add_term, merge_terms, Monomial, Terms};
use super::so::{so_algebra, Generator, MAX_RANK};

/// A normal-ordered linear combination of PBW monomials with polynomial
/// coefficients in the free parameter `u`.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    rank: usize,
    terms: Terms,
}

fn check_rank(rank: usize) -> Result<()> {
    if rank > MAX_RANK {
        return Err(Error::Invalid(format!("rank {rank} exceeds the supported maximum {MAX_RANK}")));
    }
    Ok(())
}

/// Largest matrix index used by a monomial (0 for the unit).
fn mono_max_index(m: &Monomial) -> usize {
    m.letters().last().map_or(0, |&l| Generator::from_letter(l).j())
}

impl Element {
    pub fn zero(rank: usize) -> Self {
        Self { rank, terms: Terms::default() }
    }

    pub fn one(rank: usize) -> Self {
        Self::scalar(rank, UPoly::one())
    }

    pub fn scalar(rank: usize, c: UPoly) -> Self {
        let mut terms = Terms::default();
        add_term(&mut terms, Monomial::unit(), &c);
        Self { rank, terms }
    }

    pub fn constant(rank: usize, c: GaussianRational) -> Self {
        Self::scalar(rank, UPoly::constant(c))
    }

    /// `A_{j,i}` for `j > i`, `−A_{i,j}` for `j < i`.
    pub fn gen(rank: usize, j: usize, i: usize) -> Result<Self> {
        check_rank(rank)?;
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        if i == 0 || j == 0 || i > rank || j > rank {
            return Err(Error::IndexOutOfRange { rank, j, i });
        }
        if j > i {
            Ok(Self::generator(rank, Generator::new(j, i)?))
        } else {
            Ok(-&Self::generator(rank, Generator::new(i, j)?))
        }
    }

    /// Panics if the generator does not fit in `rank`.
    pub fn generator(rank: usize, g: Generator) -> Self {
        assert!(g.j() <= rank, "{g:?} does not fit in rank {rank}");
        let mut terms = Terms::default();
        terms.insert(Monomial::single(g.letter()), UPoly::one());
        Self { rank, terms }
    }

    /// Normal form of `Σ c · w` for arbitrary words `w` of generators.
    pub fn from_words(rank: usize, words: &[(Vec<Generator>, UPoly)]) -> Result<Self> {
        check_rank(rank)?;
        let alg = so_algebra(rank);
        let mut letters = Vec::with_capacity(words.len());
        for (w, _) in words {
            for g in w {
                if g.j() > rank {
                    return Err(Error::IndexOutOfRange { rank, j: g.j(), i: g.i() });
                }
            }
            letters.push(w.iter().map(|g| g.letter()).collect::<Vec<_>>());
        }
        let terms = alg.straightener().straighten_words(letters.iter().map(|l| l.as_slice()).zip(words.iter().map(|(_, c)| c)));
        Ok(Self { rank, terms })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn raw_terms(&self) -> &Terms {
        &self.terms
    }

    pub(crate) fn from_raw(rank: usize, terms: Terms) -> Self {
        Self { rank, terms }
    }

    pub fn coeff(&self, m: &Monomial) -> UPoly {
        self.terms.get(m).cloned().unwrap_or_else(UPoly::zero)
    }

    /// Coefficient of the product of the given generators (in any order; they are sorted).
    pub fn coeff_of(&self, gens: &[Generator]) -> UPoly {
        let mut l: Vec<_> = gens.iter().map(|g| g.letter()).collect();
        l.sort_unstable();
        self.coeff(&Monomial::from_sorted(&l))
    }

    /// Terms in PBW order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &UPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// The monomials as generator words, in PBW order.
    pub fn words(&self) -> Vec<(Vec<Generator>, UPoly)> {
        self.sorted_terms()
            .into_iter()
            .map(|(m, c)| (m.letters().iter().map(|&l| Generator::from_letter(l)).collect(), c.clone()))
            .collect()
    }

    /// Largest matrix index appearing in any monomial (0 for scalars).
    pub fn max_index(&self) -> usize {
        self.terms.keys().map(mono_max_index).max().unwrap_or(0)
    }

    /// Highest PBW degree present.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn as_scalar(&self) -> Option<UPoly> {
        match self.terms.len() {
            0 => Some(UPoly::zero()),
            1 => self.terms.get(&Monomial::unit()).cloned(),
            _ => None,
        }
    }

    fn same_rank(&self, other: &Element) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.same_rank(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c);
        }
        Ok(Self { rank: self.rank, terms })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.same_rank(other)?;
        let alg = so_algebra(self.rank);
        Ok(Self { rank: self.rank, terms: alg.straightener().mul_terms(&self.terms, &other.terms) })
    }

    /// `xy − yx`. Uses the derivation rule when either side is a single generator.
    pub fn try_commutator(&self, other: &Element) -> Result<Element> {
        self.same_rank(other)?;
        if let Some((g, c)) = self.as_generator_multiple() {
            return Ok(other.ad(g).scale_poly(&c));
        }
        if let Some((g, c)) = other.as_generator_multiple() {
            return Ok(-&self.ad(g).scale_poly(&c));
        }
        Ok(&(self * other) - &(other * self))
    }

    fn as_generator_multiple(&self) -> Option<(Generator, UPoly)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        (m.degree() == 1).then(|| (Generator::from_letter(m.letters()[0]), c.clone()))
    }

    /// `[A_g, self]`.
    pub fn ad(&self, g: Generator) -> Element {
        assert!(g.j() <= self.rank, "{g:?} does not fit in rank {}", self.rank);
        let alg = so_algebra(self.rank);
        Self { rank: self.rank, terms: alg.straightener().ad_terms(g.letter(), &self.terms) }
    }

    pub fn scale(&self, c: &GaussianRational) -> Element {
        if num_traits::Zero::is_zero(c) {
            return Self::zero(self.rank);
        }
        Self { rank: self.rank, terms: self.terms.iter().map(|(m, p)| (m.clone(), p.scale(c))).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Element {
        self.scale(&GaussianRational::from_int(k))
    }

    pub fn scale_poly(&self, c: &UPoly) -> Element {
        let mut terms = Terms::default();
        for (m, p) in &self.terms {
            add_term(&mut terms, m.clone(), &(p * c));
        }
        Self { rank: self.rank, terms }
    }

    /// The antiautomorphism `Y₁⋯Y_p ↦ (−Y_p)⋯(−Y₁)`.
    pub fn opp(&self) -> Element {
        let alg = so_algebra(self.rank);
        let s = alg.straightener();
        let items: Vec<_> = self.terms.iter().collect();
        let terms = items
            .par_iter()
            .fold(Terms::default, |mut acc, (m, c)| {
                let mut rev: Vec<_> = m.letters().to_vec();
                rev.reverse();
                let c = if m.degree() % 2 == 1 { -*c } else { (*c).clone() };
                for (t, k) in s.word(&rev) {
                    add_term(&mut acc, t, &c.scale_int(k));
                }
                acc
            })
            .reduce(Terms::default, merge_terms);
        Self { rank: self.rank, terms }
    }

    /// The same element regarded in rank `n_to`.
    pub fn embed(&self, n_to: usize) -> Result<Element> {
        check_rank(n_to)?;
        let top = self.max_index();
        if top > n_to {
            return Err(Error::IndexExceedsRank { index: top, rank: n_to });
        }
        Ok(Self { rank: n_to, terms: self.terms.clone() })
    }

    /// Substitutes a value for `u`.
    pub fn eval_u(&self, z: &GaussianRational) -> Element {
        let mut terms = Terms::default();
        for (m, p) in &self.terms {
            add_term(&mut terms, m.clone(), &UPoly::constant(p.eval(z)));
        }
        Self { rank: self.rank, terms }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&UPoly) -> UPoly) -> Element {
        let mut terms = Terms::default();
        for (m, p) in &self.terms {
            add_term(&mut terms, m.clone(), &f(p));
        }
        Self { rank: self.rank, terms }
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut out = Element::one(self.rank);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("element serialization cannot fail")
    }
}

/// `[A_{g1}, A_{g2}]` in rank `n`.
pub fn bracket_basis(n: usize, g1: Generator, g2: Generator) -> Result<Element> {
    for g in [g1, g2] {
        if g.j() > n {
            return Err(Error::IndexOutOfRange { rank: n, j: g.j(), i: g.i() });
        }
    }
    let alg = so_algebra(n);
    let mut terms = Terms::default();
    for &(h, c) in alg.straightener().bracket(g1.letter(), g2.letter()) {
        add_term(&mut terms, Monomial::single(h), &UPoly::from_int(c));
    }
    Ok(Element::from_raw(n, terms))
}

/// Re-straightens every monomial. Elements are always kept normal, so this is
/// the identity on well-formed input.
pub fn normal_form(x: &Element) -> Element {
    let words = x.words();
    Element::from_words(x.rank(), &words).expect("well-formed element")
}

pub fn multiply(x: &Element, y: &Element) -> Result<Element> {
    x.try_mul(y)
}

pub fn add(x: &Element, y: &Element) -> Result<Element> {
    x.try_add(y)
}

pub fn commutator(x: &Element, y: &Element) -> Result<Element> {
    x.try_commutator(y)
}

pub fn opp(x: &Element) -> Element {
    x.opp()
}

/// `Σ_{1≤i<j≤k} A_{j,i}²` in rank `n`.
pub fn casimir_omega(n: usize, k: usize) -> Result<Element> {
    if k > n {
        return Err(Error::SubRankTooLarge { rank: n, k });
    }
    check_rank(n)?;
    let mut terms = Terms::default();
    for j in 2..=k {
        for i in 1..j {
            let l = Generator::new(j, i)?.letter();
            add_term(&mut terms, Monomial::from_sorted(&[l, l]), &UPoly::one());
        }
    }
    Ok(Element::from_raw(n, terms))
}

/// Reinterprets `x`, which must only use indices up to `n_from`, at rank `n_to`.
pub fn embed_shift(x: &Element, n_from: usize, n_to: usize) -> Result<Element> {
    let top = x.max_index();
    if top > n_from {
        return Err(Error::IndexExceedsRank { index: top, rank: n_from });
    }
    if n_from > n_to {
        if top > n_to {
            return Err(Error::IndexExceedsRank { index: top, rank: n_to });
        }
        return Err(Error::SubRankTooLarge { rank: n_to, k: n_from });
    }
    x.embed(n_to)
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("rank mismatch in +")
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).expect("rank mismatch in -")
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("rank mismatch in *")
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { rank: self.rank, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl std::ops::AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        assert_eq!(self.rank, rhs.rank, "rank mismatch in +=");
        for (m, c) in &rhs.terms {
            add_term(&mut self.terms, m.clone(), c);
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let coeff = c.to_string();
            let simple = c.terms().count() == 1 && !coeff.contains(' ');
            if m.is_unit() {
                write!(f, "{coeff}")?;
                continue;
            }
            if !c.is_one() {
                if simple {
                    write!(f, "{coeff}*")?;
                } else {
                    write!(f, "({coeff})*")?;
                }
            }
            let names: Vec<String> = m.letters().iter().map(|&l| Generator::from_letter(l).to_string()).collect();
            write!(f, "{}", names.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[rank {}] {}", self.rank, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    mono: Vec<(usize, usize)>,
    coeff: UPoly,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    rank: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermJson {
                mono: m.letters().iter().map(|&l| Generator::from_letter(l)).map(|g| (g.j(), g.i())).collect(),
                coeff: c.clone(),
            })
            .collect();
        ElementJson { rank: self.rank, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        let mut words = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let w = t.mono.iter().map(|&(j, i)| Generator::new(j, i)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
            words.push((w, t.coeff));
        }
        Element::from_words(raw.rank, &words).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(n: usize, j: usize, i: usize) -> Element {
        Element::gen(n, j, i).unwrap()
    }

    fn g(j: usize, i: usize) -> Generator {
        Generator::new(j, i).unwrap()
    }

    #[test]
    fn gen_examples() {
        assert_eq!(a(3, 1, 2), -&a(3, 2, 1));
        assert!(matches!(Element::gen(3, 4, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(Element::gen(3, 2, 2), Err(Error::EqualIndices(2))));
    }

    #[test]
    fn basic_brackets() {
        assert_eq!(bracket_basis(3, g(3, 2), g(2, 1)).unwrap(), a(3, 3, 1));
        assert!(bracket_basis(3, g(2, 1), g(2, 1)).unwrap().is_zero());
        assert!(bracket_basis(4, g(2, 1), g(4, 3)).unwrap().is_zero());
        assert_eq!(commutator(&a(3, 3, 2), &a(3, 2, 1)).unwrap(), a(3, 3, 1));
    }

    #[test]
    fn swapped_product_rewrites() {
        let p = &a(3, 3, 2) * &a(3, 2, 1);
        let expected = Element::from_words(3, &[(vec![g(2, 1), g(3, 2)], UPoly::one())]).unwrap();
        assert_eq!(p, &expected + &a(3, 3, 1));
        assert_eq!(p.coeff_of(&[g(2, 1), g(3, 2)]), UPoly::one());
        let sorted = &a(3, 2, 1) * &a(3, 3, 2);
        assert_eq!(sorted.len(), 1);
    }

    #[test]
    fn rank_mismatch() {
        assert!(matches!(multiply(&a(3, 2, 1), &a(4, 2, 1)), Err(Error::RankMismatch(3, 4))));
        assert!(add(&a(3, 2, 1), &a(4, 2, 1)).is_err());
        assert!(commutator(&a(3, 2, 1), &a(4, 2, 1)).is_err());
    }

    #[test]
    fn unit_and_self_commutator() {
        let x = &(&a(4, 3, 1) * &a(4, 2, 1)) + &a(4, 4, 3);
        assert_eq!(multiply(&Element::one(4), &x).unwrap(), x);
        assert!(commutator(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn opp_examples() {
        assert_eq!(a(3, 2, 1).opp(), -&a(3, 2, 1));
        assert_eq!(Element::one(3).opp(), Element::one(3));
        for k in 0..=5 {
            let om = casimir_omega(5, k).unwrap();
            assert_eq!(om.opp(), om);
        }
    }

    #[test]
    fn omega_examples() {
        assert!(casimir_omega(4, 1).unwrap().is_zero());
        assert_eq!(casimir_omega(4, 2).unwrap(), &a(4, 2, 1) * &a(4, 2, 1));
        assert!(casimir_omega(3, 4).is_err());
        for k in 2..=5 {
            let om = casimir_omega(6, k).unwrap();
            for gen in Generator::all(k) {
                assert!(commutator(&om, &Element::generator(6, gen)).unwrap().is_zero());
            }
            // Not central in the larger algebra.
            if k < 6 {
                assert!(!commutator(&om, &a(6, k + 1, 1)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn embedding() {
        assert_eq!(embed_shift(&a(2, 2, 1), 2, 4).unwrap(), a(4, 2, 1));
        assert_eq!(embed_shift(&Element::one(0), 0, 5).unwrap(), Element::one(5));
        assert!(embed_shift(&a(3, 3, 1), 3, 2).is_err());
        assert!(embed_shift(&a(3, 3, 1), 2, 4).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let x = &(&a(4, 3, 2) * &a(4, 2, 1)).scale(&GaussianRational::from_parts(1, 2, -3, 4)) + &Element::scalar(4, UPoly::u());
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"rank":4,"terms":[{"mono":[],"coeff":[[1,"#));
        let back: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        // Unsorted input is normalized on the way in.
        let raw = r#"{"rank":3,"terms":[{"mono":[[3,2],[2,1]],"coeff":[[0,"1","1","0","1"]]}]}"#;
        let y: Element = serde_json::from_str(raw).unwrap();
        assert_eq!(y, &a(3, 3, 2) * &a(3, 2, 1));
    }

    fn arb_gen(n: usize) -> impl Strategy<Value = Generator> {
        (0..super::super::so::dim(n)).prop_map(|l| Generator::from_letter(l as u8))
    }

    fn arb_element(n: usize) -> impl Strategy<Value = Element> {
        let term = (prop::collection::vec(arb_gen(n), 0..4), -3i64..4, -2i64..3);
        prop::collection::vec(term, 1..4).prop_map(move |ts| {
            let words: Vec<_> = ts
                .into_iter()
                .map(|(w, re, im)| (w, UPoly::constant(GaussianRational::from_parts(re, 1, im, 1))))
                .collect();
            Element::from_words(n, &words).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn jacobi(x in arb_gen(6), y in arb_gen(6), z in arb_gen(6)) {
            let (x, y, z) = (Element::generator(6, x), Element::generator(6, y), Element::generator(6, z));
            let t1 = commutator(&x, &commutator(&y, &z).unwrap()).unwrap();
            let t2 = commutator(&y, &commutator(&z, &x).unwrap()).unwrap();
            let t3 = commutator(&z, &commutator(&x, &y).unwrap()).unwrap();
            prop_assert!((&(&t1 + &t2) + &t3).is_zero());
        }

        #[test]
        fn associativity(x in arb_element(5), y in arb_element(5), z in arb_element(5)) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }

        #[test]
        fn normal_form_is_idempotent(x in arb_element(5)) {
            let once = normal_form(&x);
            prop_assert_eq!(&once, &x);
            prop_assert_eq!(normal_form(&once), once);
        }

        #[test]
        fn opp_involutive_antiautomorphism(x in arb_element(4), y in arb_element(4)) {
            prop_assert_eq!(x.opp().opp(), x.clone());
            prop_assert_eq!((&x * &y).opp(), &y.opp() * &x.opp());
            let lhs = commutator(&x, &y).unwrap().opp();
            let rhs = -&commutator(&x.opp(), &y.opp()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ad_agrees_with_products(x in arb_element(5), h in arb_gen(5)) {
            let hx = Element::generator(5, h);
            prop_assert_eq!(x.ad(h), &(&hx * &x) - &(&x * &hx));
        }
    }
}
