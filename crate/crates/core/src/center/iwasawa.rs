use crate::arith::{GaussianRational, UPoly};
use crate::uea::{Element, Generator};

fn i_unit() -> GaussianRational {
    GaussianRational::i()
}

fn a(n: usize, j: usize, i: usize) -> Element {
    Element::generator(n, Generator::new(j, i).expect("valid generator"))
}

/// The split Cartan element, root vectors and compact Cartan elements of so_n
/// adapted to the last two coordinates.
#[derive(Clone, Debug)]
pub struct IwasawaGens {
    pub n: usize,
    /// `H = i A_{n,n−1}`.
    pub h: Element,
    /// `X_i = A_{n−1,i} + i A_{n,i}`, `i = 1..n−2`.
    pub x: Vec<Element>,
    /// `X̄_i = A_{n−1,i} − i A_{n,i}`.
    pub xbar: Vec<Element>,
    /// `T_i = i A_{n−2i,n−1−2i}`, `i = 1..⌊(n−2)/2⌋`.
    pub t: Vec<Element>,
}

impl IwasawaGens {
    /// Needs `n ≥ 2`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "Iwasawa generators need n >= 2");
        let h = a(n, n, n - 1).scale(&i_unit());
        let x = (1..=n - 2).map(|i| &a(n, n - 1, i) + &a(n, n, i).scale(&i_unit())).collect();
        let xbar = (1..=n - 2).map(|i| &a(n, n - 1, i) - &a(n, n, i).scale(&i_unit())).collect();
        let t = (1..=(n - 2) / 2).map(|i| a(n, n - 2 * i, n - 1 - 2 * i).scale(&i_unit())).collect();
        Self { n, h, x, xbar, t }
    }

    /// `H − c` for a rational shift `c = num/den`.
    pub fn h_minus(&self, num: i64, den: i64) -> Element {
        &self.h - &Element::constant(self.n, GaussianRational::from_ratio(num, den))
    }

    pub fn scalar(&self, c: UPoly) -> Element {
        Element::scalar(self.n, c)
    }
}
