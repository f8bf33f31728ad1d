//! Dense univariate polynomials in the formal parameter `u` over ℚ(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GaussianRational;

/// Coefficients indexed by the power of `u`, lowest first.
///
/// The last stored coefficient is never zero; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<GaussianRational>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    /// The polynomial `c·u^power`.
    pub fn monomial(power: usize, c: GaussianRational) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    /// The indeterminate `u`.
    pub fn u() -> Self {
        Self::monomial(1, GaussianRational::one())
    }

    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `u^power` (zero beyond the degree).
    pub fn coeff(&self, power: usize) -> GaussianRational {
        self.coeffs.get(power).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.coeffs.len() {
            0 => Some(GaussianRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &UPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), GaussianRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }

    /// `self += k·rhs` for a small integer `k`.
    pub fn add_scaled_int(&mut self, rhs: &UPoly, k: i64) {
        match k {
            0 => {}
            1 => self.add_assign_ref(rhs),
            -1 => {
                if self.coeffs.len() < rhs.coeffs.len() {
                    self.coeffs.resize(rhs.coeffs.len(), GaussianRational::zero());
                }
                for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                    *a -= b;
                }
                self.trim();
            }
            _ => self.add_assign_ref(&rhs.scale_int(k)),
        }
    }

    /// `self += c·rhs`.
    pub fn add_scaled(&mut self, rhs: &UPoly, c: &GaussianRational) {
        if c.is_one() {
            self.add_assign_ref(rhs);
        } else {
            self.add_assign_ref(&rhs.scale(c));
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_int(&self, k: i64) -> UPoly {
        if k == 0 {
            return UPoly::zero();
        }
        UPoly { coeffs: self.coeffs.iter().map(|a| a.scale_int(k)).collect() }
    }

    /// Substitute a scalar for `u`.
    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// True when only even powers of `u` occur.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(p, c)| p % 2 == 0 || c.is_zero())
    }

    /// Nonzero `(power, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &GaussianRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        out.add_scaled_int(rhs, -1);
        out
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UPoly::from_coeffs(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl From<GaussianRational> for UPoly {
    fn from(c: GaussianRational) -> Self {
        UPoly::constant(c)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match p {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "u")?,
                1 => write!(f, "{c}*u")?,
                _ if c.is_one() => write!(f, "u^{p}")?,
                _ => write!(f, "{c}*u^{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Serialized as a list of `[power, re_num, re_den, im_num, im_den]` rows with
// zero coefficients omitted.
#[derive(Serialize, Deserialize)]
struct Row(usize, String, String, String, String);

impl Serialize for UPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Row> = self
            .terms()
            .map(|(p, c)| {
                let [a, b, cc, d] = c.to_decimal_parts();
                Row(p, a, b, cc, d)
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Row>::deserialize(d)?;
        let mut out = UPoly::zero();
        for Row(p, a, b, c, dd) in rows {
            let g = GaussianRational::from_decimal_parts([&a, &b, &c, &dd]).map_err(D::Error::custom)?;
            out.add_assign_ref(&UPoly::monomial(p, g));
        }
        Ok(out)
    }
}
