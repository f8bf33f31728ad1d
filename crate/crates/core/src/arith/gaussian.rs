//! Exact arithmetic in the Gaussian rationals ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element `re + im·i` of ℚ(i).
///
/// Both parts are kept as reduced fractions with positive denominators;
/// zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Multiply by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Self { re: -&self.im, im: self.re.clone() },
            2 => -self,
            _ => Self { re: self.im.clone(), im: -&self.re },
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 1 {
            return self.clone();
        }
        let k = BigRational::from_integer(k.into());
        Self { re: &self.re * &k, im: &self.im * &k }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Numerators and denominators as decimal strings, in the order
    /// `re_num, re_den, im_num, im_den`.
    pub fn to_decimal_parts(&self) -> [String; 4] {
        [
            self.re.numer().to_string(),
            self.re.denom().to_string(),
            self.im.numer().to_string(),
            self.im.denom().to_string(),
        ]
    }

    pub fn from_decimal_parts(parts: [&str; 4]) -> Result<Self, String> {
        let p = |s: &str| BigInt::from_str(s).map_err(|e| format!("bad integer {s:?}: {e}"));
        let (rn, rd, inn, id) = (p(parts[0])?, p(parts[1])?, p(parts[2])?, p(parts[3])?);
        if rd.is_zero() || id.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Self { re: BigRational::new(rn, rd), im: BigRational::new(inn, id) })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Parse `p`, `p/q` as a real rational.
    pub fn parse_rational(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|e| format!("bad rational {s:?}: {e}"))?;
        let d = BigInt::from_str(d).map_err(|e| format!("bad rational {s:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("bad rational {s:?}: zero denominator"));
        }
        Ok(Self::real(BigRational::new(n, d)))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", self.im)
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let a = self.im.abs();
                if a.is_one() {
                    write!(f, "({} {} i)", self.re, sign)
                } else {
                    write!(f, "({} {} {}i)", self.re, sign, a)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_decimal_parts().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = <[String; 4]>::deserialize(d)?;
        Self::from_decimal_parts([&parts[0], &parts[1], &parts[2], &parts[3]]).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gr(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b, c, d)
    }

    #[test]
    fn unit_times_i() {
        assert_eq!(&GaussianRational::one() * &GaussianRational::i(), GaussianRational::i());
    }

    #[test]
    fn i_squared() {
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from_int(-1));
    }

    #[test]
    fn conjugate_sum_is_real() {
        let a = gr(1, 2, 1, 3);
        let b = gr(1, 2, -1, 3);
        assert_eq!(&a + &b, GaussianRational::one());
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn zero_is_canonical() {
        let z = &gr(1, 2, 0, 1) - &gr(2, 4, 0, 7);
        assert_eq!(z.to_decimal_parts(), ["0", "1", "0", "1"].map(String::from));
    }

    #[test]
    fn reduced_on_construction() {
        assert_eq!(gr(6, -4, 2, 8).to_decimal_parts(), ["-3", "2", "1", "4"].map(String::from));
    }

    #[test]
    fn mul_i_pow_cycles() {
        let a = gr(3, 1, 5, 7);
        let mut acc = a.clone();
        for k in 0..8 {
            assert_eq!(a.mul_i_pow(k), acc);
            acc = &acc * &GaussianRational::i();
        }
    }

    #[test]
    fn serde_four_strings() {
        let a = gr(-7, 3, 11, 2);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["-7","3","11","2"]"#);
        let back: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<GaussianRational>(r#"["1","0","0","1"]"#).is_err());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(GaussianRational::parse_rational("3/6").unwrap(), GaussianRational::from_ratio(1, 2));
        assert_eq!(GaussianRational::parse_rational("-4").unwrap(), GaussianRational::from_int(-4));
        assert!(GaussianRational::parse_rational("1/0").is_err());
    }

    fn arb() -> impl Strategy<Value = GaussianRational> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| gr(a, b, c, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &(-&a), GaussianRational::zero());
            if let Some(inv) = a.inv() {
                prop_assert_eq!(&a * &inv, GaussianRational::one());
            } else {
                prop_assert!(a.is_zero());
            }
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }
    }
}
