//! Polynomials in the commuting Cartan variables `H, T_1, …, T_r`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{GaussianRational, UPoly};

/// Variable 0 is `H`, variable `k ≥ 1` is `T_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct HPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, UPoly>,
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

impl HPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::scalar(nvars, UPoly::one())
    }

    pub fn scalar(nvars: usize, c: UPoly) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, &UPoly::one());
        p
    }

    /// `H` together with `T_1..T_r`.
    pub fn h(nvars: usize) -> Self {
        Self::var(nvars, 0)
    }

    pub fn t(nvars: usize, k: usize) -> Self {
        Self::var(nvars, k)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var_names(&self) -> Vec<String> {
        (0..self.nvars).map(|k| if k == 0 { "H".to_string() } else { format!("T{k}") }).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &UPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &UPoly) {
        assert_eq!(exps.len(), self.nvars, "exponent vector has wrong length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, p) in &self.terms {
            out.add_term(e.clone(), &p.scale(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Substitutes `x_k ↦ x_k + c`.
    pub fn shift_var(&self, k: usize, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Self::zero(self.nvars);
        for (e, p) in &self.terms {
            let top = e[k];
            for t in 0..=top {
                let mut e2 = e.clone();
                e2[k] = t;
                let f = c.pow(top - t).scale_int(binomial(top, t));
                out.add_term(e2, &p.scale(&f));
            }
        }
        out
    }

    /// Substitutes `x_k ↦ −x_k`.
    pub fn flip_sign(&self, k: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, p) in &self.terms {
            let c = if e[k] % 2 == 1 { -p } else { p.clone() };
            out.add_term(e.clone(), &c);
        }
        out
    }

    /// Exchanges variables `a` and `b`.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, p) in &self.terms {
            let mut e2 = e.clone();
            e2.swap(a, b);
            out.add_term(e2, p);
        }
        out
    }

    /// Substitutes a value for `u` in every coefficient.
    pub fn eval_u(&self, z: &GaussianRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, p) in &self.terms {
            out.add_term(e.clone(), &UPoly::constant(p.eval(z)));
        }
        out
    }

    /// Evaluates all variables (and `u`) at the given values.
    pub fn eval(&self, vars: &[GaussianRational], u: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, p) in &self.terms {
            let mut v = p.eval(u);
            for (x, &k) in vars.iter().zip(e) {
                v *= &x.pow(k);
            }
            acc += &v;
        }
        acc
    }
}

impl std::ops::Add for &HPoly {
    type Output = HPoly;
    fn add(self, rhs: &HPoly) -> HPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, p) in &rhs.terms {
            out.add_term(e.clone(), p);
        }
        out
    }
}

impl std::ops::Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, p)| (e.clone(), -p)).collect() }
    }
}

impl std::ops::Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        self + &-rhs
    }
}

impl std::ops::Mul for &HPoly {
    type Output = HPoly;
    fn mul(self, rhs: &HPoly) -> HPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = HPoly::zero(self.nvars);
        for (e1, p1) in &self.terms {
            for (e2, p2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(p1 * p2));
            }
        }
        out
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.var_names();
        for (k, (e, p)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .zip(&names)
                .filter(|(x, _)| **x > 0)
                .map(|(x, name)| if *x == 1 { name.clone() } else { format!("{name}^{x}") })
                .collect();
            if vars.is_empty() {
                write!(f, "({p})")?;
            } else if p.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({p})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    coeff: UPoly,
}

#[derive(Serialize, Deserialize)]
struct HPolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for HPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.terms.iter().map(|(e, p)| TermJson { exps: e.clone(), coeff: p.clone() }).collect();
        HPolyJson { vars: self.var_names(), terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = HPolyJson::deserialize(d)?;
        let mut out = HPoly::zero(raw.vars.len());
        for t in raw.terms {
            if t.exps.len() != out.nvars {
                return Err(serde::de::Error::custom("exponent vector length does not match vars"));
            }
            out.add_term(t.exps, &t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_ratio(a, b)
    }

    #[test]
    fn shift_is_substitution() {
        let h = HPoly::h(2);
        let p = &(&h * &h) - &HPoly::t(2, 1);
        let shifted = p.shift_var(0, &q(1, 2));
        let hs = &h + &HPoly::scalar(2, UPoly::constant(q(1, 2)));
        assert_eq!(shifted, &(&hs * &hs) - &HPoly::t(2, 1));
        assert_eq!(shifted.shift_var(0, &q(-1, 2)), p);
    }

    #[test]
    fn symmetries() {
        let t1 = HPoly::t(3, 1);
        let t2 = HPoly::t(3, 2);
        let p = &(&t1 * &t1) + &t2;
        assert_eq!(p.flip_sign(1), p);
        assert_ne!(p.flip_sign(2), p);
        assert_eq!(p.swap_vars(1, 2), &(&t2 * &t2) + &t1);
    }

    #[test]
    fn json_roundtrip() {
        let p = &HPoly::h(2) + &HPoly::scalar(2, UPoly::u());
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with(r#"{"vars":["H","T1"],"terms":[{"exps":[0,0],"#));
        assert_eq!(serde_json::from_str::<HPoly>(&s).unwrap(), p);
    }
}
