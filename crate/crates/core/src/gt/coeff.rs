//! The shifted coordinates `l_{p,j}` and the matrix coefficients `a_{p,j}`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::pattern::{interleaves, row_len};

/// `l_{p,j}` for a row list with `rows[k−1]` = row `k`.
pub fn l_value(rows: &[Vec<i64>], p: usize, j: i64) -> i64 {
    if p == 0 {
        assert_eq!(j, 0, "row 0 only has l_{{0,0}}");
        return 0;
    }
    let i = p.div_ceil(2) as i64;
    let q = |jj: i64| rows[p - 1][jj as usize - 1];
    if p % 2 == 1 {
        assert_ne!(j, 0, "odd rows have no index 0");
        let pos = q(j.abs()) + i - j.abs();
        if j > 0 { pos } else { -pos }
    } else {
        match j.signum() {
            0 => 0,
            1 => q(j) + i + 1 - j,
            _ => -(q(-j) + i + 1 + j) + 1,
        }
    }
}

/// Indices `j` admissible at level `p`: `±1..±i` for odd `p = 2i−1`, and
/// `0, ±1..±i` for even `p = 2i`.
pub fn indices(p: usize) -> Vec<i64> {
    let i = p.div_ceil(2) as i64;
    let mut v: Vec<i64> = if p.is_multiple_of(2) { vec![0] } else { Vec::new() };
    for k in 1..=i {
        v.push(k);
        v.push(-k);
    }
    v
}

/// `σ_{p,j}` applied to the rows; `None` if the result violates interleaving.
pub fn sigma(rows: &[Vec<i64>], p: usize, j: i64) -> Option<Vec<Vec<i64>>> {
    let mut out = rows.to_vec();
    if j != 0 {
        out[p - 1][j.unsigned_abs() as usize - 1] += j.signum();
    }
    let row = &out[p - 1];
    if p >= 2 && !interleaves(row, &out[p - 2]) {
        return None;
    }
    if p < out.len() && !interleaves(&out[p], row) {
        return None;
    }
    Some(out)
}

fn check_request(rows: &[Vec<i64>], p: usize, j: i64) -> Result<()> {
    if p == 0 || rows.len() < p + 1 {
        return Err(Error::InvalidCoefficient(format!("level {p} needs rows up to {}", p + 1)));
    }
    if !indices(p).contains(&j) {
        return Err(Error::InvalidCoefficient(format!("index {j} not admissible at level {p}")));
    }
    for (k, r) in rows.iter().enumerate() {
        if r.len() != row_len(k + 1) {
            return Err(Error::InvalidCoefficient(format!("row {} has length {}", k + 1, r.len())));
        }
    }
    Ok(())
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Numerator and denominator of the product formula, so that the squared
/// coefficient is `−num/den` (times `ε²`).
fn product_parts(rows: &[Vec<i64>], p: usize, j: i64) -> (BigInt, BigInt) {
    let l = |pp: usize, jj: i64| l_value(rows, pp, jj);
    let lj = l(p, j);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    if p % 2 == 1 {
        let i = p.div_ceil(2) as i64;
        for k in (1..i).flat_map(|k| [k, -k]) {
            num *= big(lj + l(p - 1, k));
        }
        for k in (1..=i).flat_map(|k| [k, -k]) {
            num *= big(lj + l(p + 1, k));
        }
        den *= 4;
        for k in (1..=i).flat_map(|k| [k, -k]).filter(|k| k.abs() != j.abs()) {
            let lk = l(p, k);
            den *= big(lj + lk) * big(lj + lk + 1);
        }
    } else {
        let i = p as i64 / 2;
        for k in (1..=i).flat_map(|k| [k, -k]) {
            num *= big(lj + l(p - 1, k));
        }
        for k in (1..=i + 1).flat_map(|k| [k, -k]) {
            num *= big(lj + l(p + 1, k));
        }
        den *= big(4 * lj * lj - 1);
        let ks = std::iter::once(0).chain((1..=i).flat_map(|k| [k, -k]));
        for k in ks.filter(|k| k.abs() != j.abs()) {
            let lk = l(p, k);
            den *= big(lj + lk) * big(lj - lk);
        }
    }
    (num, den)
}

/// The sign prefactor `ε_{p,j}`: `sgn j`, or for `j = 0` the sign of
/// `q_{p−1,i} q_{p+1,i+1}` (zero when either factor is zero, in which case
/// the product formula vanishes as well).
pub fn epsilon(rows: &[Vec<i64>], p: usize, j: i64) -> i64 {
    if j != 0 {
        return j.signum();
    }
    let i = p / 2;
    (rows[p - 2][i - 1] * rows[p][i]).signum()
}

/// `a_{p,j}²` as an exact rational, or `None` when `σ_{p,j}` leaves the
/// pattern set (the coefficient is then zero by convention).
pub fn a_squared(rows: &[Vec<i64>], p: usize, j: i64) -> Result<Option<BigRational>> {
    check_request(rows, p, j)?;
    if sigma(rows, p, j).is_none() {
        return Ok(None);
    }
    let eps = epsilon(rows, p, j);
    if eps == 0 {
        return Ok(Some(BigRational::zero()));
    }
    let (num, den) = product_parts(rows, p, j);
    if den.is_zero() {
        return Err(Error::InvalidCoefficient(format!("zero denominator at level {p}, index {j}, rows {rows:?}")));
    }
    let r = -BigRational::new(num, den);
    if j != 0 && r.is_negative() {
        return Err(Error::InvalidCoefficient(format!("negative radicand {r} at level {p}, index {j}, rows {rows:?}")));
    }
    Ok(Some(r))
}

/// `a_{p,j}` evaluated in floating point (imaginary when the radicand is negative).
pub fn a_coeff(rows: &[Vec<i64>], p: usize, j: i64) -> Result<Complex64> {
    let Some(r) = a_squared(rows, p, j)? else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let eps = epsilon(rows, p, j) as f64;
    let v = r.to_f64().expect("finite radicand");
    Ok(if v >= 0.0 { Complex64::new(eps * v.sqrt(), 0.0) } else { Complex64::new(0.0, eps * (-v).sqrt()) })
}

/// Numerator and denominator of the defining product, exposed for identity checks.
pub fn a_product_parts(rows: &[Vec<i64>], p: usize, j: i64) -> Result<(BigInt, BigInt)> {
    check_request(rows, p, j)?;
    Ok(product_parts(rows, p, j))
}
