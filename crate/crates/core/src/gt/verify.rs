//! Numerical checks of the shift-operator identities on GT modules.

use num_complex::Complex64;
use rayon::prelude::*;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::GaussianRational;
use crate::center::{build_c, build_pf_full};
use crate::error::{Error, Result};
use crate::uea::Generator;

use super::coeff::{a_coeff, a_product_parts, indices, l_value, sigma};
use super::rep::{max_abs, CMat, RepAction};
use super::shift::{build_shift, shift_indices, ShiftData};

pub const COMPOSITE_TOL: f64 = 1e-8;
pub const FORMULA_TOL: f64 = 1e-10;
pub const D_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GtReport {
    pub lemma: String,
    pub n: usize,
    pub lambda: Vec<i64>,
    pub ell: i64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl GtReport {
    fn new(lemma: &str, n: usize, lambda: &[i64], ell: i64, max_residual: f64, tolerance: f64) -> Self {
        let pass = max_residual.is_finite() && max_residual <= tolerance;
        Self { lemma: lemma.to_string(), n, lambda: lambda.to_vec(), ell, max_residual, tolerance, pass }
    }
}

fn cx(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn comm(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// `∏_{i=1}^{⌊(n−2)/2⌋} (u² − (q_{n−3,i} + (n−2−2i)/2)²)`: the scalar by which
/// the central element of U(so_{n−2}) acts on the pattern.
pub fn c_action_scalar(n: usize, rows: &[Vec<i64>], u: f64) -> f64 {
    (1..=(n - 2) / 2)
        .map(|i| {
            let shift = (n as f64 - 2.0 - 2.0 * i as f64) / 2.0;
            u * u - (rows[n - 4][i - 1] as f64 + shift).powi(2)
        })
        .product()
}

fn c_matrix(rep: &RepAction, n: usize, u: f64) -> CMat {
    let diag: Vec<Complex64> = rep.patterns().iter().map(|p| cx(c_action_scalar(n, &p.rows, u))).collect();
    CMat::from_diagonal(&nalgebra::DVector::from_vec(diag))
}

/// A shift pair together with its normalising constant and `τ(C_{n−2}(u_ℓ))`.
pub struct ShiftCheck {
    pub data: ShiftData,
    pub d: f64,
    /// Spread of the pattern-wise values of `d`.
    pub d_spread: f64,
    pub c: CMat,
}

impl ShiftCheck {
    pub fn new(n: usize, lambda: &[i64], ell: i64) -> Result<Self> {
        let data = build_shift(n, lambda, ell)?;
        let c = c_matrix(&data.source, n, data.u());
        let (d, d_spread) = normalisation(&data)?;
        Ok(Self { data, d, d_spread, c })
    }

    fn n(&self) -> usize {
        self.data.n
    }

    fn lambda(&self) -> &[i64] {
        self.data.source.lambda()
    }

    fn report(&self, lemma: &str, residual: f64, tol: f64) -> GtReport {
        GtReport::new(lemma, self.n(), self.lambda(), self.data.ell, residual, tol)
    }

    /// `τ(A_{n−1,i})` on the source and target modules.
    fn a_pair(&self, i: usize) -> (CMat, CMat) {
        let g = Generator::new(self.n() - 1, i).expect("valid generator");
        let src = self.data.source.gen(g).clone();
        let tgt = match &self.data.target {
            Some(t) => t.gen(g).clone(),
            None => CMat::zeros(0, 0),
        };
        (src, tgt)
    }

    /// `[ϖ_ℓ, A]` and `[ϖ_{−ℓ}, A]` for `A = A_{n−1,i}`.
    fn commutators(&self, i: usize) -> (CMat, CMat) {
        let (src, tgt) = self.a_pair(i);
        let up = &self.data.up * &src - &tgt * &self.data.up;
        let down = &self.data.down * &tgt - &src * &self.data.down;
        (up, down)
    }

    pub fn d_constant(&self) -> GtReport {
        let bad = if self.d.is_finite() && self.d != 0.0 { self.d_spread } else { f64::INFINITY };
        self.report("d_constant", bad, D_TOL)
    }

    /// `ϖ_{−ℓ} ϖ_ℓ = −d C`.
    pub fn pipi(&self) -> GtReport {
        let r = &self.data.down * &self.data.up + &self.c * cx(self.d);
        self.report("pipi", max_abs(&r), COMPOSITE_TOL)
    }

    /// The part of the identity without `X`, compared coefficientwise in `h`:
    /// `(h − l − ⌊(n−1)/2⌋)(h + l − ⌊(n−2)/2⌋) ϖ_{−ℓ}ϖ_ℓ = −d((h − (n−2)/2)² − u²) C`.
    pub fn no_x(&self) -> GtReport {
        let n = self.n() as f64;
        let l = self.data.l() as f64;
        let u = self.data.u();
        let a = ((self.n() - 1) / 2) as f64;
        let b = ((self.n() - 2) / 2) as f64;
        let lhs = [-(l + a) * (l - b), -(a + b), 1.0];
        let c0 = (n - 2.0) / 2.0;
        let rhs = [c0 * c0 - u * u, -2.0 * c0, 1.0];
        let p = &self.data.down * &self.data.up;
        let mut worst = 0.0f64;
        for k in 0..3 {
            let r = &p * cx(lhs[k]) + &self.c * cx(self.d * rhs[k]);
            worst = worst.max(max_abs(&r));
        }
        self.report("no_x", worst, COMPOSITE_TOL)
    }

    /// Quadratic part in `X`, for all `i, j`:
    /// `[ϖ_{−ℓ},A_i][ϖ_ℓ,A_j] + (i ↔ j) = −d(2δ_{ij} C + [A_i,[A_j,C]])`.
    pub fn x2(&self) -> GtReport {
        let m = self.n() - 2;
        let comms: Vec<(CMat, CMat)> = (1..=m).map(|i| self.commutators(i)).collect();
        let srcs: Vec<CMat> = (1..=m).map(|i| self.a_pair(i).0).collect();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in i..m {
                let lhs = &comms[i].1 * &comms[j].0 + &comms[j].1 * &comms[i].0;
                let mut rhs = comm(&srcs[i], &comm(&srcs[j], &self.c));
                if i == j {
                    rhs += &self.c * cx(2.0);
                }
                worst = worst.max(max_abs(&(lhs + rhs * cx(self.d))));
            }
        }
        self.report("x2", worst, COMPOSITE_TOL)
    }

    /// Linear part in `X`, for all `i`, in its `h¹` and `h⁰` coefficients.
    pub fn x1(&self) -> GtReport {
        let n = self.n();
        let l = self.data.l() as f64;
        let omega = self.data.source.omega(n - 2);
        let d = cx(self.d);
        let mut worst = 0.0f64;
        for i in 1..=n - 2 {
            let (src, _) = self.a_pair(i);
            let (cu, cd) = self.commutators(i);
            let p1 = &self.data.down * &cu;
            let p2 = &cd * &self.data.up;
            let ac = comm(&src, &self.c);
            let h1 = &p1 + &p2 - &ac * d;
            let k1 = -l - ((n - 3) / 2) as f64;
            let k2 = l - ((n - 2) / 2) as f64;
            let rhs0 = &ac * cx(-(n as f64 - 5.0) / 2.0) - &src * &self.c * cx(2.0) + comm(&omega, &ac) * cx(0.5);
            let h0 = &p1 * cx(k1) + &p2 * cx(k2) - rhs0 * d;
            worst = worst.max(max_abs(&h1)).max(max_abs(&h0));
        }
        self.report("x1", worst, COMPOSITE_TOL)
    }

    /// `a_{−ℓ}(σ_ℓ Q̂) = ∓ a_ℓ(Q̂)`, i.e. `ϖ_{−ℓ} = −ϖ_ℓᵀ` for `ℓ ≠ 0` and `ϖ_0ᵀ` for `ℓ = 0`.
    pub fn transpose_relation(&self) -> GtReport {
        let sign = if self.data.ell == 0 { 1.0 } else { -1.0 };
        let r = &self.data.down - self.data.up.transpose() * cx(sign);
        self.report("transpose_relation", max_abs(&r), FORMULA_TOL)
    }

    /// `l_{n−2,−ℓ}(σ_ℓ λ) − ⌊(n−2)/2⌋ = −l_{n−2,ℓ}(λ) − ⌊(n−1)/2⌋`.
    pub fn l_bookkeeping(&self) -> GtReport {
        let n = self.n();
        let Some(target) = &self.data.target else {
            return self.report("l_bookkeeping", 0.0, FORMULA_TOL);
        };
        let after = l_value(&target.patterns()[0].rows, n - 2, -self.data.ell);
        let gap = (after - ((n - 2) / 2) as i64) - (-self.data.l() - ((n - 1) / 2) as i64);
        self.report("l_bookkeeping", gap.abs() as f64, FORMULA_TOL)
    }
}

/// `d = −(ϖ_{−ℓ}ϖ_ℓ)_{QQ} / ∏_{1≤|i|≤⌊(n−2)/2⌋} (l_{n−2,ℓ} + l_{n−3,i})` over the
/// patterns where the product is nonzero; `1` when no pattern qualifies.
fn normalisation(data: &ShiftData) -> Result<(f64, f64)> {
    let n = data.n;
    let p = &data.down * &data.up;
    let l = data.l();
    let mut values = Vec::new();
    for (k, q) in data.source.patterns().iter().enumerate() {
        let mut den = 1i64;
        for i in (1..=((n - 2) / 2) as i64).flat_map(|i| [i, -i]) {
            den *= l + l_value(&q.rows, n - 3, i);
        }
        if den != 0 && p.nrows() > 0 {
            values.push(-p[(k, k)] / cx(den as f64));
        }
    }
    if values.is_empty() || values.iter().all(|v| v.norm() < FORMULA_TOL) && data.up.iter().all(|z| z.norm() == 0.0) {
        return Ok((1.0, 0.0));
    }
    let first = values[0];
    let spread = values.iter().map(|v| (v - first).norm()).fold(0.0, f64::max);
    if first.im.abs() > D_TOL {
        return Err(Error::Invalid(format!("normalising constant {first} is not real")));
    }
    Ok((first.re, spread))
}

/// The squared coefficients agree with the defining product: `a² · den = −num`.
pub fn radicand_identity(rep: &RepAction, level: usize, tilde: Option<&[i64]>) -> Result<f64> {
    let mut worst = 0.0f64;
    for p in rep.patterns() {
        let mut rows = p.rows.clone();
        if let Some(t) = tilde {
            rows.push(t.to_vec());
        }
        for j in indices(level) {
            if sigma(&rows, level, j).is_none() {
                continue;
            }
            let a = a_coeff(&rows, level, j)?;
            let (num, den) = a_product_parts(&rows, level, j)?;
            let (num, den) = (num.to_f64().unwrap_or(f64::NAN), den.to_f64().unwrap_or(f64::NAN));
            let eps = super::coeff::epsilon(&rows, level, j);
            let expected = if eps == 0 { 0.0 } else { -num };
            let r = (a * a * cx(den) - cx(expected)).norm() / (1.0 + num.abs());
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

/// `τ(C_{n−2}(u))` against the diagonal action `c_action_scalar` at a rational `u`.
pub fn center_action(n: usize, lambda: &[i64], u: &GaussianRational) -> Result<GtReport> {
    let rep = RepAction::new(n - 1, lambda)?;
    let c = build_c(n - 2);
    let m = rep.element_matrix(&c, u)?;
    let (ur, ui) = u.to_f64_pair();
    if ui != 0.0 {
        return Err(Error::Invalid("the parameter must be real".into()));
    }
    let r = m - c_matrix(&rep, n, ur);
    Ok(GtReport::new("center_action", n, lambda, 0, max_abs(&r), COMPOSITE_TOL))
}

/// For `n = 2m`, `ℓ = 0`: `a_{2m−2,0}(Q̂) / ∏_{i<m} l_{2m−3,i}(Q)` is constant, and the
/// coefficient vanishes where the product does.
pub fn verify_pf_shift(m: usize, lambda: &[i64]) -> Result<GtReport> {
    let n = 2 * m;
    let data = build_shift(n, lambda, 0)?;
    let mut ratios = Vec::new();
    let mut stray = 0.0f64;
    for p in data.source.patterns() {
        let mut rows = p.rows.clone();
        rows.push(data.lambda_tilde.clone());
        let a = a_coeff(&rows, n - 2, 0)?;
        let prod: i64 = (1..m as i64).map(|i| l_value(&p.rows, n - 3, i)).product();
        if prod == 0 {
            stray = stray.max(a.norm());
        } else {
            ratios.push(a / cx(prod as f64));
        }
    }
    let spread = ratios.first().map_or(0.0, |f| ratios.iter().map(|r| (r - f).norm()).fold(0.0, f64::max));
    Ok(GtReport::new("pf_shift", n, lambda, 0, spread.max(stray), FORMULA_TOL))
}

/// `τ(opp PF_{2m−2}) = diag((−1)^m i^{m−1} ∏_{i<m} l_{2m−3,i})` on GT(λ) of SO(2m−1).
pub fn pf_diagonal(m: usize, lambda: &[i64]) -> Result<GtReport> {
    let n = 2 * m;
    let rep = RepAction::new(n - 1, lambda)?;
    let pf = build_pf_full(m - 1).opp();
    let mat = rep.element_matrix(&pf, &GaussianRational::from_int(0))?;
    let phase = Complex64::i().powu((m - 1) as u32) * if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let diag: Vec<Complex64> = rep
        .patterns()
        .iter()
        .map(|p| phase * cx((1..m as i64).map(|i| l_value(&p.rows, n - 3, i)).product::<i64>() as f64))
        .collect();
    let r = mat - CMat::from_diagonal(&nalgebra::DVector::from_vec(diag));
    Ok(GtReport::new("pf_diagonal", n, lambda, 0, max_abs(&r), FORMULA_TOL))
}

pub fn verify_pipi(n: usize, lambda: &[i64], ell: i64) -> Result<GtReport> {
    Ok(ShiftCheck::new(n, lambda, ell)?.pipi())
}

pub fn verify_no_x(n: usize, lambda: &[i64], ell: i64) -> Result<GtReport> {
    Ok(ShiftCheck::new(n, lambda, ell)?.no_x())
}

pub fn verify_x2(n: usize, lambda: &[i64], ell: i64) -> Result<GtReport> {
    Ok(ShiftCheck::new(n, lambda, ell)?.x2())
}

pub fn verify_x1(n: usize, lambda: &[i64], ell: i64) -> Result<GtReport> {
    Ok(ShiftCheck::new(n, lambda, ell)?.x1())
}

/// All shift-operator checks for one `(n, λ, ℓ)`.
pub fn shift_reports(n: usize, lambda: &[i64], ell: i64) -> Result<Vec<GtReport>> {
    let check = ShiftCheck::new(n, lambda, ell)?;
    let mut out = vec![check.d_constant(), check.pipi(), check.no_x(), check.x2(), check.x1(), check.l_bookkeeping()];
    if !check.data.is_degenerate() {
        out.push(check.transpose_relation());
        let r = radicand_identity(&check.data.source, n - 2, Some(&check.data.lambda_tilde))?;
        out.push(check.report("radicand", r, FORMULA_TOL));
    }
    Ok(out)
}

/// `shift_reports` for every admissible `ℓ`.
pub fn all_shift_reports(n: usize, lambda: &[i64]) -> Result<Vec<GtReport>> {
    let per_ell: Vec<Vec<GtReport>> = shift_indices(n).into_par_iter().map(|ell| shift_reports(n, lambda, ell)).collect::<Result<_>>()?;
    Ok(per_ell.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all_pass(reports: &[GtReport]) {
        for r in reports {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn shift_identities_small_weights() {
        for (n, lambda) in [(4, vec![0]), (4, vec![2]), (5, vec![1, 0]), (5, vec![1, -1]), (6, vec![1, 0])] {
            assert_all_pass(&all_shift_reports(n, &lambda).unwrap());
        }
    }

    #[test]
    fn degenerate_shift_annihilates() {
        let check = ShiftCheck::new(5, &[1, 1], 2).unwrap();
        assert!(check.data.is_degenerate());
        assert_eq!(check.d, 1.0);
        assert!(check.pipi().pass);
        // Even n, ℓ = 0 and a vanishing last entry: ϖ_0 = 0 and C(u_0) = 0.
        let check = ShiftCheck::new(6, &[1, 0], 0).unwrap();
        assert!(check.data.up.iter().all(|z| z.norm() == 0.0));
        assert!(max_abs(&check.c) < 1e-12);
    }

    #[test]
    fn normalisation_is_nonzero() {
        let check = ShiftCheck::new(5, &[2, 1], -1).unwrap();
        assert!(check.d != 0.0 && check.d_spread < D_TOL);
    }

    #[test]
    fn pfaffian_shift_and_diagonal() {
        for (m, lambda) in [(2, vec![1]), (2, vec![3]), (3, vec![1, 0]), (3, vec![1, 1])] {
            assert!(verify_pf_shift(m, &lambda).unwrap().pass);
            assert!(pf_diagonal(m, &lambda).unwrap().pass);
        }
    }

    #[test]
    fn central_element_acts_by_scalars() {
        for (n, lambda) in [(5, vec![1, 0]), (5, vec![2, -1]), (6, vec![1, 1])] {
            for u in [GaussianRational::from_ratio(3, 7), GaussianRational::from_int(2)] {
                assert!(center_action(n, &lambda, &u).unwrap().pass);
            }
        }
        assert!(center_action(5, &[1, 0], &GaussianRational::i()).is_err());
    }

    #[test]
    fn c_action_matches_small_case() {
        // SO(3) irrep q inside so_4: C_2(u) = u² + A_{2,1}² acts by u² − q².
        assert_eq!(c_action_scalar(4, &[vec![2], vec![3]], 5.0), 21.0);
    }
}
