//! Harish-Chandra type projections onto the Cartan part.

mod frame;
mod hpoly;
pub mod linalg;
mod triangular;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::arith::{GaussianRational as Q, UPoly};
use crate::cache::RankCache;
use crate::center::{build_c, build_pf_full};
use crate::report::Verification;
use crate::error::{Error, Result};
use crate::uea::pbw::{Monomial, Terms};
use crate::uea::so::dim;
use crate::uea::{Element, Generator};

pub use frame::Frame;
pub use hpoly::HPoly;
pub use triangular::{bracket_coords, RootSystem, TriangularBasis};

use triangular::split_vectors;

fn unit_vec(d: usize, k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[k] = num_traits::One::one();
    v
}

/// Order `X < m < H < X̄` on so_n.
struct SplitFrame {
    frame: Frame,
    middle: std::ops::Range<u8>,
    left_end: u8,
    right_start: u8,
    rho: Q,
}

/// Order `U_pos < T < U_neg` on m = so_{n−2}.
struct CartanFrame {
    frame: Option<Frame>,
    roots: RootSystem,
    t_start: u8,
}

/// Order `X < H < k` on so_n, with `k = so_{n−1}`.
struct IwasawaFrame {
    frame: Frame,
    x_end: u8,
}

fn split_frame(n: usize) -> Arc<SplitFrame> {
    static CACHE: RankCache<SplitFrame> = RankCache::new();
    CACHE.get_or(n, || {
        let (h, x, xbar) = split_vectors(n);
        let d = dim(n);
        let dm = dim(n - 2);
        let mut rows = x.clone();
        rows.extend((0..dm).map(|a| unit_vec(d, a)));
        rows.push(h.clone());
        rows.extend(xbar);
        // ρ on H: half the sum of the H-eigenvalues on the X_i.
        let mut rho = Q::zero();
        for xi in &x {
            let br = bracket_coords(n, &h, xi);
            let k = xi.iter().position(|c| !c.is_zero()).expect("nonzero vector");
            rho += &(&br[k] * &xi[k].inv().expect("nonzero"));
        }
        rho = &rho * &Q::from_ratio(1, 2);
        let left_end = (n - 2) as u8;
        let right_start = (n - 2 + dm + 1) as u8;
        SplitFrame { frame: Frame::new(n, rows), middle: left_end..right_start, left_end, right_start, rho }
    })
}

fn cartan_frame(n: usize) -> Arc<CartanFrame> {
    static CACHE: RankCache<CartanFrame> = RankCache::new();
    CACHE.get_or(n, || {
        let roots = RootSystem::new(n);
        let mr = n - 2;
        let t_start = roots.positive.len() as u8;
        let frame = (dim(mr) > 0).then(|| {
            let mut rows: Vec<Vec<Q>> = roots.positive.iter().map(|(_, v)| v.clone()).collect();
            rows.extend(roots.t.iter().cloned());
            rows.extend(roots.negative.iter().cloned());
            Frame::new(mr, rows)
        });
        CartanFrame { frame, roots, t_start }
    })
}

fn iwasawa_frame(n: usize) -> Arc<IwasawaFrame> {
    static CACHE: RankCache<IwasawaFrame> = RankCache::new();
    CACHE.get_or(n, || {
        let (h, x, _) = split_vectors(n);
        let d = dim(n);
        let mut rows = x;
        rows.push(h);
        rows.extend((0..dim(n - 1)).map(|a| unit_vec(d, a)));
        IwasawaFrame { frame: Frame::new(n, rows), x_end: (n - 2) as u8 }
    })
}

/// Cached triangular basis of so_n.
pub fn build_triangular(n: usize) -> Result<Arc<TriangularBasis>> {
    if n < 2 {
        return Err(Error::Invalid(format!("the triangular decomposition needs n >= 2, got {n}")));
    }
    static CACHE: RankCache<TriangularBasis> = RankCache::new();
    Ok(CACHE.get_or(n, || TriangularBasis::new(n)))
}

fn need_rank(x: &Element) -> Result<usize> {
    let n = x.rank();
    if n < 2 {
        return Err(Error::Invalid(format!("projection needs rank >= 2, got {n}")));
    }
    Ok(n)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

/// Substitutes `H ↦ H + s` (with `H = i A_{n,n−1}`) in an element of
/// U(m ⊕ a), where `A_{n,n−1}` is central and is the last PBW letter.
pub fn shift_h(x: &Element, s: &Q) -> Element {
    let n = x.rank();
    let last = Generator::new(n, n - 1).expect("rank >= 2").letter();
    // A ↦ A − i s
    let c = -(&Q::i() * s);
    let mut terms = Terms::default();
    for (m, p) in x.raw_terms() {
        let letters = m.letters();
        let k = letters.iter().rev().take_while(|&&l| l == last).count();
        let prefix = &letters[..letters.len() - k];
        for t in 0..=k {
            let mut w = prefix.to_vec();
            w.extend(std::iter::repeat_n(last, t));
            let f = c.pow((k - t) as u32).scale_int(binomial(k, t));
            crate::uea::pbw::add_term(&mut terms, Monomial::from_sorted(&w), &p.scale(&f));
        }
    }
    Element::from_raw(n, terms)
}

/// `ρ` evaluated on `H`: `(n−2)/2`.
pub fn rho_a(n: usize) -> Q {
    split_frame(n).rho.clone()
}

/// `ρ_m(T_i)` for `i = 1..⌊(n−2)/2⌋`, from the positive roots.
pub fn rho_m(n: usize) -> Vec<Q> {
    cartan_frame(n).roots.rho()
}

/// Splits the `X < m < H < X̄` straightening of `x` into the part inside
/// U(m ⊕ a) and the rest. Every discarded monomial starts with an `X` or ends
/// with an `X̄`; the flag reports whether that held.
pub fn split_decomposition(x: &Element) -> Result<(Element, Element, bool)> {
    let n = need_rank(x)?;
    let sf = split_frame(n);
    let t = sf.frame.to_frame(x);
    let mut keep = Terms::default();
    let mut drop = Terms::default();
    let mut in_ideal = true;
    for (m, c) in t {
        let l = m.letters();
        if l.iter().all(|f| sf.middle.contains(f)) {
            keep.insert(m, c);
        } else {
            let starts_left = l.first().is_some_and(|&f| f < sf.left_end);
            let ends_right = l.last().is_some_and(|&f| f >= sf.right_start);
            in_ideal &= starts_left || ends_right;
            drop.insert(m, c);
        }
    }
    Ok((sf.frame.to_element(&keep), sf.frame.to_element(&drop), in_ideal))
}

/// Projection onto U(m ⊕ a) along `n U + U n̄`, followed by the shift
/// `H ↦ H + ρ(H)`.
pub fn gamma_n(x: &Element) -> Result<Element> {
    let n = need_rank(x)?;
    let (keep, _, _) = split_decomposition(x)?;
    Ok(shift_h(&keep, &rho_a(n)))
}

/// Projection of an element of U(m ⊕ a) onto U(t_m ⊕ a) along
/// `u U + U ū`, followed by `T_i ↦ T_i + ρ_m(T_i)`.
pub fn gamma_u(x: &Element) -> Result<HPoly> {
    let n = need_rank(x)?;
    let cf = cartan_frame(n);
    let r = cf.roots.r;
    let last = Generator::new(n, n - 1).expect("rank >= 2").letter();
    let m_letters = dim(n - 2) as u8;
    let mut by_power: BTreeMap<usize, Terms> = BTreeMap::new();
    for (m, c) in x.raw_terms() {
        let letters = m.letters();
        let k = letters.iter().rev().take_while(|&&l| l == last).count();
        let prefix = &letters[..letters.len() - k];
        if let Some(&bad) = prefix.iter().find(|&&l| l >= m_letters) {
            let g = Generator::from_letter(bad);
            return Err(Error::NotInSubalgebra(format!("{g} is outside so_{} ⊕ a", n - 2)));
        }
        by_power.entry(k).or_default().insert(Monomial::from_sorted(prefix), c.clone());
    }
    let mut out = HPoly::zero(r + 1);
    let minus_i = -Q::i();
    for (k, terms) in by_power {
        let hk = minus_i.pow(k as u32);
        let Some(frame) = &cf.frame else {
            for (_, c) in terms {
                let mut e = vec![0u32; r + 1];
                e[0] = k as u32;
                out.add_term(e, &c.scale(&hk));
            }
            continue;
        };
        let el = Element::from_raw(n - 2, terms);
        for (m, c) in frame.to_frame(&el) {
            let mut e = vec![0u32; r + 1];
            e[0] = k as u32;
            let ok = m.letters().iter().all(|&f| {
                let inside = f >= cf.t_start && ((f - cf.t_start) as usize) < r;
                if inside {
                    e[1 + (f - cf.t_start) as usize] += 1;
                }
                inside
            });
            if ok {
                out.add_term(e, &c.scale(&hk));
            }
        }
    }
    for (i, rho) in cf.roots.rho().iter().enumerate() {
        out = out.shift_var(i + 1, rho);
    }
    Ok(out)
}

/// `γ = γ_u ∘ γ_n`.
pub fn gamma(x: &Element) -> Result<HPoly> {
    gamma_u(&gamma_n(x)?)
}

/// Projection onto U(a) ⊗ U(k) along `n U`, without shift.
pub fn projection_p(x: &Element) -> Result<Element> {
    let n = need_rank(x)?;
    let f = iwasawa_frame(n);
    let mut keep = Terms::default();
    for (m, c) in f.frame.to_frame(x) {
        if m.letters().first().is_none_or(|&l| l >= f.x_end) {
            keep.insert(m, c);
        }
    }
    Ok(f.frame.to_element(&keep))
}

/// `(u² − H²) ∏ (u² − T_i²)` with `⌊(n−2)/2⌋` factors `T_i`.
pub fn expected_center_image(n: usize) -> HPoly {
    let r = (n - 2) / 2;
    let u2 = HPoly::scalar(r + 1, UPoly::monomial(2, num_traits::One::one()));
    let mut out = &u2 - &HPoly::h(r + 1).pow(2);
    for i in 1..=r {
        out = &out * &(&u2 - &HPoly::t(r + 1, i).pow(2));
    }
    out
}

/// `(−i)^m H T_1 ⋯ T_{m−1}` in the variables of rank `2m`.
pub fn expected_pfaffian_image(m: usize) -> HPoly {
    let nv = m;
    let mut out = HPoly::h(nv).scale(&(-Q::i()).pow(m as u32));
    for i in 1..m {
        out = &out * &HPoly::t(nv, i);
    }
    out
}

/// `(u² + A_{n,n−1}²) C_{n−2}(u)` in rank `n`.
pub fn expected_gamma_n_image(n: usize) -> Element {
    let top = Element::gen(n, n, n - 1).expect("n ≥ 2");
    let u2 = Element::scalar(n, UPoly::monomial(2, num_traits::One::one()));
    let prev = build_c(n - 2).embed(n).expect("smaller rank embeds");
    &(&u2 + &(&top * &top)) * &prev
}

/// Both images of `C_n(u)`: under `γ_n` and under `γ`.
pub fn verify_center_images(n: usize) -> Result<Verification> {
    let c = build_c(n);
    let gn = gamma_n(&c)?;
    let diff = &gn - &expected_gamma_n_image(n);
    let g = gamma(&c)?;
    let expected = expected_center_image(n);
    let first = Verification::from_residual(|| serde_json::json!({ "map": "gamma_n", "n": n }), diff.len());
    let second = if g == expected {
        Verification::pass()
    } else {
        Verification::fail(serde_json::json!({ "map": "gamma", "n": n, "image": g.to_string() }), (&g - &expected).terms().count())
    };
    Ok(first.and(second))
}

/// `γ(PF_{2m}) = (−i)^m H T_1 ⋯ T_{m−1}`.
pub fn verify_pfaffian_image(m: usize) -> Result<Verification> {
    let g = gamma(&build_pf_full(m))?;
    let expected = expected_pfaffian_image(m);
    Ok(if g == expected {
        Verification::pass()
    } else {
        Verification::fail(serde_json::json!({ "m": m, "image": g.to_string() }), (&g - &expected).terms().count())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::IwasawaGens;

    fn a(n: usize, j: usize, i: usize) -> Element {
        Element::gen(n, j, i).unwrap()
    }

    #[test]
    fn triangular_shapes() {
        let b3 = build_triangular(3).unwrap();
        assert!(b3.t.is_empty() && b3.u_pos.is_empty());
        assert_eq!(b3.x.len(), 1);
        let b4 = build_triangular(4).unwrap();
        assert_eq!(b4.t, vec![a(4, 2, 1).scale(&Q::i())]);
        assert!(b4.u_pos.is_empty());
        let b6 = build_triangular(6).unwrap();
        assert_eq!(b6.positive_roots, vec![vec![1, 1], vec![1, -1]]);
        for n in 2..=7 {
            let b = build_triangular(n).unwrap();
            assert_eq!(b.change_of_basis.len(), dim(n));
            assert!(linalg::inverse(&b.change_of_basis).is_some());
            for (u, root) in b.u_pos.iter().zip(&b.positive_roots) {
                for (t, &l) in b.t.iter().zip(root) {
                    assert_eq!(t.try_commutator(u).unwrap(), u.scale_int(l));
                }
            }
            for (u, root) in b.u_neg.iter().zip(&b.positive_roots) {
                for (t, &l) in b.t.iter().zip(root) {
                    assert_eq!(t.try_commutator(u).unwrap(), u.scale_int(-l));
                }
            }
            for x in &b.x {
                assert_eq!(b.h.try_commutator(x).unwrap(), *x);
            }
        }
    }

    #[test]
    fn rho_values() {
        for n in 2..=8 {
            assert_eq!(rho_a(n), Q::from_ratio(n as i64 - 2, 2));
            let rho = rho_m(n);
            for (i, v) in rho.iter().enumerate() {
                assert_eq!(*v, Q::from_ratio(n as i64 - 2 - 2 * (i as i64 + 1), 2), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn trivial_projections() {
        assert_eq!(gamma_n(&Element::one(4)).unwrap(), Element::one(4));
        let g = IwasawaGens::new(4);
        assert!(gamma_n(&g.x[0]).unwrap().is_zero());
        assert!(gamma_n(&g.xbar[1]).unwrap().is_zero());
        assert_eq!(gamma(&Element::one(5)).unwrap(), HPoly::one(2));
        assert!(projection_p(&(&g.x[0] * &g.h)).unwrap().is_zero());
        assert_eq!(projection_p(&a(4, 2, 1)).unwrap(), a(4, 2, 1));
    }

    #[test]
    fn gamma_u_on_cartan_and_roots() {
        for n in 4..=7 {
            let b = build_triangular(n).unwrap();
            let img = gamma_u(&b.t[0]).unwrap();
            let r = (n - 2) / 2;
            let expected = &HPoly::t(r + 1, 1) + &HPoly::scalar(r + 1, UPoly::constant(Q::from_ratio(n as i64 - 4, 2)));
            assert_eq!(img, expected);
            for u in &b.u_pos {
                assert!(gamma_u(u).unwrap().is_zero());
            }
        }
        assert!(matches!(gamma_u(&a(5, 4, 1)), Err(Error::NotInSubalgebra(_))));
    }

    #[test]
    fn center_images_low_rank() {
        for n in 2..=5 {
            let c = build_c(n);
            let gn = gamma_n(&c).unwrap();
            let u2_plus = &Element::scalar(n, UPoly::monomial(2, num_traits::One::one())) + &(&a(n, n, n - 1) * &a(n, n, n - 1));
            let prev = build_c(n - 2).embed(n).unwrap();
            assert_eq!(gn, &u2_plus * &prev, "n = {n}");
            assert_eq!(gamma(&c).unwrap(), expected_center_image(n), "n = {n}");
        }
    }

    #[test]
    fn image_checks_report() {
        for n in 2..=5 {
            assert!(verify_center_images(n).unwrap().ok);
        }
        assert!(verify_pfaffian_image(2).unwrap().ok);
        assert_eq!(expected_gamma_n_image(2), *build_c(2));
    }

    #[test]
    fn pfaffian_images_low_rank() {
        for m in 1..=2 {
            assert_eq!(gamma(&build_pf_full(m)).unwrap(), expected_pfaffian_image(m));
        }
    }
}
