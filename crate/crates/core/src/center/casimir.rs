//! The central elements `C_n(u)` built by recursion on `n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::arith::{GaussianRational, UPoly};
use crate::uea::{Element, Generator, Monomial};

use super::iwasawa::IwasawaGens;


/// `[Σ A_k², B] = Σ (2 A_k [A_k, B] − [A_k, [A_k, B]])` over the generators of so_k.
fn omega_commutator(k: usize, b: &Element) -> Element {
    let n = b.rank();
    let parts: Vec<Element> = Generator::all(k)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|g| {
            let ab = b.ad(g);
            let left = &Element::generator(n, g) * &ab;
            &left.scale_int(2) - &ab.ad(g)
        })
        .collect();
    let mut out = Element::zero(n);
    for p in &parts {
        out += p;
    }
    out
}

/// `x · A_g` computed as `A_g x − [A_g, x]`.
fn right_gen_mul(x: &Element, g: Generator) -> Element {
    &(&Element::generator(x.rank(), g) * x) - &x.ad(g)
}

fn compute(n: usize) -> Element {
    if n < 2 {
        return Element::one(n);
    }
    let prev = build_c(n - 2).embed(n).expect("C_{n-2} lives in so_{n-2}");
    let gens = IwasawaGens::new(n);
    let nn = n as i64;
    let u2 = Element::scalar(n, UPoly::monomial(2, GaussianRational::from_int(1)));

    // −{(H − (n−2)/2)² − u² + Σ X_i²} C_{n−2}
    let hs = gens.h_minus(nn - 2, 2);
    let mut brace = &(&hs * &hs) - &u2;
    for x in &gens.x {
        brace += &(x * x);
    }
    let mut out = -&(&brace * &prev);

    // Inner brackets [A_{n−1,i}, C_{n−2}], shared by all remaining terms.
    let outer: Vec<Generator> = (1..=n - 2).map(|i| Generator::new(n - 1, i).expect("valid generator")).collect();
    let inner: Vec<Element> = outer.par_iter().map(|&g| prev.ad(g)).collect();
    let h5 = gens.h_minus(nn - 5, 2);
    let half = GaussianRational::from_ratio(1, 2);

    // Σ_i X_i · { (H − (n−5)/2) B_i + 2 C A_{n−1,i} − ½ [Ω, B_i] − ½ Σ_j X_j [A_{n−1,i}, B_j] }
    let pieces: Vec<Element> = (0..n - 2)
        .into_par_iter()
        .map(|i| {
            let bi = &inner[i];
            let mut y = &h5 * bi;
            y += &right_gen_mul(&prev, outer[i]).scale_int(2);
            y += &omega_commutator(n - 2, bi).scale(&-&half);
            let mut inner_sum = Element::zero(n);
            for (j, bj) in inner.iter().enumerate() {
                inner_sum += &(&gens.x[j] * &bj.ad(outer[i]));
            }
            y += &inner_sum.scale(&-&half);
            &gens.x[i] * &y
        })
        .collect();
    for p in &pieces {
        out += p;
    }
    out
}

/// `C_n(u)`, memoized per `n`.
pub fn build_c(n: usize) -> Arc<Element> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Element>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&n) {
        return hit.clone();
    }
    let value = Arc::new(compute(n));
    cache.lock().expect("cache poisoned").entry(n).or_insert(value).clone()
}

/// Whether `x` is a monic polynomial in `u²` of degree `⌊n/2⌋` whose leading
/// coefficient is the unit monomial.
pub fn monic_degree_check(x: &Element, n: usize) -> bool {
    let top = 2 * (n / 2);
    for (m, c) in x.raw_terms() {
        if c.terms().any(|(p, _)| p % 2 == 1) {
            return false;
        }
        let deg = c.degree().unwrap_or(0);
        if m.is_unit() {
            if deg != top || !num_traits::One::is_one(&c.coeff(top)) {
                return false;
            }
        } else if deg >= top {
            return false;
        }
    }
    x.raw_terms().contains_key(&Monomial::unit())
}
