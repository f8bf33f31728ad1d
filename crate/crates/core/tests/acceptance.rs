//! Acceptance gate: one line per criterion, all of which must pass.

mod common;

use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};

use so_center::arith::GaussianRational;
use so_center::center::{build_c, build_pf, build_pf_full, is_central, iwasawa_pf_check, monic_degree_check};
use so_center::gt::{all_shift_reports, center_action, enumerate_patterns, rep_matrices, verify_pf_shift, GtReport};
use so_center::hc::{verify_center_images, verify_pfaffian_image};
use so_center::uea::opp;

use common::{dominant_weights, weyl_dimension};

const BRACKET_TOL: f64 = 1e-9;
const CASIMIR_TOL: f64 = 1e-10;
const LEMMA_TOL: f64 = 1e-8;
const CENTER_TOL: f64 = 1e-8;
const PF_SHIFT_TOL: f64 = 1e-10;

struct Gate {
    lines: Vec<String>,
    failed: usize,
}

impl Gate {
    fn record(&mut self, id: u32, title: &str, ok: bool, detail: String) {
        let status = if ok { "PASS" } else { "FAIL" };
        let line = format!("criterion {id} [{status}] {title}: {detail}");
        println!("{line}");
        self.lines.push(line);
        if !ok {
            self.failed += 1;
        }
    }
}

fn centrality(gate: &mut Gate) {
    let bad: Vec<usize> = (2..=7).filter(|&n| !is_central(&build_c(n)).is_central()).collect();
    gate.record(1, "centrality of C_n, n = 2..7", bad.is_empty(), format!("non-central ranks {bad:?}"));
}

fn hc_images(gate: &mut Gate) {
    let bad: Vec<usize> = (2..=7).filter(|&n| !verify_center_images(n).map(|v| v.ok).unwrap_or(false)).collect();
    gate.record(2, "Harish-Chandra images of C_n, n = 2..7", bad.is_empty(), format!("mismatching ranks {bad:?}"));
}

fn shape(gate: &mut Gate) {
    let bad: Vec<usize> = (2..=7).filter(|&n| !monic_degree_check(&build_c(n), n)).collect();
    gate.record(3, "C_n monic of degree n/2 in u^2, n = 2..7", bad.is_empty(), format!("bad ranks {bad:?}"));
}

fn opp_invariance(gate: &mut Gate) {
    let bad: Vec<usize> = (2..=6).filter(|&n| opp(&build_c(n)) != *build_c(n)).collect();
    gate.record(4, "opp(C_n) = C_n, n = 2..6", bad.is_empty(), format!("bad ranks {bad:?}"));
}

fn parity(p: &[usize]) -> bool {
    let mut inversions = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn pfaffians(gate: &mut Gate) {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut samples = 0;
    for m in 1..=3 {
        let n = 2 * m;
        let pf = build_pf_full(m);
        if !is_central(&pf).is_central() {
            failures.push(format!("PF_{n} not central"));
        }
        if !iwasawa_pf_check(m).ok {
            failures.push(format!("Iwasawa identity m = {m}"));
        }
        if !verify_pfaffian_image(m).map(|v| v.ok).unwrap_or(false) {
            failures.push(format!("HC image m = {m}"));
        }
        let base: Vec<usize> = (1..=n).rev().collect();
        for _ in 0..24 {
            let mut p = base.clone();
            p.shuffle(&mut rng);
            let rel: Vec<usize> = p.iter().map(|x| n - x).collect();
            let got = build_pf(&p, n).expect("valid indices");
            let want = if parity(&rel) { pf.clone() } else { -&pf };
            samples += 1;
            if got != want {
                failures.push(format!("sign law for {p:?}"));
            }
        }
    }
    gate.record(
        5,
        "Pfaffians PF_2m, m = 1..3 (centrality, sign law, Iwasawa identity, HC image)",
        failures.is_empty(),
        format!("{samples} permutations sampled, failures {failures:?}"),
    );
}

fn gt_representations(gate: &mut Gate) {
    let mut worst_bracket = 0.0f64;
    let mut worst_casimir = 0.0f64;
    let mut dim_mismatch = Vec::new();
    let mut count = 0;
    for group in 3..=5 {
        for lambda in dominant_weights(group, 3) {
            let rep = rep_matrices(group, &lambda).expect("dominant weight");
            worst_bracket = worst_bracket.max(rep.bracket_residual());
            worst_casimir = worst_casimir.max(rep.casimir_residual());
            let size = enumerate_patterns(group, &lambda).unwrap().len() as u128;
            if size != weyl_dimension(group, &lambda) {
                dim_mismatch.push((group, lambda.clone()));
            }
            count += 1;
        }
    }
    let ok = worst_bracket < BRACKET_TOL && worst_casimir < CASIMIR_TOL && dim_mismatch.is_empty();
    gate.record(
        6,
        "GT modules of SO(3), SO(4), SO(5), entries <= 3",
        ok,
        format!("{count} modules, bracket {worst_bracket:.2e}, Casimir {worst_casimir:.2e}, dimension mismatches {dim_mismatch:?}"),
    );
}

fn shift_lemmas(gate: &mut Gate) {
    let cases: [(usize, &[i64]); 6] = [(5, &[2, 1]), (5, &[1, 1]), (5, &[1, -1]), (6, &[2, 1]), (6, &[1, 1]), (6, &[1, 0])];
    let mut failures: Vec<GtReport> = Vec::new();
    let mut worst = 0.0f64;
    let mut count = 0;
    for (n, lambda) in cases {
        for r in all_shift_reports(n, lambda).expect("valid shift data") {
            if matches!(r.lemma.as_str(), "pipi" | "no_x" | "x2" | "x1") {
                worst = worst.max(r.max_residual);
                if r.max_residual >= LEMMA_TOL {
                    failures.push(r.clone());
                }
            }
            if !r.pass {
                failures.push(r);
            }
            count += 1;
        }
    }
    gate.record(
        7,
        "shift-operator identities, n = 5, 6, every admissible ell",
        failures.is_empty(),
        format!("{count} checks, worst lemma residual {worst:.2e}, failures {failures:?}"),
    );
}

fn center_oracle(gate: &mut Gate) {
    let us = [GaussianRational::from_ratio(1, 3), GaussianRational::from_ratio(5, 2), GaussianRational::from_ratio(-2, 7)];
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in [5, 6] {
        for lambda in dominant_weights(n - 1, 2) {
            for u in &us {
                let r = center_action(n, &lambda, u).expect("valid input");
                worst = worst.max(r.max_residual);
                count += 1;
            }
        }
    }
    gate.record(8, "C_{n-2}(u) acts by the predicted scalars, n = 5, 6", worst < CENTER_TOL, format!("{count} cases, worst residual {worst:.2e}"));
}

fn pf_shift(gate: &mut Gate) {
    let mut worst = 0.0f64;
    let mut count = 0;
    for m in [2, 3] {
        for lambda in dominant_weights(2 * m - 1, 2) {
            let r = verify_pf_shift(m, &lambda).expect("valid input");
            worst = worst.max(r.max_residual);
            count += 1;
        }
    }
    gate.record(9, "zero shift is proportional to the Pfaffian eigenvalue, n = 4, 6", worst < PF_SHIFT_TOL, format!("{count} weights, worst residual {worst:.2e}"));
}

#[test]
fn acceptance() {
    let mut gate = Gate { lines: Vec::new(), failed: 0 };
    centrality(&mut gate);
    hc_images(&mut gate);
    shape(&mut gate);
    opp_invariance(&mut gate);
    pfaffians(&mut gate);
    gt_representations(&mut gate);
    shift_lemmas(&mut gate);
    center_oracle(&mut gate);
    pf_shift(&mut gate);
    assert_eq!(gate.lines.len(), 9);
    assert_eq!(gate.failed, 0, "failing criteria:\n{}", gate.lines.join("\n"));
}
