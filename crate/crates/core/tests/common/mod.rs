//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

/// Weyl dimension of the irreducible SO(N)-module with highest weight `lambda`,
/// computed with doubled coordinates so that everything stays integral.
pub fn weyl_dimension(group: usize, lambda: &[i64]) -> u128 {
    let k = group / 2;
    assert_eq!(lambda.len(), k);
    if group <= 2 {
        return 1;
    }
    let odd = group % 2 == 1;
    // 2ρ_i = N − 2i
    let rho2: Vec<i128> = (1..=k).map(|i| group as i128 - 2 * i as i128).collect();
    let l2: Vec<i128> = lambda.iter().zip(&rho2).map(|(&x, &r)| 2 * x as i128 + r).collect();
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        for j in i + 1..k {
            num *= (l2[i] - l2[j]) * (l2[i] + l2[j]);
            den *= (rho2[i] - rho2[j]) * (rho2[i] + rho2[j]);
        }
        if odd {
            num *= l2[i];
            den *= rho2[i];
        }
    }
    assert_eq!(num % den, 0, "Weyl quotient must be integral");
    (num / den) as u128
}

/// Dominant weights of SO(N) with entries bounded by `bound` in absolute value.
pub fn dominant_weights(group: usize, bound: i64) -> Vec<Vec<i64>> {
    let k = group / 2;
    let mut all: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..k {
        all = all
            .into_iter()
            .flat_map(|w| {
                (-bound..=bound).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    all.retain(|w| so_center::gt::is_dominant(group, w));
    all
}

#[test]
fn weyl_oracle_known_values() {
    assert_eq!(weyl_dimension(3, &[1]), 3);
    assert_eq!(weyl_dimension(4, &[1, 0]), 4);
    assert_eq!(weyl_dimension(5, &[1, 0]), 5);
    assert_eq!(weyl_dimension(5, &[1, 1]), 10);
    assert_eq!(weyl_dimension(5, &[2, 0]), 14);
    assert_eq!(weyl_dimension(6, &[1, 1, 1]), 10);
    assert_eq!(weyl_dimension(7, &[1, 1, 1]), 35);
    assert_eq!(weyl_dimension(8, &[1, 0, 0, 0]), 8);
}
