//! Gelfand-Tsetlin patterns for SO(N).

use serde::Serialize;

use crate::error::{Error, Result};

/// Rows `q_1, …, q_{N−1}`; `rows[k−1]` is row `k` and has `⌊(k+1)/2⌋` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GTPattern {
    pub rows: Vec<Vec<i64>>,
}

impl GTPattern {
    /// Row `k` (1-based).
    pub fn row(&self, k: usize) -> &[i64] {
        &self.rows[k - 1]
    }

    pub fn q(&self, k: usize, j: usize) -> i64 {
        self.rows[k - 1][j - 1]
    }
}

pub fn row_len(k: usize) -> usize {
    k.div_ceil(2)
}

/// Whether `lower` (row k) interleaves `upper` (row k+1).
pub fn interleaves(upper: &[i64], lower: &[i64]) -> bool {
    let i = lower.len();
    if upper.len() == i + 1 {
        (0..i).all(|j| upper[j] >= lower[j]) && (0..i.saturating_sub(1)).all(|j| lower[j] >= upper[j + 1]) && (i == 0 || lower[i - 1] >= upper[i].abs())
    } else if upper.len() == i {
        (0..i).all(|j| upper[j] >= lower[j])
            && (0..i.saturating_sub(1)).all(|j| lower[j] >= upper[j + 1])
            && (i == 0 || lower[i - 1] >= -upper[i - 1])
    } else {
        false
    }
}

/// Dominance for SO(N): `⌊N/2⌋` non-increasing entries, the last one
/// non-negative for odd `N` and bounded by `|λ_k| ≤ λ_{k−1}` for even `N`.
pub fn is_dominant(group: usize, lambda: &[i64]) -> bool {
    let k = group / 2;
    if lambda.len() != k {
        return false;
    }
    if group % 2 == 1 {
        return lambda.windows(2).all(|w| w[0] >= w[1]) && lambda.last().is_none_or(|&x| x >= 0);
    }
    if k <= 1 {
        return true;
    }
    lambda[..k - 1].windows(2).all(|w| w[0] >= w[1]) && lambda[k - 2] >= lambda[k - 1].abs()
}

fn check_weight(group: usize, lambda: &[i64]) -> Result<()> {
    if group < 2 || !is_dominant(group, lambda) {
        return Err(Error::NonDominant { group, weight: lambda.to_vec() });
    }
    Ok(())
}

/// All rows that interleave `upper` from below.
pub fn lower_rows(upper: &[i64], lower_len: usize) -> Vec<Vec<i64>> {
    let ranges: Vec<(i64, i64)> = (0..lower_len)
        .map(|j| {
            let hi = upper[j];
            let lo = if j + 1 < lower_len {
                upper[j + 1]
            } else if upper.len() == lower_len + 1 {
                upper[j + 1].abs()
            } else {
                -upper[j]
            };
            (lo, hi)
        })
        .collect();
    let mut out = vec![Vec::new()];
    for (lo, hi) in ranges {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// All λ-patterns of SO(N), sorted lexicographically on the flattened rows.
pub fn enumerate_patterns(group: usize, lambda: &[i64]) -> Result<Vec<GTPattern>> {
    check_weight(group, lambda)?;
    // Partial patterns listed from the top row down.
    let mut partial: Vec<Vec<Vec<i64>>> = vec![vec![lambda.to_vec()]];
    for k in (1..group - 1).rev() {
        let mut next = Vec::new();
        for p in &partial {
            let upper = p.last().expect("nonempty");
            for row in lower_rows(upper, row_len(k)) {
                let mut q = p.clone();
                q.push(row);
                next.push(q);
            }
        }
        partial = next;
    }
    let mut out: Vec<GTPattern> = partial
        .into_iter()
        .map(|mut p| {
            p.reverse();
            GTPattern { rows: p }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Validity of a full row list (rows 1..=top) against the interleaving rules.
pub fn rows_valid(rows: &[Vec<i64>]) -> bool {
    rows.iter().enumerate().all(|(k, r)| r.len() == row_len(k + 1)) && rows.windows(2).all(|w| interleaves(&w[1], &w[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_patterns(3, &[1]).unwrap().len(), 3);
        assert_eq!(enumerate_patterns(3, &[0]).unwrap().len(), 1);
        assert_eq!(enumerate_patterns(5, &[1, 0]).unwrap().len(), 5);
        assert_eq!(enumerate_patterns(4, &[1, 0]).unwrap().len(), 4);
        assert_eq!(enumerate_patterns(4, &[1, 1]).unwrap().len(), 3);
        assert_eq!(enumerate_patterns(4, &[1, -1]).unwrap().len(), 3);
    }

    #[test]
    fn dominance() {
        assert!(is_dominant(4, &[2, -2]));
        assert!(!is_dominant(5, &[2, -2]));
        assert!(!is_dominant(5, &[1, 2]));
        assert!(!is_dominant(4, &[1, 2]));
        assert!(is_dominant(6, &[3, 1, -1]));
        assert!(!is_dominant(6, &[1, 3, 0]));
        assert!(enumerate_patterns(5, &[1, 2]).is_err());
    }

    #[test]
    fn patterns_are_valid_and_sorted() {
        let ps = enumerate_patterns(6, &[2, 1, -1]).unwrap();
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        for p in &ps {
            assert!(rows_valid(&p.rows));
            assert_eq!(p.row(5), &[2, 1, -1]);
        }
    }
}
