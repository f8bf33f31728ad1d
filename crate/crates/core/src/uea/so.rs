//! The orthogonal Lie algebra so_n in the basis `A_{j,i} = E_{j,i} − E_{i,j}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

use super::pbw::{Letter, Straightener};

/// The basis element `A_{j,i}` with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    j: u8,
    i: u8,
}

impl Generator {
    pub fn new(j: usize, i: usize) -> Result<Self> {
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        if i == 0 || i > j || j > MAX_RANK {
            return Err(Error::IndexOutOfRange { rank: MAX_RANK, j, i });
        }
        Ok(Self { j: j as u8, i: i as u8 })
    }

    pub fn j(self) -> usize {
        self.j as usize
    }

    pub fn i(self) -> usize {
        self.i as usize
    }

    /// Position in the lexicographic order on `(j, i)`; independent of the rank.
    pub fn letter(self) -> Letter {
        let (j, i) = (self.j as usize, self.i as usize);
        ((j - 1) * (j - 2) / 2 + (i - 1)) as Letter
    }

    pub fn from_letter(l: Letter) -> Self {
        let l = l as usize;
        let mut j = 2;
        while j * (j - 1) / 2 <= l {
            j += 1;
        }
        let i = l - (j - 1) * (j - 2) / 2 + 1;
        Self { j: j as u8, i: i as u8 }
    }

    /// All generators of so_n in PBW order.
    pub fn all(rank: usize) -> impl Iterator<Item = Generator> {
        (0..dim(rank)).map(|l| Generator::from_letter(l as Letter))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A[{},{}]", self.j, self.i)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Letters are `u8`, so the rank is capped where `n(n−1)/2` still fits.
pub const MAX_RANK: usize = 22;

pub fn dim(rank: usize) -> usize {
    rank * rank.saturating_sub(1) / 2
}

/// Integer matrix of `A_{j,i}` in the defining representation.
pub fn matrix(rank: usize, g: Generator) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; rank]; rank];
    m[g.j() - 1][g.i() - 1] = 1;
    m[g.i() - 1][g.j() - 1] = -1;
    m
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0i64; n]; n];
    for r in 0..n {
        for k in 0..n {
            if a[r][k] == 0 {
                continue;
            }
            for s in 0..n {
                c[r][s] += a[r][k] * b[k][s];
            }
        }
    }
    c
}

/// Reads an antisymmetric matrix as a combination of the `A_{j,i}`.
pub fn decompose_antisymmetric(m: &[Vec<i64>]) -> Vec<(Generator, i64)> {
    let n = m.len();
    let mut out = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            assert_eq!(m[j - 1][i - 1], -m[i - 1][j - 1], "matrix is not antisymmetric");
            if m[j - 1][i - 1] != 0 {
                out.push((Generator { j: j as u8, i: i as u8 }, m[j - 1][i - 1]));
            }
        }
    }
    for (d, row) in m.iter().enumerate() {
        assert_eq!(row[d], 0, "matrix is not antisymmetric");
    }
    out
}

/// `[A_{g1}, A_{g2}]` computed from the defining matrices.
pub fn matrix_bracket(rank: usize, g1: Generator, g2: Generator) -> Vec<(Generator, i64)> {
    let a = matrix(rank, g1);
    let b = matrix(rank, g2);
    let ab = matmul(&a, &b);
    let ba = matmul(&b, &a);
    let c: Vec<Vec<i64>> = ab.iter().zip(&ba).map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - y).collect()).collect();
    decompose_antisymmetric(&c)
}

/// so_n with its cached structure constants and straightening memo.
pub struct SoAlgebra {
    rank: usize,
    straightener: Straightener<i64>,
}

impl SoAlgebra {
    fn build(rank: usize) -> Self {
        let d = dim(rank);
        let mut table = vec![Vec::new(); d * d];
        for p in 0..d {
            for q in 0..d {
                let (gp, gq) = (Generator::from_letter(p as Letter), Generator::from_letter(q as Letter));
                table[p * d + q] = matrix_bracket(rank, gp, gq).into_iter().map(|(g, c)| (g.letter(), c)).collect();
            }
        }
        Self { rank, straightener: Straightener::new(d, table) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn straightener(&self) -> &Straightener<i64> {
        &self.straightener
    }
}

/// Shared per-rank algebra; the first caller builds it.
pub fn so_algebra(rank: usize) -> Arc<SoAlgebra> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SoAlgebra>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("algebra cache poisoned");
    guard.entry(rank).or_insert_with(|| Arc::new(SoAlgebra::build(rank))).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(j: usize, i: usize) -> Generator {
        Generator::new(j, i).unwrap()
    }

    #[test]
    fn letter_roundtrip_and_order() {
        let all: Vec<Generator> = Generator::all(8).collect();
        assert_eq!(all.len(), 28);
        for (k, gen) in all.iter().enumerate() {
            assert_eq!(gen.letter() as usize, k);
            assert_eq!(Generator::from_letter(k as Letter), *gen);
        }
        assert!(all.windows(2).all(|w| (w[0].j(), w[0].i()) < (w[1].j(), w[1].i())));
    }

    #[test]
    fn brackets_from_matrices() {
        assert_eq!(matrix_bracket(3, g(3, 2), g(2, 1)), vec![(g(3, 1), 1)]);
        assert!(matrix_bracket(3, g(2, 1), g(2, 1)).is_empty());
        assert!(matrix_bracket(4, g(2, 1), g(4, 3)).is_empty());
        assert_eq!(matrix_bracket(3, g(3, 1), g(2, 1)), vec![(g(3, 2), -1)]);
    }

    // [A_ab, A_cd] = δ_bc A_ad + δ_ad A_bc − δ_bd A_ac − δ_ac A_bd, with A_xy = −A_yx.
    fn four_term(a: usize, b: usize, c: usize, d: usize) -> Vec<(Generator, i64)> {
        let mut acc: HashMap<Generator, i64> = HashMap::new();
        let mut push = |x: usize, y: usize, s: i64| {
            if x == y {
                return;
            }
            let (gen, sign) = if x > y { (g(x, y), s) } else { (g(y, x), -s) };
            *acc.entry(gen).or_default() += sign;
        };
        if b == c {
            push(a, d, 1);
        }
        if a == d {
            push(b, c, 1);
        }
        if b == d {
            push(a, c, -1);
        }
        if a == c {
            push(b, d, -1);
        }
        let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort();
        v
    }

    #[test]
    fn matrix_brackets_match_four_term_formula_up_to_rank_8() {
        for x in Generator::all(8) {
            for y in Generator::all(8) {
                let mut got = matrix_bracket(8, x, y);
                got.sort();
                assert_eq!(got, four_term(x.j(), x.i(), y.j(), y.i()), "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn generator_validation() {
        assert!(matches!(Generator::new(2, 2), Err(Error::EqualIndices(2))));
        assert!(Generator::new(1, 2).is_err());
    }
}
