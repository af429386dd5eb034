//! Exact matrix rank over `Q` and over prime fields.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
///
/// Runs in `i128` with overflow checks and restarts with big integers if an
/// intermediate minor does not fit.
pub fn rank_rational(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let rows: Vec<Vec<i128>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| i128::from(m.get(r, c))).collect())
        .collect();
    match bareiss_i128(rows) {
        Some(rank) => rank,
        None => {
            let rows = (0..m.rows)
                .map(|r| (0..m.cols).map(|c| BigInt::from(m.get(r, c))).collect())
                .collect();
            bareiss_big(rows)
        }
    }
}

fn pick_pivot<T, F: Fn(&T) -> bool, K: Ord>(
    rows: &[Vec<T>],
    from: usize,
    col: usize,
    nonzero: F,
    key: impl Fn(&T) -> K,
) -> Option<usize> {
    (from..rows.len())
        .filter(|&r| nonzero(&rows[r][col]))
        .min_by_key(|&r| key(&rows[r][col]))
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        // smallest nonzero magnitude keeps intermediate minors small
        let Some(p) = pick_pivot(&a, rank, col, |v| *v != 0, |v| v.unsigned_abs()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col];
        for r in rank + 1..a.len() {
            let factor = a[r][col];
            for c in col..cols {
                let lhs = a[r][c].checked_mul(pivot)?;
                let rhs = a[rank][c].checked_mul(factor)?;
                a[r][c] = lhs.checked_sub(rhs)? / prev;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(p) = pick_pivot(&a, rank, col, |v| !v.is_zero(), |v| v.abs()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in rank + 1..a.len() {
            let factor = a[r][col].clone();
            for c in col..cols {
                let v = (&a[r][c] * &pivot - &a[rank][c] * &factor) / &prev;
                a[r][c] = v;
            }
        }
        prev = pivot;
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Rank over `GF(p)` by Gaussian elimination with modular inverses.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let p_i = p as i128;
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| (i128::from(m.get(r, c)).rem_euclid(p_i)) as u64).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pr) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = mod_pow(a[rank][col], p - 2, p);
        for c in col..m.cols {
            a[rank][c] = mul_mod(a[rank][c], inv, p);
        }
        for r in rank + 1..a.len() {
            let factor = a[r][col];
            if factor == 0 {
                continue;
            }
            for c in col..m.cols {
                let sub = mul_mod(factor, a[rank][c], p);
                a[r][c] = (a[r][c] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}
