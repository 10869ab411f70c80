//! Exact rank computations: bit-packed elimination over `F_2` and
//! fraction-free sparse elimination over `Q`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

/// Incremental row echelon form over `F_2` with bit-packed rows.
pub struct F2Echelon {
    words: usize,
    /// pivot column -> reduced row whose lowest set bit is that column
    pivots: HashMap<usize, Vec<u64>>,
    last: Option<usize>,
}

impl F2Echelon {
    pub fn new(cols: usize) -> Self {
        F2Echelon {
            words: cols.div_ceil(64).max(1),
            pivots: HashMap::new(),
            last: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot column of the most recent independent row.
    pub fn last_pivot(&self) -> Option<usize> {
        self.last
    }

    /// Inserts a row given by the columns holding a one (each at most once).
    /// Returns true when the row was independent of those already present.
    pub fn insert(&mut self, ones: &[usize]) -> bool {
        let mut row = vec![0u64; self.words];
        for &c in ones {
            row[c / 64] ^= 1 << (c % 64);
        }
        self.insert_packed(row)
    }

    pub fn insert_packed(&mut self, mut row: Vec<u64>) -> bool {
        loop {
            let Some(lead) = lowest_bit(&row) else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    for (a, b) in row.iter_mut().zip(p).skip(lead / 64) {
                        *a ^= b;
                    }
                }
                None => {
                    self.pivots.insert(lead, row);
                    self.last = Some(lead);
                    return true;
                }
            }
        }
    }
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

/// Rank over `F_2` of rows given as lists of one-columns.
pub fn rank_f2(cols: usize, rows: &[Vec<usize>]) -> usize {
    let mut ech = F2Echelon::new(cols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

type SparseRow<T> = Vec<(usize, T)>;

fn content_normalize<T>(row: &mut SparseRow<T>)
where
    T: Clone + Integer + Signed,
{
    let mut g = T::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let flip = row.first().is_some_and(|(_, v)| v.is_negative());
    if g.is_zero() {
        return;
    }
    let g = if flip { -g } else { g };
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.clone() / g.clone();
        }
    }
}

/// `a * row - b * pivot`, dropping cancelled entries. `None` on overflow.
fn combine<T>(row: &SparseRow<T>, a: &T, pivot: &SparseRow<T>, b: &T) -> Option<SparseRow<T>>
where
    T: Clone + Integer + CheckedMul + CheckedSub,
{
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, val) = if ci < cj {
            i += 1;
            (ci, row[i - 1].1.checked_mul(a)?)
        } else if cj < ci {
            j += 1;
            (cj, T::zero().checked_sub(&pivot[j - 1].1.checked_mul(b)?)?)
        } else {
            i += 1;
            j += 1;
            let x = row[i - 1].1.checked_mul(a)?;
            let y = pivot[j - 1].1.checked_mul(b)?;
            (ci, x.checked_sub(&y)?)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    Some(out)
}

fn sparse_rank_generic<T>(rows: impl Iterator<Item = SparseRow<T>>) -> Option<usize>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let mut pivots: HashMap<usize, SparseRow<T>> = HashMap::new();
    for mut row in rows {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|e| e.0);
        content_normalize(&mut row);
        while let Some((lead, lv)) = row.first().cloned() {
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            let pv = &p[0].1;
            let g = lv.gcd(pv);
            let a = pv.clone() / g.clone();
            let b = lv / g;
            row = combine(&row, &a, p, &b)?;
            content_normalize(&mut row);
        }
    }
    Some(pivots.len())
}

/// Rank over `Q` of a sparse integer matrix, by fraction-free elimination.
/// Runs in `i128` and restarts with arbitrary precision on overflow.
pub fn rank_q(rows: &[Vec<(usize, i64)>]) -> usize {
    let small = sparse_rank_generic(
        rows.iter()
            .map(|r| r.iter().map(|&(c, v)| (c, v as i128)).collect()),
    );
    match small {
        Some(r) => r,
        None => sparse_rank_generic(
            rows.iter()
                .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()),
        )
        .expect("arbitrary precision cannot overflow"),
    }
}
