//! Graded Betti numbers of a Stanley–Reisner ring through Hochster's
//! formula, and the regularity / depth read off from them.
//!
//! `beta_{i, sigma}(K[Delta]) = dim H~_{|sigma| - i - 1}(Delta|_sigma)`.
//!
//! Complex vertices are the polynomial ring's variable slots `0..vertex_count`
//! and vertex sets are bitmasks over those slots. Only `sigma` that are unions
//! of minimal nonfaces can contribute: any other `sigma` has a vertex lying
//! in no nonface inside `sigma`, which makes `Delta|_sigma` a cone.
//!
//! The scan runs over `F_2` first. `dim_Q H~ <= dim_F2 H~` degreewise and both
//! fields give the same reduced Euler characteristic, so an `F_2` result that
//! vanishes, or is concentrated in a single degree, already equals the
//! rational one. Only the remaining subsets are recomputed over `Q`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::linalg::{rank_q, F2Echelon};
use crate::poly::Monomial;

/// Default cap on the number of complex vertices (the scan is `2^vertices`).
pub const DEFAULT_BETTI_CAP: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Q,
    F2,
}

/// A simplicial complex given by its minimal nonfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSpec {
    vertex_count: usize,
    nonfaces: Vec<u64>,
}

impl ComplexSpec {
    pub fn new(vertex_count: usize, nonfaces: Vec<u64>) -> Result<Self> {
        if vertex_count > 64 {
            return Err(Error::CapExceeded {
                what: "complex vertex count",
                limit: 64,
                actual: vertex_count,
            });
        }
        let all = if vertex_count == 64 {
            u64::MAX
        } else {
            (1u64 << vertex_count) - 1
        };
        if nonfaces.iter().any(|&m| m & !all != 0) {
            return Err(invalid("nonface uses a vertex outside the complex"));
        }
        let mut nf = nonfaces;
        nf.sort_by_key(|m| (m.count_ones(), *m));
        nf.dedup();
        let mut minimal: Vec<u64> = Vec::with_capacity(nf.len());
        for m in nf {
            if !minimal.iter().any(|&h| h & !m == 0) {
                minimal.push(m);
            }
        }
        minimal.sort_unstable();
        Ok(ComplexSpec {
            vertex_count,
            nonfaces: minimal,
        })
    }

    /// The Stanley–Reisner complex of a squarefree monomial ideal.
    pub fn from_monomials(gens: &[Monomial], num_vars: usize) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !g.is_squarefree()) {
            return Err(invalid(format!("{g} is not squarefree")));
        }
        ComplexSpec::new(num_vars, gens.iter().map(Monomial::support_mask).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn minimal_nonfaces(&self) -> &[u64] {
        &self.nonfaces
    }

    pub fn is_face(&self, s: u64) -> bool {
        !self.nonfaces.iter().any(|&n| n & !s == 0)
    }

    /// Faces of `Delta|_sigma`, grouped by cardinality (index 0 holds the
    /// empty face), each group sorted.
    pub fn faces_within(&self, sigma: u64) -> Vec<Vec<u64>> {
        let inside: Vec<u64> = self
            .nonfaces
            .iter()
            .copied()
            .filter(|&n| n & !sigma == 0)
            .collect();
        let verts: Vec<usize> = (0..64).filter(|v| sigma >> v & 1 == 1).collect();
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); verts.len() + 1];
        // nonfaces containing each vertex, as candidates to check on insertion
        let per_vertex: Vec<Vec<u64>> = verts
            .iter()
            .map(|&v| inside.iter().copied().filter(|n| n >> v & 1 == 1).collect())
            .collect();
        let mut stack: Vec<(u64, usize)> = vec![(0, 0)];
        while let Some((face, next)) = stack.pop() {
            by_size[face.count_ones() as usize].push(face);
            for k in next..verts.len() {
                let cand = face | 1 << verts[k];
                if per_vertex[k].iter().all(|&n| n & !cand != 0) {
                    stack.push((cand, k + 1));
                }
            }
        }
        while by_size.len() > 1 && by_size.last().is_some_and(Vec::is_empty) {
            by_size.pop();
        }
        for group in &mut by_size {
            group.sort_unstable();
        }
        by_size
    }
}

/// Reduced homology ranks of `Delta|_sigma`: entry `j + 1` is
/// `dim H~_j`, for `j = -1 ..= |sigma| - 1`.
pub fn reduced_homology_ranks(complex: &ComplexSpec, sigma: u64, field: Field) -> Vec<usize> {
    let faces = complex.faces_within(sigma);
    let ranks = match field {
        Field::F2 => boundary_ranks_f2(&faces),
        Field::Q => boundary_ranks_q(&faces),
    };
    let mut out = vec![0usize; sigma.count_ones() as usize + 1];
    for size in 0..faces.len() {
        let below = ranks[size];
        let above = ranks.get(size + 1).copied().unwrap_or(0);
        out[size] = faces[size].len() - below - above;
    }
    out
}

/// `ranks[k]` is the rank of the boundary map from faces of size `k` to
/// faces of size `k - 1` (`ranks[0] = 0`).
fn boundary_ranks_f2(faces: &[Vec<u64>]) -> Vec<usize> {
    let top = faces.len();
    let mut ranks = vec![0usize; top];
    // faces of size k-1 that are pivots of the map from size k; their rows in
    // the next map down are redundant and can be skipped
    let mut cleared: Vec<u64> = Vec::new();
    for k in (1..top).rev() {
        let lower = &faces[k - 1];
        let mut ech = F2Echelon::new(lower.len());
        let mut pivots = Vec::new();
        for &f in &faces[k] {
            if cleared.binary_search(&f).is_ok() {
                continue;
            }
            let ones: Vec<usize> = bits(f)
                .map(|b| lower.binary_search(&(f & !(1 << b))).expect("subface present"))
                .collect();
            if let Some(p) = insert_tracking(&mut ech, &ones) {
                pivots.push(lower[p]);
            }
        }
        ranks[k] = ech.rank();
        pivots.sort_unstable();
        cleared = pivots;
    }
    ranks
}

fn insert_tracking(ech: &mut F2Echelon, ones: &[usize]) -> Option<usize> {
    let before = ech.rank();
    if ech.insert(ones) {
        debug_assert_eq!(ech.rank(), before + 1);
        ech.last_pivot()
    } else {
        None
    }
}

fn boundary_ranks_q(faces: &[Vec<u64>]) -> Vec<usize> {
    let top = faces.len();
    let mut ranks = vec![0usize; top];
    for k in 1..top {
        let lower = &faces[k - 1];
        let rows: Vec<Vec<(usize, i64)>> = faces[k]
            .iter()
            .map(|&f| {
                bits(f)
                    .enumerate()
                    .map(|(pos, b)| {
                        let col = lower.binary_search(&(f & !(1 << b))).expect("subface present");
                        (col, if pos % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        ranks[k] = rank_q(&rows);
    }
    ranks
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Reduced Euler characteristic `sum_j (-1)^j f_j` over faces of
/// `Delta|_sigma` (the empty face counts in dimension -1).
pub fn reduced_euler_characteristic(complex: &ComplexSpec, sigma: u64) -> i64 {
    complex
        .faces_within(sigma)
        .iter()
        .enumerate()
        .map(|(size, fs)| {
            // dimension size - 1: sign (-1)^(size - 1)
            if size % 2 == 1 {
                fs.len() as i64
            } else {
                -(fs.len() as i64)
            }
        })
        .sum()
}

/// Graded Betti numbers `beta_{i,j}` of `S / I_Delta` over `Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries keyed by `(i, j)`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    fn add(&mut self, i: usize, j: usize, v: u64) {
        if v > 0 {
            *self.entries.entry((i, j)).or_insert(0) += v;
        }
    }

    fn merge(mut self, other: BettiTable) -> BettiTable {
        for ((i, j), v) in other.entries {
            self.add(i, j, v);
        }
        self
    }

    /// `max {j - i : beta_{i,j} != 0}`.
    pub fn regularity(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((a, _), _)| *a == i)
            .map(|(_, v)| v)
            .sum()
    }

    /// Macaulay-style grid: columns are homological degrees `i`, rows are
    /// `j - i`.
    pub fn render(&self) -> String {
        let pd = self.projective_dimension();
        let reg = self.regularity();
        let cell = |v: u64| if v == 0 { ".".to_string() } else { v.to_string() };
        let mut width = 1;
        for i in 0..=pd {
            width = width.max(self.total(i).to_string().len());
        }
        let label_w = format!("{reg}:").len().max("total:".len());
        let mut s = String::new();
        let _ = write!(s, "{:>label_w$}", "");
        for i in 0..=pd {
            let _ = write!(s, " {i:>width$}");
        }
        s.push('\n');
        let _ = write!(s, "{:>label_w$}", "total:");
        for i in 0..=pd {
            let _ = write!(s, " {:>width$}", self.total(i));
        }
        for row in 0..=reg {
            s.push('\n');
            let _ = write!(s, "{:>label_w$}", format!("{row}:"));
            for i in 0..=pd {
                let _ = write!(s, " {:>width$}", cell(self.get(i, i + row)));
            }
        }
        s
    }
}

/// Counters from a Betti scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanStats {
    /// Subsets that are unions of minimal nonfaces.
    pub candidates: usize,
    /// Subsets with nonzero `F_2` homology.
    pub f2_nonzero: usize,
    /// Subsets recomputed over `Q`.
    pub q_confirmed: usize,
}

pub fn betti_table(complex: &ComplexSpec) -> Result<BettiTable> {
    betti_table_capped(complex, DEFAULT_BETTI_CAP).map(|(t, _)| t)
}

/// Every subset of the union of the nonfaces that is itself a union of
/// nonfaces, in increasing order.
fn candidate_subsets(complex: &ComplexSpec) -> Vec<u64> {
    let union = complex.nonfaces.iter().fold(0u64, |a, &n| a | n);
    let mut out = Vec::new();
    // enumerate submasks of `union` in increasing order
    let mut sub = 0u64;
    loop {
        let covered = complex
            .nonfaces
            .iter()
            .filter(|&&n| n & !sub == 0)
            .fold(0u64, |a, &n| a | n);
        if covered == sub {
            out.push(sub);
        }
        if sub == union {
            break;
        }
        sub = (sub.wrapping_sub(union)) & union;
    }
    out
}

pub fn betti_table_capped(complex: &ComplexSpec, cap: usize) -> Result<(BettiTable, ScanStats)> {
    if complex.vertex_count > cap {
        return Err(Error::CapExceeded {
            what: "Betti scan vertex count",
            limit: cap,
            actual: complex.vertex_count,
        });
    }
    let candidates = candidate_subsets(complex);
    let (table, stats) = candidates
        .par_iter()
        .fold(
            || (BettiTable::default(), ScanStats::default()),
            |(mut table, mut stats), &sigma| {
                stats.candidates += 1;
                let size = sigma.count_ones() as usize;
                let f2 = reduced_homology_ranks(complex, sigma, Field::F2);
                let nonzero = f2.iter().filter(|&&h| h > 0).count();
                if nonzero == 0 {
                    return (table, stats);
                }
                stats.f2_nonzero += 1;
                let ranks = if nonzero == 1 {
                    f2
                } else {
                    stats.q_confirmed += 1;
                    reduced_homology_ranks(complex, sigma, Field::Q)
                };
                // ranks[j + 1] = dim H~_j contributes to beta_{|sigma| - j - 1, |sigma|}
                for (idx, &h) in ranks.iter().enumerate() {
                    table.add(size - idx, size, h as u64);
                }
                (table, stats)
            },
        )
        .reduce(
            || (BettiTable::default(), ScanStats::default()),
            |(ta, sa), (tb, sb)| {
                (
                    ta.merge(tb),
                    ScanStats {
                        candidates: sa.candidates + sb.candidates,
                        f2_nonzero: sa.f2_nonzero + sb.f2_nonzero,
                        q_confirmed: sa.q_confirmed + sb.q_confirmed,
                    },
                )
            },
        );
    Ok((table, stats))
}

/// Regularity, projective dimension and depth of `S / I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegReport {
    pub reg: usize,
    pub proj_dim: usize,
    pub depth: usize,
    pub betti: BettiTable,
    pub is_cm: bool,
}

/// Reads `reg`, `pd` and `depth = vertex_count - pd` off the Betti table;
/// `dim` is the Krull dimension computed elsewhere.
pub fn reg_depth(complex: &ComplexSpec, dim: usize) -> Result<RegReport> {
    reg_depth_capped(complex, dim, DEFAULT_BETTI_CAP)
}

pub fn reg_depth_capped(complex: &ComplexSpec, dim: usize, cap: usize) -> Result<RegReport> {
    let (betti, _) = betti_table_capped(complex, cap)?;
    Ok(reg_report_from_table(betti, complex.vertex_count, dim))
}

pub fn reg_report_from_table(betti: BettiTable, vertex_count: usize, dim: usize) -> RegReport {
    let proj_dim = betti.projective_dimension();
    let depth = vertex_count - proj_dim;
    RegReport {
        reg: betti.regularity(),
        proj_dim,
        depth,
        is_cm: depth == dim,
        betti,
    }
}
