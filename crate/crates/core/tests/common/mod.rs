//! Independent reference computations used by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use bei_core::{Binomial, Graph, Monomial};

pub mod suites;

/// Rank of a dense integer matrix by fraction-free elimination in `i128`.
pub fn dense_rank(mut m: Vec<Vec<i128>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r == rank || m[r][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[r][c]);
            let pivot = m[rank].clone();
            let row = &mut m[r];
            let mut g = 0i128;
            for k in 0..cols {
                row[k] = row[k] * a - pivot[k] * b;
                g = gcd(g, row[k]);
            }
            if g > 1 {
                row.iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduced homology ranks over `Q` of a complex given by all of its faces
/// (as bitmasks, including the empty face). Index `j + 1` holds `h_j`.
pub fn reduced_homology_q(faces: &[u64], top: usize) -> Vec<usize> {
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); top + 2];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    // boundary from size k to size k - 1
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || by_size[k].is_empty() || by_size[k - 1].is_empty() {
            return 0;
        }
        let index: BTreeMap<u64, usize> = by_size[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows = by_size[k]
            .iter()
            .map(|&f| {
                let mut row = vec![0i128; index.len()];
                let mut sign = 1;
                for v in 0..64 {
                    if f >> v & 1 == 1 {
                        row[index[&(f & !(1 << v))]] = sign;
                        sign = -sign;
                    }
                }
                row
            })
            .collect();
        dense_rank(rows)
    };
    let ranks: Vec<usize> = (0..top + 2).map(boundary_rank).collect();
    (0..top + 1)
        .map(|k| {
            let next = if k + 1 < ranks.len() { ranks[k + 1] } else { 0 };
            by_size[k].len() - ranks[k] - next
        })
        .collect()
}

/// Graded Betti numbers of `S / I` for a squarefree monomial ideal, from the
/// upper Koszul simplicial complexes
/// `K^b(I) = { squarefree t <= b : x^{b - t} in I }`:
/// `beta_{i, b}(S / I) = dim H_{i-2}(K^b(I); Q)` for `i >= 1`.
pub fn koszul_betti(gens: &[Monomial], num_vars: usize) -> BTreeMap<(usize, usize), u64> {
    let masks: Vec<u64> = gens.iter().map(Monomial::support_mask).collect();
    let in_ideal = |m: u64| masks.iter().any(|&g| g & m == g);
    let mut out = BTreeMap::new();
    out.insert((0, 0), 1);
    for b in 1..1u64 << num_vars {
        if !in_ideal(b) {
            continue;
        }
        let faces: Vec<u64> = subsets(b).filter(|&t| in_ideal(b & !t)).collect();
        let h = reduced_homology_q(&faces, b.count_ones() as usize);
        for (k, &rank) in h.iter().enumerate() {
            if rank > 0 {
                // h[k] is H_{k-1}, which contributes to i = k + 1
                *out.entry((k + 1, b.count_ones() as usize)).or_insert(0) += rank as u64;
            }
        }
    }
    out
}

pub fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
        Some(cur)
    })
}

/// Bitmask connectivity on an adjacency list.
pub fn connected(n: usize, adj: &[u64]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen.count_ones() as usize == n
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Number of isomorphism classes of (connected) graphs on `n` vertices, by
/// marking whole orbits of labeled graphs under all relabelings.
pub fn class_count_bruteforce(n: usize, connected_only: bool) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let perms = permutations(n);
    let mut seen: HashSet<u32> = HashSet::new();
    let mut count = 0;
    for code in 0..1u32 << pairs.len() {
        if seen.contains(&code) {
            continue;
        }
        let mut adj = vec![0u64; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if code >> k & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        for p in &perms {
            let mut image = 0u32;
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if code >> k & 1 == 1 {
                    let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                    let idx = pairs.iter().position(|&e| e == (a, b)).unwrap();
                    image |= 1 << idx;
                }
            }
            seen.insert(image);
        }
        if !connected_only || connected(n, &adj) {
            count += 1;
        }
    }
    count
}

/// `f in (gens)` for homogeneous `f`, by comparing the rank of the degree
/// slice spanned by all multiples of the generators with and without `f`.
pub fn in_binomial_ideal(gens: &[Binomial], f: &Binomial) -> bool {
    let num_vars = f.num_vars();
    let d = f.degree();
    let basis = bei_core::hilbert::monomials_of_degree(num_vars, d);
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let row = |a: &Monomial, b: &Monomial| {
        let mut r = vec![0i128; basis.len()];
        r[index[a]] += 1;
        r[index[b]] -= 1;
        r
    };
    let mut rows = Vec::new();
    for g in gens {
        if g.degree() > d {
            continue;
        }
        for m in bei_core::hilbert::monomials_of_degree(num_vars, d - g.degree()) {
            rows.push(row(&(g.lead() * &m), &(g.trail() * &m)));
        }
    }
    let before = dense_rank(rows.clone());
    rows.push(row(f.lead(), f.trail()));
    dense_rank(rows) == before
}

/// Every graph on `n` vertices, as labeled graphs.
pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|j| (1..j).map(move |i| (i, j))).collect();
    (0..1u64 << pairs.len()).map(move |code| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| code >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Taylor coefficients of `h(t) / (1 - t)^dim` up to `max_degree`, by
/// repeated prefix sums in `i128`.
pub fn series_coefficients(h: &[i128], dim: usize, max_degree: usize) -> Vec<i128> {
    let mut c: Vec<i128> = (0..=max_degree).map(|k| if k < h.len() { h[k] } else { 0 }).collect();
    for _ in 0..dim {
        for k in 1..=max_degree {
            c[k] += c[k - 1];
        }
    }
    c
}

/// Euler characteristic identity: `sum (-1)^j h_j`.
pub fn alternating_sum(h: &[usize]) -> i64 {
    h.iter()
        .enumerate()
        .map(|(k, &r)| if k % 2 == 1 { r as i64 } else { -(r as i64) })
        .sum()
}
