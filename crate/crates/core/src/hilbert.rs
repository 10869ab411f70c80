//! Hilbert series of monomial quotients by pivot recursion, and the
//! h-polynomial summary derived from it.
//!
//! For a monomial ideal `I` and a variable `v`,
//! `N(I) = N(I + (v)) + t * N(I : v)` with `N(I + (v)) = (1 - t) N(I')`,
//! where `I'` keeps the generators not involving `v`. Here `N` is the
//! numerator over `(1 - t)^{num_vars}`.

use std::cmp::Reverse;
use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::BinomialIdeal;
use crate::linalg::rank_q;
use crate::poly::{Monomial, UnivarPoly};

/// How the pivot variable is chosen at each recursion step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// The variable occurring in the most generators.
    #[default]
    MostFrequent,
    /// The lowest-indexed variable occurring in some generator.
    FirstVariable,
    /// The highest-indexed variable occurring in some generator.
    LastVariable,
}

pub fn hilbert_numerator(gens: &[Monomial], num_vars: usize) -> UnivarPoly {
    hilbert_numerator_with(gens, num_vars, PivotRule::default())
}

pub fn hilbert_numerator_with(gens: &[Monomial], num_vars: usize, rule: PivotRule) -> UnivarPoly {
    debug_assert!(gens.iter().all(|g| g.num_vars() == num_vars));
    if num_vars <= 64 && gens.iter().all(Monomial::is_squarefree) {
        let masks: Vec<u64> = gens.iter().map(Monomial::support_mask).collect();
        squarefree_numerator(minimalize_masks(masks), rule)
    } else {
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| g.exponents().to_vec()).collect();
        general_numerator(minimalize_general(gens), num_vars, rule)
    }
}

fn minimalize_masks(mut gens: Vec<u64>) -> Vec<u64> {
    gens.sort_by_key(|m| (m.count_ones(), *m));
    gens.dedup();
    let mut out: Vec<u64> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|&h| h & !g == 0) {
            out.push(g);
        }
    }
    out
}

fn pick_pivot_mask(gens: &[u64], rule: PivotRule) -> usize {
    let support = gens.iter().fold(0u64, |a, &g| a | g);
    match rule {
        PivotRule::FirstVariable => support.trailing_zeros() as usize,
        PivotRule::LastVariable => 63 - support.leading_zeros() as usize,
        PivotRule::MostFrequent => {
            let mut counts = [0u32; 64];
            for &g in gens {
                let mut b = g;
                while b != 0 {
                    counts[b.trailing_zeros() as usize] += 1;
                    b &= b - 1;
                }
            }
            // ties go to the lowest index
            (0..64).max_by_key(|&v| (counts[v], Reverse(v))).unwrap()
        }
    }
}


fn squarefree_numerator(gens: Vec<u64>, rule: PivotRule) -> UnivarPoly {
    if gens.is_empty() {
        return UnivarPoly::one();
    }
    // Pairwise coprime generators form a regular sequence.
    let mut seen = 0u64;
    let coprime = gens.iter().all(|&g| {
        let ok = seen & g == 0;
        seen |= g;
        ok
    });
    if coprime {
        return gens.iter().fold(UnivarPoly::one(), |acc, &g| {
            &acc * &(&UnivarPoly::one() - &UnivarPoly::monomial(g.count_ones() as usize))
        });
    }
    let v = pick_pivot_mask(&gens, rule);
    let bit = 1u64 << v;
    let without: Vec<u64> = gens.iter().copied().filter(|g| g & bit == 0).collect();
    let colon = minimalize_masks(gens.iter().map(|g| g & !bit).collect());
    if colon.contains(&0) {
        // I : v is the unit ideal, so I + (v) = I's generators without v plus v.
        return &UnivarPoly::one_minus_t() * &squarefree_numerator(without, rule);
    }
    let plus = &UnivarPoly::one_minus_t() * &squarefree_numerator(without, rule);
    let colon_part = squarefree_numerator(colon, rule).shift(1);
    &plus + &colon_part
}

fn divides_exp(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize_general(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|g| (g.iter().sum::<u32>(), g.clone()));
    gens.dedup();
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| divides_exp(h, &g)) {
            out.push(g);
        }
    }
    out
}

fn general_numerator(gens: Vec<Vec<u32>>, num_vars: usize, rule: PivotRule) -> UnivarPoly {
    if gens.is_empty() {
        return UnivarPoly::one();
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return UnivarPoly::zero();
    }
    let coprime = (0..num_vars).all(|v| gens.iter().filter(|g| g[v] > 0).count() <= 1);
    if coprime {
        return gens.iter().fold(UnivarPoly::one(), |acc, g| {
            let d = g.iter().sum::<u32>() as usize;
            &acc * &(&UnivarPoly::one() - &UnivarPoly::monomial(d))
        });
    }
    let occurring: Vec<usize> = (0..num_vars)
        .filter(|&v| gens.iter().any(|g| g[v] > 0))
        .collect();
    let v = match rule {
        PivotRule::FirstVariable => occurring[0],
        PivotRule::LastVariable => *occurring.last().unwrap(),
        PivotRule::MostFrequent => *occurring
            .iter()
            .max_by_key(|&&v| (gens.iter().filter(|g| g[v] > 0).count(), Reverse(v)))
            .unwrap(),
    };
    let without: Vec<Vec<u32>> = gens.iter().filter(|g| g[v] == 0).cloned().collect();
    let colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[v] = h[v].saturating_sub(1);
            h
        })
        .collect();
    let plus = &UnivarPoly::one_minus_t() * &general_numerator(without, num_vars, rule);
    let colon_part = general_numerator(minimalize_general(colon), num_vars, rule).shift(1);
    &plus + &colon_part
}

/// The reduced form of a Hilbert series numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSummary {
    /// Numerator over `(1 - t)^{num_vars}`.
    pub raw_numerator: UnivarPoly,
    pub num_vars: usize,
    /// Krull dimension: the pole order after cancelling `(1 - t)` factors.
    pub dim: usize,
    pub h_poly: UnivarPoly,
    pub deg_h: usize,
    pub multiplicity: num_bigint::BigInt,
}

impl HilbertSummary {
    pub fn json(&self) -> HilbertJson {
        HilbertJson {
            h_poly: self.h_poly.render(),
            dim: self.dim,
            deg_h: self.deg_h,
            multiplicity: self.multiplicity.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HilbertJson {
    pub h_poly: String,
    pub dim: usize,
    pub deg_h: usize,
    pub multiplicity: String,
}

/// Cancels every `(1 - t)` factor from `raw_numerator / (1 - t)^{num_vars}`.
pub fn summarize(raw_numerator: &UnivarPoly, num_vars: usize) -> Result<HilbertSummary> {
    let (h_poly, stripped) = raw_numerator.strip_one_minus_t()?;
    if stripped > num_vars {
        return Err(Error::InvalidParameter(format!(
            "numerator has {stripped} factors (1 - t) but the ring has {num_vars} variables"
        )));
    }
    let deg_h = h_poly.degree().expect("nonzero");
    let multiplicity = h_poly.eval(1);
    Ok(HilbertSummary {
        raw_numerator: raw_numerator.clone(),
        num_vars,
        dim: num_vars - stripped,
        h_poly,
        deg_h,
        multiplicity,
    })
}

/// Generators for the brute-force Hilbert function.
pub enum Generators<'a> {
    Binomial(&'a BinomialIdeal),
    Monomial(&'a [Monomial], usize),
}

/// Largest monomial basis the brute-force oracle will build.
pub const BRUTEFORCE_MONOMIAL_CAP: usize = 6_000;

/// All exponent vectors of total degree `d` in `num_vars` variables.
pub fn monomials_of_degree(num_vars: usize, d: u32) -> Vec<Monomial> {
    fn rec(v: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v + 1 == cur.len() {
            cur[v] = left;
            out.push(Monomial::from_exponents(cur.clone()));
            cur[v] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[v] = e;
            rec(v + 1, left - e, cur, out);
        }
        cur[v] = 0;
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut vec![0; num_vars], &mut out);
    out
}

/// `dim_K (S/I)_d` by linear algebra on the degree-`d` slice: the number of
/// monomials of degree `d` minus the rank of all monomial multiples of the
/// generators landing in that degree.
pub fn hilbert_function_bruteforce(gens: Generators<'_>, d: u32) -> Result<usize> {
    let num_vars = match &gens {
        Generators::Binomial(i) => i.num_vars(),
        Generators::Monomial(_, nv) => *nv,
    };
    let basis = monomials_of_degree(num_vars, d);
    if basis.len() > BRUTEFORCE_MONOMIAL_CAP {
        return Err(Error::CapExceeded {
            what: "degree slice size",
            limit: BRUTEFORCE_MONOMIAL_CAP,
            actual: basis.len(),
        });
    }
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    // each generator as signed terms
    let terms: Vec<Vec<(Monomial, i64)>> = match gens {
        Generators::Binomial(i) => i
            .generators()
            .iter()
            .map(|b| vec![(b.lead().clone(), 1), (b.trail().clone(), -1)])
            .collect(),
        Generators::Monomial(ms, _) => ms.iter().map(|m| vec![(m.clone(), 1)]).collect(),
    };
    let mut rows = Vec::new();
    for t in &terms {
        let deg = t[0].0.degree();
        if t.iter().any(|(m, _)| m.degree() != deg) {
            return Err(Error::InvalidParameter(
                "brute-force Hilbert function needs homogeneous generators".into(),
            ));
        }
        if deg > d {
            continue;
        }
        for mult in monomials_of_degree(num_vars, d - deg) {
            rows.push(
                t.iter()
                    .map(|(m, c)| (index[&(m * &mult)], *c))
                    .collect::<Vec<_>>(),
            );
        }
    }
    Ok(basis.len() - rank_q(&rows))
}
