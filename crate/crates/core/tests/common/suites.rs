//! Property checks shared by the property tests and the acceptance suite.
//! Each returns the number of individual checks made, or the first failure.

use bei_core::graph::{self, decode_graph6, encode_graph6};
use bei_core::harness::enumerate_classes;
use bei_core::hilbert::{hilbert_function_bruteforce, Generators};
use bei_core::hochster::{betti_table, reduced_euler_characteristic, reduced_homology_ranks};
use bei_core::poly::binomial;
use bei_core::{binomial_edge_ideal, buchberger, hilbert_numerator, summarize, ComplexSpec, Field, Graph, MonomialOrder};
use num_traits::ToPrimitive;

use super::{all_labeled, alternating_sum, series_coefficients};

pub type Outcome = std::result::Result<usize, String>;

/// The 6-vertex triangulation of the real projective plane.
pub fn rp2() -> ComplexSpec {
    let facets: [[usize; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ];
    let masks: Vec<u64> = facets
        .iter()
        .map(|f| f.iter().fold(0, |m, &v| m | 1 << (v - 1)))
        .collect();
    let nonfaces = (0..1u64 << 6)
        .filter(|&s| !masks.iter().any(|&f| s & !f == 0))
        .collect();
    ComplexSpec::new(6, nonfaces).unwrap()
}

fn lex_initial_complex(g: &Graph) -> ComplexSpec {
    let gb = buchberger(&binomial_edge_ideal(g), MonomialOrder::Lex).unwrap();
    ComplexSpec::from_monomials(&gb.initial_ideal(), 2 * g.n()).unwrap()
}

fn euler_one(complex: &ComplexSpec, sigma: u64, label: &str) -> Result<(), String> {
    let chi = reduced_euler_characteristic(complex, sigma);
    let q = reduced_homology_ranks(complex, sigma, Field::Q);
    let f2 = reduced_homology_ranks(complex, sigma, Field::F2);
    if alternating_sum(&q) != chi || alternating_sum(&f2) != chi {
        return Err(format!("{label}, sigma {sigma:#b}: chi {chi}, Q {q:?}, F2 {f2:?}"));
    }
    if q.iter().zip(&f2).any(|(a, b)| a > b) {
        return Err(format!("{label}, sigma {sigma:#b}: Q {q:?} exceeds F2 {f2:?}"));
    }
    Ok(())
}

/// Reduced Euler characteristic equals the alternating sum of homology
/// ranks over both fields, on every restriction of the Stanley-Reisner
/// complexes of all graphs with at most 4 vertices, and of `RP^2`.
pub fn euler_characteristic() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        for g in enumerate_classes(n, false).unwrap() {
            let complex = lex_initial_complex(&g);
            for sigma in 0..1u64 << complex.vertex_count() {
                euler_one(&complex, sigma, &encode_graph6(&g))?;
                checked += 1;
            }
        }
    }
    let p = rp2();
    for sigma in 0..1u64 << 6 {
        euler_one(&p, sigma, "RP2")?;
        checked += 1;
    }
    let (q, f2) = (
        reduced_homology_ranks(&p, 63, Field::Q),
        reduced_homology_ranks(&p, 63, Field::F2),
    );
    if q.iter().any(|&r| r != 0) || f2[..4] != [0, 0, 1, 1] || f2[4..].iter().any(|&r| r != 0) {
        return Err(format!("RP2 homology: Q {q:?}, F2 {f2:?}"));
    }
    Ok(checked)
}

/// The lex initial ideal of `J_{P_n}` is a complete intersection of `n - 1`
/// quadrics, so its Betti table is `beta_{i, 2i} = C(n - 1, i)` and nothing else.
pub fn koszul_paths() -> Outcome {
    let mut checked = 0;
    for n in 2..=7 {
        let table = betti_table(&lex_initial_complex(&graph::path(n).unwrap())).unwrap();
        for i in 0..=n {
            for j in 0..=2 * n {
                let expected = if j == 2 * i {
                    binomial(n - 1, i).to_u64().unwrap()
                } else {
                    0
                };
                if table.get(i, j) != expected {
                    return Err(format!(
                        "path({n}): beta_{{{i},{j}}} = {}, expected {expected}",
                        table.get(i, j)
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Hilbert function from linear algebra on the binomial generators agrees
/// with the series from the initial ideal, for every labeled graph on at
/// most 4 vertices, in degrees 0 through 4.
pub fn hilbert_bruteforce() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        for g in all_labeled(n) {
            let ideal = binomial_edge_ideal(&g);
            let gb = buchberger(&ideal, MonomialOrder::Lex).unwrap();
            let summary = summarize(&hilbert_numerator(&gb.initial_ideal(), 2 * n), 2 * n).unwrap();
            let h: Vec<i128> = summary
                .h_poly
                .coeffs()
                .iter()
                .map(|c| c.to_i128().unwrap())
                .collect();
            let series = series_coefficients(&h, summary.dim, 4);
            for d in 0..=4u32 {
                let direct = hilbert_function_bruteforce(Generators::Binomial(&ideal), d).unwrap();
                if direct as i128 != series[d as usize] {
                    return Err(format!(
                        "{}: HF({d}) brute force {direct}, series {}",
                        encode_graph6(&g),
                        series[d as usize]
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn round_trip(g: &Graph) -> Result<(), String> {
    let text = encode_graph6(g);
    match decode_graph6(&text) {
        Ok(back) if back == *g => Ok(()),
        Ok(back) => Err(format!("{text} decodes to {back:?}")),
        Err(e) => Err(format!("{text}: {e}")),
    }
}

/// Every labeled graph on at most 5 vertices, every isomorphism class on 6
/// and 7 vertices, and the standard families up to 12 vertices round-trip
/// through graph6.
pub fn graph6_round_trips() -> Outcome {
    let mut checked = 0;
    for n in 0..=5 {
        for g in all_labeled(n) {
            round_trip(&g)?;
            checked += 1;
        }
    }
    for n in 6..=7 {
        for g in enumerate_classes(n, false).unwrap() {
            round_trip(&g)?;
            checked += 1;
        }
    }
    for n in 2..=12 {
        for g in [graph::path(n), graph::complete(n), graph::cycle(n.max(3))] {
            round_trip(&g.unwrap())?;
            checked += 1;
        }
    }
    Ok(checked)
}
