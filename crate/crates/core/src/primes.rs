//! The primes `P_S` of a binomial edge ideal, one for each vertex set `S`.
//!
//! `P_S` is generated by `x_i, y_i` for `i` in `S` together with the binomial
//! edge ideals of the complete graphs on the components of `G - S`. Its height
//! is `2|S| + sum (|C| - 1) = n + |S| - c(S)`. `P_S` is a minimal prime iff
//! `S` is empty or every `i` in `S` reconnects something: `c(S - i) < c(S)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{component_count, components_after_deletion, Graph, VertexSet};

/// Largest vertex count for the `2^n` subset enumeration.
pub const DEFAULT_PRIMES_CAP: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRecord {
    #[serde(rename = "S", serialize_with = "ser_set")]
    pub s: VertexSet,
    #[serde(rename = "c")]
    pub component_count: usize,
    pub height: usize,
    pub minimal: bool,
}

fn ser_set<Ser: serde::Serializer>(s: &VertexSet, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
    ser.collect_seq(s.iter())
}

fn check_subset(g: &Graph, s: VertexSet) -> Result<()> {
    if !s.is_subset(g.vertices()) {
        return Err(Error::InvalidParameter(format!(
            "{s} is not a subset of [1, {}]",
            g.n()
        )));
    }
    Ok(())
}

fn check_cap(g: &Graph) -> Result<()> {
    if g.n() > DEFAULT_PRIMES_CAP {
        return Err(Error::CapExceeded {
            what: "prime enumeration vertex count",
            limit: DEFAULT_PRIMES_CAP,
            actual: g.n(),
        });
    }
    Ok(())
}

/// The cut-point condition: `S` empty, or `c(S - i) < c(S)` for all `i` in `S`.
pub fn is_cut_set(g: &Graph, s: VertexSet) -> bool {
    let c = component_count(g, s);
    s.iter().all(|i| component_count(g, s.without(i)) < c)
}

pub fn prime_record(g: &Graph, s: VertexSet) -> Result<PrimeRecord> {
    check_subset(g, s)?;
    let c = component_count(g, s);
    Ok(PrimeRecord {
        s,
        component_count: c,
        height: g.n() + s.len() - c,
        minimal: is_cut_set(g, s),
    })
}

fn sort_records(records: &mut [PrimeRecord]) {
    records.sort_by(|a, b| (a.height, a.s.to_vec()).cmp(&(b.height, b.s.to_vec())));
}

/// Minimal primes by direct enumeration of all `S` passing the cut-point
/// condition.
fn minimal_primes_direct(g: &Graph) -> Vec<PrimeRecord> {
    let mut out: Vec<PrimeRecord> = (0..1u64 << g.n())
        .map(VertexSet::from_bits)
        .filter(|&s| is_cut_set(g, s))
        .map(|s| prime_record(g, s).expect("subset of [n]"))
        .collect();
    sort_records(&mut out);
    out
}

/// All minimal primes, sorted by `(height, S)`. Disconnected graphs are
/// handled component by component: a minimal prime of the whole graph picks
/// one minimal prime per component.
pub fn minimal_primes(g: &Graph) -> Result<Vec<PrimeRecord>> {
    check_cap(g)?;
    let comps = components_after_deletion(g, VertexSet::EMPTY);
    if comps.len() <= 1 {
        return Ok(minimal_primes_direct(g));
    }
    // Cartesian combination of per-component cut sets, mapped back to the
    // original labels.
    let mut combined: Vec<VertexSet> = vec![VertexSet::EMPTY];
    for comp in comps {
        let verts = comp.to_vec();
        let sub = g.induced(comp);
        let local: Vec<VertexSet> = minimal_primes_direct(&sub)
            .into_iter()
            .map(|r| r.s.iter().map(|v| verts[v - 1]).collect())
            .collect();
        combined = combined
            .iter()
            .flat_map(|&a| local.iter().map(move |&b| VertexSet::from_bits(a.bits() | b.bits())))
            .collect();
    }
    let mut out = combined
        .into_iter()
        .map(|s| prime_record(g, s))
        .collect::<Result<Vec<_>>>()?;
    sort_records(&mut out);
    Ok(out)
}

/// `dim K[x, y] / J_G = max_S (n - |S| + c(S))`.
pub fn krull_dim_combinatorial(g: &Graph) -> Result<usize> {
    check_cap(g)?;
    Ok((0..1u64 << g.n())
        .map(VertexSet::from_bits)
        .map(|s| g.n() - s.len() + component_count(g, s))
        .max()
        .unwrap_or(0))
}

/// True iff every minimal prime has the same height.
pub fn is_unmixed(g: &Graph) -> Result<bool> {
    let primes = minimal_primes(g)?;
    Ok(primes.windows(2).all(|w| w[0].height == w[1].height))
}

/// `P_T ⊆ P_S` on the combinatorial data: `T ⊆ S`, and every component of
/// `G - T` meets at most one component of `G - S`.
pub fn prime_contained(g: &Graph, t: VertexSet, s: VertexSet) -> bool {
    if !t.is_subset(s) {
        return false;
    }
    let s_comps = components_after_deletion(g, s);
    components_after_deletion(g, t).iter().all(|c| {
        s_comps
            .iter()
            .filter(|d| d.bits() & c.bits() != 0)
            .count()
            <= 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, gm_graph, path};

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn gm_heights() {
        for m in 0..3 {
            let g = gm_graph(m).unwrap();
            let empty = prime_record(&g, VertexSet::EMPTY).unwrap();
            assert_eq!((empty.height, empty.minimal), (m + 8, true));
            let cut = prime_record(&g, set(&[3, 8])).unwrap();
            assert_eq!((cut.height, cut.minimal), (m + 9, true));
        }
    }

    #[test]
    fn leaf_is_not_a_cut_vertex() {
        let r = prime_record(&path(3).unwrap(), set(&[1])).unwrap();
        assert_eq!((r.component_count, r.height, r.minimal), (1, 3, false));
        assert!(prime_record(&path(3).unwrap(), set(&[4])).is_err());
    }

    #[test]
    fn small_minimal_primes() {
        let p2 = minimal_primes(&path(2).unwrap()).unwrap();
        assert_eq!(p2.len(), 1);
        assert!(p2[0].s.is_empty());
        let p3 = minimal_primes(&path(3).unwrap()).unwrap();
        let sets: Vec<Vec<usize>> = p3.iter().map(|r| r.s.to_vec()).collect();
        assert_eq!(sets, vec![vec![], vec![2]]);
        let g0 = minimal_primes(&gm_graph(0).unwrap()).unwrap();
        assert!(g0.iter().any(|r| r.s.is_empty() && r.height == 8));
        assert!(g0.iter().any(|r| r.s == set(&[3, 8]) && r.height == 9));
    }

    #[test]
    fn dimensions() {
        for n in 1..=7 {
            assert_eq!(krull_dim_combinatorial(&path(n).unwrap()).unwrap(), n + 1);
            assert_eq!(krull_dim_combinatorial(&complete(n).unwrap()).unwrap(), n + 1);
        }
        assert_eq!(krull_dim_combinatorial(&gm_graph(0).unwrap()).unwrap(), 10);
    }

    #[test]
    fn unmixedness() {
        assert!(!is_unmixed(&gm_graph(0).unwrap()).unwrap());
        assert!(is_unmixed(&path(4).unwrap()).unwrap());
        assert!(is_unmixed(&complete(5).unwrap()).unwrap());
        let path4: Vec<usize> = minimal_primes(&path(4).unwrap())
            .unwrap()
            .iter()
            .map(|r| r.height)
            .collect();
        assert!(path4.iter().all(|&h| h == 3));
    }

    #[test]
    fn json_shape() {
        let r = prime_record(&path(3).unwrap(), set(&[2])).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"S":[2],"c":2,"height":2,"minimal":true}"#
        );
    }
}
