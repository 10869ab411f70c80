//! Closed-form regularity and Hilbert series values for the graph families
//! with known formulas, kept separate from the direct pipeline so the two can
//! be compared.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::graph::{self, Graph, VertexSet};
use crate::poly::{RationalSeries, UnivarPoly};
use crate::primes::krull_dim_combinatorial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `P_n`.
    Path(usize),
    /// `C_n`.
    Cycle(usize),
    /// `K_{s-1, s-1}`, parametrised by the target degree `s`.
    Bipartite(usize),
    /// `K_{p_1, ..., p_k}`; a single part denotes the complete graph.
    Multipartite(Vec<usize>),
    /// The `(s - r)`-th suspension of `P_{r+1}`.
    SuspendedPath(usize, usize),
    /// `T_{p_1, ..., p_t}`.
    Starlike(Vec<usize>),
    /// `G_m`.
    Gm(usize),
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Bipartite(_) => "bipartite",
            Family::Multipartite(_) => "multipartite",
            Family::SuspendedPath(..) => "suspath",
            Family::Starlike(_) => "starlike",
            Family::Gm(_) => "gm",
        }
    }

    /// Parses a tag plus its integer parameters.
    pub fn from_parts(tag: &str, params: &[usize]) -> Result<Family> {
        let one = || -> Result<usize> {
            match params {
                [x] => Ok(*x),
                _ => Err(invalid(format!("{tag} takes exactly one parameter"))),
            }
        };
        Ok(match tag {
            "path" => Family::Path(one()?),
            "cycle" => Family::Cycle(one()?),
            "bipartite" => Family::Bipartite(one()?),
            "gm" => Family::Gm(one()?),
            "multipartite" => Family::Multipartite(params.to_vec()),
            "starlike" => Family::Starlike(params.to_vec()),
            "suspath" => match params {
                [r, s] => Family::SuspendedPath(*r, *s),
                _ => return Err(invalid("suspath takes two parameters r,s")),
            },
            other => return Err(Error::UnknownFamily(other.to_string())),
        })
    }

    pub fn params(&self) -> Vec<usize> {
        match self {
            Family::Path(n) | Family::Cycle(n) | Family::Bipartite(n) | Family::Gm(n) => vec![*n],
            Family::Multipartite(p) | Family::Starlike(p) => p.clone(),
            Family::SuspendedPath(r, s) => vec![*r, *s],
        }
    }

    /// The graph this family member denotes.
    pub fn graph(&self) -> Result<Graph> {
        match self {
            Family::Path(n) => graph::path(*n),
            Family::Cycle(n) => graph::cycle(*n),
            Family::Bipartite(s) => {
                if *s < 2 {
                    return Err(invalid("bipartite needs s >= 2"));
                }
                graph::complete_multipartite(&[s - 1, s - 1])
            }
            Family::Multipartite(parts) if parts.len() == 1 => graph::complete(parts[0]),
            Family::Multipartite(parts) => graph::complete_multipartite(parts),
            Family::SuspendedPath(r, s) => {
                if r >= s {
                    return Err(invalid("suspath needs r < s"));
                }
                graph::suspension(&graph::path(r + 1)?, s - r)
            }
            Family::Starlike(parts) => graph::starlike(parts),
            Family::Gm(m) => graph::gm_graph(*m),
        }
    }

    pub fn expectation(&self) -> Result<FamilyExpectation> {
        match self {
            Family::Path(n) => path_expectation(*n),
            Family::Cycle(n) => cycle_expectation(*n),
            Family::Bipartite(s) => bipartite_expectation(*s),
            Family::Multipartite(p) => multipartite_expectation(p),
            Family::SuspendedPath(r, s) => suspended_path_expectation(*r, *s),
            Family::Starlike(p) => starlike_expectation(p),
            Family::Gm(m) => gm_expectation(*m),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(ToString::to_string).collect();
        write!(f, "{}:{}", self.tag(), params.join(","))
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `tag:p1,p2,...`, e.g. `multipartite:2,2,1` or `suspath:3,5`.
    fn from_str(s: &str) -> Result<Family> {
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("expected tag:params, found `{s}`")))?;
        let params = rest
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| invalid(format!("bad parameter `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Family::from_parts(tag, &params)
    }
}

/// What the closed forms predict for one family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyExpectation {
    pub family: Family,
    pub expected_reg: usize,
    pub expected_deg_h: usize,
    /// `h(t) / (1 - t)^dim`, when a closed form for the whole series exists.
    pub expected_series: Option<RationalSeries>,
    /// For starlike graphs: the h-polynomial expression exactly as stated,
    /// which carries factors `(1 - t)` and is therefore not in lowest terms.
    pub stated_h: Option<UnivarPoly>,
    pub expected_unmixed: Option<bool>,
    pub expected_cm: Option<bool>,
    /// `(S, height of P_S)` pairs that must occur among the minimal primes.
    pub expected_primes: Vec<(VertexSet, usize)>,
    pub notes: String,
}

impl FamilyExpectation {
    fn new(family: Family, reg: usize, deg_h: usize, notes: impl Into<String>) -> Self {
        FamilyExpectation {
            family,
            expected_reg: reg,
            expected_deg_h: deg_h,
            expected_series: None,
            stated_h: None,
            expected_unmixed: None,
            expected_cm: None,
            expected_primes: Vec::new(),
            notes: notes.into(),
        }
    }

    fn with_series(mut self, numerator: UnivarPoly, pole_order: usize) -> Self {
        self.expected_series = Some(RationalSeries::new(numerator, pole_order));
        self
    }
}

fn t() -> UnivarPoly {
    UnivarPoly::monomial(1)
}

fn c(k: i64) -> UnivarPoly {
    UnivarPoly::constant(k)
}

fn one_minus_t_pow(e: usize) -> UnivarPoly {
    UnivarPoly::one_minus_t().pow(e as u32)
}

/// `H(P_n) = (1 + t)^{n-1} / (1 - t)^{n+1}`, `reg = deg h = n - 1`.
pub fn path_expectation(n: usize) -> Result<FamilyExpectation> {
    if n < 2 {
        return Err(invalid("path expectation needs n >= 2"));
    }
    Ok(
        FamilyExpectation::new(Family::Path(n), n - 1, n - 1, "complete intersection")
            .with_series(UnivarPoly::one_plus_t().pow(n as u32 - 1), n + 1),
    )
}

/// The `r = s` case of the `(r, s)` construction: the path `P_{r+1}`.
pub fn equal_case_expectation(r: usize) -> Result<FamilyExpectation> {
    if r < 2 {
        return Err(invalid("needs r >= 2"));
    }
    path_expectation(r + 1)
}

/// Series of the suspension of a graph on `[n]` whose series has pole order
/// `n + 1`: numerator `h(t) (1 - t) + 2t + (n - 1) t^2` over `(1 - t)^{n+2}`.
pub fn suspension_step(series: &RationalSeries, n: usize) -> Result<RationalSeries> {
    if series.pole_order != n + 1 {
        return Err(invalid(format!(
            "suspension step needs pole order n + 1 = {}, found {}",
            n + 1,
            series.pole_order
        )));
    }
    let numerator = &(&series.numerator * &UnivarPoly::one_minus_t())
        + &UnivarPoly::from_coeffs(vec![0, 2, n as i64 - 1]);
    Ok(RationalSeries::new(numerator, n + 2))
}

/// True when the suspension recursion is known to apply to `g`: connected,
/// not complete, `dim = n + 1` and `deg h >= 2`.
pub fn suspension_hypotheses_hold(g: &Graph, dim: usize, deg_h: usize) -> bool {
    g.is_connected() && !g.is_complete() && dim == g.n() + 1 && deg_h >= 2
}

/// `K_{s-1,s-1}`: numerator
/// `1 + (2s-3)t + 2(1-t) - 2(1 + (s-2)t)(1-t)^{s-1}` over `(1-t)^{2s-1}`.
pub fn bipartite_expectation(s: usize) -> Result<FamilyExpectation> {
    if s < 3 {
        return Err(invalid("bipartite expectation needs s >= 3"));
    }
    let si = s as i64;
    let numerator = &(&(&c(1) + &t().scale(&(2 * si - 3).into()))
        + &UnivarPoly::one_minus_t().scale(&2.into()))
        - &(&(&c(1) + &t().scale(&(si - 2).into())) * &one_minus_t_pow(s - 1)).scale(&2.into());
    Ok(
        FamilyExpectation::new(Family::Bipartite(s), 2, s, "K_{s-1,s-1}")
            .with_series(numerator, 2 * s - 1),
    )
}

/// The `(s - r)`-th suspension of `P_{r+1}`: numerator
/// `1 + s t + (1 - t)^{s-r} ((1 + t)^r - 1 - r t)` over `(1 - t)^{s+2}`.
pub fn suspended_path_expectation(r: usize, s: usize) -> Result<FamilyExpectation> {
    if !(3 <= r && r < s) {
        return Err(invalid("suspended path expectation needs 3 <= r < s"));
    }
    let bracket = &(&UnivarPoly::one_plus_t().pow(r as u32) - &c(1)) - &t().scale(&(r as i64).into());
    let numerator = &(&c(1) + &t().scale(&(s as i64).into())) + &(&one_minus_t_pow(s - r) * &bracket);
    Ok(FamilyExpectation::new(
        Family::SuspendedPath(r, s),
        r,
        s,
        format!("suspension^{} of P_{}", s - r, r + 1),
    )
    .with_series(numerator, s + 2))
}

/// `C_n`: `reg = n - 2`, `deg h = 1` for `n = 3` and `n - 1` otherwise.
pub fn cycle_expectation(n: usize) -> Result<FamilyExpectation> {
    if n < 3 {
        return Err(invalid("cycle expectation needs n >= 3"));
    }
    let deg = if n == 3 { 1 } else { n - 1 };
    Ok(FamilyExpectation::new(Family::Cycle(n), n - 2, deg, "cycle"))
}

/// `K_{p_1, ..., p_k}`.
///
/// * `k = 1`: the complete graph, `reg = deg h = 1`.
/// * `p_k = 1`: the suspension of `K_{p_1, ..., p_{k-1}}`; `reg` becomes
///   `max(reg, 2)` and `deg h` grows by one, provided the suspension
///   hypotheses hold for the smaller graph. When the smaller graph is the
///   edgeless `K_{p_1}` (`k = 2`, `p_1 >= 2`) those hypotheses fail; the
///   graph is then the star `K_{1, p_1}`, whose series is known in closed
///   form and whose regularity is 2 (it is not complete).
/// * otherwise `reg = 2` and `deg h = n - p_k + 1` if `2 p_1 < n + 1`,
///   else `2 p_1 - p_k`.
pub fn multipartite_expectation(parts: &[usize]) -> Result<FamilyExpectation> {
    // validates the partition
    graph::complete_multipartite(parts)?;
    let family = Family::Multipartite(parts.to_vec());
    let n: usize = parts.iter().sum();
    let k = parts.len();
    if k == 1 {
        let mut e = FamilyExpectation::new(family, 1, 1, "k = 1 read as the complete graph");
        e.expected_series = Some(RationalSeries::new(
            UnivarPoly::from_coeffs(vec![1, n as i64 - 1]),
            n + 1,
        ));
        return Ok(e);
    }
    let p1 = parts[0];
    let pk = parts[k - 1];
    if pk > 1 {
        let deg = if 2 * p1 < n + 1 { n - pk + 1 } else { 2 * p1 - pk };
        return Ok(FamilyExpectation::new(family, 2, deg, "not complete: reg = 2"));
    }
    if parts.iter().all(|&p| p == 1) {
        let mut e = FamilyExpectation::new(family, 1, 1, "all parts 1: complete graph");
        e.expected_series = Some(RationalSeries::new(
            UnivarPoly::from_coeffs(vec![1, n as i64 - 1]),
            n + 1,
        ));
        return Ok(e);
    }
    if k == 2 {
        // star K_{1,p_1}
        let star = star_series(p1);
        let deg = star.numerator.degree().expect("nonzero");
        let mut e = FamilyExpectation::new(
            family,
            2,
            deg,
            "star K_{1,p_1}: suspension of an edgeless graph, closed-form star series",
        );
        e.expected_series = Some(star);
        return Ok(e);
    }
    let smaller = &parts[..k - 1];
    let sub = multipartite_expectation(smaller)?;
    let sub_graph = graph::complete_multipartite(smaller)?;
    let sub_dim = krull_dim_combinatorial(&sub_graph)?;
    if !suspension_hypotheses_hold(&sub_graph, sub_dim, sub.expected_deg_h) {
        return Err(Error::NotDerivable(format!(
            "suspension recursion does not apply to K_{smaller:?} (dim {sub_dim}, n {})",
            n - 1
        )));
    }
    let mut e = FamilyExpectation::new(
        family,
        sub.expected_reg.max(2),
        sub.expected_deg_h + 1,
        "suspension of K_{p_1..p_{k-1}}",
    );
    if let Some(series) = &sub.expected_series {
        e.expected_series = Some(suspension_step(series, n - 1)?);
    }
    Ok(e)
}

/// `1 + (1 - t)^{t-2} (2t + (t-1) t^2)` over `(1 - t)^{2t}`: the series of
/// the star `K_{1,t}` for `t >= 2`.
pub fn star_series(legs: usize) -> RationalSeries {
    assert!(legs >= 2);
    let tail = UnivarPoly::from_coeffs(vec![0, 2, legs as i64 - 1]);
    let numerator = &c(1) + &(&one_minus_t_pow(legs - 2) * &tail);
    RationalSeries::new(numerator, 2 * legs)
}

/// `T_{p_1..p_t}`: `reg = 2 + sum p_i`; the stated h-polynomial is
/// `[1 + (1-t)^{t-2}(2t + (t-1)t^2)] (1 - t)^{sum p_i}` with
/// `deg = t + sum p_i`. The stated expression is recorded verbatim.
pub fn starlike_expectation(parts: &[usize]) -> Result<FamilyExpectation> {
    graph::starlike(parts)?;
    let legs = parts.len();
    let total: usize = parts.iter().sum();
    let stated = &star_series(legs).numerator * &one_minus_t_pow(total);
    let mut e = FamilyExpectation::new(
        Family::Starlike(parts.to_vec()),
        2 + total,
        legs + total,
        "stated h-polynomial carries (1 - t)^{sum p_i}; see adjudication",
    );
    e.stated_h = Some(stated);
    Ok(e)
}

/// `G_m`: `reg = deg h = m + 6`, not unmixed (so not Cohen–Macaulay), with
/// minimal primes `P_{}` of height `m + 8` and `P_{3,8}` of height `m + 9`.
pub fn gm_expectation(m: usize) -> Result<FamilyExpectation> {
    let mut e = FamilyExpectation::new(Family::Gm(m), m + 6, m + 6, "G_m");
    e.expected_unmixed = Some(false);
    e.expected_cm = Some(false);
    e.expected_primes = vec![
        (VertexSet::EMPTY, m + 8),
        (VertexSet::from_iter([3, 8]), m + 9),
    ];
    Ok(e)
}

/// Candidate readings of the stated starlike h-polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarlikeReadings {
    pub stated: UnivarPoly,
    /// The stated expression with its `(1 - t)` factors cancelled.
    pub reduced: UnivarPoly,
    /// The stated expression with `(1 - t)^{sum p_i}` replaced by
    /// `(1 + t)^{sum p_i}`.
    pub plus_variant: UnivarPoly,
}

pub fn starlike_readings(parts: &[usize]) -> Result<StarlikeReadings> {
    let e = starlike_expectation(parts)?;
    let stated = e.stated_h.expect("starlike records the stated form");
    let (reduced, _) = stated.strip_one_minus_t()?;
    let total: usize = parts.iter().sum();
    let plus_variant =
        &star_series(parts.len()).numerator * &UnivarPoly::one_plus_t().pow(total as u32);
    Ok(StarlikeReadings {
        stated,
        reduced,
        plus_variant,
    })
}
