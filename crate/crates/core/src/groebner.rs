//! Binomial edge ideals and their reduced Gröbner bases.
//!
//! Everything stays inside the class of pure-difference binomials: the
//! S-polynomial of `u1 - v1` and `u2 - v2` is `(L/u2) v2 - (L/u1) v1`, and a
//! reduction step replaces a term `w` divisible by `u` with `(w/u) v`. So
//! Buchberger's algorithm only ever manipulates pairs of monomials.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{Binomial, Monomial, MonomialOrder};

/// Default cap on the number of basis elements during Buchberger.
pub const DEFAULT_GB_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialIdeal {
    num_vars: usize,
    generators: Vec<Binomial>,
}

impl BinomialIdeal {
    pub fn new(num_vars: usize, generators: Vec<Binomial>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.num_vars() != num_vars {
                return Err(Error::VariableMismatch(g.num_vars(), num_vars));
            }
            if seen.insert(g.clone()) {
                gens.push(g);
            }
        }
        Ok(BinomialIdeal {
            num_vars,
            generators: gens,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Binomial] {
        &self.generators
    }
}

/// `J_G`: one generator `x_i y_j - x_j y_i` per edge `{i, j}`, `i < j`, in a
/// ring with `2n` variables.
pub fn binomial_edge_ideal(g: &Graph) -> BinomialIdeal {
    let n = g.n();
    let generators = g
        .edges()
        .into_iter()
        .map(|(i, j)| {
            let a = &Monomial::x(n, i) * &Monomial::y(n, j);
            let b = &Monomial::x(n, j) * &Monomial::y(n, i);
            Binomial::new(a, b, MonomialOrder::Lex).expect("distinct terms")
        })
        .collect();
    BinomialIdeal {
        num_vars: 2 * n,
        generators,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    num_vars: usize,
    elements: Vec<Binomial>,
}

struct Reducer {
    order: MonomialOrder,
    elements: Vec<Binomial>,
    // support of each leading monomial, for a quick divisibility prefilter
    masks: Vec<u64>,
    use_masks: bool,
}

impl Reducer {
    fn new(order: MonomialOrder, num_vars: usize) -> Self {
        Reducer {
            order,
            elements: Vec::new(),
            masks: Vec::new(),
            use_masks: num_vars <= 64,
        }
    }

    fn push(&mut self, b: Binomial) {
        self.masks.push(if self.use_masks {
            b.lead().support_mask()
        } else {
            0
        });
        self.elements.push(b);
    }

    fn find_divisor(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mask = if self.use_masks { m.support_mask() } else { 0 };
        (0..self.elements.len()).find(|&k| {
            Some(k) != skip && self.masks[k] & !mask == 0 && self.elements[k].lead().divides(m)
        })
    }

    /// Fully reduces a monomial; the result is again a monomial.
    fn normal_form_monomial(&self, mut m: Monomial, skip: Option<usize>) -> Monomial {
        while let Some(k) = self.find_divisor(&m, skip) {
            let e = &self.elements[k];
            m = &m.quotient_unchecked(e.lead()) * e.trail();
        }
        m
    }

    fn normal_form_pair(&self, a: Monomial, b: Monomial) -> Option<Binomial> {
        let a = self.normal_form_monomial(a, None);
        let b = self.normal_form_monomial(b, None);
        Binomial::new(a, b, self.order)
    }
}

/// Buchberger's algorithm with the normal selection strategy and both of
/// Buchberger's criteria, followed by full interreduction.
pub fn buchberger(ideal: &BinomialIdeal, order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_capped(ideal, order, DEFAULT_GB_CAP)
}

pub fn buchberger_capped(
    ideal: &BinomialIdeal,
    order: MonomialOrder,
    cap: usize,
) -> Result<GroebnerBasis> {
    let homogeneous = ideal.generators.iter().all(Binomial::is_homogeneous);
    let mut red = Reducer::new(order, ideal.num_vars);
    // (lcm degree, j, i) min-heap
    let mut queue: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |red: &mut Reducer,
               queue: &mut BinaryHeap<Reverse<(u32, usize, usize)>>,
               pending: &mut HashSet<(usize, usize)>,
               b: Binomial|
     -> Result<()> {
        if homogeneous && !b.is_homogeneous() {
            return Err(Error::ShapeViolation(b.to_string()));
        }
        let j = red.elements.len();
        if j >= cap {
            return Err(Error::CapExceeded {
                what: "Groebner basis size",
                limit: cap,
                actual: j + 1,
            });
        }
        for i in 0..j {
            let deg = red.elements[i].lead().lcm(b.lead()).degree();
            queue.push(Reverse((deg, j, i)));
            pending.insert((i, j));
        }
        red.push(b);
        Ok(())
    };

    for g in &ideal.generators {
        let g = g.reoriented(order);
        if let Some(r) = red.normal_form_pair(g.lead().clone(), g.trail().clone()) {
            add(&mut red, &mut queue, &mut pending, r)?;
        }
    }

    while let Some(Reverse((_, j, i))) = queue.pop() {
        pending.remove(&(i, j));
        let (gi, gj) = (&red.elements[i], &red.elements[j]);
        if gi.lead().coprime(gj.lead()) {
            continue;
        }
        let l = gi.lead().lcm(gj.lead());
        let chain = (0..red.elements.len()).any(|k| {
            k != i
                && k != j
                && red.elements[k].lead().divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let a = &l.quotient_unchecked(gi.lead()) * gi.trail();
        let b = &l.quotient_unchecked(gj.lead()) * gj.trail();
        if let Some(r) = red.normal_form_pair(a, b) {
            add(&mut red, &mut queue, &mut pending, r)?;
        }
    }

    Ok(interreduce(red, ideal.num_vars))
}

fn interreduce(red: Reducer, num_vars: usize) -> GroebnerBasis {
    let order = red.order;
    let mut elems = red.elements;
    elems.sort_by(|a, b| a.lead().cmp_unchecked(b.lead(), order));
    // Keep an element only if no other kept element's lead divides its lead.
    let mut minimal: Vec<Binomial> = Vec::new();
    for e in elems {
        if !minimal.iter().any(|m| m.lead().divides(e.lead())) {
            minimal.push(e);
        }
    }
    let mut minimal_red = Reducer::new(order, num_vars);
    for m in &minimal {
        minimal_red.push(m.clone());
    }
    let elements = minimal
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let trail = minimal_red.normal_form_monomial(e.trail().clone(), Some(k));
            Binomial::new(e.lead().clone(), trail, order).expect("trail stays below lead")
        })
        .collect();
    GroebnerBasis {
        order,
        num_vars,
        elements,
    }
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Elements sorted increasingly by leading monomial.
    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Minimal generators of the initial ideal.
    pub fn initial_ideal(&self) -> Vec<Monomial> {
        self.elements.iter().map(|e| e.lead().clone()).collect()
    }

    fn reducer(&self) -> Reducer {
        let mut r = Reducer::new(self.order, self.num_vars);
        for e in &self.elements {
            r.push(e.clone());
        }
        r
    }

    /// Normal form of a monomial: the unique standard monomial congruent to it.
    pub fn normal_form_monomial(&self, m: &Monomial) -> Monomial {
        self.reducer().normal_form_monomial(m.clone(), None)
    }

    /// Normal form of a binomial; `None` means it lies in the ideal.
    pub fn normal_form(&self, b: &Binomial) -> Option<Binomial> {
        self.reducer()
            .normal_form_pair(b.lead().clone(), b.trail().clone())
    }

    pub fn contains(&self, b: &Binomial) -> bool {
        self.normal_form(b).is_none()
    }

    /// True when no term of any element is divisible by another element's
    /// leading monomial.
    pub fn is_reduced(&self) -> bool {
        self.elements.iter().enumerate().all(|(k, e)| {
            self.elements.iter().enumerate().all(|(l, f)| {
                k == l || (!f.lead().divides(e.lead()) && !f.lead().divides(e.trail()))
            })
        })
    }

    /// One binomial per line, e.g. `x1*y2 - x2*y1`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for e in &self.elements {
            s.push_str(&e.to_string());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    fn lex_gb(g: &Graph) -> GroebnerBasis {
        buchberger(&binomial_edge_ideal(g), MonomialOrder::Lex).unwrap()
    }

    #[test]
    fn edge_ideal_generators() {
        let j = binomial_edge_ideal(&path(2).unwrap());
        assert_eq!(j.generators().len(), 1);
        assert_eq!(j.generators()[0].to_string(), "x1*y2 - x2*y1");
        assert_eq!(j.num_vars(), 4);
        assert!(binomial_edge_ideal(&Graph::empty(3).unwrap())
            .generators()
            .is_empty());
        assert_eq!(binomial_edge_ideal(&cycle(3).unwrap()).generators().len(), 3);
    }

    #[test]
    fn principal_and_paths() {
        let gb = lex_gb(&path(2).unwrap());
        assert_eq!(gb.dump(), "x1*y2 - x2*y1\n");
        for n in 2..=6 {
            let g = path(n).unwrap();
            let gb = lex_gb(&g);
            assert_eq!(gb.len(), n - 1);
            let mut leads: Vec<String> = gb.initial_ideal().iter().map(|m| m.render()).collect();
            leads.sort();
            let mut expected: Vec<String> =
                (1..n).map(|i| format!("x{}*y{}", i, i + 1)).collect();
            expected.sort();
            assert_eq!(leads, expected);
        }
    }

    #[test]
    fn triangle_initial_ideal() {
        let gb = lex_gb(&cycle(3).unwrap());
        let leads: HashSet<String> = gb.initial_ideal().iter().map(|m| m.render()).collect();
        for m in ["x1*y2", "x1*y3", "x2*y3"] {
            assert!(leads.contains(m), "{m} missing from {leads:?}");
        }
        assert!(gb.initial_ideal().iter().all(Monomial::is_squarefree));
        // K_3: the 2-minors already form a Gröbner basis
        assert_eq!(gb.len(), 3);
    }

    #[test]
    fn complete_graph_minors_are_a_basis() {
        let gb = lex_gb(&complete(5).unwrap());
        assert_eq!(gb.len(), 10);
        assert!(gb.is_reduced());
    }

    #[test]
    fn four_cycle_has_cubic_elements() {
        let gb = lex_gb(&cycle(4).unwrap());
        assert!(gb.is_reduced());
        assert!(gb.elements().iter().any(|e| e.degree() == 3));
        assert!(gb.initial_ideal().iter().all(Monomial::is_squarefree));
    }

    #[test]
    fn generators_reduce_to_zero() {
        for g in [cycle(5).unwrap(), complete(4).unwrap(), path(4).unwrap()] {
            let ideal = binomial_edge_ideal(&g);
            for order in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
                let gb = buchberger(&ideal, order).unwrap();
                for f in ideal.generators() {
                    assert!(gb.contains(&f.reoriented(order)));
                }
                assert!(gb.elements().iter().all(Binomial::is_homogeneous));
            }
        }
    }

    #[test]
    fn zero_ideal() {
        let gb = lex_gb(&Graph::empty(3).unwrap());
        assert!(gb.is_empty());
        let m = &Monomial::x(3, 1) * &Monomial::y(3, 2);
        assert_eq!(gb.normal_form_monomial(&m), m);
    }

    #[test]
    fn permuted_generators_give_identical_basis() {
        let g = cycle(5).unwrap();
        let ideal = binomial_edge_ideal(&g);
        let mut gens = ideal.generators().to_vec();
        gens.reverse();
        gens.rotate_left(2);
        let permuted = BinomialIdeal::new(ideal.num_vars(), gens).unwrap();
        for order in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            assert_eq!(
                buchberger(&ideal, order).unwrap(),
                buchberger(&permuted, order).unwrap()
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ideal = binomial_edge_ideal(&cycle(6).unwrap());
        assert!(matches!(
            buchberger_capped(&ideal, MonomialOrder::Lex, 3),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn non_homogeneous_input_is_not_flagged() {
        // x1 - y1^2 in two variables per block: inhomogeneous inputs are fine
        let a = Monomial::x(1, 1);
        let b = &Monomial::y(1, 1) * &Monomial::y(1, 1);
        let f = Binomial::new(a, b, MonomialOrder::Lex).unwrap();
        let gb = buchberger(&BinomialIdeal::new(2, vec![f]).unwrap(), MonomialOrder::Lex).unwrap();
        assert_eq!(gb.len(), 1);
    }
}
