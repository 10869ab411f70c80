//! Finite simple graphs on `[n] = {1, ..., n}` and the graph families used
//! throughout the crate.
//!
//! Vertices are 1-based everywhere in the public API. Internally the
//! adjacency of vertex `v` is a bitmask in which bit `u - 1` is set when
//! `{u, v}` is an edge, which caps graphs at 64 vertices.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// Largest vertex count representable by the bitmask adjacency.
pub const MAX_VERTICES: usize = 64;

/// Default bound for the brute-force canonical labelling (`n!` relabelings).
pub const DEFAULT_CANONICAL_BOUND: usize = 8;

/// A subset of `[n]`, stored as a bitmask with bit `v - 1` for vertex `v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All of `[n]`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= 64 && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!((1..=64).contains(&v));
        self.0 |= 1 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << (v - 1));
    }

    pub fn with(mut self, v: usize) -> Self {
        self.insert(v);
        self
    }

    pub fn without(mut self, v: usize) -> Self {
        self.remove(v);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A finite simple graph on `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `[n]`.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                limit: MAX_VERTICES,
                actual: n,
            });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 1-based edges. Loops, out-of-range endpoints and
    /// repeated edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            g.check_pair(a, b)?;
            if g.has_edge(a, b) {
                return Err(invalid(format!("repeated edge {{{a},{b}}}")));
            }
            g.set_edge(a, b);
        }
        Ok(g)
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(invalid(format!("loop at vertex {a}")));
        }
        if a < 1 || b < 1 || a > self.n || b > self.n {
            return Err(invalid(format!(
                "edge {{{a},{b}}} has an endpoint outside [1, {}]",
                self.n
            )));
        }
        Ok(())
    }

    fn set_edge(&mut self, a: usize, b: usize) {
        self.adj[a - 1] |= 1 << (b - 1);
        self.adj[b - 1] |= 1 << (a - 1);
    }

    /// Adds an edge; a no-op when it is already present.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.set_edge(a, b);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a >= 1 && b >= 1 && a <= self.n && b <= self.n && self.adj[a - 1] >> (b - 1) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v - 1])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 1..=self.n {
            for j in VertexSet(self.adj[i - 1]).iter() {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || components_after_deletion(self, VertexSet::EMPTY).len() == 1
    }

    /// The subgraph induced on `keep`, relabelled to `1..=|keep|` in
    /// increasing vertex order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let verts = keep.to_vec();
        let mut g = Graph {
            n: verts.len(),
            adj: vec![0; verts.len()],
        };
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.adj[a] |= 1 << b;
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v - 1]` (a permutation of `1..=n`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(invalid("permutation length differs from vertex count"));
        }
        let mut seen = VertexSet::EMPTY;
        for &p in perm {
            if p < 1 || p > self.n || seen.contains(p) {
                return Err(invalid("not a permutation of [n]"));
            }
            seen.insert(p);
        }
        let mut g = Graph::empty(self.n)?;
        for (a, b) in self.edges() {
            g.set_edge(perm[a - 1], perm[b - 1]);
        }
        Ok(g)
    }

    /// Parses the plain edge-list format: a vertex count on the first line,
    /// then one `i j` pair per line. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or(Error::EdgeList {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| Error::EdgeList {
            line: first,
            message: format!("expected a vertex count, found `{header}`"),
        })?;
        let mut g = Graph::empty(n).map_err(|e| Error::EdgeList {
            line: first,
            message: e.to_string(),
        })?;
        for (line, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::EdgeList {
                    line,
                    message: format!("expected a vertex, found `{s}`"),
                })
            };
            if parts.len() != 2 {
                return Err(Error::EdgeList {
                    line,
                    message: "expected two vertices".into(),
                });
            }
            let (a, b) = (parse(parts[0])?, parse(parts[1])?);
            let err = |message: String| Error::EdgeList { line, message };
            g.check_pair(a, b).map_err(|e| err(e.to_string()))?;
            if g.has_edge(a, b) {
                return Err(err(format!("repeated edge {{{a},{b}}}")));
            }
            g.set_edge(a, b);
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (a, b) in self.edges() {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

// ---------------------------------------------------------------------------
// Families

/// The path `1 - 2 - ... - n`.
pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("path needs at least one vertex"));
    }
    let mut g = Graph::empty(n)?;
    for i in 1..n {
        g.set_edge(i, i + 1);
    }
    Ok(g)
}

/// The cycle `1 - 2 - ... - n - 1`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs at least three vertices"));
    }
    let mut g = path(n)?;
    g.set_edge(1, n);
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("complete graph needs at least one vertex"));
    }
    let mut g = Graph::empty(n)?;
    for i in 1..=n {
        for j in i + 1..=n {
            g.set_edge(i, j);
        }
    }
    Ok(g)
}

/// `K_{p_1, ..., p_k}` with blocks `V_i` laid out as consecutive intervals.
/// With a single part this is the edgeless graph.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() {
        return Err(invalid("complete multipartite graph needs at least one part"));
    }
    if parts.contains(&0) {
        return Err(invalid("parts must be positive"));
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(invalid("parts must be weakly decreasing"));
    }
    let n: usize = parts.iter().sum();
    let mut block = Vec::with_capacity(n);
    for (b, &p) in parts.iter().enumerate() {
        block.extend(std::iter::repeat(b).take(p));
    }
    let mut g = Graph::empty(n)?;
    for i in 1..=n {
        for j in i + 1..=n {
            if block[i - 1] != block[j - 1] {
                g.set_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// The `m`-th suspension: vertices `n+1, ..., n+m` are added one at a time,
/// each joined to every vertex present before it.
pub fn suspension(g: &Graph, m: usize) -> Result<Graph> {
    if m < 1 {
        return Err(invalid("suspension order must be at least 1"));
    }
    let mut h = Graph::empty(g.n + m)?;
    for (a, b) in g.edges() {
        h.set_edge(a, b);
    }
    for apex in g.n + 1..=g.n + m {
        for v in 1..apex {
            h.set_edge(v, apex);
        }
    }
    Ok(h)
}

/// The starlike graph `T_{p_1, ..., p_t}`: centre `1` and `t` legs, leg `i`
/// being the path `1 - w_{i,1} - ... - w_{i,p_i+1}` (so `p_i + 1` edges).
/// Leg vertices are numbered consecutively from `2`, leg by leg.
pub fn starlike(parts: &[usize]) -> Result<Graph> {
    if parts.len() < 3 {
        return Err(invalid("starlike graph needs at least three legs"));
    }
    if parts.contains(&0) {
        return Err(invalid("leg lengths must be positive"));
    }
    let n = 1 + parts.iter().map(|p| p + 1).sum::<usize>();
    let mut g = Graph::empty(n)?;
    let mut next = 2;
    for &p in parts {
        let mut prev = 1;
        for _ in 0..=p {
            g.set_edge(prev, next);
            prev = next;
            next += 1;
        }
    }
    Ok(g)
}

/// The graph `G_m` on `[m + 9]`: the 8-cycle `1 - ... - 8 - 1`, the chord
/// `{4, 8}` and the pendant path `4 - 9 - 10 - ... - (m + 9)`.
pub fn gm_graph(m: usize) -> Result<Graph> {
    let mut g = Graph::empty(m + 9)?;
    for i in 1..8 {
        g.set_edge(i, i + 1);
    }
    g.set_edge(8, 1);
    g.set_edge(4, 8);
    g.set_edge(4, 9);
    for v in 9..m + 9 {
        g.set_edge(v, v + 1);
    }
    Ok(g)
}

/// Connected components of `G - s`, each as a vertex set, ordered by
/// smallest vertex.
pub fn components_after_deletion(g: &Graph, s: VertexSet) -> Vec<VertexSet> {
    let mut remaining = g.vertices().bits() & !s.bits();
    let mut out = Vec::new();
    while remaining != 0 {
        let start = remaining.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let mut fresh = g.adj[u] & remaining & !comp;
            comp |= fresh;
            while fresh != 0 {
                queue.push_back(fresh.trailing_zeros() as usize);
                fresh &= fresh - 1;
            }
        }
        remaining &= !comp;
        out.push(VertexSet(comp));
    }
    out
}

/// Number of connected components of `G - s`.
pub fn component_count(g: &Graph, s: VertexSet) -> usize {
    components_after_deletion(g, s).len()
}

// ---------------------------------------------------------------------------
// Canonical form

/// Lexicographically minimal upper-triangle adjacency code over all
/// relabelings. Two graphs have equal forms iff they are isomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    /// Upper-triangle bits in graph6 order, first pair in the most
    /// significant position, so integer order is lexicographic order.
    code: u64,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// The canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        let pairs = self.n * self.n.saturating_sub(1) / 2;
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.code >> (pairs - 1 - k) & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        g
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_bounded(g, DEFAULT_CANONICAL_BOUND)
}

/// Brute-force canonical form; rejects graphs with more than `bound`
/// vertices (and more than 11, where the code no longer fits in 64 bits).
pub fn canonical_form_bounded(g: &Graph, bound: usize) -> Result<CanonicalForm> {
    let limit = bound.min(11);
    if g.n > limit {
        return Err(Error::CapExceeded {
            what: "canonical form vertex count",
            limit,
            actual: g.n,
        });
    }
    let n = g.n;
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs == 0 {
        return Ok(CanonicalForm { n, code: 0 });
    }
    // perm[k] = old vertex (0-based) placed at new position k.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    let consider = |perm: &[usize], best: &mut u64| {
        let mut code = 0u64;
        let mut k = 0;
        for j in 1..n {
            let row = g.adj[perm[j]];
            for &pi in perm.iter().take(j) {
                code = code << 1 | (row >> pi & 1);
                k += 1;
            }
            // Prune once the prefix already exceeds the incumbent's prefix.
            let shift = pairs - k;
            if code > *best >> shift {
                return;
            }
        }
        if code < *best {
            *best = code;
        }
    };
    // Heap's algorithm, iterative form.
    consider(&perm, &mut best);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            consider(&perm, &mut best);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(CanonicalForm { n, code: best })
}

// ---------------------------------------------------------------------------
// graph6

fn graph6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Encodes a graph in graph6 (no `>>graph6<<` header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n;
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | (g.adj[i] >> j & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 string. An optional `>>graph6<<` header and a single
/// trailing line terminator are accepted; anything else after the last data
/// byte is an error.
pub fn decode_graph6(text: &str) -> Result<Graph> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        base = 10;
    }
    if let Some(rest) = bytes.strip_suffix(b"\n") {
        bytes = rest.strip_suffix(b"\r").unwrap_or(rest);
    }
    let value = |k: usize| -> Result<u64> {
        match bytes.get(k) {
            None => Err(graph6_err(base + k, "unexpected end of input")),
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
            Some(&b) => Err(graph6_err(base + k, format!("byte {b:#04x} outside 63..=126"))),
        }
    };
    let (n, mut pos) = match value(0)? {
        63 => {
            if value(1)? == 63 {
                return Err(graph6_err(base + 1, "8-byte size form is not supported"));
            }
            let n = (value(1)? << 12 | value(2)? << 6 | value(3)?) as usize;
            (n, 4)
        }
        v => (v as usize, 1),
    };
    let mut g = Graph::empty(n).map_err(|e| graph6_err(base, e.to_string()))?;
    let pairs = n * n.saturating_sub(1) / 2;
    let data_len = pairs.div_ceil(6);
    if bytes.len() < pos + data_len {
        return Err(graph6_err(
            base + bytes.len(),
            format!("expected {data_len} adjacency bytes for n = {n}"),
        ));
    }
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let chunk = value(pos + k / 6)?;
            if chunk >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i + 1, j + 1);
            }
            k += 1;
            if k == pairs {
                break 'outer;
            }
        }
    }
    pos += data_len;
    // Validate the padding byte's range even when no pairs remain.
    for q in pos - data_len..pos {
        value(q)?;
    }
    if pos != bytes.len() {
        return Err(graph6_err(base + pos, "trailing bytes after adjacency data"));
    }
    Ok(g)
}
