//! Simple undirected graphs on at most 64 vertices, stored as adjacency
//! bit-rows, plus the standard families and the two graph products.
//!
//! Vertex `(a, b)` of a product `G ∘ H` is stored at index `a * H.n() + b`,
//! so the `H`-layer of `a` is the contiguous block starting at `a * H.n()`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard limit on the number of vertices of any graph.
pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the vertices of a host graph with `n` vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: u8,
    bits: u64,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        VertexSet { n: n as u8, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        VertexSet {
            n: n as u8,
            bits: low_mask(n),
        }
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "vertex set",
                requested: n,
                limit: MAX_VERTICES,
            });
        }
        if bits & !low_mask(n) != 0 {
            return Err(Error::InvalidParameter(format!(
                "vertex set has members outside 0..{n}"
            )));
        }
        Ok(VertexSet { n: n as u8, bits })
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v >= n {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            bits |= 1 << v;
        }
        VertexSet::from_bits(n, bits)
    }

    pub fn host_order(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 64 && self.bits >> v & 1 == 1
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        BitIter(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn without(&self, v: usize) -> Self {
        VertexSet {
            n: self.n,
            bits: self.bits & !(1u64 << v),
        }
    }

    pub fn smallest(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// A finite simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order("graph", n)?;
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge {{{u},{v}}} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Build from adjacency rows; rows must be symmetric and loop-free.
    pub fn from_adjacency(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order("graph", n)?;
        for (u, &row) in rows.iter().enumerate() {
            if row & !low_mask(n) != 0 || row >> u & 1 == 1 {
                return Err(Error::InvalidParameter(format!("bad adjacency row {u}")));
            }
            for v in BitIter(row) {
                if rows[v] >> u & 1 == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency not symmetric at {{{u},{v}}}"
                    )));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Decode the graph whose edge `{i, j}` (i < j) is present iff bit
    /// `pair_index(i, j)` of `code` is set, pairs ordered `(0,1), (0,2), (1,2), (0,3), ...`.
    pub fn from_pair_code(n: usize, code: u64) -> Result<Self> {
        if n > 11 {
            return Err(Error::Capacity {
                what: "pair code",
                requested: n,
                limit: 11,
            });
        }
        let mut g = Graph::empty(n)?;
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if code >> bit & 1 == 1 {
                    g.add_edge(i, j);
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    /// Inverse of [`Graph::from_pair_code`].
    pub fn pair_code(&self) -> u64 {
        assert!(self.n <= 11);
        let mut code = 0u64;
        let mut bit = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edges(&self) -> bool {
        self.adj.iter().any(|&r| r != 0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| BitIter(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.bits() == 0)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter()
            .all(|v| self.adj[v] & s.bits() == s.bits() & !(1u64 << v))
    }

    /// Vertices reachable from `start`.
    pub fn component_of(&self, start: usize) -> VertexSet {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        VertexSet {
            n: self.n as u8,
            bits: seen,
        }
    }

    /// Components in order of their smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut left = low_mask(self.n);
        while left != 0 {
            let c = self.component_of(left.trailing_zeros() as usize);
            left &= !c.bits();
            out.push(c);
        }
        out
    }

    /// True for the null graph as well.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0).len() == self.n
    }

    /// A proper 2-coloring (colors 1 and 2) if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u32>> {
        let mut color = vec![0u32; self.n];
        for comp in self.connected_components() {
            let root = comp.smallest().unwrap();
            color[root] = 1;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for w in BitIter(self.adj[v]) {
                    if color[w] == 0 {
                        color[w] = 3 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn has_triangle(&self) -> bool {
        self.edges().any(|(u, v)| self.adj[u] & self.adj[v] != 0)
    }

    /// The subgraph induced on `s`, relabelled `0..|s|` in increasing order.
    pub fn induced(&self, s: VertexSet) -> Graph {
        let verts = s.to_vec();
        let mut g = Graph {
            n: verts.len(),
            adj: vec![0; verts.len()],
        };
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabel: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

fn check_order(what: &'static str, n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity {
            what,
            requested: n,
            limit: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        g.adj[u] = low_mask(n) & !(1u64 << u);
    }
    Ok(g)
}

pub fn empty(n: usize) -> Result<Graph> {
    Graph::empty(n)
}

/// Cycle with edges `{i, i+1 mod n}`; needs `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    Ok(g)
}

pub fn path(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    Ok(g)
}

/// `m` disjoint edges `{2i, 2i+1}`.
pub fn matching(m: usize) -> Result<Graph> {
    let mut g = Graph::empty(2 * m)?;
    for i in 0..m {
        g.add_edge(2 * i, 2 * i + 1);
    }
    Ok(g)
}

fn product_order(g: &Graph, h: &Graph) -> Result<usize> {
    let n = g.n * h.n;
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "graph product",
            requested: n,
            limit: MAX_VERTICES,
        });
    }
    Ok(n)
}

/// `G × H`: `(a,b) ~ (a',b')` iff `a = a'` and `b ~ b'`, or `b = b'` and `a ~ a'`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = product_order(g, h)?;
    let mut p = Graph::empty(n)?;
    let hn = h.n;
    for a in 0..g.n {
        for b in 0..hn {
            let x = a * hn + b;
            let mut row = 0u64;
            for b2 in BitIter(h.adj[b]) {
                row |= 1 << (a * hn + b2);
            }
            for a2 in BitIter(g.adj[a]) {
                row |= 1 << (a2 * hn + b);
            }
            p.adj[x] = row;
        }
    }
    Ok(p)
}

/// `G · H`: `(a,b) ~ (a',b')` iff `a ~ a'` and `b ~ b'`.
pub fn categorical_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = product_order(g, h)?;
    let mut p = Graph::empty(n)?;
    let hn = h.n;
    for a in 0..g.n {
        for b in 0..hn {
            let mut row = 0u64;
            for a2 in BitIter(g.adj[a]) {
                for b2 in BitIter(h.adj[b]) {
                    row |= 1 << (a2 * hn + b2);
                }
            }
            p.adj[a * hn + b] = row;
        }
    }
    Ok(p)
}

/// `G + H`, with `H`'s vertices shifted by `G.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n + h.n;
    check_order("disjoint union", n)?;
    let mut adj = g.adj.clone();
    adj.extend(h.adj.iter().map(|&r| r << g.n));
    Ok(Graph { n, adj })
}

pub fn complement(g: &Graph) -> Graph {
    let full = low_mask(g.n);
    Graph {
        n: g.n,
        adj: (0..g.n).map(|u| full & !g.adj[u] & !(1u64 << u)).collect(),
    }
}

pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    g.connected_components()
}

/// Plain edge-list form used for JSON graph input and output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList {
            n: g.n,
            edges: g.edges().collect(),
        }
    }
}

impl TryFrom<EdgeList> for Graph {
    type Error = Error;

    fn try_from(e: EdgeList) -> Result<Graph> {
        Graph::from_edges(e.n, &e.edges)
    }
}
