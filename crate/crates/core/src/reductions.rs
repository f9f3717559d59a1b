//! Constructive transformations between graph and formula problems.

use serde::{Deserialize, Serialize};

use crate::cnf::{clause_satisfied, Assignment, CnfFormula};
use crate::coloring::{chromatic_number, Coloring, PartialColoring};
use crate::error::{Error, Result};
use crate::forcing::for_each_subset;
use crate::graph::{cartesian_product, categorical_product, complete, disjoint_union, Graph};
use crate::search::Budget;

/// `G + K₁`.
pub fn add_isolated_vertex(g: &Graph) -> Result<Graph> {
    if !g.has_edges() {
        return Err(Error::Precondition("graph must have an edge".into()));
    }
    disjoint_union(g, &Graph::empty(1)?)
}

/// `G ⊕ mK₂`: for `i < m`, new vertices `a_i = n + 2i`, `b_i = n + 2i + 1`
/// with edges `v_i a_i` and `a_i b_i`.
pub fn attach_pendant_pairs(g: &Graph, m: usize, budget: &mut Budget) -> Result<Graph> {
    let n = g.n();
    if m == 0 || m > n {
        return Err(Error::Precondition(format!("need 1 <= m <= {n}, got {m}")));
    }
    if chromatic_number(g, budget)? < 3 {
        return Err(Error::Precondition("graph must have χ >= 3".into()));
    }
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for i in 0..m {
        edges.push((i, n + 2 * i));
        edges.push((n + 2 * i, n + 2 * i + 1));
    }
    Graph::from_edges(n + 2 * m, &edges)
}

/// `G × K₃`.
pub fn times_k3(g: &Graph, budget: &mut Budget) -> Result<Graph> {
    if chromatic_number(g, budget)? < 3 {
        return Err(Error::Precondition("graph must have χ >= 3".into()));
    }
    cartesian_product(g, &complete(3)?)
}

/// Output of [`theorem_f2_transform`]. Vertex `(v, i, j)` of
/// `(G′ · K₃) × K₃`, with `i` the categorical and `j` the Cartesian `K₃`
/// coordinate (both 0-based), has index `(3v + i) · 3 + j`.
#[derive(Debug, Clone)]
pub struct F2Transform {
    pub graph: Graph,
    /// `G′ · K₃`.
    pub inner: Graph,
    pub coloring: Coloring,
    /// Order of `G′`: the input plus the two triangle vertices.
    pub base_order: usize,
}

impl F2Transform {
    pub fn vertex(&self, v: usize, i: usize, j: usize) -> usize {
        (3 * v + i) * 3 + j
    }

    /// Colors `(v,0,0) = 1`, `(v,1,0) = 2`, `(v,0,1) = 3` at `v = 0`, a
    /// vertex of the attached triangle.
    pub fn three_certificate(&self) -> PartialColoring {
        let pairs = [
            (self.vertex(0, 0, 0), 1),
            (self.vertex(0, 1, 0), 2),
            (self.vertex(0, 0, 1), 3),
        ];
        PartialColoring::from_pairs(self.graph.n(), 3, &pairs).unwrap()
    }

    /// With `x y` the first edge of `G′ · K₃`: `(x, 0) = 1` and `(y, 1) = 2`.
    /// It forces exactly when `G′ · K₃` is uniquely 3-colorable.
    pub fn two_certificate(&self) -> PartialColoring {
        let (x, y) = self.inner.edges().next().expect("G′ · K₃ has edges");
        PartialColoring::from_pairs(self.graph.n(), 3, &[(3 * x, 1), (3 * y + 1, 2)]).unwrap()
    }
}

/// Attach a triangle `{0, n, n+1}` to `G`, then form `(G′ · K₃) × K₃` with
/// the 3-coloring `(v, i, j) ↦ (j − i mod 3) + 1`.
pub fn theorem_f2_transform(g: &Graph) -> Result<F2Transform> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    if g.is_bipartite() {
        return Err(Error::Precondition("graph must have χ >= 3".into()));
    }
    let n = g.n();
    if 9 * (n + 2) > crate::graph::MAX_VERTICES {
        return Err(Error::Capacity {
            what: "transform order",
            requested: 9 * (n + 2),
            limit: crate::graph::MAX_VERTICES,
        });
    }
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.extend([(0, n), (0, n + 1), (n, n + 1)]);
    let g2 = Graph::from_edges(n + 2, &edges)?;
    let k3 = complete(3)?;
    let inner = categorical_product(&g2, &k3)?;
    let h = cartesian_product(&inner, &k3)?;
    let colors = (0..h.n())
        .map(|x| {
            let (i, j) = ((x / 3) % 3, x % 3);
            ((j + 3 - i) % 3) as u32 + 1
        })
        .collect();
    Ok(F2Transform {
        coloring: Coloring::new(colors, 3)?,
        graph: h,
        inner,
        base_order: n + 2,
    })
}

/// Parsimonious conversion to 3CNF. A clause `l₁ ∨ … ∨ l_k` with `k > 3`
/// becomes `l₁ ∨ z₁` together with `z_i ↔ (l_{i+1} ∨ z_{i+1})` and
/// `z_{k−2} ↔ (l_{k−1} ∨ l_k)`, each `z ↔ (a ∨ b)` written as
/// `(¬z ∨ a ∨ b)(z ∨ ¬a)(z ∨ ¬b)`. Fresh variables follow the originals.
pub fn sat_to_3sat(f: &CnfFormula) -> Result<CnfFormula> {
    let mut next = f.num_vars() as i32;
    let mut out = Vec::new();
    for c in f.clauses() {
        if c.len() <= 3 {
            out.push(c.clone());
            continue;
        }
        let k = c.len();
        let z: Vec<i32> = (0..k - 2)
            .map(|_| {
                next += 1;
                next
            })
            .collect();
        out.push(vec![c[0], z[0]]);
        for i in 0..k - 2 {
            let (a, b) = if i + 1 < k - 2 {
                (c[i + 1], z[i + 1])
            } else {
                (c[k - 2], c[k - 1])
            };
            out.push(vec![-z[i], a, b]);
            out.push(vec![z[i], -a]);
            out.push(vec![z[i], -b]);
        }
    }
    CnfFormula::new(next as usize, out)
}

/// A full conjunction over one clause's variables that implies the clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Implicant {
    pub clause: usize,
    /// One literal per variable, variables ascending.
    pub literals: Vec<i32>,
}

impl Implicant {
    pub fn consistent_with(&self, other: &Implicant) -> bool {
        self.literals
            .iter()
            .all(|&l| !other.literals.contains(&-l))
    }
}

/// Vertices are the implicants of each clause, tagged by clause; two are
/// adjacent iff they come from different clauses and are consistent.
/// Clauses are taken in order and, within a clause, sign patterns in binary
/// order with the first variable most significant and 1 meaning negated.
pub fn implicant_graph_labeled(f: &CnfFormula) -> Result<(Graph, Vec<Implicant>)> {
    if !f.is_3cnf() {
        return Err(Error::Precondition("formula must be 3CNF".into()));
    }
    let mut verts = Vec::new();
    for (ci, c) in f.clauses().iter().enumerate() {
        let mut vars: Vec<i32> = c.iter().map(|l| l.abs()).collect();
        vars.sort_unstable();
        vars.dedup();
        let k = vars.len();
        for t in 0..1u32 << k {
            let lits: Vec<i32> = (0..k)
                .map(|i| if t >> (k - 1 - i) & 1 == 1 { -vars[i] } else { vars[i] })
                .collect();
            if c.iter().any(|l| lits.contains(l)) {
                verts.push(Implicant {
                    clause: ci,
                    literals: lits,
                });
            }
        }
    }
    let n = verts.len();
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::Capacity {
            what: "implicant graph",
            requested: n,
            limit: crate::graph::MAX_VERTICES,
        });
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if verts[a].clause != verts[b].clause && verts[a].consistent_with(&verts[b]) {
                edges.push((a, b));
            }
        }
    }
    Ok((Graph::from_edges(n, &edges)?, verts))
}

pub fn implicant_graph(f: &CnfFormula) -> Result<Graph> {
    Ok(implicant_graph_labeled(f)?.0)
}

/// The clique of implicants agreeing with `a` on the clauses it satisfies.
pub fn assignment_clique(verts: &[Implicant], f: &CnfFormula, a: Assignment) -> Vec<usize> {
    (0..verts.len())
        .filter(|&i| {
            let imp = &verts[i];
            clause_satisfied(&f.clauses()[imp.clause], a)
                && imp
                    .literals
                    .iter()
                    .all(|&l| a.get(l.unsigned_abs() as usize) == (l > 0))
        })
        .collect()
}

/// `implicant_graph(f) + 2K_{m−1}` for a 3CNF `f` with `m` clauses.
pub fn u3sat_to_uo_omega(f: &CnfFormula) -> Result<Graph> {
    let m = f.num_clauses();
    if m < 2 {
        return Err(Error::Precondition("need at least two clauses".into()));
    }
    if !f.every_variable_occurs() {
        return Err(Error::Precondition("every variable must occur in a clause".into()));
    }
    let g = implicant_graph(f)?;
    let k = complete(m - 1)?;
    disjoint_union(&disjoint_union(&g, &k)?, &k)
}

/// Universe `1..=m` and a list of subsets of it. As JSON:
/// `{"m": 3, "subsets": [[1, 2], [3]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub m: usize,
    pub subsets: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    pub fn new(m: usize, subsets: Vec<Vec<usize>>) -> Result<Self> {
        let sc = SetCoverInstance { m, subsets };
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m > 64 || self.subsets.len() > 64 {
            return Err(Error::Capacity {
                what: "set cover instance",
                requested: self.m.max(self.subsets.len()),
                limit: 64,
            });
        }
        for s in &self.subsets {
            if let Some(x) = s.iter().find(|&&x| x == 0 || x > self.m) {
                return Err(Error::InvalidParameter(format!("element {x} outside 1..={}", self.m)));
            }
        }
        Ok(())
    }

    fn mask(&self, j: usize) -> u64 {
        self.subsets[j].iter().fold(0, |acc, &x| acc | 1 << (x - 1))
    }

    fn universe(&self) -> u64 {
        crate::graph::low_mask(self.m)
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        chosen.iter().fold(0, |acc, &j| acc | self.mask(j)) == self.universe()
    }

    pub fn covers_universe(&self) -> bool {
        self.is_cover(&(0..self.subsets.len()).collect::<Vec<_>>())
    }

    /// All minimum covers as ascending lists of 0-based subset indices.
    pub fn optimal_covers(&self, budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
        let n = self.subsets.len();
        for k in 0..=n {
            let mut out = Vec::new();
            let mut err = None;
            for_each_subset(n, k, |s| {
                if let Err(e) = budget.tick() {
                    err = Some(e);
                    return false;
                }
                let chosen = s.to_vec();
                if self.is_cover(&chosen) {
                    out.push(chosen);
                }
                true
            });
            if let Some(e) = err {
                return Err(e);
            }
            if !out.is_empty() {
                return Ok(out);
            }
        }
        Ok(Vec::new())
    }
}

/// Universe: the edges of `g` in lexicographic order; subset `v`: the edges
/// incident to vertex `v`.
pub fn reduction_a(g: &Graph) -> Result<SetCoverInstance> {
    if !g.has_edges() {
        return Err(Error::Precondition("graph must have an edge".into()));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let subsets = (0..g.n())
        .map(|v| {
            (0..edges.len())
                .filter(|&i| edges[i].0 == v || edges[i].1 == v)
                .map(|i| i + 1)
                .collect()
        })
        .collect();
    SetCoverInstance::new(edges.len(), subsets)
}

/// Element `x_i` is vertex `i − 1`, its clone `x′_i` is `m + i − 1`, and
/// subset `j` (1-based) is `2m + j − 1`; the subset vertices form a clique.
pub fn reduction_b(sc: &SetCoverInstance) -> Result<Graph> {
    sc.validate()?;
    if !sc.covers_universe() {
        return Err(Error::Precondition("subsets must cover the universe".into()));
    }
    let (m, n) = (sc.m, sc.subsets.len());
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((2 * m + a, 2 * m + b));
        }
    }
    for (j, s) in sc.subsets.iter().enumerate() {
        for &x in s {
            edges.push((x - 1, 2 * m + j));
            edges.push((m + x - 1, 2 * m + j));
        }
    }
    Graph::from_edges(2 * m + n, &edges)
}

/// Two new vertices joined to every vertex of `g` but not to each other.
pub fn omega_plus_one(g: &Graph) -> Result<Graph> {
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for w in 0..n {
        edges.push((w, n));
        edges.push((w, n + 1));
    }
    Graph::from_edges(n + 2, &edges)
}

/// `g` plus an isolated edge.
pub fn gamma_plus_one(g: &Graph) -> Result<Graph> {
    disjoint_union(g, &complete(2)?)
}

/// `f ∧ g` with `g`'s variables shifted past `f`'s.
pub fn cnf_and(f: &CnfFormula, g: &CnfFormula) -> Result<CnfFormula> {
    let shift = f.num_vars() as i32;
    let mut clauses = f.clauses().to_vec();
    clauses.extend(g.clauses().iter().map(|c| {
        c.iter()
            .map(|&l| if l > 0 { l + shift } else { l - shift })
            .collect()
    }));
    CnfFormula::new(f.num_vars() + g.num_vars(), clauses)
}
