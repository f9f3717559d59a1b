//! Proper colorings: counting extensions of partial colorings, the chromatic
//! number, the number of color partitions, and colorings of products induced
//! by one factor.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::search::{self, Budget, ColorSearch};

/// A total map from vertices to colors `1..=s`. Need not be proper.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<u32>,
    s: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, s: u32) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > s) {
            return Err(Error::InvalidParameter(format!("color {c} outside 1..={s}")));
        }
        Ok(Coloring { colors, s })
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn palette(&self) -> u32 {
        self.s
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors that actually occur.
    pub fn distinct_colors(&self) -> usize {
        let mut seen = 0u64;
        for &c in &self.colors {
            seen |= 1 << (c - 1);
        }
        seen.count_ones() as usize
    }

    pub fn restrict(&self, d: VertexSet) -> PartialColoring {
        let colors = (0..self.colors.len())
            .map(|v| d.contains(v).then_some(self.colors[v]))
            .collect();
        PartialColoring { colors, s: self.s }
    }

    pub fn to_partition(&self) -> ColorPartition {
        let n = self.colors.len();
        let mut by_color: BTreeMap<u32, u64> = BTreeMap::new();
        for (v, &c) in self.colors.iter().enumerate() {
            *by_color.entry(c).or_default() |= 1 << v;
        }
        let mut blocks: Vec<VertexSet> = by_color
            .into_values()
            .map(|b| VertexSet::from_bits(n, b).unwrap())
            .collect();
        blocks.sort_by_key(|b| b.smallest());
        ColorPartition { blocks }
    }
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.colors.serialize(s)
    }
}

/// Colors assigned to some of the vertices, all within `1..=s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    colors: Vec<Option<u32>>,
    s: u32,
}

impl PartialColoring {
    /// The partial coloring with empty domain on `n` vertices.
    pub fn empty(n: usize, s: u32) -> Self {
        PartialColoring {
            colors: vec![None; n],
            s,
        }
    }

    pub fn new(colors: Vec<Option<u32>>, s: u32) -> Result<Self> {
        if let Some(c) = colors.iter().flatten().find(|&&c| c == 0 || c > s) {
            return Err(Error::InvalidParameter(format!("color {c} outside 1..={s}")));
        }
        Ok(PartialColoring { colors, s })
    }

    pub fn from_pairs(n: usize, s: u32, pairs: &[(usize, u32)]) -> Result<Self> {
        let mut colors = vec![None; n];
        for &(v, c) in pairs {
            if v >= n {
                return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
            }
            colors[v] = Some(c);
        }
        PartialColoring::new(colors, s)
    }

    pub fn palette(&self) -> u32 {
        self.s
    }

    pub fn get(&self, v: usize) -> Option<u32> {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn domain(&self) -> VertexSet {
        VertexSet::from_vertices(
            self.colors.len(),
            self.colors
                .iter()
                .enumerate()
                .filter_map(|(v, c)| c.map(|_| v)),
        )
        .unwrap()
    }

    pub fn assignments(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    pub fn extended_by(&self, c: &Coloring) -> bool {
        c.len() == self.colors.len() && self.assignments().all(|(v, col)| c.color(v) == col)
    }

    fn fixed(&self) -> Vec<u32> {
        self.colors.iter().map(|c| c.unwrap_or(0)).collect()
    }
}

/// JSON form: `{"s": 3, "colors": {"0": 1, "4": 2}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialColoringJson {
    pub s: u32,
    pub colors: BTreeMap<usize, u32>,
}

impl PartialColoring {
    pub fn to_json(&self) -> PartialColoringJson {
        PartialColoringJson {
            s: self.s,
            colors: self.assignments().collect(),
        }
    }

    pub fn from_json(n: usize, j: &PartialColoringJson) -> Result<Self> {
        let pairs: Vec<_> = j.colors.iter().map(|(&v, &c)| (v, c)).collect();
        PartialColoring::from_pairs(n, j.s, &pairs)
    }
}

/// A partition of the vertex set into independent blocks, blocks ordered by
/// their smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorPartition {
    blocks: Vec<VertexSet>,
}

impl ColorPartition {
    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The coloring giving block `i` color `i + 1`.
    pub fn canonical_coloring(&self) -> Coloring {
        let n = self.blocks.first().map_or(0, |b| b.host_order());
        let mut colors = vec![0; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for v in b.iter() {
                colors[v] = i as u32 + 1;
            }
        }
        Coloring {
            colors,
            s: self.blocks.len() as u32,
        }
    }
}

pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.len() != g.n() {
        return Err(Error::Contract(format!(
            "coloring has {} entries for {} vertices",
            c.len(),
            g.n()
        )));
    }
    Ok(g.edges().all(|(u, v)| c.color(u) != c.color(v)))
}

fn check_len(g: &Graph, p: &PartialColoring) -> Result<()> {
    if p.len() != g.n() {
        return Err(Error::Contract(format!(
            "partial coloring has {} entries for {} vertices",
            p.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Number of proper `p.palette()`-colorings of `g` that extend `p`,
/// truncated at `cap`.
pub fn count_extensions(
    g: &Graph,
    p: &PartialColoring,
    cap: Option<u64>,
    budget: &mut Budget,
) -> Result<u64> {
    check_len(g, p)?;
    search::count(g, p.s, &p.fixed(), cap, false, budget)
}

/// Call `visit` on every proper extension of `p`, in search order, until it
/// returns `false`.
pub fn for_each_extension<F>(
    g: &Graph,
    p: &PartialColoring,
    budget: &mut Budget,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[u32]) -> bool,
{
    check_len(g, p)?;
    match ColorSearch::new(g, p.s, &p.fixed(), false) {
        Some(mut search) => search.run(budget, &mut visit),
        None => Ok(()),
    }
}

/// Collect up to `limit` proper extensions of `p`.
pub fn enumerate_extensions(
    g: &Graph,
    p: &PartialColoring,
    limit: Option<usize>,
    budget: &mut Budget,
) -> Result<Vec<Coloring>> {
    let limit = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    let s = p.s;
    for_each_extension(g, p, budget, |c| {
        out.push(Coloring {
            colors: c.to_vec(),
            s,
        });
        out.len() < limit
    })?;
    Ok(out)
}

/// Some proper `s`-coloring, if one exists.
pub fn find_coloring(g: &Graph, s: u32, budget: &mut Budget) -> Result<Option<Coloring>> {
    let p = PartialColoring::empty(g.n(), s);
    Ok(enumerate_extensions(g, &p, Some(1), budget)?.pop())
}

pub fn is_colorable(g: &Graph, s: u32, budget: &mut Budget) -> Result<bool> {
    Ok(search::count(g, s, &vec![0; g.n()], Some(1), true, budget)? > 0)
}

/// χ(G), with χ of the null graph taken as 0.
pub fn chromatic_number(g: &Graph, budget: &mut Budget) -> Result<u32> {
    if g.n() == 0 {
        return Ok(0);
    }
    if !g.has_edges() {
        return Ok(1);
    }
    if g.is_bipartite() {
        return Ok(2);
    }
    let mut s = 3;
    while !is_colorable(g, s, budget)? {
        s += 1;
    }
    Ok(s)
}

/// Θ(G): the number of partitions of V(G) into χ(G) independent sets,
/// counted by enumerating colorings in which colors appear in increasing
/// order of first use.
pub fn count_partitions(g: &Graph, budget: &mut Budget) -> Result<u64> {
    if g.n() == 0 {
        return Err(Error::Precondition("Θ needs at least one vertex".into()));
    }
    let chi = chromatic_number(g, budget)?;
    search::count(g, chi, &vec![0; g.n()], None, true, budget)
}

/// Like [`count_partitions`], but with χ supplied and a cap on the count.
pub fn count_partitions_with(
    g: &Graph,
    chi: u32,
    cap: Option<u64>,
    budget: &mut Budget,
) -> Result<u64> {
    search::count(g, chi, &vec![0; g.n()], cap, true, budget)
}

/// Up to `limit` of the χ-partitions, in search order.
pub fn color_partitions(
    g: &Graph,
    limit: Option<usize>,
    budget: &mut Budget,
) -> Result<Vec<ColorPartition>> {
    let chi = chromatic_number(g, budget)?;
    let limit = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if let Some(mut search) = ColorSearch::new(g, chi, &vec![0; g.n()], true) {
        search.run(budget, &mut |c| {
            out.push(
                Coloring {
                    colors: c.to_vec(),
                    s: chi,
                }
                .to_partition(),
            );
            out.len() < limit
        })?;
    }
    Ok(out)
}

/// Every proper χ(G)-coloring, i.e. `χ! · Θ` colorings. Fails with a
/// capacity error past `limit`.
pub fn all_optimal_colorings(g: &Graph, limit: usize, budget: &mut Budget) -> Result<Vec<Coloring>> {
    let chi = chromatic_number(g, budget)?;
    let p = PartialColoring::empty(g.n(), chi);
    let out = enumerate_extensions(g, &p, Some(limit + 1), budget)?;
    if out.len() > limit {
        return Err(Error::Capacity {
            what: "coloring list",
            requested: out.len(),
            limit,
        });
    }
    Ok(out)
}

pub fn is_uniquely_colorable(g: &Graph, budget: &mut Budget) -> Result<bool> {
    if g.n() == 0 {
        return Err(Error::Precondition("needs at least one vertex".into()));
    }
    let chi = chromatic_number(g, budget)?;
    Ok(count_partitions_with(g, chi, Some(2), budget)? == 1)
}

/// Membership in U3COL: χ = 3 and Θ = 1.
pub fn in_u3col(g: &Graph, budget: &mut Budget) -> Result<bool> {
    if g.n() == 0 {
        return Err(Error::Precondition("needs at least one vertex".into()));
    }
    Ok(chromatic_number(g, budget)? == 3 && count_partitions_with(g, 3, Some(2), budget)? == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Left,
    Right,
}

/// The coloring of `G · H` with `(x, y) ↦ c(x)` (left) or `c(y)` (right).
pub fn induced_coloring(
    factor_coloring: &Coloring,
    which: Factor,
    g: &Graph,
    h: &Graph,
) -> Result<Coloring> {
    let factor = match which {
        Factor::Left => g,
        Factor::Right => h,
    };
    if !is_proper(factor, factor_coloring)? {
        return Err(Error::Contract("factor coloring is not proper".into()));
    }
    let mut colors = Vec::with_capacity(g.n() * h.n());
    for a in 0..g.n() {
        for b in 0..h.n() {
            colors.push(match which {
                Factor::Left => factor_coloring.color(a),
                Factor::Right => factor_coloring.color(b),
            });
        }
    }
    Coloring::new(colors, factor_coloring.palette())
}

/// `k` copies of the prism `K₃ × K₂` glued along two vertices `u = 0` and
/// `v = 1`, which lie in different triangles and are not matched to each
/// other. Copy `i` adds vertices `w, x` (with `u`) and `y, z` (with `v`) at
/// `2 + 4i .. 2 + 4i + 4`, with matching edges `u–y`, `w–z`, `x–v`.
pub fn gk_family(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("G_k needs k >= 1".into()));
    }
    let n = 4 * k + 2;
    let (u, v) = (0, 1);
    let mut edges = Vec::new();
    for i in 0..k {
        let (w, x, y, z) = (2 + 4 * i, 3 + 4 * i, 4 + 4 * i, 5 + 4 * i);
        edges.extend([(u, w), (u, x), (w, x), (y, z), (y, v), (z, v), (u, y), (w, z), (x, v)]);
    }
    Graph::from_edges(n, &edges)
}
