//! Exhaustive graph families.

use std::collections::BTreeSet;

use forcing_core::{Error, Graph, Result};

/// Largest order the exhaustive enumerators accept.
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Which graphs an enumeration keeps. All enabled tests must pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphFilter {
    pub connected: bool,
    /// χ ≥ 3, that is, not bipartite.
    pub non_bipartite: bool,
    pub triangle: bool,
    pub has_edges: bool,
}

impl GraphFilter {
    pub fn all() -> Self {
        GraphFilter::default()
    }

    pub fn connected() -> Self {
        GraphFilter {
            connected: true,
            ..Default::default()
        }
    }

    pub fn chi_at_least_3() -> Self {
        GraphFilter {
            non_bipartite: true,
            ..Default::default()
        }
    }

    pub fn triangle() -> Self {
        GraphFilter {
            triangle: true,
            ..Default::default()
        }
    }

    pub fn with_edges() -> Self {
        GraphFilter {
            has_edges: true,
            ..Default::default()
        }
    }

    pub fn and(self, other: GraphFilter) -> Self {
        GraphFilter {
            connected: self.connected || other.connected,
            non_bipartite: self.non_bipartite || other.non_bipartite,
            triangle: self.triangle || other.triangle,
            has_edges: self.has_edges || other.has_edges,
        }
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        (!self.has_edges || g.has_edges())
            && (!self.triangle || g.has_triangle())
            && (!self.connected || g.is_connected())
            && (!self.non_bipartite || !g.is_bipartite())
    }
}

fn check_order(max_n: usize) -> Result<()> {
    if max_n > MAX_ENUMERATION_ORDER {
        return Err(Error::Capacity {
            what: "enumeration order",
            requested: max_n,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    Ok(())
}

/// Every labeled graph on exactly `n` vertices passing `filter`, by
/// ascending pair code.
pub fn graphs_of_order(n: usize, filter: GraphFilter) -> Result<impl Iterator<Item = Graph>> {
    check_order(n)?;
    let pairs = n * n.saturating_sub(1) / 2;
    Ok((0..1u64 << pairs)
        .map(move |code| Graph::from_pair_code(n, code).expect("order checked"))
        .filter(move |g| filter.accepts(g)))
}

/// Every labeled graph on `1..=max_n` vertices passing `filter`, by order
/// and then ascending pair code.
pub fn enumerate_graphs(max_n: usize, filter: GraphFilter) -> Result<impl Iterator<Item = Graph>> {
    check_order(max_n)?;
    Ok((1..=max_n).flat_map(move |n| graphs_of_order(n, filter).expect("order checked")))
}

/// The least pair code over all relabelings that list vertices by
/// non-increasing degree. Isomorphic graphs, and only those, share it.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let degrees: Vec<usize> = verts.iter().map(|&v| g.degree(v)).collect();
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    let mut used = 0u64;
    canonical_search(g, &degrees, &mut order, &mut used, 0, 0, &mut best);
    best
}

fn canonical_search(
    g: &Graph,
    degrees: &[usize],
    order: &mut Vec<usize>,
    used: &mut u64,
    code: u64,
    bit: u32,
    best: &mut u64,
) {
    let pos = order.len();
    if pos == degrees.len() {
        *best = (*best).min(code);
        return;
    }
    for v in 0..g.n() {
        if *used >> v & 1 == 1 || g.degree(v) != degrees[pos] {
            continue;
        }
        let mut c = code;
        for (i, &u) in order.iter().enumerate() {
            if g.has_edge(u, v) {
                c |= 1 << (bit + i as u32);
            }
        }
        order.push(v);
        *used |= 1 << v;
        canonical_search(g, degrees, order, used, c, bit + pos as u32, best);
        *used &= !(1 << v);
        order.pop();
    }
}

/// One representative per isomorphism class on exactly `n` vertices, each
/// in canonical labeling, by ascending canonical code.
pub fn unlabeled_graphs(n: usize) -> Result<Vec<Graph>> {
    check_order(n)?;
    let mut codes: BTreeSet<u64> = BTreeSet::new();
    codes.insert(0);
    for k in 1..n {
        let mut next = BTreeSet::new();
        for &code in &codes {
            let base = Graph::from_pair_code(k, code)?;
            for mask in 0..1u64 << k {
                let mut rows: Vec<u64> = base.rows().to_vec();
                for (v, row) in rows.iter_mut().enumerate() {
                    *row |= (mask >> v & 1) << k;
                }
                rows.push(mask);
                next.insert(canonical_code(&Graph::from_adjacency(rows)?));
            }
        }
        codes = next;
    }
    if n == 0 {
        return Ok(vec![Graph::empty(0)?]);
    }
    codes.into_iter().map(|c| Graph::from_pair_code(n, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_graphs(3, GraphFilter::all()).unwrap().count(), 11);
        assert_eq!(enumerate_graphs(3, GraphFilter::connected()).unwrap().count(), 6);
        assert_eq!(enumerate_graphs(2, GraphFilter::chi_at_least_3()).unwrap().count(), 0);
        assert!(enumerate_graphs(8, GraphFilter::all()).is_err());
    }

    #[test]
    fn isomorphism_classes() {
        let sizes: Vec<usize> = (1..=6).map(|n| unlabeled_graphs(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 2, 4, 11, 34, 156]);
    }
}
