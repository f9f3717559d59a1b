//! Lemma definitions, grouped by subject.

pub(crate) mod forcing;
pub(crate) mod latin;
pub(crate) mod npopt;
pub(crate) mod products;
pub(crate) mod sat;

use forcing_core::io::emit_graph6;
use forcing_core::{Graph, Result};

use crate::enumerate::{enumerate_graphs, GraphFilter};
use crate::lcg::Lcg;

pub(crate) fn g6(g: &Graph) -> String {
    emit_graph6(g).trim_end().to_string()
}

pub(crate) fn g6_pair(p: &(Graph, Graph)) -> String {
    format!("{} {}", g6(&p.0), g6(&p.1))
}

pub(crate) fn all_graphs(max_n: usize, filter: GraphFilter) -> Result<Vec<Graph>> {
    Ok(enumerate_graphs(max_n, filter)?.collect())
}

/// `count` random graphs on `n` vertices passing `filter`, by rejection
/// with at most `64 · count` draws.
pub(crate) fn random_graphs(rng: &mut Lcg, n: usize, count: usize, filter: GraphFilter) -> Vec<Graph> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..64 * count {
        if out.len() == count {
            break;
        }
        let g = rng.graph(n);
        if filter.accepts(&g) {
            out.push(g);
        }
    }
    out
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in 0..k {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}
