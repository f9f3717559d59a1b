//! Naive reference implementations, written straight from the definitions.
#![allow(dead_code)]

use forcing_core::Graph;

/// Every map `V → 1..=s` that is proper, in lexicographic order.
pub fn colorings(g: &Graph, s: u32) -> Vec<Vec<u32>> {
    let n = g.n();
    let total = (s as u64).pow(n as u32);
    let mut out = Vec::new();
    for mut x in 0..total {
        let c: Vec<u32> = (0..n)
            .map(|_| {
                let d = (x % s as u64) as u32 + 1;
                x /= s as u64;
                d
            })
            .collect();
        if g.edges().all(|(u, v)| c[u] != c[v]) {
            out.push(c);
        }
    }
    out
}

pub fn chi(g: &Graph) -> u32 {
    (0..=g.n() as u32).find(|&s| !colorings(g, s).is_empty()).unwrap()
}

pub fn factorial(k: u32) -> u64 {
    (1..=k as u64).product()
}

pub fn theta(g: &Graph) -> u64 {
    let c = chi(g);
    colorings(g, c).len() as u64 / factorial(c)
}

fn agree(a: &[u32], b: &[u32], d: u64) -> bool {
    (0..a.len()).all(|v| d >> v & 1 == 0 || a[v] == b[v])
}

/// `c` restricted to `d` has exactly one extension among `all`.
pub fn defining(all: &[Vec<u32>], c: &[u32], d: u64) -> bool {
    all.iter().filter(|x| agree(x, c, d)).count() == 1
}

pub fn forcing_number(g: &Graph) -> usize {
    let all = colorings(g, chi(g));
    let n = g.n();
    (0..1u64 << n)
        .filter(|&d| all.iter().any(|c| defining(&all, c, d)))
        .map(|d| d.count_ones() as usize)
        .min()
        .unwrap()
}

/// Largest `D` that defines some coloring while no `D − v` defines it.
pub fn max_minimal_defining(g: &Graph) -> usize {
    let all = colorings(g, chi(g));
    let n = g.n();
    let mut best = 0;
    for c in &all {
        for d in 0..1u64 << n {
            if (d.count_ones() as usize) <= best || !defining(&all, c, d) {
                continue;
            }
            if (0..n).all(|v| d >> v & 1 == 0 || !defining(&all, c, d & !(1 << v))) {
                best = d.count_ones() as usize;
            }
        }
    }
    best
}

/// Smallest set of positions at which exactly one member is all ones.
/// Members are bit masks over `len` positions; `None` for the empty family.
pub fn force_set(members: &[u64], len: usize) -> Option<usize> {
    if members.is_empty() {
        return None;
    }
    (0..1u64 << len)
        .filter(|&s| members.iter().filter(|&&y| y & s == s).count() == 1)
        .map(|s| s.count_ones() as usize)
        .min()
}

/// Optimal vertex subsets of a max (`maximize`) or min problem with the
/// given feasibility test, as masks.
pub fn optimal_sets(g: &Graph, maximize: bool, feasible: impl Fn(u64) -> bool) -> Vec<u64> {
    let sets: Vec<u64> = (0..1u64 << g.n()).filter(|&s| feasible(s)).collect();
    let size = |s: &u64| s.count_ones();
    let best = if maximize {
        sets.iter().map(size).max()
    } else {
        sets.iter().map(size).min()
    };
    sets.iter().copied().filter(|s| Some(size(s)) == best).collect()
}

pub fn is_clique(g: &Graph, s: u64) -> bool {
    s != 0 && (0..g.n()).all(|u| {
        s >> u & 1 == 0 || (0..g.n()).all(|v| v == u || s >> v & 1 == 0 || g.has_edge(u, v))
    })
}

pub fn is_dominating(g: &Graph, s: u64) -> bool {
    (0..g.n()).all(|v| s >> v & 1 == 1 || (0..g.n()).any(|u| s >> u & 1 == 1 && g.has_edge(u, v)))
}

pub fn is_cover(g: &Graph, s: u64) -> bool {
    g.edges().all(|(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1)
}

pub fn f_omega(g: &Graph) -> Option<usize> {
    force_set(&optimal_sets(g, true, |s| is_clique(g, s)), g.n())
}

pub fn f_gamma(g: &Graph) -> Option<usize> {
    force_set(&optimal_sets(g, false, |s| is_dominating(g, s)), g.n())
}

pub fn f_tau(g: &Graph) -> Option<usize> {
    force_set(&optimal_sets(g, false, |s| is_cover(g, s)), g.n())
}

pub fn count_models(vars: usize, clauses: &[Vec<i32>]) -> u64 {
    (0..1u64 << vars)
        .filter(|&a| {
            clauses
                .iter()
                .all(|c| c.iter().any(|&l| (a >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0)))
        })
        .count() as u64
}

pub fn graph(n: usize, code: u64) -> Graph {
    let pairs = n * n.saturating_sub(1) / 2;
    let mask = if pairs == 64 { u64::MAX } else { (1u64 << pairs) - 1 };
    Graph::from_pair_code(n, code & mask).unwrap()
}
