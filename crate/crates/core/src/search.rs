//! The backtracking engine shared by every coloring query.
//!
//! Colors are 1-based; internally color `c` is bit `c - 1` of a domain word.
//! The branching vertex is the unassigned vertex with the fewest remaining
//! colors (ties: larger degree, then smaller index), and every assignment
//! removes its color from the domains of unassigned neighbours.

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

/// Node budget for one query. Every search node visited costs one unit.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 100_000_000;

    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Budget {
                limit: self.limit,
                lower: None,
                upper: None,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}

#[inline]
pub(crate) fn color_bits(s: u32) -> u64 {
    if s >= 64 {
        u64::MAX
    } else {
        (1u64 << s) - 1
    }
}

pub(crate) struct ColorSearch<'g> {
    g: &'g Graph,
    n: usize,
    degree: Vec<u32>,
    color: Vec<u32>,
    /// Stack of domain frames, `n` words per depth.
    dom: Vec<u64>,
    /// Only allow a new color if it is the smallest unused one.
    canonical: bool,
}

impl<'g> ColorSearch<'g> {
    /// Prepare a search for proper `s`-colorings extending `fixed`
    /// (`fixed[v] == 0` means free). Returns `None` when `fixed` is already
    /// improper, i.e. there are no extensions at all.
    pub(crate) fn new(g: &'g Graph, s: u32, fixed: &[u32], canonical: bool) -> Option<Self> {
        let n = g.n();
        debug_assert_eq!(fixed.len(), n);
        let mut dom = vec![0u64; n * (n + 1)];
        let all = color_bits(s);
        for v in 0..n {
            dom[v] = if fixed[v] == 0 {
                all
            } else {
                1u64 << (fixed[v] - 1)
            };
        }
        for v in 0..n {
            if fixed[v] != 0 {
                let bit = 1u64 << (fixed[v] - 1);
                for w in BitIter(g.neighbors(v)) {
                    if fixed[w] == fixed[v] {
                        return None;
                    }
                    if fixed[w] == 0 {
                        dom[w] &= !bit;
                    }
                }
            }
        }
        Some(ColorSearch {
            g,
            n,
            degree: (0..n).map(|v| g.degree(v) as u32).collect(),
            color: fixed.to_vec(),
            dom,
            canonical,
        })
    }

    /// Visit every proper extension; `leaf` returns `false` to stop early.
    pub(crate) fn run<F>(&mut self, budget: &mut Budget, leaf: &mut F) -> Result<()>
    where
        F: FnMut(&[u32]) -> bool,
    {
        let mut unassigned = 0u64;
        let mut used = 0u32;
        for v in 0..self.n {
            if self.color[v] == 0 {
                unassigned |= 1 << v;
            } else {
                used = used.max(self.color[v]);
            }
        }
        self.dfs(0, unassigned, used, budget, leaf).map(|_| ())
    }

    fn dfs<F>(
        &mut self,
        depth: usize,
        unassigned: u64,
        used: u32,
        budget: &mut Budget,
        leaf: &mut F,
    ) -> Result<bool>
    where
        F: FnMut(&[u32]) -> bool,
    {
        budget.tick()?;
        if unassigned == 0 {
            return Ok(leaf(&self.color));
        }
        let n = self.n;
        let base = depth * n;

        let mut best = usize::MAX;
        let mut best_size = u32::MAX;
        for v in BitIter(unassigned) {
            let size = self.dom[base + v].count_ones();
            if size < best_size
                || (size == best_size && self.degree[v] > self.degree[best])
            {
                best = v;
                best_size = size;
                if size == 0 {
                    return Ok(true);
                }
            }
        }
        let v = best;
        let rest = unassigned & !(1u64 << v);
        let mut choices = self.dom[base + v];
        if self.canonical {
            choices &= color_bits(used + 1);
        }
        let nbrs = self.g.neighbors(v) & rest;

        for c in BitIter(choices) {
            let bit = 1u64 << c;
            let (cur, next) = self.dom.split_at_mut(base + n);
            let next = &mut next[..n];
            next.copy_from_slice(&cur[base..base + n]);
            let mut dead = false;
            for w in BitIter(nbrs) {
                next[w] &= !bit;
                if next[w] == 0 {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            let color = c as u32 + 1;
            self.color[v] = color;
            let keep_going = self.dfs(depth + 1, rest, used.max(color), budget, leaf)?;
            self.color[v] = 0;
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Count proper `s`-colorings extending `fixed`, stopping at `cap`.
pub(crate) fn count(
    g: &Graph,
    s: u32,
    fixed: &[u32],
    cap: Option<u64>,
    canonical: bool,
    budget: &mut Budget,
) -> Result<u64> {
    let Some(mut search) = ColorSearch::new(g, s, fixed, canonical) else {
        return Ok(0);
    };
    let cap = cap.unwrap_or(u64::MAX);
    if cap == 0 {
        return Ok(0);
    }
    let mut found = 0u64;
    search.run(budget, &mut |_| {
        found += 1;
        found < cap
    })?;
    Ok(found)
}
