//! Forcing sets of proper χ-colorings: recognition, the forcing chromatic
//! number F_χ, the largest minimal defining set fF_χ, and the greedy
//! halving construction.
//!
//! When a graph has at most [`TABLE_LIMIT`] proper χ-colorings they are all
//! listed once; a set `D` is then forcing iff some coloring's restriction to
//! `D` is shared by no other coloring. Otherwise each canonical color pattern
//! on `D` is tested with a capped extension count.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::coloring::{
    chromatic_number, count_extensions, enumerate_extensions, Coloring, PartialColoring,
};
use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph, VertexSet};
use crate::search::{Budget, ColorSearch};

pub const TABLE_LIMIT: usize = 1 << 17;

pub const DEFAULT_MINIMAL_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingCertificate {
    pub defining_set: VertexSet,
    pub partial: PartialColoring,
    pub forced: Coloring,
}

impl ForcingCertificate {
    pub fn size(&self) -> usize {
        self.defining_set.len()
    }

    pub fn palette(&self) -> u32 {
        self.partial.palette()
    }

    /// Recheck the certificate from scratch against `g`.
    pub fn verify(&self, g: &Graph, budget: &mut Budget) -> Result<bool> {
        if self.partial.len() != g.n() || self.forced.len() != g.n() {
            return Ok(false);
        }
        let chi = chromatic_number(g, budget)?;
        Ok(self.partial.palette() == chi
            && self.partial.domain() == self.defining_set
            && self.partial.extended_by(&self.forced)
            && crate::coloring::is_proper(g, &self.forced)?
            && count_extensions(g, &self.partial, Some(2), budget)? == 1)
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            defining_set: self.defining_set.to_vec(),
            partial: self.partial.assignments().collect(),
            s: self.partial.palette(),
            forced: self.forced.colors().to_vec(),
        }
    }

    pub fn from_json(g: &Graph, j: &CertificateJson) -> Result<Self> {
        let n = g.n();
        let pairs: Vec<_> = j.partial.iter().map(|(&v, &c)| (v, c)).collect();
        Ok(ForcingCertificate {
            defining_set: VertexSet::from_vertices(n, j.defining_set.iter().copied())?,
            partial: PartialColoring::from_pairs(n, j.s, &pairs)?,
            forced: Coloring::new(j.forced.clone(), j.s)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub defining_set: Vec<usize>,
    pub partial: BTreeMap<usize, u32>,
    pub s: u32,
    pub forced: Vec<u32>,
}

enum Mode {
    /// All proper χ-colorings, `n` entries per row, colors 0-based.
    Table(Vec<u8>),
    Search,
}

/// Precomputed state for repeated forcing queries on one graph.
pub struct ForcingOracle<'g> {
    g: &'g Graph,
    chi: u32,
    mode: Mode,
}

impl<'g> ForcingOracle<'g> {
    pub fn new(g: &'g Graph, budget: &mut Budget) -> Result<Self> {
        Self::with_table_limit(g, TABLE_LIMIT, budget)
    }

    pub fn with_table_limit(g: &'g Graph, limit: usize, budget: &mut Budget) -> Result<Self> {
        if g.n() == 0 {
            return Err(Error::Precondition("forcing needs at least one vertex".into()));
        }
        let chi = chromatic_number(g, budget)?;
        let n = g.n();
        let mut rows = Vec::new();
        let mut count = 0usize;
        let mut search = ColorSearch::new(g, chi, &vec![0; n], false)
            .expect("empty partial coloring is always proper");
        search.run(budget, &mut |c| {
            count += 1;
            if count > limit {
                return false;
            }
            rows.extend(c.iter().map(|&x| (x - 1) as u8));
            true
        })?;
        let mode = if count > limit {
            Mode::Search
        } else {
            Mode::Table(rows)
        };
        Ok(ForcingOracle { g, chi, mode })
    }

    fn table(&self) -> Result<&[u8]> {
        match &self.mode {
            Mode::Table(rows) => Ok(rows),
            Mode::Search => Err(Error::Capacity {
                what: "coloring list",
                requested: TABLE_LIMIT + 1,
                limit: TABLE_LIMIT,
            }),
        }
    }

    pub fn chi(&self) -> u32 {
        self.chi
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    /// Number of proper χ-colorings, when they were tabulated.
    pub fn coloring_count(&self) -> Option<usize> {
        match &self.mode {
            Mode::Table(rows) => Some(rows.len() / self.g.n()),
            Mode::Search => None,
        }
    }

    pub fn is_forcing(&self, d: VertexSet, budget: &mut Budget) -> Result<bool> {
        match &self.mode {
            Mode::Table(rows) => {
                budget.tick()?;
                Ok(!self.unique_rows(rows, d).is_empty())
            }
            Mode::Search => Ok(self.search_pattern(d, budget)?.is_some()),
        }
    }

    /// A certificate on `d` if `d` is forcing. The partial coloring is the
    /// lexicographically least forcing one with colors introduced in
    /// increasing order along `d`.
    pub fn certificate(&self, d: VertexSet, budget: &mut Budget) -> Result<Option<ForcingCertificate>> {
        let n = self.g.n();
        let found = match &self.mode {
            Mode::Table(rows) => {
                budget.tick()?;
                self.unique_rows(rows, d)
                    .into_iter()
                    .map(|r| {
                        let row: Vec<u32> =
                            rows[r * n..(r + 1) * n].iter().map(|&c| c as u32 + 1).collect();
                        canonical_relabel(&row, d)
                    })
                    .min_by(|a, b| {
                        let ka: Vec<u32> = d.iter().map(|v| a[v]).collect();
                        let kb: Vec<u32> = d.iter().map(|v| b[v]).collect();
                        ka.cmp(&kb)
                    })
            }
            Mode::Search => self
                .search_pattern(d, budget)?
                .map(|forced| canonical_relabel(&forced, d)),
        };
        Ok(found.map(|forced| {
            let forced = Coloring::new(forced, self.chi).expect("colors are within 1..=χ");
            ForcingCertificate {
                defining_set: d,
                partial: forced.restrict(d),
                forced,
            }
        }))
    }

    /// Row indices whose restriction to `d` is shared with no other row.
    fn unique_rows(&self, rows: &[u8], d: VertexSet) -> Vec<usize> {
        let n = self.g.n();
        let m = rows.len() / n;
        let verts = d.to_vec();
        let bits = 32 - (self.chi.max(2) - 1).leading_zeros() as usize;
        let width = bits * verts.len();
        if width <= 128 {
            let keys: Vec<u128> = (0..m)
                .map(|r| {
                    let row = &rows[r * n..(r + 1) * n];
                    verts.iter().fold(0u128, |acc, &v| acc << bits | row[v] as u128)
                })
                .collect();
            if width <= 20 {
                let mut counts = vec![0u32; 1 << width];
                for &k in &keys {
                    counts[k as usize] += 1;
                }
                return (0..m).filter(|&r| counts[keys[r] as usize] == 1).collect();
            }
            return singletons(keys);
        }
        let keys: Vec<Vec<u8>> = (0..m)
            .map(|r| verts.iter().map(|&v| rows[r * n + v]).collect())
            .collect();
        singletons(keys)
    }

    /// First canonical pattern on `d` with exactly one extension, returned as
    /// that extension.
    fn search_pattern(&self, d: VertexSet, budget: &mut Budget) -> Result<Option<Vec<u32>>> {
        let verts = d.to_vec();
        let mut fixed = vec![0u32; self.g.n()];
        self.pattern_dfs(&verts, 0, 0, &mut fixed, budget)
    }

    fn pattern_dfs(
        &self,
        verts: &[usize],
        i: usize,
        used: u32,
        fixed: &mut Vec<u32>,
        budget: &mut Budget,
    ) -> Result<Option<Vec<u32>>> {
        budget.tick()?;
        if i == verts.len() {
            let p = PartialColoring::new(
                fixed.iter().map(|&c| (c != 0).then_some(c)).collect(),
                self.chi,
            )?;
            let ext = enumerate_extensions(self.g, &p, Some(2), budget)?;
            return Ok((ext.len() == 1).then(|| ext[0].colors().to_vec()));
        }
        let v = verts[i];
        for c in 1..=self.chi.min(used + 1) {
            if BitIter(self.g.neighbors(v)).any(|w| fixed[w] == c) {
                continue;
            }
            fixed[v] = c;
            let r = self.pattern_dfs(verts, i + 1, used.max(c), fixed, budget)?;
            fixed[v] = 0;
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }

    /// The first forcing set of size at most `k` in (size, lexicographic)
    /// order.
    pub fn smallest_forcing_up_to(
        &self,
        k: usize,
        budget: &mut Budget,
    ) -> Result<Option<ForcingCertificate>> {
        let n = self.g.n();
        for size in 0..=k.min(n) {
            let mut hit = None;
            for_each_subset(n, size, |d| match self.certificate(d, budget) {
                Ok(Some(c)) => {
                    hit = Some(Ok(c));
                    false
                }
                Ok(None) => true,
                Err(e) => {
                    hit = Some(Err(e.with_bounds(Some(size as u64), Some(n as u64))));
                    false
                }
            });
            if let Some(r) = hit {
                return r.map(Some);
            }
        }
        Ok(None)
    }

    pub fn forcing_number(&self, budget: &mut Budget) -> Result<ForcingCertificate> {
        let n = self.g.n();
        self.smallest_forcing_up_to(n, budget)?
            .ok_or_else(|| Error::Contract("the full vertex set must be forcing".into()))
    }

    /// fF_χ: the largest minimal defining set. `D` is a minimal defining set
    /// for a coloring `c` when `c` restricted to `D` forces `c` but no
    /// restriction of `c` to a proper subset of `D` does. Needs the coloring
    /// table. Per coloring, sizes are scanned upwards until every set of the
    /// current size is defining; needing to go past `cap` is a capacity
    /// error.
    pub fn max_minimal_forcing(&self, cap: usize, budget: &mut Budget) -> Result<usize> {
        let rows = self.table()?;
        let n = self.g.n();
        let count = rows.len() / n;
        let mut best = 0;
        for r in (0..count).filter(|&r| first_use_order(&rows[r * n..(r + 1) * n])) {
            let row = &rows[r * n..(r + 1) * n];
            // `D` defines this coloring iff it meets every difference set.
            let mut diffs: Vec<u64> = (0..count)
                .filter(|&q| q != r)
                .map(|q| {
                    let other = &rows[q * n..(q + 1) * n];
                    (0..n).filter(|&v| row[v] != other[v]).fold(0, |m, v| m | 1 << v)
                })
                .collect();
            diffs.sort_unstable();
            diffs.dedup();
            let defines = |d: u64| diffs.iter().all(|&m| m & d != 0);
            for size in 0..=n {
                if size > cap {
                    return Err(Error::Capacity {
                        what: "minimal defining set size",
                        requested: size,
                        limit: cap,
                    });
                }
                let mut all = true;
                let mut err = None;
                for_each_subset(n, size, |d| {
                    if let Err(e) = budget.tick() {
                        err = Some(e);
                        return false;
                    }
                    let bits = d.bits();
                    if !defines(bits) {
                        all = false;
                    } else if d.iter().all(|v| !defines(bits & !(1u64 << v))) {
                        best = best.max(size);
                    }
                    true
                });
                if let Some(e) = err {
                    return Err(e);
                }
                if all {
                    break;
                }
            }
        }
        Ok(best)
    }

    /// The largest forcing set none of whose proper subsets is forcing for
    /// any coloring. Sizes are scanned upwards until every set of the current
    /// size is forcing; needing to go past `cap` is a capacity error.
    pub fn max_set_minimal_forcing(&self, cap: usize, budget: &mut Budget) -> Result<usize> {
        let n = self.g.n();
        let mut forcing: HashMap<u64, bool> = HashMap::new();
        let mut best = None;
        for size in 0..=n {
            if size > cap {
                return Err(Error::Capacity {
                    what: "minimal forcing set size",
                    requested: size,
                    limit: cap,
                });
            }
            let mut all_forcing = true;
            let mut err = None;
            for_each_subset(n, size, |d| {
                let f = match self.is_forcing(d, budget) {
                    Ok(f) => f,
                    Err(e) => {
                        err = Some(e);
                        return false;
                    }
                };
                forcing.insert(d.bits(), f);
                if !f {
                    all_forcing = false;
                } else if d.iter().all(|v| !forcing[&(d.bits() & !(1u64 << v))]) {
                    best = Some(size);
                }
                true
            });
            if let Some(e) = err {
                return Err(e);
            }
            if all_forcing {
                break;
            }
            forcing.retain(|k, _| k.count_ones() as usize == size);
        }
        best.ok_or_else(|| Error::Contract("no minimal forcing set found".into()))
    }

    /// The halving construction: repeatedly fix, at the first vertex where
    /// the surviving colorings disagree, its least frequent color (ties to the
    /// smaller color), until one coloring remains.
    pub fn greedy(&self) -> Result<ForcingCertificate> {
        let rows = self.table()?;
        let n = self.g.n();
        let mut alive: Vec<usize> = (0..rows.len() / n).collect();
        let mut fixed: Vec<(usize, u32)> = Vec::new();
        while alive.len() > 1 {
            let v = (0..n)
                .find(|&v| alive.iter().any(|&r| rows[r * n + v] != rows[alive[0] * n + v]))
                .expect("distinct colorings differ somewhere");
            let mut freq = vec![0usize; self.chi as usize];
            for &r in &alive {
                freq[rows[r * n + v] as usize] += 1;
            }
            let c = (0..freq.len())
                .filter(|&c| freq[c] > 0)
                .min_by_key(|&c| (freq[c], c))
                .unwrap();
            alive.retain(|&r| rows[r * n + v] as usize == c);
            fixed.push((v, c as u32 + 1));
        }
        let r = alive[0];
        let forced = Coloring::new(
            rows[r * n..(r + 1) * n].iter().map(|&c| c as u32 + 1).collect(),
            self.chi,
        )?;
        let partial = PartialColoring::from_pairs(n, self.chi, &fixed)?;
        Ok(ForcingCertificate {
            defining_set: partial.domain(),
            partial,
            forced,
        })
    }
}

/// Indices of keys that occur once, ascending.
fn singletons<K: Ord>(keys: Vec<K>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_unstable_by(|&a, &b| keys[a].cmp(&keys[b]));
    let len = order.len();
    let mut out: Vec<usize> = (0..len)
        .filter(|&i| {
            (i == 0 || keys[order[i - 1]] != keys[order[i]])
                && (i + 1 == len || keys[order[i + 1]] != keys[order[i]])
        })
        .map(|i| order[i])
        .collect();
    out.sort_unstable();
    out
}

/// Whether 0-based colors are introduced in increasing order, which picks
/// one coloring per partition.
fn first_use_order(row: &[u8]) -> bool {
    let mut next = 0;
    for &c in row {
        if c > next {
            return false;
        }
        if c == next {
            next += 1;
        }
    }
    true
}

/// Rename colors so they appear in increasing order: first along `d`, then
/// along the remaining vertices.
fn canonical_relabel(colors: &[u32], d: VertexSet) -> Vec<u32> {
    let mut map = vec![0u32; colors.iter().copied().max().unwrap_or(0) as usize + 1];
    let mut next = 0;
    let order = d.iter().chain((0..colors.len()).filter(|&v| !d.contains(v)));
    for v in order {
        let c = colors[v] as usize;
        if map[c] == 0 {
            next += 1;
            map[c] = next;
        }
    }
    colors.iter().map(|&c| map[c as usize]).collect()
}

/// Visit the `k`-subsets of `0..n` in lexicographic order until `f` returns
/// `false`. Returns whether the scan ran to the end.
pub fn for_each_subset<F: FnMut(VertexSet) -> bool>(n: usize, k: usize, mut f: F) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let d = VertexSet::from_vertices(n, idx.iter().copied()).unwrap();
        if !f(d) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn is_forcing_set(
    g: &Graph,
    d: VertexSet,
    budget: &mut Budget,
) -> Result<Option<ForcingCertificate>> {
    if d.host_order() != g.n() {
        return Err(Error::Contract("vertex set belongs to a different graph".into()));
    }
    ForcingOracle::new(g, budget)?.certificate(d, budget)
}

/// F_χ(G) together with a certificate on the first smallest forcing set.
pub fn forcing_chromatic_number(
    g: &Graph,
    budget: &mut Budget,
) -> Result<(usize, ForcingCertificate)> {
    let oracle = ForcingOracle::new(g, budget).map_err(|e| e.with_bounds(None, Some(g.n() as u64)))?;
    let cert = oracle.forcing_number(budget)?;
    Ok((cert.size(), cert))
}

/// A forcing set of size at most `k`, if there is one.
pub fn forcing_number_at_most(
    g: &Graph,
    k: usize,
    budget: &mut Budget,
) -> Result<Option<ForcingCertificate>> {
    ForcingOracle::new(g, budget)?.smallest_forcing_up_to(k, budget)
}

pub fn max_minimal_forcing(g: &Graph, budget: &mut Budget) -> Result<usize> {
    ForcingOracle::new(g, budget)?.max_minimal_forcing(DEFAULT_MINIMAL_CAP, budget)
}

/// See [`ForcingOracle::max_set_minimal_forcing`].
pub fn max_set_minimal_forcing(g: &Graph, budget: &mut Budget) -> Result<usize> {
    ForcingOracle::new(g, budget)?.max_set_minimal_forcing(DEFAULT_MINIMAL_CAP, budget)
}

pub fn greedy_forcing_set(g: &Graph, budget: &mut Budget) -> Result<ForcingCertificate> {
    ForcingOracle::new(g, budget)?.greedy()
}

/// `(g, u, v)` with `{u, v}` the lexicographically first edge. An edgeless
/// `g` maps to `K₂ + K₁` with the pair `{0, 1}`, which does not force the
/// isolated vertex.
pub fn recognition_reduction(g: &Graph) -> (Graph, usize, usize) {
    match g.edges().next() {
        Some((u, v)) => (g.clone(), u, v),
        None => (Graph::from_edges(3, &[(0, 1)]).unwrap(), 0, 1),
    }
}
