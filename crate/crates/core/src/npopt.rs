//! NP optimization problems over bit-string solutions, the `force` operator
//! on solution sets, and the clique, domination, vertex cover and coloring
//! problems in their bit-string encodings.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coloring::{chromatic_number, Coloring, PartialColoring};
use crate::error::{Error, Result};
use crate::forcing::for_each_subset;
use crate::graph::{BitIter, Graph, VertexSet};
use crate::search::{Budget, ColorSearch};

/// Longest solution length enumerated by the literal `2^l` scan.
pub const SCAN_LIMIT: usize = 24;

/// A fixed-length 0/1 string. Ordering is lexicographic on the string.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    len: usize,
    /// Position `i` (0-based) is bit `63 - i % 64` of word `i / 64`.
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// The string of length `len` whose 0-based position `i` is bit
    /// `len - 1 - i` of `value`, i.e. `value` written in binary.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut s = BitString::zeros(len);
        for i in 0..len {
            if value >> (len - 1 - i) & 1 == 1 {
                s.set(i, true);
            }
        }
        s
    }

    /// Characteristic string of a vertex set.
    pub fn from_set(s: VertexSet) -> Self {
        let mut b = BitString::zeros(s.host_order());
        for v in s.iter() {
            b.set(v, true);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// 0-based access.
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (63 - i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, on: bool) {
        let bit = 1u64 << (63 - i % 64);
        if on {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// 0-based positions of the ones, ascending.
    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    fn covers(&self, positions: &[usize]) -> bool {
        positions.iter().all(|&i| self.get(i))
    }
}

impl PartialOrd for BitString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.cmp(&other.words).then(self.len.cmp(&other.len))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl std::str::FromStr for BitString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut b = BitString::zeros(s.len());
        for (i, ch) in s.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => b.set(i, true),
                _ => return Err(Error::parse(i, "expected 0 or 1")),
            }
        }
        Ok(b)
    }
}

/// A set of strings of one common length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    length: usize,
    members: BTreeSet<BitString>,
}

impl SolutionSet {
    pub fn new(length: usize) -> Self {
        SolutionSet {
            length,
            members: BTreeSet::new(),
        }
    }

    pub fn from_members(length: usize, members: impl IntoIterator<Item = BitString>) -> Result<Self> {
        let mut s = SolutionSet::new(length);
        for m in members {
            s.insert(m)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, y: BitString) -> Result<bool> {
        if y.len() != self.length {
            return Err(Error::InvalidParameter(format!(
                "string of length {} in a set of length {}",
                y.len(),
                self.length
            )));
        }
        Ok(self.members.insert(y))
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BitString> {
        self.members.iter()
    }

    pub fn contains(&self, y: &BitString) -> bool {
        self.members.contains(y)
    }
}

impl Serialize for SolutionSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members.iter().map(|m| m.to_string()))
    }
}

impl<'de> Deserialize<'de> for SolutionSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let strings = Vec::<String>::deserialize(d)?;
        let members = strings
            .iter()
            .map(|s| s.parse::<BitString>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let length = members.first().map_or(0, |m| m.len());
        SolutionSet::from_members(length, members).map_err(D::Error::custom)
    }
}

/// A `force` value: a count, or infinity for the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Force {
    Finite(usize),
    Infinite,
}

impl Force {
    pub fn finite(self) -> Option<usize> {
        match self {
            Force::Finite(k) => Some(k),
            Force::Infinite => None,
        }
    }

    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Force::Finite(f) if f <= k)
    }
}

impl fmt::Display for Force {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Force::Finite(k) => write!(f, "{k}"),
            Force::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Force {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Force::Finite(k) => s.serialize_u64(*k as u64),
            Force::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// `force(U)` with the witness: the lexicographically least smallest set
/// of 1-based positions at which exactly one member has all ones.
pub fn force_set_with_witness(u: &SolutionSet) -> (Force, Option<Vec<usize>>) {
    if u.is_empty() {
        return (Force::Infinite, None);
    }
    let members: Vec<&BitString> = u.iter().collect();
    for k in 0..=u.length() {
        let mut best: Option<Vec<usize>> = None;
        for y in &members {
            let ones = y.ones();
            if ones.len() < k {
                continue;
            }
            for_each_subset(ones.len(), k, |pick| {
                let s: Vec<usize> = pick.iter().map(|i| ones[i]).collect();
                if best.as_ref().is_some_and(|b| *b <= s) {
                    return false;
                }
                let hits = members.iter().filter(|z| z.covers(&s)).count();
                if hits == 1 {
                    best = Some(s);
                    false
                } else {
                    true
                }
            });
        }
        if let Some(s) = best {
            return (Force::Finite(k), Some(s.into_iter().map(|i| i + 1).collect()));
        }
    }
    unreachable!("a member with no superset in the set is isolated by its own ones")
}

pub fn force_set(u: &SolutionSet) -> Force {
    force_set_with_witness(u).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Min,
    Max,
}

impl Kind {
    fn better(self, a: u64, b: u64) -> bool {
        match self {
            Kind::Min => a < b,
            Kind::Max => a > b,
        }
    }
}

/// An NP optimization problem with its instance fixed.
pub trait NpOptProblem {
    fn kind(&self) -> Kind;

    fn solution_length(&self) -> usize;

    fn is_feasible(&self, y: &BitString) -> bool;

    /// Objective value of a feasible string.
    fn value(&self, y: &BitString) -> u64;

    /// Every value a feasible string can take lies in this range.
    fn value_range(&self) -> RangeInclusive<u64>;

    /// `sol^m`: all feasible strings of value exactly `m`.
    fn solutions_with_value(&self, m: u64, budget: &mut Budget) -> Result<SolutionSet> {
        scan(self, budget, |y| self.value(y) == m)
    }

    /// The optimum value, or `None` if nothing is feasible.
    fn optimum(&self, budget: &mut Budget) -> Result<Option<u64>> {
        let mut best: Option<u64> = None;
        scan(self, budget, |y| {
            let v = self.value(y);
            if best.is_none_or(|b| self.kind().better(v, b)) {
                best = Some(v);
            }
            false
        })?;
        Ok(best)
    }
}

/// All feasible strings accepted by `keep`, by trying every string of the
/// solution length.
pub fn scan<P, F>(pi: &P, budget: &mut Budget, mut keep: F) -> Result<SolutionSet>
where
    P: NpOptProblem + ?Sized,
    F: FnMut(&BitString) -> bool,
{
    let l = pi.solution_length();
    if l > SCAN_LIMIT {
        return Err(Error::Capacity {
            what: "bit-string scan length",
            requested: l,
            limit: SCAN_LIMIT,
        });
    }
    let mut out = SolutionSet::new(l);
    for x in 0..1u64 << l {
        budget.tick()?;
        let y = BitString::from_u64(l, x);
        if pi.is_feasible(&y) && keep(&y) {
            out.insert(y)?;
        }
    }
    Ok(out)
}

pub fn optimum<P: NpOptProblem + ?Sized>(pi: &P, budget: &mut Budget) -> Result<Option<u64>> {
    pi.optimum(budget)
}

pub fn optsol<P: NpOptProblem + ?Sized>(pi: &P, budget: &mut Budget) -> Result<SolutionSet> {
    match pi.optimum(budget)? {
        Some(m) => pi.solutions_with_value(m, budget),
        None => Ok(SolutionSet::new(pi.solution_length())),
    }
}

/// F_π(x) = force(optsol(x)).
pub fn forcing_number<P: NpOptProblem + ?Sized>(pi: &P, budget: &mut Budget) -> Result<Force> {
    Ok(force_set(&optsol(pi, budget)?))
}

/// Whether the optimal solution is unique.
pub fn uo_membership<P: NpOptProblem + ?Sized>(pi: &P, budget: &mut Budget) -> Result<bool> {
    Ok(optsol(pi, budget)?.len() == 1)
}

pub fn sol_m<P: NpOptProblem + ?Sized>(pi: &P, m: u64, budget: &mut Budget) -> Result<SolutionSet> {
    pi.solutions_with_value(m, budget)
}

pub fn f_m<P: NpOptProblem + ?Sized>(pi: &P, m: u64, budget: &mut Budget) -> Result<Force> {
    Ok(force_set(&sol_m(pi, m, budget)?))
}

/// The disjunction over `m` of `F^m ≤ k` and `π(x) ≥ m` (`≤ m` for
/// maximization), evaluated directly.
pub fn dtt_decomposition_check<P: NpOptProblem + ?Sized>(
    pi: &P,
    k: usize,
    budget: &mut Budget,
) -> Result<bool> {
    let Some(opt) = pi.optimum(budget)? else {
        return Ok(false);
    };
    for m in pi.value_range() {
        let side = match pi.kind() {
            Kind::Min => opt >= m,
            Kind::Max => opt <= m,
        };
        if side && f_m(pi, m, budget)?.at_most(k) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A problem given by closures, scanned literally.
pub struct ExplicitProblem<F, V> {
    pub kind: Kind,
    pub length: usize,
    pub range: RangeInclusive<u64>,
    pub feasible: F,
    pub value: V,
}

impl<F, V> NpOptProblem for ExplicitProblem<F, V>
where
    F: Fn(&BitString) -> bool,
    V: Fn(&BitString) -> u64,
{
    fn kind(&self) -> Kind {
        self.kind
    }
    fn solution_length(&self) -> usize {
        self.length
    }
    fn is_feasible(&self, y: &BitString) -> bool {
        (self.feasible)(y)
    }
    fn value(&self, y: &BitString) -> u64 {
        (self.value)(y)
    }
    fn value_range(&self) -> RangeInclusive<u64> {
        self.range.clone()
    }
}

fn string_to_set(g: &Graph, y: &BitString) -> Option<VertexSet> {
    (y.len() == g.n()).then(|| VertexSet::from_vertices(g.n(), y.ones()).unwrap())
}

fn require_vertices(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::Precondition("instance graph needs a vertex".into()));
    }
    Ok(())
}

/// Cliques of size exactly `m`, in lexicographic order of their vertex lists.
pub fn cliques_of_size(g: &Graph, m: usize, budget: &mut Budget) -> Result<Vec<VertexSet>> {
    fn rec(
        g: &Graph,
        m: usize,
        chosen: u64,
        cand: u64,
        out: &mut Vec<VertexSet>,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick()?;
        let have = chosen.count_ones() as usize;
        if have == m {
            out.push(VertexSet::from_bits(g.n(), chosen).unwrap());
            return Ok(());
        }
        if have + cand.count_ones() as usize >= m {
            for v in BitIter(cand) {
                let later = cand & u64::MAX.checked_shl(v as u32 + 1).unwrap_or(0);
                rec(g, m, chosen | 1 << v, later & g.neighbors(v), out, budget)?;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(g, m, 0, g.vertex_set().bits(), &mut out, budget)?;
    Ok(out)
}

/// ω(G) by branch and bound with a greedy-coloring bound.
pub fn clique_number(g: &Graph, budget: &mut Budget) -> Result<usize> {
    fn color_bound(g: &Graph, cand: u64) -> usize {
        let mut left = cand;
        let mut classes = 0;
        while left != 0 {
            classes += 1;
            let mut avail = left;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                left &= !(1 << v);
                avail &= !(1 << v) & !g.neighbors(v);
            }
        }
        classes
    }
    fn rec(g: &Graph, size: usize, cand: u64, best: &mut usize, budget: &mut Budget) -> Result<()> {
        budget.tick()?;
        if cand == 0 {
            *best = (*best).max(size);
            return Ok(());
        }
        if size + color_bound(g, cand) <= *best {
            return Ok(());
        }
        let mut cand = cand;
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return Ok(());
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !(1 << v);
            rec(g, size + 1, cand & g.neighbors(v), best, budget)?;
        }
        Ok(())
    }
    let mut best = 0;
    rec(g, 0, g.vertex_set().bits(), &mut best, budget)?;
    Ok(best)
}

pub fn is_dominating(g: &Graph, s: VertexSet) -> bool {
    let mut covered = s.bits();
    for v in s.iter() {
        covered |= g.neighbors(v);
    }
    covered == g.vertex_set().bits()
}

pub fn is_vertex_cover(g: &Graph, s: VertexSet) -> bool {
    g.edges().all(|(u, v)| s.contains(u) || s.contains(v))
}

fn subsets_of_size<F>(g: &Graph, m: usize, budget: &mut Budget, keep: F) -> Result<Vec<VertexSet>>
where
    F: Fn(VertexSet) -> bool,
{
    let mut out = Vec::new();
    let mut err = None;
    for_each_subset(g.n(), m, |s| {
        if let Err(e) = budget.tick() {
            err = Some(e);
            return false;
        }
        if keep(s) {
            out.push(s);
        }
        true
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

pub fn dominating_sets_of_size(g: &Graph, m: usize, budget: &mut Budget) -> Result<Vec<VertexSet>> {
    subsets_of_size(g, m, budget, |s| is_dominating(g, s))
}

pub fn vertex_covers_of_size(g: &Graph, m: usize, budget: &mut Budget) -> Result<Vec<VertexSet>> {
    subsets_of_size(g, m, budget, |s| is_vertex_cover(g, s))
}

fn sets_to_solutions(n: usize, sets: Vec<VertexSet>) -> Result<SolutionSet> {
    SolutionSet::from_members(n, sets.into_iter().map(BitString::from_set))
}

/// Maximum clique, solutions are characteristic strings of nonempty cliques.
pub struct OmegaProblem<'g> {
    g: &'g Graph,
}

/// Minimum dominating set, as characteristic strings.
pub struct GammaProblem<'g> {
    g: &'g Graph,
}

/// Minimum vertex cover, as characteristic strings. The empty set is a
/// feasible cover of value 0 on an edgeless graph.
pub struct TauProblem<'g> {
    g: &'g Graph,
}

pub fn omega_encoding(g: &Graph) -> Result<OmegaProblem<'_>> {
    require_vertices(g)?;
    Ok(OmegaProblem { g })
}

pub fn gamma_encoding(g: &Graph) -> Result<GammaProblem<'_>> {
    require_vertices(g)?;
    Ok(GammaProblem { g })
}

pub fn tau_encoding(g: &Graph) -> Result<TauProblem<'_>> {
    require_vertices(g)?;
    Ok(TauProblem { g })
}

impl NpOptProblem for OmegaProblem<'_> {
    fn kind(&self) -> Kind {
        Kind::Max
    }
    fn solution_length(&self) -> usize {
        self.g.n()
    }
    fn is_feasible(&self, y: &BitString) -> bool {
        string_to_set(self.g, y).is_some_and(|s| !s.is_empty() && self.g.is_clique(s))
    }
    fn value(&self, y: &BitString) -> u64 {
        y.count_ones() as u64
    }
    fn value_range(&self) -> RangeInclusive<u64> {
        1..=self.g.n() as u64
    }
    fn solutions_with_value(&self, m: u64, budget: &mut Budget) -> Result<SolutionSet> {
        if m == 0 || m > self.g.n() as u64 {
            return Ok(SolutionSet::new(self.g.n()));
        }
        sets_to_solutions(self.g.n(), cliques_of_size(self.g, m as usize, budget)?)
    }
    fn optimum(&self, budget: &mut Budget) -> Result<Option<u64>> {
        Ok(Some(clique_number(self.g, budget)? as u64))
    }
}

impl NpOptProblem for GammaProblem<'_> {
    fn kind(&self) -> Kind {
        Kind::Min
    }
    fn solution_length(&self) -> usize {
        self.g.n()
    }
    fn is_feasible(&self, y: &BitString) -> bool {
        string_to_set(self.g, y).is_some_and(|s| is_dominating(self.g, s))
    }
    fn value(&self, y: &BitString) -> u64 {
        y.count_ones() as u64
    }
    fn value_range(&self) -> RangeInclusive<u64> {
        1..=self.g.n() as u64
    }
    fn solutions_with_value(&self, m: u64, budget: &mut Budget) -> Result<SolutionSet> {
        if m > self.g.n() as u64 {
            return Ok(SolutionSet::new(self.g.n()));
        }
        sets_to_solutions(self.g.n(), dominating_sets_of_size(self.g, m as usize, budget)?)
    }
    fn optimum(&self, budget: &mut Budget) -> Result<Option<u64>> {
        for m in 1..=self.g.n() {
            if !dominating_sets_of_size(self.g, m, budget)?.is_empty() {
                return Ok(Some(m as u64));
            }
        }
        unreachable!("the full vertex set dominates")
    }
}

impl NpOptProblem for TauProblem<'_> {
    fn kind(&self) -> Kind {
        Kind::Min
    }
    fn solution_length(&self) -> usize {
        self.g.n()
    }
    fn is_feasible(&self, y: &BitString) -> bool {
        string_to_set(self.g, y).is_some_and(|s| is_vertex_cover(self.g, s))
    }
    fn value(&self, y: &BitString) -> u64 {
        y.count_ones() as u64
    }
    fn value_range(&self) -> RangeInclusive<u64> {
        0..=self.g.n() as u64
    }
    fn solutions_with_value(&self, m: u64, budget: &mut Budget) -> Result<SolutionSet> {
        if m > self.g.n() as u64 {
            return Ok(SolutionSet::new(self.g.n()));
        }
        sets_to_solutions(self.g.n(), vertex_covers_of_size(self.g, m as usize, budget)?)
    }
    fn optimum(&self, budget: &mut Budget) -> Result<Option<u64>> {
        for m in 0..=self.g.n() {
            if !vertex_covers_of_size(self.g, m, budget)?.is_empty() {
                return Ok(Some(m as u64));
            }
        }
        unreachable!("the full vertex set covers every edge")
    }
}

/// How a coloring string is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiValue {
    /// The largest color index used. Optimal strings are exactly the proper
    /// χ-colorings.
    MaxColor,
    /// The number of distinct colors used. Optimal strings include colorings
    /// by any χ of the `n` colors.
    DistinctColors,
}

/// Proper colorings `V → [n]`, each vertex written as a one-hot block of
/// `n` bits, `n²` bits in all.
pub struct ChiProblem<'g> {
    g: &'g Graph,
    scoring: ChiValue,
}

pub fn chi_encoding(g: &Graph) -> Result<ChiProblem<'_>> {
    require_vertices(g)?;
    Ok(ChiProblem {
        g,
        scoring: ChiValue::MaxColor,
    })
}

pub fn chi_encoding_with(g: &Graph, scoring: ChiValue) -> Result<ChiProblem<'_>> {
    require_vertices(g)?;
    Ok(ChiProblem { g, scoring })
}

impl ChiProblem<'_> {
    pub fn encode(&self, c: &[u32]) -> BitString {
        let n = self.g.n();
        let mut y = BitString::zeros(n * n);
        for (v, &col) in c.iter().enumerate() {
            y.set(v * n + col as usize - 1, true);
        }
        y
    }

    pub fn decode(&self, y: &BitString) -> Option<Vec<u32>> {
        let n = self.g.n();
        if y.len() != n * n {
            return None;
        }
        (0..n)
            .map(|v| {
                let block: Vec<usize> = (0..n).filter(|&i| y.get(v * n + i)).collect();
                (block.len() == 1).then(|| block[0] as u32 + 1)
            })
            .collect()
    }

    fn score(&self, c: &[u32]) -> u64 {
        match self.scoring {
            ChiValue::MaxColor => c.iter().copied().max().unwrap_or(0) as u64,
            ChiValue::DistinctColors => c.iter().collect::<BTreeSet<_>>().len() as u64,
        }
    }

    /// Proper colorings into `[s]`, passed to `visit`.
    fn colorings_into(&self, s: u32, budget: &mut Budget, visit: &mut dyn FnMut(&[u32])) -> Result<()> {
        let n = self.g.n();
        if let Some(mut search) = ColorSearch::new(self.g, s, &vec![0; n], false) {
            search.run(budget, &mut |c| {
                visit(c);
                true
            })?;
        }
        Ok(())
    }
}

impl NpOptProblem for ChiProblem<'_> {
    fn kind(&self) -> Kind {
        Kind::Min
    }
    fn solution_length(&self) -> usize {
        self.g.n() * self.g.n()
    }
    fn is_feasible(&self, y: &BitString) -> bool {
        self.decode(y).is_some_and(|c| {
            Coloring::new(c, self.g.n() as u32)
                .and_then(|c| crate::coloring::is_proper(self.g, &c))
                .unwrap_or(false)
        })
    }
    fn value(&self, y: &BitString) -> u64 {
        self.decode(y).map_or(0, |c| self.score(&c))
    }
    fn value_range(&self) -> RangeInclusive<u64> {
        1..=self.g.n() as u64
    }
    fn solutions_with_value(&self, m: u64, budget: &mut Budget) -> Result<SolutionSet> {
        let n = self.g.n();
        let mut out = SolutionSet::new(n * n);
        if m == 0 || m > n as u64 {
            return Ok(out);
        }
        let palette = match self.scoring {
            ChiValue::MaxColor => m as u32,
            ChiValue::DistinctColors => n as u32,
        };
        let mut err = None;
        self.colorings_into(palette, budget, &mut |c| {
            if self.score(c) == m {
                if let Err(e) = out.insert(self.encode(c)) {
                    err = Some(e);
                }
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }
    fn optimum(&self, budget: &mut Budget) -> Result<Option<u64>> {
        Ok(Some(chromatic_number(self.g, budget)? as u64))
    }
}

/// The partial coloring read off a set of 1-based one-hot positions, if no
/// vertex gets two colors.
pub fn chi_positions_to_partial(g: &Graph, positions: &[usize]) -> Option<PartialColoring> {
    let n = g.n();
    let mut colors = vec![None; n];
    for &p in positions {
        let (v, c) = ((p - 1) / n, (p - 1) % n + 1);
        if colors[v].replace(c as u32).is_some() {
            return None;
        }
    }
    PartialColoring::new(colors, n as u32).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};
    use proptest::prelude::*;

    fn b() -> Budget {
        Budget::default()
    }

    fn set(strings: &[&str]) -> SolutionSet {
        let members: Vec<BitString> = strings.iter().map(|s| s.parse().unwrap()).collect();
        let l = members.first().map_or(0, |m| m.len());
        SolutionSet::from_members(l, members).unwrap()
    }

    /// Try every `S ⊆ [l]`.
    fn brute_force(u: &SolutionSet) -> Force {
        if u.is_empty() {
            return Force::Infinite;
        }
        let l = u.length();
        let mut best = usize::MAX;
        for mask in 0..1u64 << l {
            let s: Vec<usize> = (0..l).filter(|&i| mask >> i & 1 == 1).collect();
            if u.iter().filter(|z| z.covers(&s)).count() == 1 {
                best = best.min(s.len());
            }
        }
        Force::Finite(best)
    }

    #[test]
    fn force_examples() {
        assert_eq!(force_set(&set(&["101"])), Force::Finite(0));
        assert_eq!(force_set(&SolutionSet::new(3)), Force::Infinite);
        let (f, w) = force_set_with_witness(&set(&["110", "101", "011"]));
        assert_eq!(f, Force::Finite(2));
        assert_eq!(w, Some(vec![1, 2]));
        assert!(Force::Finite(100) < Force::Infinite);
    }

    #[test]
    fn bitstrings() {
        let y: BitString = "0110".parse().unwrap();
        assert_eq!(y.ones(), vec![1, 2]);
        assert_eq!(y.to_string(), "0110");
        assert_eq!(BitString::from_u64(4, 6), y);
        assert!("01x".parse::<BitString>().is_err());
        let a: BitString = "01".parse().unwrap();
        let c: BitString = "10".parse().unwrap();
        assert!(a < c);
        let long: BitString = "1".repeat(70).parse().unwrap();
        assert_eq!(long.count_ones(), 70);
        assert!(long.get(69));
    }

    #[test]
    fn solution_set_json() {
        let u = set(&["110", "011"]);
        let j = serde_json::to_string(&u).unwrap();
        assert_eq!(j, r#"["011","110"]"#);
        let back: SolutionSet = serde_json::from_str(&j).unwrap();
        assert_eq!(back, u);
        assert!(serde_json::from_str::<SolutionSet>(r#"["01","110"]"#).is_err());
    }

    #[test]
    fn graph_problem_examples() {
        let k3 = complete(3).unwrap();
        let om = omega_encoding(&k3).unwrap();
        assert_eq!(optsol(&om, &mut b()).unwrap(), set(&["111"]));
        assert_eq!(optimum(&om, &mut b()).unwrap(), Some(3));
        assert_eq!(forcing_number(&om, &mut b()).unwrap(), Force::Finite(0));
        assert_eq!(sol_m(&om, 2, &mut b()).unwrap().len(), 3);
        assert_eq!(f_m(&om, 2, &mut b()).unwrap(), Force::Finite(2));
        assert!(dtt_decomposition_check(&om, 0, &mut b()).unwrap());

        let c4 = cycle(4).unwrap();
        let ga = gamma_encoding(&c4).unwrap();
        assert_eq!(optimum(&ga, &mut b()).unwrap(), Some(2));
        assert_eq!(optsol(&ga, &mut b()).unwrap().len(), 6);
        assert_eq!(forcing_number(&ga, &mut b()).unwrap(), Force::Finite(2));
        assert_eq!(sol_m(&ga, 1, &mut b()).unwrap().len(), 0);
        assert_eq!(f_m(&ga, 1, &mut b()).unwrap(), Force::Infinite);
        assert!(dtt_decomposition_check(&ga, 2, &mut b()).unwrap());
        assert!(!dtt_decomposition_check(&ga, 1, &mut b()).unwrap());
        assert_eq!(
            forcing_number(&omega_encoding(&c4).unwrap(), &mut b()).unwrap(),
            Force::Finite(2)
        );

        let k2 = complete(2).unwrap();
        let ta = tau_encoding(&k2).unwrap();
        assert_eq!(optimum(&ta, &mut b()).unwrap(), Some(1));
        assert_eq!(optsol(&ta, &mut b()).unwrap(), set(&["10", "01"]));

        let p3 = path(3).unwrap();
        let gp = gamma_encoding(&p3).unwrap();
        assert_eq!(optsol(&gp, &mut b()).unwrap(), set(&["010"]));
        assert_eq!(forcing_number(&gp, &mut b()).unwrap(), Force::Finite(0));

        assert!(omega_encoding(&Graph::empty(0).unwrap()).is_err());
    }

    #[test]
    fn chi_encoding_matches_forcing_number() {
        let k3 = complete(3).unwrap();
        let chi = chi_encoding(&k3).unwrap();
        assert_eq!(forcing_number(&chi, &mut b()).unwrap(), Force::Finite(2));
        let (f, w) = force_set_with_witness(&optsol(&chi, &mut b()).unwrap());
        assert_eq!(f, Force::Finite(2));
        let p = chi_positions_to_partial(&k3, &w.unwrap()).unwrap();
        assert_eq!(p.domain().len(), 2);
    }

    #[test]
    fn distinct_color_scoring_differs_on_p3() {
        let p3 = path(3).unwrap();
        let literal = chi_encoding_with(&p3, ChiValue::DistinctColors).unwrap();
        let opt = optsol(&literal, &mut b()).unwrap();
        assert_eq!(opt.len(), 6);
        assert_eq!(force_set(&opt), Force::Finite(2));
        let max = chi_encoding(&p3).unwrap();
        assert_eq!(forcing_number(&max, &mut b()).unwrap(), Force::Finite(1));
    }

    #[test]
    fn structured_enumerators_match_the_scan() {
        for n in 1..=4usize {
            for code in 0..1u64 << (n * (n - 1) / 2) {
                let g = Graph::from_pair_code(n, code).unwrap();
                let om = omega_encoding(&g).unwrap();
                let ga = gamma_encoding(&g).unwrap();
                let ta = tau_encoding(&g).unwrap();
                let ch = chi_encoding(&g).unwrap();
                let check_chi = n <= 3 || code % 9 == 0;
                for m in 0..=n as u64 {
                    assert_eq!(
                        om.solutions_with_value(m, &mut b()).unwrap(),
                        scan(&om, &mut b(), |y| om.value(y) == m).unwrap()
                    );
                    assert_eq!(
                        ga.solutions_with_value(m, &mut b()).unwrap(),
                        scan(&ga, &mut b(), |y| ga.value(y) == m).unwrap()
                    );
                    assert_eq!(
                        ta.solutions_with_value(m, &mut b()).unwrap(),
                        scan(&ta, &mut b(), |y| ta.value(y) == m).unwrap()
                    );
                    if check_chi {
                        assert_eq!(
                            ch.solutions_with_value(m, &mut b()).unwrap(),
                            scan(&ch, &mut b(), |y| ch.value(y) == m).unwrap()
                        );
                    }
                }
                let scanned = |p: &dyn NpOptProblem| {
                    let mut best: Option<u64> = None;
                    scan(p, &mut b(), |y| {
                        let v = p.value(y);
                        if best.is_none_or(|x| p.kind().better(v, x)) {
                            best = Some(v);
                        }
                        false
                    })
                    .unwrap();
                    best
                };
                assert_eq!(om.optimum(&mut b()).unwrap(), scanned(&om));
                assert_eq!(ga.optimum(&mut b()).unwrap(), scanned(&ga));
                assert_eq!(ta.optimum(&mut b()).unwrap(), scanned(&ta));
                if check_chi {
                    assert_eq!(ch.optimum(&mut b()).unwrap(), scanned(&ch));
                }
            }
        }
    }

    #[test]
    fn scan_limit() {
        let g = complete(5).unwrap();
        let ch = chi_encoding(&g).unwrap();
        assert!(matches!(
            scan(&ch, &mut b(), |_| true),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn explicit_problem() {
        let pi = ExplicitProblem {
            kind: Kind::Max,
            length: 3,
            range: 1..=3,
            feasible: |y: &BitString| y.count_ones() >= 1 && !y.get(0),
            value: |y: &BitString| y.count_ones() as u64,
        };
        assert_eq!(optimum(&pi, &mut b()).unwrap(), Some(2));
        assert_eq!(optsol(&pi, &mut b()).unwrap(), set(&["011"]));
        assert!(uo_membership(&pi, &mut b()).unwrap());
        assert!(dtt_decomposition_check(&pi, 0, &mut b()).unwrap());
        let none = ExplicitProblem {
            kind: Kind::Min,
            length: 2,
            range: 1..=2,
            feasible: |_: &BitString| false,
            value: |_: &BitString| 1,
        };
        assert_eq!(optimum(&none, &mut b()).unwrap(), None);
        assert!(optsol(&none, &mut b()).unwrap().is_empty());
        assert_eq!(forcing_number(&none, &mut b()).unwrap(), Force::Infinite);
    }

    #[test]
    fn clique_number_matches_enumeration() {
        for n in 1..=6usize {
            for code in (0..1u64 << (n * (n - 1) / 2)).step_by(3) {
                let g = Graph::from_pair_code(n, code).unwrap();
                let w = clique_number(&g, &mut b()).unwrap();
                assert!(!cliques_of_size(&g, w, &mut b()).unwrap().is_empty());
                assert!(cliques_of_size(&g, w + 1, &mut b()).unwrap().is_empty());
            }
        }
    }

    fn random_set(l: usize, seed: u64, size: usize) -> SolutionSet {
        let mut x = seed | 1;
        let mut u = SolutionSet::new(l);
        for _ in 0..size {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            u.insert(BitString::from_u64(l, x & ((1 << l) - 1))).unwrap();
        }
        u
    }

    proptest! {
        #[test]
        fn force_matches_brute_force(l in 1usize..=10, size in 0usize..12, seed in any::<u64>()) {
            let u = random_set(l, seed, size);
            prop_assert_eq!(force_set(&u), brute_force(&u));
        }

        #[test]
        fn force_zero_iff_singleton(l in 1usize..=10, size in 0usize..6, seed in any::<u64>()) {
            let u = random_set(l, seed, size);
            prop_assert_eq!(force_set(&u) == Force::Finite(0), u.len() == 1);
        }

        #[test]
        fn growing_a_singleton_raises_force(l in 1usize..=10, a in any::<u64>(), c in any::<u64>()) {
            let mask = (1u64 << l) - 1;
            let (a, c) = (a & mask, c & mask);
            prop_assume!(a != c);
            let mut u = SolutionSet::new(l);
            u.insert(BitString::from_u64(l, a)).unwrap();
            prop_assert_eq!(force_set(&u), Force::Finite(0));
            u.insert(BitString::from_u64(l, c)).unwrap();
            prop_assert!(force_set(&u) > Force::Finite(0));
        }

        #[test]
        fn witness_isolates_one_member(l in 1usize..=10, size in 1usize..12, seed in any::<u64>()) {
            let u = random_set(l, seed, size);
            let (f, w) = force_set_with_witness(&u);
            let w: Vec<usize> = w.unwrap().into_iter().map(|p| p - 1).collect();
            prop_assert_eq!(f, Force::Finite(w.len()));
            prop_assert_eq!(u.iter().filter(|z| z.covers(&w)).count(), 1);
        }
    }
}
