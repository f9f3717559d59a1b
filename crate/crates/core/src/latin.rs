//! Latin squares as proper `n`-colorings of the rook graph `K_n × K_n`.
//!
//! Cell `(i, j)` (0-based, row-major) is product vertex `i·n + j`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coloring::{Coloring, PartialColoring};
use crate::error::{Error, Result};
use crate::forcing::{for_each_subset, forcing_chromatic_number};
use crate::graph::{cartesian_product, complete, Graph, VertexSet};
use crate::search::Budget;

/// Largest order accepted by [`smallest_forcing_size`].
pub const MAX_FORCING_ORDER: usize = 4;

/// `K_n × K_n`.
pub fn rook_graph(n: usize) -> Result<Graph> {
    let k = complete(n)?;
    cartesian_product(&k, &k)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialLatinSquare {
    n: usize,
    /// Row-major, 0 for an empty cell.
    cells: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u32>,
}

impl PartialLatinSquare {
    pub fn empty(n: usize) -> Self {
        PartialLatinSquare {
            n,
            cells: vec![0; n * n],
        }
    }

    pub fn new(n: usize, cells: Vec<u32>) -> Result<Self> {
        if n > 8 {
            return Err(Error::Capacity {
                what: "Latin square order",
                requested: n,
                limit: 8,
            });
        }
        if cells.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "{} cells for order {n}",
                cells.len()
            )));
        }
        if let Some(&x) = cells.iter().find(|&&x| x as usize > n) {
            return Err(Error::InvalidParameter(format!("entry {x} outside 1..={n}")));
        }
        let p = PartialLatinSquare { n, cells };
        for i in 0..n {
            for j in 0..n {
                let x = p.get(i, j);
                if x == 0 {
                    continue;
                }
                let clash = (0..n).any(|k| (k != j && p.get(i, k) == x) || (k != i && p.get(k, j) == x));
                if clash {
                    return Err(Error::InvalidParameter(format!(
                        "entry {x} repeated in the row or column of cell ({i}, {j})"
                    )));
                }
            }
        }
        Ok(p)
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("rows must have length n".into()));
        }
        PartialLatinSquare::new(n, rows.concat())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.cells[i * self.n + j]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|&&x| x != 0).count()
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.cells.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn to_coloring(&self) -> PartialColoring {
        let colors = self.cells.iter().map(|&x| (x != 0).then_some(x)).collect();
        PartialColoring::new(colors, self.n as u32).expect("entries are within 1..=n")
    }

    pub fn from_coloring(n: usize, p: &PartialColoring) -> Result<Self> {
        if p.len() != n * n {
            return Err(Error::InvalidParameter("coloring size is not n²".into()));
        }
        PartialLatinSquare::new(n, (0..n * n).map(|v| p.get(v).unwrap_or(0)).collect())
    }

    /// The square with cell `cell` cleared.
    pub fn without(&self, cell: usize) -> Self {
        let mut cells = self.cells.clone();
        cells[cell] = 0;
        PartialLatinSquare { n: self.n, cells }
    }
}

impl LatinSquare {
    pub fn new(n: usize, cells: Vec<u32>) -> Result<Self> {
        let p = PartialLatinSquare::new(n, cells)?;
        if p.cells.contains(&0) {
            return Err(Error::InvalidParameter("Latin square has an empty cell".into()));
        }
        Ok(LatinSquare { n, cells: p.cells })
    }

    /// The square with `(i, j) = (i + j mod n) + 1`.
    pub fn cyclic(n: usize) -> Self {
        let cells = (0..n * n).map(|x| ((x / n + x % n) % n) as u32 + 1).collect();
        LatinSquare { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn as_partial(&self) -> PartialLatinSquare {
        PartialLatinSquare {
            n: self.n,
            cells: self.cells.clone(),
        }
    }

    pub fn to_coloring(&self) -> Coloring {
        Coloring::new(self.cells.clone(), self.n as u32).expect("entries are within 1..=n")
    }

    pub fn from_coloring(c: &Coloring) -> Result<Self> {
        let n = (c.len() as f64).sqrt() as usize;
        if n * n != c.len() {
            return Err(Error::InvalidParameter("coloring size is not a square".into()));
        }
        LatinSquare::new(n, c.colors().to_vec())
    }
}

/// Completions of `p`, found by filling cells in row-major order.
pub fn for_each_completion<F>(p: &PartialLatinSquare, budget: &mut Budget, mut visit: F) -> Result<()>
where
    F: FnMut(&[u32]) -> bool,
{
    let n = p.n;
    let mut rows = vec![0u32; n];
    let mut cols = vec![0u32; n];
    for (c, &x) in p.cells.iter().enumerate() {
        if x != 0 {
            rows[c / n] |= 1 << (x - 1);
            cols[c % n] |= 1 << (x - 1);
        }
    }
    let mut cells = p.cells.clone();
    let empties: Vec<usize> = (0..n * n).filter(|&c| cells[c] == 0).collect();

    #[allow(clippy::too_many_arguments)]
    fn rec<F: FnMut(&[u32]) -> bool>(
        k: usize,
        n: usize,
        empties: &[usize],
        cells: &mut [u32],
        rows: &mut [u32],
        cols: &mut [u32],
        budget: &mut Budget,
        visit: &mut F,
    ) -> Result<bool> {
        budget.tick()?;
        if k == empties.len() {
            return Ok(visit(cells));
        }
        let c = empties[k];
        let (i, j) = (c / n, c % n);
        let free = !(rows[i] | cols[j]) & ((1u32 << n) - 1);
        for x in 0..n {
            if free >> x & 1 == 0 {
                continue;
            }
            cells[c] = x as u32 + 1;
            rows[i] |= 1 << x;
            cols[j] |= 1 << x;
            let go = rec(k + 1, n, empties, cells, rows, cols, budget, visit)?;
            rows[i] &= !(1 << x);
            cols[j] &= !(1 << x);
            cells[c] = 0;
            if !go {
                return Ok(false);
            }
        }
        Ok(true)
    }
    rec(0, n, &empties, &mut cells, &mut rows, &mut cols, budget, &mut visit)?;
    Ok(())
}

pub fn count_completions(p: &PartialLatinSquare, cap: Option<u64>, budget: &mut Budget) -> Result<u64> {
    let cap = cap.unwrap_or(u64::MAX);
    let mut found = 0;
    if cap == 0 {
        return Ok(0);
    }
    for_each_completion(p, budget, |_| {
        found += 1;
        found < cap
    })?;
    Ok(found)
}

pub fn all_latin_squares(n: usize, budget: &mut Budget) -> Result<Vec<LatinSquare>> {
    let mut out = Vec::new();
    for_each_completion(&PartialLatinSquare::empty(n), budget, |c| {
        out.push(LatinSquare {
            n,
            cells: c.to_vec(),
        });
        true
    })?;
    Ok(out)
}

pub fn is_uniquely_completable(p: &PartialLatinSquare, budget: &mut Budget) -> Result<bool> {
    Ok(count_completions(p, Some(2), budget)? == 1)
}

/// Uniquely completable, and clearing any one filled cell loses that.
pub fn is_minimal(p: &PartialLatinSquare, budget: &mut Budget) -> Result<bool> {
    if !is_uniquely_completable(p, budget)? {
        return Ok(false);
    }
    for c in 0..p.cells.len() {
        if p.cells[c] != 0 && is_uniquely_completable(&p.without(c), budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fewest filled cells of a uniquely completable partial square of order
/// `n`, by checking cell sets against the full list of squares.
pub fn smallest_critical_size(n: usize, budget: &mut Budget) -> Result<usize> {
    check_order(n)?;
    let squares = all_latin_squares(n, budget)?;
    for k in 0..=n * n {
        let mut hit = false;
        for_each_subset(n * n, k, |cells: VertexSet| {
            let mut keys: Vec<Vec<u32>> = squares
                .iter()
                .map(|s| cells.iter().map(|c| s.cells[c]).collect())
                .collect();
            keys.sort();
            hit = (0..keys.len()).any(|i| {
                (i == 0 || keys[i - 1] != keys[i]) && (i + 1 == keys.len() || keys[i + 1] != keys[i])
            });
            !hit
        });
        if hit {
            return Ok(k);
        }
    }
    unreachable!("a full square is uniquely completable")
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_FORCING_ORDER {
        return Err(Error::Capacity {
            what: "Latin square order",
            requested: n,
            limit: MAX_FORCING_ORDER,
        });
    }
    Ok(())
}

/// F_χ(K_n × K_n), checked against [`smallest_critical_size`].
pub fn smallest_forcing_size(n: usize, budget: &mut Budget) -> Result<usize> {
    check_order(n)?;
    let (f, _) = forcing_chromatic_number(&rook_graph(n)?, budget)?;
    let direct = smallest_critical_size(n, budget)?;
    if f != direct {
        return Err(Error::Contract(format!(
            "forcing number {f} differs from smallest critical set {direct}"
        )));
    }
    Ok(f)
}

impl Serialize for PartialLatinSquare {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialLatinSquare {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        PartialLatinSquare::from_rows(&rows).map_err(D::Error::custom)
    }
}

impl Serialize for LatinSquare {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_partial().serialize(s)
    }
}

/// Plain-text grid: one row per line, entries separated by whitespace,
/// `.` or `0` for an empty cell.
impl FromStr for PartialLatinSquare {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let here = offset;
            offset += line.len();
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| match t {
                    "." => Ok(0),
                    _ => t.parse().map_err(|_| Error::parse(here, format!("bad cell `{t}`"))),
                })
                .collect::<Result<Vec<u32>>>()?;
            rows.push(row);
        }
        PartialLatinSquare::from_rows(&rows)
    }
}

impl fmt::Display for PartialLatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|&x| if x == 0 { ".".into() } else { x.to_string() })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{count_extensions, is_proper};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn correspondence() {
        let sq = LatinSquare::new(2, vec![1, 2, 2, 1]).unwrap();
        let g = rook_graph(2).unwrap();
        assert_eq!(g, Graph::from_edges(4, &[(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap());
        assert!(is_proper(&g, &sq.to_coloring()).unwrap());
        let cyc = LatinSquare::cyclic(3);
        assert!(is_proper(&rook_graph(3).unwrap(), &cyc.to_coloring()).unwrap());
        assert_eq!(LatinSquare::from_coloring(&cyc.to_coloring()).unwrap(), cyc);
        let empty = PartialLatinSquare::empty(3);
        assert!(empty.to_coloring().domain().is_empty());
        let p = PartialLatinSquare::from_rows(&[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(PartialLatinSquare::from_coloring(3, &p.to_coloring()).unwrap(), p);
    }

    #[test]
    fn validation() {
        assert!(LatinSquare::new(2, vec![1, 1, 2, 2]).is_err());
        assert!(PartialLatinSquare::new(2, vec![1, 0, 1, 0]).is_err());
        assert!(PartialLatinSquare::new(2, vec![3, 0, 0, 0]).is_err());
        assert!(LatinSquare::new(2, vec![1, 2, 2, 0]).is_err());
    }

    #[test]
    fn completions() {
        let mut budget = b();
        assert_eq!(count_completions(&PartialLatinSquare::empty(3), None, &mut budget).unwrap(), 12);
        assert_eq!(all_latin_squares(4, &mut budget).unwrap().len(), 576);
        let full = LatinSquare::cyclic(3).as_partial();
        assert_eq!(count_completions(&full, None, &mut budget).unwrap(), 1);
        let p = PartialLatinSquare::from_rows(&[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(count_completions(&p, None, &mut budget).unwrap(), 1);
        assert!(is_uniquely_completable(&p, &mut budget).unwrap());
        assert!(is_minimal(&p, &mut budget).unwrap());
        assert!(!is_minimal(&full, &mut budget).unwrap());
        let g = rook_graph(3).unwrap();
        assert_eq!(count_extensions(&g, &p.to_coloring(), None, &mut budget).unwrap(), 1);
    }

    #[test]
    fn forcing_sizes() {
        let mut budget = b();
        assert_eq!(smallest_forcing_size(2, &mut budget).unwrap(), 1);
        assert_eq!(smallest_forcing_size(3, &mut budget).unwrap(), 2);
        assert!(smallest_forcing_size(5, &mut budget).is_err());
        assert_eq!(smallest_critical_size(1, &mut budget).unwrap(), 0);
    }

    #[test]
    fn text_and_json() {
        let p: PartialLatinSquare = "1 . .\n. 2 .\n0 0 0\n".parse().unwrap();
        assert_eq!(p.filled(), 2);
        assert_eq!(p.to_string(), "1 . .\n. 2 .\n. . .\n");
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, "[[1,0,0],[0,2,0],[0,0,0]]");
        let back: PartialLatinSquare = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
        assert!("1 x\n. .\n".parse::<PartialLatinSquare>().is_err());
        assert!("1 .\n.\n".parse::<PartialLatinSquare>().is_err());
    }
}
