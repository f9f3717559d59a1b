//! CNF formulas, truth assignments, brute-force model counting and the
//! DIMACS `cnf` format.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Brute-force counting is limited to this many variables.
pub const MAX_COUNT_VARS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        if num_vars > 64 {
            return Err(Error::Capacity {
                what: "formula variables",
                requested: num_vars,
                limit: 64,
            });
        }
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidParameter(format!("clause {} is empty", i + 1)));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(Error::InvalidParameter(format!(
                    "literal {l} in clause {} outside 1..={num_vars}",
                    i + 1
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_3cnf(&self) -> bool {
        self.clauses.iter().all(|c| c.len() <= 3)
    }

    /// Whether each of `1..=num_vars` occurs in some clause.
    pub fn every_variable_occurs(&self) -> bool {
        let mut seen = 0u64;
        for l in self.clauses.iter().flatten() {
            seen |= 1 << (l.unsigned_abs() - 1);
        }
        seen.count_ones() as usize == self.num_vars
    }

    fn check_countable(&self) -> Result<()> {
        if self.num_vars > MAX_COUNT_VARS {
            return Err(Error::Capacity {
                what: "brute-force variables",
                requested: self.num_vars,
                limit: MAX_COUNT_VARS,
            });
        }
        Ok(())
    }

    pub fn satisfied_clauses(&self, a: Assignment) -> usize {
        self.clauses.iter().filter(|c| clause_satisfied(c, a)).count()
    }

    pub fn is_satisfied(&self, a: Assignment) -> bool {
        self.clauses.iter().all(|c| clause_satisfied(c, a))
    }

    pub fn assignments(&self) -> impl Iterator<Item = Assignment> {
        let w = self.num_vars;
        (0..1u64 << w).map(move |bits| Assignment { width: w, bits })
    }

    pub fn count_models(&self) -> Result<u64> {
        self.check_countable()?;
        Ok(self.assignments().filter(|&a| self.is_satisfied(a)).count() as u64)
    }

    /// σ(Φ): the most clauses satisfiable at once.
    pub fn max_satisfiable(&self) -> Result<usize> {
        self.check_countable()?;
        Ok(self
            .assignments()
            .map(|a| self.satisfied_clauses(a))
            .max()
            .unwrap_or(0))
    }

    /// All assignments satisfying σ(Φ) clauses.
    pub fn optimal_assignments(&self) -> Result<Vec<Assignment>> {
        let best = self.max_satisfiable()?;
        Ok(self
            .assignments()
            .filter(|&a| self.satisfied_clauses(a) == best)
            .collect())
    }
}

pub(crate) fn clause_satisfied(c: &[i32], a: Assignment) -> bool {
    c.iter().any(|&l| a.get(l.unsigned_abs() as usize) == (l > 0))
}

/// Truth values for variables `1..=width`; variable `i` is bit `i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    width: usize,
    bits: u64,
}

impl Assignment {
    pub fn new(width: usize, bits: u64) -> Result<Self> {
        if width > 64 || (width < 64 && bits >> width != 0) {
            return Err(Error::InvalidParameter("assignment bits exceed its width".into()));
        }
        Ok(Assignment { width, bits })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, var: usize) -> bool {
        self.bits >> (var - 1) & 1 == 1
    }
}

/// Parse DIMACS `cnf`: a `p cnf vars clauses` line, then clauses as
/// 0-terminated literal lists (which may span lines), `c` comments.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let here = offset;
        offset += line.len();
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(here, "duplicate problem line"));
            }
            let tok: Vec<&str> = trimmed.split_whitespace().collect();
            if tok.len() != 4 || tok[1] != "cnf" {
                return Err(Error::parse(here, "expected `p cnf vars clauses`"));
            }
            let v = tok[2].parse().map_err(|_| Error::parse(here, "bad variable count"))?;
            let c = tok[3].parse().map_err(|_| Error::parse(here, "bad clause count"))?;
            header = Some((v, c));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(Error::parse(here, "clause before problem line"));
        };
        for t in trimmed.split_whitespace() {
            let l: i32 = t
                .parse()
                .map_err(|_| Error::parse(here, format!("bad literal `{t}`")))?;
            if l == 0 {
                if current.is_empty() {
                    return Err(Error::parse(here, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else if l.unsigned_abs() as usize > vars {
                return Err(Error::parse(here, format!("literal {l} exceeds {vars} variables")));
            } else {
                current.push(l);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::parse(offset, "missing problem line"))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(Error::parse(
            offset,
            format!("problem line declares {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses)
}

pub fn emit_dimacs_cnf(f: &CnfFormula) -> String {
    let mut s = String::new();
    writeln!(s, "p cnf {} {}", f.num_vars, f.clauses.len()).unwrap();
    for c in &f.clauses {
        for l in c {
            write!(s, "{l} ").unwrap();
        }
        s.push_str("0\n");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(CnfFormula::new(2, vec![vec![1, -2]]).is_ok());
        assert!(CnfFormula::new(2, vec![vec![]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![3]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![0]]).is_err());
        assert!(!CnfFormula::new(1, vec![vec![1, -1, 1, 1]]).unwrap().is_3cnf());
    }

    #[test]
    fn counting() {
        let f = CnfFormula::new(4, vec![vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(f.count_models().unwrap(), 15);
        let g = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(g.count_models().unwrap(), 0);
        assert_eq!(g.max_satisfiable().unwrap(), 1);
        assert_eq!(g.optimal_assignments().unwrap().len(), 2);
        let h = CnfFormula::new(2, vec![vec![1], vec![1, 2]]).unwrap();
        assert_eq!(h.count_models().unwrap(), 2);
        assert!(h.every_variable_occurs());
        assert!(!CnfFormula::new(3, vec![vec![1]]).unwrap().every_variable_occurs());
    }

    #[test]
    fn dimacs() {
        let f = CnfFormula::new(3, vec![vec![1, -2], vec![3], vec![-1, 2, -3]]).unwrap();
        let text = emit_dimacs_cnf(&f);
        assert_eq!(text, "p cnf 3 3\n1 -2 0\n3 0\n-1 2 -3 0\n");
        assert_eq!(parse_dimacs_cnf(&text).unwrap(), f);
        let spread = "c split clause\np cnf 2 1\n1\n-2 0\n";
        assert_eq!(
            parse_dimacs_cnf(spread).unwrap(),
            CnfFormula::new(2, vec![vec![1, -2]]).unwrap()
        );
        assert!(parse_dimacs_cnf("1 0\n").is_err());
        assert!(parse_dimacs_cnf("p cnf 1 2\n1 0\n").is_err());
        assert!(matches!(
            parse_dimacs_cnf("p cnf 1 1\n2 0\n"),
            Err(Error::Parse { offset: 10, .. })
        ));
    }

    #[test]
    fn assignments() {
        let a = Assignment::new(3, 0b101).unwrap();
        assert!(a.get(1) && !a.get(2) && a.get(3));
        assert!(Assignment::new(2, 0b100).is_err());
    }
}
