//! Reading instances from files or stdin in the selected format.

use std::fs;
use std::io::Read;
use std::path::Path;

use forcing_core::cnf::{parse_dimacs_cnf, CnfFormula};
use forcing_core::graph::EdgeList;
use forcing_core::io::{parse_dimacs_col, parse_graph6};
use forcing_core::latin::PartialLatinSquare;
use forcing_core::reductions::SetCoverInstance;
use forcing_core::Graph;

use crate::{Failure, InputFormat};

pub fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn mismatch(kind: &str, format: InputFormat) -> Failure {
    Failure::Usage(format!("{kind} input cannot be read as {}", format.name()))
}

/// One graph per graph6 line, or a single DIMACS / JSON graph.
pub fn graphs(text: &str, format: Option<InputFormat>) -> Result<Vec<Graph>, Failure> {
    match format.unwrap_or(InputFormat::Graph6) {
        InputFormat::Graph6 => {
            let gs = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(parse_graph6)
                .collect::<Result<Vec<_>, _>>()?;
            if gs.is_empty() {
                return Err(Failure::Usage("no graph in input".into()));
            }
            Ok(gs)
        }
        InputFormat::Dimacs => Ok(vec![parse_dimacs_col(text)?]),
        InputFormat::Json => {
            let e: EdgeList = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("graph JSON: {e}")))?;
            Ok(vec![Graph::try_from(e)?])
        }
        f @ InputFormat::Text => Err(mismatch("graph", f)),
    }
}

pub fn graph(text: &str, format: Option<InputFormat>) -> Result<Graph, Failure> {
    let mut gs = graphs(text, format)?;
    if gs.len() > 1 {
        return Err(Failure::Usage("expected a single graph".into()));
    }
    Ok(gs.remove(0))
}

pub fn cnf(text: &str, format: Option<InputFormat>) -> Result<CnfFormula, Failure> {
    match format.unwrap_or(InputFormat::Dimacs) {
        InputFormat::Dimacs => Ok(parse_dimacs_cnf(text)?),
        f => Err(mismatch("CNF", f)),
    }
}

pub fn set_cover(text: &str, format: Option<InputFormat>) -> Result<SetCoverInstance, Failure> {
    match format.unwrap_or(InputFormat::Json) {
        InputFormat::Json => {
            let sc: SetCoverInstance =
                serde_json::from_str(text).map_err(|e| Failure::Usage(format!("set cover JSON: {e}")))?;
            sc.validate()?;
            Ok(sc)
        }
        f => Err(mismatch("set cover", f)),
    }
}

/// JSON array of rows, or a whitespace grid; without `--format` the first
/// non-blank character decides.
pub fn latin(text: &str, format: Option<InputFormat>) -> Result<PartialLatinSquare, Failure> {
    let format = format.unwrap_or(if text.trim_start().starts_with('[') {
        InputFormat::Json
    } else {
        InputFormat::Text
    });
    match format {
        InputFormat::Json => {
            serde_json::from_str(text).map_err(|e| Failure::Usage(format!("Latin square JSON: {e}")))
        }
        InputFormat::Text => Ok(text.parse()?),
        f => Err(mismatch("Latin square", f)),
    }
}
