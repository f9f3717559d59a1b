//! Graph colorings, forcing sets of colorings, and forcing numbers of
//! NP optimization problems.

pub mod cnf;
pub mod coloring;
pub mod error;
pub mod forcing;
pub mod graph;
pub mod io;
pub mod latin;
pub mod npopt;
pub mod reductions;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use search::Budget;
