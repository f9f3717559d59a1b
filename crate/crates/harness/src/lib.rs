//! Exhaustive and sampled verification of the forcing-number lemmas over
//! small instance families.

mod enumerate;
mod lcg;
mod lemmas;
mod registry;
mod report;

pub use enumerate::{
    canonical_code, enumerate_graphs, graphs_of_order, unlabeled_graphs, GraphFilter,
    MAX_ENUMERATION_ORDER,
};
pub use lcg::{Lcg, INCREMENT, MULTIPLIER};
pub use registry::{lemma, lemmas, verify, verify_all, HarnessError, Lemma, Options};
pub use report::{summary_table, Counterexample, LemmaReport};
