use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use serde_json::{json, Value};

use forcing_core::cnf::{emit_dimacs_cnf, CnfFormula};
use forcing_core::coloring::{chromatic_number, count_partitions, find_coloring};
use forcing_core::forcing::{forcing_chromatic_number, ForcingOracle};
use forcing_core::graph::complement;
use forcing_core::io::emit_graph6;
use forcing_core::latin::{
    count_completions, is_minimal, is_uniquely_completable, rook_graph, smallest_forcing_size,
};
use forcing_core::npopt::{
    force_set_with_witness, gamma_encoding, omega_encoding, optsol, tau_encoding, NpOptProblem,
};
use forcing_core::reductions::{self, SetCoverInstance};
use forcing_core::{Budget, Graph};
use forcing_harness::{lemma, lemmas, summary_table, HarnessError, Options};

use crate::{input, Failure, Invariant, Output, OutputFormat, Reduction, RunConfig};

fn name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn json_line(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize") + "\n"
}

fn ok(text: String) -> Result<Output, Failure> {
    Ok(Output { text, code: 0 })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("core types serialize")
}

/// Value and certificate (or null) of one invariant.
fn evaluate(g: &Graph, inv: Invariant, budget: &mut Budget) -> Result<(Value, Value), Failure> {
    Ok(match inv {
        Invariant::Chi => {
            let chi = chromatic_number(g, budget)?;
            let c = find_coloring(g, chi, budget)?.expect("χ colors suffice");
            (json!(chi), to_value(&c))
        }
        Invariant::Theta => (json!(count_partitions(g, budget)?), Value::Null),
        Invariant::Fchi => {
            let (f, cert) = forcing_chromatic_number(g, budget)?;
            (json!(f), to_value(&cert.to_json()))
        }
        Invariant::Ffchi => {
            let oracle = ForcingOracle::new(g, budget)?;
            (json!(oracle.max_minimal_forcing(g.n(), budget)?), Value::Null)
        }
        Invariant::Fomega => problem_forcing(&omega_encoding(g)?, budget)?,
        Invariant::Fgamma => problem_forcing(&gamma_encoding(g)?, budget)?,
        Invariant::Ftau => problem_forcing(&tau_encoding(g)?, budget)?,
    })
}

/// `F_π` with the isolating positions (1-based) and the solution they isolate.
fn problem_forcing(pi: &dyn NpOptProblem, budget: &mut Budget) -> Result<(Value, Value), Failure> {
    let u = optsol(pi, budget)?;
    let (force, witness) = force_set_with_witness(&u);
    let cert = match witness {
        Some(w) => {
            let y = u
                .iter()
                .find(|y| w.iter().all(|&p| y.get(p - 1)))
                .expect("the witness isolates a member");
            json!({"positions": w, "solution": y.to_string(), "optimum": pi.value(y)})
        }
        None => Value::Null,
    };
    Ok((to_value(&force), cert))
}

pub fn compute(cfg: &RunConfig, inv: Invariant, file: Option<&Path>) -> Result<Output, Failure> {
    let text = input::read_text(file)?;
    let mut out = String::new();
    for g in input::graphs(&text, cfg.format)? {
        let start = Instant::now();
        let mut budget = Budget::new(cfg.budget);
        let (value, certificate) = evaluate(&g, inv, &mut budget)?;
        let mut stats = json!({"nodes": budget.used()});
        if cfg.timing {
            stats["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
        }
        let g6 = emit_graph6(&g);
        match cfg.output_format.unwrap_or(OutputFormat::Json) {
            OutputFormat::Json => out += &json_line(&json!({
                "invariant": name(&inv),
                "graph": g6,
                "value": value,
                "certificate": certificate,
                "stats": stats,
            })),
            OutputFormat::Text => {
                out += &format!("{g6} {} = {value}", name(&inv));
                if !certificate.is_null() {
                    out += &format!(" certificate {certificate}");
                }
                out += &format!(" nodes {}", budget.used());
                if let Some(ms) = stats.get("elapsed_ms") {
                    out += &format!(" elapsed_ms {ms}");
                }
                out.push('\n');
            }
        }
    }
    ok(out)
}

enum Instance {
    Graph(Graph),
    Cnf(CnfFormula),
    SetCover(SetCoverInstance),
}

impl Instance {
    fn text(&self) -> String {
        match self {
            Instance::Graph(g) => emit_graph6(g) + "\n",
            Instance::Cnf(f) => emit_dimacs_cnf(f),
            Instance::SetCover(sc) => json_line(&to_value(sc)),
        }
    }

    fn json(&self) -> Value {
        match self {
            Instance::Graph(g) => json!({"graph6": emit_graph6(g)}),
            Instance::Cnf(f) => json!({"dimacs": emit_dimacs_cnf(f)}),
            Instance::SetCover(sc) => json!({"set_cover": sc}),
        }
    }
}

pub fn reduce(
    cfg: &RunConfig,
    r: Reduction,
    file: Option<&Path>,
    m: Option<usize>,
    with: Option<&Path>,
) -> Result<Output, Failure> {
    if m.is_some() && r != Reduction::PendantPairs {
        return Err(Failure::Usage("--m only applies to pendant-pairs".into()));
    }
    if with.is_some() && r != Reduction::CnfAnd {
        return Err(Failure::Usage("--with only applies to cnf-and".into()));
    }
    let text = input::read_text(file)?;
    let fmt = cfg.format;
    let mut budget = Budget::new(cfg.budget);
    let graph = || input::graph(&text, fmt);
    let cnf = || input::cnf(&text, fmt);
    let mut extra = None;
    let result = match r {
        Reduction::AddIsolatedVertex => Instance::Graph(reductions::add_isolated_vertex(&graph()?)?),
        Reduction::PendantPairs => {
            let m = m.ok_or_else(|| Failure::Usage("pendant-pairs needs --m".into()))?;
            Instance::Graph(reductions::attach_pendant_pairs(&graph()?, m, &mut budget)?)
        }
        Reduction::TimesK3 => Instance::Graph(reductions::times_k3(&graph()?, &mut budget)?),
        Reduction::F2Transform => {
            let t = reductions::theorem_f2_transform(&graph()?)?;
            extra = Some(to_value(&t.coloring));
            Instance::Graph(t.graph)
        }
        Reduction::SatTo3sat => Instance::Cnf(reductions::sat_to_3sat(&cnf()?)?),
        Reduction::ImplicantGraph => Instance::Graph(reductions::implicant_graph(&cnf()?)?),
        Reduction::U3satToUoOmega => Instance::Graph(reductions::u3sat_to_uo_omega(&cnf()?)?),
        Reduction::Complement => Instance::Graph(complement(&graph()?)),
        Reduction::ReductionA => Instance::SetCover(reductions::reduction_a(&graph()?)?),
        Reduction::ReductionB => {
            Instance::Graph(reductions::reduction_b(&input::set_cover(&text, fmt)?)?)
        }
        Reduction::OmegaPlusOne => Instance::Graph(reductions::omega_plus_one(&graph()?)?),
        Reduction::GammaPlusOne => Instance::Graph(reductions::gamma_plus_one(&graph()?)?),
        Reduction::CnfAnd => {
            let second = with.ok_or_else(|| Failure::Usage("cnf-and needs --with".into()))?;
            let g = input::cnf(&input::read_text(Some(second))?, fmt)?;
            Instance::Cnf(reductions::cnf_and(&cnf()?, &g)?)
        }
    };
    match cfg.output_format {
        None | Some(OutputFormat::Text) => ok(result.text()),
        Some(OutputFormat::Json) => {
            let mut v = result.json();
            v["reduction"] = json!(name(&r));
            if let Some(c) = extra {
                v["coloring"] = c;
            }
            ok(json_line(&v))
        }
    }
}

pub fn verify(cfg: &RunConfig, ids: &[String], max_n: Option<usize>) -> Result<Output, Failure> {
    let mut chosen = Vec::new();
    for id in ids {
        if id == "all" {
            chosen.extend(lemmas().iter().map(|l| l.id));
        } else {
            let l = lemma(id).ok_or_else(|| Failure::Usage(format!("unknown lemma `{id}`")))?;
            chosen.push(l.id);
        }
    }
    let opts = Options {
        workers: cfg.workers,
        budget: cfg.budget,
    };
    let mut reports = Vec::new();
    for id in chosen {
        let r = forcing_harness::verify(id, max_n, cfg.seed, &opts).map_err(|e| match e {
            HarnessError::Core(e) => Failure::Core(e),
            other => Failure::Usage(other.to_string()),
        })?;
        reports.push(r);
    }
    let code = if reports.iter().any(|r| !r.counterexamples.is_empty()) {
        1
    } else if reports.iter().any(|r| r.budget_exhausted) {
        3
    } else {
        0
    };
    let text = match cfg.output_format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => reports.iter().map(|r| r.to_json_line(cfg.timing) + "\n").collect(),
        OutputFormat::Text => summary_table(&reports),
    };
    Ok(Output { text, code })
}

fn emit(cfg: &RunConfig, v: Value) -> String {
    match cfg.output_format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => json_line(&v),
        OutputFormat::Text => {
            let obj = v.as_object().expect("latin reports are objects");
            obj.iter().map(|(k, x)| format!("{k} {x}\n")).collect()
        }
    }
}

pub fn latin_count(cfg: &RunConfig, file: Option<&Path>) -> Result<Output, Failure> {
    let p = input::latin(&input::read_text(file)?, cfg.format)?;
    let mut budget = Budget::new(cfg.budget);
    let count = count_completions(&p, None, &mut budget)?;
    ok(emit(cfg, json!({"order": p.order(), "filled": p.filled(), "completions": count})))
}

pub fn latin_critical(cfg: &RunConfig, file: Option<&Path>) -> Result<Output, Failure> {
    let p = input::latin(&input::read_text(file)?, cfg.format)?;
    let mut budget = Budget::new(cfg.budget);
    let unique = is_uniquely_completable(&p, &mut budget)?;
    let minimal = is_minimal(&p, &mut budget)?;
    let text = emit(
        cfg,
        json!({"order": p.order(), "filled": p.filled(), "uniquely_completable": unique, "minimal": minimal}),
    );
    Ok(Output {
        text,
        code: if unique { 0 } else { 1 },
    })
}

pub fn latin_to_coloring(cfg: &RunConfig, file: Option<&Path>) -> Result<Output, Failure> {
    let p = input::latin(&input::read_text(file)?, cfg.format)?;
    let g = rook_graph(p.order())?;
    ok(emit(cfg, json!({"graph": emit_graph6(&g), "coloring": p.to_coloring().to_json()})))
}

pub fn latin_forcing_size(cfg: &RunConfig, n: usize) -> Result<Output, Failure> {
    let mut budget = Budget::new(cfg.budget);
    let f = smallest_forcing_size(n, &mut budget)?;
    ok(emit(cfg, json!({"order": n, "smallest_forcing_size": f})))
}
