//! CNF lemmas: implicant graphs, the unique-optimum clique reduction,
//! parsimonious 3CNF conversion and conjunction.

use std::collections::BTreeSet;

use forcing_core::cnf::{emit_dimacs_cnf, CnfFormula};
use forcing_core::npopt::{clique_number, cliques_of_size, omega_encoding, uo_membership};
use forcing_core::reductions::{
    assignment_clique, cnf_and, implicant_graph_labeled, sat_to_3sat, u3sat_to_uo_omega,
};
use forcing_core::{Budget, Result};

use crate::lcg::Lcg;
use crate::registry::{Ctx, Lemma, Outcome};

/// Clauses over variables `1..=v` with distinct variables and at most
/// three literals, by variable set and then sign pattern.
fn narrow_clauses(v: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for vars in 1u32..1 << v {
        if vars.count_ones() > 3 {
            continue;
        }
        let vs: Vec<i32> = (0..v as i32).filter(|i| vars >> i & 1 == 1).map(|i| i + 1).collect();
        for signs in 0u32..1 << vs.len() {
            out.push(
                vs.iter()
                    .enumerate()
                    .map(|(k, &x)| if signs >> k & 1 == 1 { -x } else { x })
                    .collect(),
            );
        }
    }
    out
}

/// Every nonempty set of literals over `1..=v`, complementary pairs
/// included, so clauses can be longer than three.
fn wide_clauses(v: usize) -> Vec<Vec<i32>> {
    (1u32..1 << (2 * v))
        .map(|mask| {
            (0..2 * v as i32)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| if i % 2 == 0 { i / 2 + 1 } else { -(i / 2 + 1) })
                .collect()
        })
        .collect()
}

/// A batch of formulas: all clause sequences over `types` of length
/// `1..=max_clauses` whose first clause is `types[first]` and whose
/// indices never decrease (strictly increase unless `repeat`).
struct Batch<'a> {
    vars: usize,
    types: &'a [Vec<i32>],
    first: usize,
    max_clauses: usize,
    repeat: bool,
}

impl Batch<'_> {
    fn sweep<F>(&self, mut visit: F) -> Result<Outcome>
    where
        F: FnMut(&CnfFormula) -> Result<Option<(String, String)>>,
    {
        let mut idx = vec![self.first];
        let mut count = 0u64;
        loop {
            let f = CnfFormula::new(self.vars, idx.iter().map(|&i| self.types[i].clone()).collect())?;
            if let Some((expected, actual)) = visit(&f)? {
                return Ok(Outcome::fail(expected, format!("{} on {}", actual, inline(&f))));
            }
            count += 1;
            if !self.advance(&mut idx) {
                return Ok(Outcome::PassMany(count));
            }
        }
    }

    /// Next index sequence in depth-first order, keeping `idx[0]` fixed.
    fn advance(&self, idx: &mut Vec<usize>) -> bool {
        let n = self.types.len();
        let step = usize::from(!self.repeat);
        let last = *idx.last().unwrap();
        if idx.len() < self.max_clauses && last + step < n {
            idx.push(last + step);
            return true;
        }
        while idx.len() > 1 {
            let top = idx.pop().unwrap() + 1;
            if top < n {
                idx.push(top);
                return true;
            }
        }
        false
    }
}

fn inline(f: &CnfFormula) -> String {
    emit_dimacs_cnf(f).trim_end().replace('\n', " | ")
}

/// Every `(vars, first clause)` batch for `1..=max_vars` variables.
fn batches(max_vars: usize, wide: bool) -> Vec<(usize, Vec<Vec<i32>>, usize)> {
    let mut out = Vec::new();
    for v in 1..=max_vars {
        let types = if wide { wide_clauses(v) } else { narrow_clauses(v) };
        for first in 0..types.len() {
            out.push((v, types.clone(), first));
        }
    }
    out
}

fn batch_name(item: &(usize, Vec<Vec<i32>>, usize)) -> String {
    format!("vars={} first clause {:?}", item.0, item.1[item.2])
}

fn gs3toom_check(f: &CnfFormula, b: &mut Budget) -> Result<Option<(String, String)>> {
    let (g, verts) = implicant_graph_labeled(f)?;
    let omega = clique_number(&g, b)?;
    let sigma = f.max_satisfiable()?;
    if omega != sigma {
        return Ok(Some((format!("ω = σ = {sigma}"), format!("ω = {omega}"))));
    }
    if !f.every_variable_occurs() {
        return Ok(None);
    }
    let maximum: BTreeSet<Vec<usize>> = cliques_of_size(&g, omega, b)?
        .into_iter()
        .map(|c| c.to_vec())
        .collect();
    let optimal = f.optimal_assignments()?;
    let images: BTreeSet<Vec<usize>> = optimal
        .iter()
        .map(|&a| {
            let mut c = assignment_clique(&verts, f, a);
            c.sort_unstable();
            c
        })
        .collect();
    if images.len() != optimal.len() || images != maximum {
        return Ok(Some((
            format!("{} maximum cliques, one per optimal assignment", maximum.len()),
            format!("{} optimal assignments with {} distinct images", optimal.len(), images.len()),
        )));
    }
    Ok(None)
}

/// `max_n` bounds both the variables and the clauses.
fn gs3toom(ctx: &mut Ctx) -> Result<()> {
    let max = ctx.max_n;
    let items = batches(max, false);
    ctx.run(&items, batch_name, |(v, types, first), b| {
        let batch = Batch {
            vars: *v,
            types,
            first: *first,
            max_clauses: max,
            repeat: true,
        };
        batch.sweep(|f| gs3toom_check(f, b))
    });
    Ok(())
}

fn uoom(ctx: &mut Ctx) -> Result<()> {
    let max = ctx.max_n;
    let items = batches(max, false);
    ctx.run(&items, batch_name, |(v, types, first), b| {
        let batch = Batch {
            vars: *v,
            types,
            first: *first,
            max_clauses: max,
            repeat: true,
        };
        batch.sweep(|f| {
            if f.num_clauses() < 2 || !f.every_variable_occurs() {
                return Ok(None);
            }
            let unique = f.count_models()? == 1;
            let h = u3sat_to_uo_omega(f)?;
            let uo = uo_membership(&omega_encoding(&h)?, b)?;
            Ok((unique != uo).then(|| (format!("UO_ω is {unique}"), format!("UO_ω is {uo}"))))
        })
    });
    Ok(())
}

fn sat_to_3sat_check(f: &CnfFormula) -> Result<Option<(String, String)>> {
    let g = sat_to_3sat(f)?;
    if !g.is_3cnf() {
        return Ok(Some(("3CNF output".into(), "a clause longer than 3".into())));
    }
    let (want, got) = (f.count_models()?, g.count_models()?);
    Ok((want != got).then(|| (format!("{want} models"), format!("{got} models"))))
}

const WIDE_SAMPLES: usize = 200;

/// All formulas with at most `max_n` variables and `max_n` distinct
/// clauses of any width, then random formulas with 4 to 6 variables and
/// clauses of 4 to 6 literals.
fn sat_to_3sat_lemma(ctx: &mut Ctx) -> Result<()> {
    let max = ctx.max_n;
    let items = batches(max, true);
    ctx.run(&items, batch_name, |(v, types, first), _| {
        let batch = Batch {
            vars: *v,
            types,
            first: *first,
            max_clauses: max,
            repeat: false,
        };
        batch.sweep(sat_to_3sat_check)
    });
    let mut rng = Lcg::new(ctx.seed);
    let mut random = Vec::with_capacity(WIDE_SAMPLES);
    for _ in 0..WIDE_SAMPLES {
        let vars = 4 + rng.below(3) as usize;
        let clauses = 1 + rng.below(3) as usize;
        let cs = (0..clauses)
            .map(|_| {
                let width = 4 + rng.below(vars as u32 - 3) as usize;
                let mut pool: Vec<i32> = (1..=vars as i32).collect();
                (0..width)
                    .map(|_| {
                        let x = pool.remove(rng.below(pool.len() as u32) as usize);
                        if rng.below(2) == 1 {
                            -x
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        random.push(CnfFormula::new(vars, cs)?);
    }
    ctx.run(&random, inline, |f, _| {
        Ok(match sat_to_3sat_check(f)? {
            Some((e, a)) => Outcome::fail(e, a),
            None => Outcome::Pass,
        })
    });
    Ok(())
}

/// All pairs from the narrow family with at most `max_n` variables and
/// `max_n` distinct clauses.
fn usand(ctx: &mut Ctx) -> Result<()> {
    let max = ctx.max_n;
    let mut family = Vec::new();
    for (v, types, first) in batches(max, false) {
        let batch = Batch {
            vars: v,
            types: &types,
            first,
            max_clauses: max,
            repeat: false,
        };
        batch.sweep(|f| {
            family.push(f.clone());
            Ok(None)
        })?;
    }
    let counts: Vec<u64> = family.iter().map(|f| f.count_models()).collect::<Result<_>>()?;
    let items: Vec<usize> = (0..family.len()).collect();
    ctx.run(
        &items,
        |&i| inline(&family[i]),
        |&i, _| {
            for (j, g) in family.iter().enumerate() {
                let got = cnf_and(&family[i], g)?.count_models()?;
                let want = counts[i] * counts[j];
                if got != want {
                    return Ok(Outcome::fail(
                        format!("{want} models"),
                        format!("{got} models with {}", inline(g)),
                    ));
                }
            }
            Ok(Outcome::PassMany(family.len() as u64))
        },
    );
    Ok(())
}

pub(crate) const GS3TOOM: Lemma = Lemma {
    id: "gs3toom",
    statement: "ω(implicant graph) = σ3, and maximum cliques match optimal assignments when every variable occurs",
    default_max_n: 4,
    limit_max_n: 4,
    run: gs3toom,
};

pub(crate) const UOOM: Lemma = Lemma {
    id: "uoom",
    statement: "a 3CNF with m ≥ 2 clauses has one model iff G + 2K_(m−1) has one maximum clique",
    default_max_n: 4,
    limit_max_n: 4,
    run: uoom,
};

pub(crate) const SAT_TO_3SAT: Lemma = Lemma {
    id: "sat_to_3sat",
    statement: "the 3CNF conversion keeps the number of models",
    default_max_n: 3,
    limit_max_n: 3,
    run: sat_to_3sat_lemma,
};

pub(crate) const USAND: Lemma = Lemma {
    id: "usand",
    statement: "model counts multiply under conjunction on disjoint variables",
    default_max_n: 3,
    limit_max_n: 3,
    run: usand,
};
