//! The NP-optimization framework: force, F_π, UO_π and the reductions
//! between ω, τ and γ.

use std::collections::BTreeSet;

use forcing_core::forcing::forcing_chromatic_number;
use forcing_core::graph::complement;
use forcing_core::npopt::{
    chi_encoding, dtt_decomposition_check, force_set_with_witness, forcing_number,
    gamma_encoding, omega_encoding, optsol, tau_encoding, uo_membership, BitString, Force,
    NpOptProblem, SolutionSet,
};
use forcing_core::reductions::{gamma_plus_one, omega_plus_one, reduction_a, reduction_b};
use forcing_core::{Budget, Graph, Result};

use super::{all_graphs, g6};
use crate::enumerate::GraphFilter;
use crate::lcg::Lcg;
use crate::registry::{ensure, Ctx, Lemma, Outcome};

type Check = fn(&dyn NpOptProblem, &mut Budget) -> Result<Option<String>>;

/// Run `check` on the ω, γ and τ encodings of `g`; the first complaint,
/// prefixed by the problem name, fails the instance.
fn for_each_problem(g: &Graph, b: &mut Budget, check: Check) -> Result<Outcome> {
    let problems: [(&str, Box<dyn NpOptProblem + '_>); 3] = [
        ("ω", Box::new(omega_encoding(g)?)),
        ("γ", Box::new(gamma_encoding(g)?)),
        ("τ", Box::new(tau_encoding(g)?)),
    ];
    for (name, pi) in &problems {
        if let Some(actual) = check(pi.as_ref(), b)? {
            return Ok(Outcome::fail(format!("{name}: identity holds"), format!("{name}: {actual}")));
        }
    }
    Ok(Outcome::Pass)
}

fn uovsf(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::all())?;
    ctx.run(&items, g6, |g, b| {
        for_each_problem(g, b, |pi, b| {
            let uo = uo_membership(pi, b)?;
            let f = forcing_number(pi, b)?;
            Ok((uo != (f == Force::Finite(0))).then(|| format!("UO is {uo}, F = {f}")))
        })
    });
    Ok(())
}

fn dtt_iff(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::all())?;
    ctx.run(&items, g6, |g, b| {
        for_each_problem(g, b, |pi, b| {
            let f = forcing_number(pi, b)?;
            for k in 0..=3 {
                let d = dtt_decomposition_check(pi, k, b)?;
                if d != f.at_most(k) {
                    return Ok(Some(format!("k = {k}: decomposition {d}, F = {f}")));
                }
            }
            Ok(None)
        })
    });
    Ok(())
}

fn chi_cross(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::all())?;
    ctx.run(&items, g6, |g, b| {
        let via = forcing_number(&chi_encoding(g)?, b)?;
        let (f, _) = forcing_chromatic_number(g, b)?;
        Ok(Outcome::expect_eq(Force::Finite(f), via))
    });
    Ok(())
}

/// A random set of strings for the force oracle.
struct Strings {
    length: usize,
    members: Vec<u64>,
}

/// Smallest `|S|` with exactly one member having ones on all of `S`, by
/// trying every `S`.
fn force_by_brute_force(u: &Strings) -> Option<usize> {
    (0..1u64 << u.length)
        .filter(|&s| u.members.iter().filter(|&&y| y & s == s).count() == 1)
        .map(|s| s.count_ones() as usize)
        .min()
}

const FORCE_INSTANCES: usize = 1000;
const FORCE_MAX_MEMBERS: u32 = 24;

/// `max_n` is the largest string length.
fn force_oracle(ctx: &mut Ctx) -> Result<()> {
    let mut rng = Lcg::new(ctx.seed);
    let max_len = ctx.max_n.max(1) as u32;
    let items: Vec<Strings> = (0..FORCE_INSTANCES)
        .map(|_| {
            let length = 1 + rng.below(max_len) as usize;
            let size = rng.below(FORCE_MAX_MEMBERS.min(1 << length) + 1);
            let set: BTreeSet<u64> = (0..size).map(|_| rng.bits(length as u32)).collect();
            Strings {
                length,
                members: set.into_iter().collect(),
            }
        })
        .collect();
    ctx.run(
        &items,
        |u| {
            let strs: Vec<String> = u
                .members
                .iter()
                .map(|&y| BitString::from_u64(u.length, y).to_string())
                .collect();
            format!("l={} {{{}}}", u.length, strs.join(","))
        },
        |u, _| {
            let set = SolutionSet::from_members(
                u.length,
                u.members.iter().map(|&y| BitString::from_u64(u.length, y)),
            )?;
            let (force, witness) = force_set_with_witness(&set);
            let want = force_by_brute_force(u).map_or(Force::Infinite, Force::Finite);
            ensure!(force == want, want, force);
            ensure!(
                (set.len() == 1) == (force == Force::Finite(0)),
                "F = 0 iff singleton",
                format!("|U| = {}, F = {force}", set.len())
            );
            if let Some(w) = witness {
                let hits = set.iter().filter(|y| w.iter().all(|&p| y.get(p - 1))).count();
                ensure!(hits == 1, "witness isolates one string", format!("{hits} strings"));
            }
            Ok(Outcome::Pass)
        },
    );
    Ok(())
}

fn uotau(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::all())?;
    ctx.run(&items, g6, |g, b| {
        let omega = uo_membership(&omega_encoding(g)?, b)?;
        let co = complement(g);
        let tau = uo_membership(&tau_encoding(&co)?, b)?;
        Ok(Outcome::expect_eq(omega, tau))
    });
    Ok(())
}

fn set_of(s: &SolutionSet, offset: usize) -> BTreeSet<Vec<usize>> {
    s.iter()
        .map(|y| y.ones().into_iter().map(|v| v - offset).collect())
        .collect()
}

fn reduction_ab(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::with_edges())?;
    ctx.run(&items, g6, |g, b| {
        let covers = set_of(&optsol(&tau_encoding(g)?, b)?, 0);
        let sc = reduction_a(g)?;
        let set_covers: BTreeSet<Vec<usize>> = sc.optimal_covers(b)?.into_iter().collect();
        ensure!(
            covers == set_covers,
            format!("set covers {covers:?}"),
            format!("set covers {set_covers:?}")
        );
        let h = reduction_b(&sc)?;
        let dominating = optsol(&gamma_encoding(&h)?, b)?;
        let offset = 2 * sc.m;
        let inside = dominating.iter().all(|y| y.ones().iter().all(|&v| v >= offset));
        ensure!(inside, "dominating sets within subset vertices", "a dominating set uses an element vertex");
        let doms = set_of(&dominating, offset);
        ensure!(
            doms == set_covers,
            format!("dominating sets {set_covers:?}"),
            format!("dominating sets {doms:?}")
        );
        Ok(Outcome::Pass)
    });
    Ok(())
}

fn finite(f: Force) -> Result<usize> {
    f.finite()
        .ok_or_else(|| forcing_core::Error::Contract("optimal solutions exist".into()))
}

fn plus1_omega(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::all())?;
    ctx.run(&items, g6, |g, b| {
        let f = finite(forcing_number(&omega_encoding(g)?, b)?)?;
        let h = omega_plus_one(g)?;
        let fh = finite(forcing_number(&omega_encoding(&h)?, b)?)?;
        Ok(Outcome::expect_eq(f + 1, fh))
    });
    Ok(())
}

fn plus1_gamma(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::all())?;
    ctx.run(&items, g6, |g, b| {
        let f = finite(forcing_number(&gamma_encoding(g)?, b)?)?;
        let h = gamma_plus_one(g)?;
        let fh = finite(forcing_number(&gamma_encoding(&h)?, b)?)?;
        Ok(Outcome::expect_eq(f + 1, fh))
    });
    Ok(())
}

pub(crate) const UOVSF: Lemma = Lemma {
    id: "uovsf",
    statement: "x ∈ UO_π iff F_π(x) = 0, for π = ω, γ, τ",
    default_max_n: 5,
    limit_max_n: 6,
    run: uovsf,
};

pub(crate) const DTT_IFF: Lemma = Lemma {
    id: "dtt_iff",
    statement: "F_π ≤ k iff some m has F^m_π ≤ k on the right side of the optimum, π = ω, γ, τ, k ≤ 3",
    default_max_n: 5,
    limit_max_n: 6,
    run: dtt_iff,
};

pub(crate) const CHI_ENCODING: Lemma = Lemma {
    id: "chi_encoding",
    statement: "F over the one-hot coloring encoding equals the forcing chromatic number",
    default_max_n: 5,
    limit_max_n: 5,
    run: chi_cross,
};

pub(crate) const FORCE_SET_ORACLE: Lemma = Lemma {
    id: "force_set_oracle",
    statement: "force(U) matches exhaustive search on 1000 random sets of strings of length ≤ max_n",
    default_max_n: 12,
    limit_max_n: 16,
    run: force_oracle,
};

pub(crate) const UOTAU: Lemma = Lemma {
    id: "uotau",
    statement: "G ∈ UO_ω iff the complement of G is in UO_τ",
    default_max_n: 5,
    limit_max_n: 6,
    run: uotau,
};

pub(crate) const REDUCTION_AB: Lemma = Lemma {
    id: "reduction_ab",
    statement: "optimal vertex covers, optimal set covers after A, and optimal dominating sets after B coincide",
    default_max_n: 5,
    limit_max_n: 6,
    run: reduction_ab,
};

pub(crate) const PLUS1_OMEGA: Lemma = Lemma {
    id: "plus1_omega",
    statement: "F_ω(H) = F_ω(G)+1 for the two-apex gadget",
    default_max_n: 5,
    limit_max_n: 6,
    run: plus1_omega,
};

pub(crate) const PLUS1_GAMMA: Lemma = Lemma {
    id: "plus1_gamma",
    statement: "F_γ(G+K2) = F_γ(G)+1",
    default_max_n: 5,
    limit_max_n: 6,
    run: plus1_gamma,
};
