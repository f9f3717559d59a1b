//! Forcing chromatic numbers: golden values, bounds and the gadget lemmas.

use forcing_core::coloring::{
    chromatic_number, count_extensions, count_partitions, gk_family, in_u3col, is_colorable,
    is_proper,
};
use forcing_core::forcing::{
    forcing_chromatic_number, forcing_number_at_most, is_forcing_set, max_minimal_forcing,
    recognition_reduction, ForcingOracle,
};
use forcing_core::graph::{cartesian_product, complete, cycle, matching};
use forcing_core::reductions::{add_isolated_vertex, attach_pendant_pairs, theorem_f2_transform, times_k3};
use forcing_core::{Budget, Graph, Result, VertexSet};

use super::{all_graphs, g6, random_graphs};
use crate::enumerate::{graphs_of_order, unlabeled_graphs, GraphFilter};
use crate::lcg::Lcg;
use crate::registry::{ensure, Ctx, Lemma, Outcome};

fn factorial(k: u32) -> u64 {
    (1..=k as u64).product()
}

fn floor_log2(x: u64) -> usize {
    63 - x.leading_zeros() as usize
}

struct Golden {
    name: String,
    graph: Graph,
    forcing: usize,
    theta: Option<u64>,
}

fn golden_cases() -> Result<Vec<Golden>> {
    let k = complete;
    let case = |name: &str, graph: Graph, forcing: usize| Golden {
        name: name.to_string(),
        graph,
        forcing,
        theta: None,
    };
    let mut out = vec![
        case("C3", cycle(3)?, 2),
        case("C5", cycle(5)?, 3),
        case("C7", cycle(7)?, 4),
        case("C4xK3", cartesian_product(&cycle(4)?, &k(3)?)?, 3),
        case("C5xK3", cartesian_product(&cycle(5)?, &k(3)?)?, 3),
        case("C6xK3", cartesian_product(&cycle(6)?, &k(3)?)?, 4),
        case("C3xK2", cartesian_product(&cycle(3)?, &k(2)?)?, 2),
        case("C5xK2", cartesian_product(&cycle(5)?, &k(2)?)?, 3),
        case("K2xK4", cartesian_product(&k(2)?, &k(4)?)?, 4),
    ];
    for m in 1..=4 {
        out.push(Golden {
            name: format!("{m}K2"),
            graph: matching(m)?,
            forcing: m,
            theta: Some(1 << (m - 1)),
        });
    }
    Ok(out)
}

fn golden(ctx: &mut Ctx) -> Result<()> {
    let items = golden_cases()?;
    ctx.run(
        &items,
        |c| c.name.clone(),
        |c, b| {
            let (f, cert) = forcing_chromatic_number(&c.graph, b)?;
            ensure!(f == c.forcing, format!("F = {}", c.forcing), format!("F = {f}"));
            ensure!(cert.verify(&c.graph, b)?, "verified certificate", "certificate rejected");
            if let Some(theta) = c.theta {
                let got = count_partitions(&c.graph, b)?;
                ensure!(got == theta, format!("Θ = {theta}"), format!("Θ = {got}"));
            }
            Ok(Outcome::Pass)
        },
    );
    Ok(())
}

fn basic_bounds(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::all())?;
    ctx.run(&items, g6, |g, b| {
        let chi = chromatic_number(g, b)?;
        let theta = count_partitions(g, b)?;
        let total = factorial(chi) * theta;
        let oracle = ForcingOracle::new(g, b)?;
        if let Some(count) = oracle.coloring_count() {
            ensure!(count as u64 == total, format!("{total} colorings"), count);
        }
        let cert = oracle.forcing_number(b)?;
        let f = cert.size();
        ensure!(cert.verify(g, b)?, "verified certificate", "certificate rejected");
        ensure!(f + 1 >= chi as usize, format!("F ≥ {}", chi - 1), format!("F = {f}"));
        ensure!(
            f <= floor_log2(total),
            format!("F ≤ log2 {total}"),
            format!("F = {f}")
        );
        let greedy = oracle.greedy()?;
        ensure!(greedy.verify(g, b)?, "verified greedy certificate", "greedy certificate rejected");
        ensure!(
            greedy.size() <= floor_log2(total),
            format!("greedy size ≤ {}", floor_log2(total)),
            greedy.size()
        );
        Ok(Outcome::Pass)
    });
    Ok(())
}

fn basic_item2(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::all())?;
    ctx.run(&items, g6, |g, b| {
        if count_partitions(g, b)? != 1 {
            return Ok(Outcome::Skip);
        }
        let chi = chromatic_number(g, b)? as usize;
        let (f, _) = forcing_chromatic_number(g, b)?;
        Ok(Outcome::expect_eq(chi - 1, f))
    });
    Ok(())
}

/// `max_n` is the largest `k`.
fn gk(ctx: &mut Ctx) -> Result<()> {
    let items: Vec<usize> = (1..=ctx.max_n).collect();
    ctx.run(
        &items,
        |k| format!("G_{k}"),
        |&k, b| {
            let g = gk_family(k)?;
            ensure!(g.n() == 4 * k + 2, format!("{} vertices", 4 * k + 2), g.n());
            let chi = chromatic_number(&g, b)?;
            ensure!(chi == 3, "χ = 3", format!("χ = {chi}"));
            let (f, cert) = forcing_chromatic_number(&g, b)?;
            ensure!(f == 2, "F = 2", format!("F = {f}"));
            ensure!(cert.verify(&g, b)?, "verified certificate", "certificate rejected");
            let theta = count_partitions(&g, b)?;
            let want = (1u64 << (k - 1)) + 1;
            ensure!(theta == want, format!("Θ = {want}"), format!("Θ = {theta}"));
            Ok(Outcome::Pass)
        },
    );
    Ok(())
}

fn fcrecogn(ctx: &mut Ctx) -> Result<()> {
    let items: Vec<Graph> = all_graphs(ctx.max_n, GraphFilter::all())?
        .into_iter()
        .filter(|g| !g.has_edges() || !g.is_bipartite())
        .collect();
    ctx.run(&items, g6, |g, b| {
        let (h, u, v) = recognition_reduction(g);
        let pair = VertexSet::from_vertices(h.n(), [u, v])?;
        let forcing = is_forcing_set(&h, pair, b)?.is_some();
        Ok(Outcome::expect_eq(in_u3col(g, b)?, forcing))
    });
    Ok(())
}

fn bipartite_components(ctx: &mut Ctx) -> Result<()> {
    let items: Vec<Graph> = all_graphs(ctx.max_n, GraphFilter::with_edges())?
        .into_iter()
        .filter(|g| g.is_bipartite())
        .collect();
    ctx.run(&items, g6, |g, b| {
        let (f, _) = forcing_chromatic_number(g, b)?;
        Ok(Outcome::expect_eq(g.connected_components().len(), f))
    });
    Ok(())
}

fn red1(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::with_edges())?;
    ctx.run(&items, g6, |g, b| {
        let (f, _) = forcing_chromatic_number(g, b)?;
        let (f1, _) = forcing_chromatic_number(&add_isolated_vertex(g)?, b)?;
        Ok(Outcome::expect_eq(f + 1, f1))
    });
    Ok(())
}

const RED2_SAMPLES: usize = 8;

fn red2(ctx: &mut Ctx) -> Result<()> {
    let filter = GraphFilter::connected().and(GraphFilter::chi_at_least_3());
    let mut graphs = all_graphs(ctx.max_n, filter)?;
    graphs.extend(random_graphs(&mut Lcg::new(ctx.seed), ctx.max_n + 1, RED2_SAMPLES, filter));
    let items: Vec<(Graph, usize)> = graphs
        .iter()
        .flat_map(|g| (1..=2).map(move |m| (g.clone(), m)))
        .collect();
    ctx.run(
        &items,
        |(g, m)| format!("{} m={m}", g6(g)),
        |(g, m), b| {
            let (f, _) = forcing_chromatic_number(g, b)?;
            let (fh, _) = forcing_chromatic_number(&attach_pendant_pairs(g, *m, b)?, b)?;
            if f == 2 {
                ensure!(fh <= 2 + m, format!("F(H) ≤ {}", 2 + m), format!("F(H) = {fh}"));
            } else {
                ensure!(fh >= 3 + m, format!("F(H) ≥ {}", 3 + m), format!("F(H) = {fh}"));
            }
            Ok(Outcome::Pass)
        },
    );
    Ok(())
}

fn proof1(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::connected().and(GraphFilter::chi_at_least_3()))?;
    ctx.run(&items, g6, |g, b| {
        let h = times_k3(g, b)?;
        let two = forcing_number_at_most(&h, 2, b)?.is_some();
        let u3 = in_u3col(g, b)?;
        ensure!(
            u3 == two,
            format!("F(G×K3) = 2 is {u3}"),
            format!("F(G×K3) = 2 is {two}")
        );
        Ok(Outcome::Pass)
    });
    Ok(())
}

const F2_SAMPLES: usize = 8;

/// Full check of the transform: coloring, certificates and the exact
/// forcing number up to 3.
fn f2_check(g: &Graph, b: &mut Budget) -> Result<Outcome> {
    let t = theorem_f2_transform(g)?;
    let h = &t.graph;
    let chi = chromatic_number(h, b)?;
    ensure!(chi == 3, "χ(H) = 3", format!("χ(H) = {chi}"));
    ensure!(is_proper(h, &t.coloring)?, "proper coloring", "improper coloring");
    let three = count_extensions(h, &t.three_certificate(), Some(2), b)?;
    ensure!(three == 1, "3-certificate forces", format!("{three} extensions"));
    let chi_g = chromatic_number(g, b)?;
    let oracle = ForcingOracle::new(h, b)?;
    let f = oracle
        .smallest_forcing_up_to(3, b)?
        .map(|c| c.size())
        .ok_or_else(|| forcing_core::Error::Contract("3-certificate exists".into()))?;
    ensure!(
        (f == 2) == (chi_g > 3),
        format!("F(H) = 2 iff χ(g) = {chi_g} > 3"),
        format!("F(H) = {f}")
    );
    if chi_g > 3 {
        let two = count_extensions(h, &t.two_certificate(), Some(2), b)?;
        ensure!(two == 1, "2-certificate forces", format!("{two} extensions"));
    }
    Ok(Outcome::Pass)
}

fn f2_transform(ctx: &mut Ctx) -> Result<()> {
    let mut items = vec![cycle(5)?, complete(4)?];
    let mut rng = Lcg::new(ctx.seed);
    let filter = GraphFilter::connected().and(GraphFilter::chi_at_least_3());
    if ctx.max_n >= 3 {
        for _ in 0..F2_SAMPLES {
            let n = 3 + rng.below(ctx.max_n as u32 - 2) as usize;
            items.extend(random_graphs(&mut rng, n, 1, filter));
        }
    }
    ctx.run(&items, g6, f2_check);
    Ok(())
}

fn lemma_b(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::connected().and(GraphFilter::chi_at_least_3()))?;
    ctx.run(&items, g6, |g, b| {
        let t = theorem_f2_transform(g)?;
        ensure!(is_proper(&t.graph, &t.coloring)?, "proper coloring", "improper coloring");
        let used = t.coloring.distinct_colors();
        ensure!(used == 3, "3 colors", format!("{used} colors"));
        ensure!(!is_colorable(&t.graph, 2, b)?, "χ(H) = 3", "χ(H) ≤ 2");
        Ok(Outcome::Pass)
    });
    Ok(())
}

fn proof2(ctx: &mut Ctx) -> Result<()> {
    let items = all_graphs(ctx.max_n, GraphFilter::connected().and(GraphFilter::chi_at_least_3()))?;
    ctx.run(&items, g6, |g, b| {
        let t = theorem_f2_transform(g)?;
        let n = count_extensions(&t.graph, &t.three_certificate(), Some(2), b)?;
        ensure!(n == 1, "3-vertex certificate forces", format!("{n} extensions"));
        Ok(Outcome::Pass)
    });
    Ok(())
}

/// Order 7 is run over isomorphism classes; smaller orders are labeled.
fn haj(ctx: &mut Ctx) -> Result<()> {
    let filter = GraphFilter::connected().and(GraphFilter::chi_at_least_3());
    let mut items = Vec::new();
    for n in 1..=ctx.max_n {
        if n == 7 {
            items.extend(unlabeled_graphs(7)?.into_iter().filter(|g| filter.accepts(g)));
        } else {
            items.extend(graphs_of_order(n, filter)?);
        }
    }
    ctx.run(&items, g6, |g, b| {
        if chromatic_number(g, b)? != 3 {
            return Ok(Outcome::Skip);
        }
        let unique = count_partitions(g, b)? == 1;
        let ff = max_minimal_forcing(g, b)?;
        ensure!(
            unique == (ff == 2),
            format!("fF = 2 is {unique}"),
            format!("fF = {ff}")
        );
        Ok(Outcome::Pass)
    });
    Ok(())
}

pub(crate) const GOLDEN: Lemma = Lemma {
    id: "golden",
    statement: "known forcing numbers of odd cycles, C_m×K3, C_m×K2, K2×K4 and mK2 (max_n is unused)",
    default_max_n: 1,
    limit_max_n: 1,
    run: golden,
};

pub(crate) const BASIC_BOUNDS: Lemma = Lemma {
    id: "basic_bounds",
    statement: "χ−1 ≤ F ≤ log2 Θ + log2 χ!, with the greedy certificate valid and within the bound",
    default_max_n: 6,
    limit_max_n: 7,
    run: basic_bounds,
};

pub(crate) const BASIC_ITEM2: Lemma = Lemma {
    id: "basic_item2",
    statement: "Θ = 1 implies F = χ − 1",
    default_max_n: 6,
    limit_max_n: 7,
    run: basic_item2,
};

pub(crate) const GK_FAMILY: Lemma = Lemma {
    id: "gk_family",
    statement: "G_k has 4k+2 vertices, χ = 3, F = 2 and Θ = 2^(k−1)+1 for k ≤ max_n",
    default_max_n: 4,
    limit_max_n: 8,
    run: gk,
};

pub(crate) const FCRECOGN: Lemma = Lemma {
    id: "fcrecogn",
    statement: "for χ(G) ≥ 3 or edgeless G, G ∈ U3COL iff the pair from the recognition reduction is forcing",
    default_max_n: 6,
    limit_max_n: 7,
    run: fcrecogn,
};

pub(crate) const BIPARTITE_COMPONENTS: Lemma = Lemma {
    id: "bipartite_components",
    statement: "χ(G) = 2 implies F equals the number of connected components",
    default_max_n: 7,
    limit_max_n: 7,
    run: bipartite_components,
};

pub(crate) const RED1: Lemma = Lemma {
    id: "red1",
    statement: "F(G+K1) = F(G)+1 for G with an edge",
    default_max_n: 5,
    limit_max_n: 6,
    run: red1,
};

pub(crate) const RED2: Lemma = Lemma {
    id: "red2",
    statement: "for connected χ ≥ 3 and m = 1, 2: F(G) = 2 gives F(H) ≤ 2+m, F(G) ≥ 3 gives F(H) ≥ 3+m",
    default_max_n: 4,
    limit_max_n: 5,
    run: red2,
};

pub(crate) const PROOF1: Lemma = Lemma {
    id: "proof1",
    statement: "for connected χ ≥ 3, G ∈ U3COL iff F(G×K3) = 2",
    default_max_n: 5,
    limit_max_n: 6,
    run: proof1,
};

pub(crate) const F2_TRANSFORM: Lemma = Lemma {
    id: "f2_transform",
    statement: "H = (G'·K3)×K3 has χ = 3, F ≤ 3, and F = 2 iff χ(G) > 3; on C5, K4 and sampled graphs up to max_n",
    default_max_n: 4,
    limit_max_n: 5,
    run: f2_transform,
};

pub(crate) const B: Lemma = Lemma {
    id: "b",
    statement: "the transform's coloring is a proper 3-coloring and χ(H) = 3",
    default_max_n: 5,
    limit_max_n: 5,
    run: lemma_b,
};

pub(crate) const PROOF2: Lemma = Lemma {
    id: "proof2",
    statement: "the transform has a 3-vertex forcing set",
    default_max_n: 4,
    limit_max_n: 5,
    run: proof2,
};

pub(crate) const HAJ: Lemma = Lemma {
    id: "haj",
    statement: "connected G with χ = 3 is uniquely colorable iff fF = 2",
    default_max_n: 7,
    limit_max_n: 7,
    run: haj,
};
