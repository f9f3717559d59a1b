//! Chromatic numbers of graph products and the layer lemmas.

use forcing_core::coloring::{
    chromatic_number, count_partitions, enumerate_extensions, induced_coloring, is_colorable,
    Coloring, Factor, PartialColoring,
};
use forcing_core::graph::{cartesian_product, categorical_product, complete};
use forcing_core::{Budget, Graph, Result};

use super::{all_graphs, g6, g6_pair, permutations, random_graphs};
use crate::enumerate::{GraphFilter, MAX_ENUMERATION_ORDER};
use crate::lcg::Lcg;
use crate::registry::{ensure, Ctx, Lemma, Outcome};

/// Random pairs drawn on one more vertex than the exhaustive range.
const PAIR_SAMPLES: usize = 32;

/// All pairs on at most `max_n` vertices, then sampled pairs at `max_n + 1`.
fn pairs(ctx: &Ctx) -> Result<Vec<(Graph, Graph)>> {
    let graphs = all_graphs(ctx.max_n, GraphFilter::all())?;
    let mut out = Vec::with_capacity(graphs.len() * graphs.len() + PAIR_SAMPLES);
    for g in &graphs {
        for h in &graphs {
            out.push((g.clone(), h.clone()));
        }
    }
    let top = ctx.max_n + 1;
    if top <= MAX_ENUMERATION_ORDER {
        let mut rng = Lcg::new(ctx.seed);
        let sample = random_graphs(&mut rng, top, 2 * PAIR_SAMPLES, GraphFilter::all());
        out.extend(sample.chunks(2).map(|p| (p[0].clone(), p[1].clone())));
    }
    Ok(out)
}

fn chiofchart(ctx: &mut Ctx) -> Result<()> {
    let items = pairs(ctx)?;
    ctx.run(&items, g6_pair, |(g, h), b| {
        let want = chromatic_number(g, b)?.max(chromatic_number(h, b)?);
        Ok(Outcome::expect_eq(want, chromatic_number(&cartesian_product(g, h)?, b)?))
    });
    Ok(())
}

fn chiofcat(ctx: &mut Ctx) -> Result<()> {
    let items = pairs(ctx)?;
    ctx.run(&items, g6_pair, |(g, h), b| {
        let bound = chromatic_number(g, b)?.min(chromatic_number(h, b)?);
        let chi = chromatic_number(&categorical_product(g, h)?, b)?;
        ensure!(chi <= bound, format!("at most {bound}"), chi);
        Ok(Outcome::Pass)
    });
    Ok(())
}

fn prop23_and(ctx: &mut Ctx) -> Result<()> {
    let items = pairs(ctx)?;
    ctx.run(&items, g6_pair, |(g, h), b| {
        let want = is_colorable(g, 3, b)? && is_colorable(h, 3, b)?;
        Ok(Outcome::expect_eq(want, is_colorable(&cartesian_product(g, h)?, 3, b)?))
    });
    Ok(())
}

fn prop23_or(ctx: &mut Ctx) -> Result<()> {
    let items = pairs(ctx)?;
    ctx.run(&items, g6_pair, |(g, h), b| {
        let want = is_colorable(g, 3, b)? || is_colorable(h, 3, b)?;
        Ok(Outcome::expect_eq(want, is_colorable(&categorical_product(g, h)?, 3, b)?))
    });
    Ok(())
}

fn grlo(ctx: &mut Ctx) -> Result<()> {
    let graphs = all_graphs(ctx.max_n, GraphFilter::connected())?;
    let items: Vec<(Graph, usize)> = graphs
        .iter()
        .flat_map(|g| (2..=4).map(move |k| (g.clone(), k)))
        .collect();
    ctx.run(
        &items,
        |(g, k)| format!("{} K{k}", g6(g)),
        |(g, k), b| {
            if chromatic_number(g, b)? as usize <= *k {
                return Ok(Outcome::Skip);
            }
            let h = categorical_product(g, &complete(*k)?)?;
            let chi = chromatic_number(&h, b)?;
            ensure!(chi as usize == *k, format!("χ = {k}"), format!("χ = {chi}"));
            let theta = count_partitions(&h, b)?;
            ensure!(theta == 1, "Θ = 1", format!("Θ = {theta}"));
            Ok(Outcome::Pass)
        },
    );
    Ok(())
}

/// Injective colorings of the `K_k`-layer of `u` force the coloring induced
/// by `K_k`.
fn c1_check(g: &Graph, k: usize, b: &mut Budget) -> Result<Outcome> {
    let kk = complete(k)?;
    let h = categorical_product(g, &kk)?;
    for u in 0..g.n() {
        for sigma in permutations(k) {
            let pairs: Vec<(usize, u32)> =
                (0..k).map(|i| (u * k + i, sigma[i] as u32 + 1)).collect();
            let p = PartialColoring::from_pairs(h.n(), k as u32, &pairs)?;
            let ext = enumerate_extensions(&h, &p, Some(2), b)?;
            ensure!(ext.len() == 1, format!("1 extension from layer {u}"), ext.len());
            let layer = Coloring::new(sigma.iter().map(|&c| c as u32 + 1).collect(), k as u32)?;
            let induced = induced_coloring(&layer, Factor::Right, g, &kk)?;
            ensure!(
                ext[0] == induced,
                format!("{:?}", induced.colors()),
                format!("{:?}", ext[0].colors())
            );
        }
    }
    Ok(Outcome::Pass)
}

fn c1(ctx: &mut Ctx) -> Result<()> {
    let graphs = all_graphs(ctx.max_n, GraphFilter::connected())?;
    let items: Vec<(Graph, usize)> = graphs
        .iter()
        .flat_map(|g| (2..=3).map(move |k| (g.clone(), k)))
        .collect();
    ctx.run(&items, |(g, k)| format!("{} K{k}", g6(g)), |(g, k), b| c1_check(g, *k, b));
    Ok(())
}

fn c2(ctx: &mut Ctx) -> Result<()> {
    let n = 3;
    let k = complete(n)?;
    let h = categorical_product(&k, &k)?;
    let mut b = Budget::unlimited();
    let colorings = enumerate_extensions(&h, &PartialColoring::empty(h.n(), 3), None, &mut b)?;
    ctx.run(
        &colorings,
        |c| format!("{:?}", c.colors()),
        |c, _| {
            let left = Coloring::new((0..n).map(|a| c.color(a * n)).collect(), 3)?;
            let right = Coloring::new((0..n).map(|j| c.color(j)).collect(), 3)?;
            let by_left = induced_coloring(&left, Factor::Left, &k, &k).is_ok_and(|x| &x == c);
            let by_right = induced_coloring(&right, Factor::Right, &k, &k).is_ok_and(|x| &x == c);
            ensure!(by_left || by_right, "induced by a factor", "induced by neither");
            Ok(Outcome::Pass)
        },
    );
    Ok(())
}

pub(crate) const CHIOFCHART: Lemma = Lemma {
    id: "chiofchart",
    statement: "χ(G×H) = max(χ(G), χ(H)) for all pairs on at most max_n vertices",
    default_max_n: 4,
    limit_max_n: 5,
    run: chiofchart,
};

pub(crate) const CHIOFCAT: Lemma = Lemma {
    id: "chiofcat",
    statement: "χ(G·H) ≤ min(χ(G), χ(H)) for all pairs on at most max_n vertices",
    default_max_n: 4,
    limit_max_n: 5,
    run: chiofcat,
};

pub(crate) const PROP23_AND: Lemma = Lemma {
    id: "prop23_and",
    statement: "G×H is 3-colorable iff both G and H are",
    default_max_n: 4,
    limit_max_n: 5,
    run: prop23_and,
};

pub(crate) const PROP23_OR: Lemma = Lemma {
    id: "prop23_or",
    statement: "G·H is 3-colorable iff G or H is",
    default_max_n: 4,
    limit_max_n: 5,
    run: prop23_or,
};

pub(crate) const GRLO: Lemma = Lemma {
    id: "grlo",
    statement: "connected G with χ(G) > k gives a uniquely k-colorable G·K_k, k = 2, 3, 4",
    default_max_n: 5,
    limit_max_n: 6,
    run: grlo,
};

pub(crate) const C1: Lemma = Lemma {
    id: "c1",
    statement: "for connected G, an injective coloring of a K_k-layer of G·K_k forces the K_k-induced coloring, k = 2, 3",
    default_max_n: 5,
    limit_max_n: 6,
    run: c1,
};

pub(crate) const C2: Lemma = Lemma {
    id: "c2",
    statement: "every proper 3-coloring of K3·K3 is induced by a factor (max_n is unused)",
    default_max_n: 3,
    limit_max_n: 3,
    run: c2,
};
