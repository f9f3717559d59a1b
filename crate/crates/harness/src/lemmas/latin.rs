//! Latin squares against colorings of the rook graph.

use forcing_core::coloring::{count_extensions, is_proper};
use forcing_core::forcing::{for_each_subset, forcing_chromatic_number};
use forcing_core::latin::{
    all_latin_squares, count_completions, rook_graph, smallest_critical_size, LatinSquare,
    PartialLatinSquare,
};
use forcing_core::{Budget, Result};

use crate::registry::{ensure, Ctx, Lemma, Outcome};

/// Every partial square of order `n` with at most `max_filled` cells.
fn partial_squares(n: usize, max_filled: usize) -> Vec<PartialLatinSquare> {
    let mut out = Vec::new();
    for k in 0..=max_filled.min(n * n) {
        for_each_subset(n * n, k, |cells| {
            let cells = cells.to_vec();
            for code in 0..(n as u64).pow(k as u32) {
                let mut grid = vec![0u32; n * n];
                let mut c = code;
                for &cell in &cells {
                    grid[cell] = (c % n as u64) as u32 + 1;
                    c /= n as u64;
                }
                if let Ok(p) = PartialLatinSquare::new(n, grid) {
                    out.push(p);
                }
            }
            true
        });
    }
    out
}

/// `max_n` is the order; partial squares have at most `max_n + 1` cells.
fn correspondence(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.max_n;
    let rook = rook_graph(n)?;
    let squares = all_latin_squares(n, &mut Budget::unlimited())?;
    ctx.run(
        &squares,
        |s| s.as_partial().to_string(),
        |s, _| {
            let c = s.to_coloring();
            ensure!(is_proper(&rook, &c)?, "proper coloring", "improper coloring");
            let back = LatinSquare::from_coloring(&c)?;
            ensure!(&back == s, s.as_partial().to_string(), back.as_partial().to_string());
            Ok(Outcome::Pass)
        },
    );
    let partials = partial_squares(n, n + 1);
    ctx.run(
        &partials,
        |p| p.to_string(),
        |p, b| {
            let coloring = p.to_coloring();
            let back = PartialLatinSquare::from_coloring(n, &coloring)?;
            ensure!(&back == p, p.to_string(), back.to_string());
            let direct = count_completions(p, None, b)?;
            let via = count_extensions(&rook, &coloring, None, b)?;
            ensure!(direct == via, format!("{via} extensions"), format!("{direct} completions"));
            Ok(Outcome::Pass)
        },
    );
    Ok(())
}

/// Known sizes of the smallest uniquely completable partial squares.
fn known_critical(n: usize) -> Option<usize> {
    match n {
        1 => Some(0),
        2 => Some(1),
        3 => Some(2),
        _ => None,
    }
}

/// Orders `1..=max_n`.
fn critical(ctx: &mut Ctx) -> Result<()> {
    let items: Vec<usize> = (1..=ctx.max_n).collect();
    ctx.run(
        &items,
        |n| format!("order {n}"),
        |&n, b| {
            let (f, _) = forcing_chromatic_number(&rook_graph(n)?, b)?;
            let direct = smallest_critical_size(n, b)?;
            ensure!(f == direct, format!("critical size {f}"), format!("critical size {direct}"));
            ensure!(4 * f <= n * n, format!("F ≤ {}/4", n * n), format!("F = {f}"));
            if let Some(k) = known_critical(n) {
                ensure!(f == k, format!("F = {k}"), format!("F = {f}"));
            }
            Ok(Outcome::Pass)
        },
    );
    Ok(())
}

pub(crate) const LATIN_CORRESPONDENCE: Lemma = Lemma {
    id: "latin_correspondence",
    statement: "Latin squares are the proper colorings of K_n×K_n, and completions are coloring extensions",
    default_max_n: 3,
    limit_max_n: 4,
    run: correspondence,
};

pub(crate) const LATIN_CRITICAL: Lemma = Lemma {
    id: "latin_critical",
    statement: "the smallest uniquely completable partial square has F(K_n×K_n) ≤ n²/4 cells",
    default_max_n: 3,
    limit_max_n: 4,
    run: critical,
};
