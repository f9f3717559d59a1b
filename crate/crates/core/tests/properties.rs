mod common;

use proptest::collection::vec;
use proptest::prelude::*;

use forcing_core::cnf::{emit_dimacs_cnf, parse_dimacs_cnf, CnfFormula};
use forcing_core::coloring::{chromatic_number, count_extensions, count_partitions, PartialColoring};
use forcing_core::forcing::{forcing_chromatic_number, greedy_forcing_set, max_minimal_forcing};
use forcing_core::graph::{cartesian_product, categorical_product, complement, Graph};
use forcing_core::io::{emit_dimacs_col, emit_graph6, parse_dimacs_col, parse_graph6};
use forcing_core::latin::{count_completions, PartialLatinSquare};
use forcing_core::npopt::{
    chi_encoding, force_set, forcing_number, gamma_encoding, omega_encoding, tau_encoding,
    BitString, Force, SolutionSet,
};
use forcing_core::reductions::{cnf_and, sat_to_3sat};
use forcing_core::Budget;

fn b() -> Budget {
    Budget::default()
}

fn graph_upto(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, code)| common::graph(n, code))
}

fn edge_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        vec((0..n, 0..n), 0..4 * n).prop_map(move |es| {
            let es: Vec<_> = es.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edges(n, &es).unwrap()
        })
    })
}

fn clause(vars: usize, width: usize) -> impl Strategy<Value = Vec<i32>> {
    vec((1..=vars as i32, any::<bool>()), 1..=width)
        .prop_map(|ls| ls.into_iter().map(|(v, pos)| if pos { v } else { -v }).collect())
}

fn formula(max_vars: usize, max_clauses: usize, width: usize) -> impl Strategy<Value = CnfFormula> {
    (1..=max_vars).prop_flat_map(move |v| {
        vec(clause(v, width), 1..=max_clauses)
            .prop_map(move |cs| CnfFormula::new(v, cs).unwrap())
    })
}

fn log2_floor(x: u64) -> usize {
    63 - x.leading_zeros() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adjacency_rows_are_well_formed(g in graph_upto(11)) {
        for u in 0..g.n() {
            prop_assert!(!g.has_edge(u, u));
            prop_assert_eq!(g.neighbors(u) >> g.n(), 0);
            for v in 0..g.n() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn text_formats_round_trip(g in edge_graph(64)) {
        prop_assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_dimacs_col(&emit_dimacs_col(&g)).unwrap(), g);
    }

    #[test]
    fn product_adjacency(g in graph_upto(4), h in graph_upto(4)) {
        let cart = cartesian_product(&g, &h).unwrap();
        let cat = categorical_product(&g, &h).unwrap();
        let idx = |a: usize, x: usize| a * h.n() + x;
        for a in 0..g.n() {
            for x in 0..h.n() {
                for a2 in 0..g.n() {
                    for x2 in 0..h.n() {
                        let side = (a == a2 && h.has_edge(x, x2)) || (x == x2 && g.has_edge(a, a2));
                        prop_assert_eq!(cart.has_edge(idx(a, x), idx(a2, x2)), side);
                        let both = g.has_edge(a, a2) && h.has_edge(x, x2);
                        prop_assert_eq!(cat.has_edge(idx(a, x), idx(a2, x2)), both);
                    }
                }
            }
        }
        prop_assert_eq!(cart.edge_count(), g.n() * h.edge_count() + h.n() * g.edge_count());
        prop_assert_eq!(cat.edge_count(), 2 * g.edge_count() * h.edge_count());
    }

    #[test]
    fn chromatic_number_of_products(g in graph_upto(4), h in graph_upto(4)) {
        let (cg, ch) = (common::chi(&g), common::chi(&h));
        let cart = cartesian_product(&g, &h).unwrap();
        prop_assert_eq!(chromatic_number(&cart, &mut b()).unwrap(), cg.max(ch));
        let cat = categorical_product(&g, &h).unwrap();
        prop_assert!(chromatic_number(&cat, &mut b()).unwrap() <= cg.min(ch));
    }

    #[test]
    fn colorings_agree_with_naive_counts(g in graph_upto(6)) {
        let chi = chromatic_number(&g, &mut b()).unwrap();
        prop_assert_eq!(chi, common::chi(&g));
        let theta = count_partitions(&g, &mut b()).unwrap();
        prop_assert_eq!(theta, common::theta(&g));
        let labeled = count_extensions(&g, &PartialColoring::empty(g.n(), chi), None, &mut b()).unwrap();
        prop_assert_eq!(theta * common::factorial(chi), labeled);
    }

    #[test]
    fn forcing_number_bounds_and_certificates(g in graph_upto(6)) {
        let (f, cert) = forcing_chromatic_number(&g, &mut b()).unwrap();
        prop_assert_eq!(f, common::forcing_number(&g));
        prop_assert!(cert.verify(&g, &mut b()).unwrap());
        let chi = common::chi(&g);
        let theta = common::theta(&g);
        prop_assert!(chi as usize - 1 <= f);
        prop_assert!(f <= log2_floor(theta * common::factorial(chi)));
        if theta == 1 {
            prop_assert_eq!(f, chi as usize - 1);
        }
        if chi == 2 {
            prop_assert_eq!(f, g.connected_components().len());
        }
        let greedy = greedy_forcing_set(&g, &mut b()).unwrap();
        prop_assert!(greedy.verify(&g, &mut b()).unwrap());
        prop_assert!(greedy.size() <= log2_floor(theta * common::factorial(chi)));
        prop_assert!(greedy.size() >= f);
    }

    #[test]
    fn forcing_number_ignores_labels(g in graph_upto(6), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permuted(&perm);
        prop_assert_eq!(h.edge_count(), g.edge_count());
        let f = |x: &Graph| forcing_chromatic_number(x, &mut b()).unwrap().0;
        prop_assert_eq!(f(&g), f(&h));
    }

    #[test]
    fn largest_minimal_defining_set(g in graph_upto(6)) {
        let ff = max_minimal_forcing(&g, &mut b()).unwrap();
        prop_assert_eq!(ff, common::max_minimal_defining(&g));
        prop_assert!(ff >= forcing_chromatic_number(&g, &mut b()).unwrap().0);
    }

    #[test]
    fn force_of_random_families(len in 1usize..=8, raw in vec(any::<u64>(), 0..10)) {
        let mask = (1u64 << len) - 1;
        let mut members: Vec<u64> = raw.iter().map(|x| x & mask).collect();
        members.sort_unstable();
        members.dedup();
        let strings = members.iter().map(|&m| {
            let mut y = BitString::zeros(len);
            for i in 0..len {
                y.set(i, m >> i & 1 == 1);
            }
            y
        });
        let u = SolutionSet::from_members(len, strings).unwrap();
        let got = force_set(&u);
        prop_assert_eq!(got.finite(), common::force_set(&members, len));
        prop_assert_eq!(got == Force::Finite(0), members.len() == 1);
    }

    #[test]
    fn second_string_breaks_singleton(len in 1usize..=8, a in any::<u64>(), c in any::<u64>()) {
        let mask = (1u64 << len) - 1;
        let (a, c) = (a & mask, c & mask);
        prop_assume!(a != c);
        let to = |m: u64| {
            let mut y = BitString::zeros(len);
            for i in 0..len {
                y.set(i, m >> i & 1 == 1);
            }
            y
        };
        let one = SolutionSet::from_members(len, [to(a)]).unwrap();
        let two = SolutionSet::from_members(len, [to(a), to(c)]).unwrap();
        prop_assert_eq!(force_set(&one), Force::Finite(0));
        prop_assert!(force_set(&two) > Force::Finite(0));
    }

    #[test]
    fn graph_problem_forcing_numbers(g in graph_upto(6)) {
        let om = forcing_number(&omega_encoding(&g).unwrap(), &mut b()).unwrap();
        prop_assert_eq!(om.finite(), common::f_omega(&g));
        let ga = forcing_number(&gamma_encoding(&g).unwrap(), &mut b()).unwrap();
        prop_assert_eq!(ga.finite(), common::f_gamma(&g));
        let ta = forcing_number(&tau_encoding(&g).unwrap(), &mut b()).unwrap();
        prop_assert_eq!(ta.finite(), common::f_tau(&g));
        let tc = forcing_number(&tau_encoding(&complement(&g)).unwrap(), &mut b()).unwrap();
        prop_assert_eq!(om == Force::Finite(0), tc == Force::Finite(0));
    }

    #[test]
    fn coloring_encoding_matches(g in graph_upto(4)) {
        let f = forcing_number(&chi_encoding(&g).unwrap(), &mut b()).unwrap();
        prop_assert_eq!(f, Force::Finite(forcing_chromatic_number(&g, &mut b()).unwrap().0));
    }

    #[test]
    fn sat_to_3sat_keeps_model_counts(f in formula(5, 4, 6)) {
        let out = sat_to_3sat(&f).unwrap();
        prop_assert!(out.is_3cnf());
        let want = common::count_models(f.num_vars(), f.clauses());
        prop_assert_eq!(out.count_models().unwrap(), want);
        prop_assert_eq!(common::count_models(out.num_vars(), out.clauses()), want);
    }

    #[test]
    fn conjunction_multiplies_counts(f in formula(3, 3, 3), g in formula(3, 3, 3)) {
        let both = cnf_and(&f, &g).unwrap();
        prop_assert_eq!(
            both.count_models().unwrap(),
            f.count_models().unwrap() * g.count_models().unwrap()
        );
    }

    #[test]
    fn dimacs_cnf_round_trip(f in formula(6, 6, 4)) {
        prop_assert_eq!(parse_dimacs_cnf(&emit_dimacs_cnf(&f)).unwrap(), f);
    }

    #[test]
    fn completions_are_extensions(cells in vec((0usize..9, 1u32..=3), 0..=4)) {
        let mut grid = vec![0u32; 9];
        for (c, v) in cells {
            grid[c] = v;
        }
        let Ok(p) = PartialLatinSquare::new(3, grid) else {
            return Ok(());
        };
        let rook = forcing_core::latin::rook_graph(3).unwrap();
        let completions = count_completions(&p, None, &mut b()).unwrap();
        prop_assert_eq!(completions, count_extensions(&rook, &p.to_coloring(), None, &mut b()).unwrap());
        let all = common::colorings(&rook, 3);
        let naive = all
            .iter()
            .filter(|c| (0..9).all(|i| p.cells()[i] == 0 || p.cells()[i] == c[i]))
            .count() as u64;
        prop_assert_eq!(completions, naive);
    }
}
