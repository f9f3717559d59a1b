use forcing_core::graph::{cycle, Graph};
use forcing_harness::{
    canonical_code, enumerate_graphs, lemma, lemmas, unlabeled_graphs, verify, GraphFilter,
    HarnessError, Lcg, Options, INCREMENT, MULTIPLIER,
};

fn passes(id: &str, max_n: Option<usize>) {
    let r = verify(id, max_n, 0, &Options::default()).unwrap();
    assert!(r.counterexamples.is_empty(), "{id}: {:?}", &r.counterexamples[..1]);
    assert!(!r.budget_exhausted, "{id}: budget exhausted");
    assert!(r.instances_checked > 0, "{id}: nothing checked");
    assert_eq!(r.verdict(), "pass");
}

#[test]
fn product_lemmas_pass_at_defaults() {
    for id in ["chiofchart", "chiofcat", "prop23_and", "prop23_or", "grlo", "c1", "c2"] {
        passes(id, None);
    }
}

#[test]
fn recognition_and_component_lemmas_pass_at_defaults() {
    for id in ["fcrecogn", "bipartite_components"] {
        passes(id, None);
    }
}

#[test]
fn documented_examples() {
    passes("chiofchart", Some(4));
    passes("uovsf", Some(5));
}

#[test]
fn registry_has_every_required_lemma() {
    let required = [
        "chiofchart", "chiofcat", "prop23_and", "prop23_or", "grlo", "c1", "c2", "basic_bounds",
        "basic_item2", "gk_family", "fcrecogn", "red1", "red2", "proof1", "f2_transform", "b",
        "proof2", "haj", "uovsf", "dtt_iff", "gs3toom", "uoom", "uotau", "reduction_ab",
        "plus1_omega", "plus1_gamma", "usand", "bipartite_components", "latin_correspondence",
    ];
    for id in required {
        let l = lemma(id).unwrap_or_else(|| panic!("{id} missing"));
        assert!(l.default_max_n <= l.limit_max_n);
        assert!(!l.statement.is_empty());
    }
    let mut ids: Vec<_> = lemmas().iter().map(|l| l.id).collect();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), lemmas().len());
}

#[test]
fn registry_errors() {
    let opts = Options::default();
    assert!(matches!(verify("no_such_lemma", None, 0, &opts), Err(HarnessError::UnknownLemma(_))));
    let l = lemma("c2").unwrap();
    assert!(matches!(
        verify("c2", Some(l.limit_max_n + 1), 0, &opts),
        Err(HarnessError::SizeLimit { .. })
    ));
}

#[test]
fn reports_are_reproducible() {
    let one = Options::default();
    let three = Options { workers: 3, ..Options::default() };
    let a = verify("red2", None, 5, &one).unwrap();
    let b = verify("red2", None, 5, &three).unwrap();
    assert_eq!(a.to_json_line(false), b.to_json_line(false));
    assert_eq!(a.seed, 5);
    let line: serde_json::Value = serde_json::from_str(&a.to_json_line(true)).unwrap();
    assert!(line["elapsed_ms"].is_u64());
}

fn labeled_count(max_n: usize, keep: impl Fn(&Graph) -> bool) -> usize {
    (1..=max_n)
        .map(|n| {
            let pairs = n * (n - 1) / 2;
            (0..1u64 << pairs)
                .filter(|&c| keep(&Graph::from_pair_code(n, c).unwrap()))
                .count()
        })
        .sum()
}

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate_graphs(3, GraphFilter::all()).unwrap().count(), 11);
    assert_eq!(enumerate_graphs(3, GraphFilter::connected()).unwrap().count(), 6);
    assert_eq!(enumerate_graphs(2, GraphFilter::chi_at_least_3()).unwrap().count(), 0);
    assert!(enumerate_graphs(8, GraphFilter::all()).is_err());
    let n5 = enumerate_graphs(5, GraphFilter::chi_at_least_3()).unwrap().count();
    assert_eq!(n5, labeled_count(5, |g| !g.is_bipartite()));
    let tri = enumerate_graphs(5, GraphFilter::triangle()).unwrap().count();
    assert_eq!(tri, labeled_count(5, |g| g.has_triangle()));
}

#[test]
fn enumeration_order_is_deterministic() {
    let a: Vec<u64> = enumerate_graphs(4, GraphFilter::connected()).unwrap().map(|g| g.pair_code()).collect();
    let b: Vec<u64> = enumerate_graphs(4, GraphFilter::connected()).unwrap().map(|g| g.pair_code()).collect();
    assert_eq!(a, b);
}

#[test]
fn unlabeled_classes() {
    let counts: Vec<usize> = (1..=6).map(|n| unlabeled_graphs(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    let c = cycle(5).unwrap();
    assert_eq!(canonical_code(&c), canonical_code(&c.permuted(&[2, 0, 4, 1, 3])));
}

#[test]
fn generator_matches_its_recurrence() {
    let mut r = Lcg::new(42);
    let mut x: u64 = 42;
    for _ in 0..1000 {
        x = ((x as u128 * MULTIPLIER as u128 + INCREMENT as u128) % (1u128 << 64)) as u64;
        assert_eq!(r.next_u64(), x);
    }
    let mut r = Lcg::new(9);
    let top = Lcg::new(9).next_u64() >> 32;
    assert_eq!(r.below(10) as u64, (top * 10) >> 32);
    let code = Lcg::new(1).next_u64() >> (64 - 10);
    assert_eq!(Lcg::new(1).graph(5), Graph::from_pair_code(5, code).unwrap());
}
