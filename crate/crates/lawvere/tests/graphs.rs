//! Integration tests for rewrite-graph generation: the two worked SKI
//! diagrams pinned exactly, mode comparisons, and an independent
//! redex-enumeration oracle.

mod common;

use std::collections::BTreeSet;

use common::{assert_edges_sound, random_closed_ski, term, XorShift};
use lawvere::calculi::th_ski;
use lawvere::rewrite::{
    enumerate_closed_terms, find_redexes, generate_graph, Bounds, EdgeLabel, Mode,
};
use lawvere::{match_pattern, Term};

/// The five-vertex collapse diagram: every computation path out of
/// `(((S K) (I K)) S)` funnels into `S`.
#[test]
fn the_collapse_diagram_is_reproduced_exactly() {
    let theory = th_ski();
    let seed = term(&theory, "(((S K) (I K)) S)");
    let graph = generate_graph(&theory, &[seed], Bounds::default(), Mode::Single).unwrap();

    assert!(!graph.truncated);
    assert_eq!(graph.vertices.len(), 5);
    assert_eq!(graph.edges.len(), 6);

    let expected_vertices = [
        "(((S K) (I K)) S)",
        "(((S K) K) S)",
        "((K S) ((I K) S))",
        "((K S) (K S))",
        "S",
    ];
    for v in expected_vertices {
        assert!(
            graph.vertex_id(&term(&theory, v)).is_some(),
            "missing vertex {v}"
        );
    }

    let expected_edges = [
        ("(((S K) (I K)) S)", "σ", "((K S) ((I K) S))"),
        ("(((S K) (I K)) S)", "ι", "(((S K) K) S)"),
        ("(((S K) K) S)", "σ", "((K S) (K S))"),
        ("((K S) ((I K) S))", "ι", "((K S) (K S))"),
        ("((K S) ((I K) S))", "κ", "S"),
        ("((K S) (K S))", "κ", "S"),
    ];
    for (src, rule, dst) in expected_edges {
        let (src_id, dst_id) = (
            graph.vertex_id(&term(&theory, src)).unwrap(),
            graph.vertex_id(&term(&theory, dst)).unwrap(),
        );
        assert!(
            graph.edges.iter().any(|e| {
                e.src == src_id
                    && e.dst == dst_id
                    && matches!(&e.label, EdgeLabel::Single(r) if r.rule == rule)
            }),
            "missing edge {src} --{rule}--> {dst}"
        );
    }

    // Rule-label multiset: two of each.
    let mut labels: Vec<&str> = graph
        .edges
        .iter()
        .filter_map(|e| match &e.label {
            EdgeLabel::Single(r) => Some(r.rule.as_str()),
            EdgeLabel::Parallel(_) => None,
        })
        .collect();
    labels.sort_unstable();
    assert_eq!(labels, ["ι", "ι", "κ", "κ", "σ", "σ"]);

    assert_edges_sound(&theory, &graph);
}

/// The seven-vertex diamond: the long way down the right-hand side and
/// the single-step shortcut. The generated graph may have extra `ι`
/// edges; the figure must be contained as a subgraph.
#[test]
fn the_diamond_diagram_is_contained_as_a_subgraph() {
    let theory = th_ski();
    let seed = term(&theory, "((K S) (((S K) I) (I K)))");
    let bounds = Bounds { max_depth: 6, ..Bounds::default() };
    let graph = generate_graph(&theory, &[seed], bounds, Mode::Single).unwrap();

    let figure_vertices = [
        "((K S) (((S K) I) (I K)))",
        "((K S) ((K (I K)) (I (I K))))",
        "((K S) ((K K) (I (I K))))",
        "((K S) ((K K) (I K)))",
        "((K S) ((K K) K))",
        "((K S) K)",
        "S",
    ];
    for v in figure_vertices {
        assert!(graph.vertex_id(&term(&theory, v)).is_some(), "missing vertex {v}");
    }

    let figure_edges = [
        ("((K S) (((S K) I) (I K)))", "σ", vec![1], "((K S) ((K (I K)) (I (I K))))"),
        ("((K S) (((S K) I) (I K)))", "κ", vec![], "S"),
        ("((K S) ((K (I K)) (I (I K))))", "ι", vec![1, 0, 1], "((K S) ((K K) (I (I K))))"),
        ("((K S) ((K K) (I (I K))))", "ι", vec![1, 1, 1], "((K S) ((K K) (I K)))"),
        ("((K S) ((K K) (I K)))", "ι", vec![1, 1], "((K S) ((K K) K))"),
        ("((K S) ((K K) K))", "κ", vec![1], "((K S) K)"),
        ("((K S) K)", "κ", vec![], "S"),
    ];
    for (src, rule, pos, dst) in figure_edges {
        let (src_id, dst_id) = (
            graph.vertex_id(&term(&theory, src)).unwrap(),
            graph.vertex_id(&term(&theory, dst)).unwrap(),
        );
        assert!(
            graph.edges.iter().any(|e| {
                e.src == src_id
                    && e.dst == dst_id
                    && matches!(
                        &e.label,
                        EdgeLabel::Single(r) if r.rule == rule && r.position == pos
                    )
            }),
            "missing edge {src} --{rule}@{pos:?}--> {dst}"
        );
    }

    assert_edges_sound(&theory, &graph);
}

/// The worked successor examples: two separate single steps, three
/// parallel successors including the simultaneous one.
#[test]
fn parallel_mode_adds_the_simultaneous_step() {
    let theory = th_ski();
    let seed = term(&theory, "((I K) (I K))");

    let single = generate_graph(
        &theory,
        std::slice::from_ref(&seed),
        Bounds { max_depth: 1, ..Bounds::default() },
        Mode::Single,
    )
    .unwrap();
    let singles: BTreeSet<String> = single
        .edges
        .iter()
        .filter(|e| e.src == single.vertex_id(&seed).unwrap())
        .map(|e| single.vertices[e.dst].to_string())
        .collect();
    assert_eq!(
        singles,
        BTreeSet::from(["(K (I K))".to_string(), "((I K) K)".to_string()])
    );

    let parallel = generate_graph(
        &theory,
        std::slice::from_ref(&seed),
        Bounds { max_depth: 1, ..Bounds::default() },
        Mode::Parallel,
    )
    .unwrap();
    let seed_id = parallel.vertex_id(&seed).unwrap();
    let successors: Vec<(&EdgeLabel, String)> = parallel
        .edges
        .iter()
        .filter(|e| e.src == seed_id)
        .map(|e| (&e.label, parallel.vertices[e.dst].to_string()))
        .collect();
    assert_eq!(successors.len(), 3);
    assert!(successors
        .iter()
        .any(|(l, dst)| matches!(l, EdgeLabel::Parallel(rs) if rs.len() == 2) && dst == "(K K)"));

    // Every single-mode edge appears among the parallel-mode edges too.
    for e in &single.edges {
        let (src_t, dst_t) = (&single.vertices[e.src], &single.vertices[e.dst]);
        let (ps, pd) = (
            parallel.vertex_id(src_t).unwrap(),
            parallel.vertex_id(dst_t).unwrap(),
        );
        assert!(
            parallel
                .edges
                .iter()
                .any(|pe| pe.src == ps && pe.dst == pd && pe.label == e.label),
            "single edge {src_t} → {dst_t} missing from the parallel graph"
        );
    }

    assert_edges_sound(&theory, &single);
    assert_edges_sound(&theory, &parallel);
}

/// An independent brute-force redex enumerator: try every rule at every
/// position. The engine must agree on all small closed terms.
#[test]
fn redex_discovery_agrees_with_position_by_position_matching() {
    let theory = th_ski();
    for t in enumerate_closed_terms(&theory, 7).unwrap() {
        let brute: BTreeSet<(String, Vec<usize>)> = t
            .positions()
            .into_iter()
            .flat_map(|pos| {
                let sub = t.subterm_at(&pos).unwrap().clone();
                theory.rules.iter().filter_map(move |rule| {
                    match_pattern(&rule.lhs, &sub).map(|_| (rule.name.clone(), pos.clone()))
                })
            })
            .collect();
        let engine: BTreeSet<(String, Vec<usize>)> = find_redexes(&theory, &t)
            .into_iter()
            .map(|r| (r.rule, r.position))
            .collect();
        assert_eq!(engine, brute, "redex disagreement on {t}");
    }
}

/// Every edge of every graph generated from a batch of random seeds
/// replays soundly, in both modes.
#[test]
fn random_graphs_have_sound_edges() {
    let theory = th_ski();
    let mut rng = XorShift::new(0xFEED_5EED);
    for _ in 0..60 {
        let seed = random_closed_ski(&mut rng, 9);
        let bounds = Bounds { max_depth: 4, max_vertices: 300, fuel: 5_000 };
        for mode in [Mode::Single, Mode::Parallel] {
            let graph =
                generate_graph(&theory, std::slice::from_ref(&seed), bounds, mode).unwrap();
            assert_edges_sound(&theory, &graph);
        }
    }
}

/// Graph generation is insensitive to seed order and duplication.
#[test]
fn seed_order_and_duplicates_do_not_change_the_graph() {
    let theory = th_ski();
    let a = term(&theory, "((I K) (I K))");
    let b = term(&theory, "((K S) K)");
    let bounds = Bounds { max_depth: 3, ..Bounds::default() };

    let forward =
        generate_graph(&theory, &[a.clone(), b.clone()], bounds, Mode::Single).unwrap();
    let backward = generate_graph(
        &theory,
        &[b.clone(), a.clone(), b, a],
        bounds,
        Mode::Single,
    )
    .unwrap();
    assert_eq!(forward.vertices, backward.vertices);
    assert_eq!(forward.edges, backward.edges);
    assert_eq!(forward.seeds, backward.seeds);
}

/// Truncation: the looping Ω term fills any vertex cap and reports it.
#[test]
fn omega_driven_graphs_report_truncation() {
    let theory = th_ski();
    let seed = term(&theory, "((K S) (((S I) I) ((S I) I)))");
    let bounds = Bounds { max_vertices: 50, ..Bounds::default() };
    let graph = generate_graph(&theory, &[seed], bounds, Mode::Single).unwrap();
    assert!(graph.truncated);
    assert!(graph.vertices.len() <= 50);
    assert_edges_sound(&theory, &graph);
}

/// Distinct closed terms stay distinct as vertices: vertex identity is
/// canonical-term identity.
#[test]
fn vertices_are_canonical_terms_without_collisions() {
    let theory = th_ski();
    let seed = term(&theory, "((K S) (((S K) I) (I K)))");
    let graph = generate_graph(
        &theory,
        &[seed],
        Bounds { max_depth: 6, ..Bounds::default() },
        Mode::Single,
    )
    .unwrap();
    let as_set: BTreeSet<&Term> = graph.vertices.iter().collect();
    assert_eq!(as_set.len(), graph.vertices.len());
    let mut sorted = graph.vertices.clone();
    sorted.sort();
    assert_eq!(sorted, graph.vertices, "vertices must be listed in canonical term order");
}
