//! Helpers shared by the integration test targets.
//!
//! Each test binary compiles this module independently, and none of them
//! uses every helper.
#![allow(dead_code)]

use lawvere::parse::parse_term;
use lawvere::rewrite::{EdgeLabel, RewriteGraph};
use lawvere::{match_pattern, substitute, Term, TheoryPresentation};

/// Parses a term in the given theory, panicking on any syntax error.
pub fn term(theory: &TheoryPresentation, src: &str) -> Term {
    match parse_term(theory, src) {
        Ok(t) => t,
        Err(e) => panic!("bad test term {src:?}: {e}"),
    }
}

/// A tiny deterministic PRNG (xorshift64*), so random sweeps are
/// reproducible without pulling in a dependency.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> XorShift {
        XorShift(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform-ish draw from `0..n` (n > 0).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// A random closed SKI term with at most `max_nodes` nodes (counting
/// every constant and application).
pub fn random_closed_ski(rng: &mut XorShift, max_nodes: usize) -> Term {
    if max_nodes < 3 || rng.below(3) == 0 {
        Term::constant(["S", "K", "I"][rng.below(3)])
    } else {
        // An application spends one node and splits the rest.
        let left_budget = 1 + rng.below(max_nodes - 2);
        let left = random_closed_ski(rng, left_budget);
        let right = random_closed_ski(rng, max_nodes - 1 - left.size());
        Term::node("app", [left, right])
    }
}

/// Re-derives every edge of a graph from scratch — matching the rule's
/// left-hand side at the recorded position, substituting into the
/// right-hand side, and canonicalizing — and asserts the recorded target
/// term comes out. Parallel labels replay all their redexes on the same
/// source before the single final canonicalization.
pub fn assert_edges_sound(theory: &TheoryPresentation, graph: &RewriteGraph) {
    for edge in &graph.edges {
        let src = &graph.vertices[edge.src];
        let mut replayed = src.clone();
        let redexes = match &edge.label {
            EdgeLabel::Single(r) => std::slice::from_ref(r),
            EdgeLabel::Parallel(rs) => rs.as_slice(),
        };
        for redex in redexes {
            let rule = theory
                .rule(&redex.rule)
                .unwrap_or_else(|| panic!("edge names unknown rule {}", redex.rule));
            let matched = replayed
                .subterm_at(&redex.position)
                .ok()
                .and_then(|sub| match_pattern(&rule.lhs, sub))
                .unwrap_or_else(|| {
                    panic!("rule {} does not re-match on {src} at {:?}", redex.rule, redex.position)
                });
            let replacement = substitute(&rule.rhs, &matched)
                .unwrap_or_else(|e| panic!("substitution failed while replaying an edge: {e}"));
            replayed = replayed
                .replace_at(&redex.position, replacement)
                .unwrap_or_else(|e| panic!("replacement failed while replaying an edge: {e}"));
        }
        let replayed = theory
            .canonicalize(&replayed)
            .unwrap_or_else(|e| panic!("canonicalization failed while replaying an edge: {e}"));
        assert_eq!(
            &replayed, &graph.vertices[edge.dst],
            "edge {src} --{}--> … does not replay to its recorded target",
            edge.label
        );
    }
}
