//! The rewrite engine: redex discovery, one-step successors, bounded
//! rewrite-graph generation, strategies, and normalization.
//!
//! Everything here operates on canonical forms. Redexes are matched on a
//! canonical term, and every application re-canonicalizes its result, so a
//! rewrite graph never contains two vertices that the structural equations
//! identify.
//!
//! Redexes are enumerated in a fixed total order — position first
//! (lexicographically, i.e. pre-order), then rule declaration order at equal
//! positions — and every construction in this module consumes them in that
//! order. Together with the canonical renumbering of vertices performed by
//! [`generate_graph`], this makes graph generation a pure function of
//! (theory, seeds, bounds, mode): the same inputs produce the same graph,
//! byte for byte, no matter how the frontier work is scheduled.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::term::{
    format_position, match_pattern, substitute, Position, Substitution, Term, TermError,
};
use crate::theory::{CanonError, TheoryPresentation};

/// One place a rule applies: the rule's name, the position of the redex, and
/// the matching substitution.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Redex {
    /// Position of the matched subterm.
    pub position: Position,
    /// Name of the rule that matches there.
    pub rule: String,
    /// The substitution produced by the match.
    pub subst: Substitution,
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.rule, format_position(&self.position))
    }
}

/// Label of a rewrite-graph edge: one redex, or a set of at least two
/// pairwise-disjoint redexes fired simultaneously (parallel mode).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeLabel {
    /// A single rewrite step.
    Single(Redex),
    /// Simultaneous application of disjoint redexes; always at least two,
    /// listed in redex order.
    Parallel(Vec<Redex>),
}

impl EdgeLabel {
    /// The redexes under the label, a one-element slice for `Single`.
    pub fn redexes(&self) -> &[Redex] {
        match self {
            EdgeLabel::Single(r) => core::slice::from_ref(r),
            EdgeLabel::Parallel(rs) => rs,
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Single(r) => write!(f, "{r}"),
            EdgeLabel::Parallel(rs) => {
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
        }
    }
}

/// A directed edge between two vertices of a [`RewriteGraph`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RewriteEdge {
    /// Index of the source vertex.
    pub src: usize,
    /// Index of the target vertex.
    pub dst: usize,
    /// Which redex(es) this edge fired.
    pub label: EdgeLabel,
}

/// Exploration limits for [`generate_graph`]. All three must be positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Maximum BFS distance from the seeds.
    pub max_depth: usize,
    /// Maximum number of vertices to admit.
    pub max_vertices: usize,
    /// Maximum number of vertex expansions (frontier pops) overall.
    pub fuel: usize,
}

impl Default for Bounds {
    /// Generous desk-scale defaults: depth 64, ten thousand vertices, one
    /// hundred thousand expansions.
    fn default() -> Self {
        Bounds { max_depth: 64, max_vertices: 10_000, fuel: 100_000 }
    }
}

/// Which edges [`generate_graph`] and [`successors`] produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mode {
    /// One edge per redex.
    Single,
    /// One edge per redex *and* one per set of two or more pairwise-disjoint
    /// redexes fired together. Single-mode edges are literally a subset.
    Parallel,
}

/// Redex selection order for [`normalize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Take redexes in the engine's full enumeration order (position
    /// lexicographic, then rule order). The first redex in this order is
    /// always an outermost one, so as a normalization strategy this
    /// coincides with [`Strategy::LeftmostOutermost`].
    Full,
    /// Contract the leftmost outermost redex first.
    LeftmostOutermost,
    /// Contract the leftmost innermost redex first.
    LeftmostInnermost,
}

/// A bounded piece of the free model: every term reachable from the seeds by
/// rewriting, inside the given bounds.
///
/// Vertices are canonical terms, renumbered into canonical term order after
/// exploration, so two runs over the same inputs yield identical structures
/// regardless of expansion scheduling. `truncated` is `true` exactly when
/// something was left out: a vertex or edge dropped by `max_vertices`, or a
/// vertex that still had redexes left unexpanded when `max_depth` or `fuel`
/// ran out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteGraph {
    /// The vertices, in canonical term order.
    pub vertices: Vec<Term>,
    /// The edges, sorted by (source, label, target).
    pub edges: Vec<RewriteEdge>,
    /// Indices of the (canonicalized, deduplicated) seed terms.
    pub seeds: Vec<usize>,
    /// Whether any part of the reachable graph was cut off by the bounds.
    pub truncated: bool,
    /// The bounds the graph was generated under.
    pub bounds: Bounds,
    /// The edge mode the graph was generated under.
    pub mode: Mode,
}

impl RewriteGraph {
    /// Index of a term among the vertices, if present.
    pub fn vertex_id(&self, t: &Term) -> Option<usize> {
        self.vertices.binary_search(t).ok()
    }
}

/// Errors from the rewrite engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RewriteError {
    /// Canonicalization failed (non-terminating equation orientation).
    Canon(CanonError),
    /// A position or substitution primitive failed.
    Term(TermError),
    /// [`apply_redex`] was handed a redex that no longer matches its term.
    StaleRedex {
        /// The rule the redex claimed.
        rule: String,
        /// Where it claimed to match.
        position: Position,
    },
    /// A redex referred to a rule the theory does not declare.
    UnknownRule(String),
    /// A bound was zero, or no seeds were supplied.
    InvalidBounds(String),
    /// Parallel-mode subset enumeration over more than 16 redexes in one
    /// term was refused.
    TooManyRedexes(usize),
}

impl fmt::Display for RewriteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteError::Canon(e) => write!(f, "{e}"),
            RewriteError::Term(e) => write!(f, "{e}"),
            RewriteError::StaleRedex { rule, position } => write!(
                f,
                "stale redex: {rule}@{} no longer matches the term",
                format_position(position)
            ),
            RewriteError::UnknownRule(name) => write!(f, "unknown rule {name}"),
            RewriteError::InvalidBounds(msg) => write!(f, "invalid bounds: {msg}"),
            RewriteError::TooManyRedexes(n) => {
                write!(f, "parallel mode over {n} redexes in one term is not supported (max 16)")
            }
        }
    }
}

impl core::error::Error for RewriteError {}

impl From<CanonError> for RewriteError {
    fn from(e: CanonError) -> Self {
        RewriteError::Canon(e)
    }
}

impl From<TermError> for RewriteError {
    fn from(e: TermError) -> Self {
        RewriteError::Term(e)
    }
}

/// All redexes of a canonical term, in engine order: positions
/// lexicographically (the pre-order traversal), rules in declaration order
/// at the same position.
///
/// # Examples
///
/// ```
/// use lawvere::calculi::th_ski;
/// use lawvere::parse::parse_term;
/// use lawvere::rewrite::find_redexes;
///
/// let th = th_ski();
/// let t = parse_term(&th, "(((S K) (I K)) S)").unwrap();
/// let redexes = find_redexes(&th, &t);
/// assert_eq!(redexes.len(), 2);
/// assert_eq!((redexes[0].rule.as_str(), &redexes[0].position[..]), ("σ", &[][..]));
/// assert_eq!((redexes[1].rule.as_str(), &redexes[1].position[..]), ("ι", &[0, 1][..]));
/// ```
pub fn find_redexes(theory: &TheoryPresentation, t: &Term) -> Vec<Redex> {
    let mut out = Vec::new();
    for pos in t.positions() {
        let sub = t.subterm_at(&pos).expect("position enumerated from t");
        for rule in &theory.rules {
            if let Some(theta) = match_pattern(&rule.lhs, sub) {
                out.push(Redex { position: pos.clone(), rule: rule.name.clone(), subst: theta });
            }
        }
    }
    out
}

/// Contracts one redex: re-verifies the match, substitutes the rule's
/// right-hand side, splices it in, and canonicalizes the result.
///
/// A redex whose stored substitution no longer reproduces the match (because
/// the term changed under it) is rejected as stale rather than applied.
pub fn apply_redex(
    theory: &TheoryPresentation,
    t: &Term,
    redex: &Redex,
) -> Result<Term, RewriteError> {
    let rule = theory
        .rule(&redex.rule)
        .ok_or_else(|| RewriteError::UnknownRule(redex.rule.clone()))?;
    let sub = t.subterm_at(&redex.position)?;
    let verified = match_pattern(&rule.lhs, sub);
    if verified.as_ref() != Some(&redex.subst) {
        return Err(RewriteError::StaleRedex {
            rule: redex.rule.clone(),
            position: redex.position.clone(),
        });
    }
    let contractum = substitute(&rule.rhs, &redex.subst)?;
    let replaced = t.replace_at(&redex.position, contractum)?;
    Ok(theory.canonicalize(&replaced)?)
}

/// Two positions are disjoint when neither is a prefix of the other — the
/// condition under which their redexes can fire simultaneously.
fn disjoint(a: &[usize], b: &[usize]) -> bool {
    !a.starts_with(b) && !b.starts_with(a)
}

/// Applies a set of pairwise-disjoint redexes in one step (no intermediate
/// canonicalization; the final result is canonicalized once).
fn apply_disjoint(
    theory: &TheoryPresentation,
    t: &Term,
    redexes: &[&Redex],
) -> Result<Term, RewriteError> {
    let mut current = t.clone();
    for redex in redexes {
        let rule = theory
            .rule(&redex.rule)
            .ok_or_else(|| RewriteError::UnknownRule(redex.rule.clone()))?;
        let contractum = substitute(&rule.rhs, &redex.subst)?;
        // Disjointness means no replacement disturbs another redex's path.
        current = current.replace_at(&redex.position, contractum)?;
    }
    Ok(theory.canonicalize(&current)?)
}

/// All one-step successors of a canonical term, labelled. In
/// [`Mode::Single`] there is one per redex; [`Mode::Parallel`] adds one per
/// antichain of two or more disjoint redexes, so the single-mode edges are a
/// subset of the parallel-mode ones.
///
/// # Examples
///
/// ```
/// use lawvere::calculi::th_ski;
/// use lawvere::parse::parse_term;
/// use lawvere::rewrite::{successors, Mode};
///
/// let th = th_ski();
/// let t = parse_term(&th, "((I K) (I K))").unwrap();
/// assert_eq!(successors(&th, &t, Mode::Single).unwrap().len(), 2);
/// // ... and firing both ι redexes at once also reaches (K K) directly.
/// let par = successors(&th, &t, Mode::Parallel).unwrap();
/// assert_eq!(par.len(), 3);
/// assert_eq!(par[2].1, parse_term(&th, "(K K)").unwrap());
/// ```
pub fn successors(
    theory: &TheoryPresentation,
    t: &Term,
    mode: Mode,
) -> Result<Vec<(EdgeLabel, Term)>, RewriteError> {
    let redexes = find_redexes(theory, t);
    let mut out = Vec::new();
    for redex in &redexes {
        let next = apply_redex(theory, t, redex)?;
        out.push((EdgeLabel::Single(redex.clone()), next));
    }
    if mode == Mode::Parallel && redexes.len() >= 2 {
        let n = redexes.len();
        if n > 16 {
            return Err(RewriteError::TooManyRedexes(n));
        }
        // Subsets in ascending bitmask order keeps the enumeration (and so
        // the graph) deterministic.
        for mask in 1u32..(1 << n) {
            if mask.count_ones() < 2 {
                continue;
            }
            let chosen: Vec<&Redex> =
                (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &redexes[i]).collect();
            let antichain = chosen
                .iter()
                .enumerate()
                .all(|(i, a)| chosen[i + 1..].iter().all(|b| disjoint(&a.position, &b.position)));
            if !antichain {
                continue;
            }
            let next = apply_disjoint(theory, t, &chosen)?;
            out.push((EdgeLabel::Parallel(chosen.into_iter().cloned().collect()), next));
        }
    }
    Ok(out)
}

/// Computes successor lists for a whole frontier. [`generate_graph`] uses
/// this sequentially; [`generate_graph_with`] lets a caller substitute any
/// other scheduling (e.g. a thread pool) as long as the returned lists line
/// up index-for-index with the frontier — which is all determinism needs.
pub fn expand_frontier(
    theory: &TheoryPresentation,
    frontier: &[Term],
    mode: Mode,
) -> Result<Vec<Vec<(EdgeLabel, Term)>>, RewriteError> {
    frontier.iter().map(|t| successors(theory, t, mode)).collect()
}

/// Breadth-first generation of the rewrite graph out of `seeds`, using the
/// given frontier mapper.
///
/// The mapper must return one successor list per frontier term, in frontier
/// order; apart from that it is free to compute them in any order or in
/// parallel. The result is identical to [`generate_graph`]'s.
pub fn generate_graph_with<F>(
    theory: &TheoryPresentation,
    seeds: &[Term],
    bounds: Bounds,
    mode: Mode,
    mut map_frontier: F,
) -> Result<RewriteGraph, RewriteError>
where
    F: FnMut(&TheoryPresentation, &[Term], Mode) -> Result<Vec<Vec<(EdgeLabel, Term)>>, RewriteError>,
{
    if seeds.is_empty() {
        return Err(RewriteError::InvalidBounds("seed list is empty".to_string()));
    }
    if bounds.max_depth == 0 || bounds.max_vertices == 0 || bounds.fuel == 0 {
        return Err(RewriteError::InvalidBounds(
            "max_depth, max_vertices, and fuel must all be positive".to_string(),
        ));
    }

    let mut truncated = false;
    let mut discovered: BTreeSet<Term> = BTreeSet::new();
    let mut seed_terms: Vec<Term> = Vec::new();
    for seed in seeds {
        let canon = theory.canonicalize(seed)?;
        if discovered.contains(&canon) {
            continue;
        }
        if discovered.len() == bounds.max_vertices {
            truncated = true;
            continue;
        }
        discovered.insert(canon.clone());
        seed_terms.push(canon);
    }

    let mut edges: Vec<(Term, EdgeLabel, Term)> = Vec::new();
    let mut frontier: Vec<Term> = seed_terms.clone();
    let mut fuel_left = bounds.fuel;
    let mut depth = 0;

    while !frontier.is_empty() {
        if depth == bounds.max_depth || fuel_left == 0 {
            break;
        }
        depth += 1;
        let take = frontier.len().min(fuel_left);
        fuel_left -= take;
        // Anything fuel forces us to defer stays at the head of the next
        // frontier; the loop condition will then stop with it unexpanded.
        let deferred = frontier.split_off(take);
        let successor_lists = map_frontier(theory, &frontier, mode)?;
        debug_assert_eq!(successor_lists.len(), frontier.len());

        let mut next: Vec<Term> = Vec::new();
        for (src, succs) in frontier.iter().zip(successor_lists) {
            for (label, dst) in succs {
                if discovered.contains(&dst) {
                    edges.push((src.clone(), label, dst));
                } else if discovered.len() < bounds.max_vertices {
                    discovered.insert(dst.clone());
                    next.push(dst.clone());
                    edges.push((src.clone(), label, dst));
                } else {
                    // Vertex cap: the target (and this edge) are dropped.
                    truncated = true;
                }
            }
        }
        frontier = deferred;
        frontier.extend(next);
    }

    // Whatever is still on the frontier was never expanded. That only hides
    // part of the graph if one of those terms actually had redexes.
    if frontier.iter().any(|t| !find_redexes(theory, t).is_empty()) {
        truncated = true;
    }

    // Canonical renumbering: vertices in term order, edges sorted.
    let vertices: Vec<Term> = discovered.into_iter().collect();
    let id_of = |t: &Term| vertices.binary_search(t).expect("vertex recorded during BFS");
    let mut graph_edges: Vec<RewriteEdge> = edges
        .into_iter()
        .map(|(src, label, dst)| RewriteEdge { src: id_of(&src), dst: id_of(&dst), label })
        .collect();
    graph_edges.sort();
    let mut seed_ids: Vec<usize> = seed_terms.iter().map(id_of).collect();
    seed_ids.sort_unstable();

    Ok(RewriteGraph { vertices, edges: graph_edges, seeds: seed_ids, truncated, bounds, mode })
}

/// Breadth-first generation of the rewrite graph out of `seeds`, expanding
/// the frontier sequentially.
///
/// # Examples
///
/// ```
/// use lawvere::calculi::th_ski;
/// use lawvere::parse::parse_term;
/// use lawvere::rewrite::{generate_graph, Bounds, Mode};
///
/// let th = th_ski();
/// let seed = parse_term(&th, "(((S K) (I K)) S)").unwrap();
/// let g = generate_graph(&th, &[seed], Bounds::default(), Mode::Single).unwrap();
/// assert_eq!(g.vertices.len(), 5);
/// assert_eq!(g.edges.len(), 6);
/// assert!(!g.truncated);
/// ```
pub fn generate_graph(
    theory: &TheoryPresentation,
    seeds: &[Term],
    bounds: Bounds,
    mode: Mode,
) -> Result<RewriteGraph, RewriteError> {
    generate_graph_with(theory, seeds, bounds, mode, expand_frontier)
}

/// One step of a normalization run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizeStep {
    /// The redex that was contracted.
    pub redex: Redex,
    /// The (canonical) term after the step.
    pub term: Term,
}

/// Outcome of [`normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizeOutcome {
    /// A redex-free term was reached.
    NormalForm(Term),
    /// Fuel ran out first; `0` holds the last term reached.
    Timeout(Term),
}

/// A normalization run: the trace and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    /// Every step taken, in order.
    pub steps: Vec<NormalizeStep>,
    /// Normal form or timeout.
    pub outcome: NormalizeOutcome,
}

/// Picks the redex the strategy contracts next, or `None` on a normal form.
fn pick_redex(theory: &TheoryPresentation, t: &Term, strategy: Strategy) -> Option<Redex> {
    match strategy {
        // The lexicographically first redex position has no redex ancestor
        // (prefixes sort first), so "first in enumeration order" is exactly
        // the leftmost outermost redex.
        Strategy::Full | Strategy::LeftmostOutermost => find_redexes(theory, t).into_iter().next(),
        Strategy::LeftmostInnermost => {
            for pos in t.positions_postorder() {
                let sub = t.subterm_at(&pos).expect("position enumerated from t");
                for rule in &theory.rules {
                    if let Some(theta) = match_pattern(&rule.lhs, sub) {
                        return Some(Redex {
                            position: pos,
                            rule: rule.name.clone(),
                            subst: theta,
                        });
                    }
                }
            }
            None
        }
    }
}

/// Repeatedly contracts the strategy's first redex until a normal form is
/// reached or `fuel` steps have been taken. The input is canonicalized
/// first; every intermediate term is canonical.
///
/// # Examples
///
/// Marked SKI evaluates under the marker only — the divergent argument `Ω`
/// is never entered:
///
/// ```
/// use lawvere::calculi::th_ski_r;
/// use lawvere::parse::parse_term;
/// use lawvere::rewrite::{normalize, NormalizeOutcome, Strategy};
///
/// let th = th_ski_r();
/// let t = parse_term(&th, "R(((K S) (((S I) I) ((S I) I))))").unwrap();
/// let run = normalize(&th, &t, Strategy::LeftmostOutermost, 50).unwrap();
/// match run.outcome {
///     NormalizeOutcome::NormalForm(nf) => assert_eq!(nf.to_string(), "R(S)"),
///     other => panic!("expected a normal form, got {other:?}"),
/// }
/// ```
pub fn normalize(
    theory: &TheoryPresentation,
    t: &Term,
    strategy: Strategy,
    fuel: usize,
) -> Result<Normalization, RewriteError> {
    let mut current = theory.canonicalize(t)?;
    let mut steps = Vec::new();
    for _ in 0..fuel {
        match pick_redex(theory, &current, strategy) {
            None => {
                return Ok(Normalization {
                    steps,
                    outcome: NormalizeOutcome::NormalForm(current),
                })
            }
            Some(redex) => {
                current = apply_redex(theory, &current, &redex)?;
                steps.push(NormalizeStep { redex, term: current.clone() });
            }
        }
    }
    let outcome = if pick_redex(theory, &current, strategy).is_none() {
        NormalizeOutcome::NormalForm(current)
    } else {
        NormalizeOutcome::Timeout(current)
    };
    Ok(Normalization { steps, outcome })
}

/// Enumerates every canonical closed term with at most `max_nodes` nodes.
///
/// Terms are listed by size, and within one size in generation order:
/// operations in declaration order, then argument tuples lexicographically
/// by the same enumeration. A term is kept exactly when it is its own
/// canonical form, so for a theory with structural equations each
/// equivalence class appears once, represented canonically.
///
/// # Examples
///
/// ```
/// use lawvere::calculi::th_ski;
/// use lawvere::rewrite::enumerate_closed_terms;
///
/// let th = th_ski();
/// let constants = enumerate_closed_terms(&th, 1).unwrap();
/// assert_eq!(constants.iter().map(ToString::to_string).collect::<Vec<_>>(), ["S", "K", "I"]);
/// assert_eq!(enumerate_closed_terms(&th, 3).unwrap().len(), 12);
/// ```
pub fn enumerate_closed_terms(
    theory: &TheoryPresentation,
    max_nodes: usize,
) -> Result<Vec<Term>, RewriteError> {
    // by_size[n] holds the canonical closed terms with exactly n+1 nodes.
    // Subterms of canonical terms are canonical, so building from canonical
    // children and checking only the root keeps the enumeration exact.
    let mut by_size: Vec<Vec<Term>> = Vec::with_capacity(max_nodes);
    for n in 1..=max_nodes {
        let mut this_size: Vec<Term> = Vec::new();
        for op in &theory.operations {
            if op.arity == 0 {
                if n == 1 {
                    this_size.push(Term::constant(op.name.clone()));
                }
                continue;
            }
            if n < op.arity + 1 {
                continue;
            }
            let mut partial: Vec<Term> = Vec::with_capacity(op.arity);
            build_args(
                theory,
                &op.name,
                op.arity,
                n - 1,
                &by_size,
                &mut partial,
                &mut this_size,
            )?;
        }
        by_size.push(this_size);
    }
    Ok(by_size.into_iter().flatten().collect())
}

/// Extends `partial` with every way of spending `budget` nodes on the
/// remaining argument slots, emitting completed canonical nodes.
fn build_args(
    theory: &TheoryPresentation,
    op: &str,
    remaining: usize,
    budget: usize,
    by_size: &[Vec<Term>],
    partial: &mut Vec<Term>,
    out: &mut Vec<Term>,
) -> Result<(), RewriteError> {
    if remaining == 0 {
        if budget == 0 {
            let candidate = Term::node(op, partial.iter().cloned());
            if root_is_canonical(theory, &candidate) {
                out.push(candidate);
            }
        }
        return Ok(());
    }
    // Leave at least one node for each later slot.
    let max_here = budget.saturating_sub(remaining - 1);
    for size in 1..=max_here {
        for child in &by_size[size - 1] {
            partial.push(child.clone());
            build_args(theory, op, remaining - 1, budget - size, by_size, partial, out)?;
            partial.pop();
        }
    }
    Ok(())
}

/// With canonical children, a term is canonical iff no equation matches at
/// its root.
fn root_is_canonical(theory: &TheoryPresentation, t: &Term) -> bool {
    theory.equations.iter().all(|eq| match_pattern(&eq.lhs, t).is_none())
}
