//! Presentations of graph-enriched algebraic theories, and what they compute.
//!
//! A *theory presentation* consists of a signature of finitary operations,
//! a set of oriented structural equations (laws that define which terms are
//! *the same*), and a set of rewrite rules (directed steps that define how
//! terms *compute*). Keeping the two apart is the point: equations are
//! quotiented away eagerly by [`theory::TheoryPresentation::canonicalize`],
//! while rewrite rules become the labelled edges of a *rewrite graph* — the
//! graph of all bounded computations out of a set of seed terms.
//!
//! On top of the engine sits a chain of coarsenings that reads the same
//! rewrite graph at four levels of detail:
//!
//! 1. **small-step** — the rewrite graph itself, viewed as a reflexive graph
//!    (every term silently waits on its identity edge);
//! 2. **big-step** — the free category on that graph: composable runs of
//!    steps, with 2-simplex data imposing which runs are equal;
//! 3. **full-step** — the preorder collapse: only *reachability* survives,
//!    quotiented to a genuine partial order;
//! 4. **denotational** — connected components: terms are identified when any
//!    chain of computations relates them at all.
//!
//! Each coarsening is a change of enriching base (simplicial sets, categories,
//! posets, sets), implemented in [`semantics`]. The [`arities`] module checks
//! the finite arithmetic that makes natural-number arities meaningful in each
//! base, and [`calculi`] ships two worked presentations — the SKI combinator
//! calculus and its marked variant whose unary marker `R` turns full rewriting
//! into weak-head (lazy) evaluation — together with the translations between
//! them.
//!
//! The crate is `no_std`-compatible (it requires `alloc` only); everything
//! that touches files, processes, or output formats lives in the companion
//! CLI crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod arities;
pub mod calculi;
pub mod parse;
pub mod rewrite;
pub mod semantics;
pub mod term;
pub mod theory;

pub use term::{match_pattern, substitute, Position, Substitution, Term};
pub use theory::{Operation, RewriteRule, StructuralEquation, TheoryPresentation};
