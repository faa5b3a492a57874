//! Deterministic multi-threaded rewrite-graph generation.
//!
//! The engine's frontier hook fixes the contract: successor lists must
//! come back one per frontier term, in frontier order. Splitting the
//! frontier into contiguous chunks, expanding the chunks on scoped
//! threads, and concatenating the results in chunk order satisfies it, so
//! the generated graph is byte-for-byte the graph the sequential engine
//! builds — only the wall-clock differs.

use lawvere::rewrite::{
    generate_graph, generate_graph_with, successors, Bounds, EdgeLabel, Mode, RewriteError,
    RewriteGraph,
};
use lawvere::{Term, TheoryPresentation};

/// Generates the bounded rewrite graph of `seeds`, expanding each BFS
/// frontier on up to `threads` OS threads. `threads <= 1` is exactly
/// [`generate_graph`].
pub fn generate_graph_threaded(
    theory: &TheoryPresentation,
    seeds: &[Term],
    bounds: Bounds,
    mode: Mode,
    threads: usize,
) -> Result<RewriteGraph, RewriteError> {
    if threads <= 1 {
        return generate_graph(theory, seeds, bounds, mode);
    }
    generate_graph_with(theory, seeds, bounds, mode, |th, frontier, mode| {
        expand_frontier(th, frontier, mode, threads)
    })
}

type SuccessorLists = Vec<Vec<(EdgeLabel, Term)>>;

fn expand_frontier(
    theory: &TheoryPresentation,
    frontier: &[Term],
    mode: Mode,
    threads: usize,
) -> Result<SuccessorLists, RewriteError> {
    if frontier.is_empty() {
        return Ok(Vec::new());
    }
    let chunk = frontier.len().div_ceil(threads);
    let chunk_results: Vec<Result<SuccessorLists, RewriteError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = frontier
            .chunks(chunk)
            .map(|terms| {
                scope.spawn(move || {
                    terms.iter().map(|t| successors(theory, t, mode)).collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker thread panicked")).collect()
    });

    let mut out = Vec::with_capacity(frontier.len());
    for result in chunk_results {
        out.extend(result?);
    }
    Ok(out)
}
