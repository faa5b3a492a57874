//! Directed multigraphs and reflexive graphs, their products, and the
//! reflexive-graph reading of a rewrite graph.
//!
//! Both kinds of graph index their vertices by position; the `String`
//! vertex entries are display names. A [`ReflexiveGraph`] stores only its
//! non-identity edges: by convention every vertex silently carries one
//! identity edge, which is what makes its products interesting — a
//! non-identity edge of `a × b` may move in one coordinate while standing
//! still (on an identity) in the other.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::rewrite::RewriteGraph;

/// A labelled directed edge between vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GEdge {
    /// Index of the source vertex.
    pub src: usize,
    /// Index of the target vertex.
    pub tgt: usize,
    /// Display label.
    pub label: String,
}

/// A directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    /// Vertex display names; the index is the vertex's identity.
    pub vertices: Vec<String>,
    /// All edges.
    pub edges: Vec<GEdge>,
}

/// A reflexive directed multigraph: one implicit identity edge per vertex,
/// plus the stored non-identity edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflexiveGraph {
    /// Vertex display names; the index is the vertex's identity.
    pub vertices: Vec<String>,
    /// The non-identity edges only.
    pub edges: Vec<GEdge>,
}

fn endpoints_ok(vertex_count: usize, edges: &[GEdge]) -> bool {
    edges.iter().all(|e| e.src < vertex_count && e.tgt < vertex_count)
}

impl Graph {
    /// True when every edge's endpoints name existing vertices.
    pub fn is_valid(&self) -> bool {
        endpoints_ok(self.vertices.len(), &self.edges)
    }
}

impl ReflexiveGraph {
    /// True when every edge's endpoints name existing vertices.
    pub fn is_valid(&self) -> bool {
        endpoints_ok(self.vertices.len(), &self.edges)
    }
}

/// The walking arrow in plain graphs: two vertices, one edge `e : 0 → 1`.
pub fn g1() -> Graph {
    Graph {
        vertices: ["0", "1"].map(String::from).to_vec(),
        edges: [GEdge { src: 0, tgt: 1, label: "e".to_string() }].to_vec(),
    }
}

/// The walking arrow in reflexive graphs: two vertices with their identity
/// edges, and one non-identity edge `e : 0 → 1`.
pub fn r1() -> ReflexiveGraph {
    ReflexiveGraph {
        vertices: ["0", "1"].map(String::from).to_vec(),
        edges: [GEdge { src: 0, tgt: 1, label: "e".to_string() }].to_vec(),
    }
}

/// Reads a rewrite graph as a reflexive graph: vertices keep their term
/// names, every rewrite edge becomes a non-identity edge labelled by its
/// redex(es), and the do-nothing steps are the implicit identities.
pub fn to_reflexive_graph(g: &RewriteGraph) -> ReflexiveGraph {
    ReflexiveGraph {
        vertices: g.vertices.iter().map(ToString::to_string).collect(),
        edges: g
            .edges
            .iter()
            .map(|e| GEdge { src: e.src, tgt: e.dst, label: e.label.to_string() })
            .collect(),
    }
}

fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Pair index in the row-major product vertex list.
fn pair(i: usize, j: usize, b_len: usize) -> usize {
    i * b_len + j
}

fn product_vertices(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for va in a {
        for vb in b {
            out.push(pair_name(va, vb));
        }
    }
    out
}

/// The product of plain graphs: vertices are pairs (row-major), and edges
/// are pairs of edges moving in both coordinates at once.
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{g1, product_gph};
///
/// let p = product_gph(&g1(), &g1());
/// assert_eq!(p.vertices.len(), 4);
/// // The only way to move is both coordinates at once: one diagonal edge.
/// assert_eq!(p.edges.len(), 1);
/// assert_eq!(p.edges[0].label, "(e,e)");
/// ```
pub fn product_gph(a: &Graph, b: &Graph) -> Graph {
    let nb = b.vertices.len();
    let mut edges = Vec::with_capacity(a.edges.len() * b.edges.len());
    for ea in &a.edges {
        for eb in &b.edges {
            edges.push(GEdge {
                src: pair(ea.src, eb.src, nb),
                tgt: pair(ea.tgt, eb.tgt, nb),
                label: pair_name(&ea.label, &eb.label),
            });
        }
    }
    Graph { vertices: product_vertices(&a.vertices, &b.vertices), edges }
}

/// The product of reflexive graphs: vertices are pairs (row-major); a
/// non-identity edge is a pair of edges not both identities — either both
/// coordinates move, or one moves while the other rests on an identity.
/// Edges are listed in that order: the moving pairs `(e,f)`, then
/// `(id_v, f)` sweeping `a`'s vertices, then `(e, id_w)` sweeping `b`'s.
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{product_rgph, r1};
///
/// let p = product_rgph(&r1(), &r1());
/// assert_eq!(p.vertices.len(), 4);
/// assert_eq!(p.edges.len(), 5);
/// ```
pub fn product_rgph(a: &ReflexiveGraph, b: &ReflexiveGraph) -> ReflexiveGraph {
    let nb = b.vertices.len();
    let mut edges = Vec::new();
    for ea in &a.edges {
        for eb in &b.edges {
            edges.push(GEdge {
                src: pair(ea.src, eb.src, nb),
                tgt: pair(ea.tgt, eb.tgt, nb),
                label: pair_name(&ea.label, &eb.label),
            });
        }
    }
    for (v, name) in a.vertices.iter().enumerate() {
        for eb in &b.edges {
            edges.push(GEdge {
                src: pair(v, eb.src, nb),
                tgt: pair(v, eb.tgt, nb),
                label: pair_name(&format!("id({name})"), &eb.label),
            });
        }
    }
    for ea in &a.edges {
        for (w, name) in b.vertices.iter().enumerate() {
            edges.push(GEdge {
                src: pair(ea.src, w, nb),
                tgt: pair(ea.tgt, w, nb),
                label: pair_name(&ea.label, &format!("id({name})")),
            });
        }
    }
    ReflexiveGraph { vertices: product_vertices(&a.vertices, &b.vertices), edges }
}
