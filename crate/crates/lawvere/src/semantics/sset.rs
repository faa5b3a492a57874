//! 2-truncated simplicial sets: points, edges, and triangles.
//!
//! A [`TruncSSet`] keeps three levels — `x0` (points), `x1` (edges), `x2`
//! (triangles) — together with the face maps `d0, d1 : X1 → X0` and
//! `d0, d1, d2 : X2 → X1` and the degeneracies `s0 : X0 → X1` and
//! `s0, s1 : X1 → X2`. Conventions:
//!
//! * an edge `α` runs from `d1(α)` (source) to `d0(α)` (target);
//! * a triangle `σ` on points `0, 1, 2` has `d2(σ)` the `0→1` edge,
//!   `d0(σ)` the `1→2` edge, and `d1(σ)` the long `0→2` edge — the shape
//!   that later lets realization read `σ` as the equation
//!   `d1(σ) = d0(σ) ∘ d2(σ)`.
//!
//! Truncating at triangles is enough here: everything downstream consumes
//! at most the triangle level, and the embedding of reflexive graphs
//! ([`rgraph_to_sset`]) only ever produces degenerate triangles anyway.
//! What makes the level worth carrying is [`product_sset`]: the levelwise
//! product of two embedded graphs contains *non-degenerate* triangles that
//! no reflexive graph sees, and they are exactly the data that repairs
//! product preservation for realization.
//!
//! Every constructor in this module yields structures on which
//! [`TruncSSet::violations`] is empty; consumers of arbitrary instances
//! (like realization) re-check and refuse violators.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::graph::ReflexiveGraph;

/// A 1-simplex: an edge from `d1` to `d0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex1 {
    /// Display name.
    pub name: String,
    /// Target point (face opposite vertex 1).
    pub d0: usize,
    /// Source point (face opposite vertex 0).
    pub d1: usize,
}

/// A 2-simplex: a triangle whose faces are edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex2 {
    /// Display name.
    pub name: String,
    /// The `1→2` edge (face opposite vertex 0).
    pub d0: usize,
    /// The long `0→2` edge (face opposite vertex 1).
    pub d1: usize,
    /// The `0→1` edge (face opposite vertex 2).
    pub d2: usize,
}

/// A 2-truncated simplicial set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSSet {
    /// Points.
    pub x0: Vec<String>,
    /// Edges with their two point faces.
    pub x1: Vec<Simplex1>,
    /// Triangles with their three edge faces.
    pub x2: Vec<Simplex2>,
    /// Degeneracy `s0 : X0 → X1`, the do-nothing edge on each point.
    pub s0_v: Vec<usize>,
    /// Degeneracy `s0 : X1 → X2` (collapse vertices 0,1).
    pub s0_e: Vec<usize>,
    /// Degeneracy `s1 : X1 → X2` (collapse vertices 1,2).
    pub s1_e: Vec<usize>,
}

impl TruncSSet {
    /// True for edges in the image of `s0 : X0 → X1`.
    pub fn edge_is_degenerate(&self, e: usize) -> bool {
        self.s0_v.contains(&e)
    }

    /// True for triangles in the image of `s0` or `s1 : X1 → X2`.
    pub fn triangle_is_degenerate(&self, t: usize) -> bool {
        self.s0_e.contains(&t) || self.s1_e.contains(&t)
    }

    /// Indices of the non-degenerate edges, in order.
    pub fn nondegenerate_edges(&self) -> Vec<usize> {
        (0..self.x1.len()).filter(|&e| !self.edge_is_degenerate(e)).collect()
    }

    /// Indices of the non-degenerate triangles, in order.
    pub fn nondegenerate_triangles(&self) -> Vec<usize> {
        (0..self.x2.len()).filter(|&t| !self.triangle_is_degenerate(t)).collect()
    }

    /// Every violated simplicial identity (and range error), as messages.
    /// An empty list means the structure is a genuine 2-truncated
    /// simplicial set.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (n0, n1, n2) = (self.x0.len(), self.x1.len(), self.x2.len());

        if self.s0_v.len() != n0 {
            out.push(format!("s0 on points has {} entries for {} points", self.s0_v.len(), n0));
        }
        if self.s0_e.len() != n1 || self.s1_e.len() != n1 {
            out.push(format!(
                "s0/s1 on edges have {}/{} entries for {} edges",
                self.s0_e.len(),
                self.s1_e.len(),
                n1
            ));
        }
        for (i, e) in self.x1.iter().enumerate() {
            if e.d0 >= n0 || e.d1 >= n0 {
                out.push(format!("edge {i} has a face outside X0"));
            }
        }
        for (i, t) in self.x2.iter().enumerate() {
            if t.d0 >= n1 || t.d1 >= n1 || t.d2 >= n1 {
                out.push(format!("triangle {i} has a face outside X1"));
            }
        }
        for (v, &e) in self.s0_v.iter().enumerate() {
            if e >= n1 {
                out.push(format!("s0({v}) lies outside X1"));
            }
        }
        for (e, (&a, &b)) in self.s0_e.iter().zip(&self.s1_e).enumerate() {
            if a >= n2 || b >= n2 {
                out.push(format!("a degeneracy of edge {e} lies outside X2"));
            }
        }
        if !out.is_empty() {
            // Range errors make the identity checks below meaningless.
            return out;
        }

        // d0 s0 = d1 s0 = id on points.
        for (v, &e) in self.s0_v.iter().enumerate() {
            let edge = &self.x1[e];
            if edge.d0 != v || edge.d1 != v {
                out.push(format!("s0({v}) is not a loop at {v}"));
            }
        }
        // On edges: the five degeneracy-face identities.
        for (e, edge) in self.x1.iter().enumerate() {
            let s0 = &self.x2[self.s0_e[e]];
            if s0.d0 != e {
                out.push(format!("d0(s0(edge {e})) ≠ edge {e}"));
            }
            if s0.d1 != e {
                out.push(format!("d1(s0(edge {e})) ≠ edge {e}"));
            }
            if s0.d2 != self.s0_v[edge.d1] {
                out.push(format!("d2(s0(edge {e})) ≠ s0(source of {e})"));
            }
            let s1 = &self.x2[self.s1_e[e]];
            if s1.d0 != self.s0_v[edge.d0] {
                out.push(format!("d0(s1(edge {e})) ≠ s0(target of {e})"));
            }
            if s1.d1 != e {
                out.push(format!("d1(s1(edge {e})) ≠ edge {e}"));
            }
            if s1.d2 != e {
                out.push(format!("d2(s1(edge {e})) ≠ edge {e}"));
            }
        }
        // s0 s0 = s1 s0 on points.
        for (v, &e) in self.s0_v.iter().enumerate() {
            if self.s0_e[e] != self.s1_e[e] {
                out.push(format!("s0(s0({v})) ≠ s1(s0({v}))"));
            }
        }
        // Face-face identities on triangles: the three edge faces glue into
        // a genuine triangle of points.
        for (t, tri) in self.x2.iter().enumerate() {
            let (d0, d1, d2) = (&self.x1[tri.d0], &self.x1[tri.d1], &self.x1[tri.d2]);
            if d2.d1 != d1.d1 {
                out.push(format!("triangle {t}: d1(d2) ≠ d1(d1) (vertex 0 disagrees)"));
            }
            if d2.d0 != d0.d1 {
                out.push(format!("triangle {t}: d0(d2) ≠ d1(d0) (vertex 1 disagrees)"));
            }
            if d1.d0 != d0.d0 {
                out.push(format!("triangle {t}: d0(d1) ≠ d0(d0) (vertex 2 disagrees)"));
            }
        }
        out
    }
}

/// Embeds a reflexive graph as a 2-truncated simplicial set.
///
/// Points are the vertices; edges are the non-identity edges followed by
/// one degenerate edge per vertex; every triangle is degenerate. The
/// triangle level is the formal closure of `X1` under `s0` and `s1`
/// subject to `s0∘s0 = s1∘s0`, so `|X2| = 2·|X1| − |X0|`.
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{r1, rgraph_to_sset};
///
/// let x = rgraph_to_sset(&r1());
/// assert_eq!((x.x0.len(), x.x1.len(), x.x2.len()), (2, 3, 4));
/// assert!(x.violations().is_empty());
/// assert_eq!(x.nondegenerate_triangles().len(), 0);
/// ```
pub fn rgraph_to_sset(r: &ReflexiveGraph) -> TruncSSet {
    let n0 = r.vertices.len();
    let ne = r.edges.len();
    let mut x1: Vec<Simplex1> = r
        .edges
        .iter()
        .map(|e| Simplex1 { name: e.label.clone(), d0: e.tgt, d1: e.src })
        .collect();
    for (v, name) in r.vertices.iter().enumerate() {
        x1.push(Simplex1 { name: format!("s0({name})"), d0: v, d1: v });
    }
    let s0_v: Vec<usize> = (0..n0).map(|v| ne + v).collect();

    let n1 = x1.len();
    let mut x2 = Vec::with_capacity(2 * n1 - n0);
    let mut s0_e = Vec::with_capacity(n1);
    let mut s1_e = Vec::with_capacity(n1);
    // First the s0-degeneracies of every edge …
    for (e, edge) in x1.iter().enumerate() {
        x2.push(Simplex2 {
            name: format!("s0({})", edge.name),
            d0: e,
            d1: e,
            d2: s0_v[edge.d1],
        });
        s0_e.push(e);
    }
    // … then the s1-degeneracies of the non-degenerate edges; on a
    // degenerate edge s1 coincides with s0.
    for (e, edge) in x1.iter().enumerate() {
        if e < ne {
            s1_e.push(x2.len());
            x2.push(Simplex2 {
                name: format!("s1({})", edge.name),
                d0: s0_v[edge.d0],
                d1: e,
                d2: e,
            });
        } else {
            s1_e.push(s0_e[e]);
        }
    }

    TruncSSet { x0: r.vertices.clone(), x1, x2, s0_v, s0_e, s1_e }
}

fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// The levelwise product: points, edges, and triangles are pairs, with
/// faces and degeneracies acting coordinatewise.
///
/// This is where genuinely 2-dimensional data appears out of nothing: the
/// product of two embedded walking arrows has two non-degenerate
/// triangles (a degenerate-in-one-coordinate pairing each way), and their
/// realization forces the two ways around the square to agree.
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{product_sset, r1, rgraph_to_sset};
///
/// let x = rgraph_to_sset(&r1());
/// let p = product_sset(&x, &x);
/// assert!(p.violations().is_empty());
/// assert_eq!((p.x0.len(), p.x1.len(), p.x2.len()), (4, 9, 16));
/// assert_eq!(p.nondegenerate_edges().len(), 5);
/// assert_eq!(p.nondegenerate_triangles().len(), 2);
/// ```
pub fn product_sset(a: &TruncSSet, b: &TruncSSet) -> TruncSSet {
    let (a1, b1, b0) = (a.x1.len(), b.x1.len(), b.x0.len());
    let p0 = |i: usize, j: usize| i * b0 + j;
    let p1 = |i: usize, j: usize| i * b1 + j;
    let p2 = |i: usize, j: usize| i * b.x2.len() + j;

    let mut x0 = Vec::with_capacity(a.x0.len() * b0);
    for va in &a.x0 {
        for vb in &b.x0 {
            x0.push(pair_name(va, vb));
        }
    }
    let mut x1 = Vec::with_capacity(a1 * b1);
    for ea in &a.x1 {
        for eb in &b.x1 {
            x1.push(Simplex1 {
                name: pair_name(&ea.name, &eb.name),
                d0: p0(ea.d0, eb.d0),
                d1: p0(ea.d1, eb.d1),
            });
        }
    }
    let mut x2 = Vec::with_capacity(a.x2.len() * b.x2.len());
    for ta in &a.x2 {
        for tb in &b.x2 {
            x2.push(Simplex2 {
                name: pair_name(&ta.name, &tb.name),
                d0: p1(ta.d0, tb.d0),
                d1: p1(ta.d1, tb.d1),
                d2: p1(ta.d2, tb.d2),
            });
        }
    }
    let mut s0_v = Vec::with_capacity(x0.len());
    for &sa in &a.s0_v {
        for &sb in &b.s0_v {
            s0_v.push(p1(sa, sb));
        }
    }
    let mut s0_e = Vec::with_capacity(x1.len());
    let mut s1_e = Vec::with_capacity(x1.len());
    for &sa in &a.s0_e {
        for &sb in &b.s0_e {
            s0_e.push(p2(sa, sb));
        }
    }
    for &sa in &a.s1_e {
        for &sb in &b.s1_e {
            s1_e.push(p2(sa, sb));
        }
    }
    TruncSSet { x0, x1, x2, s0_v, s0_e, s1_e }
}
