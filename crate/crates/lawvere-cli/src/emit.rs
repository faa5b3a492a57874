//! DOT and JSON emission for the artifact types the CLI prints.
//!
//! The JSON shapes are serde structs so that output is deterministic and
//! round-trips exactly. The graph schema is
//! `{"vertices":[{"id","term"}],"edges":[{"src","dst","rule","pos"}],"truncated"}`;
//! an edge that fires several redexes at once (parallel mode) additionally
//! carries a `"redexes"` array listing each `{"rule","pos"}` pair, with the
//! top-level `rule` set to `"parallel"` and `pos` empty. Categories,
//! posets, and partitions follow the same flat style with `relations`,
//! `order`, and `classes` fields.

use lawvere::rewrite::{EdgeLabel, RewriteGraph};
use lawvere::semantics::{FinPoset, Partition, PathCategory};
use serde::{Deserialize, Serialize};

/// A rewrite-graph vertex: its index and its canonical term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    /// Vertex index.
    pub id: usize,
    /// The canonical term, rendered.
    pub term: String,
}

/// One redex of a parallel edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedexJson {
    /// Rule name.
    pub rule: String,
    /// Position the rule fired at.
    pub pos: Vec<usize>,
}

/// A rewrite-graph edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    /// Source vertex index.
    pub src: usize,
    /// Target vertex index.
    pub dst: usize,
    /// Rule name for a single step, `"parallel"` for a simultaneous one.
    pub rule: String,
    /// Position for a single step, empty for a simultaneous one.
    pub pos: Vec<usize>,
    /// The individual redexes of a simultaneous step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub redexes: Option<Vec<RedexJson>>,
}

/// A bounded rewrite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    /// Vertices in canonical term order.
    pub vertices: Vec<VertexJson>,
    /// Edges sorted by (source, label, target).
    pub edges: Vec<EdgeJson>,
    /// Whether any bound cut the graph off.
    pub truncated: bool,
}

/// A named object or element, by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedJson {
    /// Index.
    pub id: usize,
    /// Display name.
    pub name: String,
}

/// A generating arrow of a category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    /// Generator index.
    pub id: usize,
    /// Display name.
    pub name: String,
    /// Source object index.
    pub src: usize,
    /// Target object index.
    pub tgt: usize,
}

/// A relation between two parallel generator paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    /// Common source object of both sides.
    pub src: usize,
    /// Left side, as generator indices in diagrammatic order.
    pub lhs: Vec<usize>,
    /// Right side, likewise.
    pub rhs: Vec<usize>,
}

/// A finitely presented category with its morphism count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    /// Objects.
    pub objects: Vec<NamedJson>,
    /// Generating arrows.
    pub generators: Vec<GeneratorJson>,
    /// Imposed path equalities.
    pub relations: Vec<RelationJson>,
    /// Whether the morphism table is provably exhaustive.
    pub complete: bool,
    /// Number of morphism classes enumerated (identities included).
    pub morphisms: usize,
}

/// One strict comparability of a poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderPairJson {
    /// The smaller element's index.
    pub below: usize,
    /// The larger element's index.
    pub above: usize,
}

/// A finite poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    /// Elements.
    pub elements: Vec<NamedJson>,
    /// Every strict pair `below < above`, sorted.
    pub order: Vec<OrderPairJson>,
}

/// A partition of a named carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    /// Carrier elements.
    pub carrier: Vec<NamedJson>,
    /// Disjoint classes of carrier indices, each sorted.
    pub classes: Vec<Vec<usize>>,
}

/// Converts a rewrite graph into its JSON shape.
pub fn graph_json(g: &RewriteGraph) -> GraphJson {
    GraphJson {
        vertices: g
            .vertices
            .iter()
            .enumerate()
            .map(|(id, t)| VertexJson { id, term: t.to_string() })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|e| match &e.label {
                EdgeLabel::Single(r) => EdgeJson {
                    src: e.src,
                    dst: e.dst,
                    rule: r.rule.clone(),
                    pos: r.position.clone(),
                    redexes: None,
                },
                EdgeLabel::Parallel(rs) => EdgeJson {
                    src: e.src,
                    dst: e.dst,
                    rule: "parallel".to_string(),
                    pos: Vec::new(),
                    redexes: Some(
                        rs.iter()
                            .map(|r| RedexJson { rule: r.rule.clone(), pos: r.position.clone() })
                            .collect(),
                    ),
                },
            })
            .collect(),
        truncated: g.truncated,
    }
}

/// Converts a path category into its JSON shape.
pub fn category_json(c: &PathCategory) -> CategoryJson {
    CategoryJson {
        objects: named(&c.objects),
        generators: c
            .generators
            .iter()
            .enumerate()
            .map(|(id, g)| GeneratorJson { id, name: g.name.clone(), src: g.src, tgt: g.tgt })
            .collect(),
        relations: c
            .relations
            .iter()
            .map(|(l, r)| RelationJson { src: l.src, lhs: l.gens.clone(), rhs: r.gens.clone() })
            .collect(),
        complete: c.complete,
        morphisms: c.morphisms.len(),
    }
}

/// Converts a poset into its JSON shape.
pub fn poset_json(p: &FinPoset) -> PosetJson {
    let mut order = Vec::new();
    for (j, row) in p.leq.iter().enumerate() {
        for (i, &le) in row.iter().enumerate() {
            if le && i != j {
                order.push(OrderPairJson { below: j, above: i });
            }
        }
    }
    order.sort_by_key(|o| (o.below, o.above));
    PosetJson { elements: named(&p.elements), order }
}

/// Converts a partition into its JSON shape.
pub fn partition_json(p: &Partition) -> PartitionJson {
    PartitionJson { carrier: named(&p.carrier), classes: p.classes.clone() }
}

fn named(names: &[String]) -> Vec<NamedJson> {
    names.iter().enumerate().map(|(id, n)| NamedJson { id, name: n.clone() }).collect()
}

/// Serializes any of the JSON shapes, pretty-printed with a trailing
/// newline, byte-identical for equal inputs.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

/// Escapes a string for use inside a double-quoted DOT identifier.
fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders a rewrite graph in DOT, one node per vertex labelled with its
/// term and one arrow per edge labelled `rule@[position]`.
pub fn graph_dot(g: &RewriteGraph) -> String {
    let mut out = String::from("digraph rewrite {\n");
    if g.truncated {
        out.push_str("  // truncated: true\n");
    }
    for (i, t) in g.vertices.iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, dot_escape(&t.to_string())));
    }
    for e in &g.edges {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"];\n",
            e.src,
            e.dst,
            dot_escape(&e.label.to_string())
        ));
    }
    out.push_str("}\n");
    out
}

/// Renders a path category in DOT: objects as nodes, generators as
/// arrows, relations as comments.
pub fn category_dot(c: &PathCategory) -> String {
    let mut out = String::from("digraph category {\n");
    out.push_str(&format!("  // complete: {}\n", c.complete));
    for (i, name) in c.objects.iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, dot_escape(name)));
    }
    for g in &c.generators {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"];\n",
            g.src,
            g.tgt,
            dot_escape(&g.name)
        ));
    }
    for (l, r) in &c.relations {
        let side = |p: &lawvere::semantics::Path| {
            if p.gens.is_empty() {
                "id".to_string()
            } else {
                p.gens
                    .iter()
                    .map(|&g| c.generators[g].name.clone())
                    .collect::<Vec<_>>()
                    .join(";")
            }
        };
        out.push_str(&format!("  // relation: {} = {}\n", side(l), side(r)));
    }
    out.push_str("}\n");
    out
}

/// Renders a poset in DOT as its Hasse diagram, arrows pointing from a
/// covering element down to the element it covers (the direction
/// computation moves).
pub fn poset_dot(p: &FinPoset) -> String {
    let n = p.elements.len();
    let mut out = String::from("digraph poset {\n");
    for (i, name) in p.elements.iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, dot_escape(name)));
    }
    // x covers y: y < x with nothing strictly between.
    for x in 0..n {
        for y in 0..n {
            let strictly_below = |a: usize, b: usize| a != b && p.leq[a][b];
            if strictly_below(y, x)
                && !(0..n).any(|z| strictly_below(y, z) && strictly_below(z, x))
            {
                out.push_str(&format!("  n{x} -> n{y};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Renders a partition in DOT: one cluster per class.
pub fn partition_dot(p: &Partition) -> String {
    let mut out = String::from("digraph partition {\n");
    for (k, class) in p.classes.iter().enumerate() {
        out.push_str(&format!("  subgraph cluster_{k} {{\n"));
        out.push_str(&format!("    label=\"class {k}\";\n"));
        for &i in class {
            out.push_str(&format!("    n{} [label=\"{}\"];\n", i, dot_escape(&p.carrier[i])));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
