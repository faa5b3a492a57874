//! The change-of-base chain: one rewrite graph, four readings.
//!
//! A bounded rewrite graph is a *small-step* semantics: its vertices are
//! canonical terms and its edges single computation steps. This module
//! re-reads that data at successively coarser levels, each one a change of
//! the enriching base:
//!
//! | level        | base             | construction                        |
//! |--------------|------------------|-------------------------------------|
//! | small-step   | reflexive graphs | [`graph::to_reflexive_graph`]        |
//! | big-step     | categories       | [`category::free_category_rgph`], or |
//! |              |                  | [`category::realize`] after          |
//! |              |                  | [`sset::rgraph_to_sset`]             |
//! | full-step    | posets           | [`poset::free_poset`]                |
//! | denotational | sets             | [`poset::components`]                |
//!
//! The subtlety the module exists to demonstrate: **not every plausible
//! coarsening is a change of base.** A change of base must preserve finite
//! products, and the free category on plain directed graphs famously does
//! not: the product of two copies of the walking arrow [`graph::g1`] has a
//! single diagonal edge, so its free category has one non-identity
//! morphism, while the product of the free categories has five. Reflexive
//! graphs ([`graph::r1`]) fail differently — seven against five, with two
//! non-commuting triangles. Embedding reflexive graphs into 2-truncated
//! simplicial sets ([`sset`]) repairs this: the product acquires two
//! non-degenerate triangles whose realization forces both composites to
//! equal the diagonal, and [`category::realize`] preserves the product on
//! the nose. [`preservation`] packages these checks as one-call reports.

pub mod category;
pub mod graph;
pub mod poset;
pub mod preservation;
pub mod sset;

pub use category::{
    cat_iso, free_category_gph, free_category_rgph, product_cat, realize, CatError, CatGenerator,
    MorphismClass, Path, PathCategory,
};
pub use graph::{g1, product_gph, product_rgph, r1, to_reflexive_graph, GEdge, Graph, ReflexiveGraph};
pub use poset::{components, free_poset, poset_iso, product_pos, FinPoset, Partition};
pub use preservation::{
    check_fc, check_fgph, check_fp, check_frgph, check_fs, counterexample_reports,
    PreservationReport,
};
pub use sset::{product_sset, rgraph_to_sset, Simplex1, Simplex2, TruncSSet};
