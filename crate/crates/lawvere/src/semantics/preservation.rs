//! Product-preservation checks for each functor in the change-of-base
//! chain.
//!
//! Each checker compares the two ways around the square for a concrete
//! pair of inputs: apply the functor to the product, or take the product
//! of the functors' outputs, then test isomorphism. The graph-based free
//! category functors famously fail — a product of graphs has too few
//! edges to remember both projections' composites — and the comparison
//! counts make the failure quantitative:
//!
//! | functor | inputs | product first | functor first |
//! |---|---|---|---|
//! | free category on graphs | `g1 × g1` | 1 morphism | 5 morphisms |
//! | free category on reflexive graphs | `r1 × r1` | 7 morphisms | 5 morphisms |
//! | realization of simplicial sets | `embed(r1) ⊠ embed(r1)` | 5 morphisms | 5 morphisms ✓ |
//!
//! The repairs further down the chain — the posetal collapse and
//! connected components — preserve products outright, and their checkers
//! exist to witness that on any instance.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::category::{cat_iso, free_category_gph, free_category_rgph, product_cat, realize, CatError, PathCategory};
use super::graph::{product_gph, product_rgph, Graph, ReflexiveGraph};
use super::poset::{components, free_poset, poset_iso, product_pos, FinPoset};
use super::sset::{product_sset, TruncSSet};

/// The outcome of one preservation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    /// Which functor was checked.
    pub functor: String,
    /// Whether the two ways around the square are isomorphic.
    pub preserved: bool,
    /// Size of the functor-of-the-product side.
    pub left: usize,
    /// Size of the product-of-the-functors side.
    pub right: usize,
}

impl PreservationReport {
    fn new(functor: &str, preserved: bool, left: usize, right: usize) -> PreservationReport {
        PreservationReport { functor: functor.to_string(), preserved, left, right }
    }
}

impl core::fmt::Display for PreservationReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "{}: {} ({} vs {})",
            self.functor,
            if self.preserved { "preserves this product" } else { "breaks this product" },
            self.left,
            self.right
        )
    }
}

/// Free category on plain graphs: compares `F(a × b)` with `F(a) × F(b)`
/// by non-identity morphism count and isomorphism.
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{check_fgph, g1};
///
/// let report = check_fgph(&g1(), &g1(), 8).unwrap();
/// assert!(!report.preserved);
/// assert_eq!((report.left, report.right), (1, 5));
/// ```
pub fn check_fgph(a: &Graph, b: &Graph, fuel: usize) -> Result<PreservationReport, CatError> {
    let left = free_category_gph(&product_gph(a, b), fuel)?;
    let right = product_cat(&free_category_gph(a, fuel)?, &free_category_gph(b, fuel)?, fuel)?;
    Ok(PreservationReport::new(
        "free category on graphs",
        cat_iso(&left, &right)?,
        left.non_identity_count(),
        right.non_identity_count(),
    ))
}

/// Free category on reflexive graphs: compares `F′(a × b)` with
/// `F′(a) × F′(b)`.
pub fn check_frgph(
    a: &ReflexiveGraph,
    b: &ReflexiveGraph,
    fuel: usize,
) -> Result<PreservationReport, CatError> {
    let left = free_category_rgph(&product_rgph(a, b), fuel)?;
    let right = product_cat(&free_category_rgph(a, fuel)?, &free_category_rgph(b, fuel)?, fuel)?;
    Ok(PreservationReport::new(
        "free category on reflexive graphs",
        cat_iso(&left, &right)?,
        left.non_identity_count(),
        right.non_identity_count(),
    ))
}

/// Realization of 2-truncated simplicial sets: compares `|a ⊠ b|` with
/// `|a| × |b|`. The product simplicial set carries enough triangles to
/// commute every square, so this one succeeds where the graph functors
/// fail.
pub fn check_fc(a: &TruncSSet, b: &TruncSSet, fuel: usize) -> Result<PreservationReport, CatError> {
    let left = realize(&product_sset(a, b), fuel)?;
    let right = product_cat(&realize(a, fuel)?, &realize(b, fuel)?, fuel)?;
    Ok(PreservationReport::new(
        "realization of simplicial sets",
        cat_iso(&left, &right)?,
        left.non_identity_count(),
        right.non_identity_count(),
    ))
}

/// Posetal collapse: compares the collapse of `a × b` with the product
/// of the collapses, by element count and order-isomorphism. Requires
/// complete inputs (the product of categories does).
pub fn check_fp(
    a: &PathCategory,
    b: &PathCategory,
    fuel: usize,
) -> Result<PreservationReport, CatError> {
    let left = free_poset(&product_cat(a, b, fuel)?);
    let right = product_pos(&free_poset(a), &free_poset(b));
    Ok(PreservationReport::new(
        "posetal collapse",
        poset_iso(&left, &right),
        left.elements.len(),
        right.elements.len(),
    ))
}

/// Connected components: compares the components of `a × b` with pairs
/// of components, as partitions of the same carrier.
pub fn check_fs(a: &FinPoset, b: &FinPoset) -> PreservationReport {
    let product = product_pos(a, b);
    let left = components(&product);
    let (ca, cb) = (components(a), components(b));
    // The partition a pair of classes would induce on the product carrier.
    let nb = b.elements.len();
    let mut expected: Vec<Vec<usize>> = Vec::new();
    for ka in &ca.classes {
        for kb in &cb.classes {
            let mut class: Vec<usize> = ka
                .iter()
                .flat_map(|&i| kb.iter().map(move |&j| i * nb + j))
                .collect();
            class.sort_unstable();
            expected.push(class);
        }
    }
    expected.sort();
    let mut got = left.classes.clone();
    got.sort();
    PreservationReport::new(
        "connected components",
        got == expected,
        left.classes.len(),
        ca.classes.len() * cb.classes.len(),
    )
}

/// Runs the three counterexample rows on the canonical small inputs and
/// returns their reports in chain order. A convenience for demos.
pub fn counterexample_reports(fuel: usize) -> Result<Vec<PreservationReport>, CatError> {
    use super::graph::{g1, r1};
    use super::sset::rgraph_to_sset;
    let x = rgraph_to_sset(&r1());
    Ok(alloc::vec![
        check_fgph(&g1(), &g1(), fuel)?,
        check_frgph(&r1(), &r1(), fuel)?,
        check_fc(&x, &x, fuel)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::graph::{g1, r1};
    use crate::semantics::sset::rgraph_to_sset;

    #[test]
    fn the_three_counterexample_rows() {
        let reports = counterexample_reports(8).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(!reports[0].preserved);
        assert_eq!((reports[0].left, reports[0].right), (1, 5));
        assert!(!reports[1].preserved);
        assert_eq!((reports[1].left, reports[1].right), (7, 5));
        assert!(reports[2].preserved);
        assert_eq!((reports[2].left, reports[2].right), (5, 5));
    }

    #[test]
    fn reports_render_for_humans() {
        let r = check_fgph(&g1(), &g1(), 8).unwrap();
        let line = alloc::format!("{r}");
        assert!(line.contains("breaks this product"));
        assert!(line.contains("(1 vs 5)"));
    }

    #[test]
    fn posetal_collapse_preserves_products_here() {
        let f = free_category_rgph(&r1(), 8).unwrap();
        let report = check_fp(&f, &f, 8).unwrap();
        assert!(report.preserved);
        assert_eq!((report.left, report.right), (4, 4));

        let g = free_category_gph(&g1(), 8).unwrap();
        let report = check_fp(&g, &f, 8).unwrap();
        assert!(report.preserved);
    }

    #[test]
    fn components_preserve_products_here() {
        let cases = [
            (FinPoset::chain(3), FinPoset::discrete(["a", "b"].map(String::from).to_vec())),
            (FinPoset::discrete(["x"].map(String::from).to_vec()), FinPoset::chain(2)),
            (
                FinPoset::discrete(["a", "b", "c"].map(String::from).to_vec()),
                FinPoset::discrete(["d", "e"].map(String::from).to_vec()),
            ),
        ];
        for (a, b) in cases {
            let report = check_fs(&a, &b);
            assert!(report.preserved, "{report}");
            assert_eq!(report.left, report.right);
        }
    }

    #[test]
    fn realization_check_agrees_on_a_mixed_pair() {
        let point = crate::semantics::graph::ReflexiveGraph {
            vertices: alloc::vec![String::from("*")],
            edges: Vec::new(),
        };
        let report = check_fc(&rgraph_to_sset(&r1()), &rgraph_to_sset(&point), 8).unwrap();
        assert!(report.preserved);
        assert_eq!((report.left, report.right), (1, 1));
    }
}
