//! Finitely presented path categories and the three category-valued
//! constructions: free categories on graphs, free categories on reflexive
//! graphs, and realization of 2-truncated simplicial sets.
//!
//! A [`PathCategory`] is a presentation — objects, generating arrows, and
//! relations between parallel generator paths — together with a computed
//! morphism table: every composable path up to a length bound, grouped
//! into equivalence classes by the congruence the relations generate. The
//! `complete` flag records whether the enumeration provably saw every
//! path (it did exactly when some length yielded no paths at all, which
//! is guaranteed for acyclic generator graphs); on incomplete tables the
//! classes are still sound but may be unfinished, and the operations that
//! need exactness ([`product_cat`], [`cat_iso`]) refuse to run.
//!
//! Composition is path concatenation, so associativity and identities
//! (the empty paths) hold by construction; the congruence closure only
//! ever has to decide which paths are *equal*.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::graph::{Graph, ReflexiveGraph};
use super::sset::TruncSSet;

/// Hard cap on enumerated paths per category, a backstop against cyclic
/// generator graphs with huge fuel. Hitting it marks the table incomplete.
pub const MAX_PATHS: usize = 50_000;

/// A generating arrow of a path category.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CatGenerator {
    /// Display name.
    pub name: String,
    /// Source object index.
    pub src: usize,
    /// Target object index.
    pub tgt: usize,
}

/// A composable path of generators. `gens` lists generator indices in
/// diagrammatic order (first arrow first); the empty path at an object is
/// that object's identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    /// The object the path starts at.
    pub src: usize,
    /// Generator indices, composable in order.
    pub gens: Vec<usize>,
}

/// One morphism of the presented category: an equivalence class of
/// enumerated paths. `paths[0]` (the earliest-enumerated, hence shortest)
/// is the class representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismClass {
    /// Source object.
    pub src: usize,
    /// Target object.
    pub tgt: usize,
    /// All enumerated member paths, in enumeration order.
    pub paths: Vec<Path>,
}

/// A finitely presented category with a computed morphism table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCategory {
    /// Object display names; the index is the object's identity.
    pub objects: Vec<String>,
    /// Generating arrows.
    pub generators: Vec<CatGenerator>,
    /// Imposed equalities between parallel generator paths.
    pub relations: Vec<(Path, Path)>,
    /// Whether the path enumeration provably exhausted all paths.
    pub complete: bool,
    /// The morphism classes, ordered by earliest member.
    pub morphisms: Vec<MorphismClass>,
    /// Class index of every enumerated path.
    class_by_path: BTreeMap<(usize, Vec<usize>), usize>,
}

/// Errors from the category constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatError {
    /// An exact operation was asked of an incomplete morphism table.
    Incomplete {
        /// What needed completeness.
        context: String,
    },
    /// An input structure was malformed (dangling indices, non-parallel
    /// relation sides, …).
    InvalidInput {
        /// What was wrong.
        message: String,
    },
    /// A simplicial-set input violated the simplicial identities.
    InvalidSset {
        /// The violations, as reported by the structure itself.
        violations: Vec<String>,
    },
}

impl fmt::Display for CatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatError::Incomplete { context } => {
                write!(f, "{context} requires a complete morphism table")
            }
            CatError::InvalidInput { message } => write!(f, "invalid input: {message}"),
            CatError::InvalidSset { violations } => {
                write!(f, "simplicial identities violated:")?;
                for v in violations {
                    write!(f, "\n  {v}")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for CatError {}

/// Union-find over path indices.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two were in different classes.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Deterministic choice: the smaller index becomes the root.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl PathCategory {
    /// Builds the category presented by `objects`, `generators`, and
    /// `relations`, enumerating paths up to length `fuel` (and at most
    /// [`MAX_PATHS`] in total) and closing them under the congruence.
    pub fn from_presentation(
        objects: Vec<String>,
        generators: Vec<CatGenerator>,
        relations: Vec<(Path, Path)>,
        fuel: usize,
    ) -> Result<PathCategory, CatError> {
        for (i, g) in generators.iter().enumerate() {
            if g.src >= objects.len() || g.tgt >= objects.len() {
                return Err(CatError::InvalidInput {
                    message: format!("generator {i} ({}) has a dangling endpoint", g.name),
                });
            }
        }
        let path_endpoints = |p: &Path| -> Result<(usize, usize), CatError> {
            if p.src >= objects.len() {
                return Err(CatError::InvalidInput {
                    message: format!("relation path starts at unknown object {}", p.src),
                });
            }
            let mut here = p.src;
            for &g in &p.gens {
                let gen = generators.get(g).ok_or_else(|| CatError::InvalidInput {
                    message: format!("relation path uses unknown generator {g}"),
                })?;
                if gen.src != here {
                    return Err(CatError::InvalidInput {
                        message: format!("relation path is not composable at generator {}", gen.name),
                    });
                }
                here = gen.tgt;
            }
            Ok((p.src, here))
        };
        for (l, r) in &relations {
            if path_endpoints(l)? != path_endpoints(r)? {
                return Err(CatError::InvalidInput {
                    message: "relation sides are not parallel".to_string(),
                });
            }
        }

        // Path enumeration, breadth-first by length.
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
        for (i, g) in generators.iter().enumerate() {
            out_edges[g.src].push(i);
        }
        let mut paths: Vec<Path> = Vec::new();
        let mut targets: Vec<usize> = Vec::new();
        let mut index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let push = |paths: &mut Vec<Path>,
                        targets: &mut Vec<usize>,
                        index: &mut BTreeMap<(usize, Vec<usize>), usize>,
                        p: Path,
                        tgt: usize| {
            index.insert((p.src, p.gens.clone()), paths.len());
            paths.push(p);
            targets.push(tgt);
        };
        for obj in 0..objects.len() {
            push(&mut paths, &mut targets, &mut index, Path { src: obj, gens: Vec::new() }, obj);
        }
        let mut complete = true;
        let mut frontier: Vec<usize> = (0..paths.len()).collect();
        let mut capped = false;
        for _ in 0..fuel {
            let mut next = Vec::new();
            'extend: for &p in &frontier {
                for &g in &out_edges[targets[p]] {
                    if paths.len() >= MAX_PATHS {
                        capped = true;
                        break 'extend;
                    }
                    let mut gens = paths[p].gens.clone();
                    gens.push(g);
                    let new = Path { src: paths[p].src, gens };
                    next.push(paths.len());
                    push(&mut paths, &mut targets, &mut index, new, generators[g].tgt);
                }
            }
            frontier = next;
            if capped {
                complete = false;
                break;
            }
            if frontier.is_empty() {
                break;
            }
        }
        // Fuel ran out with extendable paths still on the frontier?
        if !capped && frontier.iter().any(|&p| !out_edges[targets[p]].is_empty()) {
            complete = false;
        }

        // Congruence closure over the enumerated set.
        let mut uf = UnionFind::new(paths.len());
        let mut oriented: Vec<(&Path, &Path)> = Vec::new();
        for (l, r) in &relations {
            oriented.push((l, r));
            oriented.push((r, l));
            match (index.get(&(l.src, l.gens.clone())), index.get(&(r.src, r.gens.clone()))) {
                (Some(&a), Some(&b)) => {
                    uf.union(a, b);
                }
                // A relation side beyond the enumerated horizon: the table
                // cannot be trusted to be fully closed.
                _ => complete = false,
            }
        }
        let object_at = |p: &Path, offset: usize| -> usize {
            if offset == 0 {
                p.src
            } else {
                generators[p.gens[offset - 1]].tgt
            }
        };
        let mut changed = true;
        while changed {
            changed = false;
            // Indexing, not iteration: the body rewrites `paths[p_idx]`.
            #[allow(clippy::needless_range_loop)]
            for p_idx in 0..paths.len() {
                for &(l, r) in &oriented {
                    let p = &paths[p_idx];
                    let k = l.gens.len();
                    if k > p.gens.len() {
                        continue;
                    }
                    for offset in 0..=(p.gens.len() - k) {
                        let matches = if k == 0 {
                            object_at(p, offset) == l.src
                        } else {
                            p.gens[offset..offset + k] == l.gens[..]
                        };
                        if !matches {
                            continue;
                        }
                        let mut gens = Vec::with_capacity(p.gens.len() - k + r.gens.len());
                        gens.extend_from_slice(&p.gens[..offset]);
                        gens.extend_from_slice(&r.gens);
                        gens.extend_from_slice(&p.gens[offset + k..]);
                        if let Some(&q_idx) = index.get(&(p.src, gens)) {
                            if uf.union(p_idx, q_idx) {
                                changed = true;
                            }
                        }
                    }
                }
            }
        }

        // Classes, ordered by earliest member.
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..paths.len() {
            members.entry(uf.find(i)).or_default().push(i);
        }
        let mut class_lists: Vec<Vec<usize>> = members.into_values().collect();
        class_lists.sort_by_key(|m| m[0]);
        let mut class_by_path = BTreeMap::new();
        let mut morphisms = Vec::with_capacity(class_lists.len());
        for (c, list) in class_lists.iter().enumerate() {
            for &i in list {
                class_by_path.insert((paths[i].src, paths[i].gens.clone()), c);
            }
            morphisms.push(MorphismClass {
                src: paths[list[0]].src,
                tgt: targets[list[0]],
                paths: list.iter().map(|&i| paths[i].clone()).collect(),
            });
        }

        Ok(PathCategory { objects, generators, relations, complete, morphisms, class_by_path })
    }

    /// The object a path ends at.
    pub fn path_target(&self, p: &Path) -> usize {
        p.gens.last().map_or(p.src, |&g| self.generators[g].tgt)
    }

    /// The class of an enumerated path, if it was enumerated.
    pub fn class_of(&self, p: &Path) -> Option<usize> {
        self.class_by_path.get(&(p.src, p.gens.clone())).copied()
    }

    /// The identity morphism on an object.
    pub fn identity_class(&self, obj: usize) -> Option<usize> {
        self.class_of(&Path { src: obj, gens: Vec::new() })
    }

    /// True when the class contains an empty path.
    pub fn is_identity_class(&self, c: usize) -> bool {
        self.morphisms[c].paths.iter().any(|p| p.gens.is_empty())
    }

    /// Number of classes that are not identities.
    pub fn non_identity_count(&self) -> usize {
        (0..self.morphisms.len()).filter(|&c| !self.is_identity_class(c)).count()
    }

    /// The classes from `src` to `tgt`, in class order.
    pub fn hom(&self, src: usize, tgt: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&c| self.morphisms[c].src == src && self.morphisms[c].tgt == tgt)
            .collect()
    }

    /// Composes two classes (`f` then `g`), by concatenating
    /// representatives. `None` when the endpoints do not meet or the
    /// composite was never enumerated (possible only on incomplete
    /// tables).
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        let (mf, mg) = (&self.morphisms[f], &self.morphisms[g]);
        if mf.tgt != mg.src {
            return None;
        }
        let mut gens = mf.paths[0].gens.clone();
        gens.extend_from_slice(&mg.paths[0].gens);
        self.class_of(&Path { src: mf.paths[0].src, gens })
    }
}

/// The free category on a directed multigraph: objects are vertices,
/// generators are edges, and there are no relations — two paths are equal
/// only if they are the same path.
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{free_category_gph, g1, product_gph};
///
/// let c = free_category_gph(&product_gph(&g1(), &g1()), 8).unwrap();
/// assert!(c.complete);
/// assert_eq!(c.non_identity_count(), 1);
/// ```
pub fn free_category_gph(g: &Graph, fuel: usize) -> Result<PathCategory, CatError> {
    if !g.is_valid() {
        return Err(CatError::InvalidInput { message: "graph has dangling edges".to_string() });
    }
    PathCategory::from_presentation(
        g.vertices.clone(),
        g.edges
            .iter()
            .map(|e| CatGenerator { name: e.label.clone(), src: e.src, tgt: e.tgt })
            .collect(),
        Vec::new(),
        fuel,
    )
}

/// The free category on a reflexive graph: as [`free_category_gph`], but
/// the identity edges become the identity morphisms (they are simply not
/// generators), so a path through an identity edge *is* the path with
/// that step omitted.
pub fn free_category_rgph(r: &ReflexiveGraph, fuel: usize) -> Result<PathCategory, CatError> {
    if !r.is_valid() {
        return Err(CatError::InvalidInput { message: "graph has dangling edges".to_string() });
    }
    PathCategory::from_presentation(
        r.vertices.clone(),
        r.edges
            .iter()
            .map(|e| CatGenerator { name: e.label.clone(), src: e.src, tgt: e.tgt })
            .collect(),
        Vec::new(),
        fuel,
    )
}

/// Realization of a 2-truncated simplicial set: the free category on its
/// non-degenerate edges, modulo one relation per triangle `σ` —
///
/// ```text
/// d1(σ) = d0(σ) ∘ d2(σ)
/// ```
///
/// — with degenerate edge faces read as identities. Relations whose two
/// sides are literally the same path are dropped (every triangle of an
/// embedded reflexive graph yields only those, which is why realization
/// agrees with [`free_category_rgph`] there).
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{product_sset, r1, realize, rgraph_to_sset};
///
/// let x = rgraph_to_sset(&r1());
/// let c = realize(&product_sset(&x, &x), 8).unwrap();
/// assert_eq!(c.objects.len(), 4);
/// // The two non-degenerate triangles force both squares' composites
/// // onto the diagonal: five non-identity morphisms, exactly as in the
/// // product of the realized factors.
/// assert_eq!(c.non_identity_count(), 5);
/// ```
pub fn realize(x: &TruncSSet, fuel: usize) -> Result<PathCategory, CatError> {
    let violations = x.violations();
    if !violations.is_empty() {
        return Err(CatError::InvalidSset { violations });
    }
    let mut gen_of_edge: BTreeMap<usize, usize> = BTreeMap::new();
    let mut generators = Vec::new();
    for e in x.nondegenerate_edges() {
        gen_of_edge.insert(e, generators.len());
        let edge = &x.x1[e];
        generators.push(CatGenerator { name: edge.name.clone(), src: edge.d1, tgt: edge.d0 });
    }
    let edge_path = |edges: &[usize]| -> Path {
        let src = x.x1[edges[0]].d1;
        let gens = edges.iter().filter_map(|e| gen_of_edge.get(e).copied()).collect();
        Path { src, gens }
    };
    let mut relations = Vec::new();
    for t in &x.x2 {
        // Both sides start at the triangle's vertex 0 = source of d2.
        let lhs = Path { src: x.x1[t.d2].d1, gens: edge_path(&[t.d1]).gens };
        let rhs = edge_path(&[t.d2, t.d0]);
        let rhs = Path { src: x.x1[t.d2].d1, ..rhs };
        if lhs != rhs {
            relations.push((lhs, rhs));
        }
    }
    PathCategory::from_presentation(x.x0.clone(), generators, relations, fuel)
}

fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// The product of two presented categories, as a presentation: objects
/// are pairs; generators move one coordinate while the other holds an
/// identity; relations are the commuting squares between the two kinds of
/// generator plus both factors' relations lifted at every object of the
/// other factor. Requires complete inputs (an unfinished factor table
/// could silently misrepresent the product).
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{free_category_rgph, product_cat, r1};
///
/// let f = free_category_rgph(&r1(), 8).unwrap();
/// let p = product_cat(&f, &f, 8).unwrap();
/// // Four sides plus one diagonal class: the squares commute.
/// assert_eq!(p.non_identity_count(), 5);
/// ```
pub fn product_cat(
    a: &PathCategory,
    b: &PathCategory,
    fuel: usize,
) -> Result<PathCategory, CatError> {
    if !a.complete || !b.complete {
        return Err(CatError::Incomplete { context: "product_cat".to_string() });
    }
    let (na, nb) = (a.objects.len(), b.objects.len());
    let pobj = |i: usize, j: usize| i * nb + j;
    let mut objects = Vec::with_capacity(na * nb);
    for va in &a.objects {
        for vb in &b.objects {
            objects.push(pair_name(va, vb));
        }
    }
    // First the a-movers (g, id_w), g-major; then the b-movers (id_v, h).
    let g_id = |g: usize, w: usize| g * nb + w;
    let id_h = |v: usize, h: usize| a.generators.len() * nb + v * b.generators.len() + h;
    let mut generators = Vec::new();
    for g in &a.generators {
        for (w, wname) in b.objects.iter().enumerate() {
            generators.push(CatGenerator {
                name: pair_name(&g.name, &format!("id({wname})")),
                src: pobj(g.src, w),
                tgt: pobj(g.tgt, w),
            });
        }
    }
    for (v, vname) in a.objects.iter().enumerate() {
        for h in &b.generators {
            generators.push(CatGenerator {
                name: pair_name(&format!("id({vname})"), &h.name),
                src: pobj(v, h.src),
                tgt: pobj(v, h.tgt),
            });
        }
    }
    let mut relations = Vec::new();
    // Commuting squares.
    for (gi, g) in a.generators.iter().enumerate() {
        for (hi, h) in b.generators.iter().enumerate() {
            let src = pobj(g.src, h.src);
            relations.push((
                Path { src, gens: vec![g_id(gi, h.src), id_h(g.tgt, hi)] },
                Path { src, gens: vec![id_h(g.src, hi), g_id(gi, h.tgt)] },
            ));
        }
    }
    // Lifted relations of each factor.
    for (l, r) in &a.relations {
        for w in 0..nb {
            let lift = |p: &Path| Path {
                src: pobj(p.src, w),
                gens: p.gens.iter().map(|&g| g_id(g, w)).collect(),
            };
            relations.push((lift(l), lift(r)));
        }
    }
    for (l, r) in &b.relations {
        for v in 0..na {
            let lift = |p: &Path| Path {
                src: pobj(v, p.src),
                gens: p.gens.iter().map(|&h| id_h(v, h)).collect(),
            };
            relations.push((lift(l), lift(r)));
        }
    }
    PathCategory::from_presentation(objects, generators, relations, fuel)
}

/// Decides isomorphism of two complete path categories by exhaustive
/// search: an object bijection compatible with hom-set sizes, then
/// hom-set bijections (identities to identities) respecting composition.
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{cat_iso, free_category_gph, g1, product_cat, product_gph};
///
/// let left = free_category_gph(&product_gph(&g1(), &g1()), 8).unwrap();
/// let f = free_category_gph(&g1(), 8).unwrap();
/// let right = product_cat(&f, &f, 8).unwrap();
/// // One diagonal morphism against five: not isomorphic.
/// assert!(!cat_iso(&left, &right).unwrap());
/// ```
pub fn cat_iso(a: &PathCategory, b: &PathCategory) -> Result<bool, CatError> {
    if !a.complete || !b.complete {
        return Err(CatError::Incomplete { context: "cat_iso".to_string() });
    }
    if a.objects.len() != b.objects.len() || a.morphisms.len() != b.morphisms.len() {
        return Ok(false);
    }
    let n = a.objects.len();
    let mut phi: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    Ok(assign_objects(a, b, &mut phi, &mut used, 0))
}

fn assign_objects(
    a: &PathCategory,
    b: &PathCategory,
    phi: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    next: usize,
) -> bool {
    let n = a.objects.len();
    if next == n {
        let phi: Vec<usize> = phi.iter().map(|o| o.unwrap()).collect();
        return homsets_match(a, b, &phi);
    }
    'candidates: for w in 0..n {
        if used[w] {
            continue;
        }
        // Hom-set size compatibility with everything already assigned.
        if a.hom(next, next).len() != b.hom(w, w).len() {
            continue;
        }
        #[allow(clippy::needless_range_loop)]
        for u in 0..next {
            let pu = phi[u].unwrap();
            if a.hom(next, u).len() != b.hom(w, pu).len()
                || a.hom(u, next).len() != b.hom(pu, w).len()
            {
                continue 'candidates;
            }
        }
        phi[next] = Some(w);
        used[w] = true;
        if assign_objects(a, b, phi, used, next + 1) {
            return true;
        }
        phi[next] = None;
        used[w] = false;
    }
    false
}

/// Given an object bijection, searches for hom-set bijections that send
/// identities to identities and commute with composition.
fn homsets_match(a: &PathCategory, b: &PathCategory, phi: &[usize]) -> bool {
    let n = a.objects.len();
    // Collect per-homset candidate pairings: psi maps a-class -> b-class.
    let mut homsets: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let ha = a.hom(u, v);
            let hb = b.hom(phi[u], phi[v]);
            if ha.len() != hb.len() {
                return false;
            }
            if !ha.is_empty() {
                homsets.push((ha, hb));
            }
        }
    }
    let mut psi: BTreeMap<usize, usize> = BTreeMap::new();
    assign_homsets(a, b, &mut psi, &homsets, 0)
}

fn assign_homsets(
    a: &PathCategory,
    b: &PathCategory,
    psi: &mut BTreeMap<usize, usize>,
    homsets: &[(Vec<usize>, Vec<usize>)],
    next: usize,
) -> bool {
    if next == homsets.len() {
        return composition_respected(a, b, psi);
    }
    let (ha, hb) = &homsets[next];
    let mut taken = vec![false; hb.len()];
    assign_within_homset(a, b, psi, homsets, next, ha, hb, &mut taken, 0)
}

#[allow(clippy::too_many_arguments)]
fn assign_within_homset(
    a: &PathCategory,
    b: &PathCategory,
    psi: &mut BTreeMap<usize, usize>,
    homsets: &[(Vec<usize>, Vec<usize>)],
    homset_idx: usize,
    ha: &[usize],
    hb: &[usize],
    taken: &mut Vec<bool>,
    k: usize,
) -> bool {
    if k == ha.len() {
        return assign_homsets(a, b, psi, homsets, homset_idx + 1);
    }
    let f = ha[k];
    for (j, &g) in hb.iter().enumerate() {
        if taken[j] {
            continue;
        }
        // Identities must pair with identities.
        if a.is_identity_class(f) != b.is_identity_class(g) {
            continue;
        }
        psi.insert(f, g);
        taken[j] = true;
        if assign_within_homset(a, b, psi, homsets, homset_idx, ha, hb, taken, k + 1) {
            return true;
        }
        psi.remove(&f);
        taken[j] = false;
    }
    false
}

/// Checks `psi(g ∘ f) = psi(g) ∘ psi(f)` over all composable class pairs.
fn composition_respected(a: &PathCategory, b: &PathCategory, psi: &BTreeMap<usize, usize>) -> bool {
    for f in 0..a.morphisms.len() {
        for g in 0..a.morphisms.len() {
            if a.morphisms[f].tgt != a.morphisms[g].src {
                continue;
            }
            let Some(fg) = a.compose(f, g) else { return false };
            let Some(bfg) = b.compose(psi[&f], psi[&g]) else { return false };
            if psi[&fg] != bfg {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::graph::{g1, product_gph, product_rgph, r1, GEdge, ReflexiveGraph};
    use crate::semantics::sset::{product_sset, rgraph_to_sset};

    #[test]
    fn free_category_on_the_single_product_edge() {
        let c = free_category_gph(&product_gph(&g1(), &g1()), 8).unwrap();
        assert!(c.complete);
        assert_eq!(c.objects.len(), 4);
        assert_eq!(c.non_identity_count(), 1);
    }

    #[test]
    fn product_of_free_categories_has_five_morphisms() {
        let f = free_category_gph(&g1(), 8).unwrap();
        let p = product_cat(&f, &f, 8).unwrap();
        assert!(p.complete);
        assert_eq!(p.objects.len(), 4);
        assert_eq!(p.non_identity_count(), 5);
        // The two ways around the square are one morphism.
        assert_eq!(p.hom(0, 3).len(), 1);
        assert_eq!(p.morphisms[p.hom(0, 3)[0]].paths.len(), 2);
    }

    #[test]
    fn gph_counterexample_is_not_an_isomorphism() {
        let left = free_category_gph(&product_gph(&g1(), &g1()), 8).unwrap();
        let f = free_category_gph(&g1(), 8).unwrap();
        let right = product_cat(&f, &f, 8).unwrap();
        assert_eq!(left.non_identity_count(), 1);
        assert_eq!(right.non_identity_count(), 5);
        assert!(!cat_iso(&left, &right).unwrap());
    }

    #[test]
    fn rgph_counterexample_has_seven_against_five() {
        let left = free_category_rgph(&product_rgph(&r1(), &r1()), 8).unwrap();
        assert!(left.complete);
        assert_eq!(left.non_identity_count(), 7);
        // Three distinct morphisms (0,0) → (1,1): two noncommuting
        // triangle composites and the diagonal, pairwise unequal.
        assert_eq!(left.hom(0, 3).len(), 3);

        let f = free_category_rgph(&r1(), 8).unwrap();
        let right = product_cat(&f, &f, 8).unwrap();
        assert_eq!(right.non_identity_count(), 5);
        assert_eq!(right.hom(0, 3).len(), 1);
        assert!(!cat_iso(&left, &right).unwrap());
    }

    #[test]
    fn realization_of_the_product_forces_the_triangles() {
        let x = rgraph_to_sset(&r1());
        let left = realize(&product_sset(&x, &x), 8).unwrap();
        assert!(left.complete);
        assert_eq!(left.non_identity_count(), 5);
        // Diagonal and both composites collapse to one morphism of three
        // known paths.
        let diag = left.hom(0, 3);
        assert_eq!(diag.len(), 1);
        assert_eq!(left.morphisms[diag[0]].paths.len(), 3);

        let fr = realize(&x, 8).unwrap();
        let right = product_cat(&fr, &fr, 8).unwrap();
        assert!(cat_iso(&left, &right).unwrap());
    }

    #[test]
    fn realization_agrees_with_the_free_reflexive_category() {
        let samples = [
            r1(),
            ReflexiveGraph { vertices: alloc::vec![String::from("*")], edges: Vec::new() },
            // A cycle: incomplete tables, but identical structure.
            ReflexiveGraph {
                vertices: ["a", "b"].map(String::from).to_vec(),
                edges: [
                    GEdge { src: 0, tgt: 1, label: "f".to_string() },
                    GEdge { src: 1, tgt: 0, label: "g".to_string() },
                ]
                .to_vec(),
            },
        ];
        for r in samples {
            let via_sset = realize(&rgraph_to_sset(&r), 6).unwrap();
            let direct = free_category_rgph(&r, 6).unwrap();
            assert_eq!(via_sset.objects, direct.objects);
            assert_eq!(via_sset.generators, direct.generators);
            assert_eq!(via_sset.complete, direct.complete);
            assert_eq!(via_sset.morphisms, direct.morphisms);
        }
    }

    #[test]
    fn a_category_is_isomorphic_to_itself_and_to_a_renaming() {
        let c = free_category_rgph(&product_rgph(&r1(), &r1()), 8).unwrap();
        assert!(cat_iso(&c, &c).unwrap());
        let mut renamed = product_rgph(&r1(), &r1());
        renamed.vertices.reverse(); // names only: edges still index the old order
        let d = free_category_rgph(&renamed, 8).unwrap();
        assert!(cat_iso(&c, &d).unwrap());
    }

    #[test]
    fn incomplete_tables_are_refused_by_exact_operations() {
        let looped = ReflexiveGraph {
            vertices: alloc::vec![String::from("v")],
            edges: alloc::vec![GEdge { src: 0, tgt: 0, label: "l".to_string() }],
        };
        let c = free_category_rgph(&looped, 8).unwrap();
        assert!(!c.complete);
        assert!(matches!(cat_iso(&c, &c), Err(CatError::Incomplete { .. })));
        assert!(matches!(product_cat(&c, &c, 8), Err(CatError::Incomplete { .. })));
    }

    #[test]
    fn terminal_category_from_a_point() {
        let point = ReflexiveGraph { vertices: alloc::vec![String::from("*")], edges: Vec::new() };
        let c = realize(&rgraph_to_sset(&point), 4).unwrap();
        assert_eq!(c.objects.len(), 1);
        assert_eq!(c.non_identity_count(), 0);
        assert!(c.complete);
    }

    #[test]
    fn relation_validation_rejects_non_parallel_sides() {
        let objects = ["x", "y"].map(String::from).to_vec();
        let generators = alloc::vec![CatGenerator { name: "f".to_string(), src: 0, tgt: 1 }];
        let relations = alloc::vec![(
            Path { src: 0, gens: alloc::vec![0] },
            Path { src: 1, gens: Vec::new() },
        )];
        assert!(matches!(
            PathCategory::from_presentation(objects, generators, relations, 4),
            Err(CatError::InvalidInput { .. })
        ));
    }

    #[test]
    fn an_empty_relation_side_can_collapse_a_loop() {
        // One object, one loop generator, relation l = id.
        let objects = alloc::vec![String::from("v")];
        let generators = alloc::vec![CatGenerator { name: "l".to_string(), src: 0, tgt: 0 }];
        let relations =
            alloc::vec![(Path { src: 0, gens: alloc::vec![0] }, Path { src: 0, gens: Vec::new() })];
        let c = PathCategory::from_presentation(objects, generators, relations, 5).unwrap();
        // Every power of l merges with the identity…
        assert_eq!(c.morphisms.len(), 1);
        // …but the enumeration itself never exhausts the loop.
        assert!(!c.complete);
    }

    #[test]
    fn composition_uses_the_class_table() {
        let c = free_category_rgph(&product_rgph(&r1(), &r1()), 8).unwrap();
        // (0,0) --(id(0),e)--> (0,1) --(e,id(1))--> (1,1), composed.
        let up = c.class_of(&Path { src: 0, gens: alloc::vec![1] }).unwrap();
        let right = c.class_of(&Path { src: 1, gens: alloc::vec![4] }).unwrap();
        let both = c.compose(up, right).unwrap();
        assert_eq!(c.morphisms[both].src, 0);
        assert_eq!(c.morphisms[both].tgt, 3);
        assert!(!c.is_identity_class(both));
        // Mismatched endpoints refuse to compose.
        assert_eq!(c.compose(right, up), None);
    }
}
