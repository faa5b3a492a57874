//! Finite enriching bases and the arithmetic of arities.
//!
//! A graph-enriched theory draws its arities from the objects
//! `n_V = 1_V + ⋯ + 1_V`, the finite coproducts of the terminal object
//! of a base category `V`. This module realizes three bases concretely —
//! finite sets, finite posets, finite reflexive graphs — and verifies by
//! brute force the arithmetic those objects obey:
//!
//! ```text
//! m_V + n_V = (m + n)_V      m_V × n_V = (m·n)_V
//! m_V ^ n_V = (m^n)_V        |hom(m_V, n_V)| = n^m
//! ```
//!
//! [`verify_lemma_nn`] (named for the `(m, n)` sweep it performs) checks
//! all four families exhaustively up to given bounds and reports every
//! outcome; nothing is trusted beyond the enumeration itself.
//!
//! The products and exponentials are the genuine categorical ones, not
//! just size bookkeeping. In reflexive graphs in particular, a morphism
//! assigns images to edges as well as vertices, and the exponential
//! `a^b` has homs `b → a` as vertices and homs `W × b → a` as edges,
//! where `W` is the walking edge — so the module can also answer
//! hom-counting questions about non-discrete carriers, and the
//! exponential satisfies the product adjunction on the nose.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::semantics::graph::{product_rgph, GEdge, ReflexiveGraph};
use crate::semantics::poset::{poset_iso, product_pos, FinPoset};

/// Carrier guard: constructed objects refuse to exceed this many points.
pub const DESK_LIMIT: usize = 10_000;

/// Internal search budget: candidate enumerations (tuples, homomorphism
/// sets, exponential edge lists) abort past this many entries.
const ENUM_LIMIT: usize = 1_000_000;

/// Which finite base category an object lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BaseTag {
    /// Finite sets and functions.
    Set,
    /// Finite posets and monotone maps.
    Pos,
    /// Finite reflexive graphs and graph homomorphisms.
    RGph,
}

impl fmt::Display for BaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseTag::Set => "Set",
            BaseTag::Pos => "Pos",
            BaseTag::RGph => "RGph",
        })
    }
}

/// An object of one of the three finite bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseObject {
    /// A finite set, as a list of element names.
    Set(Vec<String>),
    /// A finite poset.
    Pos(FinPoset),
    /// A finite reflexive graph.
    RGph(ReflexiveGraph),
}

impl BaseObject {
    /// The base this object lives in.
    pub fn tag(&self) -> BaseTag {
        match self {
            BaseObject::Set(_) => BaseTag::Set,
            BaseObject::Pos(_) => BaseTag::Pos,
            BaseObject::RGph(_) => BaseTag::RGph,
        }
    }

    /// Number of points (elements or vertices).
    pub fn size(&self) -> usize {
        match self {
            BaseObject::Set(xs) => xs.len(),
            BaseObject::Pos(p) => p.elements.len(),
            BaseObject::RGph(g) => g.vertices.len(),
        }
    }

    /// True when the object carries no structure beyond its points: any
    /// set, a poset with only the diagonal, a graph with only identity
    /// edges.
    pub fn is_discrete(&self) -> bool {
        match self {
            BaseObject::Set(_) => true,
            BaseObject::Pos(p) => {
                let n = p.elements.len();
                (0..n).all(|i| (0..n).all(|j| p.leq[i][j] == (i == j)))
            }
            BaseObject::RGph(g) => g.edges.is_empty(),
        }
    }

    /// Structural sanity of the carrier.
    pub fn is_valid(&self) -> bool {
        match self {
            BaseObject::Set(_) => true,
            BaseObject::Pos(p) => p.is_valid(),
            BaseObject::RGph(g) => g.is_valid(),
        }
    }
}

/// Errors from base-object arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseError {
    /// The two operands live in different bases.
    TagMismatch {
        /// Left operand's base.
        left: BaseTag,
        /// Right operand's base.
        right: BaseTag,
    },
    /// A carrier or enumeration would exceed its limit (or overflow).
    TooLarge {
        /// What was being enumerated.
        what: String,
    },
}

impl fmt::Display for BaseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseError::TagMismatch { left, right } => {
                write!(f, "base mismatch: {left} versus {right}")
            }
            BaseError::TooLarge { what } => {
                write!(f, "{what} is too large to enumerate")
            }
        }
    }
}

impl core::error::Error for BaseError {}

fn same_base(a: &BaseObject, b: &BaseObject) -> Result<(), BaseError> {
    if a.tag() == b.tag() {
        Ok(())
    } else {
        Err(BaseError::TagMismatch { left: a.tag(), right: b.tag() })
    }
}

/// The object `n_V`: the `n`-fold coproduct of the terminal object.
/// An `n`-element set, an `n`-element antichain, or `n` isolated
/// vertices, with numeric names.
///
/// # Examples
///
/// ```
/// use lawvere::arities::{nat_object, BaseTag};
///
/// assert_eq!(nat_object(BaseTag::Set, 0).size(), 0);
/// assert!(nat_object(BaseTag::RGph, 2).is_discrete());
/// ```
pub fn nat_object(base: BaseTag, n: usize) -> BaseObject {
    let names: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
    match base {
        BaseTag::Set => BaseObject::Set(names),
        BaseTag::Pos => BaseObject::Pos(FinPoset::discrete(names)),
        BaseTag::RGph => {
            BaseObject::RGph(ReflexiveGraph { vertices: names, edges: Vec::new() })
        }
    }
}

/// The coproduct `a + b`: disjoint union, with elements tagged
/// `inl(…)` / `inr(…)`.
pub fn base_coproduct(a: &BaseObject, b: &BaseObject) -> Result<BaseObject, BaseError> {
    same_base(a, b)?;
    let names = |xs: &[String], ys: &[String]| -> Vec<String> {
        xs.iter()
            .map(|x| format!("inl({x})"))
            .chain(ys.iter().map(|y| format!("inr({y})")))
            .collect()
    };
    Ok(match (a, b) {
        (BaseObject::Set(xs), BaseObject::Set(ys)) => BaseObject::Set(names(xs, ys)),
        (BaseObject::Pos(p), BaseObject::Pos(q)) => {
            let (np, nq) = (p.elements.len(), q.elements.len());
            let n = np + nq;
            let mut leq = vec![vec![false; n]; n];
            for (i, row) in p.leq.iter().enumerate() {
                leq[i][..np].copy_from_slice(row);
            }
            for (i, row) in q.leq.iter().enumerate() {
                leq[np + i][np..].copy_from_slice(row);
            }
            BaseObject::Pos(FinPoset { elements: names(&p.elements, &q.elements), leq })
        }
        (BaseObject::RGph(g), BaseObject::RGph(h)) => {
            let shift = g.vertices.len();
            let mut edges = g.edges.clone();
            edges.extend(h.edges.iter().map(|e| GEdge {
                src: e.src + shift,
                tgt: e.tgt + shift,
                label: e.label.clone(),
            }));
            BaseObject::RGph(ReflexiveGraph { vertices: names(&g.vertices, &h.vertices), edges })
        }
        _ => unreachable!("same_base checked the tags"),
    })
}

/// The categorical product `a × b` in the object's base.
///
/// # Examples
///
/// ```
/// use lawvere::arities::{base_product, nat_object, BaseTag};
///
/// let p = base_product(&nat_object(BaseTag::Set, 2), &nat_object(BaseTag::Set, 3)).unwrap();
/// assert_eq!(p.size(), 6);
/// ```
pub fn base_product(a: &BaseObject, b: &BaseObject) -> Result<BaseObject, BaseError> {
    same_base(a, b)?;
    if a.size().saturating_mul(b.size()) > DESK_LIMIT {
        return Err(BaseError::TooLarge { what: "the product carrier".to_string() });
    }
    Ok(match (a, b) {
        (BaseObject::Set(xs), BaseObject::Set(ys)) => BaseObject::Set(
            xs.iter().flat_map(|x| ys.iter().map(move |y| format!("({x},{y})"))).collect(),
        ),
        (BaseObject::Pos(p), BaseObject::Pos(q)) => BaseObject::Pos(product_pos(p, q)),
        (BaseObject::RGph(g), BaseObject::RGph(h)) => BaseObject::RGph(product_rgph(g, h)),
        _ => unreachable!("same_base checked the tags"),
    })
}

/// All tuples `dom → cod` (vertex or element maps), last coordinate
/// fastest, guarded by [`DESK_LIMIT`].
fn tuples(dom: usize, cod: usize, what: &str) -> Result<Vec<Vec<usize>>, BaseError> {
    let count = if dom == 0 {
        1
    } else if cod == 0 {
        0
    } else {
        let mut c: usize = 1;
        for _ in 0..dom {
            c = c.checked_mul(cod).filter(|&c| c <= ENUM_LIMIT).ok_or_else(|| {
                BaseError::TooLarge { what: what.to_string() }
            })?;
        }
        c
    };
    let mut out = Vec::with_capacity(count);
    let mut cur = vec![0usize; dom];
    if count > 0 {
        loop {
            out.push(cur.clone());
            let mut i = dom;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < cod {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
    Ok(out)
}

/// Where a reflexive-graph homomorphism sends one non-identity edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeImage {
    /// Onto the identity edge of the (necessarily equal) endpoint images.
    Identity,
    /// Onto the target graph's non-identity edge with this index.
    Edge(usize),
}

/// A reflexive-graph homomorphism: a vertex map plus an image for each
/// non-identity edge of the source (identity edges go to identities by
/// naturality). Two homomorphisms with the same vertex map still differ
/// if they route an edge through different parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphHom {
    /// `vertex_map[v]` is the image of source vertex `v`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[e]` is the image of source edge `e`, index-aligned with
    /// the source's edge list.
    pub edge_map: Vec<EdgeImage>,
}

/// The candidate images for an edge from `x` to `y` in `dst`: the
/// identity first (when `x == y`), then matching edges in index order.
fn edge_candidates(dst: &ReflexiveGraph, x: usize, y: usize) -> Vec<EdgeImage> {
    let mut out = Vec::new();
    if x == y {
        out.push(EdgeImage::Identity);
    }
    for (i, e) in dst.edges.iter().enumerate() {
        if e.src == x && e.tgt == y {
            out.push(EdgeImage::Edge(i));
        }
    }
    out
}

/// Every homomorphism `src → dst`, in lexicographic order of vertex map
/// then edge choices.
fn rgph_homs(src: &ReflexiveGraph, dst: &ReflexiveGraph) -> Result<Vec<GraphHom>, BaseError> {
    let mut out = Vec::new();
    for vm in tuples(src.vertices.len(), dst.vertices.len(), "the homomorphism search")? {
        let cands: Vec<Vec<EdgeImage>> = src
            .edges
            .iter()
            .map(|e| edge_candidates(dst, vm[e.src], vm[e.tgt]))
            .collect();
        if cands.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; cands.len()];
        loop {
            if out.len() >= ENUM_LIMIT {
                return Err(BaseError::TooLarge { what: "the homomorphism set".to_string() });
            }
            out.push(GraphHom {
                vertex_map: vm.clone(),
                edge_map: choice.iter().zip(&cands).map(|(&k, c)| c[k].clone()).collect(),
            });
            let mut i = cands.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < cands[i].len() {
                    break;
                }
                choice[i] = 0;
            }
            if choice.iter().all(|&k| k == 0) {
                break;
            }
        }
    }
    Ok(out)
}

fn hom_name(src: &ReflexiveGraph, h: &GraphHom) -> String {
    let vs: Vec<String> = h.vertex_map.iter().map(|v| format!("{v}")).collect();
    if src.edges.is_empty() {
        format!("⟨{}⟩", vs.join(","))
    } else {
        let es: Vec<String> = h
            .edge_map
            .iter()
            .map(|e| match e {
                EdgeImage::Identity => "id".to_string(),
                EdgeImage::Edge(i) => format!("e{i}"),
            })
            .collect();
        format!("⟨{};{}⟩", vs.join(","), es.join(","))
    }
}

/// The exponential `a^b` of reflexive graphs. Vertices are the homs
/// `b → a`. Edges are the homs `W × b → a` for the walking edge `W`;
/// concretely, an edge from `f` to `g` chooses, for each vertex `u` of
/// `b`, an edge `f(u) → g(u)` of `a`, and for each non-identity edge
/// `e : u → u′` of `b`, an edge `f(u) → g(u′)` — with the choice "`f`'s
/// own data everywhere" for `f = g` being the identity edge.
fn rgph_exponential(a: &ReflexiveGraph, b: &ReflexiveGraph) -> Result<ReflexiveGraph, BaseError> {
    let homs = rgph_homs(b, a)?;
    let vertices: Vec<String> = homs.iter().map(|h| hom_name(b, h)).collect();
    let mut edges = Vec::new();
    for (fi, f) in homs.iter().enumerate() {
        for (gi, g) in homs.iter().enumerate() {
            // Candidate lists: per b-vertex, then per b-edge.
            let mut cands: Vec<Vec<EdgeImage>> = Vec::new();
            for u in 0..b.vertices.len() {
                cands.push(edge_candidates(a, f.vertex_map[u], g.vertex_map[u]));
            }
            for e in &b.edges {
                cands.push(edge_candidates(a, f.vertex_map[e.src], g.vertex_map[e.tgt]));
            }
            if cands.iter().any(|c| c.is_empty()) {
                continue;
            }
            // The degenerate choice representing the identity edge on f.
            let degenerate: Option<Vec<EdgeImage>> = (fi == gi).then(|| {
                let mut d = vec![EdgeImage::Identity; b.vertices.len()];
                d.extend(f.edge_map.iter().cloned());
                d
            });
            let mut choice = vec![0usize; cands.len()];
            loop {
                let images: Vec<EdgeImage> =
                    choice.iter().zip(&cands).map(|(&k, c)| c[k].clone()).collect();
                if degenerate.as_deref() != Some(&images[..]) {
                    if edges.len() >= ENUM_LIMIT {
                        return Err(BaseError::TooLarge {
                            what: "the exponential edge set".to_string(),
                        });
                    }
                    let rendered: Vec<String> = images
                        .iter()
                        .map(|e| match e {
                            EdgeImage::Identity => "id".to_string(),
                            EdgeImage::Edge(i) => format!("e{i}"),
                        })
                        .collect();
                    edges.push(GEdge {
                        src: fi,
                        tgt: gi,
                        label: format!("⟨{fi}⇒{gi};{}⟩", rendered.join(",")),
                    });
                }
                let mut i = cands.len();
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    choice[i] += 1;
                    if choice[i] < cands[i].len() {
                        break;
                    }
                    choice[i] = 0;
                }
                if choice.iter().all(|&k| k == 0) {
                    break;
                }
            }
        }
    }
    Ok(ReflexiveGraph { vertices, edges })
}

/// The exponential `a^b` — the object of morphisms `b → a` — in the
/// operands' base.
///
/// # Examples
///
/// ```
/// use lawvere::arities::{base_exponential, nat_object, BaseTag};
///
/// let e = base_exponential(&nat_object(BaseTag::Set, 2), &nat_object(BaseTag::Set, 3)).unwrap();
/// assert_eq!(e.size(), 8);
/// let e = base_exponential(&nat_object(BaseTag::RGph, 3), &nat_object(BaseTag::RGph, 2)).unwrap();
/// assert_eq!(e.size(), 9);
/// assert!(e.is_discrete());
/// ```
pub fn base_exponential(a: &BaseObject, b: &BaseObject) -> Result<BaseObject, BaseError> {
    same_base(a, b)?;
    Ok(match (a, b) {
        (BaseObject::Set(xs), BaseObject::Set(ys)) => {
            let maps = tuples(ys.len(), xs.len(), "the function space")?;
            BaseObject::Set(maps.into_iter().map(|m| render_map(&m)).collect())
        }
        (BaseObject::Pos(p), BaseObject::Pos(q)) => {
            let maps = monotone_maps(q, p)?;
            let elements: Vec<String> = maps.iter().map(|m| render_map(m)).collect();
            let n = maps.len();
            let mut leq = vec![vec![false; n]; n];
            for i in 0..n {
                for j in 0..n {
                    leq[i][j] =
                        (0..q.elements.len()).all(|u| p.leq[maps[i][u]][maps[j][u]]);
                }
            }
            BaseObject::Pos(FinPoset { elements, leq })
        }
        (BaseObject::RGph(g), BaseObject::RGph(h)) => BaseObject::RGph(rgph_exponential(g, h)?),
        _ => unreachable!("same_base checked the tags"),
    })
}

fn render_map(m: &[usize]) -> String {
    let parts: Vec<String> = m.iter().map(|v| format!("{v}")).collect();
    format!("[{}]", parts.join(","))
}

fn monotone_maps(src: &FinPoset, dst: &FinPoset) -> Result<Vec<Vec<usize>>, BaseError> {
    let n = src.elements.len();
    let all = tuples(n, dst.elements.len(), "the monotone-map search")?;
    Ok(all
        .into_iter()
        .filter(|m| {
            (0..n).all(|i| (0..n).all(|j| !src.leq[i][j] || dst.leq[m[i]][m[j]]))
        })
        .collect())
}

/// The number of morphisms `a → b` in the operands' base: functions,
/// monotone maps, or reflexive-graph homomorphisms (counting parallel
/// edge routings separately).
///
/// # Examples
///
/// ```
/// use lawvere::arities::{base_hom_count, nat_object, BaseTag};
///
/// let (two, three) = (nat_object(BaseTag::Pos, 2), nat_object(BaseTag::Pos, 3));
/// assert_eq!(base_hom_count(&two, &three).unwrap(), 9);
/// ```
pub fn base_hom_count(a: &BaseObject, b: &BaseObject) -> Result<usize, BaseError> {
    same_base(a, b)?;
    Ok(match (a, b) {
        (BaseObject::Set(xs), BaseObject::Set(ys)) => {
            if xs.is_empty() {
                1
            } else {
                ys.len()
                    .checked_pow(u32::try_from(xs.len()).map_err(|_| BaseError::TooLarge {
                        what: "the function count".to_string(),
                    })?)
                    .ok_or_else(|| BaseError::TooLarge {
                        what: "the function count".to_string(),
                    })?
            }
        }
        (BaseObject::Pos(p), BaseObject::Pos(q)) => monotone_maps(p, q)?.len(),
        (BaseObject::RGph(g), BaseObject::RGph(h)) => rgph_homs(g, h)?.len(),
        _ => unreachable!("same_base checked the tags"),
    })
}

/// Isomorphism of two same-base objects, decided exhaustively: size
/// comparison for sets, order-isomorphism search for posets, and a
/// vertex-bijection search preserving per-pair edge counts for
/// reflexive graphs (labels are immaterial).
pub fn base_iso(a: &BaseObject, b: &BaseObject) -> Result<bool, BaseError> {
    same_base(a, b)?;
    Ok(match (a, b) {
        (BaseObject::Set(xs), BaseObject::Set(ys)) => xs.len() == ys.len(),
        (BaseObject::Pos(p), BaseObject::Pos(q)) => poset_iso(p, q),
        (BaseObject::RGph(g), BaseObject::RGph(h)) => rgph_iso(g, h),
        _ => unreachable!("same_base checked the tags"),
    })
}

fn rgph_iso(a: &ReflexiveGraph, b: &ReflexiveGraph) -> bool {
    let n = a.vertices.len();
    if b.vertices.len() != n || a.edges.len() != b.edges.len() {
        return false;
    }
    let matrix = |g: &ReflexiveGraph| -> Vec<Vec<usize>> {
        let mut m = vec![vec![0usize; g.vertices.len()]; g.vertices.len()];
        for e in &g.edges {
            m[e.src][e.tgt] += 1;
        }
        m
    };
    let (ma, mb) = (matrix(a), matrix(b));
    let profile = |m: &[Vec<usize>], v: usize| -> (usize, usize, usize) {
        let out: usize = m[v].iter().sum();
        let inc: usize = m.iter().map(|row| row[v]).sum();
        (out, inc, m[v][v])
    };
    type VertexProfile = dyn Fn(&[Vec<usize>], usize) -> (usize, usize, usize);
    fn go(
        ma: &[Vec<usize>],
        mb: &[Vec<usize>],
        profile: &VertexProfile,
        phi: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let n = ma.len();
        if next == n {
            return true;
        }
        'candidates: for w in 0..n {
            if used[w] || profile(ma, next) != profile(mb, w) {
                continue;
            }
            for u in 0..next {
                let pu = phi[u].unwrap();
                if ma[next][u] != mb[w][pu] || ma[u][next] != mb[pu][w] {
                    continue 'candidates;
                }
            }
            phi[next] = Some(w);
            used[w] = true;
            if go(ma, mb, profile, phi, used, next + 1) {
                return true;
            }
            phi[next] = None;
            used[w] = false;
        }
        false
    }
    go(&ma, &mb, &profile, &mut vec![None; n], &mut vec![false; n], 0)
}

/// One verified instance of one law family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    /// Which family: `coproduct`, `product`, `exponential`, `hom-count`.
    pub family: String,
    /// The first exponent/operand.
    pub m: usize,
    /// The second exponent/operand.
    pub n: usize,
    /// Whether the instance held.
    pub passed: bool,
    /// Human-readable account of what was compared.
    pub detail: String,
}

/// The outcome of a full law sweep over one base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    /// The base swept.
    pub base: BaseTag,
    /// Inclusive bound on `m`.
    pub max_m: usize,
    /// Inclusive bound on `n`.
    pub max_n: usize,
    /// Every instance checked, in `(m, n, family)` order.
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    /// True when every instance held.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The instances that failed.
    pub fn failures(&self) -> Vec<&LawCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Sweeps the four arithmetic law families over all `m ≤ max_m`,
/// `n ≤ max_n` in one base: coproduct, product, and exponential of
/// `m_V` and `n_V` against the expected `(m+n)_V`, `(m·n)_V`, and
/// `(m^n)_V` (size plus isomorphism), and the hom-count against `n^m`.
/// Failures — including any enumeration overflow — are recorded as data,
/// never raised.
///
/// # Examples
///
/// ```
/// use lawvere::arities::{verify_lemma_nn, BaseTag};
///
/// let report = verify_lemma_nn(BaseTag::Pos, 3, 3);
/// assert!(report.passed());
/// assert_eq!(report.checks.len(), 4 * 16);
/// ```
pub fn verify_lemma_nn(base: BaseTag, max_m: usize, max_n: usize) -> LawReport {
    let mut checks = Vec::new();
    for m in 0..=max_m {
        for n in 0..=max_n {
            let (mv, nv) = (nat_object(base, m), nat_object(base, n));

            checks.push(expect_object(
                "coproduct",
                m,
                n,
                base_coproduct(&mv, &nv),
                m.checked_add(n),
                base,
            ));
            checks.push(expect_object(
                "product",
                m,
                n,
                base_product(&mv, &nv),
                m.checked_mul(n),
                base,
            ));
            let expected_exp = if m == 0 && n == 0 {
                Some(1)
            } else if m == 0 {
                Some(0)
            } else {
                (0..n).try_fold(1usize, |acc, _| acc.checked_mul(m))
            };
            checks.push(expect_object(
                "exponential",
                m,
                n,
                base_exponential(&mv, &nv),
                expected_exp,
                base,
            ));

            let expected_homs = if m == 0 {
                Some(1)
            } else {
                (0..m).try_fold(1usize, |acc, _| acc.checked_mul(n))
            };
            let check = match (base_hom_count(&mv, &nv), expected_homs) {
                (Ok(count), Some(want)) => LawCheck {
                    family: "hom-count".to_string(),
                    m,
                    n,
                    passed: count == want,
                    detail: format!("counted {count} morphisms, expected {want}"),
                },
                (result, want) => LawCheck {
                    family: "hom-count".to_string(),
                    m,
                    n,
                    passed: false,
                    detail: format!("count {result:?} not comparable with {want:?}"),
                },
            };
            checks.push(check);
        }
    }
    LawReport { base, max_m, max_n, checks }
}

/// Compares a constructed object against `k_V` for the expected `k`:
/// size first, then isomorphism.
fn expect_object(
    family: &str,
    m: usize,
    n: usize,
    constructed: Result<BaseObject, BaseError>,
    expected: Option<usize>,
    base: BaseTag,
) -> LawCheck {
    let (passed, detail) = match (constructed, expected) {
        (Ok(obj), Some(k)) => {
            let size_ok = obj.size() == k;
            let iso_ok = size_ok
                && matches!(base_iso(&obj, &nat_object(base, k)), Ok(true));
            (
                size_ok && iso_ok,
                format!(
                    "built {} points, expected {k}{}",
                    obj.size(),
                    if iso_ok {
                        ", isomorphic to the expected object"
                    } else if size_ok {
                        ", but not isomorphic to the expected object"
                    } else {
                        ""
                    }
                ),
            )
        }
        (Err(e), _) => (false, format!("construction failed: {e}")),
        (_, None) => (false, "expected size overflowed".to_string()),
    };
    LawCheck { family: family.to_string(), m, n, passed, detail }
}
