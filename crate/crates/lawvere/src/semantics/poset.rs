//! Finite posets, their connected components, and the posetal collapse
//! of a path category.
//!
//! The collapse [`free_poset`] forgets *which* morphisms connect two
//! objects and keeps only reachability, then quotients by mutual
//! reachability. The order is oriented so that rewriting moves
//! **downward**: `x ≤ y` exactly when some path leads from `y`'s class
//! to `x`'s class. Normal forms — objects with no outgoing generators —
//! thereby sit at the bottom, and a confluent, terminating rewrite graph
//! collapses to a poset with a unique bottom element, its normal form.
//!
//! [`components`] then forgets the order too, leaving only the partition
//! of elements into zig-zag connected classes: the denotational level,
//! where everything interconvertible is simply equal.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::category::PathCategory;

/// A finite poset: named elements and the full `≤` relation as a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    /// Element display names; the index is the element's identity.
    pub elements: Vec<String>,
    /// `leq[i][j]` means element `i ≤` element `j`.
    pub leq: Vec<Vec<bool>>,
}

impl FinPoset {
    /// A discrete poset (only `x ≤ x`) on the given names.
    pub fn discrete(names: Vec<String>) -> FinPoset {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        FinPoset { elements: names, leq }
    }

    /// A linear order `0 < 1 < … < n-1` with numeric names.
    pub fn chain(n: usize) -> FinPoset {
        let mut p = FinPoset::discrete((0..n).map(|i| format!("{i}")).collect());
        for i in 0..n {
            for j in i..n {
                p.leq[i][j] = true;
            }
        }
        p
    }

    /// Checks reflexivity, antisymmetry, transitivity, and matrix shape.
    pub fn is_valid(&self) -> bool {
        let n = self.elements.len();
        if self.leq.len() != n || self.leq.iter().any(|row| row.len() != n) {
            return false;
        }
        for i in 0..n {
            if !self.leq[i][i] {
                return false;
            }
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return false;
                }
                for k in 0..n {
                    if self.leq[i][j] && self.leq[j][k] && !self.leq[i][k] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Elements with nothing strictly below them.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| (0..self.elements.len()).all(|j| j == i || !self.leq[j][i]))
            .collect()
    }

    /// The least element, if one exists (`b ≤ x` for every `x`).
    pub fn bottom(&self) -> Option<usize> {
        (0..self.elements.len()).find(|&b| self.leq[b].iter().all(|&v| v))
    }
}

/// A partition of a named carrier into classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// The underlying element names.
    pub carrier: Vec<String>,
    /// Disjoint classes covering the carrier, each sorted, ordered by
    /// least member.
    pub classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Index of the class containing `element`.
    pub fn class_of(&self, element: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(&element).is_ok())
    }
}

/// The posetal collapse of a path category: objects, ordered by
/// *reverse* reachability along generators (`x ≤ y` iff `y` reaches
/// `x`), with mutually reachable objects identified. A collapsed class
/// is named after its least-indexed member.
///
/// Reachability is computed from the generators directly, so the result
/// is exact even when the category's morphism table is incomplete.
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{free_category_rgph, free_poset, r1};
///
/// let p = free_poset(&free_category_rgph(&r1(), 8).unwrap());
/// // The edge's target is reachable, hence at the bottom.
/// assert_eq!(p.bottom(), Some(1));
/// ```
pub fn free_poset(c: &PathCategory) -> FinPoset {
    let n = c.objects.len();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for g in &c.generators {
        reach[g.src][g.tgt] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                // `reach[k]` is read while `reach[i]` is written, so the
                // rows cannot be borrowed across the loop.
                #[allow(clippy::needless_range_loop)]
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    // Quotient by mutual reachability; classes arise in least-member order.
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if class_of[i].is_some() {
            continue;
        }
        let c_idx = reps.len();
        reps.push(i);
        for j in i..n {
            if reach[i][j] && reach[j][i] {
                class_of[j] = Some(c_idx);
            }
        }
    }
    let elements = reps.iter().map(|&r| c.objects[r].clone()).collect();
    let leq = reps
        .iter()
        .map(|&ri| reps.iter().map(|&rj| reach[rj][ri]).collect())
        .collect();
    FinPoset { elements, leq }
}

/// The zig-zag connected components of a poset — its set of pieces once
/// the order is forgotten.
///
/// # Examples
///
/// ```
/// use lawvere::semantics::{components, FinPoset};
///
/// let pieces = components(&FinPoset::chain(3));
/// assert_eq!(pieces.classes.len(), 1);
/// ```
pub fn components(p: &FinPoset) -> Partition {
    let n = p.elements.len();
    let mut class_of: Vec<usize> = (0..n).collect();
    // Fixpoint relabeling: everything comparable shares the least label.
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if (p.leq[i][j] || p.leq[j][i]) && class_of[i] != class_of[j] {
                    let m = class_of[i].min(class_of[j]);
                    class_of[i] = m;
                    class_of[j] = m;
                    changed = true;
                }
            }
        }
    }
    let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &c) in class_of.iter().enumerate() {
        grouped.entry(c).or_default().push(i);
    }
    Partition { carrier: p.elements.clone(), classes: grouped.into_values().collect() }
}

/// The product poset: pairs, ordered coordinatewise.
pub fn product_pos(a: &FinPoset, b: &FinPoset) -> FinPoset {
    let (na, nb) = (a.elements.len(), b.elements.len());
    let mut elements = Vec::with_capacity(na * nb);
    for x in &a.elements {
        for y in &b.elements {
            elements.push(format!("({x},{y})"));
        }
    }
    let mut leq = vec![vec![false; na * nb]; na * nb];
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                for l in 0..nb {
                    leq[i * nb + j][k * nb + l] = a.leq[i][k] && b.leq[j][l];
                }
            }
        }
    }
    FinPoset { elements, leq }
}

/// Decides order-isomorphism of two finite posets by backtracking over
/// element bijections, pruning on strict down-set and up-set sizes.
pub fn poset_iso(a: &FinPoset, b: &FinPoset) -> bool {
    let n = a.elements.len();
    if b.elements.len() != n {
        return false;
    }
    let profile = |p: &FinPoset, i: usize| -> (usize, usize) {
        let down = (0..p.elements.len()).filter(|&j| j != i && p.leq[j][i]).count();
        let up = (0..p.elements.len()).filter(|&j| j != i && p.leq[i][j]).count();
        (down, up)
    };
    let pa: Vec<_> = (0..n).map(|i| profile(a, i)).collect();
    let pb: Vec<_> = (0..n).map(|i| profile(b, i)).collect();
    {
        let mut sa = pa.clone();
        let mut sb = pb.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
    }
    fn go(
        a: &FinPoset,
        b: &FinPoset,
        pa: &[(usize, usize)],
        pb: &[(usize, usize)],
        phi: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let n = a.elements.len();
        if next == n {
            return true;
        }
        'candidates: for w in 0..n {
            if used[w] || pa[next] != pb[w] {
                continue;
            }
            #[allow(clippy::needless_range_loop)]
            for u in 0..next {
                let pu = phi[u].unwrap();
                if a.leq[next][u] != b.leq[w][pu] || a.leq[u][next] != b.leq[pu][w] {
                    continue 'candidates;
                }
            }
            phi[next] = Some(w);
            used[w] = true;
            if go(a, b, pa, pb, phi, used, next + 1) {
                return true;
            }
            phi[next] = None;
            used[w] = false;
        }
        false
    }
    go(a, b, &pa, &pb, &mut vec![None; n], &mut vec![false; n], 0)
}
