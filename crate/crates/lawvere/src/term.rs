//! Terms, positions, pattern matching, and substitution.
//!
//! A term is a finite ordered tree whose leaves are either variables
//! `x0, x1, …` (identified by index) or nullary operations, and whose inner
//! nodes are operations applied to exactly as many children as their declared
//! arity. Subterms are addressed by [`Position`]s — sequences of child
//! indices from the root — and rewriting is built from three total-ish
//! primitives: [`match_pattern`], [`substitute`], and [`Term::replace_at`].
//!
//! Terms deliberately carry operation *names* rather than indices into a
//! theory, so a term is meaningful (printable, comparable, hashable) on its
//! own; whether its names and arities are well formed with respect to a
//! particular theory is checked by
//! [`TheoryPresentation::validate`](crate::theory::TheoryPresentation::validate)
//! and friends.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// A path from the root of a term to one of its subterms: the sequence of
/// child indices taken at each node. The empty position is the root.
///
/// Positions are ordered lexicographically by their derived `Ord`, which
/// coincides with the order in which a pre-order (node before children,
/// children left to right) traversal visits them. A position `p` is an
/// ancestor of `q` exactly when `p` is a proper prefix of `q`.
pub type Position = Vec<usize>;

/// A finite assignment of terms to variable indices.
///
/// Substitutions returned by [`match_pattern`] bind exactly the variables of
/// the pattern; [`substitute`] requires every variable of its input to be
/// bound and reports the first unbound one otherwise.
pub type Substitution = BTreeMap<usize, Term>;

/// A first-order term: a variable or an operation node.
///
/// The derived `Ord` is the canonical term order used throughout the crate
/// (variables before nodes, then by operation name, then by children,
/// lexicographically). Rewrite-graph vertex numbering and closed-term
/// enumeration both sort by it, which is what makes every artifact of the
/// engine reproducible byte for byte.
///
/// # Examples
///
/// ```
/// use lawvere::term::Term;
///
/// let t = Term::node("app", [Term::constant("I"), Term::var(0)]);
/// assert_eq!(t.to_string(), "(I x0)");
/// assert_eq!(t.size(), 3);
/// ```
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// The variable with the given index, written `x0, x1, …`.
    Var(usize),
    /// An operation applied to its arguments. `args.len()` must equal the
    /// operation's declared arity for the term to validate against a theory.
    Node {
        /// Name of the operation, as declared in the ambient theory.
        op: String,
        /// The children, one per arity slot, left to right.
        args: Vec<Term>,
    },
}

/// Errors from the term primitives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermError {
    /// A position walked off the tree: at the reported prefix the node had
    /// too few children (or was a variable).
    UnknownPosition {
        /// The full position that was requested.
        position: Position,
        /// How many leading indices were successfully followed.
        valid_prefix: usize,
    },
    /// [`substitute`] met a variable the substitution does not bind.
    UnboundVariable(usize),
}

impl fmt::Display for TermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermError::UnknownPosition { position, valid_prefix } => write!(
                f,
                "position {} leaves the term after {} step(s)",
                format_position(position),
                valid_prefix
            ),
            TermError::UnboundVariable(idx) => {
                write!(f, "substitution does not bind variable x{idx}")
            }
        }
    }
}

impl core::error::Error for TermError {}

/// Renders a position as `[]`, `[0]`, `[0,1]`, … — the form used in edge
/// labels and diagnostics everywhere in this crate.
pub fn format_position(pos: &[usize]) -> String {
    let mut out = String::from("[");
    for (k, i) in pos.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(&i.to_string());
    }
    out.push(']');
    out
}

impl Term {
    /// The variable `x{index}`.
    pub fn var(index: usize) -> Self {
        Term::Var(index)
    }

    /// An operation node with the given arguments.
    pub fn node(op: impl Into<String>, args: impl IntoIterator<Item = Term>) -> Self {
        Term::Node { op: op.into(), args: args.into_iter().collect() }
    }

    /// A nullary operation node.
    pub fn constant(op: impl Into<String>) -> Self {
        Term::node(op, [])
    }

    /// Total number of tree nodes; variables and constants both count as one.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Node { args, .. } => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// `true` if no variable occurs in the term.
    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Node { args, .. } => args.iter().all(Term::is_closed),
        }
    }

    /// The set of variable indices occurring in the term.
    pub fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Node { args, .. } => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    /// `true` if no variable occurs twice (the shape required of rule
    /// left-hand sides).
    pub fn is_linear(&self) -> bool {
        fn walk(t: &Term, seen: &mut BTreeSet<usize>) -> bool {
            match t {
                Term::Var(i) => seen.insert(*i),
                Term::Node { args, .. } => args.iter().all(|a| walk(a, seen)),
            }
        }
        walk(self, &mut BTreeSet::new())
    }

    /// All positions of the term in pre-order, which is exactly their
    /// lexicographic order. The root `[]` always comes first.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::with_capacity(self.size());
        let mut current = Vec::new();
        self.collect_positions(&mut current, &mut out);
        out
    }

    fn collect_positions(&self, current: &mut Position, out: &mut Vec<Position>) {
        out.push(current.clone());
        if let Term::Node { args, .. } = self {
            for (i, a) in args.iter().enumerate() {
                current.push(i);
                a.collect_positions(current, out);
                current.pop();
            }
        }
    }

    /// All positions in post-order: children (left to right) before their
    /// parent. The first rewrite redex in this order is the leftmost
    /// innermost one.
    pub fn positions_postorder(&self) -> Vec<Position> {
        let mut out = Vec::with_capacity(self.size());
        let mut current = Vec::new();
        self.collect_positions_postorder(&mut current, &mut out);
        out
    }

    fn collect_positions_postorder(&self, current: &mut Position, out: &mut Vec<Position>) {
        if let Term::Node { args, .. } = self {
            for (i, a) in args.iter().enumerate() {
                current.push(i);
                a.collect_positions_postorder(current, out);
                current.pop();
            }
        }
        out.push(current.clone());
    }

    /// The subterm at `pos`.
    ///
    /// # Examples
    ///
    /// ```
    /// use lawvere::term::Term;
    ///
    /// let t = Term::node("app", [Term::constant("I"), Term::constant("K")]);
    /// assert_eq!(t.subterm_at(&[1]).unwrap(), &Term::constant("K"));
    /// assert!(t.subterm_at(&[2]).is_err());
    /// ```
    pub fn subterm_at(&self, pos: &[usize]) -> Result<&Term, TermError> {
        let mut here = self;
        for (depth, &i) in pos.iter().enumerate() {
            match here {
                Term::Node { args, .. } if i < args.len() => here = &args[i],
                _ => {
                    return Err(TermError::UnknownPosition {
                        position: pos.to_vec(),
                        valid_prefix: depth,
                    })
                }
            }
        }
        Ok(here)
    }

    /// A copy of the term with the subterm at `pos` replaced by
    /// `replacement`. Replacing at the root returns `replacement` itself.
    pub fn replace_at(&self, pos: &[usize], replacement: Term) -> Result<Term, TermError> {
        // Validate the whole path up front so the recursion below cannot fail.
        self.subterm_at(pos)?;
        Ok(self.replace_at_unchecked(pos, replacement))
    }

    fn replace_at_unchecked(&self, pos: &[usize], replacement: Term) -> Term {
        match pos.split_first() {
            None => replacement,
            Some((&i, rest)) => match self {
                Term::Node { op, args } => {
                    let mut new_args = args.clone();
                    new_args[i] = args[i].replace_at_unchecked(rest, replacement);
                    Term::Node { op: op.clone(), args: new_args }
                }
                Term::Var(_) => unreachable!("path validated by replace_at"),
            },
        }
    }
}

impl fmt::Display for Term {
    /// Prints variables as `x{i}`, constants bare, general nodes as
    /// `op(a, b)`, and the distinguished binary operation `app` in the
    /// juxtaposition form `(a b)` that combinator calculi are usually
    /// written in. The concrete-syntax parser accepts everything this
    /// printer produces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Node { op, args } if args.is_empty() => write!(f, "{op}"),
            Term::Node { op, args } if op == "app" && args.len() == 2 => {
                write!(f, "({} {})", args[0], args[1])
            }
            Term::Node { op, args } => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Matches `pattern` against `subject` at the root and returns the unique
/// substitution `θ` with `θ(pattern) = subject`, or `None` if there is none.
///
/// Match failure is data, not an error. Patterns are normally left-linear
/// (the validator enforces this for rule left-hand sides), but repeated
/// variables are still handled correctly: later occurrences must match the
/// same subterm bound by the first.
///
/// # Examples
///
/// ```
/// use lawvere::term::{match_pattern, Term};
///
/// // ((K x0) x1) against ((K S) I)
/// let pattern = Term::node(
///     "app",
///     [Term::node("app", [Term::constant("K"), Term::var(0)]), Term::var(1)],
/// );
/// let subject = Term::node(
///     "app",
///     [Term::node("app", [Term::constant("K"), Term::constant("S")]), Term::constant("I")],
/// );
/// let theta = match_pattern(&pattern, &subject).unwrap();
/// assert_eq!(theta[&0], Term::constant("S"));
/// assert_eq!(theta[&1], Term::constant("I"));
/// ```
pub fn match_pattern(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut theta = Substitution::new();
    if match_into(pattern, subject, &mut theta) {
        Some(theta)
    } else {
        None
    }
}

fn match_into(pattern: &Term, subject: &Term, theta: &mut Substitution) -> bool {
    match pattern {
        Term::Var(i) => match theta.get(i) {
            Some(bound) => bound == subject,
            None => {
                theta.insert(*i, subject.clone());
                true
            }
        },
        Term::Node { op, args } => match subject {
            Term::Node { op: sop, args: sargs } if op == sop && args.len() == sargs.len() => {
                args.iter().zip(sargs).all(|(p, s)| match_into(p, s, theta))
            }
            _ => false,
        },
    }
}

/// Applies a substitution to a term. Every variable occurring in `t` must be
/// bound; the first unbound one is reported as an error.
///
/// Together with [`match_pattern`] this satisfies the round-trip law
/// `substitute(pattern, match_pattern(pattern, subject)) = subject` whenever
/// the match succeeds.
pub fn substitute(t: &Term, theta: &Substitution) -> Result<Term, TermError> {
    match t {
        Term::Var(i) => theta.get(i).cloned().ok_or(TermError::UnboundVariable(*i)),
        Term::Node { op, args } => {
            let mut new_args = Vec::with_capacity(args.len());
            for a in args {
                new_args.push(substitute(a, theta)?);
            }
            Ok(Term::Node { op: op.clone(), args: new_args })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn app(a: Term, b: Term) -> Term {
        Term::node("app", [a, b])
    }

    fn c(name: &str) -> Term {
        Term::constant(name)
    }

    #[test]
    fn display_uses_juxtaposition_for_app() {
        let t = app(app(c("S"), c("K")), Term::var(2));
        assert_eq!(t.to_string(), "((S K) x2)");
        let u = Term::node("R", [c("I")]);
        assert_eq!(u.to_string(), "R(I)");
    }

    #[test]
    fn positions_are_lexicographically_ordered() {
        let t = app(app(c("S"), c("K")), c("I"));
        let pos = t.positions();
        assert_eq!(
            pos,
            alloc::vec![
                alloc::vec![],
                alloc::vec![0],
                alloc::vec![0, 0],
                alloc::vec![0, 1],
                alloc::vec![1],
            ]
        );
        let mut sorted = pos.clone();
        sorted.sort();
        assert_eq!(pos, sorted, "pre-order must agree with lexicographic order");
    }

    #[test]
    fn postorder_visits_children_first() {
        let t = app(app(c("S"), c("K")), c("I"));
        let pos = t.positions_postorder();
        assert_eq!(
            pos,
            alloc::vec![
                alloc::vec![0, 0],
                alloc::vec![0, 1],
                alloc::vec![0],
                alloc::vec![1],
                alloc::vec![],
            ]
        );
    }

    #[test]
    fn subterm_and_replace_roundtrip() {
        let t = app(app(c("S"), c("K")), c("I"));
        for pos in t.positions() {
            let sub = t.subterm_at(&pos).unwrap().clone();
            assert_eq!(t.replace_at(&pos, sub).unwrap(), t);
        }
    }

    #[test]
    fn replace_at_bad_position_is_an_error() {
        let t = app(c("I"), c("K"));
        let err = t.replace_at(&[0, 0], c("S")).unwrap_err();
        assert_eq!(
            err,
            TermError::UnknownPosition { position: alloc::vec![0, 0], valid_prefix: 1 }
        );
    }

    #[test]
    fn match_binds_each_variable_once() {
        // (I x0) against (I K)
        let pattern = app(c("I"), Term::var(0));
        let subject = app(c("I"), c("K"));
        let theta = match_pattern(&pattern, &subject).unwrap();
        assert_eq!(theta.len(), 1);
        assert_eq!(theta[&0], c("K"));
    }

    #[test]
    fn match_fails_on_head_mismatch() {
        let pattern = app(c("I"), Term::var(0));
        let subject = app(c("K"), c("I"));
        assert_eq!(match_pattern(&pattern, &subject), None);
    }

    #[test]
    fn nonlinear_pattern_requires_equal_subterms() {
        let pattern = app(Term::var(0), Term::var(0));
        assert!(match_pattern(&pattern, &app(c("K"), c("K"))).is_some());
        assert!(match_pattern(&pattern, &app(c("K"), c("I"))).is_none());
    }

    #[test]
    fn substitute_reports_unbound_variables() {
        let t = app(Term::var(0), Term::var(3));
        let mut theta = Substitution::new();
        theta.insert(0, c("K"));
        assert_eq!(substitute(&t, &theta), Err(TermError::UnboundVariable(3)));
    }

    #[test]
    fn match_then_substitute_restores_subject() {
        let pattern = app(app(app(c("S"), Term::var(0)), Term::var(1)), Term::var(2));
        let subject = app(app(app(c("S"), c("K")), app(c("I"), c("K"))), c("S"));
        let theta = match_pattern(&pattern, &subject).unwrap();
        assert_eq!(substitute(&pattern, &theta).unwrap(), subject);
    }

    #[test]
    fn term_order_puts_variables_before_nodes() {
        assert!(Term::var(5) < c("S"));
        assert!(c("K") < c("S"));
        assert!(c("S") < app(c("I"), c("I")), "name comparison precedes structure");
    }
}
