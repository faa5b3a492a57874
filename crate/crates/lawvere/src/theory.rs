//! Theory presentations: signatures, oriented structural equations, rewrite
//! rules, validation, and canonical forms.
//!
//! A [`TheoryPresentation`] is the unit of configuration for the whole
//! engine. Its two kinds of directed pairs play different roles:
//!
//! * [`StructuralEquation`]s say when two terms present *the same* element.
//!   They are oriented left-to-right and applied exhaustively (innermost
//!   first) by [`TheoryPresentation::canonicalize`]; the engine only ever
//!   stores and compares canonical forms, so "equal modulo the equations"
//!   becomes plain syntactic equality. The orientation is required to be
//!   terminating by the theory author; a non-terminating orientation is
//!   caught at run time by the canonicalizer's fuel, never looped on.
//! * [`RewriteRule`]s say how terms *compute*. They are never applied by the
//!   canonicalizer; the rewrite engine turns them into labelled graph edges.
//!
//! Validation ([`TheoryPresentation::validate`]) checks the static
//! disciplines both of these rely on: declared arities are respected
//! everywhere, left-hand sides are rooted (an operation node, not a bare
//! variable) and left-linear, right-hand sides use only variables bound on
//! the left, and names within each kind are unique.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::term::{match_pattern, substitute, Term};

/// An operation symbol together with its arity.
///
/// Arities are plain natural numbers: this is a single-sorted setting where
/// an operation of arity `n` sends `n` terms to a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    /// The operation's name as it appears in terms and concrete syntax.
    pub name: String,
    /// Number of arguments every node with this operation must have.
    pub arity: usize,
}

/// An oriented structural equation `lhs = rhs`, applied left-to-right by the
/// canonicalizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralEquation {
    /// Name, unique among the theory's equations.
    pub name: String,
    /// The side that is rewritten away. Must be rooted and left-linear.
    pub lhs: Term,
    /// The replacement; may use only variables occurring in `lhs`.
    pub rhs: Term,
}

/// A rewrite rule `lhs => rhs`: one computation step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    /// Name, unique among the theory's rules; used as the edge label in
    /// rewrite graphs.
    pub name: String,
    /// The redex pattern. Must be rooted and left-linear.
    pub lhs: Term,
    /// The contractum; may use only variables occurring in `lhs`.
    pub rhs: Term,
}

/// A presentation: signature, oriented equations, rewrite rules, and a name.
///
/// Operations, equations, and rules keep their declaration order; the rule
/// order is observable (it breaks ties between redexes at the same position)
/// and the operation order is what [`TheoryPresentation::to_source`] prints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryPresentation {
    /// The theory's name.
    pub name: String,
    /// Declared operations, in declaration order.
    pub operations: Vec<Operation>,
    /// Oriented structural equations, in declaration order.
    pub equations: Vec<StructuralEquation>,
    /// Rewrite rules, in declaration order.
    pub rules: Vec<RewriteRule>,
}

/// One finding of [`TheoryPresentation::validate`]: which item is wrong and
/// why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    /// The offending item, e.g. `rule κ` or `op app`.
    pub item: String,
    /// Human-readable description of the violation.
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.item, self.message)
    }
}

/// Error from [`TheoryPresentation::canonicalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonError {
    /// The fuel bound was reached before the equations stopped applying —
    /// the sign of a non-terminating orientation.
    FuelExhausted {
        /// The fuel that was available.
        fuel: usize,
    },
    /// An equation was malformed (unbound right-hand-side variable); only
    /// reachable on presentations that fail [`TheoryPresentation::validate`].
    BadEquation(String),
}

impl fmt::Display for CanonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonError::FuelExhausted { fuel } => write!(
                f,
                "canonicalization did not reach a fixed point within {fuel} steps; \
                 the equation orientation looks non-terminating"
            ),
            CanonError::BadEquation(name) => {
                write!(f, "equation {name} binds variables incorrectly")
            }
        }
    }
}

impl core::error::Error for CanonError {}

/// Default step budget for [`TheoryPresentation::canonicalize`]. Generous:
/// a well-oriented equation set on desk-sized terms uses a tiny fraction.
pub const DEFAULT_CANON_FUEL: usize = 100_000;

impl TheoryPresentation {
    /// A presentation with no operations, equations, or rules.
    pub fn empty(name: impl Into<String>) -> Self {
        TheoryPresentation {
            name: name.into(),
            operations: Vec::new(),
            equations: Vec::new(),
            rules: Vec::new(),
        }
    }

    /// Looks up an operation by name.
    pub fn operation(&self, name: &str) -> Option<&Operation> {
        self.operations.iter().find(|o| o.name == name)
    }

    /// Looks up a rewrite rule by name.
    pub fn rule(&self, name: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    /// Declaration index of a rule, the tie-breaker for redex ordering.
    pub fn rule_index(&self, name: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.name == name)
    }

    /// Checks that a single term uses only declared operations at their
    /// declared arities, reporting the item name given in diagnostics.
    fn check_term(&self, item: &str, side: &str, t: &Term, out: &mut Vec<Diagnostic>) {
        match t {
            Term::Var(_) => {}
            Term::Node { op, args } => {
                match self.operation(op) {
                    None => out.push(Diagnostic {
                        item: item.to_string(),
                        message: format!("{side} uses undeclared operation {op}"),
                    }),
                    Some(decl) if decl.arity != args.len() => out.push(Diagnostic {
                        item: item.to_string(),
                        message: format!(
                            "{side} applies {op} to {} argument(s), but its arity is {}",
                            args.len(),
                            decl.arity
                        ),
                    }),
                    Some(_) => {}
                }
                for a in args {
                    self.check_term(item, side, a, out);
                }
            }
        }
    }

    fn check_directed_pair(
        &self,
        item: &str,
        lhs: &Term,
        rhs: &Term,
        out: &mut Vec<Diagnostic>,
    ) {
        self.check_term(item, "lhs", lhs, out);
        self.check_term(item, "rhs", rhs, out);
        if matches!(lhs, Term::Var(_)) {
            out.push(Diagnostic {
                item: item.to_string(),
                message: "lhs is a bare variable".to_string(),
            });
        }
        if !lhs.is_linear() {
            out.push(Diagnostic {
                item: item.to_string(),
                message: "lhs is not left-linear (a variable occurs twice)".to_string(),
            });
        }
        let bound = lhs.vars();
        for v in rhs.vars().difference(&bound) {
            out.push(Diagnostic {
                item: item.to_string(),
                message: format!("unbound variable x{v} on rhs"),
            });
        }
    }

    /// Checks every static discipline the engine relies on and returns all
    /// violations (an empty vector means the presentation is well formed):
    /// declared arities respected in every equation and rule, left-hand
    /// sides rooted and left-linear, right-hand-side variables bound on the
    /// left, and names unique within each kind.
    ///
    /// # Examples
    ///
    /// ```
    /// use lawvere::term::Term;
    /// use lawvere::theory::{RewriteRule, TheoryPresentation};
    ///
    /// let mut th = TheoryPresentation::empty("bad");
    /// th.rules.push(RewriteRule {
    ///     name: "loop".into(),
    ///     lhs: Term::var(0),
    ///     rhs: Term::var(0),
    /// });
    /// let diags = th.validate();
    /// assert_eq!(diags.len(), 1);
    /// assert!(diags[0].message.contains("bare variable"));
    /// ```
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for op in &self.operations {
            if !seen.insert(&op.name) {
                out.push(Diagnostic {
                    item: format!("op {}", op.name),
                    message: "duplicate operation name".to_string(),
                });
            }
        }
        let mut seen = BTreeSet::new();
        for eq in &self.equations {
            if !seen.insert(&eq.name) {
                out.push(Diagnostic {
                    item: format!("eq {}", eq.name),
                    message: "duplicate equation name".to_string(),
                });
            }
            self.check_directed_pair(&format!("eq {}", eq.name), &eq.lhs, &eq.rhs, &mut out);
        }
        let mut seen = BTreeSet::new();
        for rule in &self.rules {
            if !seen.insert(&rule.name) {
                out.push(Diagnostic {
                    item: format!("rule {}", rule.name),
                    message: "duplicate rule name".to_string(),
                });
            }
            self.check_directed_pair(
                &format!("rule {}", rule.name),
                &rule.lhs,
                &rule.rhs,
                &mut out,
            );
        }
        out
    }

    /// Applies the oriented structural equations innermost-first until none
    /// applies, with the default fuel. The result is the canonical
    /// representative of `t`'s equivalence class; the engine compares terms
    /// only in this form.
    ///
    /// Canonical forms are idempotent
    /// (`canonicalize(canonicalize(t)) = canonicalize(t)`), and for a
    /// confluent orientation they are independent of application order.
    ///
    /// # Examples
    ///
    /// The marked SKI calculus orients its congruence so the marker `R`
    /// migrates onto the head of an application and collapses on itself:
    ///
    /// ```
    /// use lawvere::calculi::th_ski_r;
    /// use lawvere::term::Term;
    ///
    /// let th = th_ski_r();
    /// let t = Term::node("R", [Term::node(
    ///     "app",
    ///     [Term::constant("K"), Term::constant("S")],
    /// )]);
    /// assert_eq!(th.canonicalize(&t).unwrap().to_string(), "(R(K) S)");
    /// ```
    pub fn canonicalize(&self, t: &Term) -> Result<Term, CanonError> {
        self.canonicalize_with_fuel(t, DEFAULT_CANON_FUEL)
    }

    /// [`canonicalize`](Self::canonicalize) with an explicit step budget.
    pub fn canonicalize_with_fuel(&self, t: &Term, fuel: usize) -> Result<Term, CanonError> {
        if self.equations.is_empty() {
            return Ok(t.clone());
        }
        let mut current = t.clone();
        for _ in 0..fuel {
            match self.equation_step(&current)? {
                Some(next) => current = next,
                None => return Ok(current),
            }
        }
        Err(CanonError::FuelExhausted { fuel })
    }

    /// Applies the first equation redex in leftmost-innermost order, or
    /// returns `None` if the term is already canonical.
    fn equation_step(&self, t: &Term) -> Result<Option<Term>, CanonError> {
        for pos in t.positions_postorder() {
            let sub = t.subterm_at(&pos).expect("position enumerated from t");
            for eq in &self.equations {
                if let Some(theta) = match_pattern(&eq.lhs, sub) {
                    let replacement = substitute(&eq.rhs, &theta)
                        .map_err(|_| CanonError::BadEquation(eq.name.clone()))?;
                    let next = t
                        .replace_at(&pos, replacement)
                        .expect("position enumerated from t");
                    return Ok(Some(next));
                }
            }
        }
        Ok(None)
    }

    /// `true` if the two terms have the same canonical form.
    pub fn canonically_equal(&self, a: &Term, b: &Term) -> Result<bool, CanonError> {
        Ok(self.canonicalize(a)? == self.canonicalize(b)?)
    }

    /// Renders the presentation in the concrete theory-file syntax
    /// understood by [`parse_theory`](crate::parse::parse_theory).
    ///
    /// Variables print as `x{index}`; for presentations produced by the
    /// parser (whose variable indices are always in first-occurrence order)
    /// parsing the output reproduces the presentation exactly.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("theory {}\n", self.name));
        if !self.operations.is_empty() {
            out.push('\n');
            for op in &self.operations {
                out.push_str(&format!("op {} : {}\n", op.name, op.arity));
            }
        }
        if !self.equations.is_empty() {
            out.push('\n');
            for eq in &self.equations {
                out.push_str(&format!("eq {} : {} = {}\n", eq.name, eq.lhs, eq.rhs));
            }
        }
        if !self.rules.is_empty() {
            out.push('\n');
            for rule in &self.rules {
                out.push_str(&format!("rule {} : {} => {}\n", rule.name, rule.lhs, rule.rhs));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculi::{th_ski, th_ski_r};
    use alloc::vec;

    fn app(a: Term, b: Term) -> Term {
        Term::node("app", [a, b])
    }

    fn r(t: Term) -> Term {
        Term::node("R", [t])
    }

    fn c(name: &str) -> Term {
        Term::constant(name)
    }

    #[test]
    fn builtin_theories_validate_cleanly() {
        assert!(th_ski().validate().is_empty());
        assert!(th_ski_r().validate().is_empty());
    }

    #[test]
    fn validate_flags_arity_mismatch() {
        let mut th = th_ski();
        th.rules.push(RewriteRule {
            name: "broken".into(),
            lhs: Term::node("app", [c("I")]),
            rhs: c("I"),
        });
        let diags = th.validate();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("arity"));
    }

    #[test]
    fn validate_flags_unbound_rhs_variable() {
        let mut th = th_ski();
        th.rules.push(RewriteRule {
            name: "broken".into(),
            lhs: app(c("I"), Term::var(0)),
            rhs: Term::var(1),
        });
        let diags = th.validate();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("unbound variable x1"));
    }

    #[test]
    fn validate_flags_nonlinear_lhs() {
        let mut th = th_ski();
        th.rules.push(RewriteRule {
            name: "eq_test".into(),
            lhs: app(Term::var(0), Term::var(0)),
            rhs: Term::var(0),
        });
        let diags = th.validate();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("left-linear"));
    }

    #[test]
    fn validate_flags_duplicate_names() {
        let mut th = th_ski();
        th.operations.push(Operation { name: "S".into(), arity: 0 });
        let diags = th.validate();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("duplicate"));
    }

    #[test]
    fn canonicalize_is_identity_without_equations() {
        let th = th_ski();
        let t = app(app(c("S"), c("K")), c("I"));
        assert_eq!(th.canonicalize(&t).unwrap(), t);
    }

    #[test]
    fn marker_migrates_to_head_position() {
        let th = th_ski_r();
        // R(((K S) t)) becomes ((R(K) S) t): the marker finds the head.
        let omega_ish = app(c("I"), c("I"));
        let t = r(app(app(c("K"), c("S")), omega_ish.clone()));
        let canon = th.canonicalize(&t).unwrap();
        assert_eq!(canon, app(app(r(c("K")), c("S")), omega_ish));
    }

    #[test]
    fn double_marker_collapses() {
        let th = th_ski_r();
        assert_eq!(th.canonicalize(&r(r(c("I")))).unwrap(), r(c("I")));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let th = th_ski_r();
        let t = r(app(r(app(c("K"), c("S"))), r(c("I"))));
        let once = th.canonicalize(&t).unwrap();
        let twice = th.canonicalize(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn non_terminating_orientation_reports_fuel_exhaustion() {
        let mut th = TheoryPresentation::empty("spin");
        th.operations.push(Operation { name: "a".into(), arity: 0 });
        th.operations.push(Operation { name: "f".into(), arity: 1 });
        th.equations.push(StructuralEquation {
            name: "swap".into(),
            lhs: Term::node("f", [Term::var(0)]),
            rhs: Term::node("f", [Term::var(0)]),
        });
        let t = Term::node("f", [c("a")]);
        assert_eq!(
            th.canonicalize_with_fuel(&t, 10),
            Err(CanonError::FuelExhausted { fuel: 10 })
        );
    }

    #[test]
    fn canonical_equality_sees_through_the_congruence() {
        let th = th_ski_r();
        let a = r(app(c("K"), c("S")));
        let b = app(r(c("K")), c("S"));
        assert!(th.canonically_equal(&a, &b).unwrap());
        assert!(!th.canonically_equal(&a, &c("K")).unwrap());
    }

    #[test]
    fn to_source_roundtrips_for_builtins() {
        for th in [th_ski(), th_ski_r()] {
            let reparsed = crate::parse::parse_theory(&th.to_source()).unwrap();
            assert_eq!(reparsed, th);
        }
    }

    #[test]
    fn validate_example_bare_variable_lhs() {
        let mut th = TheoryPresentation::empty("t");
        th.rules.push(RewriteRule { name: "id".into(), lhs: Term::var(0), rhs: Term::var(0) });
        let diags = th.validate();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].message, "lhs is a bare variable");
        assert_eq!(vec![diags[0].message.clone()], vec!["lhs is a bare variable".to_string()]);
    }
}
