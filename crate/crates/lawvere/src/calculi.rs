//! Built-in calculi and theory morphisms.
//!
//! Two theories ship with the library:
//!
//! * [`th_ski`] — the SKI combinator calculus as a rewrite theory. Three
//!   constants, one binary application, three rules, no structural
//!   equations:
//!
//!   | rule | rewrite                                 |
//!   |------|-----------------------------------------|
//!   | `σ`  | `(((S x) y) z) ⇒ ((x z) (y z))`          |
//!   | `κ`  | `((K x) y) ⇒ x`                          |
//!   | `ι`  | `(I x) ⇒ x`                              |
//!
//! * [`th_ski_r`] — marked SKI. A unary reduction marker `R` is adjoined,
//!   rewriting is restricted to marked head positions, and two oriented
//!   structural equations keep markers in a canonical position (pushed onto
//!   the head, never stacked):
//!
//!   | kind | name   | statement                                    |
//!   |------|--------|----------------------------------------------|
//!   | eq   | `head` | `R((x y)) = (R(x) y)`                        |
//!   | eq   | `idem` | `R(R(x)) = R(x)`                             |
//!   | rule | `σ_r`  | `(((R(S) x) y) z) ⇒ ((R(x) z) (y z))`        |
//!   | rule | `κ_r`  | `((R(K) x) y) ⇒ R(x)`                        |
//!   | rule | `ι_r`  | `(R(I) x) ⇒ R(x)`                            |
//!
//! The same presentations are shipped as text files in the theory-file
//! grammar ([`SKI_SOURCE`], [`SKI_R_SOURCE`]); the test suite parses those
//! and checks they agree with the builders exactly.
//!
//! [`TheoryMorphism`] connects the two: [`morphism_f_r`] marks every
//! application (reading plain SKI as "everything is a reduction context"),
//! and [`morphism_u_r`] erases markers. Morphism images of rewrite rules
//! are recorded in a [`rule_map`](TheoryMorphism::rule_map) and audited by
//! [`validate_morphism`]: a [`RuleImage::Named`] image passes when the
//! named target rule fires at the root of the translated left-hand side —
//! the translation turns every source redex into a target redex of that
//! rule. (It does *not* demand that the one step reproduce the translated
//! right-hand side verbatim: marking is not on-the-nose functorial in that
//! sense, because a marked step leaves its freshly built arguments
//! unmarked. The report records when the stronger property does hold, as
//! it does for every rule of the unmarking morphism.) A
//! [`RuleImage::Derivable`] image instead asks for the translated
//! right-hand side to be literally reachable from the translated left-hand
//! side by a bounded breadth-first search.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rewrite::{successors, Mode};
use crate::term::{match_pattern, substitute, Term, TermError};
use crate::theory::{
    CanonError, Operation, RewriteRule, StructuralEquation, TheoryPresentation,
};

/// The SKI theory file, verbatim.
pub const SKI_SOURCE: &str = include_str!("../theories/ski.th");

/// The marked-SKI theory file, verbatim.
pub const SKI_R_SOURCE: &str = include_str!("../theories/ski_r.th");

fn app(l: Term, r: Term) -> Term {
    Term::node("app", [l, r])
}

fn marked(t: Term) -> Term {
    Term::node("R", [t])
}

fn v(i: usize) -> Term {
    Term::var(i)
}

/// The SKI combinator calculus: constants `S`, `K`, `I`, application, and
/// the rules `σ`, `κ`, `ι`. No structural equations.
pub fn th_ski() -> TheoryPresentation {
    TheoryPresentation {
        name: "ski".to_string(),
        operations: vec![
            Operation { name: "S".to_string(), arity: 0 },
            Operation { name: "K".to_string(), arity: 0 },
            Operation { name: "I".to_string(), arity: 0 },
            Operation { name: "app".to_string(), arity: 2 },
        ],
        equations: vec![],
        rules: vec![
            RewriteRule {
                name: "σ".to_string(),
                lhs: app(app(app(Term::constant("S"), v(0)), v(1)), v(2)),
                rhs: app(app(v(0), v(2)), app(v(1), v(2))),
            },
            RewriteRule {
                name: "κ".to_string(),
                lhs: app(app(Term::constant("K"), v(0)), v(1)),
                rhs: v(0),
            },
            RewriteRule {
                name: "ι".to_string(),
                lhs: app(Term::constant("I"), v(0)),
                rhs: v(0),
            },
        ],
    }
}

/// Marked SKI: SKI plus a unary reduction marker `R`, with structural
/// equations `head` and `idem` keeping markers canonical and the marked
/// rules `σ_r`, `κ_r`, `ι_r` firing only at marked heads.
pub fn th_ski_r() -> TheoryPresentation {
    TheoryPresentation {
        name: "ski_r".to_string(),
        operations: vec![
            Operation { name: "S".to_string(), arity: 0 },
            Operation { name: "K".to_string(), arity: 0 },
            Operation { name: "I".to_string(), arity: 0 },
            Operation { name: "R".to_string(), arity: 1 },
            Operation { name: "app".to_string(), arity: 2 },
        ],
        equations: vec![
            StructuralEquation {
                name: "head".to_string(),
                lhs: marked(app(v(0), v(1))),
                rhs: app(marked(v(0)), v(1)),
            },
            StructuralEquation {
                name: "idem".to_string(),
                lhs: marked(marked(v(0))),
                rhs: marked(v(0)),
            },
        ],
        rules: vec![
            RewriteRule {
                name: "σ_r".to_string(),
                lhs: app(app(app(marked(Term::constant("S")), v(0)), v(1)), v(2)),
                rhs: app(app(marked(v(0)), v(2)), app(v(1), v(2))),
            },
            RewriteRule {
                name: "κ_r".to_string(),
                lhs: app(app(marked(Term::constant("K")), v(0)), v(1)),
                rhs: marked(v(0)),
            },
            RewriteRule {
                name: "ι_r".to_string(),
                lhs: app(marked(Term::constant("I")), v(0)),
                rhs: marked(v(0)),
            },
        ],
    }
}

/// How a morphism justifies the image of one source rule.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleImage {
    /// The named target rule fires at the root of the translated
    /// left-hand side.
    Named(String),
    /// The translated right-hand side is reachable from the translated
    /// left-hand side by target rewriting (bounded search).
    Derivable,
}

/// A morphism of rewrite theories: operations map to derived operations of
/// the target (terms over `x0..x(arity-1)`), and each source rule is sent
/// to a target justification per [`RuleImage`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryMorphism {
    /// Display name, e.g. `"f_R"`.
    pub name: String,
    /// The theory terms are translated out of.
    pub source: TheoryPresentation,
    /// The theory terms are translated into.
    pub target: TheoryPresentation,
    /// For each source operation, its image as a target term over the
    /// variables `x0..x(arity-1)`.
    pub op_map: BTreeMap<String, Term>,
    /// For each source rule, how its image rewrite is justified.
    pub rule_map: BTreeMap<String, RuleImage>,
}

impl TheoryMorphism {
    /// The identity morphism on a theory: every operation maps to itself
    /// applied to fresh variables, every rule to itself by name.
    pub fn identity(theory: &TheoryPresentation) -> Self {
        let op_map = theory
            .operations
            .iter()
            .map(|op| (op.name.clone(), Term::node(op.name.clone(), (0..op.arity).map(v))))
            .collect();
        let rule_map = theory
            .rules
            .iter()
            .map(|r| (r.name.clone(), RuleImage::Named(r.name.clone())))
            .collect();
        TheoryMorphism {
            name: format!("id_{}", theory.name),
            source: theory.clone(),
            target: theory.clone(),
            op_map,
            rule_map,
        }
    }
}

/// The marking morphism `f_R : SKI → marked SKI`: constants are fixed and
/// `app ↦ R(app(x0, x1))`, so every application of the source becomes a
/// reduction context. Rules map `σ ↦ σ_r`, `κ ↦ κ_r`, `ι ↦ ι_r`.
pub fn morphism_f_r() -> TheoryMorphism {
    let mut op_map = BTreeMap::new();
    op_map.insert("S".to_string(), Term::constant("S"));
    op_map.insert("K".to_string(), Term::constant("K"));
    op_map.insert("I".to_string(), Term::constant("I"));
    op_map.insert("app".to_string(), marked(app(v(0), v(1))));
    let mut rule_map = BTreeMap::new();
    rule_map.insert("σ".to_string(), RuleImage::Named("σ_r".to_string()));
    rule_map.insert("κ".to_string(), RuleImage::Named("κ_r".to_string()));
    rule_map.insert("ι".to_string(), RuleImage::Named("ι_r".to_string()));
    TheoryMorphism {
        name: "f_R".to_string(),
        source: th_ski(),
        target: th_ski_r(),
        op_map,
        rule_map,
    }
}

/// The unmarking morphism `u_R : marked SKI → SKI`: `R ↦ x0` (the marker
/// is erased), everything else is fixed. Rules map `σ_r ↦ σ`, `κ_r ↦ κ`,
/// `ι_r ↦ ι`; for this direction each marked rule's image is exactly one
/// literal unmarked step.
pub fn morphism_u_r() -> TheoryMorphism {
    let mut op_map = BTreeMap::new();
    op_map.insert("S".to_string(), Term::constant("S"));
    op_map.insert("K".to_string(), Term::constant("K"));
    op_map.insert("I".to_string(), Term::constant("I"));
    op_map.insert("R".to_string(), v(0));
    op_map.insert("app".to_string(), app(v(0), v(1)));
    let mut rule_map = BTreeMap::new();
    rule_map.insert("σ_r".to_string(), RuleImage::Named("σ".to_string()));
    rule_map.insert("κ_r".to_string(), RuleImage::Named("κ".to_string()));
    rule_map.insert("ι_r".to_string(), RuleImage::Named("ι".to_string()));
    TheoryMorphism {
        name: "u_R".to_string(),
        source: th_ski_r(),
        target: th_ski(),
        op_map,
        rule_map,
    }
}

/// Errors from [`apply_morphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismError {
    /// A source operation has no entry in the op map.
    MissingOp(String),
    /// An op-map image used a variable outside its operation's arity.
    Term(TermError),
    /// Target canonicalization failed.
    Canon(CanonError),
}

impl fmt::Display for MorphismError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismError::MissingOp(op) => {
                write!(f, "operation {op} has no image under the morphism")
            }
            MorphismError::Term(e) => write!(f, "{e}"),
            MorphismError::Canon(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for MorphismError {}

impl From<TermError> for MorphismError {
    fn from(e: TermError) -> Self {
        MorphismError::Term(e)
    }
}

impl From<CanonError> for MorphismError {
    fn from(e: CanonError) -> Self {
        MorphismError::Canon(e)
    }
}

/// Structural replacement without canonicalization: every operation node
/// is replaced by its op-map image with the translated children
/// substituted for `x0..`.
fn replace_ops(m: &TheoryMorphism, t: &Term) -> Result<Term, MorphismError> {
    match t {
        Term::Var(i) => Ok(Term::Var(*i)),
        Term::Node { op, args } => {
            let image = m
                .op_map
                .get(op)
                .ok_or_else(|| MorphismError::MissingOp(op.clone()))?;
            let translated: Result<Vec<Term>, MorphismError> =
                args.iter().map(|a| replace_ops(m, a)).collect();
            let subst: crate::term::Substitution =
                translated?.into_iter().enumerate().collect();
            Ok(substitute(image, &subst)?)
        }
    }
}

/// Translates a term along a morphism: homomorphic replacement of every
/// operation by its image, then canonicalization in the target theory.
///
/// # Examples
///
/// ```
/// use lawvere::calculi::{apply_morphism, morphism_f_r, morphism_u_r};
/// use lawvere::parse::parse_term;
///
/// let f = morphism_f_r();
/// let t = parse_term(&f.source, "(I K)").unwrap();
/// let marked = apply_morphism(&f, &t).unwrap();
/// assert_eq!(marked.to_string(), "(R(I) K)");
///
/// let u = morphism_u_r();
/// assert_eq!(apply_morphism(&u, &marked).unwrap(), t);
/// ```
pub fn apply_morphism(m: &TheoryMorphism, t: &Term) -> Result<Term, MorphismError> {
    let replaced = replace_ops(m, t)?;
    Ok(m.target.canonicalize(&replaced)?)
}

/// One item of a [`MorphismReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    /// What was checked, e.g. `"op app"`, `"eq head"`, `"rule σ"`.
    pub subject: String,
    /// Whether the check passed.
    pub passed: bool,
    /// Human-readable explanation of the outcome.
    pub detail: String,
}

/// Itemized outcome of [`validate_morphism`]. Failures are data, not
/// errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    /// Name of the audited morphism.
    pub morphism: String,
    /// Every check that ran, in order: operations, equations, rules.
    pub checks: Vec<MorphismCheck>,
}

impl MorphismReport {
    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Breadth-first reachability in a theory's rewrite relation: does `from`
/// reach `to` within `fuel` expansions? Both terms may be open.
fn derivable_within(
    theory: &TheoryPresentation,
    from: &Term,
    to: &Term,
    fuel: usize,
) -> Result<bool, crate::rewrite::RewriteError> {
    if from == to {
        return Ok(true);
    }
    let mut seen: BTreeSet<Term> = BTreeSet::new();
    seen.insert(from.clone());
    let mut frontier = vec![from.clone()];
    let mut budget = fuel;
    while !frontier.is_empty() && budget > 0 {
        let mut next = Vec::new();
        for t in frontier {
            if budget == 0 {
                break;
            }
            budget -= 1;
            for (_, succ) in successors(theory, &t, Mode::Single)? {
                if succ == *to {
                    return Ok(true);
                }
                if seen.insert(succ.clone()) {
                    next.push(succ);
                }
            }
        }
        frontier = next;
    }
    Ok(false)
}

/// Audits a morphism and itemizes the outcome:
///
/// * every source operation has an image whose variables fit its arity and
///   whose term is well-formed in the target;
/// * every source equation translates to a pair of terms with equal target
///   canonical forms;
/// * every source rule has a justification that holds — a
///   [`RuleImage::Named`] target rule that fires at the root of the
///   translated left-hand side, or [`RuleImage::Derivable`] reachability
///   of the translated right-hand side within `fuel` search expansions.
///
/// # Examples
///
/// ```
/// use lawvere::calculi::{morphism_f_r, morphism_u_r, validate_morphism};
///
/// assert!(validate_morphism(&morphism_f_r(), 100).passed());
/// assert!(validate_morphism(&morphism_u_r(), 100).passed());
/// ```
pub fn validate_morphism(m: &TheoryMorphism, fuel: usize) -> MorphismReport {
    let mut checks = Vec::new();

    // Operations: coverage, variable discipline, target well-formedness.
    for op in &m.source.operations {
        let subject = format!("op {}", op.name);
        match m.op_map.get(&op.name) {
            None => checks.push(MorphismCheck {
                subject,
                passed: false,
                detail: "no image in the op map".to_string(),
            }),
            Some(image) => {
                let bad_vars: Vec<usize> =
                    image.vars().into_iter().filter(|&i| i >= op.arity).collect();
                if !bad_vars.is_empty() {
                    checks.push(MorphismCheck {
                        subject,
                        passed: false,
                        detail: format!(
                            "image uses variable x{} beyond arity {}",
                            bad_vars[0], op.arity
                        ),
                    });
                    continue;
                }
                match image_well_formed(&m.target, image) {
                    Err(msg) => {
                        checks.push(MorphismCheck { subject, passed: false, detail: msg })
                    }
                    Ok(()) => checks.push(MorphismCheck {
                        subject,
                        passed: true,
                        detail: format!("maps to {image}"),
                    }),
                }
            }
        }
    }

    // Equations: both sides translate to the same canonical form.
    for eq in &m.source.equations {
        let subject = format!("eq {}", eq.name);
        let outcome = (|| -> Result<MorphismCheck, MorphismError> {
            let lhs = apply_morphism(m, &eq.lhs)?;
            let rhs = apply_morphism(m, &eq.rhs)?;
            Ok(if lhs == rhs {
                MorphismCheck {
                    subject: subject.clone(),
                    passed: true,
                    detail: format!("both sides translate to {lhs}"),
                }
            } else {
                MorphismCheck {
                    subject: subject.clone(),
                    passed: false,
                    detail: format!("sides translate to {lhs} and {rhs}, which differ"),
                }
            })
        })();
        checks.push(outcome.unwrap_or_else(|e| MorphismCheck {
            subject: format!("eq {}", eq.name),
            passed: false,
            detail: e.to_string(),
        }));
    }

    // Rules: each justification per its kind.
    for rule in &m.source.rules {
        let subject = format!("rule {}", rule.name);
        let outcome = match m.rule_map.get(&rule.name) {
            None => MorphismCheck {
                subject: subject.clone(),
                passed: false,
                detail: "no image in the rule map".to_string(),
            },
            Some(image) => check_rule_image(m, rule, image, fuel).unwrap_or_else(|e| {
                MorphismCheck {
                    subject: subject.clone(),
                    passed: false,
                    detail: e.to_string(),
                }
            }),
        };
        checks.push(MorphismCheck { subject, ..outcome });
    }

    // Rule-map entries that name no source rule are mistakes too.
    for name in m.rule_map.keys() {
        if m.source.rule(name).is_none() {
            checks.push(MorphismCheck {
                subject: format!("rule {name}"),
                passed: false,
                detail: "rule map names a rule the source theory does not declare".to_string(),
            });
        }
    }

    MorphismReport { morphism: m.name.clone(), checks }
}

/// Checks that an op-map image only uses operations the target declares,
/// at their declared arities.
fn image_well_formed(target: &TheoryPresentation, image: &Term) -> Result<(), String> {
    match image {
        Term::Var(_) => Ok(()),
        Term::Node { op, args } => {
            match target.operation(op) {
                None => return Err(format!("image uses operation {op}, not declared in target")),
                Some(decl) if decl.arity != args.len() => {
                    return Err(format!(
                        "image uses {op} with {} arguments, declared arity {}",
                        args.len(),
                        decl.arity
                    ))
                }
                Some(_) => {}
            }
            args.iter().try_for_each(|a| image_well_formed(target, a))
        }
    }
}

fn check_rule_image(
    m: &TheoryMorphism,
    rule: &RewriteRule,
    image: &RuleImage,
    fuel: usize,
) -> Result<MorphismCheck, MorphismError> {
    let lhs = apply_morphism(m, &rule.lhs)?;
    let rhs = apply_morphism(m, &rule.rhs)?;
    Ok(match image {
        RuleImage::Named(target_rule) => {
            let Some(decl) = m.target.rule(target_rule) else {
                return Ok(MorphismCheck {
                    subject: String::new(),
                    passed: false,
                    detail: format!("target theory declares no rule {target_rule}"),
                });
            };
            match match_pattern(&decl.lhs, &lhs) {
                None => MorphismCheck {
                    subject: String::new(),
                    passed: false,
                    detail: format!(
                        "{target_rule} does not fire at the root of the translated \
                         left-hand side {lhs}"
                    ),
                },
                Some(theta) => {
                    let step = m.target.canonicalize(&substitute(&decl.rhs, &theta)?)?;
                    let exact = if step == rhs {
                        "which is the translated right-hand side"
                    } else {
                        "related to the translated right-hand side by the marker discipline"
                    };
                    MorphismCheck {
                        subject: String::new(),
                        passed: true,
                        detail: format!(
                            "{target_rule} fires on the translated left-hand side {lhs}, \
                             one step yields {step}, {exact}"
                        ),
                    }
                }
            }
        }
        RuleImage::Derivable => match derivable_within(&m.target, &lhs, &rhs, fuel) {
            Ok(true) => MorphismCheck {
                subject: String::new(),
                passed: true,
                detail: format!("{lhs} rewrites to {rhs} within the search bound"),
            },
            Ok(false) => MorphismCheck {
                subject: String::new(),
                passed: false,
                detail: format!("{lhs} does not reach {rhs} within {fuel} expansions"),
            },
            Err(e) => MorphismCheck {
                subject: String::new(),
                passed: false,
                detail: e.to_string(),
            },
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_term, parse_theory};
    use crate::rewrite::enumerate_closed_terms;

    #[test]
    fn builtins_validate_cleanly() {
        assert!(th_ski().validate().is_empty());
        assert!(th_ski_r().validate().is_empty());
    }

    #[test]
    fn builtin_shapes() {
        let ski = th_ski();
        assert_eq!(ski.operations.len(), 4);
        assert_eq!(ski.equations.len(), 0);
        assert_eq!(ski.rules.len(), 3);
        let names: Vec<&str> = ski.rules.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["σ", "κ", "ι"]);

        let ski_r = th_ski_r();
        assert_eq!(ski_r.operations.len(), 5);
        assert_eq!(ski_r.equations.len(), 2);
        assert_eq!(ski_r.rules.len(), 3);
    }

    #[test]
    fn shipped_sources_agree_with_builders() {
        assert_eq!(parse_theory(SKI_SOURCE).unwrap(), th_ski());
        assert_eq!(parse_theory(SKI_R_SOURCE).unwrap(), th_ski_r());
    }

    #[test]
    fn marking_fixes_constants_and_marks_applications() {
        let f = morphism_f_r();
        let s = parse_term(&f.source, "S").unwrap();
        assert_eq!(apply_morphism(&f, &s).unwrap(), s);
        let t = parse_term(&f.source, "(I K)").unwrap();
        assert_eq!(
            apply_morphism(&f, &t).unwrap(),
            parse_term(&f.target, "(R(I) K)").unwrap()
        );
        let t = parse_term(&f.source, "((K S) K)").unwrap();
        assert_eq!(
            apply_morphism(&f, &t).unwrap(),
            parse_term(&f.target, "((R(K) S) K)").unwrap()
        );
    }

    #[test]
    fn unmarking_erases_markers() {
        let u = morphism_u_r();
        let t = parse_term(&u.source, "(R(K) S)").unwrap();
        assert_eq!(apply_morphism(&u, &t).unwrap(), parse_term(&u.target, "(K S)").unwrap());
        let t = parse_term(&u.source, "R(R(I))").unwrap();
        assert_eq!(apply_morphism(&u, &t).unwrap(), parse_term(&u.target, "I").unwrap());
    }

    #[test]
    fn unmarking_undoes_marking() {
        let f = morphism_f_r();
        let u = morphism_u_r();
        let t = parse_term(&f.source, "((K S) (I K))").unwrap();
        let there = apply_morphism(&f, &t).unwrap();
        assert_eq!(apply_morphism(&u, &there).unwrap(), t);
    }

    #[test]
    fn roundtrip_on_all_small_closed_terms() {
        let f = morphism_f_r();
        let u = morphism_u_r();
        let terms = enumerate_closed_terms(&f.source, 5).unwrap();
        assert_eq!(terms.len(), 66);
        for t in terms {
            let back = apply_morphism(&u, &apply_morphism(&f, &t).unwrap()).unwrap();
            assert_eq!(back, t, "roundtrip broke on {t}");
        }
    }

    #[test]
    fn both_builtin_morphisms_validate() {
        let report = validate_morphism(&morphism_f_r(), 100);
        assert!(report.passed(), "{:#?}", report.checks);
        // f_R's rule images fire but are not on-the-nose: the report says so.
        let sigma = report.checks.iter().find(|c| c.subject == "rule σ").unwrap();
        assert!(sigma.detail.contains("marker discipline"));

        let report = validate_morphism(&morphism_u_r(), 100);
        assert!(report.passed(), "{:#?}", report.checks);
        // u_R's images are exact single steps.
        for rule in ["rule σ_r", "rule κ_r", "rule ι_r"] {
            let check = report.checks.iter().find(|c| c.subject == rule).unwrap();
            assert!(check.detail.contains("which is the translated right-hand side"));
        }
    }

    #[test]
    fn identity_morphism_validates_and_fixes_terms() {
        let id = TheoryMorphism::identity(&th_ski_r());
        assert!(validate_morphism(&id, 10).passed());
        for src in ["S", "R(K)", "((R(K) S) K)"] {
            let t = parse_term(&id.source, src).unwrap();
            assert_eq!(apply_morphism(&id, &t).unwrap(), t);
        }
    }

    #[test]
    fn misdirected_rule_image_fails_validation() {
        let mut broken = morphism_f_r();
        // Un-mark the application image and send κ to the wrong rule.
        broken.op_map.insert("app".to_string(), app(v(0), v(1)));
        broken.rule_map.insert("κ".to_string(), RuleImage::Named("ι_r".to_string()));
        let report = validate_morphism(&broken, 100);
        assert!(!report.passed());
        let kappa = report.checks.iter().find(|c| c.subject == "rule κ").unwrap();
        assert!(!kappa.passed);
        assert!(kappa.detail.contains("does not fire"));
    }

    #[test]
    fn out_of_arity_variable_in_op_image_fails_validation() {
        let mut broken = morphism_f_r();
        broken.op_map.insert("app".to_string(), marked(app(v(0), v(5))));
        let report = validate_morphism(&broken, 10);
        let item = report.checks.iter().find(|c| c.subject == "op app").unwrap();
        assert!(!item.passed);
        assert!(item.detail.contains("x5"));
    }

    #[test]
    fn missing_op_image_is_an_application_error() {
        let mut broken = morphism_f_r();
        broken.op_map.remove("app");
        let t = parse_term(&broken.source, "(I K)").unwrap();
        assert_eq!(
            apply_morphism(&broken, &t),
            Err(MorphismError::MissingOp("app".to_string()))
        );
        assert!(!validate_morphism(&broken, 10).passed());
    }

    #[test]
    fn derivable_image_uses_bounded_search() {
        // Send ι to "derivable": translated lhs (R(I) x0) must reach
        // translated rhs... which for f_R is x0 — unreachable, since marks
        // never vanish. The search must come back false, not hang.
        let mut m = morphism_f_r();
        m.rule_map.insert("ι".to_string(), RuleImage::Derivable);
        let report = validate_morphism(&m, 50);
        let iota = report.checks.iter().find(|c| c.subject == "rule ι").unwrap();
        assert!(!iota.passed);

        // For u_R the same switch passes: (I x0) really does reach x0.
        let mut m = morphism_u_r();
        m.rule_map.insert("ι_r".to_string(), RuleImage::Derivable);
        let report = validate_morphism(&m, 50);
        let iota = report.checks.iter().find(|c| c.subject == "rule ι_r").unwrap();
        assert!(iota.passed, "{}", iota.detail);
    }
}
