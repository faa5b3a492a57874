//! Integration tests for the marking and unmarking theory morphisms:
//! the retraction law, step-for-step simulation, and the lazy/eager
//! contrast the marker makes observable.

mod common;

use std::collections::BTreeSet;

use common::{random_closed_ski, term, XorShift};
use lawvere::calculi::{
    apply_morphism, morphism_f_r, morphism_u_r, th_ski, th_ski_r, validate_morphism, RuleImage,
    TheoryMorphism,
};
use lawvere::rewrite::{
    enumerate_closed_terms, find_redexes, normalize, successors, Mode, NormalizeOutcome, Strategy,
};
use lawvere::Term;

/// The target rule a morphism names for a source rule.
fn named_image(m: &TheoryMorphism, rule: &str) -> String {
    match m.rule_map.get(rule) {
        Some(RuleImage::Named(n)) => n.clone(),
        other => panic!("rule {rule} has no named image: {other:?}"),
    }
}

/// Unmarking undoes marking on every closed term with at most seven
/// nodes — the retraction law, checked exhaustively.
#[test]
fn unmarking_undoes_marking_exhaustively() {
    let ski = th_ski();
    let f_r = morphism_f_r();
    let u_r = morphism_u_r();
    let terms = enumerate_closed_terms(&ski, 7).unwrap();
    assert_eq!(terms.len(), 471);
    for t in terms {
        let marked = apply_morphism(&f_r, &t).unwrap();
        let roundtrip = apply_morphism(&u_r, &marked).unwrap();
        assert_eq!(roundtrip, t, "u_R(f_R(t)) must give back t");
    }
}

/// The same retraction law on a thousand random larger terms.
#[test]
fn unmarking_undoes_marking_on_random_terms() {
    let f_r = morphism_f_r();
    let u_r = morphism_u_r();
    let mut rng = XorShift::new(0xAB1E);
    for _ in 0..1000 {
        let t = random_closed_ski(&mut rng, 9);
        let marked = apply_morphism(&f_r, &t).unwrap();
        let roundtrip = apply_morphism(&u_r, &marked).unwrap();
        assert_eq!(roundtrip, t, "u_R(f_R(t)) must give back t");
    }
}

/// Marking and the structural equations push the marker onto the head of
/// the spine, where it arms exactly one marked redex.
#[test]
fn marking_pushes_the_marker_to_the_head() {
    let f_r = morphism_f_r();
    let skir = th_ski_r();
    let t = term(&f_r.source, "((K S) K)");
    let marked = apply_morphism(&f_r, &t).unwrap();
    assert_eq!(marked, term(&skir, "((R(K) S) K)"));

    let succs = successors(&skir, &marked, Mode::Single).unwrap();
    assert_eq!(succs.len(), 1, "only the marked head is a redex");
    assert_eq!(succs[0].1, term(&skir, "R(S)"));
}

/// Plain steps and marked steps are the same steps: keyed by rule name
/// (through the morphism's rule map) and successor (through unmarking),
/// the two successor sets coincide on every closed term up to seven
/// nodes.
#[test]
fn marked_rewriting_simulates_plain_rewriting_step_for_step() {
    let ski = th_ski();
    let skir = th_ski_r();
    let f_r = morphism_f_r();
    let u_r = morphism_u_r();
    for t in enumerate_closed_terms(&ski, 7).unwrap() {
        let marked = apply_morphism(&f_r, &t).unwrap();

        let mut plain: BTreeSet<(String, Term)> = BTreeSet::new();
        for (label, succ) in successors(&ski, &t, Mode::Single).unwrap() {
            plain.insert((named_image(&f_r, &label.redexes()[0].rule), succ));
        }

        let mut projected: BTreeSet<(String, Term)> = BTreeSet::new();
        for (label, succ) in successors(&skir, &marked, Mode::Single).unwrap() {
            let rule = label.redexes()[0].rule.clone();
            projected.insert((rule, apply_morphism(&u_r, &succ).unwrap()));
        }

        assert_eq!(plain, projected, "simulation mismatch at {t}");
    }
}

/// Every marked step projects, through unmarking, to a single plain step
/// with the corresponding rule — checked on all small marked terms.
#[test]
fn each_marked_step_projects_to_one_plain_step() {
    let ski = th_ski();
    let skir = th_ski_r();
    let u_r = morphism_u_r();
    for m in enumerate_closed_terms(&skir, 5).unwrap() {
        let unmarked = apply_morphism(&u_r, &m).unwrap();
        for (label, succ) in successors(&skir, &m, Mode::Single).unwrap() {
            let rule = named_image(&u_r, &label.redexes()[0].rule);
            let image = apply_morphism(&u_r, &succ).unwrap();
            let found = successors(&ski, &unmarked, Mode::Single)
                .unwrap()
                .into_iter()
                .any(|(l, s)| l.redexes()[0].rule == rule && s == image);
            assert!(found, "marked step {m} → {succ} has no plain {rule} counterpart");
        }
    }
}

/// Terms with no marker have no redexes: the marked theory only computes
/// where the marker says to.
#[test]
fn unmarked_terms_are_inert_in_the_marked_theory() {
    let skir = th_ski_r();
    for src in ["((K S) K)", "((I S) (K K))", "(((S K) K) S)"] {
        let t = term(&skir, src);
        assert!(find_redexes(&skir, &t).is_empty(), "{src} should be stuck");
    }
}

/// Both builtin morphisms — and the identity morphisms — survive a full
/// audit: op images well-formed, equations preserved, rule images firing.
#[test]
fn the_builtin_morphisms_validate() {
    let f_report = validate_morphism(&morphism_f_r(), 100);
    assert!(f_report.passed(), "{:#?}", f_report.checks);
    // Four operations and three rules, no equations in the source.
    assert_eq!(f_report.checks.len(), 7);

    let u_report = validate_morphism(&morphism_u_r(), 100);
    assert!(u_report.passed(), "{:#?}", u_report.checks);
    // Five operations, two equations, three rules.
    assert_eq!(u_report.checks.len(), 10);

    for th in [th_ski(), th_ski_r()] {
        assert!(validate_morphism(&TheoryMorphism::identity(&th), 10).passed());
    }
}

/// The marker makes evaluation order observable: the outermost strategy
/// discards a diverging argument the innermost strategy gets lost in.
#[test]
fn marking_separates_lazy_from_eager_evaluation() {
    let ski = th_ski();
    let skir = th_ski_r();
    let f_r = morphism_f_r();
    let omega = "(((S I) I) ((S I) I))";
    let marked = apply_morphism(&f_r, &term(&ski, &format!("((K S) {omega})"))).unwrap();

    let lazy = normalize(&skir, &marked, Strategy::LeftmostOutermost, 50).unwrap();
    match lazy.outcome {
        NormalizeOutcome::NormalForm(nf) => assert_eq!(nf, term(&skir, "R(S)")),
        NormalizeOutcome::Timeout(last) => panic!("lazy run diverged at {last}"),
    }

    let eager = normalize(&skir, &marked, Strategy::LeftmostInnermost, 20).unwrap();
    assert_eq!(eager.steps.len(), 20, "eager run should burn all its fuel");
    match eager.outcome {
        NormalizeOutcome::Timeout(_) => {}
        NormalizeOutcome::NormalForm(nf) => panic!("eager run unexpectedly reached {nf}"),
    }
    for step in &eager.steps {
        assert!(!find_redexes(&skir, &step.term).is_empty());
    }
}
