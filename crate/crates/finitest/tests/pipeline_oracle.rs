//! Stage-by-stage soundness of the compilation pipeline against the exact
//! model checker, exhaustively over desk-scale graph classes.

mod common;

use common::{class_censuses, corpus_2_1, corpus_3_2, labeled_matchings};
use finitest::catalog::{chv, TypeCatalog};
use finitest::compiler::{
    compile_hnf, extract_templates, reduce_to_component_radius, to_dnf, unify_cap, unify_radius,
    CompileOptions,
};
use finitest::graph::ExplicitOracle;
use finitest::logic::hanf::eval_hnf;
use finitest::logic::{eval_exact, parse_sentence};
use finitest::tester::{exact_decide, realize_counts};

/// Every pipeline stage preserves truth on every in-class graph, and the
/// final templates agree with the exact model checker.
fn check_stages(catalog: &TypeCatalog, case: &common::Regression, graphs: &[finitest::graph::ExplicitGraph]) {
    let opts = CompileOptions::default();
    let sentence = parse_sentence(case.fo)
        .unwrap_or_else(|e| panic!("{}: sentence parse failed: {e}", case.name));

    let uniform = unify_radius(&case.hnf, catalog, &opts).unwrap();
    let dnf = to_dnf(&uniform, &opts).unwrap();
    let (k, capped) = unify_cap(&dnf, &opts).unwrap();
    let reduced = reduce_to_component_radius(&capped, catalog, k, &opts).unwrap();
    let templates = extract_templates(&reduced, catalog, k).unwrap();
    let compiled = compile_hnf(&case.hnf, catalog, &opts).unwrap();
    assert_eq!(compiled.templates, templates, "{}: driver must match stages", case.name);

    for g in graphs {
        let truth = eval_exact(g, &sentence)
            .unwrap_or_else(|e| panic!("{}: eval failed: {e}", case.name));
        let h0 = eval_hnf(g, &case.hnf).unwrap();
        assert_eq!(h0, truth, "{}: supplied normal form must match the sentence", case.name);

        let h1 = eval_hnf(g, &uniform).unwrap();
        assert_eq!(h1, truth, "{}: radius unification changed the meaning", case.name);

        let d1 = dnf.eval(g).unwrap();
        assert_eq!(d1, truth, "{}: dnf conversion changed the meaning", case.name);

        let d2 = capped.eval(g).unwrap();
        assert_eq!(d2, truth, "{}: cap unification changed the meaning", case.name);

        let d3 = reduced.eval(g).unwrap();
        assert_eq!(d3, truth, "{}: component reduction changed the meaning", case.name);

        let census = chv(g, catalog).unwrap();
        assert_eq!(
            compiled.satisfied_by(&census),
            truth,
            "{}: templates disagree with the model checker on {:?}",
            case.name,
            census
        );
    }
}

#[test]
fn pipeline_sound_on_degree_one_class() {
    let catalog = TypeCatalog::new(2, 1).unwrap();
    let mut graphs = Vec::new();
    for n in 0..=8 {
        graphs.extend(labeled_matchings(n));
    }
    assert_eq!(graphs.len(), 1 + 1 + 2 + 4 + 10 + 26 + 76 + 232 + 764);
    for case in corpus_2_1() {
        check_stages(&catalog, &case, &graphs);
    }
}

#[test]
fn pipeline_sound_on_degree_two_class() {
    let catalog = TypeCatalog::new(3, 2).unwrap();
    let graphs: Vec<_> = class_censuses(&catalog, 9)
        .iter()
        .map(|census| realize_counts(census, &catalog).unwrap())
        .collect();
    assert_eq!(graphs.len(), 84);
    for case in corpus_3_2() {
        check_stages(&catalog, &case, &graphs);
    }
}

#[test]
fn unsatisfiable_clause_drops_are_certified() {
    // A contradictory conjunction compiles to the empty template set, and
    // the model checker confirms unsatisfiability on every small graph.
    let catalog = TypeCatalog::new(2, 1).unwrap();
    let case = common::psi();
    let contradiction = finitest::logic::hanf::HnfSentence::And(vec![
        case.hnf.clone(),
        finitest::logic::hanf::HnfSentence::Not(Box::new(case.hnf.clone())),
    ]);
    let compiled =
        compile_hnf(&contradiction, &catalog, &CompileOptions::default()).unwrap();
    assert!(compiled.templates.is_empty());
    for n in 0..=6 {
        for g in labeled_matchings(n) {
            assert!(!eval_hnf(&g, &contradiction).unwrap());
        }
    }
}

#[test]
fn exact_regime_matches_model_checker() {
    // Reading the whole graph and checking templates agrees with direct
    // evaluation of the source sentence on every small class member.
    let catalog = TypeCatalog::new(2, 1).unwrap();
    let case = common::psi();
    let sentence = parse_sentence(case.fo).unwrap();
    let compiled = compile_hnf(&case.hnf, &catalog, &CompileOptions::default()).unwrap();
    for n in 0..=8 {
        for g in labeled_matchings(n) {
            let oracle = ExplicitOracle::new(&g, 1);
            assert_eq!(
                exact_decide(&oracle, &compiled, &catalog).unwrap(),
                eval_exact(&g, &sentence).unwrap()
            );
        }
    }
}

#[test]
fn guarded_fragment_compilation_matches_hand_written_forms() {
    // The sentence recognizer and the hand-written normal forms land on
    // extensionally equal properties.
    let opts = CompileOptions::default();
    let catalog = TypeCatalog::new(2, 1).unwrap();
    for case in corpus_2_1() {
        let sentence = parse_sentence(case.fo).unwrap();
        let via_recognizer =
            finitest::compiler::sentence_to_hnf(&sentence, &catalog, &opts).unwrap();
        let a = compile_hnf(&via_recognizer, &catalog, &opts).unwrap();
        let b = compile_hnf(&case.hnf, &catalog, &opts).unwrap();
        for census in class_censuses(&catalog, 10) {
            let census = finitest::catalog::Chv(census);
            assert_eq!(
                a.satisfied_by(&census),
                b.satisfied_by(&census),
                "{}: recognizer and hand form disagree on {:?}",
                case.name,
                census
            );
        }
    }
}
