use loopss::naturality::{
    check_naturality, induce_on_page, run_scenario, transport_differentials, FibrationMorphism, NaturalityError,
};
use loopss::scenarios::{constant_loop_morphism, materialize, Preset, PresetId};
use loopss::sseq::{run_to_limit, Bidegree, DifferentialAssignment, Run, Scenario};

fn pair(n: u32) -> Scenario {
    materialize(&Preset::new(PresetId::PairWithMorphism { n })).unwrap()
}

fn source_run(s: &Scenario) -> Run {
    run_to_limit(&s.link.as_ref().unwrap().source).unwrap()
}

#[test]
fn corrupted_transgression_is_a_violation() {
    let s = pair(2);
    let link = s.link.clone().unwrap();
    let mut corrupt = s.clone();
    corrupt.link = None;
    corrupt.assignments = vec![DifferentialAssignment {
        page: 4,
        source: corrupt.parse("y").unwrap(),
        image: corrupt.parse("2*u*x^2").unwrap(),
    }];
    let dst = run_to_limit(&corrupt).unwrap();
    let violations = check_naturality(&source_run(&s), &dst, &link.morphism).unwrap();
    let cells: Vec<(u32, Bidegree)> = violations.iter().map(|v| (v.page, v.cell)).collect();
    assert_eq!(cells, vec![(4, Bidegree::new(0, 4)), (4, Bidegree::new(0, 8))]);
    assert_eq!((violations[0].page, violations[0].cell, violations[0].target), (4, Bidegree::new(0, 4), Bidegree::new(4, 1)));
    assert!(violations[0].detail.contains("3*u*x^2"), "{}", violations[0].detail);
}

#[test]
fn identity_morphism_is_natural_and_induces_identity() {
    for n in 1..=3 {
        let s = link_source(n);
        let run = run_to_limit(&s).unwrap();
        let id = FibrationMorphism::identity(&s);
        assert!(check_naturality(&run, &run, &id).unwrap().is_empty());
        for r in 2..=run.last_page_index() {
            let induced = induce_on_page(&id, &run, &run, r).unwrap();
            for (cell, m) in &induced.maps {
                let dim = run.layout.dim(*cell);
                assert_eq!(m, &loopss::linalg::ExactMatrix::identity(run.layout.ring(), dim));
            }
        }
    }
}

fn link_source(n: u32) -> Scenario {
    materialize(&Preset::new(PresetId::PathCpnDiag { n })).unwrap()
}

#[test]
fn zero_morphism_is_natural() {
    let s = pair(2);
    let src = source_run(&s);
    let dst = run_scenario(&s).unwrap().run;
    let zero = FibrationMorphism::zero(&src.scenario, &s).unwrap();
    assert!(check_naturality(&src, &dst, &zero).unwrap().is_empty());
}

#[test]
fn composing_with_identity_changes_nothing() {
    let s = pair(2);
    let source = &s.link.as_ref().unwrap().source;
    let m = constant_loop_morphism(source, &s).unwrap();
    let left = FibrationMorphism::identity(source).then(&m).unwrap();
    let right = m.then(&FibrationMorphism::identity(&s)).unwrap();
    let e2 = m.e2_map(source, &s).unwrap();
    assert_eq!(left.e2_map(source, &s).unwrap(), e2);
    assert_eq!(right.e2_map(source, &s).unwrap(), e2);
}

#[test]
fn transport_is_idempotent() {
    for n in 1..=3 {
        let s = pair(n);
        let link = s.link.as_ref().unwrap();
        let src = source_run(&s);
        let first = transport_differentials(&src, &link.morphism, &link.pairs, &s).unwrap();
        let mut installed = s.clone();
        installed.assignments.extend(first.iter().cloned());
        let second = transport_differentials(&src, &link.morphism, &link.pairs, &installed).unwrap();
        assert_eq!(first, second);
        let images: Vec<String> = first.iter().map(|a| format!("d{}({}) = {}", a.page, s.render(&a.source), s.render(&a.image))).collect();
        assert_eq!(images, vec!["d2(u) = 0".to_string(), format!("d{}(y) = {}*u*x^{}", 2 * n, n + 1, n).replace("x^1", "x")]);
    }
}

#[test]
fn explicit_and_transported_assignments_conflict() {
    let mut s = pair(2);
    s.assignments.push(DifferentialAssignment { page: 4, source: s.parse("y").unwrap(), image: s.parse("3*u*x^2").unwrap() });
    assert!(matches!(run_scenario(&s), Err(NaturalityError::Conflict(_))));
}

#[test]
fn mismatched_pair_is_rejected() {
    let mut s = pair(2);
    let link = s.link.as_mut().unwrap();
    link.pairs[1].1 = link.pairs[0].1.clone();
    let err = run_scenario(&s).unwrap_err();
    assert!(matches!(err, NaturalityError::Pair { index: 1, .. }), "{err}");
}

#[test]
fn transported_classes_keep_their_pages() {
    let s = pair(3);
    let linked = run_scenario(&s).unwrap();
    let pages: Vec<u32> = linked.transported.iter().map(|a| a.page).collect();
    assert_eq!(pages, vec![2, 6]);
    assert!(linked.run.installed.iter().any(|a| a.page == 2 && a.explicit_zero));
}
