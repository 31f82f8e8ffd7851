//! End-to-end tests of the Horn engine: saturation, satisfiability,
//! entailment and query answering, driven through the parser.

use hdql::horn::{self, HornProgram, QueryOutcome, SatVerdict};
use hdql::linalg::DEFAULT_EPSILON as EPS;
use hdql::model::Bindings;
use hdql::sentence::Sentence;
use hdql::term::Term;
use hdql::{parse_sentence_str, parse_spec, CVector, ExtentKind, SpecFile};
use std::collections::BTreeMap;

fn load(path: &str) -> SpecFile {
    let text = std::fs::read_to_string(format!(
        "{}/../../specs/{path}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    parse_spec(&text).unwrap()
}

fn program_of(spec: &SpecFile) -> HornProgram {
    let model = spec.build_model(&BTreeMap::new()).unwrap();
    HornProgram::from_spec(spec, model).unwrap()
}

#[test]
fn superdense_saturates_to_singleton_extents() {
    let spec = load("superdense.spec");
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let e = &initial.model.valuation[&format!("p{i}{j}")];
        assert_eq!(e.kind(), ExtentKind::Finite);
        assert_eq!(e.points().len(), 1);
        assert!(e.points()[0].approx_eq(&CVector::ket(&format!("{i}{j}")), EPS));
    }
    assert!(matches!(
        horn::check_satisfiable(&program, &initial),
        SatVerdict::Sat
    ));
    assert!(initial.warnings.is_empty());
}

#[test]
fn superdense_entails_the_correctness_sentences() {
    let spec = load("superdense.spec");
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    let anchor = Term::Const("bell00".into());
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let s = parse_sentence_str(
            &format!("[s{i} ; d{j} ; u0 ; u1] p{i}{j}"),
            &spec.signature,
        )
        .unwrap();
        assert_eq!(
            horn::entails(&program, &initial, &anchor, &s),
            Ok(true),
            "codeword ({i},{j})"
        );
    }
    // a mismatched codeword is refuted
    let wrong = parse_sentence_str("[s0 ; d1 ; u0 ; u1] p10", &spec.signature).unwrap();
    assert_eq!(horn::entails(&program, &initial, &anchor, &wrong), Ok(false));
}

#[test]
fn reach_program_saturates_in_two_rounds_to_the_orbit() {
    let spec = load("reach.spec");
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    let e = &initial.model.valuation["p"];
    assert_eq!(e.points().len(), 2);
    assert!(e.contains(&CVector::ket("0"), EPS));
    assert!(e.contains(&CVector::ket("1"), EPS));
    // the forall instantiation is bounded, and says so
    assert!(initial.warnings.iter().any(|w| w.contains("forall")));
}

#[test]
fn reach_query_answers_with_the_smallest_term() {
    let spec = load("reach.spec");
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    let q = &spec.queries[0];
    match horn::answer_query(&program, &initial, q.anchor.as_ref(), &q.vars, &q.body).unwrap() {
        QueryOutcome::Answer(theta) => {
            assert_eq!(theta["x"], Term::Ket("0".into()));
        }
        other => panic!("expected an answer, got {other:?}"),
    }
}

#[test]
fn superdense_query_answers_with_declared_codeword() {
    let spec = load("superdense.spec");
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    let q = hdql::parse_query_str("exists x . @ x p10", &spec.signature).unwrap();
    match horn::answer_query(&program, &initial, None, &q.vars, &q.body).unwrap() {
        QueryOutcome::Answer(theta) => assert_eq!(theta["x"], Term::Ket("10".into())),
        other => panic!("expected an answer, got {other:?}"),
    }
}

#[test]
fn unsatisfiable_body_yields_no_answer_at_depth() {
    let spec = parse_spec(
        "dim 2\ngate u = X\nprop p\nprop dead\naxiom @ ket(0) p\n",
    )
    .unwrap();
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    let q = hdql::parse_query_str("exists x . @ x p /\\ @ x dead", &spec.signature).unwrap();
    match horn::answer_query(&program, &initial, None, &q.vars, &q.body).unwrap() {
        QueryOutcome::NoAnswerAtDepth(d) => assert_eq!(d, 3),
        other => panic!("expected no answer, got {other:?}"),
    }
}

#[test]
fn global_contradiction_is_unsat_with_nonzero_witness() {
    let spec = load("inconsistent.spec");
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    // p was forced everywhere
    assert!(initial.model.valuation["p"].is_all());
    match horn::check_satisfiable(&program, &initial) {
        SatVerdict::Unsat { clause, witness } => {
            assert_eq!(clause, 1); // the ~p axiom
            let w = witness.expect("a concrete witness");
            assert!(w.norm() > 0.5);
        }
        other => panic!("expected UNSAT, got {other:?}"),
    }
}

#[test]
fn sasaki_hook_constraint_detects_unsat() {
    // r1 holds at |0⟩; the hook forces extent(r1) ⊆ extent(r2); the third
    // axiom puts |0⟩ in the complement of r2. Unsatisfiable.
    let spec = parse_spec(
        "dim 2\nclosed prop r1\nclosed prop r2\naxiom @ ket(0) r1\naxiom r1 ~> r2\naxiom @ ket(0) ~r2\n",
    )
    .unwrap();
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    match horn::check_satisfiable(&program, &initial) {
        SatVerdict::Unsat { clause, .. } => assert_eq!(clause, 1),
        other => panic!("expected UNSAT, got {other:?}"),
    }
}

#[test]
fn closed_props_span_close_their_witnesses() {
    let spec = parse_spec(
        "dim 4\nclosed prop r\naxiom @ ket(00) r\naxiom @ ket(11) r\n",
    )
    .unwrap();
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    let e = &initial.model.valuation["r"];
    assert_eq!(e.kind(), ExtentKind::Subspace);
    let s = e.space().unwrap();
    assert_eq!(s.rank(), 2);
    // the span contains superpositions of the two witnesses
    let bell = CVector::ket("00").add(&CVector::ket("11")).unwrap();
    assert!(s.contains(&bell, EPS).unwrap());
    assert!(matches!(
        horn::check_satisfiable(&program, &initial),
        SatVerdict::Sat
    ));
}

#[test]
fn teleport_program_is_satisfiable_and_correct_for_samples() {
    let spec = load("teleport.spec");
    let mut rng_state = 42u64;
    for _ in 0..5 {
        let (a, b) = pseudo_unit_pair(&mut rng_state);
        let mut params = BTreeMap::new();
        params.insert("alpha".to_string(), a);
        params.insert("beta".to_string(), b);
        let model = spec.build_model(&params).unwrap();
        let program = HornProgram::from_spec(&spec, model).unwrap();
        let initial = horn::saturate(&program).unwrap();
        assert!(matches!(
            horn::check_satisfiable(&program, &initial),
            SatVerdict::Sat
        ));
        let s = parse_sentence_str(
            "[(u0;u1;q00;s0;d0) + (u0;u1;q01;s1;d0) + (u0;u1;q10;s0;d1) + (u0;u1;q11;s1;d1)] p",
            &spec.signature,
        )
        .unwrap();
        let anchor = Term::Const("input".into());
        assert_eq!(horn::entails(&program, &initial, &anchor, &s), Ok(true));
    }
}

#[test]
fn saturation_is_monotone_and_idempotent() {
    // adding clauses never removes derived facts
    let smaller = parse_spec("dim 2\ngate u = X\nprop p\naxiom @ ket(0) p\n").unwrap();
    let larger = parse_spec(
        "dim 2\ngate u = X\nprop p\naxiom @ ket(0) p\naxiom forall x . @ x p => @ u(x) p\n",
    )
    .unwrap();
    let p1 = program_of(&smaller);
    let p2 = program_of(&larger);
    let m1 = horn::saturate(&p1).unwrap();
    let m2 = horn::saturate(&p2).unwrap();
    for w in m1.model.valuation["p"].points() {
        assert!(m2.model.valuation["p"].contains(w, EPS));
    }

    // rerunning saturation with the derived model as the base adds nothing
    let again = HornProgram::new(
        p2.signature.clone(),
        m2.model.clone(),
        p2.clauses.clone(),
        p2.config,
    )
    .unwrap();
    let m3 = horn::saturate(&again).unwrap();
    assert_eq!(
        m3.model.valuation["p"].points().len(),
        m2.model.valuation["p"].points().len()
    );
}

#[test]
fn non_horn_clauses_are_rejected() {
    let sig = parse_spec("dim 2\nprop p\n").unwrap().signature;
    let clause = parse_sentence_str("!p", &sig).unwrap();
    let model = hdql::Model::new(2);
    let err = HornProgram::new(sig, model, vec![clause], horn::EngineConfig::default());
    assert!(matches!(err, Err(horn::HornError::NotHorn { .. })));
}

#[test]
fn origin_satisfies_derived_closed_sentences() {
    let spec = parse_spec("dim 2\nclosed prop r\naxiom @ ket(0) r\n").unwrap();
    let program = program_of(&spec);
    let initial = horn::saturate(&program).unwrap();
    let ctx = initial.ctx(&program.config);
    let rho: Sentence = parse_sentence_str("r ~> r", &spec.signature).unwrap();
    assert_eq!(
        ctx.sat_local(&CVector::zero(2), &rho, &Bindings::new()),
        Ok(true)
    );
}

// deterministic unit pair, avoids pulling rand into the test
fn pseudo_unit_pair(state: &mut u64) -> (hdql::C64, hdql::C64) {
    let mut next = || {
        *state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((*state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    let g = [next(), next(), next(), next()];
    let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    (
        hdql::C64::new(g[0] / n, g[1] / n),
        hdql::C64::new(g[2] / n, g[3] / n),
    )
}
