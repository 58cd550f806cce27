use acdkit::acceptance::Acceptance;
use acdkit::random::{random_det_automaton, random_game, rng};
use acdkit::zielonka::{build_zielonka_tree, zt_hd_rabin_automaton, zt_parity_automaton};
use acdkit::{Automaton, MarkSet};
use acdkit_io::*;
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Edges as sorted tuples, so that automata differing only in edge order
/// compare equal.
fn canon(a: &Automaton) -> Vec<(usize, usize, usize, Vec<usize>)> {
    let mut v: Vec<_> = (0..a.ts.num_edges())
        .map(|e| {
            let ed = a.ts.edge(e);
            (ed.src, a.letter(e), ed.tgt, ed.marks.to_vec())
        })
        .collect();
    v.sort();
    v
}

fn check_formula_matches(a: &Automaton) {
    let acc = a.ts.acceptance();
    let el = acdkit::AcceptanceCondition::emerson_lei(acc.num_marks(), acc.to_emerson_lei()).unwrap();
    assert!(same_semantics(acc, &el));
}

#[test]
fn parity_fixture_round_trips() {
    let a = parse_hoa(&fixture("parity3.hoa")).unwrap();
    assert_eq!(a.num_states(), 3);
    assert_eq!(a.num_letters(), 2);
    assert_eq!(a.ts.acceptance().kind(), &Acceptance::Parity(vec![0, 1, 2]));
    let text = emit_hoa(&a);
    let b = parse_hoa(&text).unwrap();
    assert_eq!(a.ts, b.ts);
    assert_eq!(a.letters(), b.letters());
    assert_eq!(emit_hoa(&b), text);
    check_formula_matches(&a);
}

#[test]
fn rabin_fixture_has_two_pairs() {
    let a = parse_hoa(&fixture("rabin2.hoa")).unwrap();
    let Acceptance::Rabin(pairs) = a.ts.acceptance().kind() else { panic!("not Rabin") };
    assert_eq!(
        pairs,
        &vec![
            (MarkSet::from([1]), MarkSet::from([0])),
            (MarkSet::from([3]), MarkSet::from([2])),
        ]
    );
    // `[t]` expands to both letters.
    assert_eq!(a.ts.out_edges(1).len(), 2);
    check_formula_matches(&a);
}

#[test]
fn named_parity_variants_match_their_formulas() {
    let cases = [
        ("parity max even 3", "Inf(2) | (Fin(2) & Fin(1) & Inf(0))"),
        ("parity min odd 2", "Fin(0) & Inf(1)"),
        ("parity max odd 2", "Inf(1) | Fin(1) & Fin(0)"),
    ];
    for (name, f) in cases {
        let text = format!(
            "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nacc-name: {name}\nAcceptance: {} {f}\n--BODY--\nState: 0\n[t] 0 {{0}}\n[t] 0 {{1}}\n--END--\n",
            name.split(' ').last().unwrap()
        );
        let a = parse_hoa(&text).unwrap();
        assert!(matches!(a.ts.acceptance().kind(), Acceptance::Parity(_)), "{name}");
        check_formula_matches(&a);
    }
}

#[test]
fn misleading_acc_name_falls_back_to_formula() {
    let text = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nacc-name: Buchi\nAcceptance: 1 Fin(0)\n--BODY--\nState: 0\n[t] 0 {0}\n--END--\n";
    let a = parse_hoa(text).unwrap();
    assert!(matches!(a.ts.acceptance().kind(), Acceptance::EmersonLei(_)));
}

#[test]
fn abc_family_emits_parity_header() {
    let (sigma, f) = (MarkSet::from([0, 1, 2]), vec![MarkSet::from([0, 1]), MarkSet::from([0, 2]), MarkSet::from([1])]);
    let zt = build_zielonka_tree(&sigma, &f).unwrap();
    let a = zt_parity_automaton(&zt).unwrap().automaton;
    let text = emit_hoa(&a);
    assert!(text.contains("acc-name: parity min even"));
    assert!(text.contains("States: 3\n"));
    let b = parse_hoa(&text).unwrap();
    assert_eq!(canon(&a), canon(&b));
    let r = zt_hd_rabin_automaton(&zt).unwrap().automaton;
    let r2 = parse_hoa(&emit_hoa(&r)).unwrap();
    assert_eq!(r.ts.acceptance(), r2.ts.acceptance());
    assert_eq!(r2.ts.initial(), &[0, 1]);
}

#[test]
fn order_fixtures_are_equivalent() {
    let a = parse_hoa(&fixture("order_muller.hoa")).unwrap();
    let d = parse_hoa(&fixture("order_parity.hoa")).unwrap();
    assert_eq!(a.letter_names().unwrap(), &["a", "b", "c"]);
    assert!(acdkit::analysis::language_equiv_det(&a, &d).unwrap());
}

#[test]
fn parse_errors_carry_positions() {
    let text = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n[t] 3 {0}\n--END--\n";
    match parse_hoa(text) {
        Err(IoError::Parse { line, .. }) => assert_eq!(line, 8),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_hoa("HOA: v2\n"), Err(IoError::Parse { line: 1, col: 1, .. })));
    let state_based = "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0 {0}\n[t] 0\n--END--\n";
    assert!(matches!(parse_hoa(state_based), Err(IoError::Unsupported(_))));
    let implicit = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"p\"\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n0 {0}\n0 {0}\n--END--\n";
    assert!(matches!(parse_hoa(implicit), Err(IoError::Unsupported(_))));
    let sink = "HOA: v1\nStates: 2\nStart: 0\nAP: 0\nAcceptance: 1 Inf(0)\n--BODY--\nState: 0\n[t] 1 {0}\nState: 1\n--END--\n";
    assert!(matches!(parse_hoa(sink), Err(IoError::InvariantViolation(_))));
}

#[test]
fn condition_files() {
    let c = parse_condition(&fixture("cond_abc.txt")).unwrap();
    assert_eq!(c.names, vec!["a", "b", "c"]);
    assert_eq!(c.family.len(), 3);
    assert_eq!(parse_condition(&emit_condition(&c)).unwrap(), c);
    let e = parse_condition(&fixture("cond_empty.txt")).unwrap();
    assert!(e.family.is_empty());
    assert!(parse_condition("alphabet: a\naccept: b\n").is_err());
    assert!(parse_condition("accept: a\n").is_err());
}

#[test]
fn game_files() {
    let g = parse_game(&fixture("game_small.txt")).unwrap();
    assert_eq!(g.num_vertices(), 3);
    assert_eq!(parse_game(&emit_game(&g)).unwrap().ts, g.ts);
    assert!(matches!(parse_game(&fixture("game_sink.txt")), Err(IoError::InvariantViolation(_))));
    let eps_cycle = "marks: 1\nacceptance: parity\n0 eve\n0 0 {}\n";
    assert!(matches!(parse_game(eps_cycle), Err(IoError::InvariantViolation(_))));
    assert!(parse_game("marks: 1\nacceptance: parity\n0 bob\n").is_err());
}

#[test]
fn morphism_files() {
    let phi = parse_morphism(&fixture("bijective_morphism.txt")).unwrap();
    assert_eq!(phi.vmap, vec![0, 0, 1]);
    let back = parse_morphism(&emit_morphism(&phi)).unwrap();
    assert_eq!((back.vmap, back.emap), (phi.vmap, phi.emap));
    assert!(parse_morphism("vertices: 0\n").is_err());
}

#[test]
fn dot_exports() {
    let sigma = MarkSet::from([0, 1, 2]);
    let f = vec![MarkSet::from([0, 1]), MarkSet::from([0, 2]), MarkSet::from([1])];
    let zt = build_zielonka_tree(&sigma, &f).unwrap();
    let d = dot::zielonka_dot(&zt, None);
    assert_eq!(d.matches("shape=box").count(), 4);
    assert_eq!(d.matches("shape=ellipse").count(), 2);
    let single = build_zielonka_tree(&MarkSet::from([0]), &[]).unwrap();
    assert_eq!(dot::zielonka_dot(&single, None).matches("label=").count(), 1);

    let g = parse_game(&fixture("two_scc.txt")).unwrap();
    let acd = acdkit::acd::build_acd(&g.ts).unwrap();
    let d = dot::acd_dot(&acd);
    assert_eq!(d.matches("subgraph cluster_").count(), 2);
    assert!(d.contains("states {3,4}"));
    assert!(dot::game_dot(&g).contains("digraph game"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_automata_round_trip(seed in any::<u64>(), n in 1usize..6, letters in 1usize..5, k in 1usize..5, parity in any::<bool>()) {
        let a = random_det_automaton(&mut rng(seed), n, letters, k, parity).unwrap();
        let b = parse_hoa(&emit_hoa(&a)).unwrap();
        prop_assert_eq!(&a.ts, &b.ts);
        prop_assert_eq!(a.letters(), b.letters());
        prop_assert_eq!(a.num_letters(), b.num_letters());
    }

    #[test]
    fn random_games_round_trip(seed in any::<u64>(), parity in any::<bool>()) {
        let g = random_game(&mut rng(seed), 4, 3, 2, parity).unwrap();
        let h = parse_game(&emit_game(&g)).unwrap();
        prop_assert_eq!(&g.ts, &h.ts);
        prop_assert_eq!(g.owners(), h.owners());
    }
}
