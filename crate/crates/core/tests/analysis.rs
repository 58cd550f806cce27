mod common;

use acdkit::analysis::*;
use acdkit::random::{random_det_automaton, random_game, random_muller_ts, random_parity_ts, rng};
use acdkit::transforms::{acd_parity_transform, make_suitable_for_transformations, parity_colours};
use acdkit::zielonka::{build_zielonka_tree, zt_hd_rabin_automaton, zt_parity_automaton};
use acdkit::{Automaton, EdgeSet, TransitionSystem};
use common::*;

fn check_obstruction(ts: &TransitionSystem, o: &Obstruction) {
    match o {
        Obstruction::UnionFlips { vertex, first, second, accepting } => {
            for c in [first, second] {
                assert!(acdkit::cycles::is_cycle(ts, c));
                assert!(ts.states_of(c).contains(vertex));
                assert_eq!(accepts(ts, c), *accepting);
            }
            let u = first.union(second);
            assert!(acdkit::cycles::is_cycle(ts, &u));
            assert_ne!(accepts(ts, &u), *accepting);
        }
        Obstruction::Flower(f) => {
            assert!(f.cycles.len() >= 2);
            for (i, c) in f.cycles.iter().enumerate() {
                assert!(acdkit::cycles::is_cycle(ts, c));
                assert!(ts.states_of(c).contains(&f.vertex));
                assert_eq!(accepts(ts, c), f.positive == (i % 2 == 0));
                if i > 0 {
                    assert!(c.is_proper_subset(&f.cycles[i - 1]));
                }
            }
        }
    }
}

#[test]
fn hd_parity_is_history_deterministic() {
    let a = hd_parity();
    assert!(!a.is_deterministic());
    assert!(is_history_deterministic(&a).unwrap());
    let sets = letter_game::accepting_letter_sets(&a, acdkit::Budget::default()).unwrap();
    let mut expected = hd_parity_family();
    expected.sort();
    let mut got = sets;
    got.sort();
    assert_eq!(got, expected);
}

#[test]
fn abc_family_rabin_automaton_is_hd() {
    let (sigma, f) = abc_family();
    let r = zt_hd_rabin_automaton(&build_zielonka_tree(&sigma, &f).unwrap()).unwrap();
    assert!(is_history_deterministic(&r.automaton).unwrap());
}

#[test]
fn equivalence_against_one_state_muller() {
    let (sigma, f) = abc_family();
    let p = zt_parity_automaton(&build_zielonka_tree(&sigma, &f).unwrap()).unwrap().automaton;
    assert!(language_equiv_det(&p, &one_state_muller(3, f.clone())).unwrap());
    let mut other = f.clone();
    other.pop();
    assert!(!language_equiv_det(&p, &one_state_muller(3, other.clone())).unwrap());
    let cyc = equiv::distinguishing_cycle(&p, &one_state_muller(3, other), acdkit::Budget::default())
        .unwrap()
        .unwrap();
    assert!(!cyc.is_empty());
}

#[test]
fn minimisation_of_counter_products() {
    let (sigma, f) = abc_family();
    let p = zt_parity_automaton(&build_zielonka_tree(&sigma, &f).unwrap()).unwrap().automaton;
    let big = with_counter(&p, 3);
    assert_eq!(big.num_states(), 9);
    let min = minimize_muller_dpa(&big).unwrap();
    assert_eq!(min.num_states(), 3);
    assert!(language_equiv_det(&min, &one_state_muller(3, f)).unwrap());
}

#[test]
fn minimisation_rejects_non_muller_languages() {
    // Random automata may or may not recognise Muller languages; either
    // the result is equivalent or the error says so.
    let mut g = rng(9);
    for _ in 0..20 {
        let a = random_det_automaton(&mut g, 3, 2, 2, true).unwrap();
        match minimize_muller_dpa(&a) {
            Ok(m) => assert!(language_equiv_det(&m, &a).unwrap()),
            Err(acdkit::Error::NotMullerLanguage) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn parity_solver_matches_brute_force() {
    let mut g = rng(21);
    for _ in 0..30 {
        let game = random_game(&mut g, 5, 4, 2, true).unwrap();
        let sol = solve_parity_game(&game).unwrap();
        let brute = parity_winners_brute(&game);
        for v in 0..game.num_vertices() {
            assert_eq!(sol.eve_wins(v), brute[v]);
            assert_ne!(sol.eve_wins(v), sol.adam_region.contains(v));
            if sol.eve_wins(v) && game.owner(v) == acdkit::Player::Eve {
                let e = sol.eve_strategy[v].unwrap();
                assert!(sol.eve_wins(game.ts.edge(e).tgt));
            }
        }
    }
}

#[test]
fn muller_solver_matches_brute_force() {
    let mut g = rng(22);
    for _ in 0..20 {
        let game = random_game(&mut g, 5, 3, 2, false).unwrap();
        let sol = solve_muller_game(&game).unwrap();
        let brute = muller_winners_brute(&game);
        let got: Vec<bool> = (0..game.num_vertices()).map(|v| sol.eve_wins(v)).collect();
        assert_eq!(got, brute);
        let s = make_suitable_for_transformations(&game).unwrap();
        let sol2 = solve_muller_game(&s.game).unwrap();
        for v in 0..s.num_original {
            assert_eq!(sol2.eve_wins(v), sol.eve_wins(v));
        }
    }
}

#[test]
fn attractor_reaches_targets() {
    let mut g = rng(4);
    let game = random_game(&mut g, 6, 2, 2, true).unwrap();
    let target = acdkit::VertexSet::from([0]);
    let attr = attractor(&game, &target);
    assert!(attr.contains(0));
    let all: EdgeSet = game.ts.all_edges();
    assert_eq!(edge_attractor(&game, &all), acdkit::VertexSet::full(game.num_vertices()));
}

#[test]
fn typeness_flags_and_witnesses() {
    let mut g = rng(31);
    for i in 0..40 {
        let ts = if i % 2 == 0 {
            random_muller_ts(&mut g, 3, 3, 2).unwrap()
        } else {
            random_parity_ts(&mut g, 3, 3, 2).unwrap()
        };
        let r = typeness(&ts).unwrap();
        assert_eq!(r.parity_type, r.rabin_type && r.streett_type);
        for kind in TypeKind::ALL {
            match r.outcome(kind) {
                Relabelling::Relabelled(t2) => {
                    assert!(r.flag(kind));
                    assert!(typeness::same_cycle_verdicts(&ts, t2).unwrap());
                    if ts.num_edges() <= 12 {
                        assert!(same_verdicts_brute(&ts, t2));
                    }
                }
                Relabelling::Impossible(o) => {
                    assert!(!r.flag(kind));
                    check_obstruction(&ts, o);
                }
            }
        }
    }
}

#[test]
fn parity_systems_are_parity_type() {
    let mut g = rng(32);
    for _ in 0..20 {
        let ts = random_parity_ts(&mut g, 4, 4, 2).unwrap();
        assert!(typeness(&ts).unwrap().parity_type);
    }
}

#[test]
fn normal_form_properties_and_minimality() {
    let mut g = rng(41);
    for _ in 0..15 {
        let ts = random_parity_ts(&mut g, 3, 3, 2).unwrap();
        if ts.num_edges() > 6 {
            continue;
        }
        let n = acdkit::transforms::normalize_parity(&ts).unwrap();
        assert!(check_path_property(&n).unwrap());
        assert!(check_petal_property(&n).unwrap());
        let col = parity_colours(&n).unwrap();
        let negative = col.iter().all(|&c| c >= 1);
        let lo = if negative { 1 } else { 0 };
        for other in equivalent_colourings(&ts, lo, 4) {
            assert!(col.iter().zip(&other).all(|(a, b)| a <= b), "{col:?} vs {other:?}");
        }
    }
}

#[test]
fn transform_output_satisfies_normal_form_properties() {
    let mut g = rng(42);
    for _ in 0..20 {
        let ts = random_muller_ts(&mut g, 3, 3, 2).unwrap();
        let p = acd_parity_transform(&ts).unwrap().result;
        assert!(acdkit::transforms::is_normal_form(&p).unwrap());
        assert!(check_path_property(&p).unwrap());
        assert!(check_petal_property(&p).unwrap());
    }
}

#[test]
fn letter_game_has_expected_shape() {
    let a: Automaton = hd_parity();
    let lg = letter_game(&a).unwrap();
    assert_eq!(lg.num_vertices(), a.num_states() * (1 + a.num_letters()));
}
