mod common;

use std::collections::BTreeSet;

use lazy_asp::colouring::{generate_colouring_instance, random_edges};
use lazy_asp::heuristics::HeuristicKind;
use lazy_asp::search::{DeletionParams, PhasePolicy, RestartParams};
use lazy_asp::{parse_program, solve, AnswerLimit, AnswerSet, SolveStatus, Solver, SolverConfig};
use proptest::prelude::*;

fn answers(text: &str) -> BTreeSet<AnswerSet> {
    let program = parse_program(text).unwrap();
    let result = solve(&program, SolverConfig::all_answers());
    let set: BTreeSet<_> = result.answers.iter().cloned().collect();
    assert_eq!(set.len(), result.answers.len(), "duplicate answer sets");
    set
}

fn set(atoms: &[&str]) -> AnswerSet {
    AnswerSet::new(atoms.iter().map(|&a| a.to_owned()))
}

/// Restarts after every conflict and cleanups as often as possible.
fn stressed(heuristic: HeuristicKind, phase_policy: PhasePolicy) -> SolverConfig {
    SolverConfig {
        heuristic,
        phase_policy,
        restart_params: RestartParams {
            factor: 0.0,
            warmup: 0,
            luby_unit: 1,
            ..RestartParams::default()
        },
        deletion_params: DeletionParams {
            first_interval: 1,
            interval_step: 0,
            threshold_factor: 1e9,
            protected_lbd: 0,
            ..DeletionParams::default()
        },
        check_invariants: true,
        ..SolverConfig::all_answers()
    }
}

#[test]
fn small_programs() {
    assert_eq!(answers("a :- not b. b :- not a."), [set(&["a"]), set(&["b"])].into());
    assert!(answers("a :- not a.").is_empty());
    assert_eq!(answers("q(1,2). p(X) :- q(X,Y)."), [set(&["p(1)", "q(1,2)"])].into());
    assert_eq!(answers("a. b :- a."), [set(&["a", "b"])].into());
    assert_eq!(answers("a :- b. b :- a."), [set(&[])].into());
    assert!(answers("a. :- a.").is_empty());
    assert_eq!(answers(""), [set(&[])].into());
}

#[test]
fn unfounded_support_is_rejected() {
    // b can only be supported through itself
    let text = "a :- not b. b :- not a. b :- b, c. :- a.";
    assert_eq!(answers(text), [set(&["b"])].into());
    let text = "a :- not b. b :- c. c :- b. :- a.";
    assert!(answers(text).is_empty());
}

#[test]
fn status_values() {
    let program = parse_program("a :- not b. b :- not a.").unwrap();
    let limited = solve(&program, SolverConfig { n_answers: AnswerLimit::Count(1), ..SolverConfig::default() });
    assert_eq!(limited.status, SolveStatus::LimitReached);
    assert_eq!(limited.answers.len(), 1);
    let all = solve(&program, SolverConfig::all_answers());
    assert_eq!(all.status, SolveStatus::Exhausted);
    let unsat = solve(&parse_program("a :- not a.").unwrap(), SolverConfig::all_answers());
    assert_eq!(unsat.status, SolveStatus::Unsat);
}

#[test]
fn incremental_enumeration_matches_batch() {
    let program = parse_program("p(1). p(2). p(3). q(X) :- p(X), not r(X). r(X) :- p(X), not q(X).").unwrap();
    let mut solver = Solver::new(&program, SolverConfig::all_answers());
    let mut seen = Vec::new();
    while let Some(answer) = solver.next_answer() {
        assert!(solver.status().is_none() || solver.status() == Some(SolveStatus::Exhausted));
        seen.push(answer);
    }
    assert_eq!(solver.next_answer(), None);
    assert_eq!(solver.status(), Some(SolveStatus::Exhausted));
    assert_eq!(seen.len(), 8);
    assert_eq!(solver.stats().answers, 8);
    let batch = solve(&program, SolverConfig::all_answers());
    assert_eq!(batch.answers, seen);
}

#[test]
fn deterministic_runs() {
    for i in 0..50 {
        let (_, program, _) = common::random_program(i);
        for config in [SolverConfig::all_answers(), stressed(HeuristicKind::Vsids, PhasePolicy::Random(i))] {
            let a = solve(&program, config.clone());
            let b = solve(&program, config);
            assert_eq!(a.answers, b.answers);
            assert_eq!(a.stats.decisions, b.stats.decisions);
            assert_eq!(a.stats.conflicts, b.stats.conflicts);
        }
    }
}

/// Proper colourings counted by brute force over all colour vectors.
fn colourings(n: usize, edges: &[(usize, usize)], k: usize) -> usize {
    let mut count = 0;
    let mut colour = vec![0usize; n + 1];
    loop {
        if edges.iter().all(|&(a, b)| colour[a] != colour[b]) {
            count += 1;
        }
        let mut v = 1;
        loop {
            if v > n {
                return count;
            }
            colour[v] += 1;
            if colour[v] < k {
                break;
            }
            colour[v] = 0;
            v += 1;
        }
    }
}

#[test]
fn colouring_counts_under_stress() {
    let mut restarts = 0;
    let mut deleted = 0;
    for seed in 0..12 {
        let n = 5 + (seed as usize % 3);
        let p = 0.55;
        let program = parse_program(&generate_colouring_instance(n, p, 3, seed).unwrap()).unwrap();
        let expected = colourings(n, &random_edges(n, p, seed), 3);
        for heuristic in [HeuristicKind::Vsids, HeuristicKind::Naive] {
            for phase in [PhasePolicy::AllTrue, PhasePolicy::AllFalse, PhasePolicy::Random(seed)] {
                let result = solve(&program, stressed(heuristic, phase));
                restarts += result.stats.restarts;
                deleted += result.stats.deleted;
                let distinct: BTreeSet<_> = result.answers.iter().collect();
                assert_eq!(distinct.len(), result.answers.len());
                assert_eq!(result.answers.len(), expected, "seed {seed} {heuristic:?} {phase:?}");
            }
        }
    }
    assert!(restarts > 0 && deleted > 0, "restarts {restarts}, deleted {deleted}");
}

#[test]
fn stressed_search_control_keeps_answers() {
    for i in 0..200 {
        let (text, program, expected) = common::random_program(i);
        for heuristic in [HeuristicKind::Vsids, HeuristicKind::Naive] {
            let result = solve(&program, stressed(heuristic, PhasePolicy::Random(i)));
            let found: BTreeSet<_> = result.answers.iter().cloned().collect();
            assert_eq!(found.len(), result.answers.len(), "{text}");
            assert_eq!(found, expected, "{heuristic:?}\n{text}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn any_configuration_matches_the_oracle(
        index in 0u64..5000,
        restarts in any::<bool>(),
        deletion in any::<bool>(),
        naive in any::<bool>(),
        phase in 0u8..3,
        seed in any::<u64>(),
    ) {
        let (text, program, expected) = common::random_program(index);
        let config = SolverConfig {
            restarts,
            deletion,
            heuristic: if naive { HeuristicKind::Naive } else { HeuristicKind::Vsids },
            phase_policy: match phase {
                0 => PhasePolicy::AllTrue,
                1 => PhasePolicy::AllFalse,
                _ => PhasePolicy::Random(seed),
            },
            check_invariants: true,
            ..SolverConfig::all_answers()
        };
        let found: BTreeSet<_> = solve(&program, config).answers.into_iter().collect();
        prop_assert_eq!(found, expected, "{}", text);
    }
}
