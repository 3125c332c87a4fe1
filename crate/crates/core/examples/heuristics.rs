//! Watches the decisions of dependency-driven VSIDS and of the naive heuristic.
//!
//!     cargo run --example heuristics

use std::cell::RefCell;
use std::rc::Rc;

use lazy_asp::heuristics::HeuristicKind;
use lazy_asp::search::PhasePolicy;
use lazy_asp::{parse_program, AnswerLimit, Solver, SolverConfig};

const PROGRAM: &str = "
v(1). v(2). v(3). v(4). v(5).
e(1,2). e(2,3). e(3,4). e(4,5). e(5,1). e(1,3).
in(X) :- v(X), not out(X).
out(X) :- v(X), not in(X).
% independent dominating sets of a 5-cycle with a chord
:- e(X,Y), in(X), in(Y).
dominated(Y) :- e(X,Y), in(X).
dominated(X) :- e(X,Y), in(Y).
:- out(X), not dominated(X).
";

fn run(heuristic: HeuristicKind, phase_policy: PhasePolicy) {
    let program = parse_program(PROGRAM).unwrap();
    let config = SolverConfig {
        heuristic,
        phase_policy,
        n_answers: AnswerLimit::All,
        ..SolverConfig::default()
    };
    let mut solver = Solver::new(&program, config);
    let log = Rc::new(RefCell::new(Vec::new()));
    let sink = log.clone();
    solver.set_decision_observer(move |info| {
        let sign = if info.sign { '+' } else { '-' };
        sink.borrow_mut().push(format!("{sign}{}", info.atoms.display(info.atom)));
    });
    let mut answers = 0;
    while solver.next_answer().is_some() {
        answers += 1;
    }
    let stats = solver.stats();
    println!("{heuristic:?} / {phase_policy}: {answers} answer sets, {} decisions, {} conflicts", stats.decisions, stats.conflicts);
    for d in log.borrow().iter().take(8) {
        println!("    {d}");
    }
}

fn main() {
    for heuristic in [HeuristicKind::Vsids, HeuristicKind::Naive] {
        for phase in [PhasePolicy::AllTrue, PhasePolicy::AllFalse, PhasePolicy::Random(3)] {
            run(heuristic, phase);
        }
    }
}
