//! Enumerates answer sets one at a time through the incremental solver interface.
//!
//!     cargo run --example enumerate [limit]

use lazy_asp::{parse_program, AnswerLimit, Solver, SolverConfig};

const PROGRAM: &str = "
item(1). item(2). item(3). item(4).
in(X) :- item(X), not out(X).
out(X) :- item(X), not in(X).
% never pack 1 and 2 together, always pack 3 or 4
:- in(1), in(2).
:- not in(3), not in(4).
";

fn main() {
    let limit: AnswerLimit = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("a positive number or `all`"))
        .unwrap_or(AnswerLimit::All);
    let program = parse_program(PROGRAM).unwrap();
    let mut solver = Solver::new(&program, SolverConfig { n_answers: limit, ..SolverConfig::default() });

    let mut n = 0;
    while let Some(answer) = solver.next_answer() {
        n += 1;
        let packed: Vec<&str> = answer.atoms().filter(|a| a.starts_with("in(")).collect();
        println!("Answer set {n}: {}", packed.join(" "));
    }
    println!("status: {}", solver.status().unwrap());
    println!("{}", solver.stats());
}
