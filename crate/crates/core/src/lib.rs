//! A lazy-grounding answer-set solver.
//!
//! Rules are instantiated only once their positive bodies may hold under the current partial
//! assignment, and the instances are translated into nogoods for a conflict-driven search.
//! The search branches only on rule bodies with negation, learns nogoods from conflicts,
//! restarts adaptively, saves phases and periodically forgets inactive learned nogoods.
//!
//! ```
//! use lazy_asp::{parse_program, solve, SolverConfig};
//!
//! let program = parse_program("a :- not b. b :- not a.").unwrap();
//! let result = solve(&program, SolverConfig::all_answers());
//! assert_eq!(result.answers.len(), 2);
//! ```

pub mod assignment;
pub mod colouring;
pub mod config;
pub mod conflict;
pub mod ground;
pub mod heuristics;
pub mod nogood;
pub mod oracle;
pub mod propagation;
pub mod search;
pub mod solver;
pub mod syntax;

pub use config::{AnswerLimit, SolverConfig};
pub use oracle::brute_force_answer_sets;
pub use solver::{solve, AnswerSet, SolveResult, SolveStatus, Solver, Stats};
pub use syntax::{parse_program, Program};
