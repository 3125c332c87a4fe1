//! Graph colouring benchmark: the full configuration against the naive baseline.
//!
//!     cargo run --release --example colouring [vertices] [instances] [seconds]

use std::time::Duration;

use lazy_asp::colouring::{generate_colouring_instance, hard_band_probability};
use lazy_asp::heuristics::HeuristicKind;
use lazy_asp::{parse_program, solve, AnswerLimit, SolveStatus, SolverConfig};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("number"));
    let vertices = args.next().unwrap_or(40) as usize;
    let instances = args.next().unwrap_or(20);
    let budget = Duration::from_secs(args.next().unwrap_or(10));
    let p = hard_band_probability(vertices);

    let full = SolverConfig {
        n_answers: AnswerLimit::Count(1),
        time_limit: Some(budget),
        ..SolverConfig::default()
    };
    let naive = SolverConfig {
        heuristic: HeuristicKind::Naive,
        restarts: false,
        ..full.clone()
    };

    println!("{vertices} vertices, edge probability {p:.4}, 3 colours, budget {budget:?}");
    println!("{:>4}  {:>14} {:>10} {:>9}  {:>14} {:>10} {:>9}", "seed", "full", "ms", "conflicts", "naive", "ms", "conflicts");
    let mut solved = [0; 2];
    for seed in 0..instances {
        let program = parse_program(&generate_colouring_instance(vertices, p, 3, seed).unwrap()).unwrap();
        let mut row = format!("{seed:>4}");
        for (i, config) in [&full, &naive].into_iter().enumerate() {
            let r = solve(&program, config.clone());
            let verdict = match r.status {
                SolveStatus::Unsat => "uncolourable",
                SolveStatus::TimedOut => "timeout",
                _ => "coloured",
            };
            if r.status != SolveStatus::TimedOut {
                solved[i] += 1;
            }
            row += &format!(
                "  {verdict:>14} {:>10.2} {:>9}",
                r.stats.wall_time.as_secs_f64() * 1e3,
                r.stats.conflicts
            );
        }
        println!("{row}");
    }
    println!("solved: full {} / naive {} of {instances}", solved[0], solved[1]);
}
