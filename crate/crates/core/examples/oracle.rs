//! Cross-checks the solver against the brute-force reduct oracle on random small programs.
//!
//!     cargo run --example oracle [count]

use std::collections::BTreeSet;

use lazy_asp::{brute_force_answer_sets, parse_program, solve, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Ground propositional programs over atoms a..e.
fn random_program(rng: &mut ChaCha8Rng) -> String {
    let atoms = ["a", "b", "c", "d", "e"];
    let mut text = String::new();
    for _ in 0..rng.gen_range(1..=7) {
        let mut body: Vec<String> = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            body.push(atoms[rng.gen_range(0..5)].to_owned());
        }
        for _ in 0..rng.gen_range(0..=2) {
            body.push(format!("not {}", atoms[rng.gen_range(0..5)]));
        }
        let head = if rng.gen_bool(0.85) { atoms[rng.gen_range(0..5)] } else { "" };
        if body.is_empty() {
            text.push_str(&format!("{}.\n", atoms[rng.gen_range(0..5)]));
        } else {
            text.push_str(&format!("{head} :- {}.\n", body.join(", ")));
        }
    }
    text
}

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut histogram = [0usize; 8];
    for i in 0..count {
        let text = random_program(&mut rng);
        let program = parse_program(&text).unwrap();
        let expected = brute_force_answer_sets(&program, 16).unwrap();
        let found: BTreeSet<_> = solve(&program, SolverConfig::all_answers()).answers.into_iter().collect();
        if found != expected {
            println!("mismatch on program {i}:\n{text}expected {expected:?}\nfound {found:?}");
            std::process::exit(1);
        }
        histogram[expected.len().min(7)] += 1;
    }
    println!("{count} programs agree with the oracle");
    for (n, c) in histogram.iter().enumerate().filter(|(_, &c)| c > 0) {
        println!("  {n}{} answer sets: {c}", if n == 7 { "+" } else { "" });
    }
}
