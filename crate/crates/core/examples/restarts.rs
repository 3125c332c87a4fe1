//! The Luby sequence from reluctant doubling, and how it gates LBD-driven restarts.
//!
//!     cargo run --example restarts

use lazy_asp::search::{ReluctantDoubling, RestartParams, RestartState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut luby = ReluctantDoubling::new();
    let prefix: Vec<String> = (0..31).map(|_| luby.next_value().to_string()).collect();
    println!("luby: {}", prefix.join(" "));

    // a synthetic conflict stream: short LBDs, then a burst of long ones
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut state = RestartState::new(RestartParams::default());
    let mut restarts = Vec::new();
    for conflict in 1..=6000u64 {
        let lbd = if (2000..2600).contains(&conflict) || (4000..4300).contains(&conflict) {
            rng.gen_range(8..20)
        } else {
            rng.gen_range(2..6)
        };
        state.on_conflict_lbd(lbd);
        if state.should_restart() {
            restarts.push((conflict, state.gate()));
            state.on_restart();
        }
    }
    println!("{} restarts over 6000 conflicts", restarts.len());
    for (conflict, gate) in restarts {
        println!("  at conflict {conflict:>5} (gate {gate:>4})");
    }
}
