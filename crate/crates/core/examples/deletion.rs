//! Learned-nogood cleanup on a synthetic store, and the cleanup schedule.
//!
//!     cargo run --example deletion

use lazy_asp::assignment::{Assignment, Reason, TruthValue};
use lazy_asp::ground::AtomId;
use lazy_asp::nogood::{Literal, NoGood, NoGoodKind};
use lazy_asp::propagation::NoGoodStore;
use lazy_asp::search::{clean_store, DeletionState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut store = NoGoodStore::default();
    let mut assignment = Assignment::new();
    let n = 1000u32;
    assignment.grow(2 * n as usize);
    for i in 0..n {
        let mut ng = NoGood::new(
            [Literal::pos(AtomId(2 * i)), Literal::neg(AtomId(2 * i + 1))],
            NoGoodKind::Learned,
        )
        .unwrap();
        ng.activity = rng.gen_range(0.0..10.0f64).powi(2);
        ng.set_lbd(rng.gen_range(1..10));
        let id = store.add(ng);
        if i % 25 == 0 {
            // makes the nogood the reason of an assignment, which locks it
            assignment.assign(AtomId(2 * i), TruthValue::False, Reason::NoGood(id)).unwrap();
        }
    }

    let mut deletion = DeletionState::default();
    let mut conflicts = 0u64;
    while !deletion.is_due() {
        deletion.on_conflict();
        conflicts += 1;
    }
    println!("first cleanup due after {conflicts} conflicts");
    let before = store.learned_count();
    let removed = clean_store(&mut store, &assignment, &mut deletion);
    println!("removed {removed} of {before} learned nogoods");

    let survivors: Vec<_> = store.iter().filter(|(_, ng)| ng.is_learned()).map(|(_, ng)| ng).collect();
    let low_lbd = survivors.iter().filter(|ng| ng.lbd().unwrap() <= 2).count();
    println!("{} survivors, {low_lbd} of them with lbd <= 2", survivors.len());

    print!("next intervals:");
    for _ in 0..22 {
        print!(" {}", deletion.cycle_interval());
        while !deletion.is_due() {
            deletion.on_conflict();
        }
        clean_store(&mut store, &assignment, &mut deletion);
    }
    println!();
}
