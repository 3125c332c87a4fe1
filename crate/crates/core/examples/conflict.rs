//! First-UIP conflict analysis on a hand-built implication graph.
//!
//!     cargo run --example conflict

use lazy_asp::assignment::{Assignment, Reason, TruthValue};
use lazy_asp::conflict::analyze;
use lazy_asp::ground::AtomId;
use lazy_asp::nogood::{Literal, NoGood, NoGoodKind};
use lazy_asp::propagation::{Attach, NoGoodStore};

fn main() {
    let a = AtomId;
    let mut store = NoGoodStore::default();
    let mut assignment = Assignment::new();
    // 1 and 3 derive 4; 2 and 3 force 5; 4 and 5 clash
    let nogoods = [
        NoGood::with_head([Literal::pos(a(1)), Literal::pos(a(3))], a(4)).unwrap(),
        NoGood::new([Literal::pos(a(4)), Literal::pos(a(5))], NoGoodKind::Static).unwrap(),
        NoGood::new([Literal::pos(a(2)), Literal::pos(a(3)), Literal::neg(a(5))], NoGoodKind::Static).unwrap(),
    ];
    for nogood in nogoods {
        let id = store.add(nogood);
        assert_eq!(store.attach(id, &mut assignment), Attach::Done);
    }

    let mut conflict = None;
    for d in 1..=3 {
        assignment.new_decision_level();
        assignment.assign(a(d), TruthValue::True, Reason::Decision).unwrap();
        println!("level {d}: decide {d}");
        conflict = store.propagate(&mut assignment);
        if conflict.is_some() {
            break;
        }
    }
    for entry in assignment.trail() {
        println!("  trail: atom {} = {:?} at level {}", entry.atom.0, entry.value, entry.level);
    }

    let conflict = conflict.expect("the third decision clashes");
    println!("violated: {:?}", store.get(conflict).literals());
    let result = analyze(conflict, &assignment, &store).unwrap();
    println!("learned {:?}", result.learned.literals());
    println!("uip {:?}, backjump to {}, lbd {}", result.uip, result.backjump_level, result.lbd);
    println!("resolved on {:?}", result.antecedents);

    assignment.backjump(result.backjump_level, |_| {});
    store.on_backjump(assignment.trail().len());
    let id = store.add(result.learned);
    store.attach(id, &mut assignment);
    println!("after backjump atom 3 is {:?}", assignment.value(a(3)));
}
