//! Steps the lazy grounder by hand: rule instances appear only once their positive bodies
//! can hold under the assignment.
//!
//!     cargo run --example grounding

use lazy_asp::assignment::{Assignment, Reason, TruthValue};
use lazy_asp::ground::{rule_to_nogoods, Grounder, GroundingMode};
use lazy_asp::parse_program;

fn main() {
    let program = parse_program(
        "edge(1,2). edge(2,3). edge(3,4).
         path(X,Y) :- edge(X,Y).
         path(X,Z) :- path(X,Y), edge(Y,Z).
         far(X) :- path(X,4), not edge(X,4).",
    )
    .unwrap();

    let mut grounder = Grounder::new(&program);
    let mut assignment = Assignment::new();
    let mode = GroundingMode::default();

    for step in 1.. {
        let rules = grounder.ground_step(&assignment, mode);
        if rules.is_empty() {
            println!("fixpoint after {} steps", step - 1);
            break;
        }
        println!("step {step}: {} new instances", rules.len());
        assignment.grow(grounder.atoms().len());
        for rule in &rules {
            let atoms = grounder.atoms();
            let show = |ids: &[lazy_asp::ground::AtomId]| {
                ids.iter().map(|&a| atoms.display(a)).collect::<Vec<_>>().join(", ")
            };
            println!(
                "  {} :- {}{}{}    [{} nogoods]",
                rule.head.map(|h| atoms.display(h)).unwrap_or_default(),
                show(&rule.positive_body),
                if rule.negative_body.is_empty() { "" } else { " | not " },
                show(&rule.negative_body),
                rule_to_nogoods(rule).len(),
            );
        }
        // stand-in for propagation: every head of a rule without negation is derived
        for rule in &rules {
            if let (Some(head), true) = (rule.head, rule.negative_body.is_empty()) {
                if !assignment.value(head).is_assigned() {
                    assignment.assign(head, TruthValue::True, Reason::Decision).unwrap();
                    grounder.note_changed(head);
                }
            }
        }
    }
    println!("{} atoms known", grounder.atoms().len());
}
