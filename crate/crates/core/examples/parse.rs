//! Parses a program, prints it back and shows the diagnostics for a few broken ones.
//!
//!     cargo run --example parse

use lazy_asp::parse_program;

const PROGRAM: &str = "
% two nodes, one edge
node(1). node(2).
edge(1,2).
reach(X) :- node(X), not blocked(X).
blocked(Y) :- edge(X,Y), reach(X), not open(Y).
:- node(X), not reach(X), not blocked(X).
";

fn main() {
    let program = parse_program(PROGRAM).expect("valid program");
    println!("{} rules:", program.rules.len());
    for rule in &program.rules {
        let kind = if rule.is_fact() {
            "fact"
        } else if rule.is_constraint() {
            "constraint"
        } else {
            "rule"
        };
        println!("  {:>10}  {rule}   (line {})", kind, rule.position.line);
    }

    for broken in [
        "p(X) :- not q(X).",
        "p(1).\np(1,2).",
        "a :- b\nc.",
        "a :- b; c.",
    ] {
        let err = parse_program(broken).unwrap_err();
        println!("{broken:?}\n  -> {err}");
    }
}
