//! Seeded random programs small enough for the brute-force oracle.

#![allow(dead_code)]

use lazy_asp::oracle::OracleError;
use lazy_asp::{brute_force_answer_sets, parse_program, AnswerSet, Program};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub const ATOM_BUDGET: usize = 20;

const PREDICATES: [&str; 3] = ["p", "q", "r"];
const CONSTANTS: [&str; 3] = ["1", "2", "3"];
const VARIABLES: [&str; 2] = ["X", "Y"];

struct Shape {
    arities: Vec<usize>,
    constants: Vec<&'static str>,
}

fn atom(rng: &mut ChaCha8Rng, shape: &Shape, terms: &[&str]) -> String {
    let p = rng.gen_range(0..shape.arities.len());
    let arity = shape.arities[p];
    if arity == 0 {
        return PREDICATES[p].to_owned();
    }
    let args: Vec<&str> = (0..arity).map(|_| *terms.choose(rng).unwrap()).collect();
    format!("{}({})", PREDICATES[p], args.join(","))
}

fn body_atom(rng: &mut ChaCha8Rng, shape: &Shape, bound: &mut Vec<&'static str>) -> String {
    let p = rng.gen_range(0..shape.arities.len());
    let arity = shape.arities[p];
    if arity == 0 {
        return PREDICATES[p].to_owned();
    }
    let args: Vec<&str> = (0..arity)
        .map(|_| {
            if rng.gen_bool(0.6) {
                let v = *VARIABLES.choose(rng).unwrap();
                if !bound.contains(&v) {
                    bound.push(v);
                }
                v
            } else {
                *shape.constants.choose(rng).unwrap()
            }
        })
        .collect();
    format!("{}({})", PREDICATES[p], args.join(","))
}

/// One rule, or two forming an even loop through negation.
fn rule_texts(rng: &mut ChaCha8Rng, shape: &Shape) -> Vec<String> {
    let kind = rng.gen_range(0..20);
    if kind < 4 {
        return vec![format!("{}.", atom(rng, shape, &shape.constants))];
    }
    let mut bound = Vec::new();
    let positive_count = if kind < 10 { rng.gen_range(0..=1) } else { rng.gen_range(0..=2) };
    let positive: Vec<String> = (0..positive_count)
        .map(|_| body_atom(rng, shape, &mut bound))
        .collect();
    let mut terms: Vec<&str> = shape.constants.clone();
    terms.extend(bound.iter().copied());

    if kind < 10 {
        let a = atom(rng, shape, &terms);
        let b = atom(rng, shape, &terms);
        if a != b {
            let prefix: String = positive.iter().map(|p| format!("{p}, ")).collect();
            return vec![
                format!("{a} :- {prefix}not {b}."),
                format!("{b} :- {prefix}not {a}."),
            ];
        }
    }

    let negatives = [0, 1, 1, 1, 2, 2][rng.gen_range(0..6)];
    let mut negative: Vec<String> = Vec::new();
    for _ in 0..negatives {
        let n = format!("not {}", atom(rng, shape, &terms));
        if !negative.contains(&n) {
            negative.push(n);
        }
    }
    let body: Vec<String> = positive.into_iter().chain(negative).collect();
    if body.is_empty() {
        return vec![format!("{}.", atom(rng, shape, &shape.constants))];
    }
    let head = if kind < 17 { atom(rng, shape, &terms) } else { String::new() };
    vec![format!("{head} :- {}.", body.join(", "))]
}

/// Program text for `seed`: at most 3 predicates of arity at most 2, at most 3 constants and
/// at most 8 rules. Not every text fits the oracle budget; see [`random_program`].
pub fn random_program_text(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = Shape {
        arities: (0..rng.gen_range(2..=3)).map(|_| rng.gen_range(0..=2)).collect(),
        constants: CONSTANTS[..rng.gen_range(1..=3)].to_vec(),
    };
    let target = rng.gen_range(2..=8);
    let mut rules = Vec::new();
    while rules.len() < target {
        rules.extend(rule_texts(&mut rng, &shape));
    }
    rules.truncate(8);
    rules.join("\n")
}

/// The `index`-th random program whose full grounding fits the oracle budget, with its
/// answer sets according to the oracle.
pub fn random_program(index: u64) -> (String, Program, BTreeSet<AnswerSet>) {
    let mut seed = index * 1000;
    loop {
        let text = random_program_text(seed);
        let program = parse_program(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        match brute_force_answer_sets(&program, ATOM_BUDGET) {
            Ok(answers) => return (text, program, answers),
            Err(OracleError::BudgetExceeded { .. }) => seed += 1,
        }
    }
}
