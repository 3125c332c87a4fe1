//! Brute-force answer-set enumeration over the full grounding. A testing oracle for tiny
//! programs, independent of the lazy grounder and the search.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::solver::AnswerSet;
use crate::syntax::{Atom, Program, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("full grounding has {atoms} atoms, above the budget of {budget}")]
    BudgetExceeded { atoms: usize, budget: usize },
}

struct Instance {
    head: Option<usize>,
    positive: Vec<usize>,
    negative: Vec<usize>,
}

fn constants(program: &Program) -> Vec<String> {
    let mut out = BTreeSet::new();
    for rule in &program.rules {
        for atom in rule.atoms() {
            for term in &atom.terms {
                if let Term::Constant(c) = term {
                    out.insert(c.clone());
                }
            }
        }
    }
    out.into_iter().collect()
}

fn substitute(atom: &Atom, binding: &HashMap<&str, &str>) -> String {
    let terms = atom
        .terms
        .iter()
        .map(|t| Term::Constant(binding.get(t.name()).copied().unwrap_or(t.name()).to_owned()))
        .collect();
    Atom::new(atom.predicate.clone(), terms).to_string()
}

/// Every ground instance of every rule, over all constants of the program.
fn full_grounding(program: &Program) -> (Vec<String>, Vec<Instance>) {
    let constants = constants(program);
    let mut atoms: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut intern = |name: String| -> usize {
        *ids.entry(name.clone()).or_insert_with(|| {
            atoms.push(name);
            atoms.len() - 1
        })
    };
    let mut instances = Vec::new();
    for rule in &program.rules {
        let vars = rule.variables();
        let total = constants.len().pow(vars.len() as u32);
        for mut code in 0..total {
            let mut binding = HashMap::new();
            for &v in &vars {
                binding.insert(v, constants[code % constants.len()].as_str());
                code /= constants.len();
            }
            instances.push(Instance {
                head: rule.head.as_ref().map(|h| intern(substitute(h, &binding))),
                positive: rule
                    .positive_body
                    .iter()
                    .map(|a| intern(substitute(a, &binding)))
                    .collect(),
                negative: rule
                    .negative_body
                    .iter()
                    .map(|a| intern(substitute(a, &binding)))
                    .collect(),
            });
        }
    }
    (atoms, instances)
}

fn body_holds(rule: &Instance, model: &[bool]) -> bool {
    rule.positive.iter().all(|&a| model[a]) && rule.negative.iter().all(|&a| !model[a])
}

/// Whether `candidate` is the subset-minimal model of its reduct, the rules whose body it
/// satisfies. Subsets of the candidate satisfy every negative body of the reduct, so
/// minimality reduces to comparing with the least model of the reduct's positive part.
fn is_answer_set(instances: &[Instance], candidate: &[bool]) -> bool {
    let reduct: Vec<&Instance> = instances.iter().filter(|r| body_holds(r, candidate)).collect();
    for rule in &reduct {
        match rule.head {
            Some(h) if candidate[h] => {}
            _ => return false,
        }
    }
    let mut least = vec![false; candidate.len()];
    let mut changed = true;
    while changed {
        changed = false;
        for rule in &reduct {
            let h = rule.head.expect("constraints in the reduct were rejected above");
            if !least[h] && rule.positive.iter().all(|&a| least[a]) {
                least[h] = true;
                changed = true;
            }
        }
    }
    least == candidate
}

/// All answer sets of `program`, by enumerating subsets of the ground atoms.
///
/// Fails if the full grounding mentions more than `budget` atoms. Only atoms occurring as a
/// rule head are enumerated, since no other atom can belong to a minimal model.
pub fn brute_force_answer_sets(
    program: &Program,
    budget: usize,
) -> Result<BTreeSet<AnswerSet>, OracleError> {
    let (atoms, instances) = full_grounding(program);
    if atoms.len() > budget {
        return Err(OracleError::BudgetExceeded {
            atoms: atoms.len(),
            budget,
        });
    }
    let heads: Vec<usize> = instances
        .iter()
        .filter_map(|r| r.head)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out = BTreeSet::new();
    let mut candidate = vec![false; atoms.len()];
    for mask in 0u64..(1u64 << heads.len()) {
        for (bit, &h) in heads.iter().enumerate() {
            candidate[h] = mask >> bit & 1 == 1;
        }
        if is_answer_set(&instances, &candidate) {
            out.insert(AnswerSet::new(
                (0..atoms.len())
                    .filter(|&a| candidate[a])
                    .map(|a| atoms[a].clone()),
            ));
        }
    }
    Ok(out)
}
