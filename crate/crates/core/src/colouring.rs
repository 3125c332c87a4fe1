//! Seeded graph-colouring instances.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ColouringError {
    #[error("at least two colours are required, got {0}")]
    TooFewColours(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
}

/// The rules shared by every instance: guess one colour per vertex through an even loop, forbid
/// equal colours on adjacent vertices. The constraint on `colour` and `ncolour` together is
/// redundant under stable-model semantics; it turns a branch in which both rules of the loop were
/// guessed not to fire into a conflict instead of an unsupported must-be-true atom.
pub const ENCODING: &str = "\
colour(V,C) :- vertex(V), col(C), not ncolour(V,C).
ncolour(V,C) :- vertex(V), col(C), not colour(V,C).
:- colour(V,C), ncolour(V,C).
:- colour(V,C1), colour(V,C2), diff(C1,C2).
:- edge(X,Y), colour(X,C), colour(Y,C).
";

/// Constraint requiring some colour on every vertex, spelled out for `colours` colours.
pub fn at_least_one_colour(colours: usize) -> String {
    let nots: Vec<String> = (1..=colours).map(|c| format!("not colour(V,{c})")).collect();
    format!(":- vertex(V), {}.\n", nots.join(", "))
}

/// Edge probability putting random 3-colouring instances on `vertices` vertices near the
/// satisfiability threshold: average degree 4.2, where about half of the 40-vertex instances
/// are colourable.
pub fn hard_band_probability(vertices: usize) -> f64 {
    (4.2 / (vertices.max(2) - 1) as f64).min(1.0)
}

/// Random graph edges `(i, j)` with `i < j`, vertices numbered from 1.
pub fn random_edges(vertices: usize, probability: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 1..=vertices {
        for j in i + 1..=vertices {
            if rng.gen::<f64>() < probability {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Program text for colouring the graph with the given edges.
pub fn colouring_program(vertices: usize, edges: &[(usize, usize)], colours: usize) -> String {
    let mut out = String::new();
    for v in 1..=vertices {
        writeln!(out, "vertex({v}).").unwrap();
    }
    for &(i, j) in edges {
        writeln!(out, "edge({i},{j}).").unwrap();
    }
    for c in 1..=colours {
        writeln!(out, "col({c}).").unwrap();
    }
    for c in 1..=colours {
        for d in 1..=colours {
            if c != d {
                writeln!(out, "diff({c},{d}).").unwrap();
            }
        }
    }
    out.push_str(ENCODING);
    out.push_str(&at_least_one_colour(colours));
    out
}

/// A seeded random colouring instance. The same arguments always give the same text.
pub fn generate_colouring_instance(
    vertices: usize,
    probability: f64,
    colours: usize,
    seed: u64,
) -> Result<String, ColouringError> {
    if colours < 2 {
        return Err(ColouringError::TooFewColours(colours));
    }
    if !(0.0..=1.0).contains(&probability) {
        return Err(ColouringError::BadProbability(probability));
    }
    let edges = random_edges(vertices, probability, seed);
    Ok(colouring_program(vertices, &edges, colours))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = generate_colouring_instance(20, 0.3, 3, 11).unwrap();
        assert_eq!(a, generate_colouring_instance(20, 0.3, 3, 11).unwrap());
        assert_ne!(a, generate_colouring_instance(20, 0.3, 3, 12).unwrap());
    }

    #[test]
    fn triangle() {
        let text = generate_colouring_instance(3, 1.0, 3, 7).unwrap();
        assert!(text.contains("edge(1,2).\nedge(1,3).\nedge(2,3)."));
        assert!(crate::syntax::parse_program(&text).is_ok());
    }

    #[test]
    fn at_least_one() {
        assert_eq!(
            at_least_one_colour(2),
            ":- vertex(V), not colour(V,1), not colour(V,2).\n"
        );
    }

    #[test]
    fn triangle_has_six_colourings() {
        let text = generate_colouring_instance(3, 1.0, 3, 0).unwrap();
        let program = crate::syntax::parse_program(&text).unwrap();
        let result = crate::solve(&program, crate::SolverConfig::all_answers());
        assert_eq!(result.answers.len(), 6);
        for answer in &result.answers {
            let colours: Vec<&str> = answer.atoms().filter(|a| a.starts_with("colour(")).collect();
            assert_eq!(colours.len(), 3, "{answer}");
        }
    }

    #[test]
    fn k4_is_not_three_colourable() {
        let text = generate_colouring_instance(4, 1.0, 3, 0).unwrap();
        let program = crate::syntax::parse_program(&text).unwrap();
        let result = crate::solve(&program, crate::SolverConfig::all_answers());
        assert!(result.answers.is_empty());
        assert_eq!(result.status, crate::SolveStatus::Unsat);
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            generate_colouring_instance(2, 1.0, 1, 0),
            Err(ColouringError::TooFewColours(1))
        );
        assert!(generate_colouring_instance(2, 1.5, 3, 0).is_err());
    }
}
