use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::ground::GroundingMode;
use crate::heuristics::HeuristicKind;
use crate::search::{DeletionParams, PhasePolicy, RestartParams};

/// How many answer sets to search for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnswerLimit {
    Count(usize),
    All,
}

impl Default for AnswerLimit {
    fn default() -> Self {
        AnswerLimit::Count(10)
    }
}

impl AnswerLimit {
    pub fn reached(self, found: usize) -> bool {
        match self {
            AnswerLimit::Count(n) => found >= n,
            AnswerLimit::All => false,
        }
    }
}

impl FromStr for AnswerLimit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(AnswerLimit::All);
        }
        match s.parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("expected a positive integer or `all`, got `{s}`")),
            Ok(n) => Ok(AnswerLimit::Count(n)),
        }
    }
}

impl fmt::Display for AnswerLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnswerLimit::Count(n) => write!(f, "{n}"),
            AnswerLimit::All => f.write_str("all"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub n_answers: AnswerLimit,
    pub phase_policy: PhasePolicy,
    pub restarts: bool,
    pub deletion: bool,
    pub heuristic: HeuristicKind,
    pub grounding: GroundingMode,
    pub restart_params: RestartParams,
    pub deletion_params: DeletionParams,
    /// Stop with [`crate::SolveStatus::TimedOut`] once this much wall time has passed.
    pub time_limit: Option<Duration>,
    /// Full-scan consistency checks at every decision. Slow; meant for tests.
    pub check_invariants: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            n_answers: AnswerLimit::default(),
            phase_policy: PhasePolicy::AllTrue,
            restarts: true,
            deletion: true,
            heuristic: HeuristicKind::Vsids,
            grounding: GroundingMode::default(),
            restart_params: RestartParams::default(),
            deletion_params: DeletionParams::default(),
            time_limit: None,
            check_invariants: false,
        }
    }
}

impl SolverConfig {
    pub fn all_answers() -> Self {
        SolverConfig {
            n_answers: AnswerLimit::All,
            ..Self::default()
        }
    }
}
