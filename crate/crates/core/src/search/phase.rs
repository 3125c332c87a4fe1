use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::TruthValue;
use crate::ground::AtomId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhasePolicy {
    #[default]
    AllTrue,
    AllFalse,
    Random(u64),
}

impl FromStr for PhasePolicy {
    type Err = String;

    /// Accepts `true`, `false` and `random` (seed 0; set it separately).
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "true" => Ok(PhasePolicy::AllTrue),
            "false" => Ok(PhasePolicy::AllFalse),
            "random" => Ok(PhasePolicy::Random(0)),
            _ => Err(format!("unknown phase policy `{s}`")),
        }
    }
}

impl fmt::Display for PhasePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhasePolicy::AllTrue => f.write_str("true"),
            PhasePolicy::AllFalse => f.write_str("false"),
            PhasePolicy::Random(seed) => write!(f, "random({seed})"),
        }
    }
}

/// Saved phase per atom. Grows with the atom table; new entries follow the initial policy.
#[derive(Debug, Clone)]
pub struct PhaseTable {
    policy: PhasePolicy,
    phases: Vec<bool>,
    rng: ChaCha8Rng,
}

impl PhaseTable {
    pub fn new(policy: PhasePolicy) -> Self {
        let seed = match policy {
            PhasePolicy::Random(seed) => seed,
            _ => 0,
        };
        PhaseTable {
            policy,
            phases: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn policy(&self) -> PhasePolicy {
        self.policy
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn grow(&mut self, atoms: usize) {
        while self.phases.len() < atoms {
            let initial = match self.policy {
                PhasePolicy::AllTrue => true,
                PhasePolicy::AllFalse => false,
                PhasePolicy::Random(_) => self.rng.gen(),
            };
            self.phases.push(initial);
        }
    }

    pub fn get(&self, atom: AtomId) -> bool {
        self.phases[atom.index()]
    }

    pub fn save(&mut self, atom: AtomId, value: TruthValue) {
        debug_assert!(value.is_assigned());
        self.grow(atom.index() + 1);
        self.phases[atom.index()] = value.is_positive();
    }
}
