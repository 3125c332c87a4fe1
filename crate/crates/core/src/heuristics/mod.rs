//! Decision heuristics over choice points.

mod dependency;
mod heap;
mod vsids;

use std::fmt;
use std::str::FromStr;

use crate::assignment::{Assignment, TruthValue};
use crate::ground::{AtomId, GroundRule};
use crate::nogood::NoGood;
use crate::propagation::NoGoodStore;
use crate::search::PhaseTable;

pub use dependency::DependencyMap;
pub use heap::ActivityHeap;
pub use vsids::{DependencyVsids, VsidsParams};

/// Registry of choice points: body atoms of rule instances with a non-empty negative body.
#[derive(Debug, Clone, Default)]
pub struct ChoicePoints {
    positive_bodies: Vec<Option<Vec<AtomId>>>,
    /// Choice points in increasing id order.
    ordered: Vec<AtomId>,
}

impl ChoicePoints {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, rule: &GroundRule) {
        let Some(beta) = rule.body_atom else {
            return;
        };
        if self.positive_bodies.len() <= beta.index() {
            self.positive_bodies.resize(beta.index() + 1, None);
        }
        if self.positive_bodies[beta.index()].is_some() {
            return;
        }
        self.positive_bodies[beta.index()] = Some(rule.positive_body.clone());
        match self.ordered.last() {
            Some(&last) if last > beta => {
                let at = self.ordered.partition_point(|&c| c < beta);
                self.ordered.insert(at, beta);
            }
            _ => self.ordered.push(beta),
        }
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        self.positive_bodies
            .get(atom.index())
            .is_some_and(Option::is_some)
    }

    pub fn len(&self) -> usize {
        self.ordered.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordered.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.ordered.iter().copied()
    }

    /// Positive body of the rule instance a choice point represents.
    pub fn positive_body(&self, atom: AtomId) -> Option<&[AtomId]> {
        self.positive_bodies.get(atom.index())?.as_deref()
    }

    /// Unassigned, and every atom of its positive body is TRUE or MBT.
    pub fn is_applicable(&self, atom: AtomId, assignment: &Assignment) -> bool {
        !assignment.value(atom).is_assigned()
            && self
                .positive_body(atom)
                .is_some_and(|body| body.iter().all(|&b| assignment.value(b).is_positive()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeuristicKind {
    #[default]
    Vsids,
    /// Lowest-id applicable choice point.
    Naive,
}

impl FromStr for HeuristicKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "vsids" => Ok(HeuristicKind::Vsids),
            "naive" => Ok(HeuristicKind::Naive),
            _ => Err(format!("unknown heuristic `{s}`")),
        }
    }
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeuristicKind::Vsids => "vsids",
            HeuristicKind::Naive => "naive",
        })
    }
}

#[derive(Debug, Clone)]
pub enum Heuristic {
    Vsids(DependencyVsids),
    Naive,
}

impl Heuristic {
    pub fn new(kind: HeuristicKind) -> Self {
        match kind {
            HeuristicKind::Vsids => Heuristic::Vsids(DependencyVsids::default()),
            HeuristicKind::Naive => Heuristic::Naive,
        }
    }

    pub fn register(&mut self, rule: &GroundRule) {
        if let Heuristic::Vsids(h) = self {
            h.register(rule);
        }
    }

    /// Bumps every atom met in conflict analysis, then decays.
    pub fn on_conflict(&mut self, encountered: &[AtomId], choices: &ChoicePoints) {
        if let Heuristic::Vsids(h) = self {
            for &atom in encountered {
                h.bump(atom, choices);
            }
            h.decay();
        }
    }

    pub fn on_new_nogood(&mut self, nogood: &NoGood, store: &NoGoodStore, choices: &ChoicePoints) {
        if let Heuristic::Vsids(h) = self {
            h.moms_update(nogood, store, choices);
        }
    }

    pub fn on_unassign(&mut self, atom: AtomId, choices: &ChoicePoints) {
        if let Heuristic::Vsids(h) = self {
            h.on_unassign(atom, choices);
        }
    }

    pub fn pick(&mut self, choices: &ChoicePoints, assignment: &Assignment) -> Option<AtomId> {
        match self {
            Heuristic::Vsids(h) => h.pick(choices, assignment),
            Heuristic::Naive => choices.iter().find(|&c| choices.is_applicable(c, assignment)),
        }
    }
}

/// Sign for a decision on `atom`: true if it is already MBT, the saved phase otherwise.
pub fn choose_sign(atom: AtomId, assignment: &Assignment, phases: &PhaseTable) -> bool {
    assignment.value(atom) == TruthValue::Mbt || phases.get(atom)
}
