//! Three-valued assignment with must-be-true, decision levels and reasons.

use std::collections::HashMap;

use crate::ground::AtomId;
use crate::nogood::{Literal, NoGood, NoGoodId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TruthValue {
    #[default]
    Unassigned,
    False,
    /// Must-be-true: the atom is required to hold but no firing rule has derived it yet.
    Mbt,
    True,
}

impl TruthValue {
    /// TRUE or MBT.
    #[inline]
    pub fn is_positive(self) -> bool {
        matches!(self, TruthValue::Mbt | TruthValue::True)
    }

    #[inline]
    pub fn is_assigned(self) -> bool {
        self != TruthValue::Unassigned
    }
}

/// Read access to atom values, shared by the grounder and tests.
pub trait ValueLookup {
    fn value(&self, atom: AtomId) -> TruthValue;
}

impl ValueLookup for HashMap<AtomId, TruthValue> {
    fn value(&self, atom: AtomId) -> TruthValue {
        self.get(&atom).copied().unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Decision,
    NoGood(NoGoodId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailEntry {
    pub atom: AtomId,
    pub value: TruthValue,
    /// Value before this entry; `Mbt` for a promotion to `True`.
    pub previous: TruthValue,
    pub level: u32,
    pub reason: Reason,
}

impl TrailEntry {
    pub fn is_promotion(&self) -> bool {
        self.previous == TruthValue::Mbt
    }
}

/// An assignment that contradicts the current value of an atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssignConflict {
    pub atom: AtomId,
    pub current: TruthValue,
    pub reason: Reason,
}

#[derive(Debug, Clone, Copy, Default)]
struct AtomState {
    value: TruthValue,
    /// Level and trail position of the first (weakest) assignment.
    level: u32,
    position: u32,
    /// Level at which the atom became TRUE, if it is TRUE.
    true_level: u32,
    reason: Option<Reason>,
    promotion_reason: Option<Reason>,
}

#[derive(Debug, Clone, Default)]
pub struct Assignment {
    atoms: Vec<AtomState>,
    trail: Vec<TrailEntry>,
    level_starts: Vec<usize>,
    mbt_count: usize,
}

impl ValueLookup for Assignment {
    #[inline]
    fn value(&self, atom: AtomId) -> TruthValue {
        Assignment::value(self, atom)
    }
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Grows the per-atom tables to hold `atoms` atoms.
    pub fn grow(&mut self, atoms: usize) {
        if atoms > self.atoms.len() {
            self.atoms.resize(atoms, AtomState::default());
        }
    }

    #[inline]
    pub fn value(&self, atom: AtomId) -> TruthValue {
        self.atoms
            .get(atom.index())
            .map(|s| s.value)
            .unwrap_or_default()
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn decision_level(&self) -> u32 {
        self.level_starts.len() as u32
    }

    pub fn trail(&self) -> &[TrailEntry] {
        &self.trail
    }

    /// Level of the first assignment of `atom`. Meaningless for unassigned atoms.
    pub fn level(&self, atom: AtomId) -> u32 {
        self.atoms[atom.index()].level
    }

    /// Trail position of the first assignment of `atom`.
    pub fn position(&self, atom: AtomId) -> usize {
        self.atoms[atom.index()].position as usize
    }

    /// Level at which a TRUE atom became TRUE.
    pub fn true_level(&self, atom: AtomId) -> u32 {
        self.atoms[atom.index()].true_level
    }

    /// Reason of the first assignment of `atom`.
    pub fn reason(&self, atom: AtomId) -> Option<Reason> {
        self.atoms.get(atom.index()).and_then(|s| s.reason)
    }

    /// Number of atoms currently at MBT.
    pub fn mbt_count(&self) -> usize {
        self.mbt_count
    }

    pub fn mbt_atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, s)| s.value == TruthValue::Mbt)
            .map(|(i, _)| AtomId(i as u32))
    }

    /// Whether `literal` holds: a positive literal at TRUE/MBT, a negative literal at FALSE.
    #[inline]
    pub fn holds(&self, literal: Literal) -> bool {
        let value = self.value(literal.atom());
        if literal.is_positive() {
            value.is_positive()
        } else {
            value == TruthValue::False
        }
    }

    /// Whether the opposite of `literal` holds.
    #[inline]
    pub fn falsified(&self, literal: Literal) -> bool {
        self.holds(literal.negate())
    }

    /// Whether `literal` holds at full strength: a positive literal needs TRUE.
    #[inline]
    pub fn holds_strongly(&self, literal: Literal) -> bool {
        let value = self.value(literal.atom());
        if literal.is_positive() {
            value == TruthValue::True
        } else {
            value == TruthValue::False
        }
    }

    /// Level at which `literal` came to hold strongly.
    pub fn strong_level(&self, literal: Literal) -> u32 {
        if literal.is_positive() {
            self.true_level(literal.atom())
        } else {
            self.level(literal.atom())
        }
    }

    pub fn new_decision_level(&mut self) {
        self.level_starts.push(self.trail.len());
    }

    /// Assigns `value` at the current decision level.
    ///
    /// Legal changes are UNASSIGNED to anything and MBT to TRUE (recorded as a second trail
    /// entry). Re-asserting a value that is already implied is a no-op; contradicting it is a
    /// conflict.
    pub fn assign(
        &mut self,
        atom: AtomId,
        value: TruthValue,
        reason: Reason,
    ) -> Result<(), AssignConflict> {
        debug_assert!(value.is_assigned());
        self.grow(atom.index() + 1);
        let level = self.decision_level();
        let state = &mut self.atoms[atom.index()];
        let current = state.value;
        match (current, value) {
            (TruthValue::Unassigned, _) => {
                state.value = value;
                state.level = level;
                state.position = self.trail.len() as u32;
                state.reason = Some(reason);
                match value {
                    TruthValue::True => state.true_level = level,
                    TruthValue::Mbt => self.mbt_count += 1,
                    _ => {}
                }
            }
            (TruthValue::Mbt, TruthValue::True) => {
                state.value = TruthValue::True;
                state.true_level = level;
                state.promotion_reason = Some(reason);
                self.mbt_count -= 1;
            }
            (TruthValue::False, TruthValue::False)
            | (TruthValue::Mbt, TruthValue::Mbt)
            | (TruthValue::True, TruthValue::Mbt | TruthValue::True) => return Ok(()),
            _ => {
                return Err(AssignConflict {
                    atom,
                    current,
                    reason,
                })
            }
        }
        self.trail.push(TrailEntry {
            atom,
            value,
            previous: current,
            level,
            reason,
        });
        Ok(())
    }

    /// Removes every trail entry above `level`, calling `on_undo` for each removed entry (most
    /// recent first) after the atom's value has been restored.
    pub fn backjump(&mut self, level: u32, mut on_undo: impl FnMut(&TrailEntry)) {
        if level >= self.decision_level() {
            return;
        }
        let start = self.level_starts[level as usize];
        self.level_starts.truncate(level as usize);
        while self.trail.len() > start {
            let entry = self.trail.pop().expect("non-empty trail");
            let state = &mut self.atoms[entry.atom.index()];
            state.value = entry.previous;
            match entry.previous {
                TruthValue::Mbt => {
                    state.promotion_reason = None;
                    self.mbt_count += 1;
                }
                _ => {
                    if entry.value == TruthValue::Mbt {
                        self.mbt_count -= 1;
                    }
                    state.reason = None;
                }
            }
            on_undo(&entry);
        }
    }

    /// Whether `id` is the reason of a current trail entry. Such nogoods must not be deleted.
    pub fn is_locked(&self, id: NoGoodId, nogood: &NoGood) -> bool {
        let reason = Some(Reason::NoGood(id));
        nogood.literals().iter().any(|l| {
            self.atoms.get(l.atom().index()).is_some_and(|s| {
                s.value.is_assigned() && (s.reason == reason || s.promotion_reason == reason)
            })
        })
    }

    /// Decision literals on the trail, one per level, in level order.
    pub fn decisions(&self) -> Vec<Literal> {
        self.level_starts
            .iter()
            .filter_map(|&start| self.trail.get(start))
            .filter(|e| e.reason == Reason::Decision)
            .map(|e| Literal::new(e.atom, e.value.is_positive()))
            .collect()
    }
}
