//! Nogood storage and watched-literal propagation.
//!
//! Two watch schemes run side by side:
//!
//! * Every nogood of size ≥ 2 has two *weak* watches on literals that do not hold. When a
//!   watched literal comes to hold and no replacement exists, the other watch is forced false
//!   (unit propagation), or the nogood is reported violated.
//! * Every head-derivation nogood with a non-empty body has one *strong* watch on a body literal
//!   that does not hold at full strength (a positive literal whose atom is not TRUE). Once all body
//!   literals hold strongly the head is derived TRUE, promoting it from MBT if necessary.
//!
//! Nogoods added while the search is underway are attached with [`NoGoodStore::attach`], which
//! asks for a backjump whenever the nogood would have propagated at a lower decision level.

use crate::assignment::{Assignment, Reason, TruthValue};
use crate::ground::AtomId;
use crate::nogood::{Literal, NoGood, NoGoodId, NoGoodKind};

/// Outcome of attaching a nogood.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attach {
    /// Watches are set; any implied assignment has been made.
    Done,
    /// The nogood is violated at the current decision level.
    Conflict(NoGoodId),
    /// The nogood would have propagated earlier. Backjump to this level and attach again.
    Backjump(u32),
    /// The nogood is violated at decision level 0.
    Unsat,
}

#[derive(Debug, Clone)]
struct Slot {
    nogood: NoGood,
    watches: [u32; 2],
    strong_watch: Option<u32>,
    deleted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Need {
    Unit { level: u32, literal: usize },
    Conflict { level: u32 },
    Promote { level: u32 },
}

impl Need {
    fn level(self) -> u32 {
        match self {
            Need::Unit { level, .. } | Need::Conflict { level } | Need::Promote { level } => level,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NoGoodStore {
    slots: Vec<Slot>,
    weak_watches: Vec<Vec<NoGoodId>>,
    strong_watches: Vec<Vec<NoGoodId>>,
    short_positive: Vec<u32>,
    short_negative: Vec<u32>,
    short_size: usize,
    queue_head: usize,
    live: usize,
    learned: usize,
}

impl Default for NoGoodStore {
    fn default() -> Self {
        NoGoodStore::new(3)
    }
}

impl NoGoodStore {
    /// `short_size` is the largest nogood size counted in the per-atom occurrence counts.
    pub fn new(short_size: usize) -> Self {
        NoGoodStore {
            slots: Vec::new(),
            weak_watches: Vec::new(),
            strong_watches: Vec::new(),
            short_positive: Vec::new(),
            short_negative: Vec::new(),
            short_size,
            queue_head: 0,
            live: 0,
            learned: 0,
        }
    }

    fn grow(&mut self, atom: AtomId) {
        let atoms = atom.index() + 1;
        if self.short_positive.len() < atoms {
            self.short_positive.resize(atoms, 0);
            self.short_negative.resize(atoms, 0);
            self.weak_watches.resize(2 * atoms, Vec::new());
            self.strong_watches.resize(2 * atoms, Vec::new());
        }
    }

    /// Stores `nogood` without watching it. Call [`NoGoodStore::attach`] next.
    pub fn add(&mut self, nogood: NoGood) -> NoGoodId {
        if let Some(max) = nogood.literals().iter().map(|l| l.atom()).max() {
            self.grow(max);
        }
        if nogood.kind() == NoGoodKind::Static && nogood.len() <= self.short_size {
            for l in nogood.literals() {
                if l.is_positive() {
                    self.short_positive[l.atom().index()] += 1;
                } else {
                    self.short_negative[l.atom().index()] += 1;
                }
            }
        }
        if nogood.is_learned() {
            self.learned += 1;
        }
        self.live += 1;
        let id = NoGoodId(self.slots.len() as u32);
        self.slots.push(Slot {
            nogood,
            watches: [0, 0],
            strong_watch: None,
            deleted: false,
        });
        id
    }

    pub fn get(&self, id: NoGoodId) -> &NoGood {
        &self.slots[id.index()].nogood
    }

    pub fn get_mut(&mut self, id: NoGoodId) -> &mut NoGood {
        &mut self.slots[id.index()].nogood
    }

    pub fn is_deleted(&self, id: NoGoodId) -> bool {
        self.slots[id.index()].deleted
    }

    /// Number of live nogoods.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn learned_count(&self) -> usize {
        self.learned
    }

    pub fn iter(&self) -> impl Iterator<Item = (NoGoodId, &NoGood)> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.deleted)
            .map(|(i, s)| (NoGoodId(i as u32), &s.nogood))
    }

    pub fn learned_ids(&self) -> Vec<NoGoodId> {
        self.iter()
            .filter(|(_, ng)| ng.is_learned())
            .map(|(id, _)| id)
            .collect()
    }

    /// Deletes a nogood. Watch lists are purged lazily.
    pub fn remove(&mut self, id: NoGoodId) {
        let slot = &mut self.slots[id.index()];
        if slot.deleted {
            return;
        }
        slot.deleted = true;
        self.live -= 1;
        if slot.nogood.is_learned() {
            self.learned -= 1;
        }
    }

    /// Number of short grounder nogoods containing `atom` positively and negatively.
    pub fn short_occurrences(&self, atom: AtomId) -> (u32, u32) {
        let i = atom.index();
        (
            self.short_positive.get(i).copied().unwrap_or(0),
            self.short_negative.get(i).copied().unwrap_or(0),
        )
    }

    /// Re-aligns the propagation queue after a backjump shortened the trail.
    pub fn on_backjump(&mut self, trail_len: usize) {
        self.queue_head = self.queue_head.min(trail_len);
    }

    /// Whether every trail entry has been propagated.
    pub fn is_propagated(&self, assignment: &Assignment) -> bool {
        self.queue_head >= assignment.trail().len()
    }

    fn force(&self, id: NoGoodId, index: usize, assignment: &mut Assignment) {
        let nogood = &self.slots[id.index()].nogood;
        let literal = nogood.literals()[index];
        let value = if literal.is_positive() {
            TruthValue::False
        } else if nogood.head_index() == Some(index)
            && nogood
                .literals()
                .iter()
                .filter(|l| l.is_positive())
                .all(|&l| assignment.holds_strongly(l))
        {
            TruthValue::True
        } else {
            TruthValue::Mbt
        };
        assignment
            .assign(literal.atom(), value, Reason::NoGood(id))
            .expect("forced literal is unassigned");
    }

    fn weak_need(&self, id: NoGoodId, assignment: &Assignment) -> Result<Option<Need>, ()> {
        let literals = self.slots[id.index()].nogood.literals();
        let mut non_holding = Vec::with_capacity(2);
        let (mut top, mut top_count, mut second) = (0u32, 0usize, 0u32);
        for (i, &l) in literals.iter().enumerate() {
            if assignment.holds(l) {
                let level = assignment.level(l.atom());
                if level > top {
                    second = top;
                    top = level;
                    top_count = 1;
                } else if level == top {
                    top_count += 1;
                } else if level > second {
                    second = level;
                }
            } else {
                non_holding.push(i);
                if non_holding.len() >= 2 {
                    return Ok(None);
                }
            }
        }
        match non_holding.as_slice() {
            [] => {
                if literals.is_empty() || top == 0 {
                    Err(())
                } else if top_count == 1 {
                    let literal = literals
                        .iter()
                        .position(|&l| assignment.level(l.atom()) == top)
                        .expect("top literal");
                    Ok(Some(Need::Unit {
                        level: second,
                        literal,
                    }))
                } else {
                    Ok(Some(Need::Conflict { level: top }))
                }
            }
            &[w] => {
                let literal = literals[w];
                if assignment.falsified(literal) && assignment.level(literal.atom()) <= top {
                    Ok(None)
                } else {
                    Ok(Some(Need::Unit {
                        level: top,
                        literal: w,
                    }))
                }
            }
            _ => Ok(None),
        }
    }

    fn strong_need(&self, id: NoGoodId, assignment: &Assignment) -> Option<Need> {
        let nogood = &self.slots[id.index()].nogood;
        let head = nogood.head_index()?;
        let mut level = 0;
        for (i, &l) in nogood.literals().iter().enumerate() {
            if i == head {
                continue;
            }
            if !assignment.holds_strongly(l) {
                return None;
            }
            level = level.max(assignment.strong_level(l));
        }
        let h = nogood.literals()[head].atom();
        let derived =
            assignment.value(h) == TruthValue::True && assignment.true_level(h) <= level;
        (!derived).then_some(Need::Promote { level })
    }

    /// Watches a newly added nogood, propagating it if it is unit.
    pub fn attach(&mut self, id: NoGoodId, assignment: &mut Assignment) -> Attach {
        let current = assignment.decision_level();
        let weak = match self.weak_need(id, assignment) {
            Ok(need) => need,
            Err(()) => return Attach::Unsat,
        };
        let strong = self.strong_need(id, assignment);
        let target = weak.iter().chain(&strong).map(|n| n.level()).min();
        if let Some(target) = target {
            if target < current {
                return Attach::Backjump(target);
            }
        }

        let len = self.slots[id.index()].nogood.len();
        match weak {
            Some(Need::Conflict { level }) => {
                let literals = self.slots[id.index()].nogood.literals();
                let mut at_top = literals
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| assignment.level(l.atom()) == level)
                    .map(|(i, _)| i);
                let w0 = at_top.next().expect("two literals at the conflict level");
                let w1 = at_top.next().expect("two literals at the conflict level");
                self.watch(id, [w0, w1]);
                self.watch_strong(id, assignment);
                return Attach::Conflict(id);
            }
            Some(Need::Unit { literal, .. }) => {
                if len >= 2 {
                    let other = self.highest_holder(id, literal, assignment);
                    self.watch(id, [literal, other]);
                }
                self.force(id, literal, assignment);
            }
            Some(Need::Promote { .. }) => unreachable!("weak needs are units or conflicts"),
            None => {
                if len >= 2 {
                    let pair = self.quiet_watches(id, assignment);
                    self.watch(id, pair);
                }
            }
        }
        if strong.is_some() && self.strong_need(id, assignment).is_some() {
            let head = self.slots[id.index()].nogood.literals()
                [self.slots[id.index()].nogood.head_index().expect("head")]
            .atom();
            // head is not FALSE here: otherwise the weak part reported a unit or conflict
            assignment
                .assign(head, TruthValue::True, Reason::NoGood(id))
                .expect("head is promotable");
        }
        self.watch_strong(id, assignment);
        Attach::Done
    }

    fn highest_holder(&self, id: NoGoodId, except: usize, assignment: &Assignment) -> usize {
        let literals = self.slots[id.index()].nogood.literals();
        (0..literals.len())
            .filter(|&i| i != except)
            .max_by_key(|&i| {
                let l = literals[i];
                (assignment.holds(l), assignment.level(l.atom()))
            })
            .expect("nogood of size >= 2")
    }

    fn quiet_watches(&self, id: NoGoodId, assignment: &Assignment) -> [usize; 2] {
        let literals = self.slots[id.index()].nogood.literals();
        let mut non_holding = (0..literals.len()).filter(|&i| !assignment.holds(literals[i]));
        let first = non_holding.next().expect("a non-holding literal");
        match non_holding.next() {
            Some(second) => [first, second],
            // satisfied by an early falsified literal: pair it with the latest holder
            None => [first, self.highest_holder(id, first, assignment)],
        }
    }

    fn watch(&mut self, id: NoGoodId, pair: [usize; 2]) {
        let slot = &mut self.slots[id.index()];
        slot.watches = [pair[0] as u32, pair[1] as u32];
        for i in pair {
            let l = slot.nogood.literals()[i];
            self.weak_watches[l.index()].push(id);
        }
    }

    fn watch_strong(&mut self, id: NoGoodId, assignment: &Assignment) {
        let slot = &self.slots[id.index()];
        let Some(head) = slot.nogood.head_index() else {
            return;
        };
        let literals = slot.nogood.literals();
        let body = (0..literals.len()).filter(|&i| i != head);
        let chosen = body
            .clone()
            .find(|&i| !assignment.holds_strongly(literals[i]))
            .or_else(|| body.max_by_key(|&i| assignment.strong_level(literals[i])));
        if let Some(i) = chosen {
            let l = literals[i];
            self.slots[id.index()].strong_watch = Some(i as u32);
            self.strong_watches[l.index()].push(id);
        }
    }

    /// Runs unit propagation and head derivation to a fixpoint. Returns a violated nogood on
    /// conflict.
    pub fn propagate(&mut self, assignment: &mut Assignment) -> Option<NoGoodId> {
        while self.queue_head < assignment.trail().len() {
            let entry = assignment.trail()[self.queue_head];
            self.queue_head += 1;
            if !entry.is_promotion() {
                let literal = Literal::new(entry.atom, entry.value.is_positive());
                if let Some(conflict) = self.propagate_weak(literal, assignment) {
                    return Some(conflict);
                }
            }
            if entry.value != TruthValue::Mbt {
                let literal = Literal::new(entry.atom, entry.value == TruthValue::True);
                if let Some(conflict) = self.propagate_strong(literal, assignment) {
                    return Some(conflict);
                }
            }
        }
        None
    }

    fn propagate_weak(&mut self, literal: Literal, assignment: &mut Assignment) -> Option<NoGoodId> {
        // atoms that occur in no nogood have no watch lists
        let Some(list) = self.weak_watches.get_mut(literal.index()) else {
            return None;
        };
        let mut watchers = std::mem::take(list);
        let mut kept = 0;
        let mut conflict = None;
        let mut i = 0;
        while i < watchers.len() {
            let id = watchers[i];
            i += 1;
            let slot = &self.slots[id.index()];
            if slot.deleted {
                continue;
            }
            let literals = slot.nogood.literals();
            let me = if literals[slot.watches[0] as usize] == literal {
                0
            } else if literals[slot.watches[1] as usize] == literal {
                1
            } else {
                continue;
            };
            let other = slot.watches[1 - me] as usize;
            if assignment.falsified(literals[other]) {
                watchers[kept] = id;
                kept += 1;
                continue;
            }
            let replacement = (0..literals.len()).find(|&k| {
                k != other && k != slot.watches[me] as usize && !assignment.holds(literals[k])
            });
            if let Some(k) = replacement {
                let l = literals[k];
                self.slots[id.index()].watches[me] = k as u32;
                self.weak_watches[l.index()].push(id);
                continue;
            }
            watchers[kept] = id;
            kept += 1;
            if assignment.holds(literals[other]) {
                conflict = Some(id);
                break;
            }
            self.force(id, other, assignment);
        }
        while i < watchers.len() {
            watchers[kept] = watchers[i];
            kept += 1;
            i += 1;
        }
        watchers.truncate(kept);
        let list = &mut self.weak_watches[literal.index()];
        watchers.append(list);
        *list = watchers;
        conflict
    }

    fn propagate_strong(
        &mut self,
        literal: Literal,
        assignment: &mut Assignment,
    ) -> Option<NoGoodId> {
        // atoms that occur in no nogood have no watch lists
        let Some(list) = self.strong_watches.get_mut(literal.index()) else {
            return None;
        };
        let mut watchers = std::mem::take(list);
        let mut kept = 0;
        let mut conflict = None;
        let mut i = 0;
        while i < watchers.len() {
            let id = watchers[i];
            i += 1;
            let slot = &self.slots[id.index()];
            if slot.deleted {
                continue;
            }
            let literals = slot.nogood.literals();
            let head = slot.nogood.head_index().expect("strong watches are on head nogoods");
            let me = slot.strong_watch.expect("strong watch") as usize;
            if literals[me] != literal {
                continue;
            }
            let replacement = (0..literals.len())
                .find(|&k| k != head && k != me && !assignment.holds_strongly(literals[k]));
            if let Some(k) = replacement {
                let l = literals[k];
                self.slots[id.index()].strong_watch = Some(k as u32);
                self.strong_watches[l.index()].push(id);
                continue;
            }
            watchers[kept] = id;
            kept += 1;
            let h = literals[head].atom();
            match assignment.value(h) {
                TruthValue::True => {}
                TruthValue::False => {
                    conflict = Some(id);
                    break;
                }
                TruthValue::Unassigned | TruthValue::Mbt => {
                    assignment
                        .assign(h, TruthValue::True, Reason::NoGood(id))
                        .expect("derivable head");
                }
            }
        }
        while i < watchers.len() {
            watchers[kept] = watchers[i];
            kept += 1;
            i += 1;
        }
        watchers.truncate(kept);
        let list = &mut self.strong_watches[literal.index()];
        watchers.append(list);
        *list = watchers;
        conflict
    }

    /// First nogood violated once every unassigned atom is taken to be FALSE.
    pub fn violated_under_completion(&self, assignment: &Assignment) -> Option<NoGoodId> {
        self.iter()
            .find(|(_, ng)| {
                ng.literals().iter().all(|&l| {
                    let positive = assignment.value(l.atom()).is_positive();
                    positive == l.is_positive()
                })
            })
            .map(|(id, _)| id)
    }

    /// Debug check: a live nogood that is violated, unit, or has an underived head, if any.
    pub fn find_unpropagated(&self, assignment: &Assignment) -> Option<NoGoodId> {
        self.iter()
            .find(|(_, ng)| {
                let open: Vec<&Literal> =
                    ng.literals().iter().filter(|&&l| !assignment.holds(l)).collect();
                let weak = match open.as_slice() {
                    [] => true,
                    [l] => !assignment.falsified(**l),
                    _ => false,
                };
                let strong = ng.head_index().is_some_and(|h| {
                    ng.literals()
                        .iter()
                        .enumerate()
                        .all(|(i, &l)| i == h || assignment.holds_strongly(l))
                        && assignment.value(ng.literals()[h].atom()) != TruthValue::True
                });
                weak || strong
            })
            .map(|(id, _)| id)
    }
}
