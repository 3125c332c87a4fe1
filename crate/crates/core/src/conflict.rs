//! First-UIP conflict analysis.

use std::collections::HashSet;

use crate::assignment::{Assignment, Reason};
use crate::ground::AtomId;
use crate::nogood::{Literal, NoGood, NoGoodId, NoGoodKind};
use crate::propagation::NoGoodStore;

#[derive(Debug, Clone, PartialEq)]
pub struct ConflictResult {
    /// Learned nogood with its LBD set.
    pub learned: NoGood,
    pub backjump_level: u32,
    pub lbd: u32,
    /// The single learned literal assigned at the conflict level.
    pub uip: Literal,
    /// Every atom met during resolution, each once.
    pub encountered: Vec<AtomId>,
    /// Nogoods resolved on, the conflicting one first.
    pub antecedents: Vec<NoGoodId>,
}

/// Number of distinct decision levels among the literals of `nogood`.
pub fn compute_lbd(literals: &[Literal], assignment: &Assignment) -> u32 {
    let levels: HashSet<u32> = literals
        .iter()
        .map(|l| {
            debug_assert!(
                assignment.value(l.atom()).is_assigned(),
                "LBD of an unassigned literal"
            );
            assignment.level(l.atom())
        })
        .collect();
    levels.len() as u32
}

struct Resolution {
    seen: Vec<bool>,
    encountered: Vec<AtomId>,
    /// Literals below the conflict level, kept in the learned nogood.
    lower: Vec<Literal>,
    /// Unresolved literals at the conflict level.
    pending: usize,
    conflict_level: u32,
}

impl Resolution {
    fn absorb(&mut self, literals: &[Literal], skip: Option<AtomId>, assignment: &Assignment) {
        for &l in literals {
            let a = l.atom();
            if Some(a) == skip || self.seen[a.index()] {
                continue;
            }
            self.seen[a.index()] = true;
            self.encountered.push(a);
            match assignment.level(a) {
                0 => {}
                level if level == self.conflict_level => self.pending += 1,
                _ => self.lower.push(l),
            }
        }
    }
}

/// Resolves `conflicting` against reasons on the trail down to the first unique implication
/// point. Returns `None` when the conflict does not depend on any decision (unsatisfiable).
pub fn analyze(
    conflicting: NoGoodId,
    assignment: &Assignment,
    store: &NoGoodStore,
) -> Option<ConflictResult> {
    let conflict_level = store
        .get(conflicting)
        .literals()
        .iter()
        .map(|l| assignment.level(l.atom()))
        .max()
        .unwrap_or(0);
    if conflict_level == 0 {
        return None;
    }

    let mut r = Resolution {
        seen: vec![false; assignment.atom_count()],
        encountered: Vec::new(),
        lower: Vec::new(),
        pending: 0,
        conflict_level,
    };
    let mut antecedents = vec![conflicting];
    r.absorb(store.get(conflicting).literals(), None, assignment);

    let trail = assignment.trail();
    let mut index = trail.len();
    let uip = loop {
        let entry = loop {
            index -= 1;
            let e = &trail[index];
            if !e.is_promotion() && r.seen[e.atom.index()] && assignment.position(e.atom) == index {
                break e;
            }
        };
        r.pending -= 1;
        if r.pending == 0 {
            break Literal::new(entry.atom, entry.value.is_positive());
        }
        let Reason::NoGood(reason) = entry.reason else {
            unreachable!("only the first entry of a level is a decision");
        };
        antecedents.push(reason);
        r.absorb(store.get(reason).literals(), Some(entry.atom), assignment);
    };
    let Resolution {
        mut lower,
        encountered,
        ..
    } = r;

    let backjump_level = lower
        .iter()
        .map(|l| assignment.level(l.atom()))
        .max()
        .unwrap_or(0);
    lower.push(uip);
    let lbd = compute_lbd(&lower, assignment);
    let mut learned =
        NoGood::new(lower, NoGoodKind::Learned).expect("literals that hold together");
    learned.set_lbd(lbd);
    Some(ConflictResult {
        learned,
        backjump_level,
        lbd,
        uip,
        encountered,
        antecedents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::TruthValue;
    use crate::propagation::Attach;

    fn a(i: u32) -> AtomId {
        AtomId(i)
    }

    fn static_ng(lits: &[Literal]) -> NoGood {
        NoGood::new(lits.iter().copied(), NoGoodKind::Static).unwrap()
    }

    #[test]
    fn lbd_counts_distinct_levels() {
        let mut asg = Assignment::new();
        let levels = [3u32, 3, 5, 7];
        for (i, &lvl) in levels.iter().enumerate() {
            while asg.decision_level() < lvl {
                asg.new_decision_level();
            }
            asg.assign(a(i as u32), TruthValue::True, Reason::Decision).unwrap();
        }
        let lits: Vec<Literal> = (0..4).map(|i| Literal::pos(a(i))).collect();
        assert_eq!(compute_lbd(&lits, &asg), 3);
        assert_eq!(compute_lbd(&lits[..2], &asg), 1);
    }

    #[test]
    fn level_zero_conflict_is_unsat() {
        let mut asg = Assignment::new();
        asg.assign(a(0), TruthValue::True, Reason::Decision).unwrap();
        asg.assign(a(1), TruthValue::True, Reason::Decision).unwrap();
        let mut store = NoGoodStore::default();
        let id = store.add(static_ng(&[Literal::pos(a(0)), Literal::pos(a(1))]));
        assert_eq!(analyze(id, &asg, &store), None);
    }

    /// Decisions 1, 2, 3 (one per level). Nogoods:
    ///   n1 = {+1, +3, -4} deriving 4, n2 = {+4, +5}, n3 = {+2, +3, -5}.
    /// Deciding 3 forces 4 TRUE (n1) and 5 MBT (n3), violating n2. By hand:
    ///   {+4, +5} resolved on 5 with n3 gives {+2, +3, +4}
    ///   resolved on 4 with n1 gives {+1, +2, +3}; only 3 is at level 3.
    /// Learned {+1, +2, +3}, backjump level 2, LBD 3.
    #[test]
    fn three_decision_scenario() {
        let mut asg = Assignment::new();
        let mut store = NoGoodStore::default();
        let n1 = store.add(NoGood::with_head([Literal::pos(a(1)), Literal::pos(a(3))], a(4)).unwrap());
        let n2 = store.add(static_ng(&[Literal::pos(a(4)), Literal::pos(a(5))]));
        let n3 = store.add(static_ng(&[Literal::pos(a(2)), Literal::pos(a(3)), Literal::neg(a(5))]));
        for id in [n1, n2, n3] {
            assert_eq!(store.attach(id, &mut asg), Attach::Done);
        }
        for d in 1..=3 {
            asg.new_decision_level();
            asg.assign(a(d), TruthValue::True, Reason::Decision).unwrap();
            if d < 3 {
                assert_eq!(store.propagate(&mut asg), None);
            }
        }
        let conflict = store.propagate(&mut asg).unwrap();
        assert_eq!(conflict, n2);
        assert_eq!(asg.value(a(4)), TruthValue::True);
        assert_eq!(asg.value(a(5)), TruthValue::Mbt);

        let result = analyze(conflict, &asg, &store).unwrap();
        let expected: Vec<Literal> = (1..=3).map(|i| Literal::pos(a(i))).collect();
        assert_eq!(result.learned.literals(), expected.as_slice());
        assert_eq!(result.uip, Literal::pos(a(3)));
        assert_eq!(result.backjump_level, 2);
        assert_eq!(result.lbd, 3);
        assert_eq!(result.learned.lbd(), Some(3));
        assert_eq!(result.antecedents, vec![n2, n3, n1]);
        let mut encountered = result.encountered.clone();
        encountered.sort();
        assert_eq!(encountered, (1..=5).map(a).collect::<Vec<_>>());

        // asserting: after backjump the learned nogood forces 3 FALSE
        asg.backjump(result.backjump_level, |_| {});
        store.on_backjump(asg.trail().len());
        let id = store.add(result.learned);
        assert_eq!(store.attach(id, &mut asg), Attach::Done);
        assert_eq!(asg.value(a(3)), TruthValue::False);
        assert_eq!(asg.level(a(3)), 2);
    }

    #[test]
    fn singleton_learned_nogood() {
        // decision 1 at level 1 forces 2 and 3 which clash
        let mut asg = Assignment::new();
        let mut store = NoGoodStore::default();
        let f2 = store.add(static_ng(&[Literal::pos(a(1)), Literal::pos(a(2))]));
        let f3 = store.add(static_ng(&[Literal::pos(a(1)), Literal::pos(a(3))]));
        let clash = store.add(static_ng(&[Literal::neg(a(2)), Literal::neg(a(3))]));
        for id in [f2, f3, clash] {
            assert_eq!(store.attach(id, &mut asg), Attach::Done);
        }
        asg.new_decision_level();
        asg.assign(a(1), TruthValue::Mbt, Reason::Decision).unwrap();
        let conflict = store.propagate(&mut asg).unwrap();
        let result = analyze(conflict, &asg, &store).unwrap();
        assert_eq!(result.learned.literals(), &[Literal::pos(a(1))]);
        assert_eq!(result.backjump_level, 0);
        assert_eq!(result.lbd, 1);
    }
}
