use crate::assignment::Assignment;
use crate::ground::{AtomId, GroundRule};
use crate::nogood::NoGood;
use crate::propagation::NoGoodStore;

use super::dependency::DependencyMap;
use super::heap::ActivityHeap;
use super::ChoicePoints;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VsidsParams {
    /// The increment is divided by this after every conflict.
    pub decay: f64,
    pub normalize_above: f64,
    /// Exponent `k` in the MOMs score `p·n·2^k + p + n`.
    pub moms_shift: u32,
}

impl Default for VsidsParams {
    fn default() -> Self {
        VsidsParams {
            decay: 0.92,
            normalize_above: 1e100,
            moms_shift: 10,
        }
    }
}

/// VSIDS over choice points. Bumps on ordinary atoms are redirected to the choice points that
/// influence them.
#[derive(Debug, Clone)]
pub struct DependencyVsids {
    pub params: VsidsParams,
    heap: ActivityHeap,
    deps: DependencyMap,
    increment: f64,
    /// Popped unassigned choice points that were not applicable; put back after a pick.
    skipped: Vec<AtomId>,
}

impl Default for DependencyVsids {
    fn default() -> Self {
        DependencyVsids::new(VsidsParams::default())
    }
}

impl DependencyVsids {
    pub fn new(params: VsidsParams) -> Self {
        DependencyVsids {
            params,
            heap: ActivityHeap::new(),
            deps: DependencyMap::new(),
            increment: 1.0,
            skipped: Vec::new(),
        }
    }

    pub fn increment(&self) -> f64 {
        self.increment
    }

    pub fn activity(&self, atom: AtomId) -> f64 {
        self.heap.activity(atom)
    }

    pub fn heap(&self) -> &ActivityHeap {
        &self.heap
    }

    pub fn dependencies(&self) -> &DependencyMap {
        &self.deps
    }

    /// Records the rule's dependencies and enters its choice point with activity 0.
    pub fn register(&mut self, rule: &GroundRule) {
        self.deps.register(rule);
        if let Some(beta) = rule.body_atom {
            self.heap.insert(beta);
        }
    }

    /// Sets an activity directly, normalizing if it crosses the bound.
    pub fn set_activity(&mut self, atom: AtomId, activity: f64) {
        self.heap.set_activity(atom, activity);
        if activity > self.params.normalize_above {
            self.normalize();
        }
    }

    fn add(&mut self, atom: AtomId) {
        let value = self.heap.activity(atom) + self.increment;
        self.heap.set_activity(atom, value);
        if value > self.params.normalize_above {
            self.normalize();
        }
    }

    /// Divides every activity and the increment by the bound.
    pub fn normalize(&mut self) {
        let divisor = self.params.normalize_above;
        self.heap.scale_down(divisor);
        self.increment /= divisor;
    }

    pub fn bump(&mut self, atom: AtomId, choices: &ChoicePoints) {
        if choices.contains(atom) {
            self.add(atom);
        } else {
            for i in 0..self.deps.influencing(atom).len() {
                let beta = self.deps.influencing(atom)[i];
                self.add(beta);
            }
        }
    }

    pub fn decay(&mut self) {
        self.increment /= self.params.decay;
    }

    pub fn moms_score(&self, atom: AtomId, store: &NoGoodStore) -> f64 {
        let (p, n) = store.short_occurrences(atom);
        let (p, n) = (f64::from(p), f64::from(n));
        p * n * f64::from(1u32 << self.params.moms_shift) + p + n
    }

    /// Raises the choice points touching `nogood` to their MOMs score.
    pub fn moms_update(&mut self, nogood: &NoGood, store: &NoGoodStore, choices: &ChoicePoints) {
        for literal in nogood.literals() {
            let atom = literal.atom();
            let targets: Vec<AtomId> = if choices.contains(atom) {
                vec![atom]
            } else {
                self.deps.influencing(atom).to_vec()
            };
            for c in targets {
                let score = self.moms_score(c, store);
                if score > self.heap.activity(c) {
                    self.set_activity(c, score);
                }
            }
        }
    }

    pub fn on_unassign(&mut self, atom: AtomId, choices: &ChoicePoints) {
        if choices.contains(atom) {
            self.heap.insert(atom);
        }
    }

    /// Highest-activity applicable choice point. Assigned entries are dropped from the heap and
    /// come back on unassignment.
    pub fn pick(&mut self, choices: &ChoicePoints, assignment: &Assignment) -> Option<AtomId> {
        let mut picked = None;
        while let Some(atom) = self.heap.pop() {
            if assignment.value(atom).is_assigned() {
                continue;
            }
            if choices.is_applicable(atom, assignment) {
                picked = Some(atom);
                self.heap.insert(atom);
                break;
            }
            self.skipped.push(atom);
        }
        for atom in self.skipped.drain(..) {
            self.heap.insert(atom);
        }
        picked
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::{Reason, TruthValue};
    use crate::nogood::{Literal, NoGoodKind};

    fn rule(head: u32, positive: &[u32], negative: &[u32], beta: u32) -> GroundRule {
        GroundRule {
            rule: 0,
            substitution: Vec::new(),
            head: Some(AtomId(head)),
            positive_body: positive.iter().copied().map(AtomId).collect(),
            negative_body: negative.iter().copied().map(AtomId).collect(),
            body_atom: Some(AtomId(beta)),
        }
    }

    fn setup(rules: &[GroundRule]) -> (DependencyVsids, ChoicePoints) {
        let mut h = DependencyVsids::default();
        let mut c = ChoicePoints::new();
        for r in rules {
            h.register(r);
            c.register(r);
        }
        (h, c)
    }

    #[test]
    fn bump_redirects_to_influencing_choice_points() {
        // h=0 :- not x=1 (β=2);  h :- not y=3 (β=4);  z=5 :- not h (β=6)
        let (mut h, c) = setup(&[rule(0, &[], &[1], 2), rule(0, &[], &[3], 4), rule(5, &[], &[0], 6)]);
        h.bump(AtomId(0), &c);
        assert_eq!(h.activity(AtomId(2)), 1.0);
        assert_eq!(h.activity(AtomId(4)), 1.0);
        assert_eq!(h.activity(AtomId(6)), 1.0, "h is in the negative body of β=6");
        h.bump(AtomId(4), &c);
        assert_eq!(h.activity(AtomId(4)), 2.0);
        h.bump(AtomId(1), &c);
        assert_eq!(h.activity(AtomId(2)), 2.0);
        assert_eq!(h.activity(AtomId(6)), 1.0);
    }

    #[test]
    fn decay_arithmetic() {
        let mut h = DependencyVsids::default();
        h.decay();
        assert!((h.increment() - 1.0869565).abs() < 1e-7);
        h.decay();
        assert!((h.increment() - 1.1814745).abs() < 1e-7);
    }

    #[test]
    fn normalization_scales_everything() {
        let (mut h, c) = setup(&[rule(0, &[], &[1], 2), rule(3, &[], &[4], 5)]);
        h.set_activity(AtomId(2), 5e99);
        h.set_activity(AtomId(5), 1e99);
        h.increment = 6e99;
        h.bump(AtomId(2), &c);
        assert!((h.activity(AtomId(2)) - 1.1).abs() < 1e-12);
        assert!((h.activity(AtomId(5)) - 0.1).abs() < 1e-12);
        assert!((h.increment() - 0.6).abs() < 1e-12);
        assert_eq!(h.heap().peek(), Some(AtomId(2)));
    }

    #[test]
    fn moms_score_formula() {
        let a = AtomId(0);
        let mut store = NoGoodStore::default();
        for other in 1..=2 {
            store.add(NoGood::new([Literal::pos(a), Literal::pos(AtomId(other))], NoGoodKind::Static).unwrap());
        }
        store.add(NoGood::new([Literal::neg(a), Literal::pos(AtomId(3))], NoGoodKind::Static).unwrap());
        let long: Vec<Literal> = (0..5).map(|i| Literal::pos(AtomId(10 + i))).collect();
        store.add(NoGood::new(long, NoGoodKind::Static).unwrap());
        let h = DependencyVsids::default();
        assert_eq!(h.moms_score(a, &store), 2051.0);
        assert_eq!(h.moms_score(AtomId(10), &store), 0.0);
    }

    #[test]
    fn pick_skips_inapplicable_and_assigned() {
        // β=2 needs a=1; β=4 has empty positive body
        let (mut h, c) = setup(&[rule(0, &[1], &[5], 2), rule(3, &[], &[6], 4)]);
        h.set_activity(AtomId(2), 5.0);
        h.set_activity(AtomId(4), 3.0);
        let mut asg = Assignment::new();
        assert_eq!(h.pick(&c, &asg), Some(AtomId(4)));
        asg.new_decision_level();
        asg.assign(AtomId(1), TruthValue::Mbt, Reason::Decision).unwrap();
        assert_eq!(h.pick(&c, &asg), Some(AtomId(2)));
        asg.assign(AtomId(2), TruthValue::False, Reason::Decision).unwrap();
        asg.assign(AtomId(4), TruthValue::False, Reason::Decision).unwrap();
        assert_eq!(h.pick(&c, &asg), None);
        asg.backjump(0, |e| h.on_unassign(e.atom, &c));
        assert_eq!(h.pick(&c, &asg), Some(AtomId(4)));
    }
}
