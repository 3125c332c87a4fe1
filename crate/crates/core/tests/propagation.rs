//! Watched-literal propagation against a full-scan fixpoint.

use lazy_asp::assignment::{Assignment, Reason, TruthValue};
use lazy_asp::ground::AtomId;
use lazy_asp::nogood::{Literal, NoGood, NoGoodKind};
use lazy_asp::propagation::{Attach, NoGoodStore};
use proptest::prelude::*;

const ATOMS: u32 = 8;

#[derive(Debug, Clone)]
enum Op {
    Decide { atom: u32, value: u8 },
    Backjump { to: u32 },
}

fn nogood() -> impl Strategy<Value = NoGood> {
    (
        proptest::sample::subsequence((0..ATOMS).collect::<Vec<_>>(), 1..=4),
        proptest::collection::vec(any::<bool>(), 4),
        any::<bool>(),
    )
        .prop_map(|(atoms, signs, headed)| {
            let lits = atoms.iter().zip(&signs).map(|(&a, &s)| Literal::new(AtomId(a), s));
            if headed && atoms.len() > 1 {
                let head = AtomId(atoms[0]);
                let body = atoms[1..].iter().zip(&signs[1..]).map(|(&a, &s)| Literal::new(AtomId(a), s));
                NoGood::with_head(body, head).unwrap()
            } else {
                NoGood::new(lits, NoGoodKind::Static).unwrap()
            }
        })
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        4 => (0..ATOMS, 0..3u8).prop_map(|(atom, value)| Op::Decide { atom, value }),
        1 => (0..4u32).prop_map(|to| Op::Backjump { to }),
    ]
}

fn holds(values: &[TruthValue], l: Literal) -> bool {
    let v = values[l.atom().index()];
    if l.is_positive() {
        v.is_positive()
    } else {
        v == TruthValue::False
    }
}

fn holds_strongly(values: &[TruthValue], l: Literal) -> bool {
    let v = values[l.atom().index()];
    if l.is_positive() {
        v == TruthValue::True
    } else {
        v == TruthValue::False
    }
}

/// Applies every nogood until nothing changes. Returns false on a violated nogood.
fn closure(nogoods: &[NoGood], values: &mut [TruthValue]) -> bool {
    loop {
        let mut changed = false;
        for ng in nogoods {
            let lits = ng.literals();
            let open: Vec<Literal> = lits.iter().copied().filter(|&l| !holds(values, l)).collect();
            if open.is_empty() {
                return false;
            }
            let head = ng.head_literal();
            let others_strong = |values: &[TruthValue], skip: Literal| {
                lits.iter().all(|&l| l == skip || holds_strongly(values, l))
            };
            if let [l] = open[..] {
                let a = l.atom().index();
                if values[a] == TruthValue::Unassigned {
                    values[a] = if l.is_positive() {
                        TruthValue::False
                    } else if head == Some(l) && others_strong(values, l) {
                        TruthValue::True
                    } else {
                        TruthValue::Mbt
                    };
                    changed = true;
                }
            }
            if let Some(h) = head {
                let a = h.atom().index();
                if others_strong(values, h) && values[a] == TruthValue::Mbt {
                    values[a] = TruthValue::True;
                    changed = true;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn decision_value(code: u8) -> TruthValue {
    match code {
        0 => TruthValue::Mbt,
        1 => TruthValue::False,
        _ => TruthValue::True,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn watches_reach_the_scan_fixpoint(
        nogoods in proptest::collection::vec(nogood(), 1..14),
        ops in proptest::collection::vec(op(), 1..16),
    ) {
        let mut store = NoGoodStore::default();
        let mut asg = Assignment::new();
        asg.grow(ATOMS as usize);
        for ng in &nogoods {
            let id = store.add(ng.clone());
            match store.attach(id, &mut asg) {
                Attach::Done => {}
                Attach::Unsat | Attach::Conflict(_) => {
                    let mut values = vec![TruthValue::Unassigned; ATOMS as usize];
                    prop_assert!(!closure(&nogoods, &mut values));
                    return Ok(());
                }
                Attach::Backjump(_) => prop_assert!(false, "backjump requested at level 0"),
            }
        }

        let mut decisions: Vec<(AtomId, TruthValue)> = Vec::new();
        let mut conflict = store.propagate(&mut asg).is_some();
        for op in ops {
            // the scan fixpoint replayed from the decisions
            let mut values = vec![TruthValue::Unassigned; ATOMS as usize];
            let mut consistent = closure(&nogoods, &mut values);
            for &(a, v) in &decisions {
                if !consistent {
                    break;
                }
                prop_assert_eq!(values[a.index()], TruthValue::Unassigned);
                values[a.index()] = v;
                consistent = closure(&nogoods, &mut values);
            }
            prop_assert_eq!(conflict, !consistent);
            if conflict {
                return Ok(());
            }
            let actual: Vec<TruthValue> = (0..ATOMS).map(|a| asg.value(AtomId(a))).collect();
            prop_assert_eq!(&actual, &values);
            prop_assert_eq!(store.find_unpropagated(&asg), None);

            match op {
                Op::Decide { atom, value } => {
                    let atom = AtomId(atom);
                    if asg.value(atom).is_assigned() {
                        continue;
                    }
                    let value = decision_value(value);
                    asg.new_decision_level();
                    asg.assign(atom, value, Reason::Decision).unwrap();
                    decisions.push((atom, value));
                    conflict = store.propagate(&mut asg).is_some();
                }
                Op::Backjump { to } => {
                    if to >= asg.decision_level() {
                        continue;
                    }
                    asg.backjump(to, |_| {});
                    store.on_backjump(asg.trail().len());
                    decisions.truncate(to as usize);
                    conflict = store.propagate(&mut asg).is_some();
                }
            }
        }
    }
}
