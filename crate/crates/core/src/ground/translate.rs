use crate::nogood::{Literal, NoGood, NoGoodKind};

use super::grounder::GroundRule;

/// Translates a rule instance into nogoods.
///
/// * constraint: `{+b : b ∈ B+} ∪ {-c : c ∈ B-}`
/// * rule without negation: `{+b : b ∈ B+} ∪ {-h}` deriving `h`
/// * rule with body atom `β`: `{+B+, -B-, -β}` deriving `β`, `{+β, -b}` per positive body atom,
///   `{+β, +c}` per negative body atom and `{+β, -h}` deriving `h`.
///
/// Tautological nogoods (an atom with both signs) are omitted. The body atom, if any, is the
/// instance's choice point.
pub fn rule_to_nogoods(rule: &GroundRule) -> Vec<NoGood> {
    let body = || {
        rule.positive_body
            .iter()
            .map(|&b| Literal::pos(b))
            .chain(rule.negative_body.iter().map(|&c| Literal::neg(c)))
    };

    let (Some(beta), Some(head)) = (rule.body_atom, rule.head) else {
        let nogood = match rule.head {
            None => NoGood::new(body(), NoGoodKind::Static),
            Some(head) => NoGood::with_head(body(), head),
        };
        return nogood.into_iter().collect();
    };

    let mut out = Vec::with_capacity(rule.positive_body.len() + rule.negative_body.len() + 2);
    out.extend(NoGood::with_head(body(), beta));
    for &b in &rule.positive_body {
        out.extend(NoGood::new([Literal::pos(beta), Literal::neg(b)], NoGoodKind::Static));
    }
    for &c in &rule.negative_body {
        out.extend(NoGood::new([Literal::pos(beta), Literal::pos(c)], NoGoodKind::Static));
    }
    out.extend(NoGood::with_head([Literal::pos(beta)], head));
    out
}
