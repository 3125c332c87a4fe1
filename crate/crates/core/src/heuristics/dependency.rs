use crate::ground::{AtomId, GroundRule};

/// For each ordinary atom, the choice points whose firing makes it true or false: the body atom
/// of every rule instance with that atom as head or in the negative body.
#[derive(Debug, Clone, Default)]
pub struct DependencyMap {
    influences: Vec<Vec<AtomId>>,
}

impl DependencyMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, rule: &GroundRule) {
        let Some(beta) = rule.body_atom else {
            return;
        };
        for &atom in rule.head.iter().chain(&rule.negative_body) {
            if self.influences.len() <= atom.index() {
                self.influences.resize(atom.index() + 1, Vec::new());
            }
            let set = &mut self.influences[atom.index()];
            if !set.contains(&beta) {
                set.push(beta);
            }
        }
    }

    pub fn influencing(&self, atom: AtomId) -> &[AtomId] {
        self.influences
            .get(atom.index())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}
