use std::collections::HashMap;
use std::fmt;

use crate::syntax::{Atom, Term};

/// Dense identifier of a ground atom. Ids are handed out in increasing order and never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub u32);

impl AtomId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Interned constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PredicateId(pub u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundAtom {
    pub predicate: PredicateId,
    pub args: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum AtomKey {
    Ordinary(GroundAtom),
    /// Synthetic atom standing for the body of rule instance `(rule, substitution)`.
    Body { rule: usize, substitution: Vec<Symbol> },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot intern non-ground atom {0}")]
pub struct NonGroundAtom(pub String);

/// Bidirectional map between ground atoms and their ids, plus the symbol and predicate tables
/// used to spell them.
#[derive(Debug, Default, Clone)]
pub struct AtomTable {
    symbols: Vec<String>,
    symbol_ids: HashMap<String, Symbol>,
    predicates: Vec<(String, usize)>,
    predicate_ids: HashMap<(String, usize), PredicateId>,
    atoms: Vec<AtomKey>,
    ids: HashMap<AtomKey, AtomId>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of interned atoms; also the next id to be allocated.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn symbol(&mut self, name: &str) -> Symbol {
        if let Some(&s) = self.symbol_ids.get(name) {
            return s;
        }
        let s = Symbol(self.symbols.len() as u32);
        self.symbols.push(name.to_owned());
        self.symbol_ids.insert(name.to_owned(), s);
        s
    }

    pub fn symbol_name(&self, symbol: Symbol) -> &str {
        &self.symbols[symbol.0 as usize]
    }

    pub fn predicate(&mut self, name: &str, arity: usize) -> PredicateId {
        let key = (name.to_owned(), arity);
        if let Some(&p) = self.predicate_ids.get(&key) {
            return p;
        }
        let p = PredicateId(self.predicates.len() as u32);
        self.predicates.push(key.clone());
        self.predicate_ids.insert(key, p);
        p
    }

    pub fn predicate_count(&self) -> usize {
        self.predicates.len()
    }

    pub fn predicate_name(&self, predicate: PredicateId) -> &str {
        &self.predicates[predicate.0 as usize].0
    }

    fn insert(&mut self, key: AtomKey) -> AtomId {
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = AtomId(self.atoms.len() as u32);
        self.atoms.push(key.clone());
        self.ids.insert(key, id);
        id
    }

    pub fn intern_ground(&mut self, atom: GroundAtom) -> AtomId {
        self.insert(AtomKey::Ordinary(atom))
    }

    /// Interns the body atom of the instance of `rule` under `substitution`.
    pub fn intern_body(&mut self, rule: usize, substitution: Vec<Symbol>) -> AtomId {
        self.insert(AtomKey::Body { rule, substitution })
    }

    /// Interns a syntactic ground atom, returning its existing id or allocating the next one.
    pub fn intern_atom(&mut self, atom: &Atom) -> Result<AtomId, NonGroundAtom> {
        if !atom.is_ground() {
            return Err(NonGroundAtom(atom.to_string()));
        }
        let predicate = self.predicate(&atom.predicate, atom.arity());
        let args = atom.terms.iter().map(|t| self.symbol(t.name())).collect();
        Ok(self.intern_ground(GroundAtom { predicate, args }))
    }

    pub fn lookup_ground(&self, atom: &GroundAtom) -> Option<AtomId> {
        // TODO: avoid the clone by keying ordinary atoms in their own map
        self.ids.get(&AtomKey::Ordinary(atom.clone())).copied()
    }

    /// Looks up a syntactic ground atom without interning it.
    pub fn lookup_atom(&self, atom: &Atom) -> Option<AtomId> {
        let predicate = *self
            .predicate_ids
            .get(&(atom.predicate.clone(), atom.arity()))?;
        let args = atom
            .terms
            .iter()
            .map(|t| self.symbol_ids.get(t.name()).copied())
            .collect::<Option<Vec<_>>>()?;
        self.lookup_ground(&GroundAtom { predicate, args })
    }

    pub fn ground_atom(&self, id: AtomId) -> Option<&GroundAtom> {
        match &self.atoms[id.index()] {
            AtomKey::Ordinary(atom) => Some(atom),
            AtomKey::Body { .. } => None,
        }
    }

    /// True for synthetic rule-body atoms.
    pub fn is_body_atom(&self, id: AtomId) -> bool {
        matches!(self.atoms[id.index()], AtomKey::Body { .. })
    }

    /// Rule index and substitution of a body atom. The substitution lists the rule's variables
    /// in first-occurrence order.
    pub fn body_instance(&self, id: AtomId) -> Option<(usize, &[Symbol])> {
        match &self.atoms[id.index()] {
            AtomKey::Body { rule, substitution } => Some((*rule, substitution)),
            AtomKey::Ordinary(_) => None,
        }
    }

    /// Converts an ordinary atom back into syntax. `None` for body atoms.
    pub fn to_atom(&self, id: AtomId) -> Option<Atom> {
        let ground = self.ground_atom(id)?;
        Some(Atom::new(
            self.predicate_name(ground.predicate),
            ground
                .args
                .iter()
                .map(|&s| Term::Constant(self.symbol_name(s).to_owned()))
                .collect(),
        ))
    }

    /// Human-readable spelling of any atom, including body atoms.
    pub fn display(&self, id: AtomId) -> String {
        match &self.atoms[id.index()] {
            AtomKey::Ordinary(_) => self.to_atom(id).expect("ordinary atom").to_string(),
            AtomKey::Body { rule, substitution } => {
                let args: Vec<&str> = substitution.iter().map(|&s| self.symbol_name(s)).collect();
                format!("_body{rule}({})", args.join(","))
            }
        }
    }
}
