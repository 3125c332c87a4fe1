//! Nogoods: sets of signed atoms that must not hold together.

use std::fmt;

use crate::ground::AtomId;

/// A signed atom. A positive literal holds when its atom is TRUE or MBT, a negative literal
/// holds when its atom is FALSE.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal(u32);

impl Literal {
    pub fn pos(atom: AtomId) -> Self {
        Literal(atom.0 << 1)
    }

    pub fn neg(atom: AtomId) -> Self {
        Literal((atom.0 << 1) | 1)
    }

    pub fn new(atom: AtomId, positive: bool) -> Self {
        if positive {
            Literal::pos(atom)
        } else {
            Literal::neg(atom)
        }
    }

    #[inline]
    pub fn atom(self) -> AtomId {
        AtomId(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Dense index suitable for per-literal tables.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn negate(self) -> Self {
        Literal(self.0 ^ 1)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.is_positive() { "+" } else { "-" };
        write!(f, "{sign}{}", self.atom().0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoGoodKind {
    /// Produced by the grounder from a rule instance.
    Static,
    /// Learned in conflict analysis; the only kind subject to deletion.
    Learned,
    /// Excludes a found answer set or a failed branch; kept forever.
    Enumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NoGoodId(pub u32);

impl NoGoodId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoGood {
    literals: Vec<Literal>,
    head: Option<usize>,
    pub activity: f64,
    lbd: Option<u32>,
    kind: NoGoodKind,
}

impl NoGood {
    /// Builds a nogood, dropping duplicate literals. Returns `None` for a tautology (some atom
    /// with both signs), which no assignment can violate.
    pub fn new(literals: impl IntoIterator<Item = Literal>, kind: NoGoodKind) -> Option<Self> {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort_unstable();
        literals.dedup();
        if literals.windows(2).any(|w| w[0].atom() == w[1].atom()) {
            return None;
        }
        Some(NoGood {
            literals,
            head: None,
            activity: 0.0,
            lbd: None,
            kind,
        })
    }

    /// Builds a head-derivation nogood: `neg head` is the derived literal.
    pub fn with_head(body: impl IntoIterator<Item = Literal>, head: AtomId) -> Option<Self> {
        let head_literal = Literal::neg(head);
        let mut nogood = NoGood::new(body.into_iter().chain([head_literal]), NoGoodKind::Static)?;
        nogood.head = nogood.literals.iter().position(|&l| l == head_literal);
        Some(nogood)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Index of the head literal, if this is a head-derivation nogood.
    pub fn head_index(&self) -> Option<usize> {
        self.head
    }

    pub fn head_literal(&self) -> Option<Literal> {
        self.head.map(|i| self.literals[i])
    }

    pub fn kind(&self) -> NoGoodKind {
        self.kind
    }

    pub fn is_learned(&self) -> bool {
        self.kind == NoGoodKind::Learned
    }

    pub fn lbd(&self) -> Option<u32> {
        self.lbd
    }

    /// Sets the LBD. It is fixed at learning time and never updated afterwards.
    pub fn set_lbd(&mut self, lbd: u32) {
        debug_assert!(self.lbd.is_none(), "LBD is assigned once");
        self.lbd = Some(lbd);
    }

    pub fn contains(&self, literal: Literal) -> bool {
        self.literals.binary_search(&literal).is_ok()
    }
}
