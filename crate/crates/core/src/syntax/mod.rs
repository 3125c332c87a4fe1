//! Abstract syntax of normal logic programs.
//!
//! A [`Program`] is a list of [`Rule`]s of the shape `h :- b1, ..., bm, not c1, ..., not cn.`
//! Facts have an empty body, constraints have no head. Every rule accepted by the parser is
//! *safe*: each variable in the head or in a negative body literal also occurs in a positive body
//! literal, which is what makes bottom-up instantiation possible.

mod parser;

use std::collections::BTreeSet;
use std::fmt;

pub use parser::{parse_program, ParseError, ParseErrorKind};

/// Line/column of a statement in its source text, both 1-based.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// A lowercase symbol or an integer literal.
    Constant(String),
    /// An identifier starting with an uppercase letter or `_`.
    Variable(String),
}

impl Term {
    /// Classifies `name` by its lexical class. Returns `None` for names that are neither a
    /// constant nor a variable.
    pub fn from_name(name: &str) -> Option<Term> {
        let first = name.chars().next()?;
        if first.is_ascii_lowercase() {
            name.chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_')
                .then(|| Term::Constant(name.to_owned()))
        } else if first.is_ascii_digit() {
            name.chars()
                .all(|c| c.is_ascii_digit())
                .then(|| Term::Constant(name.to_owned()))
        } else if first.is_ascii_uppercase() || first == '_' {
            name.chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_')
                .then(|| Term::Variable(name.to_owned()))
        } else {
            None
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Constant(name) | Term::Variable(name) => name,
        }
    }

    pub fn is_variable(&self) -> bool {
        matches!(self, Term::Variable(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub predicate: String,
    pub terms: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, terms: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            terms,
        }
    }

    /// Builds an atom from term names, classifying each one lexically.
    ///
    /// # Panics
    ///
    /// Panics if a name is not a valid constant or variable.
    pub fn from_names(predicate: &str, names: &[&str]) -> Self {
        let terms = names
            .iter()
            .map(|n| Term::from_name(n).unwrap_or_else(|| panic!("invalid term name {n:?}")))
            .collect();
        Atom::new(predicate, terms)
    }

    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    pub fn is_ground(&self) -> bool {
        !self.terms.iter().any(Term::is_variable)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().filter_map(|t| match t {
            Term::Variable(v) => Some(v.as_str()),
            Term::Constant(_) => None,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.terms.is_empty() {
            f.write_str("(")?;
            for (i, term) in self.terms.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{term}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A normal rule. Equality ignores `position`, which only serves diagnostics.
#[derive(Debug, Clone, Eq)]
pub struct Rule {
    pub head: Option<Atom>,
    pub positive_body: Vec<Atom>,
    pub negative_body: Vec<Atom>,
    pub position: Position,
}

impl PartialEq for Rule {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head
            && self.positive_body == other.positive_body
            && self.negative_body == other.negative_body
    }
}

impl Rule {
    pub fn new(head: Option<Atom>, positive_body: Vec<Atom>, negative_body: Vec<Atom>) -> Self {
        Rule {
            head,
            positive_body,
            negative_body,
            position: Position::default(),
        }
    }

    pub fn fact(head: Atom) -> Self {
        Rule::new(Some(head), Vec::new(), Vec::new())
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }

    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.positive_body.is_empty() && self.negative_body.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.head
            .iter()
            .chain(&self.positive_body)
            .chain(&self.negative_body)
    }

    /// Variables in order of first occurrence (positive body first, then head, then negative
    /// body), without duplicates.
    pub fn variables(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        let ordered = self
            .positive_body
            .iter()
            .chain(&self.head)
            .chain(&self.negative_body);
        for atom in ordered {
            for var in atom.variables() {
                if !seen.contains(&var) {
                    seen.push(var);
                }
            }
        }
        seen
    }

    pub fn is_ground(&self) -> bool {
        self.atoms().all(Atom::is_ground)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(head) = &self.head {
            write!(f, "{head}")?;
        }
        if !self.positive_body.is_empty() || !self.negative_body.is_empty() || self.head.is_none()
        {
            f.write_str(if self.head.is_some() { " :- " } else { ":- " })?;
            let literals = self
                .positive_body
                .iter()
                .map(|a| a.to_string())
                .chain(self.negative_body.iter().map(|a| format!("not {a}")));
            for (i, lit) in literals.enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&lit)?;
            }
        }
        f.write_str(".")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Self {
        Program { rules }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// Unsafe variables of a rule, sorted and without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafetyViolation {
    pub variables: Vec<String>,
}

impl fmt::Display for SafetyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unsafe variable(s) {}", self.variables.join(", "))
    }
}

/// Checks that `vars(head) ∪ vars(negative body) ⊆ vars(positive body)`.
pub fn validate_safety(rule: &Rule) -> Result<(), SafetyViolation> {
    let bound: BTreeSet<&str> = rule.positive_body.iter().flat_map(Atom::variables).collect();
    let unsafe_vars: BTreeSet<&str> = rule
        .head
        .iter()
        .chain(&rule.negative_body)
        .flat_map(Atom::variables)
        .filter(|v| !bound.contains(v))
        .collect();
    if unsafe_vars.is_empty() {
        Ok(())
    } else {
        Err(SafetyViolation {
            variables: unsafe_vars.into_iter().map(str::to_owned).collect(),
        })
    }
}
