use std::collections::{HashMap, HashSet};

use crate::assignment::{TruthValue, ValueLookup};
use crate::syntax::{Atom, Program, Term};

use super::atoms::{AtomId, AtomTable, GroundAtom, PredicateId, Symbol};

/// How eagerly the instances of one statement class are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strictness {
    /// Every positive body atom must be TRUE or MBT.
    Strict,
    /// Every positive body atom must be known and not FALSE.
    Permissive,
}

impl std::str::FromStr for Strictness {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Strictness::Strict),
            "permissive" => Ok(Strictness::Permissive),
            other => Err(format!("unknown grounding strictness `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundingMode {
    pub rules: Strictness,
    pub constraints: Strictness,
}

impl Default for GroundingMode {
    fn default() -> Self {
        GroundingMode {
            rules: Strictness::Strict,
            constraints: Strictness::Permissive,
        }
    }
}

impl GroundingMode {
    pub fn uniform(strictness: Strictness) -> Self {
        GroundingMode {
            rules: strictness,
            constraints: strictness,
        }
    }

    fn for_rule(&self, is_constraint: bool) -> Strictness {
        if is_constraint {
            self.constraints
        } else {
            self.rules
        }
    }
}

/// One instance `rσ` of a program rule, expressed over atom ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundRule {
    /// Index of the rule in the program.
    pub rule: usize,
    /// Values of the rule's variables, in [`crate::syntax::Rule::variables`] order.
    pub substitution: Vec<Symbol>,
    pub head: Option<AtomId>,
    pub positive_body: Vec<AtomId>,
    pub negative_body: Vec<AtomId>,
    /// Body-representing atom; present iff the rule has a head and a non-empty negative body.
    pub body_atom: Option<AtomId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CompiledTerm {
    Constant(Symbol),
    Variable(usize),
}

#[derive(Debug, Clone)]
struct CompiledAtom {
    predicate: PredicateId,
    terms: Vec<CompiledTerm>,
}

#[derive(Debug, Clone)]
struct CompiledRule {
    head: Option<CompiledAtom>,
    positive: Vec<CompiledAtom>,
    negative: Vec<CompiledAtom>,
    variables: usize,
}

/// Lazily instantiates program rules against the atoms known so far.
///
/// Instantiation is semi-naive: only atoms that became eligible since the previous step (newly
/// interned, newly assigned TRUE/MBT, or no longer FALSE) seed new joins. The solver reports the
/// latter two through [`Grounder::note_changed`].
#[derive(Debug, Clone)]
pub struct Grounder {
    table: AtomTable,
    rules: Vec<CompiledRule>,
    /// `(rule, position)` pairs per predicate occurring in positive bodies.
    occurrences: Vec<Vec<(usize, usize)>>,
    by_predicate: Vec<Vec<AtomId>>,
    by_first_arg: HashMap<(PredicateId, Symbol), Vec<AtomId>>,
    emitted: HashSet<(usize, Vec<Symbol>)>,
    delta: Vec<AtomId>,
    in_delta: Vec<bool>,
    started: bool,
    emitted_count: usize,
}

impl Grounder {
    pub fn new(program: &Program) -> Self {
        let mut table = AtomTable::new();
        let rules = program
            .rules
            .iter()
            .map(|rule| {
                let vars = rule.variables();
                let mut compile = |atom: &Atom| CompiledAtom {
                    predicate: table.predicate(&atom.predicate, atom.arity()),
                    terms: atom
                        .terms
                        .iter()
                        .map(|t| match t {
                            Term::Constant(c) => CompiledTerm::Constant(table.symbol(c)),
                            Term::Variable(v) => CompiledTerm::Variable(
                                vars.iter().position(|x| x == v).expect("variable of rule"),
                            ),
                        })
                        .collect(),
                };
                CompiledRule {
                    head: rule.head.as_ref().map(&mut compile),
                    positive: rule.positive_body.iter().map(&mut compile).collect(),
                    negative: rule.negative_body.iter().map(&mut compile).collect(),
                    variables: vars.len(),
                }
            })
            .collect::<Vec<_>>();

        let mut occurrences = vec![Vec::new(); table.predicate_count()];
        for (r, rule) in rules.iter().enumerate() {
            for (i, atom) in rule.positive.iter().enumerate() {
                occurrences[atom.predicate.0 as usize].push((r, i));
            }
        }
        let by_predicate = vec![Vec::new(); table.predicate_count()];

        Grounder {
            table,
            rules,
            occurrences,
            by_predicate,
            by_first_arg: HashMap::new(),
            emitted: HashSet::new(),
            delta: Vec::new(),
            in_delta: Vec::new(),
            started: false,
            emitted_count: 0,
        }
    }

    pub fn atoms(&self) -> &AtomTable {
        &self.table
    }

    /// Number of rule instances produced so far.
    pub fn emitted_count(&self) -> usize {
        self.emitted_count
    }

    /// Interns a ground atom, indexing it for joins. New atoms seed the next step.
    pub fn intern(&mut self, atom: GroundAtom) -> AtomId {
        let before = self.table.len();
        let predicate = atom.predicate;
        let first = atom.args.first().copied();
        let id = self.table.intern_ground(atom);
        if self.table.len() > before {
            self.in_delta.resize(self.table.len(), false);
            let slot = predicate.0 as usize;
            if slot >= self.by_predicate.len() {
                self.by_predicate.resize(slot + 1, Vec::new());
                self.occurrences.resize(slot + 1, Vec::new());
            }
            self.by_predicate[slot].push(id);
            if let Some(first) = first {
                self.by_first_arg.entry((predicate, first)).or_default().push(id);
            }
            self.note_changed(id);
        }
        id
    }

    /// Interns a syntactic ground atom.
    pub fn intern_atom(&mut self, atom: &Atom) -> Result<AtomId, super::atoms::NonGroundAtom> {
        if !atom.is_ground() {
            return Err(super::atoms::NonGroundAtom(atom.to_string()));
        }
        let predicate = self.table.predicate(&atom.predicate, atom.arity());
        let args = atom.terms.iter().map(|t| self.table.symbol(t.name())).collect();
        Ok(self.intern(GroundAtom { predicate, args }))
    }

    /// Marks `atom` as possibly newly eligible as a positive body atom.
    pub fn note_changed(&mut self, atom: AtomId) {
        let i = atom.index();
        if i >= self.in_delta.len() {
            self.in_delta.resize(i + 1, false);
        }
        if !self.in_delta[i] && !self.table.is_body_atom(atom) {
            self.in_delta[i] = true;
            self.delta.push(atom);
        }
    }

    /// Produces every not-yet-emitted rule instance whose positive body satisfies the firing
    /// condition of its statement class under `values`.
    pub fn ground_step<V: ValueLookup>(&mut self, values: &V, mode: GroundingMode) -> Vec<GroundRule> {
        let mut found: Vec<(usize, Vec<Symbol>)> = Vec::new();

        if !self.started {
            self.started = true;
            for (r, rule) in self.rules.iter().enumerate() {
                if rule.positive.is_empty() {
                    found.push((r, Vec::new()));
                }
            }
        }

        let delta = std::mem::take(&mut self.delta);
        for &atom in &delta {
            self.in_delta[atom.index()] = false;
        }
        for atom in delta {
            let ground = self.table.ground_atom(atom).expect("ordinary atom").clone();
            let occurrences = self
                .occurrences
                .get(ground.predicate.0 as usize)
                .cloned()
                .unwrap_or_default();
            for (r, position) in occurrences {
                let rule = &self.rules[r];
                let strictness = mode.for_rule(rule.head.is_none());
                if !eligible(values.value(atom), strictness) {
                    continue;
                }
                let mut binding = vec![None; rule.variables];
                if !unify(&rule.positive[position], &ground.args, &mut binding) {
                    continue;
                }
                let order: Vec<usize> = (0..rule.positive.len()).filter(|&i| i != position).collect();
                self.join(r, &order, binding, values, strictness, &mut found);
            }
        }

        let mut out = Vec::new();
        for (r, substitution) in found {
            if !self.emitted.insert((r, substitution.clone())) {
                continue;
            }
            out.push(self.instantiate(r, substitution));
        }
        self.emitted_count += out.len();
        out
    }

    fn join<V: ValueLookup>(
        &self,
        r: usize,
        remaining: &[usize],
        binding: Vec<Option<Symbol>>,
        values: &V,
        strictness: Strictness,
        found: &mut Vec<(usize, Vec<Symbol>)>,
    ) {
        let Some((&next, rest)) = remaining.split_first() else {
            let substitution = binding
                .into_iter()
                .map(|s| s.expect("safe rules bind every variable"))
                .collect::<Vec<_>>();
            if !self.emitted.contains(&(r, substitution.clone())) {
                found.push((r, substitution));
            }
            return;
        };
        let pattern = &self.rules[r].positive[next];
        let first = match pattern.terms.first() {
            Some(CompiledTerm::Constant(c)) => Some(*c),
            Some(CompiledTerm::Variable(v)) => binding[*v],
            None => None,
        };
        let candidates: &[AtomId] = match first {
            Some(c) => self
                .by_first_arg
                .get(&(pattern.predicate, c))
                .map(Vec::as_slice)
                .unwrap_or(&[]),
            None => self
                .by_predicate
                .get(pattern.predicate.0 as usize)
                .map(Vec::as_slice)
                .unwrap_or(&[]),
        };
        for &candidate in candidates {
            if !eligible(values.value(candidate), strictness) {
                continue;
            }
            let ground = self.table.ground_atom(candidate).expect("ordinary atom");
            let mut extended = binding.clone();
            if unify(pattern, &ground.args, &mut extended) {
                self.join(r, rest, extended, values, strictness, found);
            }
        }
    }

    fn instantiate(&mut self, r: usize, substitution: Vec<Symbol>) -> GroundRule {
        let rule = self.rules[r].clone();
        let apply = |grounder: &mut Grounder, atom: &CompiledAtom| {
            let args = atom
                .terms
                .iter()
                .map(|t| match *t {
                    CompiledTerm::Constant(c) => c,
                    CompiledTerm::Variable(v) => substitution[v],
                })
                .collect();
            grounder.intern(GroundAtom {
                predicate: atom.predicate,
                args,
            })
        };
        let positive_body = rule.positive.iter().map(|a| apply(self, a)).collect();
        let negative_body: Vec<AtomId> = rule.negative.iter().map(|a| apply(self, a)).collect();
        let head = rule.head.as_ref().map(|a| apply(self, a));
        let body_atom = (head.is_some() && !negative_body.is_empty())
            .then(|| self.table.intern_body(r, substitution.clone()));
        GroundRule {
            rule: r,
            substitution,
            head,
            positive_body,
            negative_body,
            body_atom,
        }
    }
}

fn eligible(value: TruthValue, strictness: Strictness) -> bool {
    match strictness {
        Strictness::Strict => value.is_positive(),
        Strictness::Permissive => value != TruthValue::False,
    }
}

fn unify(pattern: &CompiledAtom, args: &[Symbol], binding: &mut [Option<Symbol>]) -> bool {
    for (term, &arg) in pattern.terms.iter().zip(args) {
        match *term {
            CompiledTerm::Constant(c) if c != arg => return false,
            CompiledTerm::Constant(_) => {}
            CompiledTerm::Variable(v) => match binding[v] {
                Some(bound) if bound != arg => return false,
                Some(_) => {}
                None => binding[v] = Some(arg),
            },
        }
    }
    true
}
