//! The solve loop: ground what may fire, propagate, learn from conflicts, decide.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::time::{Duration, Instant};

use crate::assignment::{Assignment, Reason, TruthValue};
use crate::config::SolverConfig;
use crate::conflict::analyze;
use crate::ground::{rule_to_nogoods, AtomId, AtomTable, GroundRule, Grounder};
use crate::heuristics::{choose_sign, ChoicePoints, Heuristic};
use crate::nogood::{NoGood, NoGoodId, NoGoodKind};
use crate::propagation::{Attach, NoGoodStore};
use crate::search::{clean_store, DeletionState, PhaseTable, RestartState};
use crate::syntax::Program;

const CLAUSE_DECAY: f64 = 0.999;
const CLAUSE_RESCALE: f64 = 1e20;

/// A set of ordinary ground atoms, spelled as in the source syntax.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AnswerSet {
    atoms: BTreeSet<String>,
}

impl AnswerSet {
    pub fn new(atoms: impl IntoIterator<Item = String>) -> Self {
        AnswerSet {
            atoms: atoms.into_iter().collect(),
        }
    }

    /// Atoms in lexicographic order.
    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(String::as_str)
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.atoms.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

impl fmt::Display for AnswerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("{ }");
        }
        f.write_str("{ ")?;
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(atom)?;
        }
        f.write_str(" }")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// Every answer set has been found.
    Exhausted,
    /// The requested number of answer sets has been found.
    LimitReached,
    /// The program has no answer set.
    Unsat,
    TimedOut,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Exhausted => "exhausted",
            SolveStatus::LimitReached => "limit-reached",
            SolveStatus::Unsat => "unsat",
            SolveStatus::TimedOut => "timed-out",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Stats {
    pub conflicts: u64,
    pub decisions: u64,
    pub restarts: u64,
    pub learned: u64,
    pub deleted: u64,
    pub ground_rules: u64,
    pub nogoods: u64,
    pub atoms: u64,
    pub answers: u64,
    pub wall_time: Duration,
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conflicts={}", self.conflicts)?;
        writeln!(f, "decisions={}", self.decisions)?;
        writeln!(f, "restarts={}", self.restarts)?;
        writeln!(f, "learned={}", self.learned)?;
        writeln!(f, "deleted={}", self.deleted)?;
        writeln!(f, "ground_rules={}", self.ground_rules)?;
        writeln!(f, "nogoods={}", self.nogoods)?;
        writeln!(f, "atoms={}", self.atoms)?;
        writeln!(f, "answers={}", self.answers)?;
        write!(f, "wall_time_ms={:.3}", self.wall_time.as_secs_f64() * 1000.0)
    }
}

/// State visible to a decision observer just before a decision is made.
pub struct DecisionInfo<'a> {
    pub atom: AtomId,
    /// True for a positive decision.
    pub sign: bool,
    pub saved_phase: bool,
    pub assignment: &'a Assignment,
    pub atoms: &'a AtomTable,
}

pub type DecisionObserver = Box<dyn FnMut(&DecisionInfo<'_>)>;

/// Result of [`solve`].
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub answers: Vec<AnswerSet>,
    pub status: SolveStatus,
    pub stats: Stats,
}

enum Flow {
    Continue,
    Conflict(NoGoodId),
    Unsat,
}

pub struct Solver {
    config: SolverConfig,
    grounder: Grounder,
    assignment: Assignment,
    store: NoGoodStore,
    choices: ChoicePoints,
    heuristic: Heuristic,
    phases: PhaseTable,
    restarts: RestartState,
    deletion: DeletionState,
    clause_increment: f64,
    /// Trail prefix already reported to the grounder.
    reported: usize,
    unattached: VecDeque<NoGoodId>,
    pending_conflict: Option<NoGoodId>,
    status: Option<SolveStatus>,
    stats: Stats,
    started: Instant,
    observer: Option<DecisionObserver>,
}

impl Solver {
    pub fn new(program: &Program, config: SolverConfig) -> Self {
        Solver {
            grounder: Grounder::new(program),
            assignment: Assignment::new(),
            store: NoGoodStore::default(),
            choices: ChoicePoints::new(),
            heuristic: Heuristic::new(config.heuristic),
            phases: PhaseTable::new(config.phase_policy),
            restarts: RestartState::new(config.restart_params),
            deletion: DeletionState::new(config.deletion_params),
            clause_increment: 1.0,
            reported: 0,
            unattached: VecDeque::new(),
            pending_conflict: None,
            status: None,
            stats: Stats::default(),
            started: Instant::now(),
            observer: None,
            config,
        }
    }

    /// Calls `observer` before every decision.
    pub fn set_decision_observer(&mut self, observer: impl FnMut(&DecisionInfo<'_>) + 'static) {
        self.observer = Some(Box::new(observer));
    }

    pub fn status(&self) -> Option<SolveStatus> {
        self.status
    }

    pub fn stats(&self) -> Stats {
        let mut stats = self.stats.clone();
        stats.atoms = self.grounder.atoms().len() as u64;
        stats.nogoods = self.store.len() as u64;
        stats.ground_rules = self.grounder.emitted_count() as u64;
        stats.wall_time = self.started.elapsed();
        stats
    }

    pub fn atoms(&self) -> &AtomTable {
        self.grounder.atoms()
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    /// Searches for the next answer set. Returns `None` once the search has stopped; see
    /// [`Solver::status`] for why.
    pub fn next_answer(&mut self) -> Option<AnswerSet> {
        if self.status.is_some() {
            return None;
        }
        if self.config.n_answers.reached(self.stats.answers as usize) {
            self.status = Some(SolveStatus::LimitReached);
            return None;
        }
        loop {
            if let Some(limit) = self.config.time_limit {
                if self.started.elapsed() >= limit {
                    self.status = Some(SolveStatus::TimedOut);
                    return None;
                }
            }

            if let Some(conflict) = self.pending_conflict.take() {
                if !self.resolve(conflict) {
                    return self.stop();
                }
                continue;
            }
            if let Some(id) = self.unattached.pop_front() {
                match self.integrate(id) {
                    Flow::Continue => {}
                    Flow::Conflict(c) => self.pending_conflict = Some(c),
                    Flow::Unsat => return self.stop(),
                }
                continue;
            }
            if let Some(conflict) = self.store.propagate(&mut self.assignment) {
                self.pending_conflict = Some(conflict);
                continue;
            }

            self.report_to_grounder();
            let rules = self
                .grounder
                .ground_step(&self.assignment, self.config.grounding);
            if !rules.is_empty() {
                self.add_rules(rules);
                continue;
            }

            if self.config.check_invariants {
                if let Some(id) = self.store.find_unpropagated(&self.assignment) {
                    panic!("propagation missed nogood {id:?}: {:?}", self.store.get(id));
                }
            }

            if let Some(atom) = self.heuristic.pick(&self.choices, &self.assignment) {
                self.decide(atom);
                continue;
            }

            let complete = self.assignment.mbt_count() == 0
                && self
                    .store
                    .violated_under_completion(&self.assignment)
                    .is_none();
            let answer = complete.then(|| self.extract_answer());
            if answer.is_some() {
                self.stats.answers += 1;
            }
            let more = self.exclude_branch();
            match answer {
                Some(answer) => {
                    if !more {
                        self.status = Some(SolveStatus::Exhausted);
                    }
                    return Some(answer);
                }
                None if !more => return self.stop(),
                None => {}
            }
        }
    }

    /// Ends the search because the search space is used up.
    fn stop(&mut self) -> Option<AnswerSet> {
        self.status = Some(if self.stats.answers == 0 {
            SolveStatus::Unsat
        } else {
            SolveStatus::Exhausted
        });
        None
    }

    fn grow(&mut self) {
        let n = self.grounder.atoms().len();
        self.assignment.grow(n);
        self.phases.grow(n);
    }

    fn report_to_grounder(&mut self) {
        let trail = self.assignment.trail();
        for entry in &trail[self.reported.min(trail.len())..] {
            if !entry.is_promotion() && entry.value.is_positive() {
                self.grounder.note_changed(entry.atom);
            }
        }
        self.reported = trail.len();
    }

    fn add_rules(&mut self, rules: Vec<GroundRule>) {
        self.grow();
        for rule in &rules {
            self.choices.register(rule);
            self.heuristic.register(rule);
        }
        for rule in &rules {
            for nogood in rule_to_nogoods(rule) {
                let id = self.store.add(nogood);
                self.heuristic
                    .on_new_nogood(self.store.get(id), &self.store, &self.choices);
                self.unattached.push_back(id);
            }
        }
    }

    /// Attaches a nogood added while the search is underway.
    fn integrate(&mut self, id: NoGoodId) -> Flow {
        loop {
            match self.store.attach(id, &mut self.assignment) {
                Attach::Done => return Flow::Continue,
                Attach::Conflict(c) => return Flow::Conflict(c),
                Attach::Backjump(level) => self.backjump(level),
                Attach::Unsat => return Flow::Unsat,
            }
        }
    }

    fn backjump(&mut self, level: u32) {
        let Solver {
            assignment,
            phases,
            heuristic,
            choices,
            grounder,
            ..
        } = self;
        assignment.backjump(level, |entry| {
            if entry.is_promotion() {
                return;
            }
            phases.save(entry.atom, entry.value);
            heuristic.on_unassign(entry.atom, choices);
            if entry.value == TruthValue::False {
                grounder.note_changed(entry.atom);
            }
        });
        let len = self.assignment.trail().len();
        self.store.on_backjump(len);
        self.reported = self.reported.min(len);
    }

    /// Learns from a conflict. Returns false if the conflict is unconditional.
    fn resolve(&mut self, conflict: NoGoodId) -> bool {
        self.stats.conflicts += 1;
        let Some(result) = analyze(conflict, &self.assignment, &self.store) else {
            return false;
        };
        self.heuristic.on_conflict(&result.encountered, &self.choices);
        for &id in &result.antecedents {
            if self.store.get(id).is_learned() {
                self.bump_nogood(id);
            }
        }
        self.restarts.on_conflict_lbd(result.lbd);
        self.deletion.on_conflict();

        self.backjump(result.backjump_level);
        let mut learned = result.learned;
        learned.activity = self.clause_increment;
        self.clause_increment /= CLAUSE_DECAY;
        let id = self.store.add(learned);
        self.stats.learned += 1;
        match self.integrate(id) {
            Flow::Continue => {}
            Flow::Conflict(c) => {
                self.pending_conflict = Some(c);
                return true;
            }
            Flow::Unsat => return false,
        }

        if self.config.restarts && self.restarts.should_restart() {
            self.backjump(0);
            self.restarts.on_restart();
            self.stats.restarts += 1;
        }
        if self.config.deletion && self.deletion.is_due() {
            let removed = clean_store(&mut self.store, &self.assignment, &mut self.deletion);
            self.stats.deleted += removed as u64;
        }
        true
    }

    fn bump_nogood(&mut self, id: NoGoodId) {
        let nogood = self.store.get_mut(id);
        nogood.activity += self.clause_increment;
        if nogood.activity > CLAUSE_RESCALE {
            for learned in self.store.learned_ids() {
                self.store.get_mut(learned).activity /= CLAUSE_RESCALE;
            }
            self.clause_increment /= CLAUSE_RESCALE;
        }
    }

    fn decide(&mut self, atom: AtomId) {
        self.grow();
        let sign = choose_sign(atom, &self.assignment, &self.phases);
        if let Some(observer) = &mut self.observer {
            observer(&DecisionInfo {
                atom,
                sign,
                saved_phase: self.phases.get(atom),
                assignment: &self.assignment,
                atoms: self.grounder.atoms(),
            });
        }
        self.stats.decisions += 1;
        self.assignment.new_decision_level();
        let value = if sign { TruthValue::Mbt } else { TruthValue::False };
        self.assignment
            .assign(atom, value, Reason::Decision)
            .expect("choice points are decided while unassigned");
    }

    /// Forbids the current combination of decisions. Returns false when there is none left.
    fn exclude_branch(&mut self) -> bool {
        let decisions = self.assignment.decisions();
        if decisions.is_empty() {
            return false;
        }
        let nogood = NoGood::new(decisions, NoGoodKind::Enumeration).expect("decisions are distinct");
        let id = self.store.add(nogood);
        match self.integrate(id) {
            Flow::Continue => true,
            Flow::Conflict(c) => {
                self.pending_conflict = Some(c);
                true
            }
            Flow::Unsat => false,
        }
    }

    fn extract_answer(&self) -> AnswerSet {
        let atoms = self.grounder.atoms();
        AnswerSet::new(
            (0..atoms.len() as u32)
                .map(AtomId)
                .filter(|&a| {
                    !atoms.is_body_atom(a) && self.assignment.value(a) == TruthValue::True
                })
                .map(|a| atoms.display(a)),
        )
    }
}

/// Solves `program`, collecting answer sets until the configured limit or exhaustion.
pub fn solve(program: &Program, config: SolverConfig) -> SolveResult {
    let mut solver = Solver::new(program, config);
    let mut answers = Vec::new();
    while let Some(answer) = solver.next_answer() {
        answers.push(answer);
    }
    SolveResult {
        answers,
        status: solver.status().expect("search has stopped"),
        stats: solver.stats(),
    }
}
