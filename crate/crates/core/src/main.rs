use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, ValueEnum};

use lazy_asp::ground::{GroundingMode, Strictness};
use lazy_asp::heuristics::HeuristicKind;
use lazy_asp::search::PhasePolicy;
use lazy_asp::{parse_program, AnswerLimit, Program, SolveStatus, Solver, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Phase {
    True,
    False,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HeuristicArg {
    Vsids,
    Naive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrictnessArg {
    Strict,
    Permissive,
}

impl From<StrictnessArg> for Strictness {
    fn from(s: StrictnessArg) -> Self {
        match s {
            StrictnessArg::Strict => Strictness::Strict,
            StrictnessArg::Permissive => Strictness::Permissive,
        }
    }
}

/// Compute answer sets of normal logic programs by lazy grounding.
#[derive(Debug, Parser)]
#[command(name = "lazy-asp", version)]
struct Args {
    /// Program files; their rules are combined.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Number of answer sets to compute, or `all`.
    #[arg(long, default_value = "10")]
    n_answers: AnswerLimit,
    /// Initial phase of atoms never assigned before.
    #[arg(long, value_enum, default_value = "true")]
    phase_init: Phase,
    #[arg(long, value_enum, default_value = "on")]
    restarts: Switch,
    /// Same as `--restarts off`.
    #[arg(long, conflicts_with = "restarts")]
    no_restarts: bool,
    /// Periodic removal of inactive learned nogoods.
    #[arg(long, value_enum, default_value = "on")]
    deletion: Switch,
    #[arg(long, value_enum, default_value = "vsids")]
    heuristic: HeuristicArg,
    /// Conflicts per unit of the Luby sequence gating restarts.
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    luby_unit: u64,
    /// Seed for random initial phases.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print search statistics to standard error.
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value = "permissive")]
    grounding_constraints: StrictnessArg,
    #[arg(long, value_enum, default_value = "strict")]
    grounding_rules: StrictnessArg,
    /// Give up after this many seconds (exit code 3).
    #[arg(long)]
    time_limit: Option<f64>,
}

impl Args {
    fn config(&self) -> SolverConfig {
        let mut config = SolverConfig {
            n_answers: self.n_answers,
            phase_policy: match self.phase_init {
                Phase::True => PhasePolicy::AllTrue,
                Phase::False => PhasePolicy::AllFalse,
                Phase::Random => PhasePolicy::Random(self.seed),
            },
            restarts: self.restarts == Switch::On && !self.no_restarts,
            deletion: self.deletion == Switch::On,
            heuristic: match self.heuristic {
                HeuristicArg::Vsids => HeuristicKind::Vsids,
                HeuristicArg::Naive => HeuristicKind::Naive,
            },
            grounding: GroundingMode {
                rules: self.grounding_rules.into(),
                constraints: self.grounding_constraints.into(),
            },
            time_limit: self.time_limit.map(Duration::from_secs_f64),
            ..SolverConfig::default()
        };
        config.restart_params.luby_unit = self.luby_unit;
        config
    }
}

fn load(files: &[PathBuf]) -> Result<Program, String> {
    let mut rules = Vec::new();
    for path in files {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let program = parse_program(&text).map_err(|e| format!("{}:{e}", path.display()))?;
        rules.extend(program.rules);
    }
    Ok(Program::new(rules))
}

fn run(args: &Args) -> u8 {
    let program = match load(&args.files) {
        Ok(program) => program,
        Err(message) => {
            eprintln!("error: {message}");
            return 1;
        }
    };
    let mut solver = Solver::new(&program, args.config());
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut count = 0;
    while let Some(answer) = solver.next_answer() {
        count += 1;
        let _ = writeln!(out, "Answer set {count}: {answer}");
    }
    let status = solver.status().expect("search has stopped");
    if status == SolveStatus::Unsat {
        let _ = writeln!(out, "UNSATISFIABLE");
    }
    let _ = out.flush();
    if args.stats {
        eprintln!("status={status}");
        eprintln!("{}", solver.stats());
    }
    match status {
        SolveStatus::TimedOut => {
            eprintln!("time limit reached after {count} answer set(s)");
            3
        }
        _ => 0,
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match std::panic::catch_unwind(|| run(&args)) {
        Ok(code) => ExitCode::from(code),
        Err(_) => ExitCode::from(2),
    }
}
