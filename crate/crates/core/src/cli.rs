//! Command-line front end.
//!
//! Exit codes: 0 success or true verdict, 1 negative verdict (formula false,
//! countermodel found, proof rejected, fuzz violations), 2 usage or parse
//! error, 3 game validation error, 4 internal limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::checker::{holds, holds_brute, truth_set, CheckError};
use crate::formula::{parse_formula, Formula};
use crate::game::{validate_game, GameDescription, GameError, GameParams, ValidatedGame};
use crate::harness::{fuzz_soundness_with, search_countermodel, Execution, FuzzParams, Mutation, SearchBudget};
use crate::proofs::{check_proof, LineError, Proof};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    Negative,
    Usage,
    Validation,
    Limit,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Negative => 1,
            ExitStatus::Usage => 2,
            ExitStatus::Validation => 3,
            ExitStatus::Limit => 4,
        }
    }

    fn verdict(ok: bool) -> Self {
        if ok {
            ExitStatus::Success
        } else {
            ExitStatus::Negative
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "clandestine", version, about = "Model and proof checker for the logic of clandestine operations")]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a game file.
    Validate { game: PathBuf },
    /// Evaluate a formula at one state.
    Check {
        game: PathBuf,
        #[arg(long)]
        state: String,
        /// Formula text, or `@path` to read it from a file.
        #[arg(long)]
        formula: String,
        /// Use the literal reference evaluator.
        #[arg(long)]
        brute: bool,
    },
    /// List the states where a formula holds.
    Truthset {
        game: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Check a proof file.
    Prove { proof: PathBuf },
    /// Randomized soundness test of the axioms and rules.
    Fuzz(FuzzArgs),
    /// Search random games for a state falsifying a formula.
    Countermodel {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = SearchBudget::default().n_games)]
        games: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        sizes: SizeArgs,
    },
}

#[derive(Args, Debug)]
struct SizeArgs {
    /// Maximum states per game.
    #[arg(long, default_value_t = GameParams::default().n_states)]
    states: usize,
    /// Maximum agents per game.
    #[arg(long, default_value_t = GameParams::default().n_agents)]
    agents: usize,
    /// Maximum operations per game.
    #[arg(long, default_value_t = GameParams::default().n_ops)]
    ops: usize,
}

impl SizeArgs {
    fn params(&self) -> GameParams {
        GameParams {
            n_states: self.states,
            n_agents: self.agents,
            n_ops: self.ops,
            ..GameParams::default()
        }
    }
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long, default_value_t = FuzzParams::default().n_trials)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = FuzzParams::default().formula_depth)]
    depth: usize,
    /// Instances of each axiom per game.
    #[arg(long, default_value_t = FuzzParams::default().instances_per_axiom)]
    instances: usize,
    #[command(flatten)]
    sizes: SizeArgs,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
    /// Inject a deliberate defect: existential-know, empty-subcoalition,
    /// skip-concealment, ignore-outcome-indist, empty-coalition-can.
    #[arg(long, value_parser = parse_mutation)]
    mutation: Option<Mutation>,
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    serde_json::from_value(json!(s)).map_err(|_| format!("unknown mutation `{s}`"))
}

struct Failure(ExitStatus, String);

type Outcome = Result<ExitStatus, Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure(ExitStatus::Usage, msg.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_game(path: &Path) -> Result<ValidatedGame, Failure> {
    let desc = GameDescription::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    validate_game(desc).map_err(|e| Failure(ExitStatus::Validation, format!("{}: {e}", path.display())))
}

fn load_formula(arg: &str) -> Result<Formula, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read(Path::new(path))?,
        None => arg.to_string(),
    };
    parse_formula(text.trim()).map_err(|e| usage(format!("formula: {e}")))
}

fn check_failure(e: CheckError) -> Failure {
    usage(e)
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) {
    // a closed pipe is not worth a panic
    let _ = writeln!(out, "{text}");
}

/// Parses `args` (program name first) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { ExitStatus::Usage } else { ExitStatus::Success };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return status;
        }
    };
    match dispatch(&cli, out) {
        Ok(status) => status,
        Err(Failure(status, msg)) => {
            if cli.json {
                emit(out, json!({ "error": msg, "exit_code": status.code() }));
            }
            emit(err, format!("error: {msg}"));
            status
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, T>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Validate { game } => {
            let g = load_game(game)?;
            let tuples = g.closed_mechanism().len();
            if json {
                emit(
                    out,
                    json!({
                        "valid": true,
                        "states": g.n_states(),
                        "agents": g.agents().len(),
                        "operations": g.n_ops(),
                        "closed_mechanism": tuples,
                    }),
                );
            } else {
                emit(
                    out,
                    format!(
                        "valid: {} states, {} agents, {} operations, {tuples} mechanism tuples after closure",
                        g.n_states(),
                        g.agents().len(),
                        g.n_ops()
                    ),
                );
            }
            Ok(ExitStatus::Success)
        }
        Command::Check {
            game,
            state,
            formula,
            brute,
        } => {
            let g = load_game(game)?;
            let f = load_formula(formula)?;
            let verdict = if *brute { holds_brute(&g, state, &f) } else { holds(&g, state, &f) }.map_err(check_failure)?;
            if json {
                emit(out, json!({ "state": state, "formula": f, "holds": verdict }));
            } else {
                emit(out, verdict);
            }
            Ok(ExitStatus::verdict(verdict))
        }
        Command::Truthset { game, formula } => {
            let g = load_game(game)?;
            let f = load_formula(formula)?;
            let states = truth_set(&g, &f).map_err(check_failure)?;
            if json {
                emit(out, json!({ "formula": f, "states": states }));
            } else {
                emit(out, format!("{{{}}}", states.join(", ")));
            }
            Ok(ExitStatus::Success)
        }
        Command::Prove { proof } => {
            let p = Proof::from_json(&read(proof)?).map_err(|e| usage(format!("{}: {e}", proof.display())))?;
            let conclusion = p.conclusion().map(|c| c.to_string());
            match check_proof(&p) {
                Ok(checked) => {
                    if json {
                        emit(
                            out,
                            json!({
                                "accepted": true,
                                "conclusion": conclusion,
                                "hypotheses": p.hypotheses,
                                "theorem": checked.is_theorem(),
                            }),
                        );
                    } else {
                        let hyps: Vec<String> = p.hypotheses.iter().map(|h| h.to_string()).collect();
                        let turnstile = if checked.is_theorem() { "|-".to_string() } else { format!("{} |-", hyps.join(", ")) };
                        emit(out, format!("accepted: {turnstile} {}", conclusion.unwrap_or_default()));
                    }
                    Ok(ExitStatus::Success)
                }
                Err(failure) => {
                    let status = match failure.error {
                        LineError::AtomLimit(_) => ExitStatus::Limit,
                        _ => ExitStatus::Negative,
                    };
                    if json {
                        emit(
                            out,
                            json!({
                                "accepted": false,
                                "line": failure.line,
                                "reason": failure.error.to_string(),
                            }),
                        );
                    } else {
                        emit(out, format!("rejected: {failure}"));
                    }
                    Ok(status)
                }
            }
        }
        Command::Fuzz(args) => {
            let params = FuzzParams {
                n_trials: args.trials,
                game_params: args.sizes.params(),
                formula_depth: args.depth,
                seed: args.seed,
                instances_per_axiom: args.instances,
                ..FuzzParams::default()
            };
            let execution = if args.sequential { Execution::Sequential } else { Execution::Parallel };
            let report = fuzz_soundness_with(&params, execution, args.mutation).map_err(usage)?;
            if json {
                emit(out, report.to_json());
            } else {
                let _ = write!(out, "{report}");
                emit(out, format!("{} axiom violations", report.total_violations()));
            }
            Ok(ExitStatus::verdict(report.total_violations() == 0))
        }
        Command::Countermodel {
            formula,
            games,
            seed,
            sizes,
        } => {
            let f = load_formula(formula)?;
            let budget = SearchBudget {
                n_games: *games,
                game_params: sizes.params(),
            };
            let found = search_countermodel(&f, &budget, *seed).map_err(|e| match e {
                GameError::TooManyAgents { .. } => Failure(ExitStatus::Limit, e.to_string()),
                e => usage(e),
            })?;
            match &found {
                Some(cm) if json => emit(
                    out,
                    json!({ "found": true, "state": cm.state, "game_seed": cm.game_seed, "game": cm.game }),
                ),
                Some(cm) => {
                    emit(out, format!("countermodel: fails at state {}", cm.state));
                    emit(out, cm.game.to_json());
                }
                None if json => emit(out, json!({ "found": false, "games": games })),
                None => emit(out, format!("no countermodel in {games} games")),
            }
            Ok(ExitStatus::verdict(found.is_none()))
        }
    }
}
