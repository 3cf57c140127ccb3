//! Randomized soundness testing.
//!
//! Every trial draws a game, instantiates each axiom schema with random
//! subformulas and checks the instances at every state. Rule trials confirm
//! that Modus Ponens and both Necessitation rules preserve validity inside the
//! drawn game. Trials derive their own seeds from the run seed, so a report is
//! the same whether trials run sequentially or in parallel.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checker::{find_counterexample_with, Fault};
use crate::formula::{AgentName, Coalition, Formula};
use crate::game::{
    default_agent_names, random_game_for, GameDescription, GameError, GameParams, ValidatedGame, MAX_AGENTS,
    VARIABLE_POOL,
};
use crate::proofs::{instantiate_axiom, AxiomName, Binding, Justification, Proof, ProofLine};

pub const MAX_FORMULA_DEPTH: usize = 6;
/// Violations kept verbatim in a report; the per-axiom counts are exact.
pub const MAX_RECORDED: usize = 100;

/// Fuzzing budget. Game sizes are maxima: each trial draws its own sizes up to them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzParams {
    pub n_trials: usize,
    pub game_params: GameParams,
    pub formula_depth: usize,
    pub variable_pool: Vec<String>,
    pub seed: u64,
    pub instances_per_axiom: usize,
    /// Rule-preservation trials per game.
    pub rule_trials: usize,
}

impl Default for FuzzParams {
    fn default() -> Self {
        FuzzParams {
            n_trials: 500,
            game_params: GameParams::default(),
            formula_depth: 3,
            variable_pool: VARIABLE_POOL.iter().map(|v| v.to_string()).collect(),
            seed: 0,
            instances_per_axiom: 20,
            rule_trials: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid fuzz parameters: {0}")]
pub struct ParamsError(pub String);

impl FuzzParams {
    pub fn check(&self) -> Result<(), ParamsError> {
        if self.n_trials == 0 || self.instances_per_axiom == 0 {
            return Err(ParamsError("trial and instance counts must be positive".into()));
        }
        if self.formula_depth == 0 || self.formula_depth > MAX_FORMULA_DEPTH {
            return Err(ParamsError(format!("formula depth must lie in 1..={MAX_FORMULA_DEPTH}")));
        }
        if self.variable_pool.is_empty() {
            return Err(ParamsError("variable pool is empty".into()));
        }
        if let Some(v) = self.variable_pool.iter().find(|v| !crate::formula::is_variable_name(v)) {
            return Err(ParamsError(format!("`{v}` cannot be a variable")));
        }
        self.game_params.check().map_err(|e| ParamsError(e.to_string()))
    }
}

/// Deliberate defects the harness must notice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    ExistentialKnow,
    EmptySubcoalition,
    SkipConcealment,
    IgnoreOutcomeIndist,
    EmptyCoalitionCan,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::ExistentialKnow,
        Mutation::EmptySubcoalition,
        Mutation::SkipConcealment,
        Mutation::IgnoreOutcomeIndist,
        Mutation::EmptyCoalitionCan,
    ];

    fn fault(self) -> Option<Fault> {
        match self {
            Mutation::ExistentialKnow => Some(Fault::ExistentialKnow),
            Mutation::EmptySubcoalition => Some(Fault::EmptySubcoalition),
            Mutation::IgnoreOutcomeIndist => Some(Fault::IgnoreOutcomeIndist),
            Mutation::EmptyCoalitionCan => Some(Fault::EmptyCoalitionCan),
            Mutation::SkipConcealment => None,
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.pad(s.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

fn mix(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_coalition<R: Rng>(rng: &mut R, agents: &[AgentName]) -> Coalition {
    agents.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

fn formula_with<R: Rng>(rng: &mut R, depth: usize, pool: &[String], agents: &[AgentName]) -> Formula {
    let var = |rng: &mut R| Formula::var(pool.choose(rng).expect("nonempty pool").clone());
    if depth == 0 {
        return var(rng);
    }
    match rng.gen_range(0..5) {
        0 => var(rng),
        1 => Formula::neg(formula_with(rng, depth - 1, pool, agents)),
        2 => Formula::imp(
            formula_with(rng, depth - 1, pool, agents),
            formula_with(rng, depth - 1, pool, agents),
        ),
        3 => Formula::know(random_coalition(rng, agents), formula_with(rng, depth - 1, pool, agents)),
        _ => Formula::can(random_coalition(rng, agents), formula_with(rng, depth - 1, pool, agents)),
    }
}

/// Random formula of depth at most `depth`; coalitions are subsets of `agents`.
pub fn random_formula(depth: usize, pool: &[String], agents: &[AgentName], seed: u64) -> Formula {
    formula_with(&mut ChaCha8Rng::seed_from_u64(seed), depth, pool, agents)
}

fn binding_with<R: Rng>(rng: &mut R, name: AxiomName, agents: &[AgentName], depth: usize, pool: &[String]) -> Binding {
    let (formulas, coalitions) = name.metavariables();
    let mut b = Binding::new();
    for f in formulas {
        b = b.formula(f, formula_with(rng, depth, pool, agents));
    }
    match name {
        AxiomName::Monotonicity => {
            let c = random_coalition(rng, agents);
            let sub = c.members().filter(|_| rng.gen_bool(0.5)).cloned().collect();
            b.coalition("C", c).coalition("C'", sub)
        }
        AxiomName::Cia => {
            let (mut c, mut i, mut a) = (Coalition::empty(), Coalition::empty(), Coalition::empty());
            for agent in agents {
                if rng.gen_bool(0.25) {
                    c.insert(agent.clone());
                } else {
                    if rng.gen_bool(0.5) {
                        i.insert(agent.clone());
                    }
                    if rng.gen_bool(0.5) {
                        a.insert(agent.clone());
                    }
                }
            }
            b.coalition("C", c).coalition("I", i).coalition("A", a)
        }
        _ => {
            for k in coalitions {
                b = b.coalition(k, random_coalition(rng, agents));
            }
            b
        }
    }
}

/// Binding for schema `name` that satisfies its side conditions.
pub fn random_binding(name: AxiomName, agents: &[AgentName], depth: usize, pool: &[String], seed: u64) -> Binding {
    binding_with(&mut ChaCha8Rng::seed_from_u64(seed), name, agents, depth, pool)
}

/// Random instance of schema `name`.
pub fn instantiate_random_axiom(
    name: AxiomName,
    agents: &[AgentName],
    depth: usize,
    pool: &[String],
    seed: u64,
) -> Formula {
    let b = random_binding(name, agents, depth, pool, seed);
    instantiate_axiom(name, &b).expect("generated bindings satisfy side conditions")
}

/// An axiom instance that fails somewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: AxiomName,
    pub binding: Binding,
    pub formula: Formula,
    pub trial: usize,
    /// `random_game` inputs that rebuild the game.
    pub game_params: GameParams,
    pub game_seed: u64,
    pub state: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Mp,
    NecK,
    NecH,
}

/// Validity was not preserved inside one game. Diagnostic only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleAnomaly {
    pub rule: Rule,
    pub premise: Formula,
    pub conclusion: Formula,
    pub trial: usize,
    pub game_params: GameParams,
    pub game_seed: u64,
    pub state: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCount {
    /// Trials whose premises were valid in the game.
    pub checked: usize,
    pub anomalies: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub params: FuzzParams,
    pub mutation: Option<Mutation>,
    pub instances: BTreeMap<AxiomName, usize>,
    pub violation_counts: BTreeMap<AxiomName, usize>,
    /// The first [`MAX_RECORDED`] violations in trial order.
    pub violations: Vec<Violation>,
    pub rule_checks: BTreeMap<Rule, RuleCount>,
    pub rule_anomalies: Vec<RuleAnomaly>,
    pub elapsed_ms: u64,
}

impl FuzzReport {
    pub fn total_violations(&self) -> usize {
        self.violation_counts.values().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} trials, seed {}", self.params.n_trials, self.params.seed)?;
        if let Some(m) = self.mutation {
            write!(f, ", mutation {m}")?;
        }
        writeln!(f, " ({} ms)", self.elapsed_ms)?;
        for (axiom, n) in &self.instances {
            writeln!(f, "  {axiom:<24} {n:>6} instances {:>6} violations", self.violation_counts[axiom])?;
        }
        for (rule, c) in &self.rule_checks {
            let name = serde_json::to_value(rule).unwrap();
            writeln!(
                f,
                "  rule {:<19} {:>6} checked    {:>6} anomalies",
                name.as_str().unwrap(),
                c.checked,
                c.anomalies
            )?;
        }
        for v in self.violations.iter().take(5) {
            writeln!(
                f,
                "  violation: {} [{}] fails at {} (trial {}, game seed {})",
                v.axiom, v.formula, v.state, v.trial, v.game_seed
            )?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct TrialOutcome {
    instances: BTreeMap<AxiomName, usize>,
    violations: Vec<Violation>,
    rule_checks: BTreeMap<Rule, RuleCount>,
    rule_anomalies: Vec<RuleAnomaly>,
}

fn trial_sizes<R: Rng>(rng: &mut R, max: &GameParams) -> GameParams {
    GameParams {
        n_states: rng.gen_range(1..=max.n_states),
        n_agents: rng.gen_range(1..=max.n_agents),
        n_ops: rng.gen_range(1..=max.n_ops),
        ..*max
    }
}

fn run_trial(params: &FuzzParams, mutation: Option<Mutation>, trial: usize) -> TrialOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(mix(params.seed, trial as u64));
    let game_params = trial_sizes(&mut rng, &params.game_params);
    let game_seed = rng.gen();
    let agents = default_agent_names(game_params.n_agents);
    let concealed = mutation != Some(Mutation::SkipConcealment);
    let game = random_game_for(&game_params, game_seed, &agents, &params.variable_pool, concealed)
        .expect("generated games validate");
    let fault = mutation.and_then(Mutation::fault);
    let counterexample = |f: &Formula| find_counterexample_with(&game, f, fault).expect("agents drawn from the game");

    let mut out = TrialOutcome::default();
    let mut valid = Vec::new();
    for axiom in AxiomName::ALL {
        for _ in 0..params.instances_per_axiom {
            let binding = binding_with(&mut rng, axiom, &agents, params.formula_depth, &params.variable_pool);
            let formula = instantiate_axiom(axiom, &binding).expect("side conditions hold");
            *out.instances.entry(axiom).or_default() += 1;
            match counterexample(&formula) {
                None => valid.push(formula),
                Some(state) => out.violations.push(Violation {
                    axiom,
                    binding,
                    formula,
                    trial,
                    game_params,
                    game_seed,
                    state,
                }),
            }
        }
    }

    for rule in [Rule::Mp, Rule::NecK, Rule::NecH] {
        out.rule_checks.insert(rule, RuleCount::default());
    }
    let record = |out: &mut TrialOutcome, rule, premise: &Formula, conclusion: Formula| {
        let count = out.rule_checks.get_mut(&rule).unwrap();
        count.checked += 1;
        if let Some(state) = counterexample(&conclusion) {
            count.anomalies += 1;
            out.rule_anomalies.push(RuleAnomaly {
                rule,
                premise: premise.clone(),
                conclusion,
                trial,
                game_params,
                game_seed,
                state,
            });
        }
    };
    for _ in 0..params.rule_trials {
        // premises: a valid axiom instance, or a random formula that happens to be valid here
        let premise = if !valid.is_empty() && rng.gen_bool(0.5) {
            valid.choose(&mut rng).unwrap().clone()
        } else {
            let f = formula_with(&mut rng, params.formula_depth, &params.variable_pool, &agents);
            if counterexample(&f).is_some() {
                continue;
            }
            f
        };
        let c = random_coalition(&mut rng, &agents);
        record(&mut out, Rule::NecK, &premise, Formula::know(c.clone(), premise.clone()));
        if !c.is_empty() {
            record(&mut out, Rule::NecH, &premise, Formula::can(c, premise.clone()));
        }
        let psi = formula_with(&mut rng, params.formula_depth, &params.variable_pool, &agents);
        let major = Formula::imp(premise.clone(), psi.clone());
        if counterexample(&major).is_none() {
            record(&mut out, Rule::Mp, &major, psi);
        }
    }
    out
}

/// [`fuzz_soundness_with`] using the default execution and a correct checker.
pub fn fuzz_soundness(params: &FuzzParams) -> Result<FuzzReport, ParamsError> {
    fuzz_soundness_with(params, Execution::default(), None)
}

/// Runs the trials; the report does not depend on `execution`.
pub fn fuzz_soundness_with(
    params: &FuzzParams,
    execution: Execution,
    mutation: Option<Mutation>,
) -> Result<FuzzReport, ParamsError> {
    params.check()?;
    let start = Instant::now();
    let outcomes: Vec<TrialOutcome> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..params.n_trials)
                .into_par_iter()
                .map(|t| run_trial(params, mutation, t))
                .collect()
        }
        _ => (0..params.n_trials).map(|t| run_trial(params, mutation, t)).collect(),
    };

    let mut report = FuzzReport {
        params: params.clone(),
        mutation,
        instances: AxiomName::ALL.iter().map(|a| (*a, 0)).collect(),
        violation_counts: AxiomName::ALL.iter().map(|a| (*a, 0)).collect(),
        violations: Vec::new(),
        rule_checks: BTreeMap::new(),
        rule_anomalies: Vec::new(),
        elapsed_ms: 0,
    };
    for o in outcomes {
        for (axiom, n) in o.instances {
            *report.instances.get_mut(&axiom).unwrap() += n;
        }
        for v in o.violations {
            *report.violation_counts.get_mut(&v.axiom).unwrap() += 1;
            if report.violations.len() < MAX_RECORDED {
                report.violations.push(v);
            }
        }
        for (rule, c) in o.rule_checks {
            let total = report.rule_checks.entry(rule).or_default();
            total.checked += c.checked;
            total.anomalies += c.anomalies;
        }
        let room = MAX_RECORDED.saturating_sub(report.rule_anomalies.len());
        report.rule_anomalies.extend(o.rule_anomalies.into_iter().take(room));
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    if mutation.is_none() && report.total_violations() > 0 {
        log::warn!("{} axiom violations", report.total_violations());
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub n_games: usize,
    /// Maxima; the agent count is raised to cover the formula's agents.
    pub game_params: GameParams,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            n_games: 500,
            game_params: GameParams::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Countermodel {
    pub game: GameDescription,
    pub state: String,
    pub game_seed: u64,
    /// Index of the falsifying sample.
    pub sample: usize,
}

/// Samples games until one falsifies `f`.
pub fn search_countermodel(f: &Formula, budget: &SearchBudget, seed: u64) -> Result<Option<Countermodel>, GameError> {
    let mut agents: Vec<AgentName> = f.agents().into_iter().collect();
    for a in default_agent_names(budget.game_params.n_agents.min(26)) {
        if agents.len() >= budget.game_params.n_agents {
            break;
        }
        if !agents.contains(&a) {
            agents.push(a);
        }
    }
    if agents.len() > MAX_AGENTS {
        return Err(GameError::TooManyAgents { count: agents.len() });
    }
    let mut variables: Vec<String> = VARIABLE_POOL.iter().map(|v| v.to_string()).collect();
    for v in f.variables() {
        if !variables.contains(&v) {
            variables.push(v);
        }
    }
    let params = GameParams {
        n_agents: agents.len(),
        ..budget.game_params
    };
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sample in 0..budget.n_games {
        let sized = GameParams {
            n_states: rng.gen_range(1..=params.n_states),
            n_ops: rng.gen_range(1..=params.n_ops),
            ..params
        };
        let game_seed = rng.gen();
        let game: ValidatedGame = random_game_for(&sized, game_seed, &agents, &variables, true)?;
        let found = find_counterexample_with(&game, f, None).expect("formula agents are in the game");
        if let Some(state) = found {
            return Ok(Some(Countermodel {
                game: game.description().clone(),
                state,
                game_seed,
                sample,
            }));
        }
    }
    Ok(None)
}

/// A checking proof from up to `max_hypotheses` random hypotheses, mixing
/// hypothesis-dependent Modus Ponens steps with pure theorem lines (including
/// Necessitation). Input generator for the proof transformers.
pub fn random_hypothetical_proof(
    depth: usize,
    max_hypotheses: usize,
    pool: &[String],
    agents: &[AgentName],
    seed: u64,
) -> Proof {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_hyps = rng.gen_range(0..=max_hypotheses);
    let hypotheses: Vec<Formula> = (0..n_hyps).map(|_| formula_with(&mut rng, depth, pool, agents)).collect();
    let mut lines: Vec<ProofLine> = Vec::new();
    let mut pure: Vec<bool> = Vec::new();
    let n_steps = rng.gen_range(1..=8);
    for _ in 0..n_steps {
        let choice = if lines.is_empty() { rng.gen_range(0..3) } else { rng.gen_range(0..6) };
        let (formula, justification, is_pure) = match choice {
            0 if n_hyps > 0 => {
                let k = rng.gen_range(0..n_hyps);
                (hypotheses[k].clone(), Justification::Hyp(k + 1), false)
            }
            0 | 1 => {
                let a = formula_with(&mut rng, depth, pool, agents);
                let b = formula_with(&mut rng, depth, pool, agents);
                (Formula::imp(a.clone(), Formula::imp(b, a)), Justification::Taut, true)
            }
            2 => {
                let name = *AxiomName::ALL.choose(&mut rng).unwrap();
                let binding = binding_with(&mut rng, name, agents, depth.min(2), pool);
                let f = instantiate_axiom(name, &binding).unwrap();
                (f, Justification::Axiom { name, binding }, true)
            }
            3 | 4 => {
                // weaken an earlier line A to B -> A via the tautology A -> (B -> A)
                let i = rng.gen_range(0..lines.len());
                let a = lines[i].formula.clone();
                let b = formula_with(&mut rng, depth.min(1), pool, agents);
                let weakening = Formula::imp(a.clone(), Formula::imp(b.clone(), a.clone()));
                lines.push(ProofLine::new(weakening, Justification::Taut));
                pure.push(true);
                let j = lines.len();
                (Formula::imp(b, a), Justification::Mp(i + 1, j), pure[i])
            }
            _ => {
                let candidates: Vec<usize> = (0..lines.len()).filter(|&i| pure[i]).collect();
                match candidates.choose(&mut rng) {
                    Some(&i) => {
                        let c = random_coalition(&mut rng, agents);
                        let body = lines[i].formula.clone();
                        if !c.is_empty() && rng.gen_bool(0.5) {
                            (Formula::can(c.clone(), body), Justification::NecH(i + 1, c), true)
                        } else {
                            (Formula::know(c.clone(), body), Justification::NecK(i + 1, c), true)
                        }
                    }
                    None => (Formula::imp(Formula::top(), Formula::top()), Justification::Taut, true),
                }
            }
        };
        lines.push(ProofLine::new(formula, justification));
        pure.push(is_pure);
    }
    // end on a hypothesis-dependent Modus Ponens when possible
    if let Some(i) = (0..lines.len()).rev().find(|&i| !pure[i]) {
        let a = lines[i].formula.clone();
        let b = formula_with(&mut rng, 0, pool, agents);
        lines.push(ProofLine::new(
            Formula::imp(a.clone(), Formula::imp(b.clone(), a.clone())),
            Justification::Taut,
        ));
        let j = lines.len();
        lines.push(ProofLine::new(Formula::imp(b, a), Justification::Mp(i + 1, j)));
    }
    Proof { hypotheses, lines }
}
