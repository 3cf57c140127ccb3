//! Clandestine games: states, per-agent indistinguishability partitions,
//! operations, a mechanism of `(from, coalition, op, to)` transitions and a
//! valuation.
//!
//! A [`GameDescription`] is the file-level form. [`validate_game`] checks it,
//! closes the mechanism under implicit self-loops and enforces concealment
//! (`from ~ to` for every agent outside the acting coalition) and
//! nontermination (every `(state, coalition, op)` key has an outcome).

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{is_variable_name, AgentName, Coalition};

/// Agents are indexed into bitmasks; this bounds the agent universe.
pub const MAX_AGENTS: usize = 16;
const WARN_AGENTS: usize = 10;

/// Bitmask over the agent indices of one game.
pub type Mask = u32;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismTuple {
    pub from: String,
    pub coalition: Coalition,
    pub op: String,
    pub to: String,
}

impl MechanismTuple {
    pub fn new(from: &str, coalition: Coalition, op: &str, to: &str) -> Self {
        MechanismTuple {
            from: from.into(),
            coalition,
            op: op.into(),
            to: to.into(),
        }
    }
}

impl std::fmt::Display for MechanismTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.from, self.coalition, self.op, self.to)
    }
}

/// The JSON game file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDescription {
    pub agents: Vec<String>,
    pub states: Vec<String>,
    pub indist: BTreeMap<String, Vec<Vec<String>>>,
    pub operations: Vec<String>,
    pub mechanism: Vec<MechanismTuple>,
    pub implicit_self_loops: bool,
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl GameDescription {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("game description serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("malformed game: {0}")]
    Structure(String),
    #[error("{count} agents exceed the limit of {MAX_AGENTS}")]
    TooManyAgents { count: usize },
    #[error("partition of agent `{agent}`: {detail}")]
    Partition { agent: String, detail: String },
    #[error("undeclared {kind} `{name}` in {context}")]
    Reference {
        kind: &'static str,
        name: String,
        context: String,
    },
    #[error("concealment violated by {tuple}: agent `{agent}` outside the coalition distinguishes `{}` from `{}`", tuple.from, tuple.to)]
    Concealment { tuple: MechanismTuple, agent: AgentName },
    #[error("nontermination violated: no outcome for state `{state}`, coalition {coalition}, operation `{op}`")]
    Nontermination {
        state: String,
        coalition: Coalition,
        op: String,
    },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

fn reference(kind: &'static str, name: &str, context: impl Into<String>) -> GameError {
    GameError::Reference {
        kind,
        name: name.to_string(),
        context: context.into(),
    }
}

/// Knobs for [`validate_game_with`]. The default enforces every condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationOptions {
    pub check_concealment: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            check_concealment: true,
        }
    }
}

/// A game that passed validation, with the closed mechanism stored densely by
/// `(state, coalition mask, op)` key.
#[derive(Debug, Clone)]
pub struct ValidatedGame {
    desc: GameDescription,
    agents: Vec<AgentName>,
    agent_index: HashMap<AgentName, usize>,
    state_index: HashMap<String, usize>,
    op_index: HashMap<String, usize>,
    /// `blocks[agent][state]` is the index of the agent's block containing the state.
    blocks: Vec<Vec<u32>>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    valuation: HashMap<String, Vec<bool>>,
    masks_in_order: Vec<Mask>,
}

/// Indexed view of a structurally checked description.
struct Indexed {
    agents: Vec<AgentName>,
    agent_index: HashMap<AgentName, usize>,
    state_index: HashMap<String, usize>,
    op_index: HashMap<String, usize>,
    blocks: Vec<Vec<u32>>,
    /// Explicit tuples as `(from, mask, op, to)`, deduplicated, in input order.
    explicit: Vec<(u32, Mask, u32, u32)>,
    valuation: HashMap<String, Vec<bool>>,
}

fn check_unique<'a>(kind: &str, names: impl Iterator<Item = &'a String>) -> Result<(), GameError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(GameError::Structure(format!("duplicate {kind} `{n}`")));
        }
    }
    Ok(())
}

fn index_description(desc: &GameDescription) -> Result<Indexed, GameError> {
    check_unique("agent", desc.agents.iter())?;
    check_unique("state", desc.states.iter())?;
    check_unique("operation", desc.operations.iter())?;
    if desc.states.is_empty() {
        return Err(GameError::Structure("the state set is empty".into()));
    }
    if desc.operations.is_empty() {
        return Err(GameError::Structure("the operation set is empty".into()));
    }
    if desc.agents.len() > MAX_AGENTS {
        return Err(GameError::TooManyAgents {
            count: desc.agents.len(),
        });
    }
    if desc.agents.len() > WARN_AGENTS {
        log::warn!(
            "{} agents: validation enumerates {} coalitions per state and operation",
            desc.agents.len(),
            1u64 << desc.agents.len()
        );
    }
    let agents = desc
        .agents
        .iter()
        .map(|a| AgentName::new(a.clone()).map_err(|e| GameError::Structure(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let agent_index: HashMap<_, _> = agents.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let state_index: HashMap<_, _> = desc.states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let op_index: HashMap<_, _> = desc.operations.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();

    for agent in desc.indist.keys() {
        if !desc.agents.contains(agent) {
            return Err(reference("agent", agent, "indist"));
        }
    }
    let n = desc.states.len();
    let mut blocks = Vec::with_capacity(agents.len());
    for agent in &desc.agents {
        let partition = desc.indist.get(agent).ok_or_else(|| GameError::Partition {
            agent: agent.clone(),
            detail: "no partition given".into(),
        })?;
        let mut block_of = vec![u32::MAX; n];
        for (b, block) in partition.iter().enumerate() {
            if block.is_empty() {
                return Err(GameError::Partition {
                    agent: agent.clone(),
                    detail: format!("block {} is empty", b + 1),
                });
            }
            for s in block {
                let &i = state_index
                    .get(s)
                    .ok_or_else(|| reference("state", s, format!("partition of `{agent}`")))?;
                if block_of[i] != u32::MAX {
                    return Err(GameError::Partition {
                        agent: agent.clone(),
                        detail: format!("state `{s}` appears in more than one block"),
                    });
                }
                block_of[i] = b as u32;
            }
        }
        if let Some(missing) = block_of.iter().position(|&b| b == u32::MAX) {
            return Err(GameError::Partition {
                agent: agent.clone(),
                detail: format!("state `{}` is not covered", desc.states[missing]),
            });
        }
        blocks.push(block_of);
    }

    let mut explicit = Vec::with_capacity(desc.mechanism.len());
    let mut seen = HashSet::new();
    for t in &desc.mechanism {
        let ctx = || format!("mechanism tuple {t}");
        let &from = state_index.get(&t.from).ok_or_else(|| reference("state", &t.from, ctx()))?;
        let &to = state_index.get(&t.to).ok_or_else(|| reference("state", &t.to, ctx()))?;
        let &op = op_index.get(&t.op).ok_or_else(|| reference("operation", &t.op, ctx()))?;
        let mut mask = 0;
        for a in t.coalition.members() {
            let &i = agent_index.get(a).ok_or_else(|| reference("agent", a.as_str(), ctx()))?;
            mask |= 1 << i;
        }
        let key = (from as u32, mask, op as u32, to as u32);
        if seen.insert(key) {
            explicit.push(key);
        }
    }

    let mut valuation = HashMap::new();
    for (var, states) in &desc.valuation {
        if !is_variable_name(var) {
            return Err(GameError::Structure(format!("invalid variable name `{var}` in valuation")));
        }
        let mut truth = vec![false; n];
        for s in states {
            let &i = state_index
                .get(s)
                .ok_or_else(|| reference("state", s, format!("valuation of `{var}`")))?;
            truth[i] = true;
        }
        valuation.insert(var.clone(), truth);
    }

    Ok(Indexed {
        agents,
        agent_index,
        state_index,
        op_index,
        blocks,
        explicit,
        valuation,
    })
}

/// Coalition masks ordered by size, then lexicographically by sorted member names.
fn masks_by_size_then_name(agents: &[AgentName]) -> Vec<Mask> {
    let mut masks: Vec<(usize, Vec<&str>, Mask)> = (0..(1u32 << agents.len()))
        .map(|m| {
            let mut names: Vec<&str> = (0..agents.len())
                .filter(|i| m & (1 << i) != 0)
                .map(|i| agents[i].as_str())
                .collect();
            names.sort_unstable();
            (names.len(), names, m)
        })
        .collect();
    masks.sort();
    masks.into_iter().map(|(_, _, m)| m).collect()
}

/// Successor lists per `(state, mask, op)` key after closure.
fn closed_successors(ix: &Indexed, n_states: usize, n_ops: usize, implicit_self_loops: bool) -> Vec<Vec<u32>> {
    let n_masks = 1usize << ix.agents.len();
    let mut succ = vec![Vec::new(); n_states * n_masks * n_ops];
    for &(from, mask, op, to) in &ix.explicit {
        succ[(from as usize * n_masks + mask as usize) * n_ops + op as usize].push(to);
    }
    if implicit_self_loops {
        for (key, list) in succ.iter_mut().enumerate() {
            if list.is_empty() {
                list.push((key / (n_masks * n_ops)) as u32);
            }
        }
    }
    succ
}

fn mask_to_coalition(agents: &[AgentName], mask: Mask) -> Coalition {
    (0..agents.len())
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| agents[i].clone())
        .collect()
}

/// Explicit tuples plus a self-loop `(w, C, op, w)` for every key with no
/// explicit tuple when `implicit_self_loops` is set.
pub fn close_mechanism(desc: &GameDescription) -> Result<Vec<MechanismTuple>, GameError> {
    let ix = index_description(desc)?;
    let mut out: Vec<MechanismTuple> = ix
        .explicit
        .iter()
        .map(|&(f, m, o, t)| MechanismTuple {
            from: desc.states[f as usize].clone(),
            coalition: mask_to_coalition(&ix.agents, m),
            op: desc.operations[o as usize].clone(),
            to: desc.states[t as usize].clone(),
        })
        .collect();
    if desc.implicit_self_loops {
        let mut covered = HashSet::new();
        for &(f, m, o, _) in &ix.explicit {
            covered.insert((f, m, o));
        }
        let masks = masks_by_size_then_name(&ix.agents);
        for (w, state) in desc.states.iter().enumerate() {
            for &m in &masks {
                for (o, op) in desc.operations.iter().enumerate() {
                    if !covered.contains(&(w as u32, m, o as u32)) {
                        out.push(MechanismTuple {
                            from: state.clone(),
                            coalition: mask_to_coalition(&ix.agents, m),
                            op: op.clone(),
                            to: state.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn validate_game(desc: GameDescription) -> Result<ValidatedGame, GameError> {
    validate_game_with(desc, ValidationOptions::default())
}

pub fn validate_game_with(desc: GameDescription, opts: ValidationOptions) -> Result<ValidatedGame, GameError> {
    let ix = index_description(&desc)?;
    let n_states = desc.states.len();
    let n_ops = desc.operations.len();
    let n_agents = ix.agents.len();
    let full: Mask = if n_agents == 32 { u32::MAX } else { (1 << n_agents) - 1 };

    if opts.check_concealment {
        for &(from, mask, op, to) in &ix.explicit {
            let outside = full & !mask;
            if let Some(a) = (0..n_agents)
                .find(|&a| outside & (1 << a) != 0 && ix.blocks[a][from as usize] != ix.blocks[a][to as usize])
            {
                return Err(GameError::Concealment {
                    tuple: MechanismTuple {
                        from: desc.states[from as usize].clone(),
                        coalition: mask_to_coalition(&ix.agents, mask),
                        op: desc.operations[op as usize].clone(),
                        to: desc.states[to as usize].clone(),
                    },
                    agent: ix.agents[a].clone(),
                });
            }
        }
    }

    let succ = closed_successors(&ix, n_states, n_ops, desc.implicit_self_loops);
    let masks_in_order = masks_by_size_then_name(&ix.agents);
    let n_masks = 1usize << n_agents;
    for w in 0..n_states {
        for &m in &masks_in_order {
            for o in 0..n_ops {
                if succ[(w * n_masks + m as usize) * n_ops + o].is_empty() {
                    return Err(GameError::Nontermination {
                        state: desc.states[w].clone(),
                        coalition: mask_to_coalition(&ix.agents, m),
                        op: desc.operations[o].clone(),
                    });
                }
            }
        }
    }

    let mut offsets = Vec::with_capacity(succ.len() + 1);
    let mut targets = Vec::new();
    offsets.push(0);
    for mut list in succ {
        list.sort_unstable();
        list.dedup();
        targets.extend(list);
        offsets.push(targets.len() as u32);
    }

    Ok(ValidatedGame {
        desc,
        agents: ix.agents,
        agent_index: ix.agent_index,
        state_index: ix.state_index,
        op_index: ix.op_index,
        blocks: ix.blocks,
        offsets,
        targets,
        valuation: ix.valuation,
        masks_in_order,
    })
}

impl ValidatedGame {
    pub fn description(&self) -> &GameDescription {
        &self.desc
    }

    pub fn agents(&self) -> &[AgentName] {
        &self.agents
    }

    pub fn states(&self) -> &[String] {
        &self.desc.states
    }

    pub fn operations(&self) -> &[String] {
        &self.desc.operations
    }

    pub fn n_states(&self) -> usize {
        self.desc.states.len()
    }

    pub fn n_ops(&self) -> usize {
        self.desc.operations.len()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.state_index.get(name).copied()
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.op_index.get(name).copied()
    }

    pub fn agent_index(&self, agent: &AgentName) -> Option<usize> {
        self.agent_index.get(agent).copied()
    }

    /// Mask of the coalition, or the first member that is not an agent of this game.
    pub fn mask_of(&self, coalition: &Coalition) -> Result<Mask, AgentName> {
        let mut mask = 0;
        for a in coalition.members() {
            mask |= 1 << self.agent_index(a).ok_or_else(|| a.clone())?;
        }
        Ok(mask)
    }

    pub fn coalition_of(&self, mask: Mask) -> Coalition {
        mask_to_coalition(&self.agents, mask)
    }

    pub fn full_mask(&self) -> Mask {
        ((1u64 << self.agents.len()) - 1) as Mask
    }

    /// Every coalition mask, by size then name.
    pub fn masks(&self) -> &[Mask] {
        &self.masks_in_order
    }

    /// Block index of `state` in the partition of agent `agent`.
    pub fn agent_block(&self, agent: usize, state: usize) -> u32 {
        self.blocks[agent][state]
    }

    /// `s ~_a t` for every agent `a` in `mask`.
    pub fn indistinguishable(&self, mask: Mask, s: usize, t: usize) -> bool {
        (0..self.agents.len()).all(|a| mask & (1 << a) == 0 || self.blocks[a][s] == self.blocks[a][t])
    }

    /// Block index per state of the intersection of the member partitions.
    /// Blocks are numbered in order of their first state.
    pub fn block_ids(&self, mask: Mask) -> Vec<usize> {
        let members: Vec<usize> = (0..self.agents.len()).filter(|a| mask & (1 << a) != 0).collect();
        let mut ids: HashMap<Vec<u32>, usize> = HashMap::new();
        (0..self.n_states())
            .map(|s| {
                let sig: Vec<u32> = members.iter().map(|&a| self.blocks[a][s]).collect();
                let next = ids.len();
                *ids.entry(sig).or_insert(next)
            })
            .collect()
    }

    /// Partition of the states induced by `~_C`, blocks and members in declared order.
    pub fn coalition_indist(&self, coalition: &Coalition) -> Result<Vec<Vec<String>>, GameError> {
        let mask = self
            .mask_of(coalition)
            .map_err(|a| reference("agent", a.as_str(), "coalition"))?;
        let ids = self.block_ids(mask);
        let n_blocks = ids.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); n_blocks];
        for (s, &b) in ids.iter().enumerate() {
            out[b].push(self.desc.states[s].clone());
        }
        Ok(out)
    }

    /// Outcome states of the closed mechanism for a key, sorted.
    pub fn successors(&self, state: usize, mask: Mask, op: usize) -> &[u32] {
        let key = (state * (1usize << self.agents.len()) + mask as usize) * self.n_ops() + op;
        &self.targets[self.offsets[key] as usize..self.offsets[key + 1] as usize]
    }

    /// Membership test in the closed mechanism.
    pub fn has_transition(&self, from: usize, mask: Mask, op: usize, to: usize) -> bool {
        self.successors(from, mask, op).contains(&(to as u32))
    }

    /// The whole closed mechanism, keys in state, coalition, operation order.
    pub fn closed_mechanism(&self) -> Vec<MechanismTuple> {
        let mut out = Vec::new();
        for w in 0..self.n_states() {
            for &m in &self.masks_in_order {
                for o in 0..self.n_ops() {
                    for &u in self.successors(w, m, o) {
                        out.push(MechanismTuple {
                            from: self.desc.states[w].clone(),
                            coalition: self.coalition_of(m),
                            op: self.desc.operations[o].clone(),
                            to: self.desc.states[u as usize].clone(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Truth values of a variable per state; `None` for variables absent from the valuation.
    pub fn valuation_of(&self, var: &str) -> Option<&[bool]> {
        self.valuation.get(var).map(Vec::as_slice)
    }
}

/// Parameters of [`random_game`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub n_states: usize,
    pub n_agents: usize,
    pub n_ops: usize,
    /// Probability that a state joins an earlier block instead of opening its own.
    pub partition_coarseness: f64,
    /// Probability of each candidate concealed transition.
    pub extra_edge_prob: f64,
}

impl Default for GameParams {
    fn default() -> Self {
        GameParams {
            n_states: 6,
            n_agents: 3,
            n_ops: 2,
            partition_coarseness: 0.5,
            extra_edge_prob: 0.15,
        }
    }
}

impl GameParams {
    pub fn check(&self) -> Result<(), GameError> {
        let bad = |m: &str| Err(GameError::InvalidParams(m.into()));
        if self.n_states == 0 || self.n_agents == 0 || self.n_ops == 0 {
            return bad("n_states, n_agents and n_ops must be at least 1");
        }
        if self.n_agents > MAX_AGENTS {
            return bad("too many agents");
        }
        if !(0.0..=1.0).contains(&self.partition_coarseness) || !(0.0..=1.0).contains(&self.extra_edge_prob) {
            return bad("probabilities must lie in [0, 1]");
        }
        Ok(())
    }
}

/// Variables given a random valuation by [`random_game`].
pub const VARIABLE_POOL: [&str; 4] = ["p", "q", "r", "s"];

/// Agent names used by generated games, in order.
pub fn default_agent_names(n: usize) -> Vec<AgentName> {
    (b'a'..=b'z')
        .take(n)
        .map(|c| AgentName::new((c as char).to_string()).unwrap())
        .collect()
}

// Independent ChaCha streams per generated component.
const STREAM_PARTITIONS: u64 = 1;
const STREAM_MECHANISM: u64 = 2;
const STREAM_VALUATION: u64 = 3;

fn component_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random validated game. States are `s0, s1, ...`, agents `a, b, c, ...`,
/// operations `op0, op1, ...`; the variables of [`VARIABLE_POOL`] get random
/// truth sets. Deterministic in `(params, seed)`.
pub fn random_game(params: &GameParams, seed: u64) -> Result<ValidatedGame, GameError> {
    let vars: Vec<String> = VARIABLE_POOL.iter().map(|v| v.to_string()).collect();
    random_game_for(params, seed, &default_agent_names(params.n_agents), &vars, true)
}

/// [`random_game`] over an explicit agent universe and variable list. With
/// `concealed` unset, transitions are drawn between arbitrary states and the
/// result skips the concealment check.
pub fn random_game_for(
    params: &GameParams,
    seed: u64,
    agents: &[AgentName],
    variables: &[String],
    concealed: bool,
) -> Result<ValidatedGame, GameError> {
    params.check()?;
    let n = params.n_states;
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let operations: Vec<String> = (0..params.n_ops).map(|i| format!("op{i}")).collect();

    let mut rng = component_rng(seed, STREAM_PARTITIONS);
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(agents.len());
    let mut indist = BTreeMap::new();
    for agent in agents {
        let mut block_of = vec![0usize; n];
        let mut n_blocks = 1;
        for s in 1..n {
            if rng.gen_bool(params.partition_coarseness) {
                block_of[s] = block_of[rng.gen_range(0..s)];
            } else {
                block_of[s] = n_blocks;
                n_blocks += 1;
            }
        }
        let mut partition = vec![Vec::new(); n_blocks];
        for s in 0..n {
            partition[block_of[s]].push(states[s].clone());
        }
        indist.insert(agent.to_string(), partition);
        blocks.push(block_of);
    }

    let mut rng = component_rng(seed, STREAM_MECHANISM);
    let mut mechanism = Vec::new();
    let full: u32 = ((1u64 << agents.len()) - 1) as u32;
    for w in 0..n {
        for mask in 0..=full {
            for op in &operations {
                for u in 0..n {
                    let outside = full & !mask;
                    let hidden = (0..agents.len()).all(|a| outside & (1 << a) == 0 || blocks[a][w] == blocks[a][u]);
                    if (hidden || !concealed) && rng.gen_bool(params.extra_edge_prob) {
                        mechanism.push(MechanismTuple {
                            from: states[w].clone(),
                            coalition: mask_to_coalition(agents, mask),
                            op: op.clone(),
                            to: states[u].clone(),
                        });
                    }
                }
            }
        }
    }

    let mut rng = component_rng(seed, STREAM_VALUATION);
    let mut valuation = BTreeMap::new();
    for v in variables {
        let truth: Vec<String> = states.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        valuation.insert(v.clone(), truth);
    }

    let desc = GameDescription {
        agents: agents.iter().map(|a| a.to_string()).collect(),
        states,
        indist,
        operations,
        mechanism,
        implicit_self_loops: true,
        valuation,
    };
    validate_game_with(
        desc,
        ValidationOptions {
            check_concealment: concealed,
        },
    )
}

/// The four-state Cuban Missile Crisis game: Americans `a`, Cubans `c`,
/// Russians `r`; state `w1` stands for `w'`.
pub fn cuban_missile_crisis() -> GameDescription {
    let text = include_str!("../../../fixtures/cuban.json");
    GameDescription::from_json(text).expect("bundled fixture parses")
}
