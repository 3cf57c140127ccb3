//! Satisfaction of formulas at states of a validated game.
//!
//! [`Evaluator`] computes the truth set of every subformula once per query,
//! working block by block: `K_C f` and `H_C f` are constant on the blocks of
//! `~_C`. [`holds_brute`] is a literal restatement of the truth clauses with
//! nested loops and no caching; it is the oracle the evaluator is tested against.

use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

use crate::formula::{AgentName, Coalition, Formula};
use crate::game::{Mask, ValidatedGame};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("agent `{0}` is not part of the game")]
    UnknownAgent(AgentName),
}

/// Deliberate semantic defects, used to confirm that the soundness harness
/// notices a broken evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// `K_C f` holds if `f` holds somewhere in the block.
    ExistentialKnow,
    /// The acting sub-coalition of `H_C` may be empty.
    EmptySubcoalition,
    /// `H_C f` only requires `f` at the outcome, not across its `~_C` block.
    IgnoreOutcomeIndist,
    /// `H_{} f` holds everywhere.
    EmptyCoalitionCan,
}

fn check_agents(game: &ValidatedGame, f: &Formula) -> Result<(), CheckError> {
    for a in f.agents() {
        if game.agent_index(&a).is_none() {
            return Err(CheckError::UnknownAgent(a));
        }
    }
    Ok(())
}

fn mask(game: &ValidatedGame, c: &Coalition) -> Mask {
    game.mask_of(c).expect("agents checked before evaluation")
}

/// Truth-set evaluator for one game. Caches the `~_C` partitions it builds.
pub struct Evaluator<'g> {
    game: &'g ValidatedGame,
    fault: Option<Fault>,
    partitions: HashMap<Mask, Rc<Vec<Vec<usize>>>>,
}

impl<'g> Evaluator<'g> {
    pub fn new(game: &'g ValidatedGame) -> Self {
        Evaluator {
            game,
            fault: None,
            partitions: HashMap::new(),
        }
    }

    pub fn with_fault(game: &'g ValidatedGame, fault: Option<Fault>) -> Self {
        Evaluator {
            fault,
            ..Evaluator::new(game)
        }
    }

    /// Truth value of `f` at every state, in declared state order.
    pub fn truth_vector(&mut self, f: &Formula) -> Result<Vec<bool>, CheckError> {
        check_agents(self.game, f)?;
        Ok(self.eval(f))
    }

    fn blocks(&mut self, mask: Mask) -> Rc<Vec<Vec<usize>>> {
        let game = self.game;
        self.partitions
            .entry(mask)
            .or_insert_with(|| {
                let ids = game.block_ids(mask);
                let mut blocks = vec![Vec::new(); ids.iter().max().map_or(0, |m| m + 1)];
                for (s, &b) in ids.iter().enumerate() {
                    blocks[b].push(s);
                }
                Rc::new(blocks)
            })
            .clone()
    }

    fn eval(&mut self, f: &Formula) -> Vec<bool> {
        let n = self.game.n_states();
        match f {
            Formula::Var(v) => self
                .game
                .valuation_of(v)
                .map_or_else(|| vec![false; n], <[bool]>::to_vec),
            Formula::Neg(b) => self.eval(b).into_iter().map(|x| !x).collect(),
            Formula::Imp(l, r) => {
                let l = self.eval(l);
                let r = self.eval(r);
                l.into_iter().zip(r).map(|(l, r)| !l || r).collect()
            }
            Formula::Know(c, b) => {
                let body = self.eval(b);
                self.know(mask(self.game, c), &body)
            }
            Formula::Can(c, b) => {
                let body = self.eval(b);
                self.can(mask(self.game, c), &body)
            }
        }
    }

    fn know(&mut self, mask: Mask, body: &[bool]) -> Vec<bool> {
        let mut out = vec![false; body.len()];
        for block in self.blocks(mask).iter() {
            let value = if self.fault == Some(Fault::ExistentialKnow) {
                block.iter().any(|&s| body[s])
            } else {
                block.iter().all(|&s| body[s])
            };
            for &s in block {
                out[s] = value;
            }
        }
        out
    }

    fn can(&mut self, mask: Mask, body: &[bool]) -> Vec<bool> {
        let n = body.len();
        if mask == 0 && self.fault == Some(Fault::EmptyCoalitionCan) {
            return vec![true; n];
        }
        // Every outcome must lie in a ~_C block where the body holds throughout.
        let goal = if self.fault == Some(Fault::IgnoreOutcomeIndist) {
            body.to_vec()
        } else {
            self.know(mask, body)
        };
        let mut actors: Vec<Mask> = submasks(mask).filter(|&m| m != 0).collect();
        if self.fault == Some(Fault::EmptySubcoalition) {
            actors.push(0);
        }
        let game = self.game;
        let mut out = vec![false; n];
        for block in self.blocks(mask).iter() {
            let value = actors.iter().any(|&actor| {
                (0..game.n_ops()).any(|op| {
                    block
                        .iter()
                        .all(|&w| game.successors(w, actor, op).iter().all(|&u| goal[u as usize]))
                })
            });
            for &s in block {
                out[s] = value;
            }
        }
        out
    }
}

/// All submasks of `mask`, including `0` and `mask` itself.
fn submasks(mask: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

fn state_of(game: &ValidatedGame, state: &str) -> Result<usize, CheckError> {
    game.state_index(state)
        .ok_or_else(|| CheckError::UnknownState(state.to_string()))
}

/// Whether `f` holds at `state`. Variables missing from the valuation are false everywhere.
pub fn holds(game: &ValidatedGame, state: &str, f: &Formula) -> Result<bool, CheckError> {
    let s = state_of(game, state)?;
    Ok(Evaluator::new(game).truth_vector(f)?[s])
}

/// States where `f` holds, in declared order.
pub fn truth_set(game: &ValidatedGame, f: &Formula) -> Result<Vec<String>, CheckError> {
    let truth = Evaluator::new(game).truth_vector(f)?;
    Ok(game
        .states()
        .iter()
        .zip(truth)
        .filter(|(_, t)| *t)
        .map(|(s, _)| s.clone())
        .collect())
}

/// First state in declared order where `f` fails.
pub fn find_counterexample(game: &ValidatedGame, f: &Formula) -> Result<Option<String>, CheckError> {
    find_counterexample_with(game, f, None)
}

pub fn find_counterexample_with(
    game: &ValidatedGame,
    f: &Formula,
    fault: Option<Fault>,
) -> Result<Option<String>, CheckError> {
    let truth = Evaluator::with_fault(game, fault).truth_vector(f)?;
    Ok(truth.iter().position(|t| !t).map(|s| game.states()[s].clone()))
}

/// Oracle for [`holds`]: the truth clauses as literal nested loops over states,
/// sub-coalitions, operations and mechanism tuples.
pub fn holds_brute(game: &ValidatedGame, state: &str, f: &Formula) -> Result<bool, CheckError> {
    let s = state_of(game, state)?;
    check_agents(game, f)?;
    Ok(brute(game, s, f))
}

fn brute(game: &ValidatedGame, w: usize, f: &Formula) -> bool {
    let n = game.n_states();
    match f {
        Formula::Var(v) => game.valuation_of(v).is_some_and(|t| t[w]),
        Formula::Neg(b) => !brute(game, w, b),
        Formula::Imp(l, r) => !brute(game, w, l) || brute(game, w, r),
        Formula::Know(c, b) => {
            let c = mask(game, c);
            (0..n).all(|u| !game.indistinguishable(c, w, u) || brute(game, u, b))
        }
        Formula::Can(c, b) => {
            let c = mask(game, c);
            // nonempty C' ⊆ C, by size then name
            game.masks().iter().filter(|&&a| a != 0 && a & !c == 0).any(|&actor| {
                (0..game.n_ops()).any(|op| {
                    (0..n).all(|w2| {
                        !game.indistinguishable(c, w, w2)
                            || (0..n).all(|u| {
                                !game.has_transition(w2, actor, op, u)
                                    || (0..n).all(|u2| !game.indistinguishable(c, u, u2) || brute(game, u2, b))
                            })
                    })
                })
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::game::{cuban_missile_crisis, random_game, validate_game, GameParams};

    fn cuban() -> ValidatedGame {
        validate_game(cuban_missile_crisis()).unwrap()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn both(g: &ValidatedGame, state: &str, text: &str) -> bool {
        let fast = holds(g, state, &f(text)).unwrap();
        assert_eq!(fast, holds_brute(g, state, &f(text)).unwrap(), "{text} at {state}");
        fast
    }

    #[test]
    fn cuban_valuation() {
        let g = cuban();
        assert!(!both(&g, "w", "m"));
        assert!(both(&g, "w1", "m"));
        assert_eq!(truth_set(&g, &f("m")).unwrap(), ["w1", "v"]);
        assert_eq!(find_counterexample(&g, &f("m")).unwrap().as_deref(), Some("w"));
    }

    #[test]
    fn cuban_knowledge() {
        let g = cuban();
        assert!(!both(&g, "w1", "K{a} m"));
        assert!(both(&g, "v", "K{a} m"));
        assert!(truth_set(&g, &f("K{} m")).unwrap().is_empty());
        assert_eq!(find_counterexample(&g, &f("K{a} m -> m")).unwrap(), None);
    }

    #[test]
    fn americans_detect_anadyr() {
        let g = cuban();
        assert!(both(&g, "w1", "H{a} (K{a} m | K{a} !m)"));
        // the same know-how is available at w, which a cannot tell from w1
        assert!(both(&g, "w", "H{a} (K{a} m | K{a} !m)"));
    }

    #[test]
    fn anadyr_is_not_known_how_at_w() {
        // u ~{c,r} w and the implicit loop at u keeps m false there
        let g = cuban();
        assert!(!both(&g, "w", "H{c,r} m"));
        assert!(!both(&g, "u", "H{c,r} m"));
    }

    #[test]
    fn constants_and_empty_coalition() {
        let g = cuban();
        for s in ["w", "w1", "u", "v"] {
            assert!(both(&g, s, "true"));
            assert!(!both(&g, s, "false"));
            assert!(!both(&g, s, "H{} m"));
            assert!(!both(&g, s, "H{} true"));
            assert!(!both(&g, s, "H{a,c,r} false"));
        }
        assert_eq!(truth_set(&g, &f("true")).unwrap().len(), 4);
        assert_eq!(find_counterexample(&g, &f("!H{} p")).unwrap(), None);
    }

    #[test]
    fn unknown_variables_are_false() {
        let g = cuban();
        assert!(truth_set(&g, &f("nothing")).unwrap().is_empty());
    }

    #[test]
    fn query_errors() {
        let g = cuban();
        assert_eq!(holds(&g, "x", &f("m")), Err(CheckError::UnknownState("x".into())));
        assert!(matches!(holds(&g, "w", &f("K{b} m")), Err(CheckError::UnknownAgent(_))));
        assert!(matches!(holds_brute(&g, "w", &f("H{b} m")), Err(CheckError::UnknownAgent(_))));
    }

    #[test]
    fn one_state_game() {
        let params = GameParams {
            n_states: 1,
            n_agents: 1,
            n_ops: 1,
            ..GameParams::default()
        };
        // find a seed where p holds at s0
        let g = (0..)
            .map(|seed| random_game(&params, seed).unwrap())
            .find(|g| g.valuation_of("p").unwrap()[0])
            .unwrap();
        assert!(holds_brute(&g, "s0", &f("H{a} p")).unwrap());
        assert!(holds(&g, "s0", &f("H{a} p")).unwrap());
    }

    #[test]
    fn submask_enumeration() {
        let mut all: Vec<Mask> = submasks(0b101).collect();
        all.sort();
        assert_eq!(all, vec![0, 1, 4, 5]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn faults_change_verdicts() {
        let g = cuban();
        let t = |fault, text: &str| Evaluator::with_fault(&g, Some(fault)).truth_vector(&f(text)).unwrap();
        assert_eq!(t(Fault::ExistentialKnow, "K{a} m"), vec![true, true, false, true]);
        assert_eq!(t(Fault::EmptyCoalitionCan, "H{} false"), vec![true; 4]);
    }
}
