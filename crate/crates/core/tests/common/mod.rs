#![allow(dead_code)]

use std::path::PathBuf;

use clandestine::formula::{Coalition, Formula};
use clandestine::game::{random_game, GameParams, ValidatedGame, VARIABLE_POOL};
use clandestine::harness::random_formula;
use clandestine::proofs::{Justification, Proof};
use proptest::prelude::*;
use rand::Rng;

pub const LEMMAS: [(&str, &str); 4] = [
    ("lemma2", "K{a} p -> K{a} K{a} p"),
    ("lemma3", "K{a,b} K{b} K{a,b} p -> H{a,b} p"),
    ("lemma4", "K{a} !K{b} p -> !H{b} p"),
    ("lemma5", "K{a,b} (K{a} p | q) -> K{a} p | K{a,b} q"),
];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load_proof(name: &str) -> Proof {
    let text = std::fs::read_to_string(fixture(&format!("{name}.proof.json"))).unwrap();
    Proof::from_json(&text).unwrap()
}

pub fn pool() -> Vec<String> {
    VARIABLE_POOL.iter().map(|v| v.to_string()).collect()
}

fn coalition_strategy() -> impl Strategy<Value = Coalition> {
    proptest::sample::subsequence(vec!["a", "b", "c"], 0..=3).prop_map(|v| Coalition::of(&v))
}

/// Formulas over variables p, q, x1, long_name and agents a, b, c, including the constants.
pub fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop::sample::select(vec!["p", "q", "x1", "long_name"]).prop_map(Formula::var),
        1 => Just(Formula::top()),
        1 => Just(Formula::bottom()),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::imp(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (coalition_strategy(), inner.clone()).prop_map(|(c, f)| Formula::know(c, f)),
            (coalition_strategy(), inner).prop_map(|(c, f)| Formula::can(c, f)),
        ]
    })
}

pub fn params_strategy() -> impl Strategy<Value = GameParams> {
    (1usize..=6, 1usize..=3, 1usize..=2, 0.0f64..=1.0, 0.0f64..=0.4).prop_map(|(s, a, o, c, e)| GameParams {
        n_states: s,
        n_agents: a,
        n_ops: o,
        partition_coarseness: c,
        extra_edge_prob: e,
    })
}

pub fn game_strategy() -> impl Strategy<Value = ValidatedGame> {
    (params_strategy(), any::<u64>()).prop_map(|(p, seed)| random_game(&p, seed).unwrap())
}

/// A game with a formula of depth at most `depth` over the game's agents.
pub fn game_and_formula(depth: usize) -> impl Strategy<Value = (ValidatedGame, Formula)> {
    (game_strategy(), any::<u64>()).prop_map(move |(g, seed)| {
        let f = random_formula(depth, &pool(), g.agents(), seed);
        (g, f)
    })
}

fn nodes(f: &Formula) -> usize {
    match f {
        Formula::Var(_) => 1,
        Formula::Neg(b) | Formula::Know(_, b) | Formula::Can(_, b) => 1 + nodes(b),
        Formula::Imp(l, r) => 1 + nodes(l) + nodes(r),
    }
}

/// Changes node `k` (preorder) of `f`; every result differs from the input.
fn flip_at(f: &Formula, k: usize) -> (Formula, usize) {
    fn go(f: &Formula, k: &mut usize) -> Formula {
        if *k == 0 {
            *k = usize::MAX;
            return match f {
                Formula::Var(v) => Formula::var(if v == "p" { "q" } else { "p" }),
                Formula::Neg(b) => (**b).clone(),
                Formula::Imp(l, r) => Formula::imp(Formula::neg((**l).clone()), (**r).clone()),
                Formula::Know(c, b) => Formula::can(c.clone(), (**b).clone()),
                Formula::Can(c, b) => Formula::know(c.clone(), (**b).clone()),
            };
        }
        *k -= 1;
        match f {
            Formula::Var(_) => f.clone(),
            Formula::Neg(b) => Formula::neg(go(b, k)),
            Formula::Imp(l, r) => {
                let l = go(l, k);
                Formula::imp(l, go(r, k))
            }
            Formula::Know(c, b) => Formula::know(c.clone(), go(b, k)),
            Formula::Can(c, b) => Formula::can(c.clone(), go(b, k)),
        }
    }
    let mut k = k;
    (go(f, &mut k), nodes(f))
}

/// Every single-node formula flip and every single index change of `p`.
pub fn all_mutants(p: &Proof) -> Vec<Proof> {
    let mut out = Vec::new();
    for (i, line) in p.lines.iter().enumerate() {
        for k in 0..nodes(&line.formula) {
            let mut m = p.clone();
            m.lines[i].formula = flip_at(&line.formula, k).0;
            assert_ne!(m.lines[i].formula, line.formula);
            out.push(m);
        }
        for delta in [-2i64, -1, 1, 2] {
            let shift = |x: usize| -> Option<usize> {
                let y = x as i64 + delta;
                (y >= 0).then_some(y as usize)
            };
            let changed: Vec<Justification> = match &line.justification {
                Justification::Hyp(h) => shift(*h).map(Justification::Hyp).into_iter().collect(),
                Justification::Mp(a, b) => [
                    shift(*a).map(|a| Justification::Mp(a, *b)),
                    shift(*b).map(|b| Justification::Mp(*a, b)),
                ]
                .into_iter()
                .flatten()
                .collect(),
                Justification::NecK(a, c) => shift(*a).map(|a| Justification::NecK(a, c.clone())).into_iter().collect(),
                Justification::NecH(a, c) => shift(*a).map(|a| Justification::NecH(a, c.clone())).into_iter().collect(),
                _ => Vec::new(),
            };
            for j in changed {
                let mut m = p.clone();
                m.lines[i].justification = j;
                out.push(m);
            }
        }
    }
    out
}

/// One random mutant: a formula flip at a random node of a random line, or
/// (one time in four) a random index change.
pub fn random_mutant<R: Rng>(p: &Proof, rng: &mut R) -> Proof {
    loop {
        let i = rng.gen_range(0..p.lines.len());
        let mut m = p.clone();
        if rng.gen_bool(0.25) {
            let line = &mut m.lines[i];
            let bump = |x: &mut usize, rng: &mut R| {
                let old = *x;
                while *x == old {
                    *x = rng.gen_range(0..=p.lines.len() + 1);
                }
            };
            match &mut line.justification {
                Justification::Hyp(h) => bump(h, rng),
                Justification::Mp(a, b) => {
                    if rng.gen_bool(0.5) {
                        bump(a, rng)
                    } else {
                        bump(b, rng)
                    }
                }
                Justification::NecK(a, _) | Justification::NecH(a, _) => bump(a, rng),
                _ => continue,
            }
        } else {
            let f = &p.lines[i].formula;
            let k = rng.gen_range(0..nodes(f));
            m.lines[i].formula = flip_at(f, k).0;
        }
        return m;
    }
}
