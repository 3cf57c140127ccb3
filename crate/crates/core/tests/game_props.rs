mod common;

use std::collections::BTreeSet;

use clandestine::game::{cuban_missile_crisis, random_game, validate_game, GameError, Mask, MechanismTuple};
use proptest::prelude::*;

use common::{game_strategy, params_strategy};

proptest! {
    #[test]
    fn closed_tuples_are_concealed(g in game_strategy()) {
        for t in g.closed_mechanism() {
            let (w, u) = (g.state_index(&t.from).unwrap(), g.state_index(&t.to).unwrap());
            for (i, agent) in g.agents().iter().enumerate() {
                if !t.coalition.contains(agent) {
                    prop_assert_eq!(g.agent_block(i, w), g.agent_block(i, u), "{} leaks to {}", t, agent);
                }
            }
        }
    }

    #[test]
    fn every_key_has_an_outcome(g in game_strategy()) {
        for w in 0..g.n_states() {
            for &m in g.masks() {
                for op in 0..g.n_ops() {
                    prop_assert!(!g.successors(w, m, op).is_empty());
                }
            }
        }
    }

    #[test]
    fn closure_only_fills_empty_keys(g in game_strategy()) {
        let explicit: BTreeSet<MechanismTuple> = g.description().mechanism.iter().cloned().collect();
        let keys: BTreeSet<_> = explicit.iter().map(|t| (t.from.clone(), t.coalition.clone(), t.op.clone())).collect();
        let closed: BTreeSet<MechanismTuple> = g.closed_mechanism().into_iter().collect();
        prop_assert!(explicit.is_subset(&closed));
        for t in closed.difference(&explicit) {
            prop_assert_eq!(&t.from, &t.to);
            prop_assert!(!keys.contains(&(t.from.clone(), t.coalition.clone(), t.op.clone())));
        }
    }

    #[test]
    fn larger_coalitions_refine(g in game_strategy(), bits in any::<(Mask, Mask)>()) {
        let full = g.full_mask();
        let big = bits.0 & full;
        let small = big & bits.1;
        for s in 0..g.n_states() {
            for t in 0..g.n_states() {
                if g.indistinguishable(big, s, t) {
                    prop_assert!(g.indistinguishable(small, s, t));
                }
            }
        }
        let small_c = g.coalition_of(small);
        let big_c = g.coalition_of(big);
        let coarse = g.coalition_indist(&small_c).unwrap();
        for block in g.coalition_indist(&big_c).unwrap() {
            prop_assert!(coarse.iter().any(|c| block.iter().all(|s| c.contains(s))));
        }
    }

    #[test]
    fn empty_coalition_has_one_block(g in game_strategy()) {
        prop_assert_eq!(g.coalition_indist(&Default::default()).unwrap().len(), 1);
    }

    #[test]
    fn generation_is_reproducible(p in params_strategy(), seed in any::<u64>()) {
        let a = random_game(&p, seed).unwrap();
        let b = random_game(&p, seed).unwrap();
        prop_assert_eq!(a.description().to_json(), b.description().to_json());
    }
}

#[test]
fn cuban_fixture_rejects_leaky_tuple() {
    let mut desc = cuban_missile_crisis();
    desc.mechanism.push(MechanismTuple::new("w", clandestine::Coalition::of(&["a"]), "m3101", "w1"));
    assert!(matches!(validate_game(desc), Err(GameError::Concealment { .. })));
}
