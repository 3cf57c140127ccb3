mod common;

use clandestine::checker::{find_counterexample, holds, holds_brute, Evaluator};
use clandestine::formula::{Coalition, Formula};
use clandestine::harness::{instantiate_random_axiom, random_formula};
use clandestine::proofs::AxiomName;
use proptest::prelude::*;

use common::{game_and_formula, pool};

fn coalition(g: &clandestine::ValidatedGame, bits: u32) -> Coalition {
    g.coalition_of(bits & g.full_mask())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluator_matches_oracle((g, f) in game_and_formula(4)) {
        for s in g.states() {
            prop_assert_eq!(holds(&g, s, &f).unwrap(), holds_brute(&g, s, &f).unwrap(), "{} at {}", f, s);
        }
    }

    #[test]
    fn modalities_are_constant_on_blocks((g, f) in game_and_formula(3), bits in any::<u32>()) {
        let c = coalition(&g, bits);
        let m = g.mask_of(&c).unwrap();
        let mut ev = Evaluator::new(&g);
        let k = ev.truth_vector(&Formula::know(c.clone(), f.clone())).unwrap();
        let h = ev.truth_vector(&Formula::can(c, f)).unwrap();
        for s in 0..g.n_states() {
            for t in 0..g.n_states() {
                if g.indistinguishable(m, s, t) {
                    prop_assert_eq!(k[s], k[t]);
                    prop_assert_eq!(h[s], h[t]);
                }
            }
        }
    }

    #[test]
    fn knowledge_is_truthful_and_monotone((g, f) in game_and_formula(3), bits in any::<(u32, u32)>()) {
        let c = coalition(&g, bits.0);
        let sub = coalition(&g, bits.0 & bits.1);
        let mut ev = Evaluator::new(&g);
        let base = ev.truth_vector(&f).unwrap();
        let k = ev.truth_vector(&Formula::know(c.clone(), f.clone())).unwrap();
        let k_sub = ev.truth_vector(&Formula::know(sub, f)).unwrap();
        for s in 0..g.n_states() {
            prop_assert!(!k[s] || base[s]);
            prop_assert!(!k_sub[s] || k[s]);
        }
    }

    #[test]
    fn strategic_introspection((g, f) in game_and_formula(3), bits in any::<u32>()) {
        let c = coalition(&g, bits);
        let h = Formula::can(c.clone(), f);
        prop_assert!(find_counterexample(&g, &Formula::imp(h.clone(), Formula::know(c, h))).unwrap().is_none());
    }

    #[test]
    fn no_power_to_reach_falsity_or_without_members((g, f) in game_and_formula(3), bits in any::<u32>()) {
        let c = coalition(&g, bits);
        let mut ev = Evaluator::new(&g);
        prop_assert!(ev.truth_vector(&Formula::can(c, Formula::bottom())).unwrap().iter().all(|t| !t));
        prop_assert!(ev.truth_vector(&Formula::can(Coalition::empty(), f)).unwrap().iter().all(|t| !t));
    }

    #[test]
    fn cia_instances_are_valid((g, _) in game_and_formula(0), seed in any::<u64>()) {
        let f = instantiate_random_axiom(AxiomName::Cia, g.agents(), 3, &pool(), seed);
        prop_assert_eq!(find_counterexample(&g, &f).unwrap(), None, "{}", f);
    }

    #[test]
    fn every_axiom_instance_is_valid((g, _) in game_and_formula(0), seed in any::<u64>()) {
        for name in AxiomName::ALL {
            let f = instantiate_random_axiom(name, g.agents(), 3, &pool(), seed);
            prop_assert_eq!(find_counterexample(&g, &f).unwrap(), None, "{}: {}", name, f);
        }
    }

    #[test]
    fn formulas_over_unknown_variables_are_false((g, _) in game_and_formula(0), seed in any::<u64>()) {
        let f = random_formula(0, &["unlisted".to_string()], g.agents(), seed);
        prop_assert!(g.states().iter().all(|s| !holds(&g, s, &f).unwrap()));
    }
}
