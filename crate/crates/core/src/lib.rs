//! Model checking, proof checking and randomized soundness testing for a
//! modal logic of distributed knowledge (`K_C`) and clandestine power (`H_C`)
//! over games whose operations are concealed from everyone outside the
//! acting coalition.
//!
//! ```
//! use clandestine::{checker::holds, game::{cuban_missile_crisis, validate_game}};
//!
//! let game = validate_game(cuban_missile_crisis()).unwrap();
//! let f = "H{a} (K{a} m | K{a} !m)".parse().unwrap();
//! assert!(holds(&game, "w1", &f).unwrap());
//! ```

pub mod checker;
pub mod cli;
pub mod formula;
pub mod game;
pub mod harness;
pub mod proofs;

pub use checker::{find_counterexample, holds, holds_brute, truth_set};
pub use formula::{parse_formula, Coalition, Formula};
pub use game::{random_game, validate_game, GameDescription, ValidatedGame};
pub use proofs::{check_proof, deduction_transform, k_lift_transform, Proof};
