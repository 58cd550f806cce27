//! Analyses built on the constructions: games, history-determinism,
//! language equivalence, minimisation, typeness and normal-form checks.

pub mod equiv;
pub mod games;
pub mod letter_game;
pub mod minimize;
pub mod normal_form;
pub mod typeness;

pub use equiv::language_equiv_det;
pub use games::{attractor, edge_attractor, solve_muller_game, solve_parity_game, GameSolution};
pub use letter_game::{is_history_deterministic, letter_game};
pub use minimize::minimize_muller_dpa;
pub use normal_form::{check_path_property, check_petal_property};
pub use typeness::{relabel_as, typeness, Obstruction, Relabelling, TypeKind, TypenessReport};
