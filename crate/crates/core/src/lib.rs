//! Zielonka trees, alternating cycle decompositions and the transformations
//! built on them for omega-automata and infinite-duration games.
//!
//! The crate is organised bottom-up:
//!
//! * [`set`], [`acceptance`], [`ts`] and [`cycles`] hold the data model:
//!   transition systems whose edges carry mark sets, acceptance conditions
//!   evaluated on the set of marks seen infinitely often, SCCs and cycles.
//! * [`tree`] provides ordered trees with round (accepting) and square
//!   (rejecting) nodes and the `next_child` / `jump` / `supp` navigation.
//! * [`zielonka`] builds Zielonka trees and the parity and HD-Rabin automata
//!   derived from them.
//! * [`acd`] builds the alternating cycle decomposition of a transition
//!   system, with local subtrees, levels and flowers.
//! * [`transforms`] contains the ACD-parity and ACD-HD-Rabin transforms
//!   (with witness morphisms), the game variant and the parity normal form.
//! * [`morphisms`] checks structural and semantic properties of morphisms.
//! * [`analysis`] has typeness, minimisation, language equivalence, game
//!   solvers and the letter game.
//!
//! Data-parallel helpers live in [`par`] and batch drivers in [`batch`];
//! they use rayon when the `parallel` feature is enabled and run
//! sequentially otherwise.

pub mod acceptance;
pub mod acd;
pub mod analysis;
pub mod batch;
pub mod cycles;
mod error;
pub mod morphisms;
pub mod par;
pub mod random;
pub mod set;
pub mod transforms;
pub mod tree;
pub mod ts;
pub mod zielonka;

pub use acceptance::{AcceptanceCondition, Formula};
pub use error::{Budget, Error, Result};
pub use set::{EdgeSet, IdSet, MarkSet, VertexSet};
pub use ts::{Automaton, Edge, Game, Player, TransitionSystem};
