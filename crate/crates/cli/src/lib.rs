//! Text formats and DOT export for `acdkit`: HOA v1 automata, Muller
//! condition files, game files and morphism files.
//!
//! The formats are described in `docs/formats.md` at the repository root.

pub mod dot;
mod error;
pub mod formats;
pub mod hoa;
mod kind;
mod lexer;

pub use error::{IoError, IoResult};
pub use formats::{
    emit_condition, emit_game, emit_morphism, parse_condition, parse_game, parse_morphism, Condition,
};
pub use hoa::{emit_hoa, parse_hoa};
pub use kind::{kind_text, same_semantics};

/// A transition system read from either a HOA automaton or a game file.
pub enum Loaded {
    Automaton(acdkit::Automaton),
    Game(acdkit::Game),
}

impl Loaded {
    pub fn ts(&self) -> &acdkit::TransitionSystem {
        match self {
            Loaded::Automaton(a) => &a.ts,
            Loaded::Game(g) => &g.ts,
        }
    }
}

/// Parse `text` as HOA when it starts with `HOA:`, as a game otherwise.
pub fn load(text: &str) -> IoResult<Loaded> {
    if text.trim_start().starts_with("HOA:") {
        Ok(Loaded::Automaton(parse_hoa(text)?))
    } else {
        Ok(Loaded::Game(parse_game(text)?))
    }
}
