use std::sync::OnceLock;

use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mark {0} is outside the acceptance alphabet")]
    UnknownMark(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} has no outgoing edge")]
    Sink(usize),
    #[error("the system contains a cycle made only of unmarked edges")]
    EpsilonCycle,
    #[error("the set of initial vertices is empty")]
    NoInitial,
    #[error("budget of {limit} exceeded while {what}")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("automaton is not complete: state {state} has no {letter}-transition")]
    IncompleteAutomaton { state: usize, letter: usize },
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("edge {0} carries more than one mark")]
    MultiMarkEdge(usize),
    #[error("node {1} is not a child of node {0}")]
    NotAChild(usize, usize),
    #[error("node {0} is not an ancestor of node {1}")]
    NotAnAncestor(usize, usize),
    #[error("the predicate fails at the root")]
    RootFails,
    #[error("nothing remains after restriction")]
    EmptyResult,
    #[error("game is not suitable for transformations at vertex {0}")]
    NotSuitable(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("the automaton does not recognise a Muller language")]
    NotMullerLanguage,
    #[error("morphism map is not total: {0}")]
    MapNotTotal(&'static str),
    #[error("expected a parity condition")]
    NotParity,
    #[error("alphabets do not match")]
    AlphabetMismatch,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Cap on exponential enumerations (cycles, tree nodes, explored subsets).
///
/// The default is read once from the `ACDKIT_BUDGET` environment variable
/// and falls back to 200 000.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: usize,
}

impl Budget {
    pub const fn new(limit: usize) -> Self {
        Budget { limit }
    }

    pub(crate) fn check(&self, used: usize, what: &'static str) -> Result<()> {
        if used > self.limit {
            Err(Error::BudgetExceeded {
                what,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        static DEFAULT: OnceLock<usize> = OnceLock::new();
        let limit = *DEFAULT.get_or_init(|| {
            std::env::var("ACDKIT_BUDGET")
                .ok()
                .and_then(|s| s.trim().parse().ok())
                .unwrap_or(200_000)
        });
        Budget { limit }
    }
}
