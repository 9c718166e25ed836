//! Agent traits: deterministic policies for one role of the game.

use super::{AdversaryResponse, GameState, ProblemSpec};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Questioner,
    Adversary,
}

impl std::fmt::Display for Role {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Role::Questioner => "questioner",
            Role::Adversary => "adversary",
        })
    }
}

#[derive(Debug, Error)]
pub enum AgentError {
    #[error("agent '{agent}' does not support this problem: {reason}")]
    ProblemMismatch { agent: String, reason: String },
    #[error("agent '{agent}' found no move: {reason}")]
    NoMove { agent: String, reason: String },
}

/// Questioner policy: proposes the next unasked query.
///
/// Agents observe the full game state (including the live input and the
/// remaining change budget) plus whatever internal memory they keep. They
/// must be deterministic: equal observations and equal internal state must
/// yield equal moves.
pub trait Questioner: Send {
    fn name(&self) -> String;

    fn next_query(&mut self, spec: &ProblemSpec, state: &GameState) -> Result<usize, AgentError>;

    fn clone_box(&self) -> Box<dyn Questioner>;

    /// Hash of the agent's internal state, used to memoize best-response
    /// searches. `None` disables memoization for this agent. Agents whose
    /// moves are a pure function of the observed `GameState` return a
    /// constant.
    fn state_fingerprint(&self) -> Option<u64> {
        None
    }
}

/// Adversary policy: picks the initial input, then responds to each pending
/// query with an optional input change.
pub trait Adversary: Send {
    fn name(&self) -> String;

    fn initial_input(&mut self, spec: &ProblemSpec, k: u32) -> Result<usize, AgentError>;

    fn respond(
        &mut self,
        spec: &ProblemSpec,
        state: &GameState,
        q: usize,
    ) -> Result<AdversaryResponse, AgentError>;

    fn clone_box(&self) -> Box<dyn Adversary>;

    /// See [`Questioner::state_fingerprint`].
    fn state_fingerprint(&self) -> Option<u64> {
        None
    }
}

impl Clone for Box<dyn Questioner> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

impl Clone for Box<dyn Adversary> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}
