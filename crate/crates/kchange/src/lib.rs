//! `kchange` — exact analysis of k-change query games.
//!
//! A query problem asks the Questioner to certify the value of a function
//! `f(x)` for a hidden input `x` using YES/NO queries. Classically the
//! Adversary either commits to `x` up front (certificate complexity) or may
//! answer with any consistent input in mind (deterministic complexity). This
//! crate implements the regime in between: the Adversary commits to a live
//! input but may replace it with another input consistent with all fixed
//! answers at most `k` times. The Questioner sees the live input and the
//! remaining change budget; a replacement may happen after the Adversary has
//! seen the pending query, and the answer then comes from the new input.
//!
//! What's here:
//!
//! - [`game`] — the game semantics: problem specs, states, legal moves,
//!   certificate detection, and a referee for agent-vs-agent matches.
//! - [`problems`] — builders for five problem families (search, group
//!   testing with exactly/at-most d defectives, sorting, min+max / max-only
//!   selection, graph connectivity), Turán-graph utilities, and closed-form
//!   predictions for the game values where known.
//! - [`solver`] — exact game values `D_k` by memoized minimax with optional
//!   alpha-beta pruning, best-response values against a fixed agent, optimal
//!   policies, and principal variations.
//! - [`strategies`] — the named Questioner and Adversary strategies for each
//!   family, playable in matches and evaluable by best response.
//! - [`harness`] — run configuration, a JSON-lines result cache, the
//!   verification suite, and the command layer behind the `kchange` binary.
//!
//! Start with the runnable examples (one per capability):
//!
//! ```text
//! cargo run --release --example solve_value
//! cargo run --release --example closed_forms
//! cargo run --release --example play_match
//! cargo run --release --example best_response
//! cargo run --release --example optimal_play
//! cargo run --release --example custom_problem
//! cargo run --release --example result_cache
//! ```

pub mod game;
pub mod harness;
pub mod problems;
pub mod set;
pub mod solver;
pub mod strategies;

pub use game::{
    apply_move, play_match, validate_problem, AdversaryResponse, Adversary, AgentError, GameState,
    MatchLimits, Outcome, ProblemSpec, Questioner, Role, Transcript,
};
pub use problems::{predicted_value, ProblemKind, Prediction};
pub use solver::{game_value, SolveOptions, SolveResult};
