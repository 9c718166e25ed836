//! Core semantics of the k-change query game: problem descriptions, game
//! states, legal moves, certificate detection, and a referee that plays two
//! agents against each other.
//!
//! A problem is a finite function `f` over an indexed input universe together
//! with a finite set of YES/NO queries. The Questioner asks queries trying to
//! certify the value of `f`; the Adversary holds a live input, must answer
//! every query truthfully for it, but may replace it with another input
//! consistent with all fixed answers at most `k` times. A replacement happens
//! after the Adversary has seen the pending query and before answering it;
//! the answer always comes from the effective (post-change) input.

mod agent;

pub use agent::{AgentError, Adversary, Questioner, Role};

use crate::set::IndexSet;
use thiserror::Error;

/// Answer to a single query.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum Outcome {
    Yes,
    No,
}

impl Outcome {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }

    pub fn as_bool(self) -> bool {
        self == Outcome::Yes
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "YES",
            Outcome::No => "NO",
        })
    }
}

/// A finite query problem: indexed inputs, indexed queries, a total oracle,
/// and the target function whose value must be certified.
///
/// The oracle is materialized at construction into one bit set per query (the
/// inputs answering YES), which makes consistency filtering a word-parallel
/// intersection.
pub struct ProblemSpec {
    name: String,
    input_labels: Vec<String>,
    query_labels: Vec<String>,
    yes_sets: Vec<IndexSet>,
    no_sets: Vec<IndexSet>,
    targets: Vec<u64>,
    class_of: Vec<u32>,
    class_masks: Vec<IndexSet>,
    /// Input-index permutations under which the game is isomorphic
    /// (identity excluded). Used only by the optional canonicalizing memo.
    symmetries: Vec<Vec<u32>>,
}

impl ProblemSpec {
    pub fn new(
        name: impl Into<String>,
        input_labels: Vec<String>,
        query_labels: Vec<String>,
        oracle: impl Fn(usize, usize) -> Outcome,
        target: impl Fn(usize) -> u64,
    ) -> ProblemSpec {
        let n = input_labels.len();
        let q = query_labels.len();
        let mut yes_sets = Vec::with_capacity(q);
        let mut no_sets = Vec::with_capacity(q);
        for qi in 0..q {
            let mut yes = IndexSet::empty(n);
            for x in 0..n {
                if oracle(x, qi) == Outcome::Yes {
                    yes.insert(x);
                }
            }
            let no = IndexSet::full(n).and_not(&yes);
            yes_sets.push(yes);
            no_sets.push(no);
        }
        let targets: Vec<u64> = (0..n).map(&target).collect();
        let mut class_ids: Vec<(u64, u32)> = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        for &t in &targets {
            let id = match class_ids.iter().find(|(v, _)| *v == t) {
                Some((_, id)) => *id,
                None => {
                    let id = class_ids.len() as u32;
                    class_ids.push((t, id));
                    id
                }
            };
            class_of.push(id);
        }
        let mut class_masks = vec![IndexSet::empty(n); class_ids.len()];
        for (x, &c) in class_of.iter().enumerate() {
            class_masks[c as usize].insert(x);
        }
        ProblemSpec {
            name: name.into(),
            input_labels,
            query_labels,
            yes_sets,
            no_sets,
            targets,
            class_of,
            class_masks,
            symmetries: Vec::new(),
        }
    }

    pub fn with_symmetries(mut self, perms: Vec<Vec<u32>>) -> Self {
        self.symmetries = perms;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_inputs(&self) -> usize {
        self.targets.len()
    }

    pub fn num_queries(&self) -> usize {
        self.yes_sets.len()
    }

    pub fn input_label(&self, x: usize) -> &str {
        &self.input_labels[x]
    }

    pub fn query_label(&self, q: usize) -> &str {
        &self.query_labels[q]
    }

    pub fn target(&self, x: usize) -> u64 {
        self.targets[x]
    }

    pub fn target_class(&self, x: usize) -> u32 {
        self.class_of[x]
    }

    pub fn num_target_classes(&self) -> usize {
        self.class_masks.len()
    }

    pub fn oracle(&self, x: usize, q: usize) -> Outcome {
        Outcome::from_bool(self.yes_sets[q].contains(x))
    }

    pub fn yes_set(&self, q: usize) -> &IndexSet {
        &self.yes_sets[q]
    }

    pub fn symmetries(&self) -> &[Vec<u32>] {
        &self.symmetries
    }

    pub fn all_inputs(&self) -> IndexSet {
        IndexSet::full(self.num_inputs())
    }

    /// Inputs of `consistent` whose answer to `q` is `outcome`.
    pub fn restrict(&self, consistent: &IndexSet, q: usize, outcome: Outcome) -> IndexSet {
        match outcome {
            Outcome::Yes => consistent.and(&self.yes_sets[q]),
            Outcome::No => consistent.and(&self.no_sets[q]),
        }
    }

    /// True iff every input of `consistent` has the same target value.
    pub fn is_certificate(&self, consistent: &IndexSet) -> Result<bool, GameError> {
        let first = consistent.first().ok_or(GameError::EmptyConsistentSet)?;
        let mask = &self.class_masks[self.class_of[first] as usize];
        Ok(consistent.is_subset_of(mask))
    }

    /// A query is determined on `consistent` when every member answers the
    /// same way; asking it cannot shrink the set.
    pub fn is_determined(&self, consistent: &IndexSet, q: usize) -> bool {
        consistent.is_subset_of(&self.yes_sets[q]) || consistent.is_disjoint_from(&self.yes_sets[q])
    }
}

impl std::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("inputs", &self.num_inputs())
            .field("queries", &self.num_queries())
            .field("target_classes", &self.num_target_classes())
            .finish()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("consistent set is empty")]
    EmptyConsistentSet,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("problem has no inputs")]
    EmptyInputs,
    #[error("problem has no queries")]
    EmptyQueries,
    #[error(
        "separation failure: inputs {a} and {b} answer every query identically \
         but have different target values"
    )]
    SeparationFailure { a: usize, b: usize },
}

/// Checks that the spec is well-formed and solvable: nonempty input and query
/// sets, and any two inputs with different targets are distinguished by some
/// query. On separation failure the witness pair is named.
pub fn validate_problem(spec: &ProblemSpec) -> Result<(), ValidationError> {
    if spec.num_inputs() == 0 {
        return Err(ValidationError::EmptyInputs);
    }
    if spec.num_queries() == 0 {
        return Err(ValidationError::EmptyQueries);
    }
    // Two inputs answer every query identically iff their answer signatures
    // (one bit per query) match.
    let mut seen: std::collections::HashMap<Vec<u64>, usize> = std::collections::HashMap::new();
    for x in 0..spec.num_inputs() {
        let mut sig = vec![0u64; spec.num_queries().div_ceil(64)];
        for q in 0..spec.num_queries() {
            if spec.yes_sets[q].contains(x) {
                sig[q / 64] |= 1u64 << (q % 64);
            }
        }
        match seen.get(&sig) {
            Some(&prev) if spec.class_of[prev] != spec.class_of[x] => {
                return Err(ValidationError::SeparationFailure { a: prev, b: x });
            }
            Some(_) => {}
            None => {
                seen.insert(sig, x);
            }
        }
    }
    Ok(())
}

/// Position of a game in progress.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GameState {
    consistent: IndexSet,
    current: usize,
    changes_left: u32,
    asked: Vec<(usize, Outcome)>,
    asked_mask: IndexSet,
}

impl GameState {
    pub fn initial(spec: &ProblemSpec, k: u32, initial_input: usize) -> GameState {
        assert!(initial_input < spec.num_inputs(), "initial input out of range");
        GameState {
            consistent: spec.all_inputs(),
            current: initial_input,
            changes_left: k,
            asked: Vec::new(),
            asked_mask: IndexSet::empty(spec.num_queries()),
        }
    }

    pub fn consistent(&self) -> &IndexSet {
        &self.consistent
    }

    pub fn current(&self) -> usize {
        self.current
    }

    pub fn changes_left(&self) -> u32 {
        self.changes_left
    }

    /// Fixed (query, outcome) pairs in the order they were asked.
    pub fn asked(&self) -> &[(usize, Outcome)] {
        &self.asked
    }

    pub fn was_asked(&self, q: usize) -> bool {
        self.asked_mask.contains(q)
    }

    pub fn asked_mask(&self) -> &IndexSet {
        &self.asked_mask
    }

    /// Queries answered so far.
    pub fn count(&self) -> u32 {
        self.asked.len() as u32
    }
}

/// The Adversary's reply to a pending query: optionally replace the live
/// input (consuming one change), after which the answer is forced by the
/// oracle on the effective input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AdversaryResponse {
    pub change: Option<usize>,
}

impl AdversaryResponse {
    pub const KEEP: AdversaryResponse = AdversaryResponse { change: None };

    pub fn change_to(input: usize) -> AdversaryResponse {
        AdversaryResponse {
            change: Some(input),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("query {query} is out of range")]
    QueryOutOfRange { query: usize },
    #[error("query {query} was already asked; its answer is fixed")]
    ReAskedQuery { query: usize },
    #[error("change requested but no changes remain")]
    ChangeBudgetExhausted,
    #[error("replacement input {input} is out of range")]
    ChangeOutOfRange { input: usize },
    #[error("replacement input {input} is inconsistent with the fixed answers")]
    InconsistentChange { input: usize },
}

impl MoveError {
    /// Which side proposed the illegal move.
    pub fn offender(&self) -> Role {
        match self {
            MoveError::QueryOutOfRange { .. } | MoveError::ReAskedQuery { .. } => Role::Questioner,
            MoveError::ChangeBudgetExhausted
            | MoveError::ChangeOutOfRange { .. }
            | MoveError::InconsistentChange { .. } => Role::Adversary,
        }
    }
}

/// Applies one full round: the query is checked fresh, the optional change is
/// checked against the fixed answers only, the answer comes from the
/// effective input, and the consistent set is narrowed accordingly.
pub fn apply_move(
    spec: &ProblemSpec,
    state: &GameState,
    q: usize,
    resp: AdversaryResponse,
) -> Result<GameState, MoveError> {
    if q >= spec.num_queries() {
        return Err(MoveError::QueryOutOfRange { query: q });
    }
    if state.was_asked(q) {
        return Err(MoveError::ReAskedQuery { query: q });
    }
    let (current, changes_left) = match resp.change {
        None => (state.current, state.changes_left),
        Some(x) => {
            if state.changes_left == 0 {
                return Err(MoveError::ChangeBudgetExhausted);
            }
            if x >= spec.num_inputs() {
                return Err(MoveError::ChangeOutOfRange { input: x });
            }
            if !state.consistent.contains(x) {
                return Err(MoveError::InconsistentChange { input: x });
            }
            (x, state.changes_left - 1)
        }
    };
    let outcome = spec.oracle(current, q);
    let consistent = spec.restrict(&state.consistent, q, outcome);
    debug_assert!(consistent.contains(current));
    let mut asked = state.asked.clone();
    asked.push((q, outcome));
    let mut asked_mask = state.asked_mask.clone();
    asked_mask.insert(q);
    Ok(GameState {
        consistent,
        current,
        changes_left,
        asked,
        asked_mask,
    })
}

/// One round of a recorded game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptEvent {
    pub query: usize,
    /// `Some((from, to))` when the Adversary replaced the input this round.
    pub change: Option<(usize, usize)>,
    pub outcome: Outcome,
}

/// Ordered record of one played game.
#[derive(Clone, Debug)]
pub struct Transcript {
    pub problem: String,
    pub k: u32,
    pub initial_input: usize,
    pub events: Vec<TranscriptEvent>,
    pub final_state: GameState,
}

impl Transcript {
    /// Total queries asked.
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn change_count(&self) -> usize {
        self.events.iter().filter(|e| e.change.is_some()).count()
    }

    /// Replays the recorded events from the initial state and returns the
    /// resulting state; equality with `final_state` is the well-formedness
    /// invariant.
    pub fn replay(&self, spec: &ProblemSpec) -> Result<GameState, ReplayError> {
        let mut state = GameState::initial(spec, self.k, self.initial_input);
        for (i, ev) in self.events.iter().enumerate() {
            if spec.is_certificate(state.consistent()).map_err(ReplayError::Game)? {
                return Err(ReplayError::StoppedLate { round: i });
            }
            let resp = match ev.change {
                None => AdversaryResponse::KEEP,
                Some((from, to)) => {
                    if from != state.current() {
                        return Err(ReplayError::ChangeSourceMismatch { round: i });
                    }
                    AdversaryResponse::change_to(to)
                }
            };
            state = apply_move(spec, &state, ev.query, resp)
                .map_err(|e| ReplayError::IllegalEvent { round: i, source: e })?;
            let recorded = ev.outcome;
            let actual = state.asked().last().expect("just pushed").1;
            if recorded != actual {
                return Err(ReplayError::OutcomeMismatch { round: i });
            }
        }
        Ok(state)
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("round {round}: {source}")]
    IllegalEvent { round: usize, source: MoveError },
    #[error("round {round}: recorded outcome disagrees with the oracle")]
    OutcomeMismatch { round: usize },
    #[error("round {round}: recorded change does not start from the live input")]
    ChangeSourceMismatch { round: usize },
    #[error("round {round}: certificate was already reached before this event")]
    StoppedLate { round: usize },
    #[error(transparent)]
    Game(GameError),
}

/// Limits applied by the referee.
#[derive(Clone, Copy, Debug, Default)]
pub struct MatchLimits {
    /// Maximum queries before the match is aborted; defaults to the number
    /// of queries in the problem.
    pub max_queries: Option<u32>,
}

#[derive(Debug, Error)]
pub enum MatchError {
    #[error("{role} agent '{agent}' made an illegal move: {source}")]
    Forfeit {
        agent: String,
        role: Role,
        source: MoveError,
    },
    #[error("agent '{agent}' failed: {source}")]
    AgentFailed {
        agent: String,
        #[source]
        source: AgentError,
    },
    #[error("adversary '{agent}' chose an out-of-range initial input {input}")]
    InvalidInitialInput { agent: String, input: usize },
    #[error("query limit {limit} exceeded; the agent pair does not terminate")]
    QueryLimitExceeded { limit: u32 },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Plays one match to completion: the Questioner proposes queries, the
/// Adversary responds, and the referee stops as soon as the consistent set
/// is single-valued. Deterministic agents yield a deterministic transcript.
pub fn play_match(
    spec: &ProblemSpec,
    k: u32,
    questioner: &mut dyn Questioner,
    adversary: &mut dyn Adversary,
    limits: MatchLimits,
) -> Result<Transcript, MatchError> {
    let limit = limits.max_queries.unwrap_or(spec.num_queries() as u32);
    let x0 = adversary
        .initial_input(spec, k)
        .map_err(|e| MatchError::AgentFailed {
            agent: adversary.name(),
            source: e,
        })?;
    if x0 >= spec.num_inputs() {
        return Err(MatchError::InvalidInitialInput {
            agent: adversary.name(),
            input: x0,
        });
    }
    let mut state = GameState::initial(spec, k, x0);
    let mut events = Vec::new();
    while !spec.is_certificate(state.consistent())? {
        if state.count() >= limit {
            return Err(MatchError::QueryLimitExceeded { limit });
        }
        let q = questioner
            .next_query(spec, &state)
            .map_err(|e| MatchError::AgentFailed {
                agent: questioner.name(),
                source: e,
            })?;
        let resp = adversary
            .respond(spec, &state, q)
            .map_err(|e| MatchError::AgentFailed {
                agent: adversary.name(),
                source: e,
            })?;
        let before = state.current();
        state = apply_move(spec, &state, q, resp).map_err(|e| {
            let role = e.offender();
            MatchError::Forfeit {
                agent: match role {
                    Role::Questioner => questioner.name(),
                    Role::Adversary => adversary.name(),
                },
                role,
                source: e,
            }
        })?;
        events.push(TranscriptEvent {
            query: q,
            change: resp.change.map(|to| (before, to)),
            outcome: state.asked().last().expect("just pushed").1,
        });
    }
    Ok(Transcript {
        problem: spec.name().to_string(),
        k,
        initial_input: x0,
        events,
        final_state: state,
    })
}

#[cfg(test)]
mod tests;
