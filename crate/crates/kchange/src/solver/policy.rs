//! Optimal play extracted from the solved game: principal variations and
//! memo-backed optimal agents for both roles.
//!
//! Tie-breaking is fixed so that lines and caches are reproducible: lowest
//! query index first, then no-change before change, then lowest replacement
//! input index.

use crate::game::{
    apply_move, AdversaryResponse, Adversary, AgentError, GameState, ProblemSpec, Questioner,
    Transcript, TranscriptEvent,
};
use crate::set::IndexSet;
use crate::solver::{SolveError, Solver};
use std::sync::Arc;

impl Solver {
    /// Adversary's best achievable value once `q` is committed at the given
    /// position, together with the tiebroken optimal response (no-change
    /// preferred, then the lowest replacement input).
    pub fn best_response_to_query(
        &self,
        consistent: &IndexSet,
        current: usize,
        changes: u32,
        q: usize,
    ) -> (u32, AdversaryResponse) {
        let spec = self.spec();
        let s_yes = consistent.and(spec.yes_set(q));
        let s_no = consistent.and_not(spec.yes_set(q));
        let keep_side = if s_yes.contains(current) { &s_yes } else { &s_no };
        let keep_value = self.state_value(keep_side, current, changes);
        let mut best = (keep_value, AdversaryResponse::KEEP);
        if changes > 0 {
            for x in consistent.iter() {
                let side = if s_yes.contains(x) { &s_yes } else { &s_no };
                let v = self.state_value(side, x, changes - 1);
                if v > best.0 {
                    best = (v, AdversaryResponse::change_to(x));
                }
            }
        }
        best
    }

    /// Lowest-index query achieving the position value, with the value.
    fn best_query(&self, state: &GameState) -> Option<(usize, u32)> {
        self.best_query_with_budget(state, state.changes_left())
    }

    /// As [`Solver::best_query`] but valuing the position as if the
    /// Adversary had `budget` changes; lets a strategy play optimally for a
    /// hypothetical budget.
    pub fn best_query_with_budget(&self, state: &GameState, budget: u32) -> Option<(usize, u32)> {
        let spec = self.spec();
        let consistent = state.consistent();
        let budget = self.clamp_budget(budget);
        let value = self.state_value(consistent, state.current(), budget);
        (0..spec.num_queries())
            .filter(|&q| !state.was_asked(q) && !spec.is_determined(consistent, q))
            .find(|&q| {
                let (adv, _) =
                    self.best_response_to_query(consistent, state.current(), budget, q);
                1 + adv == value
            })
            .map(|q| (q, value))
    }

    /// One optimal line of play; requires the solve at `k` to complete
    /// exactly under the configured limits.
    pub fn principal_variation(&self, k: u32) -> Result<Transcript, SolveError> {
        let result = self.game_value(k);
        if !result.complete {
            return Err(SolveError::Incomplete {
                lo: result.lo,
                hi: result.hi,
            });
        }
        let spec = self.spec().clone();
        let all = spec.all_inputs();
        let c0 = self.clamp_budget(k);
        let x0 = (0..spec.num_inputs())
            .max_by_key(|&x| (self.state_value(&all, x, c0), std::cmp::Reverse(x)))
            .expect("validated spec has inputs");
        let mut state = GameState::initial(&spec, k, x0);
        let mut events = Vec::new();
        while !spec.is_certificate(state.consistent()).expect("nonempty") {
            let (q, _) = self
                .best_query(&state)
                .expect("non-certificate position has an optimal query");
            let (_, resp) = self.best_response_to_query(
                state.consistent(),
                state.current(),
                self.clamp_budget(state.changes_left()),
                q,
            );
            let before = state.current();
            state = apply_move(&spec, &state, q, resp).expect("optimal line is legal");
            events.push(TranscriptEvent {
                query: q,
                change: resp.change.map(|to| (before, to)),
                outcome: state.asked().last().expect("just pushed").1,
            });
        }
        debug_assert_eq!(events.len() as u32, result.exact());
        Ok(Transcript {
            problem: spec.name().to_string(),
            k,
            initial_input: x0,
            events,
            final_state: state,
        })
    }
}

/// Questioner realizing the game value from any reachable position, backed
/// by the shared solver memo.
#[derive(Clone)]
pub struct OptimalQuestioner {
    solver: Arc<Solver>,
}

impl Questioner for OptimalQuestioner {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn next_query(&mut self, spec: &ProblemSpec, state: &GameState) -> Result<usize, AgentError> {
        if spec.name() != self.solver.spec().name() {
            return Err(AgentError::ProblemMismatch {
                agent: self.name(),
                reason: format!(
                    "agent was solved for '{}', asked to play '{}'",
                    self.solver.spec().name(),
                    spec.name()
                ),
            });
        }
        self.solver
            .best_query(state)
            .map(|(q, _)| q)
            .ok_or_else(|| AgentError::NoMove {
                agent: self.name(),
                reason: "no undetermined query achieves the position value".into(),
            })
    }

    fn clone_box(&self) -> Box<dyn Questioner> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}

/// Adversary forcing the game value from any reachable position.
#[derive(Clone)]
pub struct OptimalAdversary {
    solver: Arc<Solver>,
}

impl Adversary for OptimalAdversary {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn initial_input(&mut self, spec: &ProblemSpec, k: u32) -> Result<usize, AgentError> {
        if spec.name() != self.solver.spec().name() {
            return Err(AgentError::ProblemMismatch {
                agent: self.name(),
                reason: format!(
                    "agent was solved for '{}', asked to play '{}'",
                    self.solver.spec().name(),
                    spec.name()
                ),
            });
        }
        let all = spec.all_inputs();
        let c0 = self.solver.clamp_budget(k);
        Ok((0..spec.num_inputs())
            .max_by_key(|&x| (self.solver.state_value(&all, x, c0), std::cmp::Reverse(x)))
            .expect("validated spec has inputs"))
    }

    fn respond(
        &mut self,
        _spec: &ProblemSpec,
        state: &GameState,
        q: usize,
    ) -> Result<AdversaryResponse, AgentError> {
        let (_, resp) = self.solver.best_response_to_query(
            state.consistent(),
            state.current(),
            state.changes_left(),
            q,
        );
        Ok(resp)
    }

    fn clone_box(&self) -> Box<dyn Adversary> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}

/// Optimal agents for both roles sharing one solver (and its memo).
pub fn optimal_policy(solver: &Arc<Solver>) -> (OptimalQuestioner, OptimalAdversary) {
    (
        OptimalQuestioner {
            solver: Arc::clone(solver),
        },
        OptimalAdversary {
            solver: Arc::clone(solver),
        },
    )
}
