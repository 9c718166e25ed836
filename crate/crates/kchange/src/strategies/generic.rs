//! Problem-independent adversaries and the phase-composition questioner.

use crate::game::{
    AdversaryResponse, Adversary, AgentError, GameState, ProblemSpec, Questioner,
};
use crate::solver::Solver;
use std::sync::Arc;

/// Commits to one input and never changes, whatever the budget: the
/// certificate-complexity baseline.
#[derive(Clone)]
pub struct StaticAdversary {
    initial: usize,
}

impl StaticAdversary {
    pub fn new(initial: usize) -> Self {
        StaticAdversary { initial }
    }
}

impl Adversary for StaticAdversary {
    fn name(&self) -> String {
        "static".into()
    }

    fn initial_input(&mut self, spec: &ProblemSpec, _k: u32) -> Result<usize, AgentError> {
        if self.initial < spec.num_inputs() {
            Ok(self.initial)
        } else {
            Err(AgentError::ProblemMismatch {
                agent: self.name(),
                reason: format!("initial input {} out of range", self.initial),
            })
        }
    }

    fn respond(
        &mut self,
        _spec: &ProblemSpec,
        _state: &GameState,
        _q: usize,
    ) -> Result<AdversaryResponse, AgentError> {
        Ok(AdversaryResponse::KEEP)
    }

    fn clone_box(&self) -> Box<dyn Adversary> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}

/// Plays the saturated-budget optimal adversary for as long as changes
/// remain, then answers statically: it forces at least
/// `min(k+1, unrestricted value)` queries against every questioner.
#[derive(Clone)]
pub struct StubbornAdversary {
    solver: Arc<Solver>,
}

impl StubbornAdversary {
    pub fn new(solver: &Arc<Solver>) -> Self {
        StubbornAdversary {
            solver: Arc::clone(solver),
        }
    }
}

impl Adversary for StubbornAdversary {
    fn name(&self) -> String {
        "stubborn".into()
    }

    fn initial_input(&mut self, spec: &ProblemSpec, _k: u32) -> Result<usize, AgentError> {
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
        let saturated = spec.num_queries() as u32;
        Ok((0..spec.num_inputs())
            .max_by_key(|&x| {
                (
                    self.solver.state_value(&all, x, saturated),
                    std::cmp::Reverse(x),
                )
            })
            .expect("validated spec has inputs"))
    }

    fn respond(
        &mut self,
        spec: &ProblemSpec,
        state: &GameState,
        q: usize,
    ) -> Result<AdversaryResponse, AgentError> {
        let saturated = spec.num_queries() as u32;
        let (_, resp) = self.solver.best_response_to_query(
            state.consistent(),
            state.current(),
            saturated,
            q,
        );
        // The saturated policy may want a change the real budget cannot pay
        // for; the documented fallback is the static answer.
        if resp.change.is_some() && state.changes_left() == 0 {
            return Ok(AdversaryResponse::KEEP);
        }
        Ok(resp)
    }

    fn clone_box(&self) -> Box<dyn Adversary> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}

/// Runs optimal play for an assumed budget `j_1`; when the Adversary is seen
/// to have changed more than `j_1` times, moves on to the `j_2` phase, and
/// so on. When every phase's assumption has been broken (possible only if
/// the budgets sum below the real `k`), it falls back to true optimal play.
#[derive(Clone)]
pub struct ComposeQuestioner {
    budgets: Vec<u32>,
    k: u32,
    solver: Arc<Solver>,
}

impl ComposeQuestioner {
    pub fn new(budgets: Vec<u32>, k: u32, solver: &Arc<Solver>) -> Self {
        ComposeQuestioner {
            budgets,
            k,
            solver: Arc::clone(solver),
        }
    }

    /// Current phase and the changes already charged to earlier phases: the
    /// phase index is the smallest `i` with `sum_{t<=i} (j_t + 1)` beyond
    /// the observed change count.
    fn phase(&self, changes_used: u32) -> Option<(usize, u32)> {
        let mut charged = 0u32;
        for (i, &j) in self.budgets.iter().enumerate() {
            if charged + j + 1 > changes_used {
                return Some((i, charged));
            }
            charged += j + 1;
        }
        None
    }
}

impl Questioner for ComposeQuestioner {
    fn name(&self) -> String {
        format!(
            "compose:{}",
            self.budgets
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
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
        let changes_used = self.k.saturating_sub(state.changes_left());
        let assumed = match self.phase(changes_used) {
            Some((i, charged)) => self.budgets[i] - (changes_used - charged),
            None => state.changes_left(),
        };
        self.solver
            .best_query_with_budget(state, assumed)
            .map(|(q, _)| q)
            .ok_or_else(|| AgentError::NoMove {
                agent: self.name(),
                reason: "no undetermined query achieves the assumed-budget value".into(),
            })
    }

    fn clone_box(&self) -> Box<dyn Questioner> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(u64::from(self.k))
    }
}
