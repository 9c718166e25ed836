//! Best-response values against a fixed agent of either role.
//!
//! Against a fixed Adversary we minimize match length over every Questioner
//! behavior; the result is the guarantee that adversary proves (a lower bound
//! on the game value). Against a fixed Questioner we maximize over every
//! Adversary behavior with at most `k` changes (an upper-bound guarantee).
//!
//! Agents are cloned at each branch point, so their internal state rewinds
//! with the search. Memoization is keyed on the full observable position
//! (consistent set, asked-query mask, live input, changes left) plus the
//! agent's state fingerprint, and is skipped for agents that do not expose
//! one.

use crate::game::{
    apply_move, AdversaryResponse, Adversary, GameState, MatchError, ProblemSpec, Questioner, Role,
};
use crate::solver::SolveResult;
use std::collections::HashMap;
use std::time::{Duration, Instant};

#[derive(Clone, Debug)]
pub struct BestResponseOptions {
    pub node_cap: Option<u64>,
    pub time_cap: Option<Duration>,
    /// Let the best-responding Questioner ask determined queries too; they
    /// never shrink the consistent set, but they can bait a suboptimal
    /// adversary into wasting changes.
    pub exploit_determined: bool,
    /// Query budget; defaults to the query count, which always suffices.
    pub max_queries: Option<u32>,
}

impl Default for BestResponseOptions {
    fn default() -> Self {
        BestResponseOptions {
            node_cap: None,
            time_cap: None,
            exploit_determined: true,
            max_queries: None,
        }
    }
}

enum BrErr {
    Abort,
    Match(MatchError),
}

impl From<MatchError> for BrErr {
    fn from(e: MatchError) -> Self {
        BrErr::Match(e)
    }
}

#[derive(Clone, Copy, Default)]
struct Entry {
    exact: Option<u32>,
    /// Proven strict lower bound: the true value exceeds this budget.
    more_than: u32,
}

#[derive(PartialEq, Eq, Hash)]
struct Key {
    consistent: Box<[u64]>,
    asked: Box<[u64]>,
    current: u32,
    changes: u32,
    agent_fp: u64,
}

struct Ctx<'a> {
    spec: &'a ProblemSpec,
    opts: &'a BestResponseOptions,
    memo: HashMap<Key, Entry>,
    nodes: u64,
    deadline: Option<Instant>,
}

impl Ctx<'_> {
    fn tick(&mut self) -> Result<(), BrErr> {
        self.nodes += 1;
        if let Some(cap) = self.opts.node_cap {
            if self.nodes > cap {
                return Err(BrErr::Abort);
            }
        }
        if self.nodes % 1024 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(BrErr::Abort);
                }
            }
        }
        Ok(())
    }

    fn key(&self, state: &GameState, fp: u64) -> Key {
        Key {
            consistent: state.consistent().words().into(),
            asked: state.asked_mask().words().into(),
            current: state.current() as u32,
            changes: state.changes_left(),
            agent_fp: fp,
        }
    }

    fn candidate_queries(&self, state: &GameState) -> Vec<usize> {
        (0..self.spec.num_queries())
            .filter(|&q| {
                !state.was_asked(q)
                    && (self.opts.exploit_determined
                        || !self.spec.is_determined(state.consistent(), q))
            })
            .collect()
    }

    /// Shortest finish within `budget` queries against the fixed adversary,
    /// or `None` if every line exceeds the budget.
    fn min_vs_adversary(
        &mut self,
        state: &GameState,
        adversary: &dyn Adversary,
        budget: u32,
    ) -> Result<Option<u32>, BrErr> {
        if self
            .spec
            .is_certificate(state.consistent())
            .map_err(MatchError::Game)?
        {
            return Ok(Some(0));
        }
        if budget == 0 {
            return Ok(None);
        }
        let fp = adversary.state_fingerprint();
        let key = fp.map(|fp| self.key(state, fp));
        if let Some(entry) = key.as_ref().and_then(|k| self.memo.get(k)) {
            if let Some(v) = entry.exact {
                return Ok((v <= budget).then_some(v));
            }
            if entry.more_than >= budget {
                return Ok(None);
            }
        }
        self.tick()?;

        let mut best: Option<u32> = None;
        for q in self.candidate_queries(state) {
            // Only lines strictly shorter than the best so far matter.
            let inner_budget = best.map_or(budget, |b| b - 1);
            if inner_budget == 0 {
                break;
            }
            let mut adv = adversary.clone_box();
            let resp = adv
                .respond(self.spec, state, q)
                .map_err(|e| MatchError::AgentFailed {
                    agent: adversary.name(),
                    source: e,
                })?;
            let next = apply_move(self.spec, state, q, resp).map_err(|e| {
                BrErr::Match(MatchError::Forfeit {
                    agent: adversary.name(),
                    role: Role::Adversary,
                    source: e,
                })
            })?;
            if let Some(v) = self.min_vs_adversary(&next, adv.as_ref(), inner_budget - 1)? {
                best = Some(v + 1);
            }
        }

        if let Some(k) = key {
            let entry = self.memo.entry(k).or_default();
            match best {
                Some(v) => entry.exact = Some(v),
                None => entry.more_than = entry.more_than.max(budget),
            }
        }
        Ok(best)
    }

    /// Longest finish the Adversary can force against the fixed questioner.
    fn max_vs_questioner(
        &mut self,
        state: &GameState,
        questioner: &dyn Questioner,
    ) -> Result<u32, BrErr> {
        if self
            .spec
            .is_certificate(state.consistent())
            .map_err(MatchError::Game)?
        {
            return Ok(0);
        }
        if state.count() >= self.opts.max_queries.unwrap_or(self.spec.num_queries() as u32) {
            return Err(BrErr::Match(MatchError::QueryLimitExceeded {
                limit: self.opts.max_queries.unwrap_or(self.spec.num_queries() as u32),
            }));
        }
        let fp = questioner.state_fingerprint();
        let key = fp.map(|fp| self.key(state, fp));
        if let Some(entry) = key.as_ref().and_then(|k| self.memo.get(k)) {
            if let Some(v) = entry.exact {
                return Ok(v);
            }
        }
        self.tick()?;

        let mut agent = questioner.clone_box();
        let q = agent
            .next_query(self.spec, state)
            .map_err(|e| MatchError::AgentFailed {
                agent: questioner.name(),
                source: e,
            })?;

        let mut responses = vec![AdversaryResponse::KEEP];
        if state.changes_left() > 0 {
            responses.extend(state.consistent().iter().map(AdversaryResponse::change_to));
        }
        let mut best = 0u32;
        for resp in responses {
            let next = apply_move(self.spec, state, q, resp).map_err(|e| {
                BrErr::Match(MatchError::Forfeit {
                    agent: questioner.name(),
                    role: Role::Questioner,
                    source: e,
                })
            })?;
            let v = 1 + self.max_vs_questioner(&next, agent.as_ref())?;
            best = best.max(v);
        }

        if let Some(k) = key {
            self.memo.entry(k).or_default().exact = Some(best);
        }
        Ok(best)
    }
}

fn finish(
    spec: &ProblemSpec,
    k: u32,
    start: Instant,
    outcome: Result<(u32, u32), (u32, u32)>,
    ctx: &Ctx<'_>,
) -> SolveResult {
    let (complete, (lo, hi)) = match outcome {
        Ok(bounds) => (true, bounds),
        Err(bounds) => (false, bounds),
    };
    SolveResult {
        problem: spec.name().to_string(),
        k,
        lo,
        hi,
        complete,
        nodes_expanded: ctx.nodes,
        memo_entries: ctx.memo.len() as u64,
        elapsed: start.elapsed(),
        pv: None,
    }
}

/// Minimum match length any Questioner can force against this adversary:
/// the lower-bound guarantee the adversary strategy proves.
pub fn value_against_adversary(
    spec: &ProblemSpec,
    k: u32,
    adversary: &dyn Adversary,
    opts: &BestResponseOptions,
) -> Result<SolveResult, MatchError> {
    let start = Instant::now();
    let mut ctx = Ctx {
        spec,
        opts,
        memo: HashMap::new(),
        nodes: 0,
        deadline: opts.time_cap.map(|cap| start + cap),
    };
    let budget = opts.max_queries.unwrap_or(spec.num_queries() as u32);
    let mut adv = adversary.clone_box();
    let x0 = adv
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
    let state = GameState::initial(spec, k, x0);
    match ctx.min_vs_adversary(&state, adv.as_ref(), budget) {
        Ok(Some(v)) => Ok(finish(spec, k, start, Ok((v, v)), &ctx)),
        Ok(None) => Ok(finish(spec, k, start, Err((budget + 1, budget + 1)), &ctx)),
        Err(BrErr::Abort) => Ok(finish(spec, k, start, Err((0, budget)), &ctx)),
        Err(BrErr::Match(e)) => Err(e),
    }
}

/// Maximum match length the Adversary can force against this questioner with
/// at most `k` changes: the upper-bound guarantee the questioner strategy
/// proves. The maximization includes the Adversary's initial-input choice.
pub fn value_against_questioner(
    spec: &ProblemSpec,
    k: u32,
    questioner: &dyn Questioner,
    opts: &BestResponseOptions,
) -> Result<SolveResult, MatchError> {
    let start = Instant::now();
    let mut ctx = Ctx {
        spec,
        opts,
        memo: HashMap::new(),
        nodes: 0,
        deadline: opts.time_cap.map(|cap| start + cap),
    };
    let mut best = 0u32;
    for x0 in 0..spec.num_inputs() {
        let state = GameState::initial(spec, k, x0);
        match ctx.max_vs_questioner(&state, questioner) {
            Ok(v) => best = best.max(v),
            Err(BrErr::Abort) => {
                let hi = opts.max_queries.unwrap_or(spec.num_queries() as u32);
                return Ok(finish(spec, k, start, Err((best, hi)), &ctx));
            }
            Err(BrErr::Match(e)) => return Err(e),
        }
    }
    Ok(finish(spec, k, start, Ok((best, best)), &ctx))
}
