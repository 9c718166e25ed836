//! The named Questioner and Adversary strategies, one family per problem
//! kind plus generic families that work everywhere.
//!
//! All agents here are pure functions of the observed game state (plus their
//! construction parameters), so they clone cheaply and expose a constant
//! state fingerprint for best-response memoization.
//!
//! | name                   | role       | problems      |
//! |------------------------|------------|---------------|
//! | `halving`              | questioner | search        |
//! | `chain-repair`         | questioner | sorting       |
//! | `chain`                | questioner | minmax        |
//! | `spanning-forest`      | questioner | connectivity  |
//! | `compose:j1,j2,...`    | questioner | any           |
//! | `optimal`              | either     | any           |
//! | `half-split`           | adversary  | gt-atmost     |
//! | `interleave`           | adversary  | sorting       |
//! | `balanced`             | adversary  | sorting (exploratory) |
//! | `out-avoid`            | adversary  | minmax        |
//! | `turan-complement`     | adversary  | connectivity  |
//! | `no-unless-disconnect` | adversary  | connectivity  |
//! | `static`               | adversary  | any           |
//! | `stubborn`             | adversary  | any           |

mod connectivity;
mod generic;
mod gt;
mod minmax;
mod search;
mod sorting;

pub use connectivity::{ConnectivityAdversary, SpanningForestQuestioner};
pub use generic::{ComposeQuestioner, StaticAdversary, StubbornAdversary};
pub use gt::HalfSplitAdversary;
pub use minmax::{minmax_reorder, MinMaxChainQuestioner, MinMaxPartition, OutAvoidAdversary};
pub use search::HalvingQuestioner;
pub use sorting::{
    sorting_interleave_reorder, BalancedAdversary, ChainRepairQuestioner, InterleaveAdversary,
};

use crate::game::{AgentError, Adversary, GameState, ProblemSpec, Questioner};
use crate::problems::{pairs, ProblemKind};
use crate::solver::{optimal_policy, Solver};
use std::sync::Arc;

pub const QUESTIONER_NAMES: &[&str] = &[
    "halving",
    "chain-repair",
    "chain",
    "spanning-forest",
    "compose:<j1,j2,...>",
    "optimal",
];

pub const ADVERSARY_NAMES: &[&str] = &[
    "half-split",
    "interleave",
    "balanced",
    "out-avoid",
    "turan-complement",
    "no-unless-disconnect",
    "static",
    "stubborn",
    "optimal",
];

fn mismatch(name: &str, kind: ProblemKind, expected: &str) -> AgentError {
    AgentError::ProblemMismatch {
        agent: name.to_string(),
        reason: format!("'{name}' plays {expected}, not {}", kind.family()),
    }
}

/// Builds a questioner by its stable name. `k` is the match's change budget
/// (used by `compose`); `solver` backs the policy-based families.
pub fn questioner_by_name(
    name: &str,
    kind: ProblemKind,
    k: u32,
    solver: &Arc<Solver>,
) -> Result<Box<dyn Questioner>, AgentError> {
    let n = kind.n();
    match name {
        "halving" => match kind {
            ProblemKind::Search { .. } => Ok(Box::new(HalvingQuestioner::new(n))),
            _ => Err(mismatch(name, kind, "search")),
        },
        "chain-repair" => match kind {
            ProblemKind::Sorting { .. } => Ok(Box::new(ChainRepairQuestioner::new(n))),
            _ => Err(mismatch(name, kind, "sorting")),
        },
        "chain" => match kind {
            ProblemKind::MinMax { .. } => Ok(Box::new(MinMaxChainQuestioner::new(n))),
            _ => Err(mismatch(name, kind, "minmax")),
        },
        "spanning-forest" => match kind {
            ProblemKind::Connectivity { .. } => Ok(Box::new(SpanningForestQuestioner::new(n))),
            _ => Err(mismatch(name, kind, "connectivity")),
        },
        "optimal" => Ok(Box::new(optimal_policy(solver).0)),
        _ => {
            if let Some(args) = name.strip_prefix("compose:") {
                let budgets: Result<Vec<u32>, _> =
                    args.split(',').map(|p| p.trim().parse::<u32>()).collect();
                match budgets {
                    Ok(budgets) if !budgets.is_empty() => {
                        Ok(Box::new(ComposeQuestioner::new(budgets, k, solver)))
                    }
                    _ => Err(AgentError::ProblemMismatch {
                        agent: name.to_string(),
                        reason: "compose wants a comma-separated list of budgets".to_string(),
                    }),
                }
            } else {
                Err(AgentError::ProblemMismatch {
                    agent: name.to_string(),
                    reason: format!("unknown questioner; known: {}", QUESTIONER_NAMES.join(", ")),
                })
            }
        }
    }
}

/// Builds an adversary by its stable name.
pub fn adversary_by_name(
    name: &str,
    kind: ProblemKind,
    _k: u32,
    solver: &Arc<Solver>,
) -> Result<Box<dyn Adversary>, AgentError> {
    let n = kind.n();
    match name {
        "half-split" => match kind {
            ProblemKind::GtAtMost { d, .. } if d >= 1 => {
                Ok(Box::new(HalfSplitAdversary::new(n, d)))
            }
            _ => Err(mismatch(name, kind, "gt-atmost (d >= 1)")),
        },
        "interleave" => match kind {
            ProblemKind::Sorting { .. } => Ok(Box::new(InterleaveAdversary::new(n))),
            _ => Err(mismatch(name, kind, "sorting")),
        },
        "balanced" => match kind {
            ProblemKind::Sorting { .. } => Ok(Box::new(BalancedAdversary::new(n))),
            _ => Err(mismatch(name, kind, "sorting")),
        },
        "out-avoid" => match kind {
            ProblemKind::MinMax { .. } => Ok(Box::new(OutAvoidAdversary::new(n))),
            _ => Err(mismatch(name, kind, "minmax")),
        },
        "turan-complement" => match kind {
            ProblemKind::Connectivity { .. } => {
                Ok(Box::new(ConnectivityAdversary::turan_complement(n)))
            }
            _ => Err(mismatch(name, kind, "connectivity")),
        },
        "no-unless-disconnect" => match kind {
            ProblemKind::Connectivity { .. } => Ok(Box::new(ConnectivityAdversary::evasive(n))),
            _ => Err(mismatch(name, kind, "connectivity")),
        },
        "static" => Ok(Box::new(StaticAdversary::new(0))),
        "stubborn" => Ok(Box::new(StubbornAdversary::new(solver))),
        "optimal" => Ok(Box::new(optimal_policy(solver).1)),
        _ => Err(AgentError::ProblemMismatch {
            agent: name.to_string(),
            reason: format!("unknown adversary; known: {}", ADVERSARY_NAMES.join(", ")),
        }),
    }
}

/// Fixed order relations `(smaller, larger)` from the asked pair queries.
fn fixed_relations(n: usize, state: &GameState) -> Vec<(usize, usize)> {
    let ps = pairs(n);
    state
        .asked()
        .iter()
        .map(|&(q, o)| {
            let (i, j) = ps[q];
            if o.as_bool() {
                (i, j)
            } else {
                (j, i)
            }
        })
        .collect()
}

/// Shape check for agents bound to pair-query problems.
fn expect_pair_problem(agent: &str, n: usize, spec: &ProblemSpec) -> Result<(), AgentError> {
    if spec.num_queries() == n * (n - 1) / 2 && n >= 2 {
        Ok(())
    } else {
        Err(AgentError::ProblemMismatch {
            agent: agent.to_string(),
            reason: format!(
                "expected {} pair queries for n={n}, spec has {}",
                n * (n - 1) / 2,
                spec.num_queries()
            ),
        })
    }
}

#[cfg(test)]
mod tests;
