//! Halving questioner for the search problem.

use crate::game::{AgentError, GameState, ProblemSpec, Questioner};

/// Asks the lowest-index subset containing exactly half (rounded up) of the
/// still-consistent inputs. Splits survive input changes, so the certificate
/// arrives within ceil(log2 n) queries whatever the Adversary does.
#[derive(Clone)]
pub struct HalvingQuestioner {
    n: usize,
}

impl HalvingQuestioner {
    pub fn new(n: usize) -> Self {
        HalvingQuestioner { n }
    }
}

impl Questioner for HalvingQuestioner {
    fn name(&self) -> String {
        "halving".into()
    }

    fn next_query(&mut self, spec: &ProblemSpec, state: &GameState) -> Result<usize, AgentError> {
        if spec.num_inputs() != self.n || spec.num_queries() != 1usize << self.n {
            return Err(AgentError::ProblemMismatch {
                agent: self.name(),
                reason: format!(
                    "expected a subset-query search problem on {} elements",
                    self.n
                ),
            });
        }
        let live = state.consistent().len();
        let want = live.div_ceil(2);
        (0..spec.num_queries())
            .find(|&q| {
                !state.was_asked(q)
                    && state.consistent().intersection_len(spec.yes_set(q)) == want
            })
            .ok_or_else(|| AgentError::NoMove {
                agent: self.name(),
                reason: "no unasked subset splits the consistent set in half".into(),
            })
    }

    fn clone_box(&self) -> Box<dyn Questioner> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}
