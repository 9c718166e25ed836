//! Group-testing adversary for the at-most-d problem.

use crate::game::{AdversaryResponse, Adversary, AgentError, GameState, ProblemSpec};
use crate::problems::gt_input_masks;

/// Majority-zone adversary: it maintains a shrinking zone known to hold
/// every defective. A query is answered YES exactly when it covers at least
/// half of the zone; while changes remain, each answer comes with a jump to
/// the input whose defectives are the lowest-labelled zone elements, keeping
/// the zone claim true. After at most k such answers a zone of size more
/// than `d-1` survives (for n > (d-1)·2^k), and the static endgame still
/// needs one query per defective.
#[derive(Clone)]
pub struct HalfSplitAdversary {
    n: usize,
    d: usize,
}

impl HalfSplitAdversary {
    pub fn new(n: usize, d: usize) -> Self {
        HalfSplitAdversary { n, d }
    }

    fn input_index(&self, spec: &ProblemSpec, mask: usize) -> Option<usize> {
        let masks = gt_input_masks(self.n, self.d, false);
        let idx = masks.iter().position(|&m| m == mask)?;
        (idx < spec.num_inputs()).then_some(idx)
    }

    /// Replays the zone over the fixed answers: shrink to the covered part
    /// on YES, cut the covered part away on NO.
    fn zone(&self, state: &GameState) -> usize {
        let mut zone = (1usize << self.n) - 1;
        for &(q, o) in state.asked() {
            if o.as_bool() {
                zone &= q;
            } else {
                zone &= !q;
            }
            if zone == 0 {
                break;
            }
        }
        zone
    }

    fn lowest_elements(mask: usize, take: usize) -> usize {
        let mut out = 0usize;
        let mut left = take;
        let mut m = mask;
        while left > 0 && m != 0 {
            let bit = m & m.wrapping_neg();
            out |= bit;
            m ^= bit;
            left -= 1;
        }
        out
    }
}

impl Adversary for HalfSplitAdversary {
    fn name(&self) -> String {
        "half-split".into()
    }

    fn initial_input(&mut self, spec: &ProblemSpec, _k: u32) -> Result<usize, AgentError> {
        let expected = gt_input_masks(self.n, self.d, false).len();
        if spec.num_inputs() != expected || spec.num_queries() != 1 << self.n {
            return Err(AgentError::ProblemMismatch {
                agent: self.name(),
                reason: format!(
                    "expected an at-most-{} defectives problem on {} elements",
                    self.d, self.n
                ),
            });
        }
        let defectives = Self::lowest_elements((1 << self.n) - 1, self.d.min(self.n));
        self.input_index(spec, defectives)
            .ok_or_else(|| AgentError::NoMove {
                agent: self.name(),
                reason: "initial defective set not found in the input space".into(),
            })
    }

    fn respond(
        &mut self,
        spec: &ProblemSpec,
        state: &GameState,
        q: usize,
    ) -> Result<AdversaryResponse, AgentError> {
        if state.changes_left() == 0 {
            return Ok(AdversaryResponse::KEEP);
        }
        let zone = self.zone(state);
        if zone == 0 {
            return Ok(AdversaryResponse::KEEP);
        }
        let covered = (zone & q).count_ones() as usize;
        let zone_size = zone.count_ones() as usize;
        let say_yes = 2 * covered >= zone_size;
        let new_zone = if say_yes { zone & q } else { zone & !q };
        debug_assert!(new_zone != 0, "half of a nonempty zone is nonempty");
        // All defectives move into the surviving zone; when a YES is owed the
        // set must be nonempty, which d >= 1 guarantees.
        let defectives = Self::lowest_elements(new_zone, self.d.min(new_zone.count_ones() as usize));
        match self.input_index(spec, defectives) {
            Some(x) if state.consistent().contains(x) => Ok(AdversaryResponse::change_to(x)),
            _ => Ok(AdversaryResponse::KEEP),
        }
    }

    fn clone_box(&self) -> Box<dyn Adversary> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}
