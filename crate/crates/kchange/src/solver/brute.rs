//! Memo-free brute-force value of the zero-change game, kept independent of
//! the minimax solver: plain vectors, direct oracle calls, no shared memo,
//! no consistent-set bit tricks. Used as an oracle to cross-check
//! `game_value(spec, 0)`.

use crate::game::{Outcome, ProblemSpec};

/// Worst input's shortest certificate: max over inputs of the minimum number
/// of queries pinning the target value when the answers come from that input.
pub fn zero_change_value(spec: &ProblemSpec) -> u32 {
    let all: Vec<usize> = (0..spec.num_inputs()).collect();
    let mut worst = 0u32;
    for x in 0..spec.num_inputs() {
        // Iterative deepening keeps the plain recursion shallow.
        let mut depth = worst; // certificates shorter than the max so far don't matter
        let value = loop {
            if let Some(v) = certificate_within(spec, &all, x, depth) {
                break v;
            }
            depth += 1;
        };
        worst = worst.max(value);
    }
    worst
}

fn all_same_target(spec: &ProblemSpec, consistent: &[usize]) -> bool {
    let first = spec.target(consistent[0]);
    consistent.iter().all(|&y| spec.target(y) == first)
}

fn certificate_within(
    spec: &ProblemSpec,
    consistent: &[usize],
    x: usize,
    budget: u32,
) -> Option<u32> {
    if all_same_target(spec, consistent) {
        return Some(0);
    }
    if budget == 0 {
        return None;
    }
    let mut best: Option<u32> = None;
    for q in 0..spec.num_queries() {
        let answer = spec.oracle(x, q);
        let narrowed: Vec<usize> = consistent
            .iter()
            .copied()
            .filter(|&y| spec.oracle(y, q) == answer)
            .collect();
        if narrowed.len() == consistent.len() {
            continue; // query tells this input nothing
        }
        let inner_budget = best.map_or(budget, |b| b.saturating_sub(1)).saturating_sub(1);
        if let Some(v) = certificate_within(spec, &narrowed, x, inner_budget) {
            let total = v + 1;
            if best.is_none_or(|b| total < b) {
                best = Some(total);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::ProblemSpec;

    #[test]
    fn singleton_membership_problem() {
        // Identify x among n elements with n membership queries: the
        // certificate for x is the single query {x}.
        let spec = ProblemSpec::new(
            "singletons",
            (0..5).map(|i| i.to_string()).collect(),
            (0..5).map(|i| format!("{{{i}}}")).collect(),
            |x, q| Outcome::from_bool(x == q),
            |x| x as u64,
        );
        assert_eq!(zero_change_value(&spec), 1);
    }

    #[test]
    fn parity_needs_all_bits() {
        // Two-bit parity: every certificate must fix both bits.
        let spec = ProblemSpec::new(
            "parity",
            (0..4).map(|i| format!("{i:02b}")).collect(),
            vec!["bit0".into(), "bit1".into()],
            |x, q| Outcome::from_bool(x >> q & 1 == 1),
            |x| (x.count_ones() % 2) as u64,
        );
        assert_eq!(zero_change_value(&spec), 2);
    }
}
