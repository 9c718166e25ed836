//! Sorting-family strategies: the adjacency-chain questioner (with repair
//! after input changes) and the interleaving adversary.

use super::{expect_pair_problem, fixed_relations};
use crate::game::{
    AdversaryResponse, Adversary, AgentError, GameState, ProblemSpec, Questioner,
};
use crate::problems::{pair_index, pairs, perm_lex_rank, perm_of_rank};

/// Asks the first adjacent pair of the live order whose relation is not yet
/// fixed, scanning from the bottom. Before any change this builds the
/// smallest-to-largest chain; after a change it walks the new order and
/// fills exactly the missing adjacencies, which is the repair schedule. The
/// same rule is the straightforward play at every change budget.
#[derive(Clone)]
pub struct ChainRepairQuestioner {
    n: usize,
}

impl ChainRepairQuestioner {
    pub fn new(n: usize) -> Self {
        ChainRepairQuestioner { n }
    }
}

impl Questioner for ChainRepairQuestioner {
    fn name(&self) -> String {
        "chain-repair".into()
    }

    fn next_query(&mut self, spec: &ProblemSpec, state: &GameState) -> Result<usize, AgentError> {
        expect_pair_problem(&self.name(), self.n, spec)?;
        let order = perm_of_rank(self.n, state.current());
        for t in 0..self.n - 1 {
            let (a, b) = (order[t].min(order[t + 1]), order[t].max(order[t + 1]));
            let q = pair_index(self.n, a, b);
            if !spec.is_determined(state.consistent(), q) {
                return Ok(q);
            }
        }
        Err(AgentError::NoMove {
            agent: self.name(),
            reason: "every adjacent pair of the live order is already fixed".into(),
        })
    }

    fn clone_box(&self) -> Box<dyn Questioner> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}

/// Interleaves the components of the queried-pair graph into one total order
/// in which no two elements of the same component are adjacent.
///
/// The largest chain `a_1 < ... < a_K` hosts the rest: the remaining chains
/// are merged into one sequence by ascending head label, its first `K-1`
/// entries land one per gap `(a_i, a_{i+1})`, and any overflow stacks above
/// `a_K` in merge order. Returns `None` when the placement leaves two
/// same-chain elements adjacent (for instance when one chain covers
/// everything); callers fall back or answer without change.
pub fn sorting_interleave_reorder(chains: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n: usize = chains.iter().map(Vec::len).sum();
    if chains.iter().all(|c| c.len() == 1) {
        let mut order: Vec<usize> = chains.iter().map(|c| c[0]).collect();
        order.sort_unstable();
        return Some(order);
    }
    let a_idx = (0..chains.len())
        .max_by_key(|&i| (chains[i].len(), std::cmp::Reverse(chains[i].iter().min().copied())))?;
    let a = &chains[a_idx];
    let k = a.len();

    // Merge the other chains by ascending head label, preserving each
    // chain's internal order.
    let mut cursors: Vec<(usize, usize)> = (0..chains.len())
        .filter(|&i| i != a_idx)
        .map(|i| (i, 0))
        .collect();
    let mut merged: Vec<usize> = Vec::with_capacity(n - k);
    while let Some(slot) = cursors
        .iter()
        .enumerate()
        .filter(|(_, &(ci, at))| at < chains[ci].len())
        .min_by_key(|(_, &(ci, at))| chains[ci][at])
        .map(|(slot, _)| slot)
    {
        let (ci, at) = cursors[slot];
        merged.push(chains[ci][at]);
        cursors[slot].1 += 1;
    }

    let mut order: Vec<usize> = Vec::with_capacity(n);
    for (i, &ai) in a.iter().enumerate() {
        order.push(ai);
        if i + 1 < k {
            if let Some(&b) = merged.get(i) {
                order.push(b);
            }
        }
    }
    order.extend(merged.iter().skip(k.saturating_sub(1)));

    // Validity: no two elements of one chain may end up adjacent.
    let mut chain_of = vec![usize::MAX; n];
    for (ci, chain) in chains.iter().enumerate() {
        for &e in chain {
            chain_of[e] = ci;
        }
    }
    let separated = order
        .windows(2)
        .all(|w| chain_of[w[0]] != chain_of[w[1]] || chains[chain_of[w[0]]].len() == 1);
    separated.then_some(order)
}

/// Chains of the queried-pair graph: one lowest-label-first topological
/// extension per connected component, singletons included, ordered by
/// smallest member.
fn component_chains(n: usize, relations: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for &(u, v) in relations {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut members: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        members.entry(r).or_default().push(v);
    }
    let mut chains: Vec<Vec<usize>> = members
        .into_values()
        .map(|elems| topo_chain(&elems, relations))
        .collect();
    chains.sort_by_key(|c| c.iter().min().copied());
    chains
}

/// Lowest-label-first topological extension of the fixed relations over
/// `elems`.
fn topo_chain(elems: &[usize], relations: &[(usize, usize)]) -> Vec<usize> {
    let mut chain = Vec::with_capacity(elems.len());
    let mut done: std::collections::BTreeSet<usize> = Default::default();
    while done.len() < elems.len() {
        let next = elems
            .iter()
            .copied()
            .filter(|e| !done.contains(e))
            .find(|&e| {
                relations
                    .iter()
                    .all(|&(lo, hi)| hi != e || done.contains(&lo) || !elems.contains(&lo))
            })
            .expect("fixed answers are acyclic");
        done.insert(next);
        chain.push(next);
    }
    chain
}

/// Answers the opening queries unchanged, then spends one change to reorder
/// the input so that none of the previously fixed pairs stay adjacent,
/// forcing a near-full repair.
#[derive(Clone)]
pub struct InterleaveAdversary {
    n: usize,
}

impl InterleaveAdversary {
    pub fn new(n: usize) -> Self {
        InterleaveAdversary { n }
    }

    fn trigger_count(&self) -> u32 {
        (self.n.div_ceil(2) - 1) as u32
    }
}

/// First consistent input (by index) in which no fixed pair is adjacent.
fn fallback_scan(n: usize, state: &GameState) -> Option<usize> {
    let ps = pairs(n);
    let fixed: Vec<(usize, usize)> = state.asked().iter().map(|&(q, _)| ps[q]).collect();
    state.consistent().iter().find(|&x| {
        let order = perm_of_rank(n, x);
        let mut pos = vec![0usize; n];
        for (p, &e) in order.iter().enumerate() {
            pos[e] = p;
        }
        fixed
            .iter()
            .all(|&(i, j)| pos[i].abs_diff(pos[j]) != 1)
    })
}

impl Adversary for InterleaveAdversary {
    fn name(&self) -> String {
        "interleave".into()
    }

    fn initial_input(&mut self, spec: &ProblemSpec, _k: u32) -> Result<usize, AgentError> {
        expect_pair_problem(&self.name(), self.n, spec)?;
        Ok(0) // the identity order
    }

    fn respond(
        &mut self,
        _spec: &ProblemSpec,
        state: &GameState,
        _q: usize,
    ) -> Result<AdversaryResponse, AgentError> {
        if state.changes_left() == 0 || state.count() != self.trigger_count() {
            return Ok(AdversaryResponse::KEEP);
        }
        let chains = component_chains(self.n, &fixed_relations(self.n, state));
        let target = sorting_interleave_reorder(&chains)
            .map(|order| perm_lex_rank(&order))
            .filter(|&x| state.consistent().contains(x))
            .or_else(|| fallback_scan(self.n, state));
        Ok(match target {
            Some(x) => AdversaryResponse::change_to(x),
            None => AdversaryResponse::KEEP,
        })
    }

    fn clone_box(&self) -> Box<dyn Adversary> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}

/// Exploratory adversary for larger change budgets: it waits as long as a
/// fully separating reorder still exists, and spends a change at the last
/// moment one would survive the pending answer.
#[derive(Clone)]
pub struct BalancedAdversary {
    n: usize,
}

impl BalancedAdversary {
    pub fn new(n: usize) -> Self {
        BalancedAdversary { n }
    }
}

impl Adversary for BalancedAdversary {
    fn name(&self) -> String {
        "balanced".into()
    }

    fn initial_input(&mut self, spec: &ProblemSpec, _k: u32) -> Result<usize, AgentError> {
        expect_pair_problem(&self.name(), self.n, spec)?;
        Ok(0)
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
        let now = fallback_scan(self.n, state);
        if now.is_none() {
            return Ok(AdversaryResponse::KEEP);
        }
        // Simulate answering without change; while a separating reorder
        // would still exist afterwards, keep waiting.
        let after = crate::game::apply_move(spec, state, q, AdversaryResponse::KEEP)
            .ok()
            .and_then(|next| fallback_scan(self.n, &next));
        if after.is_some() {
            return Ok(AdversaryResponse::KEEP);
        }
        let chains = component_chains(self.n, &fixed_relations(self.n, state));
        let target = sorting_interleave_reorder(&chains)
            .map(|order| perm_lex_rank(&order))
            .filter(|&x| state.consistent().contains(x))
            .or(now);
        Ok(match target {
            Some(x) => AdversaryResponse::change_to(x),
            None => AdversaryResponse::KEEP,
        })
    }

    fn clone_box(&self) -> Box<dyn Adversary> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}
