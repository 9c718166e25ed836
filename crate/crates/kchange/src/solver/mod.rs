//! Exact computation of k-change game values by memoized minimax.
//!
//! A position is `(consistent set, live input, changes left)`. The Questioner
//! minimizes over undetermined queries (determined ones cost a query and
//! change nothing, so they are dominated and pruned); the Adversary maximizes
//! over keeping the input or, while changes remain, replacing it with any
//! member of the consistent set, the answer then coming from the effective
//! input. The game value is the Adversary's best initial-input choice.
//!
//! Positions reached by different asked-query sets but equal
//! `(consistent, live, changes)` have equal value: every asked query is
//! determined on the surviving set, and answers depend only on the effective
//! input. The memo table is keyed accordingly.

mod best_response;
mod brute;
mod policy;

pub use best_response::{value_against_adversary, value_against_questioner, BestResponseOptions};
pub use brute::zero_change_value;
pub use policy::{optimal_policy, OptimalAdversary, OptimalQuestioner};

use crate::game::{ProblemSpec, Transcript};
use crate::set::IndexSet;
use dashmap::DashMap;
use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Alpha-beta pruning; never changes values, only node counts.
    pub alpha_beta: bool,
    /// Memoization; never changes values, only node counts.
    pub memo: bool,
    /// Canonicalize memo keys under the spec's symmetry tables, when present.
    pub canonicalize: bool,
    /// Worker threads for independent root inputs (1 = sequential).
    pub threads: usize,
    pub node_cap: Option<u64>,
    pub time_cap: Option<Duration>,
    /// Maximum memo entries before the solve aborts as incomplete.
    pub memo_cap: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            alpha_beta: true,
            memo: true,
            canonicalize: false,
            threads: 1,
            node_cap: None,
            time_cap: None,
            memo_cap: None,
        }
    }
}

/// Result of a solve: exact when `complete` (then `lo == hi`), otherwise the
/// best proven bounds together with search statistics.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub problem: String,
    pub k: u32,
    pub lo: u32,
    pub hi: u32,
    pub complete: bool,
    pub nodes_expanded: u64,
    pub memo_entries: u64,
    pub elapsed: Duration,
    pub pv: Option<Transcript>,
}

impl SolveResult {
    pub fn value(&self) -> Option<u32> {
        (self.complete && self.lo == self.hi).then_some(self.lo)
    }

    /// Exact value; panics on an incomplete result.
    pub fn exact(&self) -> u32 {
        self.value().expect("solve did not complete exactly")
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("solve hit its limits; only bounds [{lo}, {hi}] are proven")]
    Incomplete { lo: u32, hi: u32 },
    #[error("principal variation requires a completed exact solve")]
    PvUnavailable,
}

/// Search hit a node/time/memo cap.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Abort;

#[derive(PartialEq, Eq, Hash)]
struct MemoKey {
    words: Box<[u64]>,
    current: u32,
    changes: u32,
}

/// Proven value bounds for a position. Alpha-beta searches often prove only
/// one side; merged bounds still cut later re-searches.
#[derive(Clone, Copy)]
struct MemoEntry {
    lo: u32,
    hi: u32,
}

/// Reusable solver: the memo table persists across calls, so value queries,
/// principal variations, and optimal-policy agents share work.
pub struct Solver {
    spec: Arc<ProblemSpec>,
    opts: SolveOptions,
    memo: DashMap<MemoKey, MemoEntry>,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

impl Solver {
    pub fn new(spec: Arc<ProblemSpec>, opts: SolveOptions) -> Solver {
        Solver {
            spec,
            opts,
            memo: DashMap::new(),
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
        }
    }

    pub fn spec(&self) -> &Arc<ProblemSpec> {
        &self.spec
    }

    pub fn options(&self) -> &SolveOptions {
        &self.opts
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn memo_entries(&self) -> u64 {
        self.memo.len() as u64
    }

    fn search(&self, deadline: Option<Instant>) -> Search<'_> {
        Search {
            spec: &self.spec,
            opts: &self.opts,
            memo: &self.memo,
            nodes: &self.nodes,
            aborted: &self.aborted,
            deadline,
        }
    }

    /// Effective change budget: budgets at or beyond the query count are
    /// saturated (the Adversary can already change before every query).
    pub fn clamp_budget(&self, k: u32) -> u32 {
        k.min(self.spec.num_queries() as u32)
    }

    /// Exact value of a position, ignoring caps. Intended for policy lookups
    /// on positions reachable from completed solves; cold positions are
    /// solved on demand.
    pub fn state_value(&self, consistent: &IndexSet, current: usize, changes: u32) -> u32 {
        self.search(None)
            .value(consistent, current, self.clamp_budget(changes), -1, i64::MAX / 2)
            .expect("uncapped search cannot abort")
    }

    /// `D_k`: the exact game value at change budget `k`, within the
    /// configured limits.
    pub fn game_value(&self, k: u32) -> SolveResult {
        let start = Instant::now();
        self.aborted.store(false, Ordering::Relaxed);
        let nodes_before = self.nodes.load(Ordering::Relaxed);
        let deadline = self.opts.time_cap.map(|cap| start + cap);
        let spec = &self.spec;
        let all = spec.all_inputs();
        let c0 = self.clamp_budget(k);

        let mut result = SolveResult {
            problem: spec.name().to_string(),
            k,
            lo: 0,
            hi: 0,
            complete: true,
            nodes_expanded: 0,
            memo_entries: 0,
            elapsed: Duration::ZERO,
            pv: None,
        };

        if !spec.is_certificate(&all).expect("validated spec") {
            let roots: Vec<usize> = (0..spec.num_inputs()).collect();
            // Zero-window probes climbing from the best value proven so far.
            // A probe failing low proves the child cannot raise the maximum;
            // a probe failing high raises the shared floor and the climb
            // continues until the child's value is pinned, so the final
            // maximum is exact. Bounds accumulate in the memo either way.
            let best_so_far = AtomicI64::new(-1);
            let evaluate = |&x: &usize| -> Option<u32> {
                let mut t = best_so_far.load(Ordering::Relaxed).max(0);
                loop {
                    let r = self.search(deadline).value(&all, x, c0, t, t + 1).ok()? as i64;
                    if r <= t {
                        return Some(r as u32);
                    }
                    best_so_far.fetch_max(r, Ordering::Relaxed);
                    t = r;
                }
            };
            let values: Vec<Option<u32>> = if self.opts.threads > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(self.opts.threads)
                    .build()
                    .expect("thread pool");
                pool.install(|| {
                    use rayon::prelude::*;
                    roots.par_iter().map(evaluate).collect()
                })
            } else {
                roots.iter().map(evaluate).collect()
            };
            let complete = values.iter().all(Option::is_some);
            // Everything in best_so_far is proven; on a complete run the
            // maximizing input climbed exactly to the game value.
            let lo = best_so_far.load(Ordering::Relaxed).max(0) as u32;
            if complete {
                result.lo = lo;
                result.hi = lo;
            } else {
                // Lower bound proven by completed initial inputs; the sound
                // upper bound is the number of splitting queries at the root.
                result.complete = false;
                result.lo = lo;
                result.hi = (0..spec.num_queries())
                    .filter(|&q| !spec.is_determined(&all, q))
                    .count() as u32;
            }
        }

        result.nodes_expanded = self.nodes.load(Ordering::Relaxed) - nodes_before;
        result.memo_entries = self.memo.len() as u64;
        result.elapsed = start.elapsed();
        result
    }
}

pub(crate) struct Search<'a> {
    spec: &'a ProblemSpec,
    opts: &'a SolveOptions,
    memo: &'a DashMap<MemoKey, MemoEntry>,
    nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
    deadline: Option<Instant>,
}

impl Search<'_> {
    fn check_caps(&self) -> Result<(), Abort> {
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Abort);
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(cap) = self.opts.node_cap {
            if n > cap {
                self.aborted.store(true, Ordering::Relaxed);
                return Err(Abort);
            }
        }
        if let Some(cap) = self.opts.memo_cap {
            if self.memo.len() > cap {
                self.aborted.store(true, Ordering::Relaxed);
                return Err(Abort);
            }
        }
        if n % 1024 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.aborted.store(true, Ordering::Relaxed);
                    return Err(Abort);
                }
            }
        }
        Ok(())
    }

    fn memo_key(&self, consistent: &IndexSet, current: usize, changes: u32) -> MemoKey {
        if self.opts.canonicalize && !self.spec.symmetries().is_empty() {
            let mut best_words: Box<[u64]> = consistent.words().into();
            let mut best_current = current as u32;
            for table in self.spec.symmetries() {
                let mut permuted = IndexSet::empty(consistent.capacity());
                for x in consistent.iter() {
                    permuted.insert(table[x] as usize);
                }
                let cand_current = table[current];
                if (permuted.words(), cand_current) < (&best_words[..], best_current) {
                    best_words = permuted.words().into();
                    best_current = cand_current;
                }
            }
            MemoKey {
                words: best_words,
                current: best_current,
                changes,
            }
        } else {
            MemoKey {
                words: consistent.words().into(),
                current: current as u32,
                changes,
            }
        }
    }

    /// Fail-soft minimax value of a position within `(alpha, beta)`: exact
    /// when strictly inside the window, otherwise a sound bound on the
    /// corresponding side.
    pub(crate) fn value(
        &self,
        consistent: &IndexSet,
        current: usize,
        changes: u32,
        alpha: i64,
        beta: i64,
    ) -> Result<u32, Abort> {
        debug_assert!(consistent.contains(current));
        // With pruning disabled every position is evaluated on a full
        // window, so all results are exact.
        let (alpha, beta) = if self.opts.alpha_beta {
            (alpha, beta)
        } else {
            (-1, i64::MAX / 2)
        };
        if self
            .spec
            .is_certificate(consistent)
            .expect("consistent set nonempty")
        {
            return Ok(0);
        }

        // Queries worth asking: both outcomes possible on the current set.
        let total = consistent.len();
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for q in 0..self.spec.num_queries() {
            let yes = consistent.intersection_len(self.spec.yes_set(q));
            if yes > 0 && yes < total {
                candidates.push((q, yes.max(total - yes)));
            }
        }
        debug_assert!(!candidates.is_empty(), "separation guarantees a split");

        // Asking every splitting query certifies, so their count bounds the
        // value; budgets at or beyond it are saturated and share memo keys.
        let upper = candidates.len() as i64;
        let changes = changes.min(upper as u32);
        if upper <= alpha {
            return Ok(upper as u32);
        }
        if beta <= 1 {
            return Ok(1);
        }

        let key = self.memo_key(consistent, current, changes);
        let (mut alpha, mut beta) = (alpha, beta);
        if self.opts.memo {
            if let Some(e) = self.memo.get(&key) {
                let (lo, hi) = (e.lo as i64, e.hi as i64);
                if lo == hi {
                    return Ok(e.lo);
                }
                if lo >= beta {
                    return Ok(e.lo);
                }
                if hi <= alpha {
                    return Ok(e.hi);
                }
                // Known bounds narrow the window without losing exactness.
                alpha = alpha.max(lo - 1);
                beta = beta.min(hi + 1);
            }
        }
        self.check_caps()?;

        if self.opts.alpha_beta {
            // Balanced splits first helps the minimizer close the window.
            candidates.sort_by_key(|&(q, bigger)| (bigger, q));
        }

        let mut best = i64::MAX;
        for &(q, _) in &candidates {
            let child_beta = beta.min(best);
            let qv = 1 + self.adversary_value(
                consistent,
                current,
                changes,
                q,
                alpha - 1,
                child_beta - 1,
            )? as i64;
            best = best.min(qv);
            if self.opts.alpha_beta && best <= alpha {
                break;
            }
        }

        if self.opts.memo {
            let (new_lo, new_hi) = if best <= alpha {
                (0, best as u32) // fail low: proven upper bound only
            } else if best >= beta {
                (best as u32, u32::MAX) // fail high: proven lower bound only
            } else {
                (best as u32, best as u32)
            };
            self.memo
                .entry(key)
                .and_modify(|e| {
                    e.lo = e.lo.max(new_lo);
                    e.hi = e.hi.min(new_hi);
                })
                .or_insert(MemoEntry {
                    lo: new_lo,
                    hi: new_hi.min(upper as u32),
                });
        }
        Ok(best as u32)
    }

    /// Adversary's best reply value once query `q` is committed: keep the
    /// input, or (with budget) jump to any consistent input; the answer
    /// comes from the effective input.
    fn adversary_value(
        &self,
        consistent: &IndexSet,
        current: usize,
        changes: u32,
        q: usize,
        alpha: i64,
        beta: i64,
    ) -> Result<u32, Abort> {
        let s_yes = consistent.and(self.spec.yes_set(q));
        let s_no = consistent.and_not(self.spec.yes_set(q));
        let keep_side = if s_yes.contains(current) { &s_yes } else { &s_no };

        let mut alpha = alpha;
        let keep = self.value(keep_side, current, changes, alpha, beta)? as i64;
        let mut best = keep;
        alpha = alpha.max(best);
        if changes == 0 || (self.opts.alpha_beta && best >= beta) {
            return Ok(best as u32);
        }

        // Larger successor set first: it tends to hold longer continuations.
        let sides: [&IndexSet; 2] = if s_yes.len() >= s_no.len() {
            [&s_yes, &s_no]
        } else {
            [&s_no, &s_yes]
        };
        for side in sides {
            for x in side.iter() {
                let v = self.value(side, x, changes - 1, alpha, beta)? as i64;
                best = best.max(v);
                alpha = alpha.max(best);
                if self.opts.alpha_beta && best >= beta {
                    return Ok(best as u32);
                }
            }
        }
        Ok(best as u32)
    }
}

/// One-shot exact solve with a fresh memo table.
pub fn game_value(spec: &Arc<ProblemSpec>, k: u32, opts: &SolveOptions) -> SolveResult {
    Solver::new(Arc::clone(spec), opts.clone()).game_value(k)
}

/// Classic unrestricted game value `D`: the Adversary answers every
/// undetermined query whichever way is worse for the Questioner. Computed by
/// a dedicated recursion over consistent sets only; the live input and the
/// change budget are irrelevant when changes are unlimited.
pub fn unrestricted_value(spec: &ProblemSpec) -> u32 {
    fn go(
        spec: &ProblemSpec,
        s: &IndexSet,
        memo: &mut std::collections::HashMap<Box<[u64]>, u32>,
    ) -> u32 {
        if spec.is_certificate(s).expect("nonempty") {
            return 0;
        }
        let key: Box<[u64]> = s.words().into();
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut best = u32::MAX;
        for q in 0..spec.num_queries() {
            let yes = s.and(spec.yes_set(q));
            if yes.is_empty() || yes.len() == s.len() {
                continue;
            }
            let no = s.and_not(spec.yes_set(q));
            let v = 1 + go(spec, &yes, memo).max(go(spec, &no, memo));
            best = best.min(v);
        }
        memo.insert(key, best);
        best
    }
    let mut memo = std::collections::HashMap::new();
    go(spec, &spec.all_inputs(), &mut memo)
}
