//! Connectivity strategies: the spanning-forest questioner and the
//! change-on-fatal-answer adversary (with a disconnected-clique or an empty
//! initial graph).

use crate::game::{
    AdversaryResponse, Adversary, AgentError, GameState, Outcome, ProblemSpec, Questioner,
};
use crate::problems::{pairs, turan_complement_mask};

fn expect_connectivity(agent: &str, n: usize, spec: &ProblemSpec) -> Result<(), AgentError> {
    let m = n * (n - 1) / 2;
    if n >= 2 && spec.num_queries() == m && spec.num_inputs() == 1 << m {
        Ok(())
    } else {
        Err(AgentError::ProblemMismatch {
            agent: agent.to_string(),
            reason: format!("expected the connectivity problem on {n} vertices"),
        })
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] != v {
            self.0[v] = self.0[self.0[v]];
            v = self.0[v];
        }
        v
    }
    fn union(&mut self, u: usize, v: usize) {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru != rv {
            self.0[ru] = rv;
        }
    }
}

/// Phase one asks, in pair order, edges of the live graph joining two
/// components of the fixed YES-edges until those span the live components.
/// Phase two picks the smallest live component with an unasked crossing pair
/// and asks its crossing pairs in order; a mid-game change simply restarts
/// the recomputation against the new live graph.
#[derive(Clone)]
pub struct SpanningForestQuestioner {
    n: usize,
}

impl SpanningForestQuestioner {
    pub fn new(n: usize) -> Self {
        SpanningForestQuestioner { n }
    }
}

impl Questioner for SpanningForestQuestioner {
    fn name(&self) -> String {
        "spanning-forest".into()
    }

    fn next_query(&mut self, spec: &ProblemSpec, state: &GameState) -> Result<usize, AgentError> {
        expect_connectivity(&self.name(), self.n, spec)?;
        let n = self.n;
        let ps = pairs(n);
        let live = state.current();

        let mut known = Dsu::new(n);
        for &(q, o) in state.asked() {
            if o == Outcome::Yes {
                let (u, v) = ps[q];
                known.union(u, v);
            }
        }

        // Phase one: a live edge crossing two known components. Such an edge
        // cannot be asked already: a YES would have merged the components
        // and a NO contradicts it being live.
        for (idx, &(u, v)) in ps.iter().enumerate() {
            if live >> idx & 1 == 1 && known.find(u) != known.find(v) {
                return Ok(idx);
            }
        }

        // Phase two: the live graph is disconnected (otherwise the known
        // forest spans everything and the game is over). Separate a smallest
        // live component with unasked crossing pairs.
        let mut live_comps = Dsu::new(n);
        for (idx, &(u, v)) in ps.iter().enumerate() {
            if live >> idx & 1 == 1 {
                live_comps.union(u, v);
            }
        }
        let mut components: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..n {
            let r = live_comps.find(v);
            components.entry(r).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = components.into_values().collect();
        comps.sort_by_key(|c| (c.len(), c[0]));
        for comp in comps {
            let crossing: Vec<usize> = ps
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| comp.contains(&u) != comp.contains(&v))
                .map(|(idx, _)| idx)
                .collect();
            if let Some(&q) = crossing.iter().find(|&&q| !state.was_asked(q)) {
                return Ok(q);
            }
        }
        Err(AgentError::NoMove {
            agent: self.name(),
            reason: "every crossing pair of every live component is fixed".into(),
        })
    }

    fn clone_box(&self) -> Box<dyn Questioner> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum InitialGraph {
    /// Complement of the balanced complete (k+2)-partite graph: a disjoint
    /// union of k+2 cliques.
    TuranComplement,
    /// No edges at all; YES answers are paid for with changes.
    Empty,
}

/// Answers from the live graph, except that when a NO would end the game
/// (certifying disconnectedness) and changes remain, it flips the queried
/// pair into an edge and answers YES from the new graph.
#[derive(Clone)]
pub struct ConnectivityAdversary {
    n: usize,
    initial: InitialGraph,
}

impl ConnectivityAdversary {
    pub fn turan_complement(n: usize) -> Self {
        ConnectivityAdversary {
            n,
            initial: InitialGraph::TuranComplement,
        }
    }

    pub fn evasive(n: usize) -> Self {
        ConnectivityAdversary {
            n,
            initial: InitialGraph::Empty,
        }
    }
}

impl Adversary for ConnectivityAdversary {
    fn name(&self) -> String {
        match self.initial {
            InitialGraph::TuranComplement => "turan-complement".into(),
            InitialGraph::Empty => "no-unless-disconnect".into(),
        }
    }

    fn initial_input(&mut self, spec: &ProblemSpec, k: u32) -> Result<usize, AgentError> {
        expect_connectivity(&self.name(), self.n, spec)?;
        Ok(match self.initial {
            InitialGraph::TuranComplement => turan_complement_mask(self.n, k as usize + 2),
            InitialGraph::Empty => 0,
        })
    }

    fn respond(
        &mut self,
        spec: &ProblemSpec,
        state: &GameState,
        q: usize,
    ) -> Result<AdversaryResponse, AgentError> {
        let live = state.current();
        if live >> q & 1 == 1 {
            return Ok(AdversaryResponse::KEEP); // a YES needs no change
        }
        if state.changes_left() == 0 {
            return Ok(AdversaryResponse::KEEP);
        }
        let after_no = spec.restrict(state.consistent(), q, Outcome::No);
        let fatal = spec
            .is_certificate(&after_no)
            .unwrap_or(false);
        if !fatal {
            return Ok(AdversaryResponse::KEEP);
        }
        // The flipped graph differs from the live one only on the pending
        // pair, so it satisfies every fixed answer.
        let flipped = live | (1 << q);
        debug_assert!(state.consistent().contains(flipped));
        Ok(AdversaryResponse::change_to(flipped))
    }

    fn clone_box(&self) -> Box<dyn Adversary> {
        Box::new(self.clone())
    }

    fn state_fingerprint(&self) -> Option<u64> {
        Some(0)
    }
}

