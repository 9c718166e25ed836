use super::*;
use crate::game::{apply_move, play_match, AdversaryResponse, GameState, MatchLimits, Outcome};
use crate::problems::{build_problem, pair_index, perm_lex_rank, ProblemKind};
use crate::solver::{Solver, SolveOptions};
use std::sync::Arc;

fn solver_for(kind: ProblemKind) -> Arc<Solver> {
    Arc::new(Solver::new(
        Arc::new(build_problem(kind).unwrap()),
        SolveOptions::default(),
    ))
}

#[test]
fn interleave_reorder_constructions() {
    // Largest chain 0<1<2 hosts 3<4 one per gap.
    assert_eq!(
        sorting_interleave_reorder(&[vec![0, 1, 2], vec![3, 4]]),
        Some(vec![0, 3, 1, 4, 2])
    );
    // A lone extra element overflows above the top of the host chain.
    assert_eq!(
        sorting_interleave_reorder(&[vec![0, 1, 2], vec![3, 4], vec![5]]),
        Some(vec![0, 3, 1, 4, 2, 5])
    );
    // Fresh position: singletons only, identity order.
    assert_eq!(
        sorting_interleave_reorder(&[vec![0], vec![1], vec![2], vec![3]]),
        Some(vec![0, 1, 2, 3])
    );
    // Two chains of equal length: the overflow keeps both separated.
    assert_eq!(
        sorting_interleave_reorder(&[vec![0, 1], vec![2, 3], vec![4]]),
        Some(vec![0, 2, 1, 3, 4])
    );
    // A single chain covering everything cannot be separated.
    assert_eq!(sorting_interleave_reorder(&[vec![0, 1, 2]]), None);
}

#[test]
fn interleave_reorder_separates_chains() {
    let cases: Vec<Vec<Vec<usize>>> = vec![
        vec![vec![0, 1, 2], vec![3, 4]],
        vec![vec![0, 1, 2], vec![3, 4], vec![5]],
        vec![vec![0, 1], vec![2, 3], vec![4]],
        vec![vec![2, 0], vec![1], vec![3]],
        vec![vec![0, 3], vec![1, 4], vec![2, 5]],
    ];
    for chains in cases {
        let order = sorting_interleave_reorder(&chains)
            .unwrap_or_else(|| panic!("no reorder for {chains:?}"));
        let mut chain_of = std::collections::HashMap::new();
        for (ci, chain) in chains.iter().enumerate() {
            for &e in chain {
                chain_of.insert(e, ci);
            }
            // ascending within the output
            let positions: Vec<usize> = chain
                .iter()
                .map(|e| order.iter().position(|x| x == e).unwrap())
                .collect();
            assert!(positions.windows(2).all(|w| w[0] < w[1]), "{chains:?}");
        }
        for w in order.windows(2) {
            if chains[chain_of[&w[0]]].len() > 1 {
                assert_ne!(chain_of[&w[0]], chain_of[&w[1]], "{chains:?} -> {order:?}");
            }
        }
    }
}

#[test]
fn minmax_reorder_blocks() {
    // One element of each class: low < out < fresh < high.
    let p = MinMaxPartition {
        out: vec![1],
        low: vec![0],
        high: vec![3],
        fresh: vec![2],
    };
    assert_eq!(minmax_reorder(&p, &[0, 1, 2, 3], &[]), vec![0, 1, 2, 3]);

    // Everything fresh: the prior order is untouched.
    let p = MinMaxPartition {
        out: vec![],
        low: vec![],
        high: vec![],
        fresh: vec![0, 1, 2, 3],
    };
    assert_eq!(minmax_reorder(&p, &[2, 0, 3, 1], &[]), vec![2, 0, 3, 1]);

    // Low block keeps the prior relative order.
    let p = MinMaxPartition {
        out: vec![],
        low: vec![0, 1],
        high: vec![2, 3],
        fresh: vec![],
    };
    assert_eq!(minmax_reorder(&p, &[1, 0, 3, 2], &[]), vec![1, 0, 3, 2]);

    // Out block follows the fixed constraints, lowest label first among the
    // free choices.
    let p = MinMaxPartition {
        out: vec![0, 1, 2],
        low: vec![],
        high: vec![],
        fresh: vec![3],
    };
    assert_eq!(
        minmax_reorder(&p, &[0, 1, 2, 3], &[(2, 0)]),
        vec![1, 2, 0, 3]
    );
}

#[test]
fn chain_questioner_first_move() {
    // Live order 2 < 0 < 3 < 1, nothing asked: the first adjacent candidate
    // pair is {0, 2}.
    let spec = build_problem(ProblemKind::MinMax { n: 4 }).unwrap();
    let state = GameState::initial(&spec, 1, perm_lex_rank(&[2, 0, 3, 1]));
    let mut agent = MinMaxChainQuestioner::new(4);
    assert_eq!(agent.next_query(&spec, &state).unwrap(), pair_index(4, 0, 2));
}

#[test]
fn halving_first_move() {
    let spec = build_problem(ProblemKind::Search { n: 4 }).unwrap();
    let state = GameState::initial(&spec, 0, 2);
    let mut agent = HalvingQuestioner::new(4);
    // The lowest subset covering exactly 2 of the 4 inputs is {0,1} = 0b11.
    assert_eq!(agent.next_query(&spec, &state).unwrap(), 3);
}

#[test]
fn half_split_majority_rule() {
    let spec = build_problem(ProblemKind::GtAtMost { n: 8, d: 2 }).unwrap();
    let mut agent = HalfSplitAdversary::new(8, 2);
    let x0 = agent.initial_input(&spec, 1).unwrap();
    let state = GameState::initial(&spec, 1, x0);
    // |A| = 5 of 8: majority, so YES with all defectives moved inside A.
    let a: usize = 0b1111_1000;
    let resp = agent.respond(&spec, &state, a).unwrap();
    let target = resp.change.expect("majority answer spends a change");
    let next = apply_move(&spec, &state, a, resp).unwrap();
    assert_eq!(next.asked().last().unwrap().1, Outcome::Yes);
    let mask = crate::problems::gt_input_masks(8, 2, false)[target];
    assert_eq!(mask & !a, 0, "defectives escape the answered subset");

    // |A| = 3 of 8: minority, so NO with defectives kept outside.
    let a: usize = 0b0000_0111;
    let resp = agent.clone_box().respond(&spec, &state, a).unwrap();
    let next = apply_move(&spec, &state, a, resp).unwrap();
    assert_eq!(next.asked().last().unwrap().1, Outcome::No);
}

#[test]
fn connectivity_adversary_flips_fatal_pairs() {
    // Live graph: one edge missing from connectivity on 3 vertices after two
    // NO answers would certify; the adversary flips it.
    let spec = build_problem(ProblemKind::Connectivity { n: 3 }).unwrap();
    let mut agent = ConnectivityAdversary::evasive(3);
    let x0 = agent.initial_input(&spec, 2).unwrap();
    assert_eq!(x0, 0);
    let mut state = GameState::initial(&spec, 2, x0);
    // Queries 0 and 1 answered NO are harmless (a connected graph on the
    // remaining pair is impossible, but disconnectedness is not yet certain
    // after one NO).
    for q in 0..2 {
        let resp = agent.respond(&spec, &state, q).unwrap();
        state = apply_move(&spec, &state, q, resp).unwrap();
    }
    assert_eq!(state.asked()[0].1, Outcome::No);
    // The last pair: NO would certify disconnected, so it flips.
    let resp = agent.respond(&spec, &state, 2).unwrap();
    assert!(resp.change.is_some());
    let next = apply_move(&spec, &state, 2, resp).unwrap();
    assert_eq!(next.asked().last().unwrap().1, Outcome::Yes);
}

#[test]
fn spanning_forest_phases() {
    // Two triangles on 6 vertices, forest already known: the next query is
    // the first crossing pair {0,3} of the smallest live component.
    let spec = build_problem(ProblemKind::Connectivity { n: 6 }).unwrap();
    let tri = |a: usize, b: usize, c: usize| {
        (1usize << pair_index(6, a, b)) | (1 << pair_index(6, a, c)) | (1 << pair_index(6, b, c))
    };
    let two_triangles = tri(0, 1, 2) | tri(3, 4, 5);
    let mut state = GameState::initial(&spec, 0, two_triangles);
    let mut agent = SpanningForestQuestioner::new(6);
    // Phase one asks live edges until the YES forest spans both triangles.
    for _ in 0..4 {
        let q = agent.next_query(&spec, &state).unwrap();
        state = apply_move(&spec, &state, q, AdversaryResponse::KEEP).unwrap();
        assert_eq!(state.asked().last().unwrap().1, Outcome::Yes);
    }
    let q = agent.next_query(&spec, &state).unwrap();
    assert_eq!(q, pair_index(6, 0, 3));

    // Connected live graph, nothing known: its first edge.
    let path = (1usize << pair_index(6, 0, 1))
        | (1 << pair_index(6, 1, 2))
        | (1 << pair_index(6, 2, 3))
        | (1 << pair_index(6, 3, 4))
        | (1 << pair_index(6, 4, 5));
    let fresh = GameState::initial(&spec, 0, path);
    assert_eq!(
        agent.next_query(&spec, &fresh).unwrap(),
        pair_index(6, 0, 1)
    );
}

#[test]
fn registry_matches_families() {
    let solver = solver_for(ProblemKind::Sorting { n: 3 });
    assert!(questioner_by_name("chain-repair", ProblemKind::Sorting { n: 3 }, 1, &solver).is_ok());
    assert!(matches!(
        questioner_by_name("chain-repair", ProblemKind::Connectivity { n: 3 }, 1, &solver),
        Err(AgentError::ProblemMismatch { .. })
    ));
    assert!(matches!(
        questioner_by_name("no-such", ProblemKind::Sorting { n: 3 }, 1, &solver),
        Err(AgentError::ProblemMismatch { .. })
    ));
    assert!(adversary_by_name("interleave", ProblemKind::Sorting { n: 3 }, 1, &solver).is_ok());
    assert!(matches!(
        adversary_by_name("half-split", ProblemKind::Sorting { n: 3 }, 1, &solver),
        Err(AgentError::ProblemMismatch { .. })
    ));
    assert!(
        questioner_by_name("compose:0,1", ProblemKind::Sorting { n: 3 }, 1, &solver).is_ok()
    );
}

#[test]
fn play_chain_repair_vs_interleave_sorting4() {
    let kind = ProblemKind::Sorting { n: 4 };
    let spec = build_problem(kind).unwrap();
    let mut q = ChainRepairQuestioner::new(4);
    let mut a = InterleaveAdversary::new(4);
    let t = play_match(&spec, 1, &mut q, &mut a, MatchLimits::default()).unwrap();
    assert_eq!(t.len(), 4);
    assert_eq!(t.change_count(), 1);
    assert_eq!(t.replay(&spec).unwrap(), t.final_state);
}

#[test]
fn play_spanning_forest_vs_evasive_connectivity4() {
    let spec = build_problem(ProblemKind::Connectivity { n: 4 }).unwrap();
    let mut q = SpanningForestQuestioner::new(4);
    let mut a = ConnectivityAdversary::evasive(4);
    let t = play_match(&spec, 2, &mut q, &mut a, MatchLimits::default()).unwrap();
    assert_eq!(t.len(), 6);
}

#[test]
fn play_chain_vs_out_avoid_minmax5() {
    let spec = build_problem(ProblemKind::MinMax { n: 5 }).unwrap();
    let mut q = MinMaxChainQuestioner::new(5);
    let mut a = OutAvoidAdversary::new(5);
    let t = play_match(&spec, 1, &mut q, &mut a, MatchLimits::default()).unwrap();
    assert!((5..=6).contains(&t.len()), "length {}", t.len());
    assert!(t.change_count() <= 1);
}

#[test]
fn play_search_singleton_certificate() {
    let spec = build_problem(ProblemKind::Search { n: 2 }).unwrap();
    let mut q = HalvingQuestioner::new(2);
    let mut a = StaticAdversary::new(1);
    let t = play_match(&spec, 0, &mut q, &mut a, MatchLimits::default()).unwrap();
    assert_eq!(t.len(), 1);
}

/// After the interleave change, no pair fixed before the change may be
/// adjacent in the new live order, and the new order satisfies every fixed
/// answer (replay would fail otherwise).
#[test]
fn interleave_transcript_invariant() {
    for n in 3..=5 {
        let kind = ProblemKind::Sorting { n };
        let spec = build_problem(kind).unwrap();
        let solver = solver_for(kind);
        let questioners: Vec<Box<dyn crate::game::Questioner>> = vec![
            Box::new(ChainRepairQuestioner::new(n)),
            Box::new(crate::solver::optimal_policy(&solver).0),
        ];
        for mut q in questioners {
            let mut a = InterleaveAdversary::new(n);
            let t = play_match(&spec, 1, q.as_mut(), &mut a, MatchLimits::default()).unwrap();
            assert_eq!(t.replay(&spec).unwrap(), t.final_state);
            if let Some(at) = t.events.iter().position(|e| e.change.is_some()) {
                let (_, to) = t.events[at].change.unwrap();
                let order = crate::problems::perm_of_rank(n, to);
                let mut pos = vec![0usize; n];
                for (p, &e) in order.iter().enumerate() {
                    pos[e] = p;
                }
                let ps = crate::problems::pairs(n);
                for e in &t.events[..at] {
                    let (i, j) = ps[e.query];
                    assert!(
                        pos[i].abs_diff(pos[j]) != 1,
                        "n={n}: fixed pair {i},{j} adjacent after change"
                    );
                }
            }
        }
    }
}

/// Out-avoidance: while the adversary still answers adaptively, no answer
/// sends an element out when an out-free answer existed, and the number of
/// change events stays within min(k, ceil(n/2)).
#[test]
fn out_avoid_transcript_invariant() {
    for n in 3..=5usize {
        for k in 0..=3u32 {
            let kind = ProblemKind::MinMax { n };
            let spec = build_problem(kind).unwrap();
            let mut q = MinMaxChainQuestioner::new(n);
            let mut a = OutAvoidAdversary::new(n);
            let t = play_match(&spec, k, &mut q, &mut a, MatchLimits::default()).unwrap();
            assert!(t.change_count() as u32 <= k.min(n.div_ceil(2) as u32), "n={n} k={k}");

            // Replay and check the no-out discipline on changed rounds.
            let mut state = GameState::initial(&spec, k, t.initial_input);
            let ps = crate::problems::pairs(n);
            for ev in &t.events {
                let partition = MinMaxPartition::from_state(n, &state);
                let (i, j) = ps[ev.query];
                let yes_safe = !partition.high.contains(&i) && !partition.low.contains(&j);
                let no_safe = !partition.high.contains(&j) && !partition.low.contains(&i);
                if ev.change.is_some() {
                    let said_yes = ev.outcome.as_bool();
                    let safe = if said_yes { yes_safe } else { no_safe };
                    assert!(safe, "n={n} k={k}: change produced an out answer");
                }
                let resp = match ev.change {
                    Some((_, to)) => AdversaryResponse::change_to(to),
                    None => AdversaryResponse::KEEP,
                };
                state = apply_move(&spec, &state, ev.query, resp).unwrap();
            }
        }
    }
}

/// Whenever a cross-part pair of the balanced (k+2)-partite graph was never
/// asked, the adversary's final graph is disconnected.
#[test]
fn turan_adversary_final_graph_invariant() {
    use crate::problems::{graph_is_connected, turan_complement_mask};
    for n in 3..=6usize {
        for k in 0..=2u32 {
            let spec = build_problem(ProblemKind::Connectivity { n }).unwrap();
            let mut q = SpanningForestQuestioner::new(n);
            let mut a = ConnectivityAdversary::turan_complement(n);
            let t = play_match(&spec, k, &mut q, &mut a, MatchLimits::default()).unwrap();
            let complement = turan_complement_mask(n, k as usize + 2);
            let m = n * (n - 1) / 2;
            let turan_edges = ((1usize << m) - 1) & !complement;
            let asked: usize = t.events.iter().map(|e| 1usize << e.query).fold(0, |x, y| x | y);
            if turan_edges & !asked != 0 {
                assert!(
                    !graph_is_connected(t.final_state.current(), n),
                    "n={n} k={k}: unasked cross pair but final graph connected"
                );
            }
        }
    }
}
