use kchange::problems::{build_problem, ProblemKind};
use kchange::solver::*;
use kchange::strategies::*;
use std::sync::Arc;

fn main() {
    let opts = BestResponseOptions::default();

    let kind = ProblemKind::Connectivity { n: 4 };
    let spec = Arc::new(build_problem(kind).unwrap());
    let a = ConnectivityAdversary::turan_complement(4);
    let r = value_against_adversary(&spec, 1, &a, &opts).unwrap();
    println!("(a) vs turan-complement C4 k1: {} (nodes {})", r.exact(), r.nodes_expanded);

    let kind = ProblemKind::GtAtMost { n: 3, d: 2 };
    let spec = Arc::new(build_problem(kind).unwrap());
    let a = HalfSplitAdversary::new(3, 2);
    let r = value_against_adversary(&spec, 1, &a, &opts).unwrap();
    println!("(b) vs half-split GT(3,2) k1: {} (nodes {})", r.exact(), r.nodes_expanded);

    let kind = ProblemKind::Sorting { n: 4 };
    let spec = Arc::new(build_problem(kind).unwrap());
    let a = InterleaveAdversary::new(4);
    let r = value_against_adversary(&spec, 1, &a, &opts).unwrap();
    println!("(c) vs interleave S4 k1: {} (nodes {})", r.exact(), r.nodes_expanded);

    let kind = ProblemKind::MinMax { n: 4 };
    let spec = Arc::new(build_problem(kind).unwrap());
    let q = MinMaxChainQuestioner::new(4);
    let r = value_against_questioner(&spec, 1, &q, &opts).unwrap();
    println!("(d) vs chain L4 k1: {} (nodes {})", r.exact(), r.nodes_expanded);

    let kind = ProblemKind::Sorting { n: 5 };
    let spec = Arc::new(build_problem(kind).unwrap());
    let q = ChainRepairQuestioner::new(5);
    let r = value_against_questioner(&spec, 1, &q, &opts).unwrap();
    println!("(e) vs chain-repair S5 k1: {} (nodes {})", r.exact(), r.nodes_expanded);

    let kind = ProblemKind::Connectivity { n: 4 };
    let spec = Arc::new(build_problem(kind).unwrap());
    let q = SpanningForestQuestioner::new(4);
    let r = value_against_questioner(&spec, 1, &q, &opts).unwrap();
    println!("(f) vs spanning-forest C4 k1: {} (nodes {})", r.exact(), r.nodes_expanded);

    // static adversary on search: best response is the singleton ask.
    let kind = ProblemKind::Search { n: 4 };
    let spec = Arc::new(build_problem(kind).unwrap());
    for k in [0u32, 2, 5] {
        let r = value_against_adversary(&spec, k, &StaticAdversary::new(0), &opts).unwrap();
        println!("static search4 k{k}: {}", r.exact());
    }

    // stubborn forces >= min(k+1, D) on small grids.
    for kind in [
        ProblemKind::Search { n: 4 },
        ProblemKind::Sorting { n: 4 },
        ProblemKind::MinMax { n: 4 },
        ProblemKind::GtAtMost { n: 4, d: 2 },
        ProblemKind::Connectivity { n: 4 },
    ] {
        let spec = Arc::new(build_problem(kind).unwrap());
        let d = unrestricted_value(&spec);
        let solver = Arc::new(Solver::new(Arc::clone(&spec), SolveOptions::default()));
        for k in 0..=3u32 {
            let a = StubbornAdversary::new(&solver);
            let r = value_against_adversary(&spec, k, &a, &opts).unwrap();
            let want = (k + 1).min(d);
            let ok = if r.exact() >= want { "ok" } else { "VIOLATION" };
            println!("stubborn {kind} k{k}: {} >= {want} {ok}", r.exact());
        }
    }
}
