//! Problem-family builders, Turán-graph utilities, and closed-form
//! predictions for the game values where a formula is known.

mod predict;
mod turan;

pub use predict::{gt_at_most_zero_change, predicted_value, PredictError, Prediction};
pub use turan::{turan_complement_edges, turan_complement_mask, turan_number, turan_part_sizes};

use crate::game::{validate_problem, Outcome, ProblemSpec, ValidationError};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the supported problem families with its size parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProblemKind {
    /// Identify an unknown element of `0..n`; every subset is a query.
    Search { n: usize },
    /// Identify a defective set of exactly `d` elements; a query asks
    /// whether a subset contains a defective.
    GtExact { n: usize, d: usize },
    /// As `GtExact` but with at most `d` defectives.
    GtAtMost { n: usize, d: usize },
    /// Identify the total order of `n` distinct items; a query compares two.
    Sorting { n: usize },
    /// Identify which items are the maximum and the minimum.
    MinMax { n: usize },
    /// Identify which item is the maximum.
    MaxOnly { n: usize },
    /// Decide whether an unknown graph on `n` vertices is connected; a query
    /// probes one vertex pair.
    Connectivity { n: usize },
}

impl ProblemKind {
    pub fn family(&self) -> &'static str {
        match self {
            ProblemKind::Search { .. } => "search",
            ProblemKind::GtExact { .. } => "gt-exact",
            ProblemKind::GtAtMost { .. } => "gt-atmost",
            ProblemKind::Sorting { .. } => "sorting",
            ProblemKind::MinMax { .. } => "minmax",
            ProblemKind::MaxOnly { .. } => "maxonly",
            ProblemKind::Connectivity { .. } => "connectivity",
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            ProblemKind::Search { n }
            | ProblemKind::GtExact { n, .. }
            | ProblemKind::GtAtMost { n, .. }
            | ProblemKind::Sorting { n }
            | ProblemKind::MinMax { n }
            | ProblemKind::MaxOnly { n }
            | ProblemKind::Connectivity { n } => n,
        }
    }

    pub fn d(&self) -> Option<usize> {
        match *self {
            ProblemKind::GtExact { d, .. } | ProblemKind::GtAtMost { d, .. } => Some(d),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self.d() {
            Some(d) => format!("{}-n{}-d{}", self.family(), self.n(), d),
            None => format!("{}-n{}", self.family(), self.n()),
        }
    }

    fn check_params(&self) -> Result<(), BuildError> {
        let n = self.n();
        if n == 0 {
            return Err(BuildError::InvalidParams {
                reason: "n must be at least 1".into(),
            });
        }
        if let Some(d) = self.d() {
            if d > n {
                return Err(BuildError::InvalidParams {
                    reason: format!("d={d} exceeds n={n}"),
                });
            }
        }
        match self {
            ProblemKind::Sorting { n }
            | ProblemKind::MinMax { n }
            | ProblemKind::MaxOnly { n }
            | ProblemKind::Connectivity { n }
                if *n < 2 =>
            {
                Err(BuildError::InvalidParams {
                    reason: "pair-query problems need n >= 2".into(),
                })
            }
            _ => Ok(()),
        }
    }

    /// Hard feasibility guards so a build cannot exhaust memory. The harness
    /// applies stricter per-command limits before solving.
    fn check_capacity(&self) -> Result<(), BuildError> {
        let n = self.n();
        let over = match self {
            ProblemKind::Search { .. } | ProblemKind::GtExact { .. } | ProblemKind::GtAtMost { .. } => {
                n > 16
            }
            ProblemKind::Sorting { .. } | ProblemKind::MinMax { .. } | ProblemKind::MaxOnly { .. } => {
                n > 8
            }
            ProblemKind::Connectivity { .. } => n > 7,
        };
        if over {
            Err(BuildError::Capacity {
                reason: format!("{} with n={} exceeds the build limit", self.family(), n),
            })
        } else {
            Ok(())
        }
    }
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("invalid parameters: {reason}")]
    InvalidParams { reason: String },
    #[error("capacity: {reason}")]
    Capacity { reason: String },
    #[error("built problem failed validation: {0}")]
    Invalid(#[from] ValidationError),
}

/// All unordered pairs over `0..n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            v.push((i, j));
        }
    }
    v
}

/// Index of pair `(i, j)` with `i < j` in the [`pairs`] ordering.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // Pairs (0,*) come first, then (1,*), ...
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Permutation (smallest-to-largest element listing) at a lexicographic
/// rank; inverse of [`perm_lex_rank`].
pub fn perm_of_rank(n: usize, rank: usize) -> Vec<usize> {
    let mut fact = (1..n.max(1)).product::<usize>();
    let mut rank = rank;
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut perm = Vec::with_capacity(n);
    for i in 0..n {
        let pos = rank / fact;
        rank %= fact;
        perm.push(remaining.remove(pos));
        if i + 1 < n {
            fact /= n - 1 - i;
        }
    }
    perm
}

/// Defective-set bitmasks of the group-testing input space in ascending
/// (colex) order.
pub fn gt_input_masks(n: usize, d: usize, exact: bool) -> Vec<usize> {
    (0..1usize << n)
        .filter(|m| {
            let c = m.count_ones() as usize;
            if exact {
                c == d
            } else {
                c <= d
            }
        })
        .collect()
}

/// Lexicographic rank of a permutation given as the list of elements from
/// smallest to largest.
pub fn perm_lex_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0usize;
    let mut fact = 1usize;
    for i in 1..n {
        fact *= i;
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    for (i, &p) in perm.iter().enumerate() {
        let pos = remaining.iter().position(|&r| r == p).expect("valid perm");
        rank += pos * fact;
        remaining.remove(pos);
        if i + 1 < n {
            fact /= n - 1 - i;
        }
    }
    rank
}

fn subset_label(mask: usize, n: usize) -> String {
    let elems = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string());
    format!("{{{}}}", elems.format(","))
}

fn order_label(perm: &[usize]) -> String {
    perm.iter().map(|e| e.to_string()).format("<").to_string()
}

/// Connectivity of the graph with edge bitmask `g` over [`pairs`]`(n)`.
pub fn graph_is_connected(g: usize, n: usize) -> bool {
    let ps = pairs(n);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut components = n;
    for (idx, &(u, v)) in ps.iter().enumerate() {
        if g >> idx & 1 == 1 {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
    }
    components == 1
}

/// Builds the validated `ProblemSpec` for a family instance.
///
/// Input encodings are deterministic: sorting-style inputs enumerate
/// permutations in lexicographic order of the smallest-to-largest listing,
/// group-testing inputs enumerate defective-set bitmasks in ascending numeric
/// (colex) order, and connectivity inputs are edge bitmasks over the
/// lexicographic pair list.
pub fn build_problem(kind: ProblemKind) -> Result<ProblemSpec, BuildError> {
    kind.check_params()?;
    kind.check_capacity()?;
    let spec = match kind {
        ProblemKind::Search { n } => {
            let inputs = (0..n).map(|i| format!("x={i}")).collect();
            let queries = (0..1usize << n).map(|m| subset_label(m, n)).collect();
            ProblemSpec::new(
                kind.label(),
                inputs,
                queries,
                |x, q| Outcome::from_bool(q >> x & 1 == 1),
                |x| x as u64,
            )
            .with_symmetries(element_perm_symmetries(n, n, |x, sigma| sigma[x]))
        }
        ProblemKind::GtExact { n, d } | ProblemKind::GtAtMost { n, d } => {
            let exact = matches!(kind, ProblemKind::GtExact { .. });
            let masks = gt_input_masks(n, d, exact);
            let inputs = masks.iter().map(|&m| format!("D={}", subset_label(m, n))).collect();
            let queries = (0..1usize << n).map(|m| subset_label(m, n)).collect();
            let masks_for_oracle = masks.clone();
            let masks_for_target = masks.clone();
            let masks_for_sym = masks;
            let num_gt_inputs = masks_for_sym.len();
            ProblemSpec::new(
                kind.label(),
                inputs,
                queries,
                move |x, q| Outcome::from_bool(masks_for_oracle[x] & q != 0),
                move |x| masks_for_target[x] as u64,
            )
            .with_symmetries(element_perm_symmetries(n, num_gt_inputs, move |x, sigma| {
                let new_mask = apply_perm_to_mask(masks_for_sym[x], sigma);
                masks_for_sym
                    .iter()
                    .position(|&m| m == new_mask)
                    .expect("permuted mask stays in family")
            }))
        }
        ProblemKind::Sorting { n } | ProblemKind::MinMax { n } | ProblemKind::MaxOnly { n } => {
            let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
            let ps = pairs(n);
            let inputs = perms.iter().map(|p| order_label(p)).collect();
            let queries = ps.iter().map(|&(i, j)| format!("{i}<{j}?")).collect();
            // rank_of[x][e] = position of element e in order x (0 = smallest)
            let rank_of: Vec<Vec<usize>> = perms
                .iter()
                .map(|p| {
                    let mut r = vec![0; n];
                    for (pos, &e) in p.iter().enumerate() {
                        r[e] = pos;
                    }
                    r
                })
                .collect();
            let target: Box<dyn Fn(usize) -> u64> = match kind {
                ProblemKind::Sorting { .. } => Box::new(|x| x as u64),
                ProblemKind::MinMax { .. } => {
                    let perms = perms.clone();
                    Box::new(move |x| {
                        let p = &perms[x];
                        (p[p.len() - 1] * p.len() + p[0]) as u64
                    })
                }
                ProblemKind::MaxOnly { .. } => {
                    let perms = perms.clone();
                    Box::new(move |x| p_last(&perms[x]) as u64)
                }
                _ => unreachable!(),
            };
            let perms_for_sym = perms.clone();
            let num_perm_inputs = perms_for_sym.len();
            ProblemSpec::new(
                kind.label(),
                inputs,
                queries,
                move |x, q| {
                    let (i, j) = ps[q];
                    Outcome::from_bool(rank_of[x][i] < rank_of[x][j])
                },
                move |x| target(x),
            )
            .with_symmetries(element_perm_symmetries(n, num_perm_inputs, move |x, sigma| {
                let relabeled: Vec<usize> = perms_for_sym[x].iter().map(|&e| sigma[e]).collect();
                perm_lex_rank(&relabeled)
            }))
        }
        ProblemKind::Connectivity { n } => {
            let ps = pairs(n);
            let m = ps.len();
            let inputs = (0..1usize << m)
                .map(|g| {
                    let edges = ps
                        .iter()
                        .enumerate()
                        .filter(|(idx, _)| g >> idx & 1 == 1)
                        .map(|(_, (u, v))| format!("{u}-{v}"));
                    format!("{{{}}}", edges.format(","))
                })
                .collect();
            let queries = ps.iter().map(|&(u, v)| format!("{u}-{v}?")).collect();
            let connected: Vec<bool> = (0..1usize << m).map(|g| graph_is_connected(g, n)).collect();
            let spec = ProblemSpec::new(
                kind.label(),
                inputs,
                queries,
                |g, q| Outcome::from_bool(g >> q & 1 == 1),
                move |g| u64::from(connected[g]),
            );
            // Symmetry tables grow as n! * 2^C(n,2); attach them only while
            // that stays small.
            if n <= 5 {
                let ps = pairs(n);
                spec.with_symmetries(element_perm_symmetries(n, 1usize << m, move |g, sigma| {
                    let mut new_g = 0usize;
                    for (idx, &(u, v)) in ps.iter().enumerate() {
                        if g >> idx & 1 == 1 {
                            let (a, b) = (sigma[u].min(sigma[v]), sigma[u].max(sigma[v]));
                            new_g |= 1 << pair_index(sigma.len(), a, b);
                        }
                    }
                    new_g
                }))
            } else {
                spec
            }
        }
    };
    validate_problem(&spec)?;
    Ok(spec)
}

fn p_last(p: &[usize]) -> usize {
    *p.last().expect("nonempty permutation")
}

fn apply_perm_to_mask(mask: usize, sigma: &[usize]) -> usize {
    let mut out = 0usize;
    for (i, &s) in sigma.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out |= 1 << s;
        }
    }
    out
}

/// Input-index permutation tables induced by relabeling the `n` base
/// elements, identity excluded. `map(x, sigma)` gives the index of input `x`
/// after relabeling by `sigma`. Sizes are capped: canonicalization is an
/// optional optimization and specs without symmetry tables simply skip it.
fn element_perm_symmetries(
    n: usize,
    num_inputs: usize,
    map: impl Fn(usize, &[usize]) -> usize,
) -> Vec<Vec<u32>> {
    if n > 6 {
        return Vec::new();
    }
    (0..n)
        .permutations(n)
        .filter(|sigma| !sigma.iter().enumerate().all(|(i, &s)| i == s))
        .map(|sigma| (0..num_inputs).map(|x| map(x, &sigma) as u32).collect())
        .collect()
}

#[cfg(test)]
mod tests;
