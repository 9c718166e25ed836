//! Turán graph arithmetic used by the connectivity bounds and the
//! Turán-complement Adversary.

use super::pair_index;

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Balanced part sizes of the complete r-partite Turán graph on n vertices:
/// the first `n mod r` parts get the larger size.
pub fn turan_part_sizes(n: usize, r: usize) -> Vec<usize> {
    assert!(r >= 1, "r must be at least 1");
    let r_eff = r.min(n.max(1));
    if n == 0 {
        return Vec::new();
    }
    let small = n / r_eff;
    let big_count = n % r_eff;
    let mut sizes = vec![small + 1; big_count];
    sizes.extend(std::iter::repeat(small).take(r_eff - big_count));
    sizes
}

/// Edge count of the Turán graph T(n, r): all cross-part pairs.
pub fn turan_number(n: usize, r: usize) -> usize {
    let within: usize = turan_part_sizes(n, r).iter().map(|&s| choose2(s)).sum();
    choose2(n) - within
}

/// Edge list of the complement of T(n, r): a disjoint union of balanced
/// cliques with the canonical contiguous part assignment (vertices
/// `0..size_1` in part 1, and so on).
pub fn turan_complement_edges(n: usize, r: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut start = 0usize;
    for size in turan_part_sizes(n, r) {
        for i in start..start + size {
            for j in (i + 1)..start + size {
                edges.push((i, j));
            }
        }
        start += size;
    }
    edges
}

/// The complement of T(n, r) as an edge bitmask over the lexicographic pair
/// list, which is also its input index in the connectivity problem.
pub fn turan_complement_mask(n: usize, r: usize) -> usize {
    let mut mask = 0usize;
    for (i, j) in turan_complement_edges(n, r) {
        mask |= 1 << pair_index(n, i, j);
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::graph_is_connected;

    /// Independent double-count: cross-part pairs enumerated directly from
    /// the contiguous part assignment.
    fn cross_pair_count(n: usize, r: usize) -> usize {
        let sizes = turan_part_sizes(n, r);
        let mut part_of = Vec::new();
        for (p, &s) in sizes.iter().enumerate() {
            part_of.extend(std::iter::repeat(p).take(s));
        }
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if part_of[i] != part_of[j] {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn known_values() {
        assert_eq!(turan_number(4, 2), 4);
        assert_eq!(turan_number(4, 3), 5);
        assert_eq!(turan_number(6, 3), 12);
        assert_eq!(turan_number(5, 3), 8);
    }

    #[test]
    fn matches_direct_count_and_monotone() {
        for n in 1..=12 {
            let mut prev = 0;
            for r in 1..=n {
                let t = turan_number(n, r);
                assert_eq!(t, cross_pair_count(n, r), "n={n} r={r}");
                assert!(t >= prev, "not monotone at n={n} r={r}");
                prev = t;
            }
            assert_eq!(turan_number(n, n), n * (n - 1) / 2);
            assert_eq!(turan_number(n, n + 3), n * (n - 1) / 2);
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(turan_complement_edges(4, 3), vec![(0, 1)]);
        assert_eq!(turan_complement_edges(4, 2), vec![(0, 1), (2, 3)]);
        assert_eq!(turan_complement_edges(6, 3), vec![(0, 1), (2, 3), (4, 5)]);
    }

    #[test]
    fn complement_edge_count_and_components() {
        for n in 2..=7 {
            for r in 1..=n + 2 {
                let edges = turan_complement_edges(n, r);
                assert_eq!(
                    edges.len(),
                    n * (n - 1) / 2 - turan_number(n, r),
                    "n={n} r={r}"
                );
                // Component count is min(r, n): each part is a clique.
                let mut parent: Vec<usize> = (0..n).collect();
                fn find(p: &mut Vec<usize>, mut v: usize) -> usize {
                    while p[v] != v {
                        p[v] = p[p[v]];
                        v = p[v];
                    }
                    v
                }
                let mut comps = n;
                for &(u, v) in &edges {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru] = rv;
                        comps -= 1;
                    }
                }
                assert_eq!(comps, r.min(n), "components n={n} r={r}");
            }
        }
    }

    #[test]
    fn complement_mask_roundtrip() {
        for n in 2..=6 {
            for r in 1..=n {
                let mask = turan_complement_mask(n, r);
                assert_eq!(
                    graph_is_connected(mask, n),
                    r.min(n) == 1,
                    "n={n} r={r}"
                );
            }
        }
    }
}
