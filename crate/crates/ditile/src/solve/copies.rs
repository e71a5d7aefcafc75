//! Backtracking kernel enumerating pattern embeddings in a host digraph.

use super::{Budget, Embedding};
use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::pattern::Pattern;
use std::ops::ControlFlow;

/// Outcome of a kernel run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RunStatus {
    /// Every embedding was visited.
    Complete,
    /// The callback stopped the search.
    Stopped,
    /// The node budget ran out.
    OutOfBudget,
}

/// Placement plan for one pattern: vertices in search order plus, per
/// position, the adjacency constraints against earlier positions.
struct Plan {
    order: Vec<usize>,
    /// constraints[i] holds (earlier position j, forward) pairs; `forward`
    /// means the pattern edge goes order[j] → order[i].
    constraints: Vec<Vec<(usize, bool)>>,
}

fn make_plan(pattern: &Digraph, start: usize) -> Plan {
    let h = pattern.order();
    let mut order = Vec::with_capacity(h);
    let mut placed = vec![false; h];
    order.push(start);
    placed[start] = true;
    while order.len() < h {
        // Fail-first: the unplaced vertex with the most placed neighbours.
        let mut best: Option<(usize, usize)> = None;
        for v in 0..h {
            if placed[v] {
                continue;
            }
            let count = order
                .iter()
                .filter(|&&u| pattern.has_edge(u, v) || pattern.has_edge(v, u))
                .count();
            if best.map_or(true, |(bc, _)| count > bc) {
                best = Some((count, v));
            }
        }
        let (_, v) = best.unwrap();
        order.push(v);
        placed[v] = true;
    }
    let constraints = (0..h)
        .map(|i| {
            let v = order[i];
            let mut cs = Vec::new();
            for (j, &u) in order.iter().enumerate().take(i) {
                if pattern.has_edge(u, v) {
                    cs.push((j, true));
                }
                if pattern.has_edge(v, u) {
                    cs.push((j, false));
                }
            }
            cs
        })
        .collect();
    Plan { order, constraints }
}

/// Runs the backtracking search, invoking `visit` on every embedding found.
/// `map` passed to the callback is indexed by pattern vertex. The search is
/// restricted to host vertices in `allowed`.
pub(crate) fn for_each_embedding(
    host: &Digraph,
    pattern: &Pattern,
    anchor: Option<(usize, usize)>,
    allowed: &VertexSet,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> RunStatus {
    let p = pattern.graph();
    let h = p.order();
    if h == 0 || h > allowed.len() {
        return RunStatus::Complete;
    }
    let plan = make_plan(p, anchor.map_or(0, |(pv, _)| pv));
    let n = host.order();
    let mut map = vec![usize::MAX; h];
    let mut used = VertexSet::empty(n);
    let mut scratch: Vec<VertexSet> = (0..h).map(|_| VertexSet::empty(n)).collect();

    fn dfs(
        host: &Digraph,
        plan: &Plan,
        pos: usize,
        anchor_host: Option<usize>,
        allowed: &VertexSet,
        map: &mut [usize],
        used: &mut VertexSet,
        scratch: &mut [VertexSet],
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> RunStatus {
        if pos == plan.order.len() {
            return match visit(map) {
                ControlFlow::Continue(()) => RunStatus::Complete,
                ControlFlow::Break(()) => RunStatus::Stopped,
            };
        }
        let (cands, rest) = scratch.split_first_mut().unwrap();
        cands.clone_from(allowed);
        cands.subtract(used);
        if pos == 0 {
            if let Some(hv) = anchor_host {
                if !cands.contains(hv) {
                    return RunStatus::Complete;
                }
                cands.clear();
                cands.insert(hv);
            }
        }
        for &(j, forward) in &plan.constraints[pos] {
            let placed = map[plan.order[j]];
            if forward {
                // pattern edge order[j] → order[pos]: v must receive from placed
                cands.intersect_with(host.out_neighbors(placed));
            } else {
                cands.intersect_with(host.in_neighbors(placed));
            }
        }
        let pv = plan.order[pos];
        for v in cands.clone().iter() {
            if !budget.spend() {
                return RunStatus::OutOfBudget;
            }
            map[pv] = v;
            used.insert(v);
            let status = dfs(
                host, plan, pos + 1, anchor_host, allowed, map, used, rest, budget, visit,
            );
            used.remove(v);
            map[pv] = usize::MAX;
            if status != RunStatus::Complete {
                return status;
            }
        }
        RunStatus::Complete
    }

    dfs(
        host,
        &plan,
        0,
        anchor.map(|(_, hv)| hv),
        allowed,
        &mut map,
        &mut used,
        &mut scratch,
        budget,
        visit,
    )
}

/// Enumerates raw embeddings (one per injective vertex map; automorphic
/// images are not collapsed). `anchor` pins a pattern vertex onto a host
/// vertex; `limit` stops the enumeration early.
pub fn enumerate_copies(
    host: &Digraph,
    pattern: &Pattern,
    anchor: Option<(usize, usize)>,
    limit: Option<usize>,
    budget: &mut Budget,
) -> Vec<Embedding> {
    let mut out = Vec::new();
    let allowed = VertexSet::full(host.order());
    for_each_embedding(host, pattern, anchor, &allowed, budget, &mut |map| {
        out.push(Embedding::new(pattern.clone(), map.to_vec()));
        if limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

/// A candidate tile rooted at some host vertex: the covered set plus one
/// representative vertex map and the index of the pattern that produced it.
#[derive(Clone, Debug)]
pub(crate) struct Tile {
    pub covered: VertexSet,
    pub map: Vec<usize>,
    pub pattern_idx: usize,
}

/// Collects the distinct covered sets of copies of `patterns[..]` that
/// contain `host_v`, restricted to `allowed`. Tiles are deduplicated by
/// covered set across all patterns and anchor roles, keeping the first
/// representative in (pattern, role, search) order. Returns `None` when the
/// budget runs out mid-collection.
pub(crate) fn anchored_tiles(
    host: &Digraph,
    patterns: &[Pattern],
    host_v: usize,
    allowed: &VertexSet,
    budget: &mut Budget,
) -> Option<Vec<Tile>> {
    let mut tiles: Vec<Tile> = Vec::new();
    let mut seen: std::collections::HashSet<VertexSet> = std::collections::HashSet::new();
    for (pattern_idx, pattern) in patterns.iter().enumerate() {
        if !anchored_tiles_single(host, pattern, pattern_idx, host_v, allowed, budget, &mut seen, &mut tiles) {
            return None;
        }
    }
    Some(tiles)
}

/// Same as [`anchored_tiles`] but deduplicates within one pattern only,
/// appending to the caller's accumulator. Returns false on budget exhaustion.
#[allow(clippy::too_many_arguments)]
pub(crate) fn anchored_tiles_single(
    host: &Digraph,
    pattern: &Pattern,
    pattern_idx: usize,
    host_v: usize,
    allowed: &VertexSet,
    budget: &mut Budget,
    seen: &mut std::collections::HashSet<VertexSet>,
    tiles: &mut Vec<Tile>,
) -> bool {
    for role in 0..pattern.order() {
        let status = for_each_embedding(
            host,
            pattern,
            Some((role, host_v)),
            allowed,
            budget,
            &mut |map| {
                let covered = VertexSet::from_iter(host.order(), map.iter().copied());
                if seen.insert(covered.clone()) {
                    tiles.push(Tile {
                        covered,
                        map: map.to_vec(),
                        pattern_idx,
                    });
                }
                ControlFlow::Continue(())
            },
        );
        if status == RunStatus::OutOfBudget {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;
    use crate::pattern::{cycle_from_word, transitive_tournament, OrientationWord};

    #[test]
    fn complete_host_counts_orderings() {
        let k3 = Digraph::complete(3);
        let t3 = transitive_tournament(3).unwrap();
        let copies = enumerate_copies(&k3, &t3, None, None, &mut Budget::unlimited());
        assert_eq!(copies.len(), 6);
    }

    #[test]
    fn directed_triangle_has_no_t3() {
        let c3 = Digraph::build(3, &[(0, 1), (1, 2), (2, 0)], &[]).unwrap();
        let t3 = transitive_tournament(3).unwrap();
        assert!(enumerate_copies(&c3, &t3, None, None, &mut Budget::unlimited()).is_empty());
    }

    #[test]
    fn anchor_pins_the_map() {
        let k4 = Digraph::complete(4);
        let t2 = transitive_tournament(2).unwrap();
        let copies = enumerate_copies(&k4, &t2, Some((0, 2)), None, &mut Budget::unlimited());
        assert_eq!(copies.len(), 3);
        assert!(copies.iter().all(|e| e.map()[0] == 2));
    }

    #[test]
    fn budget_cuts_off() {
        let k6 = Digraph::complete(6);
        let t3 = transitive_tournament(3).unwrap();
        let mut budget = Budget::nodes(5);
        let copies = enumerate_copies(&k6, &t3, None, None, &mut budget);
        assert!(budget.exhausted());
        assert!(copies.len() < 120);
    }

    #[test]
    fn limit_stops_early() {
        let k5 = Digraph::complete(5);
        let c3 = cycle_from_word(&OrientationWord::parse("FFF").unwrap());
        let copies = enumerate_copies(&k5, &c3, None, Some(2), &mut Budget::unlimited());
        assert_eq!(copies.len(), 2);
    }

    #[test]
    fn cycle_copies_in_tripartite() {
        let g = Digraph::complete_multipartite(&[2, 4, 3]).unwrap();
        let c3 = cycle_from_word(&OrientationWord::parse("FFF").unwrap());
        let copies = enumerate_copies(&g, &c3, None, Some(1), &mut Budget::unlimited());
        assert!(!copies.is_empty());
        assert!(super::super::validate_embedding(&g, &copies[0]));
    }
}
