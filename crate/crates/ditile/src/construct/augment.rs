//! Augmenting a spanning {T₃, C₃}-factor into a T₃-factor by local swaps.
//!
//! While a cyclic tile C = {x,y,z} remains: (a) if the host carries one of
//! the reverse edges yx, zy, xz, the same three vertices already span a
//! transitive triple; (b) otherwise some other tile exchanges at least 7
//! edges with C in one direction, which always yields a vertex of C fully
//! joined to that tile plus a common neighbour for the remaining two, and
//! the five-plus-one vertices regroup into two transitive triples. The
//! count of transitive tiles strictly increases with every step.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::io;
use crate::pattern::{transitive_tournament, PatternKind};
use crate::solve::{validate_tiling, Embedding, Tiling};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    LocalSwap,
    SevenEdgeSwap,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::LocalSwap => "local-swap",
            StepKind::SevenEdgeSwap => "seven-edge-swap",
        })
    }
}

#[derive(Clone, Debug)]
pub struct AugmentStep {
    pub kind: StepKind,
    /// Indices of the tiles rewritten by this step, in the tile list as it
    /// stood before the step.
    pub tiles: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct AugmentTrace {
    pub steps: Vec<AugmentStep>,
    pub final_tiling: Tiling,
}

impl AugmentTrace {
    /// Line-oriented log: `step <i> <kind> tiles=<ids>`.
    pub fn to_log(&self) -> String {
        let mut s = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let ids: Vec<String> = step.tiles.iter().map(ToString::to_string).collect();
            s.push_str(&format!("step {i} {} tiles={}\n", step.kind, ids.join(",")));
        }
        s
    }
}

/// One tile of the evolving factor.
#[derive(Clone, Copy, Debug)]
enum Triple {
    /// (a, b, c) with a→b, a→c, b→c.
    Transitive([usize; 3]),
    /// (x, y, z) with x→y, y→z, z→x; rotated so the least vertex leads.
    Cyclic([usize; 3]),
}

impl Triple {
    fn vertices(&self) -> [usize; 3] {
        match *self {
            Triple::Transitive(v) | Triple::Cyclic(v) => v,
        }
    }
}

fn classify(g: &Digraph, verts: [usize; 3], prefer_cyclic: bool) -> Result<Triple> {
    let transitive = || {
        orderings(verts).into_iter().find_map(|(a, b, c)| {
            (g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c))
                .then_some(Triple::Transitive([a, b, c]))
        })
    };
    let cyclic = || {
        orderings(verts).into_iter().find_map(|(x, y, z)| {
            (g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(z, x))
                .then_some(Triple::Cyclic(rotate_least_first([x, y, z])))
        })
    };
    let found = if prefer_cyclic {
        cyclic().or_else(transitive)
    } else {
        transitive().or_else(cyclic)
    };
    found.ok_or_else(|| {
        Error::InvalidParameter(format!(
            "tile {verts:?} is neither a transitive nor a cyclic triple in the host"
        ))
    })
}

fn orderings([a, b, c]: [usize; 3]) -> [(usize, usize, usize); 6] {
    [
        (a, b, c),
        (a, c, b),
        (b, a, c),
        (b, c, a),
        (c, a, b),
        (c, b, a),
    ]
}

fn rotate_least_first(v: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&i| v[i]).unwrap();
    [v[k], v[(k + 1) % 3], v[(k + 2) % 3]]
}

/// Runs the augmentation. `start` must be a valid spanning factor whose
/// tiles are triangles (transitive or cyclic); 3 must divide the order.
///
/// The returned trace has at most n/3 steps. A hypothesis-violation error
/// means no case applied to some cyclic tile, which can only happen when the
/// degree-sum condition d⁺(x)+d⁻(y) ≥ 4n/3−1 fails on some non-edge; the
/// offending instance is dumped in full.
pub fn t3_augment(g: &Digraph, start: &Tiling) -> Result<AugmentTrace> {
    let n = g.order();
    if n % 3 != 0 {
        return Err(Error::InvalidParameter(format!(
            "order {n} is not divisible by 3"
        )));
    }
    if !validate_tiling(g, start, true) {
        return Err(Error::InvalidParameter(
            "start is not a valid spanning tiling".into(),
        ));
    }
    let mut tiles: Vec<Triple> = Vec::with_capacity(n / 3);
    for emb in start.embeddings() {
        if emb.pattern().order() != 3 {
            return Err(Error::InvalidParameter(
                "start tiles must have order 3".into(),
            ));
        }
        let m = emb.map();
        let verts = [m[0], m[1], m[2]];
        // Keep the designation the seed factor gave the tile: directed-cycle
        // tiles stay cyclic even when the host carries a transitive triple
        // on the same set (case (a) picks that up as the first step).
        let prefer_cyclic = emb.pattern().kind() == PatternKind::Cycle
            && is_directed_triangle(emb.pattern().graph());
        tiles.push(classify(g, verts, prefer_cyclic)?);
    }

    let mut steps = Vec::new();
    loop {
        let Some(ci) = tiles
            .iter()
            .position(|t| matches!(t, Triple::Cyclic(_)))
        else {
            break;
        };
        let [x, y, z] = tiles[ci].vertices();
        if let Some(fixed) = local_swap(g, [x, y, z]) {
            tiles[ci] = Triple::Transitive(fixed);
            steps.push(AugmentStep {
                kind: StepKind::LocalSwap,
                tiles: vec![ci],
            });
            continue;
        }
        let Some((ti, out_dir)) = seven_edge_partner(g, &tiles, ci) else {
            return Err(Error::HypothesisViolation(format!(
                "no reverse edge and no 7-edge partner for cyclic tile {:?}; \
                 the degree-sum hypothesis fails on this instance:\n{}",
                [x, y, z],
                io::to_text(g)
            )));
        };
        let partner = tiles[ti].vertices();
        let (t1, t2) = reconfigure(g, [x, y, z], partner, out_dir).ok_or_else(|| {
            Error::HypothesisViolation(format!(
                "7-edge partner {partner:?} for {:?} admits no reconfiguration:\n{}",
                [x, y, z],
                io::to_text(g)
            ))
        })?;
        tiles[ci] = Triple::Transitive(t1);
        tiles[ti] = Triple::Transitive(t2);
        steps.push(AugmentStep {
            kind: StepKind::SevenEdgeSwap,
            tiles: vec![ci.min(ti), ci.max(ti)],
        });
        debug_assert!(steps.len() <= n / 3);
    }

    let t3 = transitive_tournament(3)?;
    let mut final_tiling = Tiling::new(n);
    for t in &tiles {
        let Triple::Transitive(order) = t else {
            unreachable!("loop ends with no cyclic tile left")
        };
        final_tiling.push(Embedding::new(t3.clone(), order.to_vec()));
    }
    debug_assert!(validate_tiling(g, &final_tiling, true));
    Ok(AugmentTrace {
        steps,
        final_tiling,
    })
}

fn is_directed_triangle(p: &Digraph) -> bool {
    (p.has_edge(0, 1) && p.has_edge(1, 2) && p.has_edge(2, 0))
        || (p.has_edge(0, 2) && p.has_edge(2, 1) && p.has_edge(1, 0))
}

/// Case (a): a reverse edge across the cycle x→y→z→x makes the triple
/// transitive. Checked in the order yx, zy, xz.
fn local_swap(g: &Digraph, [x, y, z]: [usize; 3]) -> Option<[usize; 3]> {
    if g.has_edge(y, x) {
        Some([y, z, x])
    } else if g.has_edge(z, y) {
        Some([z, x, y])
    } else if g.has_edge(x, z) {
        Some([x, y, z])
    } else {
        None
    }
}

/// Case (b) partner: the least-index other tile exchanging ≥ 7 edges with C,
/// preferring the out direction (edges from C into the tile).
fn seven_edge_partner(g: &Digraph, tiles: &[Triple], ci: usize) -> Option<(usize, bool)> {
    let c = tiles[ci].vertices();
    for out_dir in [true, false] {
        for (ti, t) in tiles.iter().enumerate() {
            if ti == ci {
                continue;
            }
            let tv = t.vertices();
            let count: usize = c
                .iter()
                .map(|&u| {
                    tv.iter()
                        .filter(|&&w| if out_dir { g.has_edge(u, w) } else { g.has_edge(w, u) })
                        .count()
                })
                .sum();
            if count >= 7 {
                return Some((ti, out_dir));
            }
        }
    }
    None
}

/// Rebuilds C ∪ T into two transitive triples. With ≥ 7 edges from C to T
/// some s ∈ C sends all of T and the two others send ≥ 4 more edges into
/// the 3 targets, so they share a neighbour; the in-direction is symmetric.
fn reconfigure(
    g: &Digraph,
    cycle: [usize; 3],
    partner: [usize; 3],
    out_dir: bool,
) -> Option<([usize; 3], [usize; 3])> {
    let mut senders: Vec<usize> = cycle.to_vec();
    senders.sort_unstable();
    for &s in &senders {
        let full = partner
            .iter()
            .all(|&w| if out_dir { g.has_edge(s, w) } else { g.has_edge(w, s) });
        if !full {
            continue;
        }
        // The two remaining cycle vertices in their cycle-edge order u→v.
        let (u, v) = other_pair(cycle, s);
        let mut ws: Vec<usize> = partner
            .iter()
            .copied()
            .filter(|&w| {
                if out_dir {
                    g.has_edge(u, w) && g.has_edge(v, w)
                } else {
                    g.has_edge(w, u) && g.has_edge(w, v)
                }
            })
            .collect();
        ws.sort_unstable();
        let Some(&w) = ws.first() else { continue };
        let rest: Vec<usize> = partner.iter().copied().filter(|&t| t != w).collect();
        let (p, q) = (rest[0].min(rest[1]), rest[0].max(rest[1]));
        let (p, q) = if g.has_edge(p, q) { (p, q) } else { (q, p) };
        return Some(if out_dir {
            ([u, v, w], [s, p, q])
        } else {
            ([w, u, v], [p, q, s])
        });
    }
    None
}

/// Remaining two vertices of the cycle (x→y→z→x) ordered along its edge.
fn other_pair([x, y, z]: [usize; 3], s: usize) -> (usize, usize) {
    if s == x {
        (y, z)
    } else if s == y {
        (z, x)
    } else {
        (x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{cycle_from_word, OrientationWord};
    use crate::solve::{find_factor, Budget};

    fn c3_pattern() -> crate::pattern::Pattern {
        cycle_from_word(&OrientationWord::parse("FFF").unwrap())
    }

    fn seed_factor(g: &Digraph) -> Tiling {
        find_factor(g, &[c3_pattern(), transitive_tournament(3).unwrap()], &mut Budget::unlimited())
            .found()
            .expect("host has a mixed factor")
    }

    #[test]
    fn complete_triangle_needs_one_local_swap() {
        let g = Digraph::complete(3);
        let start = seed_factor(&g);
        assert_eq!(start.count_label("c:FFF"), 1);
        let trace = t3_augment(&g, &start).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].kind, StepKind::LocalSwap);
        assert!(validate_tiling(&g, &trace.final_tiling, true));
        assert_eq!(trace.final_tiling.count_label("t3"), 1);
    }

    #[test]
    fn k6_two_local_swaps() {
        let g = Digraph::complete(6);
        let start = seed_factor(&g);
        assert_eq!(start.count_label("c:FFF"), 2);
        let trace = t3_augment(&g, &start).unwrap();
        assert_eq!(trace.steps.len(), 2);
        assert!(trace.steps.iter().all(|s| s.kind == StepKind::LocalSwap));
        assert_eq!(trace.final_tiling.count_label("t3"), 2);
        let log = trace.to_log();
        assert!(log.starts_with("step 0 local-swap tiles="));
    }

    #[test]
    fn divisibility_and_validity_checks() {
        let g = Digraph::complete(4);
        let start = Tiling::new(4);
        assert!(t3_augment(&g, &start).is_err());

        let g = Digraph::complete(3);
        let empty = Tiling::new(3);
        assert!(t3_augment(&g, &empty).is_err());
    }

    #[test]
    fn pure_directed_triangles_violate_hypothesis() {
        // Two disjoint directed triangles: no reverse edges, no 7-edge
        // partner, and indeed the degree-sum condition fails badly.
        let g = Digraph::build(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
            &[],
        )
        .unwrap();
        let start = seed_factor(&g);
        let err = t3_augment(&g, &start).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolation(_)));
    }
}
