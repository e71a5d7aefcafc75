//! Building a transitive tournament by nested intersection of
//! dominant-direction neighbourhoods.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::transitive_tournament;
use crate::solve::{validate_embedding, Embedding};

/// Finds a copy of T_r, containing `z` when given.
///
/// Maintains a source chain, a sink chain and a candidate set; while the
/// candidates do not induce a complete digraph, the least candidate with
/// dominant degree exceeding (1−1/r)n pivots the search, shrinking the
/// candidate set to its dominant-direction neighbourhood. A complete
/// candidate set finishes the tournament directly.
pub fn greedy_tr_nested(g: &Digraph, r: usize, z: Option<usize>) -> Result<Embedding> {
    let n = g.order();
    if r == 0 {
        return Err(Error::InvalidParameter("tournament order must be >= 1".into()));
    }
    if r > n {
        return Err(Error::DeadEnd(format!(
            "host has {n} vertices, cannot embed a tournament on {r}"
        )));
    }
    let deg = g.degrees();
    let threshold = (1.0 - 1.0 / r as f64) * n as f64;

    let mut sources: Vec<usize> = Vec::new();
    let mut sinks: Vec<usize> = Vec::new();
    let mut cand = VertexSet::full(n);
    if let Some(z) = z {
        if z >= n {
            return Err(Error::VertexOutOfRange { vertex: z, order: n });
        }
        take(g, &deg, z, &mut sources, &mut sinks, &mut cand);
    }

    loop {
        let placed = sources.len() + sinks.len();
        let need = r - placed;
        if need == 0 {
            break;
        }
        if induces_complete(g, &cand) {
            if cand.len() >= need {
                let middle: Vec<usize> = cand.iter().take(need).collect();
                sources.extend(middle);
                break;
            }
            return Err(Error::DeadEnd(format!(
                "candidate intersection has {} vertices, {need} still needed",
                cand.len()
            )));
        }
        let pivot = cand
            .iter()
            .find(|&v| deg.d_dom[v] as f64 > threshold)
            .ok_or_else(|| {
                Error::DeadEnd(format!(
                    "no pivot: no candidate has dominant degree > {threshold:.2}"
                ))
            })?;
        take(g, &deg, pivot, &mut sources, &mut sinks, &mut cand);
        if cand.len() + sources.len() + sinks.len() < r {
            return Err(Error::DeadEnd(format!(
                "candidate intersection shrank to {} vertices after pivot {pivot}",
                cand.len()
            )));
        }
    }

    // Transitive order: sources in insertion order, then any completion
    // vertices, then the sinks newest-first.
    let mut order = sources;
    order.extend(sinks.into_iter().rev());
    let emb = Embedding::new(transitive_tournament(r)?, order);
    debug_assert!(validate_embedding(g, &emb));
    Ok(emb)
}

/// Moves `v` into the chain on its dominant side and intersects the
/// candidates with the matching neighbourhood (out-direction on ties).
fn take(
    g: &Digraph,
    deg: &crate::digraph::DegreeProfile,
    v: usize,
    sources: &mut Vec<usize>,
    sinks: &mut Vec<usize>,
    cand: &mut VertexSet,
) {
    if deg.d_out[v] >= deg.d_in[v] {
        sources.push(v);
        cand.intersect_with(g.out_neighbors(v));
    } else {
        sinks.push(v);
        cand.intersect_with(g.in_neighbors(v));
    }
}

fn induces_complete(g: &Digraph, set: &VertexSet) -> bool {
    set.iter().all(|u| {
        let mut others = set.clone();
        others.remove(u);
        others.is_subset_of(g.out_neighbors(u)) && others.is_subset_of(g.in_neighbors(u))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_host_contains_anchored_t3() {
        let g = Digraph::complete(5);
        let emb = greedy_tr_nested(&g, 3, Some(0)).unwrap();
        assert!(emb.map().contains(&0));
        assert!(validate_embedding(&g, &emb));
    }

    #[test]
    fn directed_c4_has_no_pivot() {
        let g = Digraph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[]).unwrap();
        assert!(greedy_tr_nested(&g, 3, Some(0)).is_err());
    }

    #[test]
    fn unanchored_build_on_dense_host() {
        let mut g = Digraph::complete(6);
        g.remove_edge(0, 1);
        let emb = greedy_tr_nested(&g, 4, None).unwrap();
        assert!(validate_embedding(&g, &emb));
    }

    #[test]
    fn sink_side_pivots_are_used() {
        // Vertex 0 dominated by in-edges: everything sends to 0, and the
        // rest is complete. T3 through 0 must put 0 last.
        let mut g = Digraph::complete(5);
        for v in 1..5 {
            g.remove_edge(0, v);
        }
        let emb = greedy_tr_nested(&g, 3, Some(0)).unwrap();
        assert_eq!(*emb.map().last().unwrap(), 0);
        assert!(validate_embedding(&g, &emb));
    }
}
