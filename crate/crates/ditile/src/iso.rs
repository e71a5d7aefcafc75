//! Backtracking digraph isomorphism test with degree-signature pruning.
//! Intended for canonical checks on small instances (n <= 12 or so).

use crate::digraph::Digraph;

/// Exact isomorphism decision, loops included.
pub fn are_isomorphic(g: &Digraph, h: &Digraph) -> bool {
    let n = g.order();
    if n != h.order()
        || g.edge_count() != h.edge_count()
        || g.loops().len() != h.loops().len()
    {
        return false;
    }
    let mut sig_g = signatures(g);
    let mut sig_h = signatures(h);
    let mut sorted_g = sig_g.clone();
    let mut sorted_h = sig_h.clone();
    sorted_g.sort_unstable();
    sorted_h.sort_unstable();
    if sorted_g != sorted_h {
        return false;
    }
    // Map g-vertices in order of signature rarity to fail fast.
    let mut order: Vec<usize> = (0..n).collect();
    let mut freq = std::collections::HashMap::new();
    for s in &sig_g {
        *freq.entry(*s).or_insert(0usize) += 1;
    }
    order.sort_by_key(|&v| (freq[&sig_g[v]], v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(g, h, &order, 0, &mut map, &mut used, &mut sig_g, &mut sig_h)
}

type Sig = (usize, usize, bool);

fn signatures(g: &Digraph) -> Vec<Sig> {
    let d = g.degrees();
    (0..g.order())
        .map(|v| (d.d_out[v], d.d_in[v], g.has_loop(v)))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Digraph,
    h: &Digraph,
    order: &[usize],
    idx: usize,
    map: &mut [usize],
    used: &mut [bool],
    sig_g: &mut [Sig],
    sig_h: &mut [Sig],
) -> bool {
    if idx == order.len() {
        return true;
    }
    let u = order[idx];
    'candidates: for w in 0..h.order() {
        if used[w] || sig_g[u] != sig_h[w] {
            continue;
        }
        // Consistency with all previously mapped vertices, both directions.
        for &p in &order[..idx] {
            let q = map[p];
            if g.has_edge(u, p) != h.has_edge(w, q) || g.has_edge(p, u) != h.has_edge(q, w) {
                continue 'candidates;
            }
        }
        map[u] = w;
        used[w] = true;
        if extend(g, h, order, idx + 1, map, used, sig_g, sig_h) {
            return true;
        }
        map[u] = usize::MAX;
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;

    #[test]
    fn triangle_vs_transitive() {
        let c3 = Digraph::build(3, &[(0, 1), (1, 2), (2, 0)], &[]).unwrap();
        let t3 = Digraph::build(3, &[(0, 1), (0, 2), (1, 2)], &[]).unwrap();
        assert!(!are_isomorphic(&c3, &t3));
        assert!(are_isomorphic(&c3, &c3));
    }

    #[test]
    fn relabeled_graphs_are_isomorphic() {
        let g = Digraph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], &[]).unwrap();
        let h = Digraph::build(4, &[(2, 3), (3, 0), (0, 1), (1, 2), (2, 0)], &[]).unwrap();
        assert!(are_isomorphic(&g, &h));
    }

    #[test]
    fn loops_distinguish() {
        let g = Digraph::build(2, &[(0, 1)], &[0]).unwrap();
        let h = Digraph::build(2, &[(0, 1)], &[1]).unwrap();
        assert!(!are_isomorphic(&g, &h));
        // Loop must stay on the edge's source under any isomorphism.
        let h2 = Digraph::build(2, &[(1, 0)], &[1]).unwrap();
        assert!(are_isomorphic(&g, &h2));
        let h3 = Digraph::build(2, &[(1, 0)], &[0]).unwrap();
        assert!(!are_isomorphic(&g, &h3));
    }

    #[test]
    fn blow_up_composes() {
        // blow_up(G, s*t) isomorphic to blow_up(blow_up(G, s), t) on small cases.
        let graphs = [
            Digraph::build(2, &[(0, 1)], &[1]).unwrap(),
            Digraph::build(3, &[(0, 1), (1, 2), (2, 0)], &[]).unwrap(),
            Digraph::build(2, &[(0, 1), (1, 0)], &[0]).unwrap(),
        ];
        for g in &graphs {
            for s in 1..=3usize {
                for t in 1..=3usize {
                    if g.order() * s * t > 12 {
                        continue;
                    }
                    let a = g.blow_up(s * t);
                    let b = g.blow_up(s).blow_up(t);
                    assert!(are_isomorphic(&a, &b), "s={s} t={t}");
                }
            }
        }
    }
}
