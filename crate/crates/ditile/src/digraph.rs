//! Loop-aware digraph with bitset adjacency rows in both directions.
//!
//! At most one edge per ordered pair; loops are stored out of band and are
//! invisible to every degree count and to pattern matching. Only [`Digraph::blow_up`]
//! consumes them.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<VertexSet>,
    in_adj: Vec<VertexSet>,
    loops: VertexSet,
}

/// Per-vertex and graph-level degree statistics, loops excluded throughout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub d_out: Vec<usize>,
    pub d_in: Vec<usize>,
    pub d_total: Vec<usize>,
    pub d_dom: Vec<usize>,
    /// Minimum total degree δ.
    pub delta_total: usize,
    /// Minimum semi-degree δ⁰ (minimum over all in- and out-degrees).
    pub delta_semi: usize,
    /// Minimum dominant degree min_v max(d⁺(v), d⁻(v)).
    pub delta_dom: usize,
}

/// Degree-sum variant for Ore-type minima over non-adjacent ordered pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OreVariant {
    /// d⁺(x) + d⁻(y)
    OutIn,
    /// d⁺(x) + d⁺(y)
    OutOut,
    /// d⁻(x) + d⁻(y)
    InIn,
    /// d⁻(x) + d⁺(y)
    InOut,
}

impl OreVariant {
    pub const ALL: [OreVariant; 4] = [
        OreVariant::OutIn,
        OreVariant::OutOut,
        OreVariant::InIn,
        OreVariant::InOut,
    ];

    pub fn label(self) -> &'static str {
        match self {
            OreVariant::OutIn => "+-",
            OreVariant::OutOut => "++",
            OreVariant::InIn => "--",
            OreVariant::InOut => "-+",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "+-" | "out-in" => Ok(OreVariant::OutIn),
            "++" | "out-out" => Ok(OreVariant::OutOut),
            "--" | "in-in" => Ok(OreVariant::InIn),
            "-+" | "in-out" => Ok(OreVariant::InOut),
            other => Err(Error::InvalidParameter(format!(
                "unknown ore variant {other:?}"
            ))),
        }
    }
}

/// Minimum of an Ore-type degree sum, or `Complete` when the graph has no
/// non-adjacent ordered pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OreMinimum {
    Value(usize),
    Complete,
}

impl OreMinimum {
    pub fn value(self) -> Option<usize> {
        match self {
            OreMinimum::Value(v) => Some(v),
            OreMinimum::Complete => None,
        }
    }

    /// True when the minimum is at least `bound` (vacuously for complete digraphs).
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            OreMinimum::Value(v) => v >= bound,
            OreMinimum::Complete => true,
        }
    }
}

impl Digraph {
    /// Edgeless digraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out_adj: vec![VertexSet::empty(n); n],
            in_adj: vec![VertexSet::empty(n); n],
            loops: VertexSet::empty(n),
        }
    }

    /// Builds a digraph from an edge list. Duplicate edges collapse.
    ///
    /// Self-pairs in `edges` are rejected; a loop must be declared through
    /// the `loops` list instead.
    pub fn build(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self> {
        let mut g = Digraph::empty(n);
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfPairEdge(u));
            }
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            g.add_edge(u, v);
        }
        for &v in loops {
            g.check_vertex(v)?;
            g.loops.insert(v);
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Complete digraph: both directions between every pair, no loops.
    pub fn complete(n: usize) -> Self {
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Complete multipartite digraph: double edges between distinct classes,
    /// nothing inside a class.
    pub fn complete_multipartite(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidParameter("empty class size list".into()));
        }
        if sizes.iter().any(|&s| s == 0) {
            return Err(Error::InvalidParameter("class sizes must be >= 1".into()));
        }
        let n: usize = sizes.iter().sum();
        let mut class = vec![0usize; n];
        let mut next = 0;
        for (c, &s) in sizes.iter().enumerate() {
            for _ in 0..s {
                class[next] = c;
                next += 1;
            }
        }
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && class[u] != class[v] {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.iter().map(VertexSet::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.out_adj[u].contains(v)
    }

    /// True when both `uv` and `vu` are edges.
    pub fn has_double_edge(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) && self.has_edge(v, u)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(v)
    }

    pub fn loops(&self) -> &VertexSet {
        &self.loops
    }

    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.in_adj[v]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v, "loops are stored out of band");
        self.out_adj[u].insert(v);
        self.in_adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.out_adj[u].remove(v);
            self.in_adj[v].remove(u);
        }
    }

    pub fn add_loop(&mut self, v: usize) {
        self.loops.insert(v);
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.out_adj[u].iter() {
                out.push((u, v));
            }
        }
        out
    }

    /// All degree statistics in one pass. Loops never count.
    pub fn degrees(&self) -> DegreeProfile {
        let n = self.n;
        let d_out: Vec<usize> = self.out_adj.iter().map(VertexSet::len).collect();
        let d_in: Vec<usize> = self.in_adj.iter().map(VertexSet::len).collect();
        let d_total: Vec<usize> = (0..n).map(|v| d_out[v] + d_in[v]).collect();
        let d_dom: Vec<usize> = (0..n).map(|v| d_out[v].max(d_in[v])).collect();
        let delta_total = d_total.iter().copied().min().unwrap_or(0);
        let delta_semi = d_out
            .iter()
            .chain(d_in.iter())
            .copied()
            .min()
            .unwrap_or(0);
        let delta_dom = d_dom.iter().copied().min().unwrap_or(0);
        DegreeProfile {
            d_out,
            d_in,
            d_total,
            d_dom,
            delta_total,
            delta_semi,
            delta_dom,
        }
    }

    /// Minimum of the chosen degree sum over ordered pairs `x != y` with
    /// `xy` not an edge; `Complete` when every ordered pair carries an edge.
    pub fn ore_minimum(&self, variant: OreVariant) -> OreMinimum {
        let deg = self.degrees();
        let (dx, dy): (&[usize], &[usize]) = match variant {
            OreVariant::OutIn => (&deg.d_out, &deg.d_in),
            OreVariant::OutOut => (&deg.d_out, &deg.d_out),
            OreVariant::InIn => (&deg.d_in, &deg.d_in),
            OreVariant::InOut => (&deg.d_in, &deg.d_out),
        };
        let mut best: Option<usize> = None;
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && !self.has_edge(x, y) {
                    let s = dx[x] + dy[y];
                    best = Some(best.map_or(s, |b| b.min(s)));
                }
            }
        }
        match best {
            Some(v) => OreMinimum::Value(v),
            None => OreMinimum::Complete,
        }
    }

    /// `t`-blow-up. Vertex `v` expands to `v*t .. v*t+t`; `v^a w^b` is an edge
    /// iff `vw` is, and a looped `v` expands to a complete digraph with loops
    /// on its copies.
    pub fn blow_up(&self, t: usize) -> Self {
        assert!(t >= 1, "blow-up factor must be >= 1");
        let n = self.n * t;
        let mut g = Digraph::empty(n);
        for u in 0..self.n {
            for v in self.out_adj[u].iter() {
                for a in 0..t {
                    for b in 0..t {
                        g.add_edge(u * t + a, v * t + b);
                    }
                }
            }
            if self.loops.contains(u) {
                for a in 0..t {
                    for b in 0..t {
                        if a != b {
                            g.add_edge(u * t + a, u * t + b);
                        }
                    }
                    g.loops.insert(u * t + a);
                }
            }
        }
        g
    }

    /// Subdigraph induced by `keep`, relabeled to `[0, |keep|)` in ascending
    /// order. Returns the graph together with the kept original labels, so
    /// `map[new] = old`.
    pub fn induced(&self, keep: &VertexSet) -> (Digraph, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut g = Digraph::empty(old.len());
        for (i, &v) in old.iter().enumerate() {
            for w in self.out_adj[v].intersection(keep).iter() {
                g.add_edge(i, new_of[w]);
            }
            if self.loops.contains(v) {
                g.loops.insert(i);
            }
        }
        (g, old)
    }

    /// Deletes `drop`, keeping the rest; same relabeling contract as [`Self::induced`].
    pub fn delete(&self, drop: &VertexSet) -> (Digraph, Vec<usize>) {
        self.induced(&drop.complement())
    }

    /// Checks the transpose invariant between the two adjacency directions.
    pub fn adjacency_consistent(&self) -> bool {
        (0..self.n).all(|u| {
            self.out_adj[u]
                .iter()
                .all(|v| self.in_adj[v].contains(u))
                && self.in_adj[u].iter().all(|v| self.out_adj[v].contains(u))
                && !self.out_adj[u].contains(u)
                && !self.in_adj[u].contains(u)
        })
    }

    /// Number of edges with startpoint in `a` and endpoint in `b`.
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|u| self.out_adj[u].intersection_len(b)).sum()
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Digraph(n={}, m={}, loops={:?})",
            self.n,
            self.edge_count(),
            self.loops.to_vec()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_directed_triangle() {
        let g = Digraph::build(3, &[(0, 1), (1, 2), (2, 0)], &[]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 1) && !g.has_edge(1, 0));
        assert!(g.adjacency_consistent());
        let d = g.degrees();
        assert_eq!(d.delta_semi, 1);
        assert_eq!(d.delta_total, 2);
        assert!(d.d_dom.iter().all(|&x| x == 1));
    }

    #[test]
    fn build_single_vertex_and_double_edge() {
        let g = Digraph::build(1, &[], &[]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.edge_count(), 0);

        let h = Digraph::build(2, &[(0, 1), (1, 0)], &[]).unwrap();
        let d = h.degrees();
        assert_eq!(d.d_total, vec![2, 2]);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            Digraph::build(2, &[(0, 2)], &[]),
            Err(Error::VertexOutOfRange { vertex: 2, .. })
        ));
        assert!(matches!(
            Digraph::build(2, &[(1, 1)], &[]),
            Err(Error::SelfPairEdge(1))
        ));
        assert!(matches!(
            Digraph::build(2, &[], &[5]),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Digraph::build(2, &[(0, 1), (0, 1), (0, 1)], &[]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn complete_digraph_degrees() {
        let g = Digraph::complete(4);
        let d = g.degrees();
        assert!(d.d_out.iter().all(|&x| x == 3));
        assert!(d.d_in.iter().all(|&x| x == 3));
        assert_eq!(d.delta_total, 6);
        assert_eq!(d.delta_semi, 3);
    }

    #[test]
    fn multipartite_examples() {
        let g = Digraph::complete_multipartite(&[2, 4, 3]).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.degrees().delta_semi, 5);

        let single = Digraph::complete_multipartite(&[1]).unwrap();
        assert_eq!(single.order(), 1);
        assert_eq!(single.edge_count(), 0);

        let k333 = Digraph::complete_multipartite(&[3, 3, 3]).unwrap();
        let d = k333.degrees();
        assert_eq!(d.delta_semi, 6);
        assert_eq!(d.delta_total, 12);

        assert!(Digraph::complete_multipartite(&[]).is_err());
    }

    #[test]
    fn ore_minimum_examples() {
        // Directed triangle: three non-edges, each with d⁺(x)+d⁻(y) = 2.
        let c3 = Digraph::build(3, &[(0, 1), (1, 2), (2, 0)], &[]).unwrap();
        assert_eq!(c3.ore_minimum(OreVariant::OutIn), OreMinimum::Value(2));

        assert_eq!(
            Digraph::complete(4).ore_minimum(OreVariant::OutIn),
            OreMinimum::Complete
        );

        // Bipartite formula, two ways.
        for (a, b) in [(2, 3), (4, 4), (1, 5)] {
            let g = Digraph::complete_multipartite(&[a, b]).unwrap();
            let expected = 2 * (a + b) - 2 * a.max(b);
            assert_eq!(
                g.ore_minimum(OreVariant::OutIn),
                OreMinimum::Value(expected)
            );
        }
    }

    #[test]
    fn blow_up_single_edge() {
        let g = Digraph::build(2, &[(0, 1)], &[]).unwrap();
        let b = g.blow_up(2);
        assert_eq!(b.order(), 4);
        assert_eq!(b.edge_count(), 4);
        // u copies are 0,1; v copies are 2,3
        for a in 0..2 {
            for c in 2..4 {
                assert!(b.has_edge(a, c));
                assert!(!b.has_edge(c, a));
            }
        }
    }

    #[test]
    fn blow_up_loop_vertex_gives_complete() {
        let g = Digraph::build(1, &[], &[0]).unwrap();
        let b = g.blow_up(3);
        assert_eq!(b.order(), 3);
        assert_eq!(b.edge_count(), 6);
        for v in 0..3 {
            assert!(b.has_loop(v));
        }
    }

    #[test]
    fn blow_up_identity() {
        let g = Digraph::build(4, &[(0, 1), (2, 3), (3, 0)], &[]).unwrap();
        assert_eq!(g.blow_up(1), g);
    }

    #[test]
    fn blow_up_scales_semidegree() {
        let g = Digraph::build(3, &[(0, 1), (1, 2), (2, 0), (1, 0)], &[]).unwrap();
        let d0 = g.degrees().delta_semi;
        for t in 1..=3 {
            assert_eq!(g.blow_up(t).degrees().delta_semi, t * d0);
        }
    }

    #[test]
    fn induced_and_delete() {
        let k5 = Digraph::complete(5);
        let (sub, map) = k5.induced(&VertexSet::from_iter(5, [1, 3, 4]));
        assert_eq!(sub, Digraph::complete(3));
        assert_eq!(map, vec![1, 3, 4]);

        let g = Digraph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[]).unwrap();
        let (sub, _) = g.induced(&VertexSet::from_iter(4, [0, 1, 2]));
        // Directed path on 3 vertices.
        assert_eq!(sub.edge_count(), 2);
        assert!(sub.has_edge(0, 1) && sub.has_edge(1, 2));

        let (same, map) = g.delete(&VertexSet::empty(4));
        assert_eq!(same, g);
        assert_eq!(map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn delta_total_at_least_twice_semi() {
        for g in [
            Digraph::complete(5),
            Digraph::complete_multipartite(&[2, 4, 3]).unwrap(),
            Digraph::build(3, &[(0, 1), (1, 2), (2, 0)], &[]).unwrap(),
        ] {
            let d = g.degrees();
            assert!(d.delta_total >= 2 * d.delta_semi);
        }
    }
}
