//! Exact backtracking search for copies, tilings, factors, prescribed
//! cycle-list tilings and oriented Hamilton cycles.
//!
//! Every decision procedure takes a node budget; exceeding it yields
//! [`Outcome::Unknown`], which is distinct from a proven [`Outcome::Absent`].
//! Copies are non-induced subdigraph embeddings and host loops are invisible
//! to matching.

mod copies;
mod cycles;
mod factor;

pub use copies::enumerate_copies;
pub use cycles::{
    find_cycle_list_tiling, find_oriented_hamilton, find_pattern_list_tiling,
    find_spanning_path_system, path_from_dirs,
};
pub use factor::{count_absorbing_sets, find_factor, max_tiling, MaxTiling};

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::pattern::Pattern;

/// Search-node allowance for one exact call.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { limit: u64::MAX, used: 0 }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// Consumes one node; false once the allowance is spent.
    #[inline]
    pub fn spend(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.used > self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

/// Result of an exact decision under a node budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// Proven not to exist.
    Absent,
    /// Budget exhausted before the search completed.
    Unknown,
}

impl<T> Outcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Outcome::Absent)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Outcome::Unknown)
    }

    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::Absent => Outcome::Absent,
            Outcome::Unknown => Outcome::Unknown,
        }
    }
}

/// A copy of a pattern in a host: `map[p]` is the host vertex carrying
/// pattern vertex `p`. Extra host edges are allowed.
#[derive(Clone, Debug)]
pub struct Embedding {
    pattern: Pattern,
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(pattern: Pattern, map: Vec<usize>) -> Self {
        debug_assert_eq!(pattern.order(), map.len());
        Embedding { pattern, map }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn covered(&self, host_order: usize) -> VertexSet {
        VertexSet::from_iter(host_order, self.map.iter().copied())
    }
}

/// Vertex-disjoint embeddings with coverage accounting.
#[derive(Clone, Debug)]
pub struct Tiling {
    host_order: usize,
    embeddings: Vec<Embedding>,
    covered: VertexSet,
}

impl Tiling {
    pub fn new(host_order: usize) -> Self {
        Tiling {
            host_order,
            embeddings: Vec::new(),
            covered: VertexSet::empty(host_order),
        }
    }

    /// Adds a tile; panics in debug builds when it overlaps existing tiles.
    pub fn push(&mut self, emb: Embedding) {
        let c = emb.covered(self.host_order);
        debug_assert!(c.is_disjoint_from(&self.covered));
        self.covered.union_with(&c);
        self.embeddings.push(emb);
    }

    pub fn embeddings(&self) -> &[Embedding] {
        &self.embeddings
    }

    pub fn covered(&self) -> &VertexSet {
        &self.covered
    }

    pub fn size(&self) -> usize {
        self.embeddings.len()
    }

    pub fn host_order(&self) -> usize {
        self.host_order
    }

    pub fn is_spanning(&self) -> bool {
        self.covered.len() == self.host_order
    }

    /// Tiles whose pattern label matches, e.g. to count T₃ versus C₃ tiles.
    pub fn count_label(&self, label: &str) -> usize {
        self.embeddings
            .iter()
            .filter(|e| e.pattern().label() == label)
            .count()
    }
}

/// Independent validity check for one embedding: injectivity, range and
/// edge preservation, straight from the definitions.
pub fn validate_embedding(g: &Digraph, emb: &Embedding) -> bool {
    let p = emb.pattern().graph();
    let map = emb.map();
    if map.len() != p.order() {
        return false;
    }
    if map.iter().any(|&v| v >= g.order()) {
        return false;
    }
    let mut seen = VertexSet::empty(g.order());
    for &v in map {
        if seen.contains(v) {
            return false;
        }
        seen.insert(v);
    }
    p.edges().iter().all(|&(a, b)| g.has_edge(map[a], map[b]))
}

/// Independent validity check for a tiling: every embedding valid, pairwise
/// disjoint images, coverage bookkeeping exact, and spanning when demanded.
pub fn validate_tiling(g: &Digraph, t: &Tiling, spanning: bool) -> bool {
    if t.host_order() != g.order() {
        return false;
    }
    let mut union = VertexSet::empty(g.order());
    for emb in t.embeddings() {
        if !validate_embedding(g, emb) {
            return false;
        }
        let c = emb.covered(g.order());
        if !c.is_disjoint_from(&union) {
            return false;
        }
        union.union_with(&c);
    }
    if &union != t.covered() {
        return false;
    }
    !spanning || union.len() == g.order()
}
