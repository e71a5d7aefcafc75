//! Target digraphs for tiling: cycle orientations, transitive tournaments,
//! directed-path blow-ups and trees, plus the level-assignment test for
//! homomorphisms into directed paths.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::fmt;

/// One letter of an orientation word: `F` orients cycle position i as
/// v_i → v_{i+1}, `B` as v_{i+1} → v_i (indices mod length).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    F,
    B,
}

/// A word over {F, B} of length >= 3 encoding an orientation of a cycle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientationWord {
    letters: Vec<Dir>,
}

impl OrientationWord {
    pub fn new(letters: Vec<Dir>) -> Result<Self> {
        if letters.len() < 3 {
            return Err(Error::WordTooShort(letters.len()));
        }
        Ok(OrientationWord { letters })
    }

    /// Parses a string over {F, B}, case-insensitive.
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'F' => Ok(Dir::F),
                'B' => Ok(Dir::B),
                other => Err(Error::BadWordLetter(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }

    /// All 2^len words of a given length.
    pub fn all_of_length(len: usize) -> Vec<OrientationWord> {
        assert!(len >= 3);
        (0..1u32 << len)
            .map(|bits| OrientationWord {
                letters: (0..len)
                    .map(|i| if bits >> i & 1 == 0 { Dir::F } else { Dir::B })
                    .collect(),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[Dir] {
        &self.letters
    }

    pub fn forward_count(&self) -> usize {
        self.letters.iter().filter(|&&d| d == Dir::F).count()
    }

    /// True iff the forward and backward edge counts agree.
    pub fn is_balanced(&self) -> bool {
        2 * self.forward_count() == self.len()
    }

    /// The directed cycle word FF…F.
    pub fn directed(len: usize) -> Result<Self> {
        Self::new(vec![Dir::F; len])
    }
}

impl fmt::Display for OrientationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.letters {
            f.write_str(match d {
                Dir::F => "F",
                Dir::B => "B",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for OrientationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({self})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternKind {
    Cycle,
    TransitiveTournament,
    PathBlowup,
    Tree,
    Generic,
}

/// A small loop-free target digraph with a structural tag.
#[derive(Clone, PartialEq, Eq)]
pub struct Pattern {
    graph: Digraph,
    kind: PatternKind,
    label: String,
}

impl Pattern {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Wraps an arbitrary loop-free digraph.
    pub fn generic(graph: Digraph) -> Result<Self> {
        if !graph.loops().is_empty() {
            return Err(Error::InvalidParameter("patterns must be loop-free".into()));
        }
        let label = format!("generic{}", graph.order());
        Ok(Pattern { graph, kind: PatternKind::Generic, label })
    }

    /// Internal constructor for pattern factories that guarantee loop-freeness.
    pub(crate) fn generic_labeled(graph: Digraph, label: String) -> Self {
        debug_assert!(graph.loops().is_empty());
        Pattern { graph, kind: PatternKind::Generic, label }
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({})", self.label)
    }
}

/// Builds the cycle orientation encoded by `w`: order ℓ, exactly ℓ edges.
pub fn cycle_from_word(w: &OrientationWord) -> Pattern {
    let len = w.len();
    let mut edges = Vec::with_capacity(len);
    for (i, &d) in w.letters().iter().enumerate() {
        let j = (i + 1) % len;
        match d {
            Dir::F => edges.push((i, j)),
            Dir::B => edges.push((j, i)),
        }
    }
    let graph = Digraph::build(len, &edges, &[]).expect("cycle word yields a valid digraph");
    Pattern {
        graph,
        kind: PatternKind::Cycle,
        label: format!("c:{w}"),
    }
}

/// Transitive tournament on `r` vertices; every edge points from lower to
/// higher rank.
pub fn transitive_tournament(r: usize) -> Result<Pattern> {
    if r == 0 {
        return Err(Error::InvalidParameter("tournament order must be >= 1".into()));
    }
    let mut edges = Vec::with_capacity(r * (r - 1) / 2);
    for i in 0..r {
        for j in i + 1..r {
            edges.push((i, j));
        }
    }
    Ok(Pattern {
        graph: Digraph::build(r, &edges, &[])?,
        kind: PatternKind::TransitiveTournament,
        label: format!("t{r}"),
    })
}

/// Blow-up of a directed path: group i (size t_i) sends all edges to group i+1.
pub fn path_blowup(sizes: &[usize]) -> Result<Pattern> {
    if sizes.is_empty() || sizes.iter().any(|&t| t == 0) {
        return Err(Error::InvalidParameter(
            "path blow-up sizes must be non-empty and positive".into(),
        ));
    }
    let n: usize = sizes.iter().sum();
    let mut starts = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &t in sizes {
        starts.push(acc);
        acc += t;
    }
    let mut edges = Vec::new();
    for k in 0..sizes.len().saturating_sub(1) {
        for a in 0..sizes[k] {
            for b in 0..sizes[k + 1] {
                edges.push((starts[k] + a, starts[k + 1] + b));
            }
        }
    }
    let label = format!(
        "p:{}",
        sizes.iter().map(ToString::to_string).collect::<Vec<_>>().join("-")
    );
    Ok(Pattern {
        graph: Digraph::build(n, &edges, &[])?,
        kind: PatternKind::PathBlowup,
        label,
    })
}

/// Uniformly random labeled tree (Prüfer construction) with an independent
/// fair coin per edge orientation; reproducible by seed.
pub fn random_tree(h: usize, seed: u64) -> Result<Pattern> {
    if h == 0 {
        return Err(Error::InvalidParameter("tree order must be >= 1".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut undirected: Vec<(usize, usize)> = Vec::with_capacity(h.saturating_sub(1));
    if h == 2 {
        undirected.push((0, 1));
    } else if h > 2 {
        let prufer: Vec<usize> = (0..h - 2).map(|_| rng.random_range(0..h)).collect();
        let mut degree = vec![1usize; h];
        for &v in &prufer {
            degree[v] += 1;
        }
        let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..h)
            .filter(|&v| degree[v] == 1)
            .map(std::cmp::Reverse)
            .collect();
        for &v in &prufer {
            let std::cmp::Reverse(leaf) = leaves.pop().expect("tree decode invariant");
            undirected.push((leaf, v));
            degree[v] -= 1;
            if degree[v] == 1 {
                leaves.push(std::cmp::Reverse(v));
            }
        }
        let std::cmp::Reverse(a) = leaves.pop().unwrap();
        let std::cmp::Reverse(b) = leaves.pop().unwrap();
        undirected.push((a, b));
    }
    let edges: Vec<(usize, usize)> = undirected
        .into_iter()
        .map(|(a, b)| if rng.random_bool(0.5) { (a, b) } else { (b, a) })
        .collect();
    Ok(Pattern {
        graph: Digraph::build(h, &edges, &[])?,
        kind: PatternKind::Tree,
        label: format!("tree{h}#{seed}"),
    })
}

/// A level assignment witnessing a homomorphism into a directed path:
/// every edge x→y has level(y) = level(x) + 1 and the minimum level is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMap {
    pub level: Vec<usize>,
    pub k: usize,
}

impl LevelMap {
    /// Fiber sizes (t_1, …, t_k): the pattern embeds into the directed-path
    /// blow-up with these group sizes.
    pub fn fibers(&self) -> Vec<usize> {
        let mut t = vec![0usize; self.k];
        for &l in &self.level {
            t[l - 1] += 1;
        }
        t
    }

    pub fn respects_edges(&self, g: &Digraph) -> bool {
        g.edges().iter().all(|&(x, y)| self.level[y] == self.level[x] + 1)
    }
}

/// Propagates levels along edges within each weak component; consistent
/// exactly when every underlying cycle is balanced. Components are anchored
/// at level 1, which minimizes the resulting path length k.
pub fn hom_into_directed_path(h: &Pattern) -> Option<LevelMap> {
    let g = h.graph();
    let n = g.order();
    if n == 0 {
        return Some(LevelMap { level: vec![], k: 0 });
    }
    let mut offset = vec![i64::MAX; n];
    let mut level = vec![0usize; n];
    let mut k = 1;
    for start in 0..n {
        if offset[start] != i64::MAX {
            continue;
        }
        offset[start] = 0;
        let mut component = vec![start];
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let step = |y: usize,
                        want: i64,
                        offset: &mut Vec<i64>,
                        component: &mut Vec<usize>,
                        queue: &mut std::collections::VecDeque<usize>| {
                if offset[y] == i64::MAX {
                    offset[y] = want;
                    component.push(y);
                    queue.push_back(y);
                    true
                } else {
                    offset[y] == want
                }
            };
            for y in g.out_neighbors(x).iter() {
                if !step(y, offset[x] + 1, &mut offset, &mut component, &mut queue) {
                    return None;
                }
            }
            for y in g.in_neighbors(x).iter() {
                if !step(y, offset[x] - 1, &mut offset, &mut component, &mut queue) {
                    return None;
                }
            }
        }
        let min = component.iter().map(|&v| offset[v]).min().unwrap();
        for &v in &component {
            let l = (offset[v] - min + 1) as usize;
            level[v] = l;
            k = k.max(l);
        }
    }
    let lm = LevelMap { level, k };
    debug_assert!(lm.respects_edges(g));
    Some(lm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_parsing() {
        let w = OrientationWord::parse("fBf").unwrap();
        assert_eq!(w.to_string(), "FBF");
        assert!(matches!(OrientationWord::parse("FF"), Err(Error::WordTooShort(2))));
        assert!(matches!(OrientationWord::parse("FXF"), Err(Error::BadWordLetter('X'))));
    }

    #[test]
    fn cycle_from_word_shapes() {
        let c3 = cycle_from_word(&OrientationWord::parse("FFF").unwrap());
        assert_eq!(c3.order(), 3);
        assert!(c3.graph().has_edge(0, 1) && c3.graph().has_edge(2, 0));

        let anti_c4 = cycle_from_word(&OrientationWord::parse("FBFB").unwrap());
        assert_eq!(anti_c4.graph().edge_count(), 4);
        assert!(anti_c4.graph().has_edge(0, 1));
        assert!(anti_c4.graph().has_edge(2, 1));

        let c5 = cycle_from_word(&OrientationWord::parse("FFFFF").unwrap());
        assert_eq!(c5.graph().edge_count(), 5);

        // In and out degrees sum to 2 at every vertex.
        for w in OrientationWord::all_of_length(6) {
            let p = cycle_from_word(&w);
            let d = p.graph().degrees();
            assert!(d.d_total.iter().all(|&x| x == 2));
            assert_eq!(p.graph().edge_count(), 6);
        }
    }

    #[test]
    fn balance_examples() {
        assert!(OrientationWord::parse("FBFB").unwrap().is_balanced());
        assert!(!OrientationWord::parse("FFF").unwrap().is_balanced());
        assert!(OrientationWord::parse("FFBB").unwrap().is_balanced());
    }

    #[test]
    fn hom_levels_for_anti_c4() {
        let p = cycle_from_word(&OrientationWord::parse("FBFB").unwrap());
        let lm = hom_into_directed_path(&p).unwrap();
        assert_eq!(lm.level, vec![1, 2, 1, 2]);
        assert_eq!(lm.k, 2);
        assert_eq!(lm.fibers(), vec![2, 2]);
    }

    #[test]
    fn hom_rejects_directed_triangle() {
        let p = cycle_from_word(&OrientationWord::parse("FFF").unwrap());
        assert!(hom_into_directed_path(&p).is_none());
    }

    #[test]
    fn trees_always_have_levels() {
        for seed in 0..20 {
            let t = random_tree(5, seed).unwrap();
            assert_eq!(t.graph().edge_count(), 4);
            let lm = hom_into_directed_path(&t).expect("trees embed into directed paths");
            assert!(lm.respects_edges(t.graph()));
        }
    }

    #[test]
    fn random_tree_is_reproducible() {
        let a = random_tree(9, 42).unwrap();
        let b = random_tree(9, 42).unwrap();
        assert_eq!(a.graph(), b.graph());
    }

    #[test]
    fn tournament_and_path_blowup() {
        let t3 = transitive_tournament(3).unwrap();
        assert_eq!(t3.graph().edge_count(), 3);
        let d = t3.graph().degrees();
        assert_eq!(d.d_out.iter().filter(|&&x| x == 2).count(), 1);

        let sink = path_blowup(&[2, 1]).unwrap();
        assert_eq!(sink.graph().edge_count(), 2);
        assert_eq!(sink.graph().degrees().d_in[2], 2);

        let p3 = path_blowup(&[1, 1, 1]).unwrap();
        assert_eq!(p3.graph().edge_count(), 2);
        assert!(p3.graph().has_edge(0, 1) && p3.graph().has_edge(1, 2));

        assert!(path_blowup(&[]).is_err());
        assert!(path_blowup(&[1, 0]).is_err());
        assert!(transitive_tournament(0).is_err());
    }

    #[test]
    fn balanced_iff_hom_small_lengths() {
        for len in 3..=8 {
            for w in OrientationWord::all_of_length(len) {
                let p = cycle_from_word(&w);
                let hom = hom_into_directed_path(&p);
                assert_eq!(w.is_balanced(), hom.is_some(), "word {w}");
                if let Some(lm) = hom {
                    assert!(lm.respects_edges(p.graph()));
                }
            }
        }
    }
}
