//! Prescribed-multiset tilings: cycle lists, oriented Hamilton cycles and
//! spanning oriented path systems.

use super::copies::{anchored_tiles_single, for_each_embedding, RunStatus, Tile};
use super::{Budget, Embedding, Outcome, Tiling};
use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::{cycle_from_word, Dir, OrientationWord, Pattern};
use std::collections::HashSet;
use std::ops::ControlFlow;

/// Oriented path on `dirs.len() + 1` vertices; position i is the edge
/// between vertices i and i+1, forward when `dirs[i]` is `F`.
pub fn path_from_dirs(dirs: &[Dir]) -> Pattern {
    let n = dirs.len() + 1;
    let mut edges = Vec::with_capacity(dirs.len());
    let mut label = String::from("path:");
    for (i, &d) in dirs.iter().enumerate() {
        match d {
            Dir::F => {
                edges.push((i, i + 1));
                label.push('F');
            }
            Dir::B => {
                edges.push((i + 1, i));
                label.push('B');
            }
        }
    }
    let graph = Digraph::build(n, &edges, &[]).expect("paths are valid digraphs");
    Pattern::generic_labeled(graph, label)
}

struct Multiset {
    classes: Vec<(Pattern, usize)>,
}

impl Multiset {
    fn group(patterns: &[Pattern]) -> Self {
        let mut classes: Vec<(Pattern, usize)> = Vec::new();
        for p in patterns {
            if let Some(entry) = classes.iter_mut().find(|(q, _)| q == p) {
                entry.1 += 1;
            } else {
                classes.push((p.clone(), 1));
            }
        }
        Multiset { classes }
    }

    fn total_order(&self) -> usize {
        self.classes.iter().map(|(p, c)| p.order() * c).sum()
    }
}

/// Exact decision for a prescribed multiset of patterns inside `allowed`.
/// With `spanning` the tiles must cover `allowed` exactly.
///
/// Spanning search branches on the least uncovered vertex over the distinct
/// remaining pattern classes; non-spanning search assigns each class's tiles
/// in increasing order of their minimum vertex. Either way candidate tiles
/// are deduplicated by covered set within a class.
pub fn find_pattern_list_tiling(
    g: &Digraph,
    allowed: &VertexSet,
    patterns: &[Pattern],
    spanning: bool,
    budget: &mut Budget,
) -> Outcome<Tiling> {
    let ms = Multiset::group(patterns);
    let total = ms.total_order();
    if total > allowed.len() || (spanning && total != allowed.len()) {
        return Outcome::Absent;
    }
    let mut counts: Vec<usize> = ms.classes.iter().map(|&(_, c)| c).collect();
    let mut free = allowed.clone();
    let mut chosen: Vec<(usize, Vec<usize>)> = Vec::new();

    let status = if spanning {
        rec_spanning(g, &ms, &mut counts, &mut free, &mut chosen, budget)
    } else {
        rec_ordered(g, &ms, &mut counts, &mut free, &mut chosen, 0, None, budget)
    };
    status.map(|()| {
        let mut t = Tiling::new(g.order());
        for (class, map) in chosen {
            t.push(Embedding::new(ms.classes[class].0.clone(), map));
        }
        t
    })
}

fn rec_spanning(
    g: &Digraph,
    ms: &Multiset,
    counts: &mut [usize],
    free: &mut VertexSet,
    chosen: &mut Vec<(usize, Vec<usize>)>,
    budget: &mut Budget,
) -> Outcome<()> {
    let Some(v) = free.first() else {
        return if counts.iter().all(|&c| c == 0) {
            Outcome::Found(())
        } else {
            Outcome::Absent
        };
    };
    let mut saw_unknown = false;
    for class in 0..ms.classes.len() {
        if counts[class] == 0 {
            continue;
        }
        let mut tiles = Vec::new();
        let mut seen = HashSet::new();
        if !anchored_tiles_single(
            g,
            &ms.classes[class].0,
            class,
            v,
            free,
            budget,
            &mut seen,
            &mut tiles,
        ) {
            return Outcome::Unknown;
        }
        for Tile { covered, map, .. } in tiles {
            counts[class] -= 1;
            free.subtract(&covered);
            chosen.push((class, map));
            match rec_spanning(g, ms, counts, free, chosen, budget) {
                Outcome::Found(()) => return Outcome::Found(()),
                Outcome::Unknown => saw_unknown = true,
                Outcome::Absent => {}
            }
            chosen.pop();
            free.union_with(&covered);
            counts[class] += 1;
        }
    }
    if saw_unknown {
        Outcome::Unknown
    } else {
        Outcome::Absent
    }
}

#[allow(clippy::too_many_arguments)]
fn rec_ordered(
    g: &Digraph,
    ms: &Multiset,
    counts: &mut [usize],
    free: &mut VertexSet,
    chosen: &mut Vec<(usize, Vec<usize>)>,
    class: usize,
    min_anchor: Option<usize>,
    budget: &mut Budget,
) -> Outcome<()> {
    if class == ms.classes.len() {
        return Outcome::Found(());
    }
    if counts[class] == 0 {
        return rec_ordered(g, ms, counts, free, chosen, class + 1, None, budget);
    }
    let remaining: usize = ms.classes[class].0.order() * counts[class]
        + ms.classes[class + 1..]
            .iter()
            .zip(&counts[class + 1..])
            .map(|((p, _), &c)| p.order() * c)
            .sum::<usize>();
    if remaining > free.len() {
        return Outcome::Absent;
    }
    let pattern = ms.classes[class].0.clone();
    let h = pattern.order();
    let mut saw_unknown = false;
    // Anchors ascend within a class, so each tile is rooted at its minimum
    // vertex and equal tiles appear in a canonical order.
    let anchors: Vec<usize> = free
        .iter()
        .filter(|&a| min_anchor.is_none_or(|m| a > m))
        .collect();
    for a in anchors {
        let mut above = VertexSet::from_iter(g.order(), a..g.order());
        above.intersect_with(free);
        if above.len() < h {
            break;
        }
        let mut tiles = Vec::new();
        let mut seen = HashSet::new();
        if !anchored_tiles_single(g, &pattern, class, a, &above, budget, &mut seen, &mut tiles) {
            return Outcome::Unknown;
        }
        for Tile { covered, map, .. } in tiles {
            counts[class] -= 1;
            free.subtract(&covered);
            chosen.push((class, map));
            let next = if counts[class] == 0 {
                rec_ordered(g, ms, counts, free, chosen, class + 1, None, budget)
            } else {
                rec_ordered(g, ms, counts, free, chosen, class, Some(a), budget)
            };
            match next {
                Outcome::Found(()) => return Outcome::Found(()),
                Outcome::Unknown => saw_unknown = true,
                Outcome::Absent => {}
            }
            chosen.pop();
            free.union_with(&covered);
            counts[class] += 1;
        }
    }
    if saw_unknown {
        Outcome::Unknown
    } else {
        Outcome::Absent
    }
}

/// Exact decision for a prescribed list of oriented cycles.
pub fn find_cycle_list_tiling(
    g: &Digraph,
    words: &[OrientationWord],
    spanning: bool,
    budget: &mut Budget,
) -> Result<Outcome<Tiling>> {
    let total: usize = words.iter().map(OrientationWord::len).sum();
    if total > g.order() || (spanning && total != g.order()) {
        return Err(Error::LengthMismatch { total, order: g.order() });
    }
    let patterns: Vec<Pattern> = words.iter().map(cycle_from_word).collect();
    let allowed = VertexSet::full(g.order());
    Ok(find_pattern_list_tiling(g, &allowed, &patterns, spanning, budget))
}

/// Exact decision for one spanning orientation of a Hamilton cycle.
pub fn find_oriented_hamilton(
    g: &Digraph,
    word: &OrientationWord,
    budget: &mut Budget,
) -> Result<Outcome<Embedding>> {
    if word.len() != g.order() {
        return Err(Error::LengthMismatch {
            total: word.len(),
            order: g.order(),
        });
    }
    let pattern = cycle_from_word(word);
    let allowed = VertexSet::full(g.order());
    let mut found: Option<Vec<usize>> = None;
    let mut out_of_budget = false;
    // Vertex 0 lies on any spanning cycle; sweep the pattern role it plays.
    for role in 0..pattern.order() {
        let status = for_each_embedding(g, &pattern, Some((role, 0)), &allowed, budget, &mut |map| {
            found = Some(map.to_vec());
            ControlFlow::Break(())
        });
        match status {
            RunStatus::Stopped => break,
            RunStatus::OutOfBudget => {
                out_of_budget = true;
                break;
            }
            RunStatus::Complete => {}
        }
    }
    Ok(match found {
        Some(map) => Outcome::Found(Embedding::new(pattern, map)),
        None if out_of_budget => Outcome::Unknown,
        None => Outcome::Absent,
    })
}

/// Packs vertex-disjoint oriented paths covering `allowed` exactly: one path
/// per word, with the word's letters as its edge orientations. Returns the
/// vertex sequences in word order.
pub fn find_spanning_path_system(
    g: &Digraph,
    allowed: &VertexSet,
    path_words: &[Vec<Dir>],
    budget: &mut Budget,
) -> Outcome<Vec<Vec<usize>>> {
    let patterns: Vec<Pattern> = path_words.iter().map(|w| path_from_dirs(w)).collect();
    let out = find_pattern_list_tiling(g, allowed, &patterns, true, budget);
    out.map(|tiling| {
        // Hand one tile of the right shape to each requested word in order.
        let mut pool: Vec<Option<&Embedding>> = tiling.embeddings().iter().map(Some).collect();
        patterns
            .iter()
            .map(|p| {
                let slot = pool
                    .iter_mut()
                    .find(|e| e.is_some_and(|e| e.pattern() == p))
                    .expect("multiset cardinalities match");
                slot.take().unwrap().map().to_vec()
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::validate_tiling;

    fn w(s: &str) -> OrientationWord {
        OrientationWord::parse(s).unwrap()
    }

    #[test]
    fn complete_host_spanning_triangles() {
        let g = Digraph::complete(9);
        let words = vec![w("FFF"), w("FFF"), w("FFF")];
        let out = find_cycle_list_tiling(&g, &words, true, &mut Budget::unlimited()).unwrap();
        let t = out.found().expect("spanning tiling");
        assert!(validate_tiling(&g, &t, true));
        assert_eq!(t.size(), 3);
    }

    #[test]
    fn mixed_lengths_on_k7() {
        let g = Digraph::complete(7);
        let words = vec![w("FFF"), w("FFFF")];
        let out = find_cycle_list_tiling(&g, &words, true, &mut Budget::unlimited()).unwrap();
        assert!(out.is_found());
    }

    #[test]
    fn length_sum_checks() {
        let g = Digraph::complete(5);
        assert!(find_cycle_list_tiling(&g, &[w("FFF"), w("FFF")], false, &mut Budget::unlimited())
            .is_err());
        assert!(find_cycle_list_tiling(&g, &[w("FFF")], true, &mut Budget::unlimited()).is_err());
    }

    #[test]
    fn non_spanning_placement() {
        let g = Digraph::complete(5);
        let out = find_cycle_list_tiling(&g, &[w("FFF")], false, &mut Budget::unlimited()).unwrap();
        let t = out.found().unwrap();
        assert!(validate_tiling(&g, &t, false));
        assert_eq!(t.covered().len(), 3);
    }

    #[test]
    fn hamilton_on_complete_and_sparse_hosts() {
        let k5 = Digraph::complete(5);
        for word in ["FFFFF", "FBFBF", "FFBBF"] {
            let out = find_oriented_hamilton(&k5, &w(word), &mut Budget::unlimited()).unwrap();
            assert!(out.is_found(), "word {word}");
        }

        let c5 = Digraph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], &[]).unwrap();
        assert!(find_oriented_hamilton(&c5, &w("FFFFF"), &mut Budget::unlimited())
            .unwrap()
            .is_found());
        assert!(find_oriented_hamilton(&c5, &w("FBFBF"), &mut Budget::unlimited())
            .unwrap()
            .is_absent());
        assert!(find_oriented_hamilton(&c5, &w("FFFF"), &mut Budget::unlimited()).is_err());
    }

    #[test]
    fn hamilton_agrees_with_single_cycle_list() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(11);
        for trial in 0..40 {
            let n = 5 + (trial % 4);
            let mut g = Digraph::empty(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.random_bool(0.55) {
                        g.add_edge(u, v);
                    }
                }
            }
            let letters: Vec<Dir> = (0..n)
                .map(|_| if rng.random_bool(0.5) { Dir::F } else { Dir::B })
                .collect();
            let word = OrientationWord::new(letters).unwrap();
            let a = find_oriented_hamilton(&g, &word, &mut Budget::unlimited())
                .unwrap()
                .is_found();
            let b = find_cycle_list_tiling(&g, std::slice::from_ref(&word), true, &mut Budget::unlimited())
                .unwrap()
                .is_found();
            assert_eq!(a, b, "trial {trial}");
        }
    }

    #[test]
    fn path_system_covers_exactly() {
        let g = Digraph::complete(7);
        let allowed = VertexSet::from_iter(7, 0..5);
        let words = vec![vec![Dir::F, Dir::B], vec![Dir::F]];
        let out = find_spanning_path_system(&g, &allowed, &words, &mut Budget::unlimited());
        let paths = out.found().expect("packing exists");
        assert_eq!(paths.len(), 2);
        assert_eq!(paths[0].len(), 3);
        assert_eq!(paths[1].len(), 2);
        let mut all: Vec<usize> = paths.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3, 4]);
        // Orientation of the first path: v0 → v1 ← v2.
        assert!(g.has_edge(paths[0][0], paths[0][1]));
    }
}
