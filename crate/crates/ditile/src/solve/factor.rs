//! Exact factor / maximum-tiling search and absorbing-set counting.

use super::copies::{anchored_tiles, Tile};
use super::{Budget, Embedding, Outcome, Tiling};
use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::Pattern;

/// Residual sizes expressible as a sum of pattern orders (with repetition).
fn feasible_sizes(n: usize, orders: &[usize]) -> Vec<bool> {
    let mut f = vec![false; n + 1];
    f[0] = true;
    for s in 1..=n {
        f[s] = orders.iter().any(|&h| h <= s && f[s - h]);
    }
    f
}

/// Exact decision: does `g` have a spanning tiling using only the given
/// patterns (each any number of times)?
///
/// Branches on the least-index uncovered vertex; candidate tiles there are
/// deduplicated by covered set, preferring patterns earlier in the slice.
pub fn find_factor(g: &Digraph, patterns: &[Pattern], budget: &mut Budget) -> Outcome<Tiling> {
    let n = g.order();
    if patterns.is_empty() {
        return if n == 0 { Outcome::Found(Tiling::new(0)) } else { Outcome::Absent };
    }
    let orders: Vec<usize> = patterns.iter().map(Pattern::order).collect();
    let feasible = feasible_sizes(n, &orders);
    let mut uncovered = VertexSet::full(n);
    let mut tiles: Vec<(usize, Vec<usize>)> = Vec::new();

    fn rec(
        g: &Digraph,
        patterns: &[Pattern],
        feasible: &[bool],
        uncovered: &mut VertexSet,
        tiles: &mut Vec<(usize, Vec<usize>)>,
        budget: &mut Budget,
    ) -> Outcome<()> {
        let Some(v) = uncovered.first() else {
            return Outcome::Found(());
        };
        if !feasible[uncovered.len()] {
            return Outcome::Absent;
        }
        let Some(cands) = anchored_tiles(g, patterns, v, uncovered, budget) else {
            return Outcome::Unknown;
        };
        let mut saw_unknown = false;
        for Tile { covered, map, pattern_idx } in cands {
            uncovered.subtract(&covered);
            tiles.push((pattern_idx, map));
            match rec(g, patterns, feasible, uncovered, tiles, budget) {
                Outcome::Found(()) => return Outcome::Found(()),
                Outcome::Unknown => saw_unknown = true,
                Outcome::Absent => {}
            }
            tiles.pop();
            uncovered.union_with(&covered);
        }
        if saw_unknown {
            Outcome::Unknown
        } else {
            Outcome::Absent
        }
    }

    match rec(g, patterns, &feasible, &mut uncovered, &mut tiles, budget) {
        Outcome::Found(()) => {
            let mut t = Tiling::new(n);
            for (pidx, map) in tiles {
                t.push(Embedding::new(patterns[pidx].clone(), map));
            }
            Outcome::Found(t)
        }
        Outcome::Absent => Outcome::Absent,
        Outcome::Unknown => Outcome::Unknown,
    }
}

/// A maximum-cardinality tiling and whether optimality was proven within
/// the budget.
#[derive(Clone, Debug)]
pub struct MaxTiling {
    pub tiling: Tiling,
    pub optimal: bool,
}

/// Branch-and-bound maximum H-tiling. The bound `current + ⌊remaining/|H|⌋`
/// prunes; the skip branch (leaving the branch vertex uncovered) is explored
/// after all tile branches.
pub fn max_tiling(g: &Digraph, pattern: &Pattern, budget: &mut Budget) -> MaxTiling {
    let n = g.order();
    let h = pattern.order();
    let patterns = std::slice::from_ref(pattern);

    struct State<'a> {
        g: &'a Digraph,
        patterns: &'a [Pattern],
        h: usize,
        best: Vec<Vec<usize>>,
        complete: bool,
    }

    fn rec(
        st: &mut State<'_>,
        remaining: &mut VertexSet,
        current: &mut Vec<Vec<usize>>,
        budget: &mut Budget,
    ) {
        if current.len() > st.best.len() {
            st.best = current.clone();
        }
        let upper = current.len() + remaining.len() / st.h;
        if upper <= st.best.len() {
            return;
        }
        let Some(v) = remaining.first() else {
            return;
        };
        let Some(cands) = anchored_tiles(st.g, st.patterns, v, remaining, budget) else {
            st.complete = false;
            return;
        };
        for Tile { covered, map, .. } in cands {
            remaining.subtract(&covered);
            current.push(map);
            rec(st, remaining, current, budget);
            current.pop();
            remaining.union_with(&covered);
            if budget.exhausted() {
                st.complete = false;
                return;
            }
        }
        // Skip branch: v stays uncovered.
        remaining.remove(v);
        rec(st, remaining, current, budget);
        remaining.insert(v);
    }

    let mut st = State { g, patterns, h, best: Vec::new(), complete: true };
    let mut remaining = VertexSet::full(n);
    let mut current = Vec::new();
    if h >= 1 && h <= n {
        rec(&mut st, &mut remaining, &mut current, budget);
    }
    let mut tiling = Tiling::new(n);
    for map in st.best {
        tiling.push(Embedding::new(pattern.clone(), map));
    }
    MaxTiling { tiling, optimal: st.complete }
}

/// Exact count of `size`-sets X ⊆ V∖{x,y} such that both G[X ∪ {x}] and
/// G[X ∪ {y}] contain H-factors. Requires `size ≡ −1 (mod |H|)` and `x ≠ y`.
pub fn count_absorbing_sets(
    g: &Digraph,
    pattern: &Pattern,
    x: usize,
    y: usize,
    size: usize,
    budget: &mut Budget,
) -> Result<Outcome<u64>> {
    let h = pattern.order();
    if x == y {
        return Err(Error::InvalidParameter("absorbing endpoints must differ".into()));
    }
    if x >= g.order() || y >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: x.max(y),
            order: g.order(),
        });
    }
    if (size + 1) % h != 0 {
        return Err(Error::InvalidParameter(format!(
            "set size {size} is not ≡ -1 mod pattern order {h}"
        )));
    }
    let pool: Vec<usize> = (0..g.order()).filter(|&v| v != x && v != y).collect();
    if size > pool.len() {
        return Ok(Outcome::Found(0));
    }
    let patterns = std::slice::from_ref(pattern);
    let mut count = 0u64;
    let mut subset = vec![0usize; size];
    let mut unknown = false;

    fn visit(
        g: &Digraph,
        patterns: &[Pattern],
        pool: &[usize],
        subset: &mut Vec<usize>,
        start: usize,
        size: usize,
        x: usize,
        y: usize,
        count: &mut u64,
        unknown: &mut bool,
        budget: &mut Budget,
    ) {
        if subset.len() == size {
            let mut ok = true;
            for &anchor in &[x, y] {
                let mut keep = VertexSet::from_iter(g.order(), subset.iter().copied());
                keep.insert(anchor);
                let (sub, _) = g.induced(&keep);
                match find_factor(&sub, patterns, budget) {
                    Outcome::Found(_) => {}
                    Outcome::Absent => {
                        ok = false;
                        break;
                    }
                    Outcome::Unknown => {
                        *unknown = true;
                        return;
                    }
                }
            }
            if ok {
                *count += 1;
            }
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < size - subset.len() {
                break;
            }
            subset.push(pool[i]);
            visit(g, patterns, pool, subset, i + 1, size, x, y, count, unknown, budget);
            subset.pop();
            if *unknown {
                return;
            }
        }
    }

    subset.clear();
    visit(
        g, patterns, &pool, &mut subset, 0, size, x, y, &mut count, &mut unknown, budget,
    );
    if unknown {
        Ok(Outcome::Unknown)
    } else {
        Ok(Outcome::Found(count))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{cycle_from_word, transitive_tournament, OrientationWord};
    use crate::solve::validate_tiling;

    fn t3() -> Pattern {
        transitive_tournament(3).unwrap()
    }

    fn c3() -> Pattern {
        cycle_from_word(&OrientationWord::parse("FFF").unwrap())
    }

    #[test]
    fn complete_host_has_t3_factor() {
        let g = Digraph::complete(6);
        let out = find_factor(&g, &[t3()], &mut Budget::unlimited());
        let tiling = out.found().expect("factor exists");
        assert_eq!(tiling.size(), 2);
        assert!(validate_tiling(&g, &tiling, true));
    }

    #[test]
    fn tripartite_extremal_has_no_cycle_factor() {
        let g = Digraph::complete_multipartite(&[2, 4, 3]).unwrap();
        for word in ["FFF", "FFB", "FBB"] {
            let c = cycle_from_word(&OrientationWord::parse(word).unwrap());
            assert!(
                find_factor(&g, &[c], &mut Budget::unlimited()).is_absent(),
                "word {word}"
            );
        }
    }

    #[test]
    fn mixed_factor_prefers_first_pattern() {
        let g = Digraph::complete(6);
        let out = find_factor(&g, &[c3(), t3()], &mut Budget::unlimited());
        let tiling = out.found().unwrap();
        // A complete host carries C₃ on every 3-set; with C₃ listed first all
        // tiles come out as cycles.
        assert_eq!(tiling.count_label(c3().label()), 2);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let g = Digraph::complete(9);
        let out = find_factor(&g, &[t3()], &mut Budget::nodes(3));
        assert!(out.is_unknown());
    }

    #[test]
    fn max_tiling_examples() {
        let g = Digraph::complete(7);
        let mt = max_tiling(&g, &t3(), &mut Budget::unlimited());
        assert!(mt.optimal);
        assert_eq!(mt.tiling.size(), 2);

        let e = Digraph::empty(5);
        let mt = max_tiling(&e, &transitive_tournament(2).unwrap(), &mut Budget::unlimited());
        assert!(mt.optimal);
        assert_eq!(mt.tiling.size(), 0);
    }

    #[test]
    fn max_tiling_consistent_with_factor() {
        let g = Digraph::complete_multipartite(&[3, 3]).unwrap();
        let p = t3();
        let mt = max_tiling(&g, &p, &mut Budget::unlimited());
        let factor = find_factor(&g, &[p], &mut Budget::unlimited());
        assert!(mt.optimal);
        assert_eq!(factor.is_found(), mt.tiling.size() * 3 == g.order());
    }

    #[test]
    fn absorbing_counts() {
        // K4 with T2, size 1: both other vertices work.
        let g = Digraph::complete(4);
        let t2 = transitive_tournament(2).unwrap();
        let out = count_absorbing_sets(&g, &t2, 0, 1, 1, &mut Budget::unlimited()).unwrap();
        assert_eq!(out, Outcome::Found(2));

        // Edgeless: zero.
        let e = Digraph::empty(8);
        let out = count_absorbing_sets(&e, &t3(), 0, 1, 5, &mut Budget::unlimited()).unwrap();
        assert_eq!(out, Outcome::Found(0));

        // Size larger than the pool: zero sets exist.
        let g = Digraph::complete(6);
        let out = count_absorbing_sets(&g, &t3(), 0, 1, 5, &mut Budget::unlimited()).unwrap();
        assert_eq!(out, Outcome::Found(0));

        // Divisibility violation.
        assert!(count_absorbing_sets(&g, &t3(), 0, 1, 4, &mut Budget::unlimited()).is_err());
        assert!(count_absorbing_sets(&g, &t3(), 2, 2, 5, &mut Budget::unlimited()).is_err());
    }

    #[test]
    fn absorbing_count_matches_enumeration_on_k8() {
        // Every 5-subset of K8 minus {x,y} works: C(6,5) = 6.
        let g = Digraph::complete(8);
        let out = count_absorbing_sets(&g, &t3(), 0, 1, 5, &mut Budget::unlimited()).unwrap();
        assert_eq!(out, Outcome::Found(6));
    }
}
