//! Spanning prescribed-cycle tilings by recursive bisection: split the
//! cycle-length multiset near evenly, split the vertex set by a semi-degree
//! preserving random partition, and recurse; a single cycle embeds as a
//! spanning orientation of a Hamilton cycle.

use super::split::random_split_subset;
use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::{cycle_from_word, OrientationWord};
use crate::solve::{find_pattern_list_tiling, Budget, Embedding, Outcome, Tiling};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Clone, Debug)]
pub struct RecurseParams {
    /// Balance parameter σ: both sides of a split carry between σ|U| and
    /// (1−σ)|U| cycle vertices.
    pub sigma: f64,
    pub retries: usize,
    pub budget_nodes: u64,
    pub seed: u64,
}

impl Default for RecurseParams {
    fn default() -> Self {
        RecurseParams {
            sigma: 0.15,
            retries: 100,
            budget_nodes: 10_000_000,
            seed: 0,
        }
    }
}

/// Spanning tiling of `g` by the prescribed cycle orientations.
pub fn recursive_cycle_partition(
    g: &Digraph,
    words: &[OrientationWord],
    params: &RecurseParams,
) -> Result<Tiling> {
    let total: usize = words.iter().map(OrientationWord::len).sum();
    if total != g.order() {
        return Err(Error::LengthMismatch {
            total,
            order: g.order(),
        });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(params.seed);
    let allowed = VertexSet::full(g.order());
    let mut embeddings = Vec::new();
    solve_region(g, &allowed, words.to_vec(), params, &mut rng, &mut embeddings)?;
    let mut tiling = Tiling::new(g.order());
    for emb in embeddings {
        tiling.push(emb);
    }
    Ok(tiling)
}

fn solve_region(
    g: &Digraph,
    region: &VertexSet,
    mut words: Vec<OrientationWord>,
    params: &RecurseParams,
    rng: &mut ChaCha20Rng,
    out: &mut Vec<Embedding>,
) -> Result<()> {
    debug_assert_eq!(
        words.iter().map(OrientationWord::len).sum::<usize>(),
        region.len()
    );
    words.sort_by_key(|w| std::cmp::Reverse(w.len()));
    let u = region.len();

    if words.len() == 1 {
        return embed_spanning(g, region, &words[0], params, out);
    }

    let sigma = params.sigma;
    if words[0].len() as f64 > (1.0 - sigma) * u as f64 {
        // One dominant cycle: peel the small ones greedily, then span the
        // remainder with the big one.
        let mut residual = region.clone();
        for w in &words[1..] {
            let pattern = cycle_from_word(w);
            let mut budget = Budget::nodes(params.budget_nodes);
            match find_pattern_list_tiling(g, &residual, std::slice::from_ref(&pattern), false, &mut budget)
            {
                Outcome::Found(t) => {
                    let emb = t.embeddings()[0].clone();
                    residual.subtract(&emb.covered(g.order()));
                    out.push(emb);
                }
                Outcome::Absent => {
                    return Err(Error::DeadEnd(format!(
                        "greedy removal: no copy of {w} in a {}-vertex region",
                        residual.len()
                    )))
                }
                Outcome::Unknown => {
                    return Err(Error::StageFailed {
                        round: 0,
                        stage: format!("greedy removal of {w} (budget exhausted)"),
                    })
                }
            }
        }
        return embed_spanning(g, &residual, &words[0], params, out);
    }

    // Balanced index split: lengths descend onto the lighter side.
    let mut side = vec![false; words.len()];
    let (mut s1, mut s2) = (0usize, 0usize);
    for (i, w) in words.iter().enumerate() {
        if s1 <= s2 {
            side[i] = true;
            s1 += w.len();
        } else {
            s2 += w.len();
        }
    }
    let low = (sigma * u as f64).ceil() as usize;
    let high = u - low;
    if s1 < low || s1 > high {
        return Err(Error::Infeasible(format!(
            "length multiset cannot be split within [{low}, {high}] of {u}"
        )));
    }
    let split = random_split_subset(g, region, s1, params.retries, rng)?;
    let (w1, w2): (Vec<_>, Vec<_>) = words
        .into_iter()
        .enumerate()
        .partition(|(i, _)| side[*i]);
    solve_region(g, &split.u1, w1.into_iter().map(|(_, w)| w).collect(), params, rng, out)?;
    solve_region(g, &split.u2, w2.into_iter().map(|(_, w)| w).collect(), params, rng, out)
}

fn embed_spanning(
    g: &Digraph,
    region: &VertexSet,
    word: &OrientationWord,
    params: &RecurseParams,
    out: &mut Vec<Embedding>,
) -> Result<()> {
    let pattern = cycle_from_word(word);
    let mut budget = Budget::nodes(params.budget_nodes);
    match find_pattern_list_tiling(g, region, std::slice::from_ref(&pattern), true, &mut budget) {
        Outcome::Found(t) => {
            out.push(t.embeddings()[0].clone());
            Ok(())
        }
        Outcome::Absent => Err(Error::DeadEnd(format!(
            "no spanning copy of {word} in a {}-vertex region",
            region.len()
        ))),
        Outcome::Unknown => Err(Error::StageFailed {
            round: 0,
            stage: format!("spanning embedding of {word} (budget exhausted)"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::validate_tiling;

    fn w(s: &str) -> OrientationWord {
        OrientationWord::parse(s).unwrap()
    }

    #[test]
    fn four_triangles_on_k12() {
        let g = Digraph::complete(12);
        let words: Vec<OrientationWord> = (0..4).map(|_| w("FFF")).collect();
        let t = recursive_cycle_partition(&g, &words, &RecurseParams::default()).unwrap();
        assert_eq!(t.size(), 4);
        assert!(validate_tiling(&g, &t, true));
    }

    #[test]
    fn two_five_cycles_on_k10() {
        let g = Digraph::complete(10);
        for pair in [["FFFFF", "FBFBF"], ["FFFFF", "FFFFF"], ["FBBFF", "FFFBB"]] {
            let words = vec![w(pair[0]), w(pair[1])];
            let t = recursive_cycle_partition(&g, &words, &RecurseParams::default()).unwrap();
            assert!(validate_tiling(&g, &t, true));
        }
    }

    #[test]
    fn length_sum_must_match() {
        let g = Digraph::complete(10);
        assert!(recursive_cycle_partition(&g, &[w("FFF")], &RecurseParams::default()).is_err());
    }

    #[test]
    fn dominant_cycle_branch() {
        // One length-9 cycle plus a triangle on 12 vertices: 9 > (1-σ)·12.
        let g = Digraph::complete(12);
        let words = vec![w("FFFFFFFFF"), w("FFF")];
        let t = recursive_cycle_partition(&g, &words, &RecurseParams::default()).unwrap();
        assert!(validate_tiling(&g, &t, true));
        assert_eq!(t.size(), 2);
    }
}
