//! Round-based construction of prescribed cycle tilings: random part
//! reservation, per-round path packing and one-vertex cycle closure.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::{cycle_from_word, Dir, OrientationWord};
use crate::solve::{find_spanning_path_system, Budget, Embedding, Outcome, Tiling};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// The cycles required of one round: one orientation word per slot.
#[derive(Clone, Debug)]
pub struct QSpec {
    words: Vec<OrientationWord>,
}

impl QSpec {
    pub fn new(words: Vec<OrientationWord>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidParameter("empty cycle spec".into()));
        }
        Ok(QSpec { words })
    }

    pub fn words(&self) -> &[OrientationWord] {
        &self.words
    }

    /// Σ ℓ·q_ℓ, the vertices one round consumes.
    pub fn total_vertices(&self) -> usize {
        self.words.iter().map(OrientationWord::len).sum()
    }

    /// Σ (ℓ−1)·q_ℓ, the vertices packed as paths before closure.
    pub fn path_vertices(&self) -> usize {
        self.words.iter().map(|w| w.len() - 1).sum()
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(OrientationWord::len).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct RoundTilingParams {
    /// Slack γ: the prescribed cycles may use at most (1−γ)·|host| vertices.
    pub gamma: f64,
    /// Largest admissible cycle length L.
    pub max_len: usize,
    /// Resampling attempts per round.
    pub retries: usize,
    /// Node budget per exact path-packing call.
    pub budget_nodes: u64,
}

impl Default for RoundTilingParams {
    fn default() -> Self {
        RoundTilingParams {
            gamma: 0.2,
            max_len: 12,
            retries: 100,
            budget_nodes: 10_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RoundTiling {
    /// One tiling per round, pairwise vertex-disjoint.
    pub rounds: Vec<Tiling>,
    pub combined: Tiling,
}

/// Builds R vertex-disjoint q-cycle tilings, each realizing `spec`.
///
/// The host splits at random into parts W₁ … W_{R+1}; round r packs
/// oriented paths (each cycle minus its last vertex) into a random subset
/// of the running reservoir and closes every path through a fresh W_{r+1}
/// vertex carrying the two required edge directions.
pub fn round_cycle_tiling(
    g: &Digraph,
    spec: &QSpec,
    rounds: usize,
    seed: u64,
    params: &RoundTilingParams,
) -> Result<RoundTiling> {
    let specs = vec![spec.clone(); rounds];
    rounds_engine(g, &VertexSet::full(g.order()), &specs, seed, params)
}

/// Greedy prefix plus rounds: realizes an arbitrary multiset of cycle words
/// by first embedding, one anchored exact search at a time, enough cycles to
/// make every per-length count divisible by R, then splitting the remainder
/// evenly across R rounds.
pub fn cycle_multiset_tiling(
    g: &Digraph,
    words: &[OrientationWord],
    rounds: usize,
    seed: u64,
    params: &RoundTilingParams,
) -> Result<Tiling> {
    if rounds == 0 {
        return Err(Error::InvalidParameter("need at least one round".into()));
    }
    let mut by_len: std::collections::BTreeMap<usize, Vec<&OrientationWord>> =
        std::collections::BTreeMap::new();
    for w in words {
        by_len.entry(w.len()).or_default().push(w);
    }
    let mut residual = VertexSet::full(g.order());
    let mut prefix: Vec<Embedding> = Vec::new();
    let mut leftover: Vec<&OrientationWord> = Vec::new();
    for (_, group) in by_len {
        let rem = group.len() % rounds;
        for (i, w) in group.into_iter().enumerate() {
            if i < rem {
                let mut budget = Budget::nodes(params.budget_nodes);
                let pattern = cycle_from_word(w);
                let found = crate::solve::find_pattern_list_tiling(
                    g,
                    &residual,
                    std::slice::from_ref(&pattern),
                    false,
                    &mut budget,
                );
                match found {
                    Outcome::Found(t) => {
                        let emb = t.embeddings()[0].clone();
                        residual.subtract(&emb.covered(g.order()));
                        prefix.push(emb);
                    }
                    _ => {
                        return Err(Error::StageFailed {
                            round: 0,
                            stage: format!("greedy prefix embedding of {w}"),
                        })
                    }
                }
            } else {
                leftover.push(w);
            }
        }
    }
    let mut tiling = Tiling::new(g.order());
    for emb in prefix {
        tiling.push(emb);
    }
    if !leftover.is_empty() {
        let mut specs: Vec<Vec<OrientationWord>> = vec![Vec::new(); rounds];
        for (i, w) in leftover.into_iter().enumerate() {
            specs[i % rounds].push(w.clone());
        }
        let specs: Vec<QSpec> = specs.into_iter().map(|ws| QSpec::new(ws)).collect::<Result<_>>()?;
        let rt = rounds_engine(g, &residual, &specs, seed, params)?;
        for emb in rt.combined.embeddings() {
            tiling.push(emb.clone());
        }
    }
    Ok(tiling)
}

fn rounds_engine(
    g: &Digraph,
    allowed: &VertexSet,
    specs: &[QSpec],
    seed: u64,
    params: &RoundTilingParams,
) -> Result<RoundTiling> {
    let n = allowed.len();
    let r_rounds = specs.len();
    if r_rounds == 0 {
        return Err(Error::InvalidParameter("need at least one round".into()));
    }
    for spec in specs {
        if spec.max_len() > params.max_len {
            return Err(Error::InvalidParameter(format!(
                "cycle length {} exceeds the configured limit {}",
                spec.max_len(),
                params.max_len
            )));
        }
    }
    let total: usize = specs.iter().map(QSpec::total_vertices).sum();
    if (total as f64) > (1.0 - params.gamma) * n as f64 {
        return Err(Error::Infeasible(format!(
            "prescribed cycles use {total} vertices, more than (1-γ)·{n}"
        )));
    }
    let m = n / (r_rounds + 1);
    if let Some(spec) = specs.iter().find(|s| s.total_vertices() > m) {
        return Err(Error::Infeasible(format!(
            "one round needs {} vertices but parts have size {m}",
            spec.total_vertices()
        )));
    }

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut verts = allowed.to_vec();
    verts.shuffle(&mut rng);
    let mut parts: Vec<VertexSet> = Vec::with_capacity(r_rounds + 1);
    for i in 0..r_rounds {
        parts.push(VertexSet::from_iter(g.order(), verts[i * m..(i + 1) * m].iter().copied()));
    }
    parts.push(VertexSet::from_iter(
        g.order(),
        verts[r_rounds * m..].iter().copied(),
    ));

    let mut reservoir = parts[0].clone();
    let mut round_tilings = Vec::with_capacity(r_rounds);
    for (round, spec) in specs.iter().enumerate() {
        let fresh = &parts[round + 1];
        let path_words: Vec<Vec<Dir>> = spec
            .words()
            .iter()
            .map(|w| w.letters()[..w.len() - 2].to_vec())
            .collect();
        let mut success = false;
        let mut last_stage = String::from("path packing");
        for _ in 0..params.retries.max(1) {
            let mut pool = reservoir.to_vec();
            pool.shuffle(&mut rng);
            let u1 = VertexSet::from_iter(g.order(), pool[..spec.path_vertices()].iter().copied());
            let mut budget = Budget::nodes(params.budget_nodes);
            let paths = match find_spanning_path_system(g, &u1, &path_words, &mut budget) {
                Outcome::Found(p) => p,
                Outcome::Absent => {
                    last_stage = "path packing (no packing exists for the sampled subset)".into();
                    continue;
                }
                Outcome::Unknown => {
                    last_stage = "path packing (budget exhausted)".into();
                    continue;
                }
            };
            // Closure candidates per slot, then a perfect matching into the
            // fresh part.
            let fresh_vec = fresh.to_vec();
            let cands: Vec<Vec<usize>> = spec
                .words()
                .iter()
                .zip(&paths)
                .map(|(w, path)| {
                    let first = path[0];
                    let last = *path.last().unwrap();
                    fresh_vec
                        .iter()
                        .copied()
                        .filter(|&v| closes_cycle(g, w, first, last, v))
                        .collect()
                })
                .collect();
            let Some(assign) = bipartite_match(&cands, fresh_vec.len(), &fresh_vec) else {
                last_stage = "cycle closure (no perfect matching into the fresh part)".into();
                continue;
            };
            let mut tiling = Tiling::new(g.order());
            for ((w, path), &closer) in spec.words().iter().zip(&paths).zip(&assign) {
                let mut map = path.clone();
                map.push(closer);
                tiling.push(Embedding::new(cycle_from_word(w), map));
            }
            reservoir.subtract(&u1);
            let mut new_reservoir = reservoir.union(fresh);
            for &v in &assign {
                new_reservoir.remove(v);
            }
            // Reclaim the unused path-packing leftovers too: U' = U₀ ∪ (W ∖ closers).
            reservoir = new_reservoir;
            round_tilings.push(tiling);
            success = true;
            break;
        }
        if !success {
            return Err(Error::StageFailed {
                round: round + 1,
                stage: last_stage,
            });
        }
    }

    let mut combined = Tiling::new(g.order());
    for t in &round_tilings {
        for emb in t.embeddings() {
            combined.push(emb.clone());
        }
    }
    Ok(RoundTiling {
        rounds: round_tilings,
        combined,
    })
}

/// Edge requirements for the closing vertex v = c_{ℓ−1}: word position ℓ−2
/// joins the path's last vertex to v, position ℓ−1 joins v back to the
/// path's first vertex.
fn closes_cycle(g: &Digraph, w: &OrientationWord, first: usize, last: usize, v: usize) -> bool {
    let l = w.len();
    let pre = match w.letters()[l - 2] {
        Dir::F => g.has_edge(last, v),
        Dir::B => g.has_edge(v, last),
    };
    let post = match w.letters()[l - 1] {
        Dir::F => g.has_edge(v, first),
        Dir::B => g.has_edge(first, v),
    };
    pre && post
}

/// Kuhn's augmenting-path matching: one distinct right vertex per slot.
fn bipartite_match(cands: &[Vec<usize>], right_n: usize, right_ids: &[usize]) -> Option<Vec<usize>> {
    let id_of: std::collections::HashMap<usize, usize> = right_ids
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let adj: Vec<Vec<usize>> = cands
        .iter()
        .map(|cs| cs.iter().map(|v| id_of[v]).collect())
        .collect();
    let mut matched_right: Vec<Option<usize>> = vec![None; right_n];

    fn try_assign(
        slot: usize,
        adj: &[Vec<usize>],
        visited: &mut [bool],
        matched_right: &mut [Option<usize>],
    ) -> bool {
        for &r in &adj[slot] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            if matched_right[r].is_none()
                || try_assign(matched_right[r].unwrap(), adj, visited, matched_right)
            {
                matched_right[r] = Some(slot);
                return true;
            }
        }
        false
    }

    for slot in 0..adj.len() {
        let mut visited = vec![false; right_n];
        if !try_assign(slot, &adj, &mut visited, &mut matched_right) {
            return None;
        }
    }
    let mut assign = vec![usize::MAX; adj.len()];
    for (r, m) in matched_right.iter().enumerate() {
        if let Some(slot) = m {
            assign[*slot] = right_ids[r];
        }
    }
    Some(assign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::validate_tiling;

    fn w(s: &str) -> OrientationWord {
        OrientationWord::parse(s).unwrap()
    }

    #[test]
    fn complete_host_two_rounds() {
        let g = Digraph::complete(30);
        let spec = QSpec::new(vec![w("FFF"), w("FFF"), w("FFF")]).unwrap();
        let out = round_cycle_tiling(&g, &spec, 2, 5, &RoundTilingParams::default()).unwrap();
        assert_eq!(out.rounds.len(), 2);
        for round in &out.rounds {
            assert_eq!(round.size(), 3);
            assert!(validate_tiling(&g, round, false));
        }
        assert!(validate_tiling(&g, &out.combined, false));
        assert_eq!(out.combined.covered().len(), 18);
    }

    #[test]
    fn oversized_spec_is_rejected() {
        let g = Digraph::complete(10);
        let spec = QSpec::new(vec![w("FFFFF"), w("FFFF")]).unwrap();
        assert!(matches!(
            round_cycle_tiling(&g, &spec, 1, 0, &RoundTilingParams::default()),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn multiset_driver_handles_remainders() {
        let g = Digraph::complete(40);
        // Five triangles over two rounds: one greedy, four in rounds.
        let words: Vec<OrientationWord> = (0..5).map(|_| w("FFF")).collect();
        let t = cycle_multiset_tiling(&g, &words, 2, 9, &RoundTilingParams::default()).unwrap();
        assert_eq!(t.size(), 5);
        assert!(validate_tiling(&g, &t, false));
    }

    #[test]
    fn mixed_orientations_close_correctly() {
        let g = Digraph::complete(24);
        let spec = QSpec::new(vec![w("FBF"), w("FFBB")]).unwrap();
        let out = round_cycle_tiling(&g, &spec, 1, 3, &RoundTilingParams::default()).unwrap();
        assert_eq!(out.combined.size(), 2);
        assert!(validate_tiling(&g, &out.combined, false));
    }
}
