//! Semi-degree preserving random partition into two parts, found by
//! rejection sampling.

use super::delta_semi_within;
use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Clone, Debug)]
pub struct Split {
    pub u1: VertexSet,
    pub u2: VertexSet,
    /// Number of samples drawn until the bound held (1 = first try).
    pub attempts: usize,
}

/// The target inequality: δ⁰(G[part]) ≥ (δ⁰(G[whole])/|whole|)·|part| − |part|^{2/3}.
pub fn split_bound_holds(g: &Digraph, whole: &VertexSet, part: &VertexSet) -> bool {
    let whole_n = whole.len();
    if whole_n == 0 {
        return true;
    }
    let base = delta_semi_within(g, whole);
    let p = part.len() as f64;
    let bound = base as f64 * p / whole_n as f64 - (p * p).cbrt();
    delta_semi_within(g, part) as f64 >= bound
}

/// Partition `{U₁, U₂}` of the whole vertex set with `|U₁| = m`, both parts
/// satisfying the displayed semi-degree bound.
pub fn random_split(g: &Digraph, m: usize, retries: usize, seed: u64) -> Result<Split> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    random_split_subset(g, &VertexSet::full(g.order()), m, retries, &mut rng)
}

/// Same, restricted to a subset `whole` of the host; the bound is relative
/// to the subdigraph induced by `whole`.
pub fn random_split_subset(
    g: &Digraph,
    whole: &VertexSet,
    m: usize,
    retries: usize,
    rng: &mut ChaCha20Rng,
) -> Result<Split> {
    let n = whole.len();
    if m == 0 || m >= n {
        return Err(Error::InvalidParameter(format!(
            "split size {m} out of range for a {n}-vertex part"
        )));
    }
    let mut pool: Vec<usize> = whole.to_vec();
    for attempt in 1..=retries.max(1) {
        pool.shuffle(rng);
        let u1 = VertexSet::from_iter(g.order(), pool[..m].iter().copied());
        let u2 = whole.difference(&u1);
        if split_bound_holds(g, whole, &u1) && split_bound_holds(g, whole, &u2) {
            return Ok(Split { u1, u2, attempts: attempt });
        }
    }
    Err(Error::RetriesExhausted {
        attempts: retries,
        what: format!("semi-degree preserving split with |U1| = {m}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_host_splits_immediately() {
        let g = Digraph::complete(20);
        let s = random_split(&g, 10, 100, 7).unwrap();
        assert_eq!(s.u1.len(), 10);
        assert_eq!(s.u2.len(), 10);
        assert_eq!(s.attempts, 1);
        assert!(s.u1.is_disjoint_from(&s.u2));
    }

    #[test]
    fn two_vertex_double_edge() {
        // Both singleton parts have δ⁰ = 0 ≥ 1·(1/2) − 1.
        let g = Digraph::build(2, &[(0, 1), (1, 0)], &[]).unwrap();
        let s = random_split(&g, 1, 10, 3).unwrap();
        assert_eq!(s.u1.len(), 1);
    }

    #[test]
    fn invalid_sizes_rejected() {
        let g = Digraph::complete(5);
        assert!(random_split(&g, 0, 10, 0).is_err());
        assert!(random_split(&g, 5, 10, 0).is_err());
    }

    #[test]
    fn accepted_splits_verify_against_induced_subgraphs() {
        use rand::Rng;
        let mut rng = ChaCha20Rng::seed_from_u64(99);
        let n = 30;
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.random_bool(0.7) {
                    g.add_edge(u, v);
                }
            }
        }
        let s = random_split(&g, 15, 100, 5).unwrap();
        let d0 = g.degrees().delta_semi as f64;
        for part in [&s.u1, &s.u2] {
            let (sub, _) = g.induced(part);
            let p = part.len() as f64;
            let bound = d0 * p / n as f64 - p.powf(2.0 / 3.0);
            assert!(sub.degrees().delta_semi as f64 >= bound);
        }
    }
}
