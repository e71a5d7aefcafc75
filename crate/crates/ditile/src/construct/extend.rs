//! Upgrading tournament tilings through uncovered vertices and iterating
//! the upgrade through repeated blow-ups.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::pattern::{transitive_tournament, PatternKind};
use crate::solve::{max_tiling, validate_tiling, Budget, Embedding, Tiling};

#[derive(Clone, Debug)]
pub struct ExtendOutcome {
    pub tiling: Tiling,
    /// Number of vertices newly covered (= tiles upgraded to order r+1).
    pub gain: usize,
}

/// Greedily assigns uncovered vertices that are fully joined, in one
/// direction, to distinct tiles of `m`, upgrading each such tile from T_r to
/// T_{r+1}. Zero gain is legal output. Loops in the host are inert.
pub fn tiling_extend(g: &Digraph, r: usize, m: &Tiling) -> Result<ExtendOutcome> {
    if !validate_tiling(g, m, false) {
        return Err(Error::InvalidParameter("input tiling is invalid".into()));
    }
    for emb in m.embeddings() {
        if emb.pattern().order() != r || emb.pattern().kind() != PatternKind::TransitiveTournament
        {
            return Err(Error::InvalidParameter(format!(
                "tiles must be transitive tournaments of order {r}"
            )));
        }
    }
    let mut upgraded: Vec<Option<(usize, bool)>> = vec![None; m.size()]; // (z, prepend)
    let mut gain = 0;
    for z in m.covered().complement().iter() {
        for (ti, emb) in m.embeddings().iter().enumerate() {
            if upgraded[ti].is_some() {
                continue;
            }
            let sends_all = emb.map().iter().all(|&w| g.has_edge(z, w));
            if sends_all {
                upgraded[ti] = Some((z, true));
                gain += 1;
                break;
            }
            let receives_all = emb.map().iter().all(|&w| g.has_edge(w, z));
            if receives_all {
                upgraded[ti] = Some((z, false));
                gain += 1;
                break;
            }
        }
    }
    let t_r1 = transitive_tournament(r + 1)?;
    let mut out = Tiling::new(g.order());
    for (ti, emb) in m.embeddings().iter().enumerate() {
        match upgraded[ti] {
            None => out.push(emb.clone()),
            Some((z, prepend)) => {
                let mut order = Vec::with_capacity(r + 1);
                if prepend {
                    order.push(z);
                    order.extend_from_slice(emb.map());
                } else {
                    order.extend_from_slice(emb.map());
                    order.push(z);
                }
                out.push(Embedding::new(t_r1.clone(), order));
            }
        }
    }
    debug_assert!(validate_tiling(g, &out, false));
    Ok(ExtendOutcome { tiling: out, gain })
}

/// Expands one tile of a tiling of B into tiles of the t-blow-up of B.
///
/// A T_r tile expands diagonally into t copies; a T_{r+1} tile (t divisible
/// by r) expands into (r+1)·t/r copies, each omitting one of its r+1 vertex
/// groups, with per-group cursors handing out fresh blow-up copies.
fn expand_tile(tile_order: &[usize], t: usize, r: usize) -> Result<Vec<Vec<usize>>> {
    let k = tile_order.len();
    let id = |v: usize, copy: usize| v * t + copy;
    if k == r {
        return Ok((0..t)
            .map(|copy| tile_order.iter().map(|&v| id(v, copy)).collect())
            .collect());
    }
    if k == r + 1 {
        if t % r != 0 {
            return Err(Error::InvalidParameter(format!(
                "expanding a T_{{r+1}} tile needs r | t, got r={r}, t={t}"
            )));
        }
        let mut cursor = vec![0usize; k];
        let mut tiles = Vec::with_capacity((r + 1) * t / r);
        for omit in 0..k {
            for _ in 0..t / r {
                let mut tile = Vec::with_capacity(r);
                for (i, &v) in tile_order.iter().enumerate() {
                    if i != omit {
                        tile.push(id(v, cursor[i]));
                        cursor[i] += 1;
                    }
                }
                tiles.push(tile);
            }
        }
        debug_assert!(cursor.iter().all(|&c| c == t));
        return Ok(tiles);
    }
    Err(Error::InvalidParameter(format!(
        "tile of order {k} cannot expand into T_{r} tiles"
    )))
}

/// Expands a {T_r, T_{r+1}}-tiling of B into a T_r-tiling of blow_up(B, t)
/// covering t times as many vertices.
pub fn expand_tiling(m: &Tiling, t: usize, r: usize) -> Result<Tiling> {
    let t_r = transitive_tournament(r)?;
    let mut out = Tiling::new(m.host_order() * t);
    for emb in m.embeddings() {
        for tile in expand_tile(emb.map(), t, r)? {
            out.push(Embedding::new(t_r.clone(), tile));
        }
    }
    Ok(out)
}

/// The t-blow-up of T_k together with the T_r-factor produced by the
/// expansion step (k must be r or r+1; the latter needs r | t).
pub fn tournament_blowup_factor(k: usize, r: usize, t: usize) -> Result<(Digraph, Tiling)> {
    let t_k = transitive_tournament(k)?;
    let host = t_k.graph().blow_up(t);
    let base_order: Vec<usize> = (0..k).collect();
    let t_r = transitive_tournament(r)?;
    let mut tiling = Tiling::new(host.order());
    for tile in expand_tile(&base_order, t, r)? {
        tiling.push(Embedding::new(t_r.clone(), tile));
    }
    if !validate_tiling(&host, &tiling, true) {
        return Err(Error::InvalidParameter(
            "expansion did not produce a spanning factor".into(),
        ));
    }
    Ok((host, tiling))
}

#[derive(Clone, Debug)]
pub struct BlowupParams {
    /// Coverage slack γ: iteration stops once a tiling covers (1−γ/2)|B|.
    pub gamma: f64,
    /// Hard cap on the final blow-up order.
    pub max_order: usize,
    /// Node budget for each exact maximum-tiling call.
    pub budget_nodes: u64,
}

impl Default for BlowupParams {
    fn default() -> Self {
        BlowupParams {
            gamma: 0.2,
            max_order: 4096,
            budget_nodes: 10_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RoundRecord {
    pub round: usize,
    pub order: usize,
    pub covered_before: usize,
    pub covered_after_extend: usize,
}

impl RoundRecord {
    pub fn fraction_before(&self) -> f64 {
        self.covered_before as f64 / self.order as f64
    }

    pub fn fraction_after(&self) -> f64 {
        self.covered_after_extend as f64 / self.order as f64
    }
}

#[derive(Clone, Debug)]
pub struct BlowupOutcome {
    pub final_host: Digraph,
    pub tiling: Tiling,
    pub rounds: Vec<RoundRecord>,
    /// Whether every distinct pair satisfied the double-edge-or-dominant
    /// hypothesis at the configured γ.
    pub hypotheses_hold: bool,
    pub final_fraction: f64,
}

/// Checks, for all distinct x ≠ y: either both edges xy, yx are present, or
/// one of the two vertices has dominant degree at least (1−1/r+γ/2)·n.
pub fn double_or_dominant_hypothesis(g: &Digraph, r: usize, gamma: f64) -> bool {
    let n = g.order();
    let deg = g.degrees();
    let threshold = (1.0 - 1.0 / r as f64 + gamma / 2.0) * n as f64;
    for x in 0..n {
        for y in x + 1..n {
            if g.has_double_edge(x, y) {
                continue;
            }
            if (deg.d_dom[x] as f64) < threshold && (deg.d_dom[y] as f64) < threshold {
                return false;
            }
        }
    }
    true
}

/// Iterated tiling growth through s rounds of r-fold blow-ups: each round
/// takes the best known T_r-tiling of the current blow-up, upgrades it
/// through fully joined uncovered vertices, and expands the result into the
/// next blow-up. Stops early once coverage reaches (1−γ/2) of the current
/// order, expanding the remaining factor in one step.
pub fn blowup_iterate(
    rstar: &Digraph,
    r: usize,
    s: usize,
    params: &BlowupParams,
) -> Result<BlowupOutcome> {
    if r < 2 {
        return Err(Error::InvalidParameter("blow-up iteration needs r >= 2".into()));
    }
    let final_order = rstar.order() * r.pow(s as u32);
    if final_order > params.max_order {
        return Err(Error::BlowupTooLarge {
            order: final_order,
            limit: params.max_order,
        });
    }
    let hypotheses_hold = double_or_dominant_hypothesis(rstar, r, params.gamma);
    let t_r = transitive_tournament(r)?;

    let mut b = rstar.clone();
    let mut witness: Option<Tiling> = None;
    let mut rounds = Vec::new();
    let mut remaining = s;
    while remaining > 0 {
        let round = s - remaining;
        let mut budget = Budget::nodes(params.budget_nodes);
        let mt = max_tiling(&b, &t_r, &mut budget);
        let mut best = mt.tiling;
        if let Some(w) = witness.take() {
            if w.covered().len() > best.covered().len() {
                best = w;
            }
        }
        let covered = best.covered().len();
        if covered as f64 >= (1.0 - params.gamma / 2.0) * b.order() as f64 {
            let t = r.pow(remaining as u32);
            let expanded = expand_tiling(&best, t, r)?;
            b = b.blow_up(t);
            rounds.push(RoundRecord {
                round,
                order: b.order() / t,
                covered_before: covered,
                covered_after_extend: covered,
            });
            witness = Some(expanded);
            break;
        }
        let ext = tiling_extend(&b, r, &best)?;
        rounds.push(RoundRecord {
            round,
            order: b.order(),
            covered_before: covered,
            covered_after_extend: ext.tiling.covered().len(),
        });
        let expanded = expand_tiling(&ext.tiling, r, r)?;
        b = b.blow_up(r);
        witness = Some(expanded);
        remaining -= 1;
    }

    let tiling = match witness {
        Some(t) => t,
        None => {
            // s = 0: report the best tiling of R* itself.
            let mut budget = Budget::nodes(params.budget_nodes);
            max_tiling(&b, &t_r, &mut budget).tiling
        }
    };
    debug_assert!(validate_tiling(&b, &tiling, false));
    let final_fraction = tiling.covered().len() as f64 / b.order().max(1) as f64;
    Ok(BlowupOutcome {
        final_host: b,
        tiling,
        rounds,
        hypotheses_hold,
        final_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::{find_factor, Budget};

    #[test]
    fn extend_on_complete_host() {
        let g = Digraph::complete(7);
        let t3 = transitive_tournament(3).unwrap();
        let mut m = Tiling::new(7);
        m.push(Embedding::new(t3.clone(), vec![0, 1, 2]));
        m.push(Embedding::new(t3.clone(), vec![3, 4, 5]));
        let out = tiling_extend(&g, 3, &m).unwrap();
        assert_eq!(out.gain, 1);
        assert_eq!(out.tiling.covered().len(), 7);
        assert!(out.tiling.embeddings().iter().any(|e| e.pattern().order() == 4));
    }

    #[test]
    fn extend_zero_gain_on_edgeless_leftover() {
        let mut g = Digraph::complete(6);
        // Vertices 3..6 isolated: the uncovered leftover has no edges at all.
        for u in 3..6 {
            for v in 0..6 {
                g.remove_edge(u, v);
                g.remove_edge(v, u);
            }
        }
        let t3 = transitive_tournament(3).unwrap();
        let mut m = Tiling::new(6);
        m.push(Embedding::new(t3, vec![0, 1, 2]));
        let out = tiling_extend(&g, 3, &m).unwrap();
        assert_eq!(out.gain, 0);
        assert_eq!(out.tiling.covered().len(), 3);
    }

    #[test]
    fn blowup_factors_are_factors() {
        for (r, t) in [(2usize, 2usize), (2, 4), (3, 3)] {
            let (host, tiling) = tournament_blowup_factor(r, r, t).unwrap();
            assert!(validate_tiling(&host, &tiling, true));
            let (host1, tiling1) = tournament_blowup_factor(r + 1, r, t).unwrap();
            assert!(validate_tiling(&host1, &tiling1, true));
            // Cross-check with the exact solver on the smaller case.
            if host.order() <= 9 {
                let p = transitive_tournament(r).unwrap();
                assert!(find_factor(&host, &[p], &mut Budget::unlimited()).is_found());
            }
            assert_eq!(tiling1.size() * r, host1.order());
        }
        assert!(tournament_blowup_factor(3, 2, 3).is_err()); // r ∤ t
    }

    #[test]
    fn looped_vertex_iterates_to_perfect_matching() {
        let rstar = Digraph::build(1, &[], &[0]).unwrap();
        let out = blowup_iterate(&rstar, 2, 2, &BlowupParams::default()).unwrap();
        assert_eq!(out.final_host.order(), 4);
        assert!(out.hypotheses_hold);
        assert_eq!(out.tiling.covered().len(), 4);
        assert!(validate_tiling(&out.final_host, &out.tiling, true));
    }

    #[test]
    fn t3_blowup_has_three_tiles() {
        let rstar = transitive_tournament(3).unwrap().graph().clone();
        let out = blowup_iterate(&rstar, 3, 1, &BlowupParams::default()).unwrap();
        assert_eq!(out.final_host.order(), 9);
        assert_eq!(out.tiling.size(), 3);
        assert!((out.final_fraction - 1.0).abs() < 1e-9);
    }

    #[test]
    fn overflow_guard() {
        let rstar = Digraph::complete(10);
        let params = BlowupParams { max_order: 50, ..Default::default() };
        assert!(matches!(
            blowup_iterate(&rstar, 3, 3, &params),
            Err(Error::BlowupTooLarge { .. })
        ));
    }
}
