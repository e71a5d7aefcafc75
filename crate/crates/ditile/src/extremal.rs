//! Lower-bound constructions, each carrying machine-checkable claims about
//! its degree statistics and about the factors it lacks, plus a verifier
//! that proves factor absence structurally where possible and by exact
//! search at solver-tractable sizes.

use crate::bitset::VertexSet;
use crate::digraph::{Digraph, OreMinimum, OreVariant};
use crate::error::{Error, Result};
use crate::pattern::{cycle_from_word, transitive_tournament, OrientationWord, Pattern};
use crate::solve::{enumerate_copies, find_cycle_list_tiling, find_factor, Budget, Outcome};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    TwoCliques,
    TripartiteOdd,
    ElzaharTripartite,
    OreT3,
    RPartiteTr,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::TwoCliques => "two-cliques",
            Family::TripartiteOdd => "tripartite-odd",
            Family::ElzaharTripartite => "elzahar-tripartite",
            Family::OreT3 => "ore-t3",
            Family::RPartiteTr => "r-partite-tr",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "two-cliques" => Ok(Family::TwoCliques),
            "tripartite-odd" => Ok(Family::TripartiteOdd),
            "elzahar-tripartite" => Ok(Family::ElzaharTripartite),
            "ore-t3" => Ok(Family::OreT3),
            "r-partite-tr" => Ok(Family::RPartiteTr),
            other => Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeClaim {
    DeltaSemiEquals(usize),
    DeltaTotalEquals(usize),
    DeltaTotalAtLeast(usize),
    OreMinEquals(OreVariant, usize),
}

impl fmt::Display for DegreeClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeClaim::DeltaSemiEquals(v) => write!(f, "delta_semi={v}"),
            DegreeClaim::DeltaTotalEquals(v) => write!(f, "delta_total={v}"),
            DegreeClaim::DeltaTotalAtLeast(v) => write!(f, "delta_total_min={v}"),
            DegreeClaim::OreMinEquals(var, v) => write!(f, "ore_{}={v}", ore_key(*var)),
        }
    }
}

fn ore_key(v: OreVariant) -> &'static str {
    match v {
        OreVariant::OutIn => "pm",
        OreVariant::OutOut => "pp",
        OreVariant::InIn => "mm",
        OreVariant::InOut => "mp",
    }
}

/// What the instance is claimed not to contain.
#[derive(Clone, Debug)]
pub enum AbsenceClaim {
    /// No spanning tiling by copies of T_r.
    TrFactor(usize),
    /// No C-factor for any orientation of the cycle of this length; the
    /// designated words are the ones checked by exact search.
    AnyCycleOrientation { len: usize, designated: Vec<OrientationWord> },
    /// No spanning tiling by any t odd-length oriented cycles; designated
    /// lists are checked by exact search.
    OddCycleCollection { count: usize, designated: Vec<Vec<OrientationWord>> },
    /// No H-factor for any connected pattern of this order; designated
    /// patterns are checked by exact search.
    AnyConnectedOrder { order: usize, designated: Vec<Pattern> },
}

impl AbsenceClaim {
    pub fn key(&self) -> String {
        match self {
            AbsenceClaim::TrFactor(r) => format!("no_factor=t{r}"),
            AbsenceClaim::AnyCycleOrientation { len, .. } => format!("no_factor=any-c{len}"),
            AbsenceClaim::OddCycleCollection { count, .. } => {
                format!("no_factor=any-{count}-odd-cycles")
            }
            AbsenceClaim::AnyConnectedOrder { order, .. } => {
                format!("no_factor=any-connected-{order}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtremalInstance {
    pub graph: Digraph,
    pub family: Family,
    pub params: Vec<usize>,
    pub degree_claims: Vec<DegreeClaim>,
    pub absence_claims: Vec<AbsenceClaim>,
    /// Vertex classes with no internal edges, when the construction has them.
    pub classes: Vec<Vec<usize>>,
}

impl ExtremalInstance {
    /// Sidecar record: one `key=value` line per fact, fixed order.
    pub fn claims_record(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("family={}\n", self.family.label()));
        let params: Vec<String> = self.params.iter().map(ToString::to_string).collect();
        s.push_str(&format!("params={}\n", params.join(",")));
        s.push_str(&format!("n={}\n", self.graph.order()));
        for c in &self.degree_claims {
            s.push_str(&format!("{c}\n"));
        }
        for a in &self.absence_claims {
            s.push_str(&format!("{}\n", a.key()));
        }
        s
    }
}

/// Disjoint union of two complete digraphs with orders as equal as possible
/// while neither is divisible by h. Ties give the smaller order to the
/// first clique.
pub fn two_cliques(n: usize, h: usize) -> Result<ExtremalInstance> {
    if h < 2 || n < 2 * h {
        return Err(Error::Infeasible(format!(
            "two_cliques needs h >= 2 and n >= 2h, got n={n}, h={h}"
        )));
    }
    let mut sizes = None;
    for d in 0..=(n / 2 - 1) {
        let n1 = n / 2 - d;
        let n2 = n - n1;
        if n1 >= 1 && n1 % h != 0 && n2 % h != 0 {
            sizes = Some((n1, n2));
            break;
        }
    }
    let Some((n1, n2)) = sizes else {
        return Err(Error::Infeasible(format!(
            "no split of {n} avoids divisibility by {h}"
        )));
    };
    let delta = 2 * (n1.min(n2) - 1);
    if delta + 4 < n {
        return Err(Error::Infeasible(format!(
            "split ({n1},{n2}) only reaches minimum degree {delta} < n-4"
        )));
    }
    let mut g = Digraph::empty(n);
    for (lo, hi) in [(0, n1), (n1, n)] {
        for u in lo..hi {
            for v in lo..hi {
                if u != v {
                    g.add_edge(u, v);
                }
            }
        }
    }
    let designated = vec![
        transitive_tournament(h)?,
        cycle_from_word(&OrientationWord::directed(h)?),
    ];
    Ok(ExtremalInstance {
        graph: g,
        family: Family::TwoCliques,
        params: vec![n, h],
        degree_claims: vec![
            DegreeClaim::DeltaTotalEquals(delta),
            DegreeClaim::DeltaTotalAtLeast(n - 4),
        ],
        absence_claims: vec![AbsenceClaim::AnyConnectedOrder { order: h, designated }],
        classes: vec![],
    })
}

/// Complete 3-partite digraph with classes n/(2k+1)−1, kn/(2k+1)+1 and
/// kn/(2k+1); its semi-degree is one below the (2k+1)-cycle-factor
/// threshold and no orientation of C_{2k+1} tiles it.
pub fn tripartite_odd(n: usize, k: usize) -> Result<ExtremalInstance> {
    let l = 2 * k + 1;
    if k == 0 || n % l != 0 {
        return Err(Error::Infeasible(format!(
            "tripartite_odd needs k >= 1 and (2k+1) | n, got n={n}, k={k}"
        )));
    }
    if n < 2 * l {
        return Err(Error::Infeasible(format!(
            "tripartite_odd needs n >= 2(2k+1) so every class is non-empty"
        )));
    }
    let a = n / l - 1;
    let b = k * n / l + 1;
    let c = k * n / l;
    let g = Digraph::complete_multipartite(&[a, b, c])?;
    let delta_semi = (k + 1) * n / l - 1;
    let mut mixed = vec![crate::pattern::Dir::F; l];
    mixed[l - 1] = crate::pattern::Dir::B;
    let designated = vec![
        OrientationWord::directed(l)?,
        OrientationWord::new(mixed)?,
    ];
    Ok(ExtremalInstance {
        graph: g,
        family: Family::TripartiteOdd,
        params: vec![n, k],
        degree_claims: vec![DegreeClaim::DeltaSemiEquals(delta_semi)],
        absence_claims: vec![AbsenceClaim::AnyCycleOrientation { len: l, designated }],
        classes: class_ranges(&[a, b, c]),
    })
}

/// Digraph analogue (every edge doubled) of the complete 3-partite graph
/// with classes t−1, (n−t+2)/2 and (n−t)/2: semi-degree (n+t)/2 − 1, yet no
/// spanning collection of t odd cycles exists.
pub fn elzahar_tripartite(n: usize, t: usize) -> Result<ExtremalInstance> {
    if t < 2 || n % 2 != t % 2 {
        return Err(Error::Infeasible(format!(
            "elzahar_tripartite needs t >= 2 and n ≡ t (mod 2), got n={n}, t={t}"
        )));
    }
    if n < 3 * t {
        return Err(Error::Infeasible(format!(
            "elzahar_tripartite needs n >= 3t to fit {t} odd cycles"
        )));
    }
    let a = t - 1;
    let b = (n - t + 2) / 2;
    let c = (n - t) / 2;
    let g = Digraph::complete_multipartite(&[a, b, c])?;
    let delta_semi = (n + t) / 2 - 1;
    // Designated lists: t−1 triangles plus one odd cycle filling the rest,
    // once fully directed and once with a backward edge in every cycle.
    let tail = n - 3 * (t - 1);
    let directed: Vec<OrientationWord> = (0..t - 1)
        .map(|_| OrientationWord::directed(3))
        .chain([OrientationWord::directed(tail)])
        .collect::<Result<_>>()?;
    let mixed: Vec<OrientationWord> = directed
        .iter()
        .map(|w| {
            let mut letters = w.letters().to_vec();
            letters[0] = crate::pattern::Dir::B;
            OrientationWord::new(letters)
        })
        .collect::<Result<_>>()?;
    Ok(ExtremalInstance {
        graph: g,
        family: Family::ElzaharTripartite,
        params: vec![n, t],
        degree_claims: vec![DegreeClaim::DeltaSemiEquals(delta_semi)],
        absence_claims: vec![AbsenceClaim::OddCycleCollection {
            count: t,
            designated: vec![directed, mixed],
        }],
        classes: class_ranges(&[a, b, c]),
    })
}

/// Two classes V₁ (order 2n/3−1) and V₂ (order n/3) plus a vertex w, with
/// double edges inside V₁, between V₁ and V₂, and between w and V₂. The
/// degree-sum minimum sits exactly one below the T₃-factor threshold, and w
/// lies in no transitive triangle. Layout: w is vertex 0, then V₂, then V₁.
pub fn ore_t3(n: usize) -> Result<ExtremalInstance> {
    if n % 3 != 0 || n < 6 {
        return Err(Error::Infeasible(format!(
            "ore_t3 needs 3 | n and n >= 6, got n={n}"
        )));
    }
    let v2_end = 1 + n / 3; // V₂ = 1..v2_end, V₁ = v2_end..n
    let mut g = Digraph::empty(n);
    let double = |g: &mut Digraph, u: usize, v: usize| {
        g.add_edge(u, v);
        g.add_edge(v, u);
    };
    for u in v2_end..n {
        for v in v2_end..n {
            if u < v {
                double(&mut g, u, v);
            }
        }
        for v in 1..v2_end {
            double(&mut g, u, v);
        }
    }
    for v in 1..v2_end {
        double(&mut g, 0, v);
    }
    Ok(ExtremalInstance {
        graph: g,
        family: Family::OreT3,
        params: vec![n],
        degree_claims: vec![
            DegreeClaim::OreMinEquals(OreVariant::OutIn, 4 * n / 3 - 2),
            DegreeClaim::DeltaSemiEquals(n / 3),
        ],
        absence_claims: vec![AbsenceClaim::TrFactor(3)],
        classes: vec![],
    })
}

/// Complete r-partite digraph with r−2 classes of n/r, one of n/r−1 and one
/// of n/r+1: the degree-sum minimum is 2(1−1/r)n−2 and no T_r-factor exists.
pub fn r_partite_tr(n: usize, r: usize) -> Result<ExtremalInstance> {
    if r < 2 || n % r != 0 || n < r * r {
        return Err(Error::Infeasible(format!(
            "r_partite_tr needs r >= 2, r | n and n >= r², got n={n}, r={r}"
        )));
    }
    let mut sizes = vec![n / r; r - 2];
    sizes.push(n / r - 1);
    sizes.push(n / r + 1);
    let g = Digraph::complete_multipartite(&sizes)?;
    Ok(ExtremalInstance {
        graph: g,
        family: Family::RPartiteTr,
        params: vec![n, r],
        degree_claims: vec![
            DegreeClaim::OreMinEquals(OreVariant::OutIn, 2 * (n - n / r) - 2),
            DegreeClaim::DeltaSemiEquals(n - n / r - 1),
        ],
        absence_claims: vec![AbsenceClaim::TrFactor(r)],
        classes: class_ranges(&sizes),
    })
}

fn class_ranges(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for &s in sizes {
        out.push((next..next + s).collect());
        next += s;
    }
    out
}

/// Constructs the instance of a family from its parameter list.
pub fn construct(family: Family, params: &[usize]) -> Result<ExtremalInstance> {
    let want = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "family {} takes {k} parameters, got {}",
                family.label(),
                params.len()
            )))
        }
    };
    match family {
        Family::TwoCliques => {
            want(2)?;
            two_cliques(params[0], params[1])
        }
        Family::TripartiteOdd => {
            want(2)?;
            tripartite_odd(params[0], params[1])
        }
        Family::ElzaharTripartite => {
            want(2)?;
            elzahar_tripartite(params[0], params[1])
        }
        Family::OreT3 => {
            want(1)?;
            ore_t3(params[0])
        }
        Family::RPartiteTr => {
            want(2)?;
            r_partite_tr(params[0], params[1])
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Verified { method: String },
    Unverified { reason: String },
    Failed { detail: String },
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub what: String,
    pub status: CheckStatus,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub family: Family,
    pub params: Vec<usize>,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.status, CheckStatus::Failed { .. }))
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "{}({}):\n",
            self.family.label(),
            self.params
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        for c in &self.checks {
            let line = match &c.status {
                CheckStatus::Verified { method } => format!("  ok   {} [{}]", c.what, method),
                CheckStatus::Unverified { reason } => {
                    format!("  skip {} [{}]", c.what, reason)
                }
                CheckStatus::Failed { detail } => format!("  FAIL {} [{}]", c.what, detail),
            };
            s.push_str(&line);
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct VerifyParams {
    /// Exact search runs when the instance has at most this many vertices.
    pub search_limit: usize,
    pub budget_nodes: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            search_limit: 15,
            budget_nodes: 10_000_000,
        }
    }
}

/// Checks every degree claim exactly and every absence claim structurally
/// (component divisibility, class capacity, vertex-in-no-copy) and by exact
/// search when the instance is within the solver limit.
pub fn verify(inst: &ExtremalInstance, params: &VerifyParams) -> VerificationReport {
    let mut checks = Vec::new();
    let deg = inst.graph.degrees();
    for claim in &inst.degree_claims {
        let ok = match claim {
            DegreeClaim::DeltaSemiEquals(v) => deg.delta_semi == *v,
            DegreeClaim::DeltaTotalEquals(v) => deg.delta_total == *v,
            DegreeClaim::DeltaTotalAtLeast(v) => deg.delta_total >= *v,
            DegreeClaim::OreMinEquals(var, v) => {
                inst.graph.ore_minimum(*var) == OreMinimum::Value(*v)
            }
        };
        checks.push(CheckResult {
            what: claim.to_string(),
            status: if ok {
                CheckStatus::Verified { method: "exact degree computation".into() }
            } else {
                CheckStatus::Failed { detail: format!("claim {claim} does not hold") }
            },
        });
    }
    for claim in &inst.absence_claims {
        checks.extend(verify_absence(inst, claim, params));
    }
    VerificationReport {
        family: inst.family,
        params: inst.params.clone(),
        checks,
    }
}

fn verify_absence(
    inst: &ExtremalInstance,
    claim: &AbsenceClaim,
    params: &VerifyParams,
) -> Vec<CheckResult> {
    let g = &inst.graph;
    let n = g.order();
    let mut checks = Vec::new();

    // Structural route first.
    let structural: Option<String> = match claim {
        AbsenceClaim::TrFactor(r) => {
            component_divisibility(g, *r)
                .or_else(|| class_capacity(inst, &[(*r, 1)]))
                .or_else(|| vertex_in_no_copy(g, &transitive_tournament(*r).ok()?))
        }
        AbsenceClaim::AnyCycleOrientation { len, .. } => {
            // Independent-set capacity proves absence for every orientation
            // at once: any cycle of length l meets an independent class in
            // at most ⌊l/2⌋ vertices.
            component_divisibility(g, *len).or_else(|| class_capacity(inst, &[(*len, *len / 2)]))
        }
        AbsenceClaim::OddCycleCollection { count, .. } => odd_collection_capacity(inst, *count),
        AbsenceClaim::AnyConnectedOrder { order, .. } => component_divisibility(g, *order),
    };
    match structural {
        Some(method) => checks.push(CheckResult {
            what: format!("{} (all targets)", claim.key()),
            status: CheckStatus::Verified { method },
        }),
        None => checks.push(CheckResult {
            what: format!("{} (all targets)", claim.key()),
            status: CheckStatus::Unverified {
                reason: "no structural proof applies".into(),
            },
        }),
    }

    // Exact search on the designated targets.
    if n > params.search_limit {
        checks.push(CheckResult {
            what: format!("{} (exact search)", claim.key()),
            status: CheckStatus::Unverified {
                reason: format!("unverified at this size (n={n} > {})", params.search_limit),
            },
        });
        return checks;
    }
    let searches: Vec<(String, Outcome<()>)> = match claim {
        AbsenceClaim::TrFactor(r) => {
            let p = transitive_tournament(*r).expect("r >= 1");
            let mut b = Budget::nodes(params.budget_nodes);
            vec![(
                format!("t{r}-factor"),
                find_factor(g, &[p], &mut b).map(|_| ()),
            )]
        }
        AbsenceClaim::AnyCycleOrientation { designated, .. } => designated
            .iter()
            .map(|w| {
                let copies = n / w.len();
                let words: Vec<OrientationWord> = (0..copies).map(|_| w.clone()).collect();
                let mut b = Budget::nodes(params.budget_nodes);
                let out = find_cycle_list_tiling(g, &words, true, &mut b)
                    .map(|o| o.map(|_| ()))
                    .unwrap_or(Outcome::Absent);
                (format!("{copies} copies of {w}"), out)
            })
            .collect(),
        AbsenceClaim::OddCycleCollection { designated, .. } => designated
            .iter()
            .map(|words| {
                let mut b = Budget::nodes(params.budget_nodes);
                let out = find_cycle_list_tiling(g, words, true, &mut b)
                    .map(|o| o.map(|_| ()))
                    .unwrap_or(Outcome::Absent);
                let label: Vec<String> = words.iter().map(ToString::to_string).collect();
                (label.join("+"), out)
            })
            .collect(),
        AbsenceClaim::AnyConnectedOrder { designated, .. } => designated
            .iter()
            .map(|p| {
                let mut b = Budget::nodes(params.budget_nodes);
                (
                    format!("{}-factor", p.label()),
                    find_factor(g, std::slice::from_ref(p), &mut b).map(|_| ()),
                )
            })
            .collect(),
    };
    for (what, outcome) in searches {
        let status = match outcome {
            Outcome::Absent => CheckStatus::Verified { method: "exact search".into() },
            Outcome::Found(()) => CheckStatus::Failed {
                detail: "a factor exists, contradicting the claim".into(),
            },
            Outcome::Unknown => CheckStatus::Unverified {
                reason: "search budget exhausted".into(),
            },
        };
        checks.push(CheckResult {
            what: format!("{} ({})", claim.key(), what),
            status,
        });
    }
    checks
}

/// Weak components whose order is not divisible by h block any factor into
/// connected tiles of order h.
fn component_divisibility(g: &Digraph, h: usize) -> Option<String> {
    let n = g.order();
    let mut seen = VertexSet::empty(n);
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen.contains(s) {
            continue;
        }
        let mut stack = vec![s];
        let mut size = 0usize;
        seen.insert(s);
        while let Some(v) = stack.pop() {
            size += 1;
            for w in g.out_neighbors(v).union(g.in_neighbors(v)).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    if sizes.len() > 1 && sizes.iter().any(|s| s % h != 0) {
        Some(format!(
            "component orders {sizes:?} are not all divisible by {h}"
        ))
    } else {
        None
    }
}

/// Tiles of order h meet an independent class in at most α vertices, so a
/// class larger than α·(n/h) blocks a spanning tiling. `tiles` lists
/// (order, α) of the single tile shape in use.
fn class_capacity(inst: &ExtremalInstance, tiles: &[(usize, usize)]) -> Option<String> {
    let n = inst.graph.order();
    let &(h, alpha) = tiles.first()?;
    if n % h != 0 {
        return Some(format!("{h} does not divide n = {n}"));
    }
    let capacity = alpha * (n / h);
    let blocking = inst.classes.iter().find(|c| c.len() > capacity)?;
    Some(format!(
        "independent class of size {} exceeds capacity {capacity} = {alpha}·(n/{h})",
        blocking.len()
    ))
}

/// Any spanning collection of `count` odd cycles covers an independent class
/// with at most (n − count)/2 vertices.
fn odd_collection_capacity(inst: &ExtremalInstance, count: usize) -> Option<String> {
    let n = inst.graph.order();
    let capacity = (n - count) / 2;
    let blocking = inst.classes.iter().find(|c| c.len() > capacity)?;
    Some(format!(
        "independent class of size {} exceeds the odd-cycle capacity {capacity} = (n-t)/2",
        blocking.len()
    ))
}

/// A vertex contained in no copy of the pattern blocks every factor.
fn vertex_in_no_copy(g: &Digraph, pattern: &Pattern) -> Option<String> {
    let mut budget = Budget::nodes(1_000_000);
    for v in 0..g.order() {
        let mut found = false;
        for role in 0..pattern.order() {
            if !enumerate_copies(g, pattern, Some((role, v)), Some(1), &mut budget).is_empty() {
                found = true;
                break;
            }
        }
        if budget.exhausted() {
            return None;
        }
        if !found {
            return Some(format!("vertex {v} lies in no copy of {}", pattern.label()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io;

    #[test]
    fn two_cliques_sizes() {
        let a = two_cliques(10, 3).unwrap();
        assert_eq!(a.params, vec![10, 3]);
        assert_eq!(a.graph.degrees().delta_total, 8);

        let b = two_cliques(12, 3).unwrap();
        // 6+6 both divisible by 3, so 5+7.
        assert_eq!(b.graph.degrees().delta_total, 8);
        let comp_sizes: Vec<usize> = vec![5, 7];
        let mut count0 = 0;
        for v in 0..5 {
            if b.graph.out_neighbors(v).len() == 4 {
                count0 += 1;
            }
        }
        assert_eq!(count0, comp_sizes[0]);

        assert!(two_cliques(5, 3).is_err());
        // Odd n with h = 2 has no valid split.
        assert!(two_cliques(9, 2).is_err());
    }

    #[test]
    fn tripartite_odd_formulas() {
        let a = tripartite_odd(9, 1).unwrap();
        assert_eq!(a.classes.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 4, 3]);
        assert_eq!(a.graph.degrees().delta_semi, 5);

        let b = tripartite_odd(15, 2).unwrap();
        assert_eq!(b.classes.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 7, 6]);
        assert_eq!(b.graph.degrees().delta_semi, 8);

        assert!(tripartite_odd(10, 1).is_err());
    }

    #[test]
    fn elzahar_formulas() {
        let a = elzahar_tripartite(10, 2).unwrap();
        assert_eq!(a.classes.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 5, 4]);
        assert_eq!(a.graph.degrees().delta_semi, 5);

        let b = elzahar_tripartite(12, 2).unwrap();
        assert_eq!(b.graph.degrees().delta_semi, 6);

        assert!(elzahar_tripartite(9, 2).is_err());
    }

    #[test]
    fn ore_t3_structure() {
        let inst = ore_t3(6).unwrap();
        let deg = inst.graph.degrees();
        // w = vertex 0 has out- and in-degree n/3 = 2.
        assert_eq!(deg.d_out[0], 2);
        assert_eq!(deg.d_in[0], 2);
        // V₁ vertices (last 2n/3−1 = 3) have degree n−2 = 4 in both directions.
        for v in 3..6 {
            assert_eq!(deg.d_in[v], 4);
        }
        assert_eq!(
            inst.graph.ore_minimum(OreVariant::OutIn),
            OreMinimum::Value(6)
        );

        let inst9 = ore_t3(9).unwrap();
        assert_eq!(
            inst9.graph.ore_minimum(OreVariant::OutIn),
            OreMinimum::Value(10)
        );
        assert!(ore_t3(7).is_err());
    }

    #[test]
    fn r_partite_formulas() {
        let a = r_partite_tr(9, 3).unwrap();
        assert_eq!(a.classes.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 2, 4]);
        assert_eq!(
            a.graph.ore_minimum(OreVariant::OutIn),
            OreMinimum::Value(10)
        );

        let b = r_partite_tr(8, 2).unwrap();
        assert_eq!(b.classes.iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 5]);
        assert!(r_partite_tr(9, 2).is_err());
    }

    #[test]
    fn constructions_are_deterministic() {
        for (f, ps) in [
            (Family::TwoCliques, vec![12usize, 3usize]),
            (Family::TripartiteOdd, vec![9, 1]),
            (Family::ElzaharTripartite, vec![9, 3]),
            (Family::OreT3, vec![6]),
            (Family::RPartiteTr, vec![9, 3]),
        ] {
            let a = construct(f, &ps).unwrap();
            let b = construct(f, &ps).unwrap();
            assert_eq!(io::to_text(&a.graph), io::to_text(&b.graph));
            assert_eq!(a.claims_record(), b.claims_record());
        }
    }

    #[test]
    fn verify_smallest_instances_quickly() {
        // Degree claims plus structural absence; exact search exercised in
        // the acceptance suite.
        for inst in [
            two_cliques(12, 3).unwrap(),
            tripartite_odd(9, 1).unwrap(),
            elzahar_tripartite(9, 3).unwrap(),
            ore_t3(6).unwrap(),
            r_partite_tr(9, 3).unwrap(),
            r_partite_tr(8, 2).unwrap(),
        ] {
            let report = verify(&inst, &VerifyParams::default());
            assert!(report.pass(), "{}", report.render());
        }
    }
}
