//! Splicing graphs at a vertex, cover simulation and the splice property harness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    EdgeId, GraphError, MultiGraph, VertexId, MAX_MINOR_HOST_VERTICES, MAX_MINOR_PATTERN_VERTICES,
};

/// Recorded in simulation reports so runs can be reproduced from the seed.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng";

/// Attempts allowed before [`random_regular_connected_graph`] gives up.
pub const REJECTION_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpliceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("valences differ: {first} and {second}")]
    ValenceMismatch { first: usize, second: usize },
    #[error("sigma is not a bijection between the incident edges")]
    SigmaNotBijection,
    #[error("vertices {0} and {1} lie in the same component")]
    SameComponent(VertexId, VertexId),
    #[error("no vertex pair can be spliced")]
    NoFeasiblePair,
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("no valid graph found in {0} attempts")]
    BudgetExhausted(usize),
}

/// Splice `first` at `first_vertex` with `second` at `second_vertex`; `sigma` pairs every
/// edge at the first vertex with one edge at the second.
#[derive(Debug, Clone)]
pub struct SpliceInstruction<'a> {
    pub first: &'a MultiGraph,
    pub first_vertex: VertexId,
    pub second: &'a MultiGraph,
    pub second_vertex: VertexId,
    pub sigma: Vec<(EdgeId, EdgeId)>,
}

impl SpliceInstruction<'_> {
    pub fn validate(&self) -> Result<(), SpliceError> {
        check_sigma(
            self.first
                .incident_edges(checked(self.first, self.first_vertex)?),
            self.second
                .incident_edges(checked(self.second, self.second_vertex)?),
            &self.sigma,
        )
    }
}

fn checked(g: &MultiGraph, v: VertexId) -> Result<VertexId, SpliceError> {
    g.valence(v)?;
    Ok(v)
}

fn check_sigma(
    at_first: &[EdgeId],
    at_second: &[EdgeId],
    sigma: &[(EdgeId, EdgeId)],
) -> Result<(), SpliceError> {
    if at_first.len() != at_second.len() {
        return Err(SpliceError::ValenceMismatch {
            first: at_first.len(),
            second: at_second.len(),
        });
    }
    let mut left: Vec<EdgeId> = sigma.iter().map(|p| p.0).collect();
    let mut right: Vec<EdgeId> = sigma.iter().map(|p| p.1).collect();
    left.sort_unstable();
    right.sort_unstable();
    let mut a = at_first.to_vec();
    let mut b = at_second.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if left != a || right != b {
        return Err(SpliceError::SigmaNotBijection);
    }
    Ok(())
}

/// The vertices of the first graph except `first_vertex`, then those of the second except
/// `second_vertex`; the surviving edges of each graph, then one edge per sigma pair.
pub fn splice(instr: &SpliceInstruction<'_>) -> Result<MultiGraph, SpliceError> {
    instr.validate()?;
    let (union, offset) = instr.first.disjoint_union(instr.second);
    let m = instr.first.edge_count();
    let sigma: Vec<(EdgeId, EdgeId)> = instr.sigma.iter().map(|&(a, b)| (a, b + m)).collect();
    splice_within(
        &union,
        instr.first_vertex,
        instr.second_vertex + offset,
        &sigma,
    )
}

/// Splices two vertices from different components of one graph.
pub fn splice_within(
    g: &MultiGraph,
    v1: VertexId,
    v2: VertexId,
    sigma: &[(EdgeId, EdgeId)],
) -> Result<MultiGraph, SpliceError> {
    checked(g, v1)?;
    checked(g, v2)?;
    let (comp, _) = g.components();
    if comp[v1] == comp[v2] {
        return Err(SpliceError::SameComponent(v1, v2));
    }
    check_sigma(g.incident_edges(v1), g.incident_edges(v2), sigma)?;
    let mut map = vec![usize::MAX; g.vertex_count()];
    let mut out = MultiGraph::new();
    for v in g.vertices().filter(|&v| v != v1 && v != v2) {
        map[v] = out.add_vertex(g.label(v));
    }
    for &(u, v) in g.edges() {
        if map[u] != usize::MAX && map[v] != usize::MAX {
            out.add_edge(map[u], map[v])?;
        }
    }
    for &(e1, e2) in sigma {
        out.add_edge(map[g.opposite(e1, v1)], map[g.opposite(e2, v2)])?;
    }
    Ok(out)
}

fn random_sigma(
    g: &MultiGraph,
    v1: VertexId,
    v2: VertexId,
    rng: &mut ChaCha8Rng,
) -> Vec<(EdgeId, EdgeId)> {
    let mut targets = g.incident_edges(v2).to_vec();
    targets.shuffle(rng);
    g.incident_edges(v1).iter().copied().zip(targets).collect()
}

/// `d` copies of `w_graph` (copy `c` labeled with index `c`) joined by `d − 1` random
/// splices, each between two current components.
///
/// With `label_matched` a vertex labeled `x` is always paired with one labeled `x⁻¹`.
pub fn simulate_cover(
    w_graph: &MultiGraph,
    d: usize,
    seed: u64,
    label_matched: bool,
) -> Result<MultiGraph, SpliceError> {
    if d == 0 {
        return Err(SpliceError::Infeasible(
            "at least one copy is required".into(),
        ));
    }
    let mut g = MultiGraph::new();
    for c in 0..d {
        let mut copy = w_graph.clone();
        copy.set_copy(c as u32);
        g = g.disjoint_union(&copy).0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 1..d {
        let (comp, _) = g.components();
        let valences = g.valences();
        let mut candidates = Vec::new();
        for u in g.vertices() {
            for v in u + 1..g.vertex_count() {
                let matched = !label_matched || g.label(u).letter == g.label(v).letter.inverse();
                if comp[u] != comp[v] && valences[u] == valences[v] && valences[u] > 0 && matched {
                    candidates.push((u, v));
                }
            }
        }
        let &(u, v) = candidates
            .choose(&mut rng)
            .ok_or(SpliceError::NoFeasiblePair)?;
        let sigma = random_sigma(&g, u, v, &mut rng);
        g = splice_within(&g, u, v, &sigma)?;
    }
    Ok(g)
}

/// A `k`-valent `k`-edge-connected loop-free multigraph on `n` vertices, sampled from the
/// pairing model and rejected until it is `k`-edge-connected.
pub fn random_regular_connected_graph(
    n: usize,
    k: usize,
    seed: u64,
) -> Result<MultiGraph, SpliceError> {
    if k == 0 || n < k + 1 || (n * k) % 2 == 1 {
        return Err(SpliceError::Infeasible(format!(
            "need k >= 1, n >= k + 1 and n*k even (n = {n}, k = {k})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    for _ in 0..REJECTION_BUDGET {
        points.shuffle(&mut rng);
        if points.chunks(2).any(|p| p[0] == p[1]) {
            continue;
        }
        let mut g = MultiGraph::with_vertex_count(n);
        for p in points.chunks(2) {
            g.add_edge(p[0], p[1])?;
        }
        if g.is_k_edge_connected(k)? {
            return Ok(g);
        }
    }
    Err(SpliceError::BudgetExhausted(REJECTION_BUDGET))
}

/// One splice of two independently sampled graphs at random vertices.
#[derive(Debug, Clone)]
pub struct SpliceTrial {
    pub first: MultiGraph,
    pub second: MultiGraph,
    pub first_vertex: VertexId,
    pub second_vertex: VertexId,
    pub spliced: MultiGraph,
}

/// Samples `G₁` on `first_size` and `G₂` on `second_size` vertices, both `k`-valent and
/// `k`-edge-connected, and splices them with a random sigma.
pub fn random_splice_trial(
    first_size: usize,
    second_size: usize,
    k: usize,
    seed: u64,
) -> Result<SpliceTrial, SpliceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = random_regular_connected_graph(first_size, k, rng.gen())?;
    let mut second = random_regular_connected_graph(second_size, k, rng.gen())?;
    second.set_copy(1);
    let first_vertex = rng.gen_range(0..first_size);
    let second_vertex = rng.gen_range(0..second_size);
    let mut targets = second.incident_edges(second_vertex).to_vec();
    targets.shuffle(&mut rng);
    let sigma = first
        .incident_edges(first_vertex)
        .iter()
        .copied()
        .zip(targets)
        .collect();
    let spliced = splice(&SpliceInstruction {
        first: &first,
        first_vertex,
        second: &second,
        second_vertex,
        sigma,
    })?;
    Ok(SpliceTrial {
        first,
        second,
        first_vertex,
        second_vertex,
        spliced,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    /// Common valence, or `None` when the result is not regular.
    pub valence: Option<usize>,
    pub edge_connectivity: usize,
    pub planar: bool,
    /// `None` when the minor check was skipped for size.
    pub minor_found: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub rng: String,
    pub seed: u64,
    pub d: usize,
    pub trials: usize,
    pub per_trial: Vec<TrialRecord>,
    pub violations: usize,
}

impl SimulationReport {
    fn new(seed: u64, d: usize) -> Self {
        Self {
            rng: RNG_ALGORITHM.to_string(),
            seed,
            d,
            trials: 0,
            per_trial: Vec::new(),
            violations: 0,
        }
    }

    fn push(&mut self, record: TrialRecord, violated: bool) {
        self.trials += 1;
        self.per_trial.push(record);
        self.violations += usize::from(violated);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn record(g: &MultiGraph, pattern: &MultiGraph) -> Result<TrialRecord, SpliceError> {
    let minor_found = if pattern.vertex_count() <= MAX_MINOR_PATTERN_VERTICES
        && g.vertex_count() <= MAX_MINOR_HOST_VERTICES
    {
        Some(g.contains_minor(pattern)?.is_some())
    } else {
        None
    };
    Ok(TrialRecord {
        valence: g.is_regular()?,
        edge_connectivity: g.edge_connectivity()?.0,
        planar: g.is_planar(),
        minor_found,
    })
}

/// Label-matched cover simulations of `w_graph` with seeds `seed, seed + 1, ...`.
///
/// A trial is a violation when the result is disconnected, when a regular
/// `k`-edge-connected input yields a result that is not `k`-regular and
/// `k`-edge-connected, when a non-planar input yields a planar result, or when the input
/// is not found as a minor.
pub fn cover_trials(
    w_graph: &MultiGraph,
    d: usize,
    trials: usize,
    seed: u64,
) -> Result<SimulationReport, SpliceError> {
    let regular = w_graph.is_regular()?;
    let connectivity = if w_graph.vertex_count() >= 2 {
        w_graph.edge_connectivity()?.0
    } else {
        0
    };
    let closed = regular.filter(|&k| k >= 1 && connectivity >= k);
    let input_planar = w_graph.is_planar();
    let mut report = SimulationReport::new(seed, d);
    for t in 0..trials {
        let g = simulate_cover(w_graph, d, seed.wrapping_add(t as u64), true)?;
        let r = record(&g, w_graph)?;
        let violated = !g.is_connected()
            || closed.is_some_and(|k| r.valence != Some(k) || r.edge_connectivity < k)
            || (!input_planar && r.planar)
            || (closed.is_some() && r.minor_found == Some(false));
        report.push(r, violated);
    }
    Ok(report)
}

/// Chains of `copies` random `k`-valent `k`-edge-connected graphs on `n` vertices, spliced
/// one after another at random vertices. A trial is a violation unless the result is
/// `k`-regular, `k`-edge-connected and has the first graph as a minor.
pub fn regular_trials(
    n: usize,
    k: usize,
    copies: usize,
    trials: usize,
    seed: u64,
) -> Result<SimulationReport, SpliceError> {
    if copies == 0 {
        return Err(SpliceError::Infeasible(
            "at least one copy is required".into(),
        ));
    }
    let mut report = SimulationReport::new(seed, copies);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        let first = random_regular_connected_graph(n, k, rng.gen())?;
        let mut g = first.clone();
        for c in 1..copies {
            let mut next = random_regular_connected_graph(n, k, rng.gen())?;
            next.set_copy(c as u32);
            let v1 = rng.gen_range(0..g.vertex_count());
            let v2 = rng.gen_range(0..n);
            let mut targets = next.incident_edges(v2).to_vec();
            targets.shuffle(&mut rng);
            let sigma = g.incident_edges(v1).iter().copied().zip(targets).collect();
            g = splice(&SpliceInstruction {
                first: &g,
                first_vertex: v1,
                second: &next,
                second_vertex: v2,
                sigma,
            })?;
        }
        let r = record(&g, &first)?;
        let violated =
            r.valence != Some(k) || r.edge_connectivity < k || r.minor_found == Some(false);
        report.push(r, violated);
    }
    Ok(report)
}
