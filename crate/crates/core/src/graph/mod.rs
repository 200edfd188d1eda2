//! Loop-free multigraphs with labeled vertices.
//!
//! Vertex and edge ids are dense indices. Operations that remove elements return a
//! fresh graph with renumbered ids; labels carry the provenance across.

mod flow;
mod isomorphism;
mod minor;
mod planarity;

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::word::Letter;

pub use flow::CutWitness;
pub use minor::{MinorModel, MAX_MINOR_HOST_VERTICES, MAX_MINOR_PATTERN_VERTICES};
pub use planarity::{Embedding, KuratowskiKind, KuratowskiWitness, PlanarityWitness};

pub use isomorphism::MAX_ISOMORPHISM_VERTICES;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge would join vertex {0} to itself")]
    SelfLoop(VertexId),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("edge connectivity is undefined for fewer than 2 vertices")]
    UndefinedConnectivity,
    #[error("source and sink must differ (both {0})")]
    SameEndpoints(VertexId),
    #[error("pattern has {size} vertices; at most {limit} are supported")]
    PatternTooLarge { size: usize, limit: usize },
    #[error("host has {size} vertices; at most {limit} are supported")]
    HostTooLarge { size: usize, limit: usize },
    #[error("graph has {size} vertices; isomorphism is limited to {limit}")]
    SizeCapExceeded { size: usize, limit: usize },
}

/// A vertex label: a letter plus the index of the copy it came from.
///
/// Copy 0 prints as the bare letter (`a`, `B`); copy 2 of `A` prints as `A_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    pub letter: Letter,
    pub copy: u32,
}

impl VertexLabel {
    pub fn new(letter: Letter) -> Self {
        Self { letter, copy: 0 }
    }

    pub fn with_copy(self, copy: u32) -> Self {
        Self { copy, ..self }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 0 {
            write!(f, "{}", self.letter)
        } else {
            write!(f, "{}_{}", self.letter, self.copy)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    labels: Vec<VertexLabel>,
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(labels: impl IntoIterator<Item = VertexLabel>) -> Self {
        let labels: Vec<_> = labels.into_iter().collect();
        let incidence = vec![Vec::new(); labels.len()];
        Self {
            labels,
            edges: Vec::new(),
            incidence,
        }
    }

    /// `n` vertices labeled `a, b, c, ...`.
    pub fn with_vertex_count(n: usize) -> Self {
        Self::with_vertices((0..n).map(|i| VertexLabel::new(Letter::positive(i))))
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Self::with_vertex_count(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::with_vertex_count(n);
        for u in 0..n {
            for v in u + 1..n {
                g.push_edge(u, v);
            }
        }
        g
    }

    /// Parts are `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let mut g = Self::with_vertex_count(p + q);
        for u in 0..p {
            for v in p..p + q {
                g.push_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::with_vertex_count(n);
        for u in 0..n {
            g.push_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::with_vertex_count(n);
        for u in 1..n {
            g.push_edge(u - 1, u);
        }
        g
    }

    pub fn add_vertex(&mut self, label: VertexLabel) -> VertexId {
        self.labels.push(label);
        self.incidence.push(Vec::new());
        self.labels.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(self.push_edge(u, v))
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        debug_assert_ne!(u, v);
        let id = self.edges.len();
        self.edges.push((u, v));
        self.incidence[u].push(id);
        self.incidence[v].push(id);
        id
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.labels.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.labels.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), GraphError> {
        self.edges.get(e).copied().ok_or(GraphError::UnknownEdge(e))
    }

    pub fn label(&self, v: VertexId) -> VertexLabel {
        self.labels[v]
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn find_label(&self, label: VertexLabel) -> Option<VertexId> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn set_copy(&mut self, copy: u32) {
        for l in &mut self.labels {
            l.copy = copy;
        }
    }

    /// Edge ids at `v`, in increasing order.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Number of incident edges, counting parallel edges separately.
    pub fn valence(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.incidence[v].len())
    }

    pub fn valences(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    /// `Some(k)` when every vertex has valence `k`.
    pub fn is_regular(&self) -> Result<Option<usize>, GraphError> {
        let first = self.incidence.first().ok_or(GraphError::EmptyGraph)?.len();
        Ok(self
            .incidence
            .iter()
            .all(|inc| inc.len() == first)
            .then_some(first))
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.incidence[u]
            .iter()
            .filter(|&&e| self.opposite(e, u) == v)
            .count()
    }

    /// Distinct neighbours of every vertex, sorted.
    pub fn simple_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj: Vec<Vec<VertexId>> = self
            .vertices()
            .map(|v| {
                self.incidence[v]
                    .iter()
                    .map(|&e| self.opposite(e, v))
                    .collect()
            })
            .collect();
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Component index of every vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_avoiding(&[])
    }

    pub(crate) fn components_avoiding(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    if removed.get(e).copied().unwrap_or(false) {
                        continue;
                    }
                    let w = self.opposite(e, v);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Keeps the vertices with `keep[v]` set, renumbering them in order.
    fn induced(&self, keep: &[bool]) -> MultiGraph {
        let mut map = vec![usize::MAX; self.vertex_count()];
        let mut g = MultiGraph::new();
        for v in self.vertices().filter(|&v| keep[v]) {
            map[v] = g.add_vertex(self.labels[v]);
        }
        for &(u, v) in &self.edges {
            if keep[u] && keep[v] {
                g.push_edge(map[u], map[v]);
            }
        }
        g
    }

    /// Removes `v` and its incident edges.
    pub fn delete_vertex(&self, v: VertexId) -> Result<MultiGraph, GraphError> {
        self.check_vertex(v)?;
        let mut keep = vec![true; self.vertex_count()];
        keep[v] = false;
        Ok(self.induced(&keep))
    }

    /// Removes the listed edges; vertex ids are unchanged.
    pub fn delete_edges(&self, removed: &[EdgeId]) -> Result<MultiGraph, GraphError> {
        let mut mask = vec![false; self.edge_count()];
        for &e in removed {
            *mask.get_mut(e).ok_or(GraphError::UnknownEdge(e))? = true;
        }
        let mut g = MultiGraph::with_vertices(self.labels.iter().copied());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if !mask[e] {
                g.push_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Merges the endpoints of `e` into its lower-numbered endpoint.
    ///
    /// Every edge between the two endpoints disappears, so the result stays loop-free.
    pub fn contract_edge(&self, e: EdgeId) -> Result<MultiGraph, GraphError> {
        let (a, b) = self.endpoints(e)?;
        let (keep, gone) = (a.min(b), a.max(b));
        let mut map: Vec<VertexId> = Vec::with_capacity(self.vertex_count());
        let mut next = 0;
        for v in self.vertices() {
            if v == gone {
                map.push(usize::MAX);
            } else {
                map.push(next);
                next += 1;
            }
        }
        map[gone] = map[keep];
        let mut g = MultiGraph::with_vertices(
            self.vertices()
                .filter(|&v| v != gone)
                .map(|v| self.labels[v]),
        );
        for &(u, v) in &self.edges {
            let (u, v) = (map[u], map[v]);
            if u != v {
                g.push_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Places `other` after `self`; returns the union and the id offset of `other`.
    pub fn disjoint_union(&self, other: &MultiGraph) -> (MultiGraph, usize) {
        let offset = self.vertex_count();
        let mut g = self.clone();
        for &l in &other.labels {
            g.add_vertex(l);
        }
        for &(u, v) in &other.edges {
            g.push_edge(u + offset, v + offset);
        }
        (g, offset)
    }

    /// Graphviz rendering: vertices in id order, then one line per edge in id order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for l in &self.labels {
            let _ = writeln!(out, "  {l};");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {} -- {};", self.labels[u], self.labels[v]);
        }
        out.push_str("}\n");
        out
    }
}
