//! Unit-capacity maximum flow, minimum s–t edge cuts and global edge connectivity.

use std::collections::VecDeque;

use super::{EdgeId, GraphError, MultiGraph, VertexId};

/// A set of edges together with the two vertex sides it separates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutWitness {
    pub edges: Vec<EdgeId>,
    pub source_side: Vec<VertexId>,
    pub sink_side: Vec<VertexId>,
}

impl CutWitness {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// True when removing exactly `edges` leaves no path from either side to the other.
    pub fn verify(&self, g: &MultiGraph) -> bool {
        if self.source_side.is_empty() || self.sink_side.is_empty() {
            return false;
        }
        let mut removed = vec![false; g.edge_count()];
        for &e in &self.edges {
            match removed.get_mut(e) {
                Some(slot) if !*slot => *slot = true,
                _ => return false,
            }
        }
        let n = g.vertex_count();
        let mut side = vec![0u8; n];
        for (&v, mark) in self
            .source_side
            .iter()
            .map(|v| (v, 1u8))
            .chain(self.sink_side.iter().map(|v| (v, 2u8)))
        {
            match side.get_mut(v) {
                Some(s) if *s == 0 => *s = mark,
                _ => return false,
            }
        }
        let (comp, count) = g.components_avoiding(&removed);
        let mut touched = vec![0u8; count];
        for v in 0..n {
            touched[comp[v]] |= side[v];
        }
        touched.iter().all(|&t| t != 3)
    }
}

impl MultiGraph {
    /// Minimum number of edges separating `s` from `t`, with a witness.
    ///
    /// Each undirected edge carries one unit in either direction. The source side of
    /// the witness is the set of vertices reachable from `s` in the final residual graph.
    pub fn min_edge_cut(
        &self,
        s: VertexId,
        t: VertexId,
    ) -> Result<(usize, CutWitness), GraphError> {
        self.check_vertex(s)?;
        self.check_vertex(t)?;
        if s == t {
            return Err(GraphError::SameEndpoints(s));
        }
        let n = self.vertex_count();
        // flow[e] is +1 when a unit runs from edges[e].0 to edges[e].1, -1 for the reverse.
        let mut flow = vec![0i8; self.edge_count()];
        let residual = |flow: &[i8], e: EdgeId, from: VertexId| -> bool {
            let forward = self.edges[e].0 == from;
            if forward {
                flow[e] < 1
            } else {
                flow[e] > -1
            }
        };
        let mut value = 0;
        let mut parent: Vec<Option<EdgeId>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        loop {
            seen.iter_mut().for_each(|x| *x = false);
            parent.iter_mut().for_each(|x| *x = None);
            seen[s] = true;
            queue.clear();
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                if v == t {
                    break;
                }
                for &e in &self.incidence[v] {
                    let w = self.opposite(e, v);
                    if !seen[w] && residual(&flow, e, v) {
                        seen[w] = true;
                        parent[w] = Some(e);
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while let Some(e) = parent[v] {
                let u = self.opposite(e, v);
                flow[e] += if self.edges[e].0 == u { 1 } else { -1 };
                v = u;
            }
            value += 1;
        }
        let cut: Vec<EdgeId> = (0..self.edge_count())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                seen[a] != seen[b]
            })
            .collect();
        debug_assert_eq!(cut.len(), value);
        let (source_side, sink_side) = (0..n).partition(|&v| seen[v]);
        Ok((
            value,
            CutWitness {
                edges: cut,
                source_side,
                sink_side,
            },
        ))
    }

    /// The largest `p` such that the graph is `p`-edge-connected; 0 when disconnected.
    pub fn edge_connectivity(&self) -> Result<(usize, CutWitness), GraphError> {
        if self.vertex_count() < 2 {
            return Err(GraphError::UndefinedConnectivity);
        }
        let mut best: Option<(usize, CutWitness)> = None;
        for t in 1..self.vertex_count() {
            let (size, witness) = self.min_edge_cut(0, t)?;
            if best.as_ref().is_none_or(|(b, _)| size < *b) {
                best = Some((size, witness));
                if size == 0 {
                    break;
                }
            }
        }
        Ok(best.expect("at least one sink"))
    }

    pub fn is_k_edge_connected(&self, k: usize) -> Result<bool, GraphError> {
        Ok(self.edge_connectivity()?.0 >= k)
    }
}
