//! Backtracking isomorphism test for small multigraphs.

use super::{GraphError, MultiGraph, VertexId};

pub const MAX_ISOMORPHISM_VERTICES: usize = 32;

fn multiplicity_matrix(g: &MultiGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for &(u, v) in g.edges() {
        m[u][v] += 1;
        m[v][u] += 1;
    }
    m
}

impl MultiGraph {
    /// Structural isomorphism respecting edge multiplicities; labels are ignored.
    ///
    /// On success `mapping[v]` is the image in `other` of vertex `v` of `self`.
    pub fn is_isomorphic(&self, other: &MultiGraph) -> Result<Option<Vec<VertexId>>, GraphError> {
        for g in [self, other] {
            if g.vertex_count() > MAX_ISOMORPHISM_VERTICES {
                return Err(GraphError::SizeCapExceeded {
                    size: g.vertex_count(),
                    limit: MAX_ISOMORPHISM_VERTICES,
                });
            }
        }
        let n = self.vertex_count();
        if n != other.vertex_count() || self.edge_count() != other.edge_count() {
            return Ok(None);
        }
        let (da, db) = (self.valences(), other.valences());
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(None);
        }
        let (ma, mb) = (multiplicity_matrix(self), multiplicity_matrix(other));

        // Order vertices so each one (after the first of its component) touches an
        // earlier one; high valence first.
        let mut order: Vec<VertexId> = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&u| ma[v][u] > 0).count();
                    (links, da[v], std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }

        let mut mapping = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let found = extend(0, &order, &ma, &mb, &da, &db, &mut mapping, &mut used);
        Ok(found.then_some(mapping))
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[VertexId],
    ma: &[Vec<usize>],
    mb: &[Vec<usize>],
    da: &[usize],
    db: &[usize],
    mapping: &mut [VertexId],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for c in 0..mb.len() {
        if used[c] || db[c] != da[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| ma[v][u] == mb[c][mapping[u]]);
        if !consistent {
            continue;
        }
        mapping[v] = c;
        used[c] = true;
        if extend(depth + 1, order, ma, mb, da, db, mapping, used) {
            return true;
        }
        used[c] = false;
        mapping[v] = usize::MAX;
    }
    false
}
