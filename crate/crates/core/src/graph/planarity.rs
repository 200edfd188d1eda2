//! Planarity on the underlying simple graph.
//!
//! Each biconnected block is embedded by path addition (fragments are placed into
//! admissible faces, forced fragments first). Face cycles are kept consistently
//! oriented, which turns them directly into a rotation system. A non-planar graph is
//! shrunk edge by edge to a minimal non-planar subgraph, which is a subdivision of
//! K₅ or K₃,₃.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use super::{MultiGraph, VertexId};

type SimpleEdge = (VertexId, VertexId);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarityWitness {
    Embedding(Embedding),
    Kuratowski(KuratowskiWitness),
}

impl PlanarityWitness {
    pub fn is_planar(&self) -> bool {
        matches!(self, Self::Embedding(_))
    }

    pub fn verify(&self, g: &MultiGraph) -> bool {
        match self {
            Self::Embedding(e) => e.verify(g),
            Self::Kuratowski(k) => k.verify(g),
        }
    }

    pub fn kuratowski(&self) -> Option<&KuratowskiWitness> {
        match self {
            Self::Kuratowski(k) => Some(k),
            Self::Embedding(_) => None,
        }
    }
}

/// A rotation system: for each vertex, its distinct neighbours in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub rotation: Vec<Vec<VertexId>>,
}

impl Embedding {
    /// Number of faces traced by the rule "arrive at v from u, leave towards the
    /// successor of u in the rotation at v".
    pub fn face_count(&self) -> usize {
        let mut position: BTreeMap<SimpleEdge, usize> = BTreeMap::new();
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, &u) in rot.iter().enumerate() {
                position.insert((v, u), i);
            }
        }
        let mut used: HashSet<SimpleEdge> = HashSet::new();
        let mut faces = 0;
        for (v, rot) in self.rotation.iter().enumerate() {
            for &w in rot {
                if used.contains(&(v, w)) {
                    continue;
                }
                faces += 1;
                let (mut a, mut b) = (v, w);
                while used.insert((a, b)) {
                    let rot_b = &self.rotation[b];
                    let i = position[&(b, a)];
                    let next = rot_b[(i + 1) % rot_b.len()];
                    a = b;
                    b = next;
                }
            }
        }
        faces
    }

    /// Checks that the rotation lists the simple neighbourhood of every vertex and that
    /// every component satisfies Euler's formula `V - E + F = 2`.
    pub fn verify(&self, g: &MultiGraph) -> bool {
        let adj = g.simple_adjacency();
        if self.rotation.len() != adj.len() {
            return false;
        }
        for (rot, nbrs) in self.rotation.iter().zip(&adj) {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if &sorted != nbrs {
                return false;
            }
        }
        let (comp, count) = g.components();
        self.components_are_individually_euler(g, &comp, count)
    }

    fn components_are_individually_euler(
        &self,
        g: &MultiGraph,
        comp: &[usize],
        count: usize,
    ) -> bool {
        let mut by_comp: Vec<Vec<VertexId>> = vec![Vec::new(); count];
        for v in g.vertices() {
            by_comp[comp[v]].push(v);
        }
        by_comp.iter().all(|vs| {
            let edges: usize = vs.iter().map(|&v| self.rotation[v].len()).sum::<usize>() / 2;
            if edges == 0 {
                return true;
            }
            let mut local = vec![Vec::new(); self.rotation.len()];
            for &v in vs {
                local[v] = self.rotation[v].clone();
            }
            let faces = Embedding { rotation: local }.face_count();
            vs.len() as i64 - edges as i64 + faces as i64 == 2
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subgraph, given by its edges, that subdivides K₅ or K₃,₃.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl KuratowskiWitness {
    /// Checks that every edge is present in `g` and that suppressing degree-2 vertices
    /// leaves exactly K₅ or K₃,₃.
    pub fn verify(&self, g: &MultiGraph) -> bool {
        let adj = g.simple_adjacency();
        let mut seen = HashSet::new();
        for &(u, v) in &self.edges {
            if u >= adj.len()
                || adj[u].binary_search(&v).is_err()
                || !seen.insert((u.min(v), u.max(v)))
            {
                return false;
            }
        }
        classify_subdivision(&self.edges) == Some(self.kind)
    }
}

/// Suppresses degree-2 vertices and recognises K₅ or K₃,₃.
pub(crate) fn classify_subdivision(edges: &[SimpleEdge]) -> Option<KuratowskiKind> {
    let mut nbrs: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in edges {
        if u == v {
            return None;
        }
        nbrs.entry(u).or_default().push(v);
        nbrs.entry(v).or_default().push(u);
    }
    while let Some((&v, _)) = nbrs.iter().find(|(_, list)| list.len() == 2) {
        let list = nbrs.remove(&v).unwrap();
        let (x, y) = (list[0], list[1]);
        if x == y {
            return None;
        }
        for (end, other) in [(x, y), (y, x)] {
            let entry = nbrs.get_mut(&end)?;
            let pos = entry.iter().position(|&w| w == v)?;
            entry[pos] = other;
        }
    }
    let vertices: Vec<VertexId> = nbrs.keys().copied().collect();
    for (v, list) in &nbrs {
        let distinct: BTreeSet<_> = list.iter().collect();
        if distinct.len() != list.len() || list.contains(v) {
            return None;
        }
    }
    let degrees: Vec<usize> = nbrs.values().map(Vec::len).collect();
    if vertices.len() == 5 && degrees.iter().all(|&d| d == 4) {
        return Some(KuratowskiKind::K5);
    }
    if vertices.len() == 6 && degrees.iter().all(|&d| d == 3) {
        let mut color: BTreeMap<VertexId, bool> = BTreeMap::new();
        let start = vertices[0];
        color.insert(start, false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let c = color[&v];
            for &w in &nbrs[&v] {
                match color.get(&w) {
                    Some(&cw) if cw == c => return None,
                    Some(_) => {}
                    None => {
                        color.insert(w, !c);
                        queue.push_back(w);
                    }
                }
            }
        }
        let ones = color.values().filter(|&&c| c).count();
        if color.len() == 6 && ones == 3 {
            return Some(KuratowskiKind::K33);
        }
    }
    None
}

impl MultiGraph {
    /// Decides planarity; the witness is an embedding or a Kuratowski subgraph.
    pub fn planarity(&self) -> PlanarityWitness {
        let n = self.vertex_count();
        let edges = simple_edges(self);
        match embed(n, &edges) {
            Some(rotation) => PlanarityWitness::Embedding(Embedding { rotation }),
            None => PlanarityWitness::Kuratowski(extract_kuratowski(n, edges)),
        }
    }

    pub fn is_planar(&self) -> bool {
        embed(self.vertex_count(), &simple_edges(self)).is_some()
    }
}

fn simple_edges(g: &MultiGraph) -> Vec<SimpleEdge> {
    let set: BTreeSet<SimpleEdge> = g
        .edges()
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    set.into_iter().collect()
}

fn extract_kuratowski(n: usize, mut edges: Vec<SimpleEdge>) -> KuratowskiWitness {
    let mut i = 0;
    while i < edges.len() {
        let mut trial = edges.clone();
        trial.remove(i);
        if embed(n, &trial).is_none() {
            edges = trial;
        } else {
            i += 1;
        }
    }
    let kind = classify_subdivision(&edges)
        .expect("edge-minimal non-planar graph is a Kuratowski subdivision");
    KuratowskiWitness { kind, edges }
}

/// Rotation system of the simple graph `(n, edges)`, or `None` when it is not planar.
fn embed(n: usize, edges: &[SimpleEdge]) -> Option<Vec<Vec<VertexId>>> {
    if n >= 3 && edges.len() > 3 * n - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for block in biconnected_blocks(n, edges) {
        let local = if block.len() == 1 {
            let (u, v) = block[0];
            vec![(u, vec![v]), (v, vec![u])]
        } else {
            embed_block(&block)?
        };
        // Blocks meet only at cut vertices; appending a block's cyclic order as one
        // contiguous run places the block inside a face at that vertex.
        for (v, order) in local {
            rotation[v].extend(order);
        }
    }
    Some(rotation)
}

/// Edge sets of the biconnected components.
fn biconnected_blocks(n: usize, edges: &[SimpleEdge]) -> Vec<Vec<SimpleEdge>> {
    let mut adj: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        // iterative DFS: (vertex, parent edge, next adjacency index)
        let mut dfs: Vec<(VertexId, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (v, parent_edge, ref mut next)) = dfs.last_mut() {
            if *next < adj[v].len() {
                let (w, e) = adj[v][*next];
                *next += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    dfs.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                dfs.pop();
                if let Some(&(u, _, _)) = dfs.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = stack.pop() {
                            block.push(edges[e]);
                            if e == parent_edge {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

struct Fragment {
    attachments: Vec<VertexId>,
    /// Non-embedded vertices; empty for a chord.
    interior: Vec<VertexId>,
}

/// Embeds a biconnected block with at least two edges. Returns the cyclic neighbour
/// order at each block vertex.
fn embed_block(block: &[SimpleEdge]) -> Option<Vec<(VertexId, Vec<VertexId>)>> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(u, v) in block {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let key = |u: VertexId, v: VertexId| (u.min(v), u.max(v));

    let mut embedded_vertex: HashSet<VertexId> = HashSet::new();
    let mut embedded_edge: HashSet<SimpleEdge> = HashSet::new();

    // Initial cycle through the first edge.
    let (s, t) = block[0];
    let cycle = {
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut queue = VecDeque::from([s]);
        parent.insert(s, s);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &w in &adj[&v] {
                if (v == s && w == t) || parent.contains_key(&w) {
                    continue;
                }
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
        let mut path = vec![t];
        let mut v = t;
        while v != s {
            v = *parent.get(&v)?;
            path.push(v);
        }
        path
    };
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded_vertex.insert(u);
        embedded_edge.insert(key(u, v));
    }
    let mut faces: Vec<Vec<VertexId>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    loop {
        let fragments = find_fragments(&adj, block, &embedded_vertex, &embedded_edge);
        if fragments.is_empty() {
            break;
        }
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|frag| {
                (0..faces.len())
                    .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                    .collect()
            })
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return None;
        }
        let chosen = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let face_index = admissible[chosen][0];
        let frag = &fragments[chosen];
        let path = fragment_path(&adj, frag);
        for w in path.windows(2) {
            embedded_edge.insert(key(w[0], w[1]));
        }
        embedded_vertex.extend(path.iter().copied());

        let face = faces.swap_remove(face_index);
        let (first, second) = split_face(&face, &path);
        faces.push(first);
        faces.push(second);
    }

    // Oriented faces give the rotation: arriving at v from u, the face leaves towards w.
    let mut successor: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new();
    for face in &faces {
        let len = face.len();
        for i in 0..len {
            let u = face[(i + len - 1) % len];
            let v = face[i];
            let w = face[(i + 1) % len];
            successor.insert((v, u), w);
        }
    }
    let mut out = Vec::with_capacity(adj.len());
    for (&v, nbrs) in &adj {
        let start = nbrs[0];
        let mut order = vec![start];
        let mut cur = start;
        loop {
            cur = *successor.get(&(v, cur))?;
            if cur == start {
                break;
            }
            order.push(cur);
        }
        if order.len() != nbrs.len() {
            return None;
        }
        out.push((v, order));
    }
    Some(out)
}

fn find_fragments(
    adj: &BTreeMap<VertexId, Vec<VertexId>>,
    block: &[SimpleEdge],
    embedded_vertex: &HashSet<VertexId>,
    embedded_edge: &HashSet<SimpleEdge>,
) -> Vec<Fragment> {
    let mut fragments = Vec::new();
    for &(u, v) in block {
        if embedded_vertex.contains(&u)
            && embedded_vertex.contains(&v)
            && !embedded_edge.contains(&(u.min(v), u.max(v)))
        {
            fragments.push(Fragment {
                attachments: vec![u, v],
                interior: Vec::new(),
            });
        }
    }
    let mut visited: HashSet<VertexId> = HashSet::new();
    for &start in adj.keys() {
        if embedded_vertex.contains(&start) || visited.contains(&start) {
            continue;
        }
        let mut interior = Vec::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        visited.insert(start);
        while let Some(v) = queue.pop_front() {
            interior.push(v);
            for &w in &adj[&v] {
                if embedded_vertex.contains(&w) {
                    attachments.insert(w);
                } else if visited.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        fragments.push(Fragment {
            attachments: attachments.into_iter().collect(),
            interior,
        });
    }
    fragments
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &BTreeMap<VertexId, Vec<VertexId>>, frag: &Fragment) -> Vec<VertexId> {
    if frag.interior.is_empty() {
        return frag.attachments.clone();
    }
    let inside: HashSet<VertexId> = frag.interior.iter().copied().collect();
    let a = frag.attachments[0];
    let targets: HashSet<VertexId> = frag.attachments[1..].iter().copied().collect();
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &w in &adj[&a] {
        if inside.contains(&w) && !parent.contains_key(&w) {
            parent.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if targets.contains(&w) {
                let mut path = vec![w, v];
                let mut cur = v;
                while parent[&cur] != a {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if inside.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("a fragment of a biconnected block has two attachments joined through it")
}

/// Splits an oriented face along `path` (which runs between two of its vertices),
/// keeping both halves oriented consistently with the rest of the embedding.
fn split_face(face: &[VertexId], path: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
    let len = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let interior = &path[1..path.len() - 1];

    // a → (along face) → b, then back to a through the path reversed
    let mut first = Vec::new();
    let mut k = i;
    loop {
        first.push(face[k]);
        if k == j {
            break;
        }
        k = (k + 1) % len;
    }
    first.extend(interior.iter().rev());

    // b → (along face) → a, then forward through the path
    let mut second = Vec::new();
    let mut k = j;
    loop {
        second.push(face[k]);
        if k == i {
            break;
        }
        k = (k + 1) % len;
    }
    second.extend(interior.iter());
    (first, second)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &MultiGraph, planar: bool) {
        let witness = g.planarity();
        assert_eq!(witness.is_planar(), planar);
        assert_eq!(g.is_planar(), planar);
        assert!(witness.verify(g), "{witness:?}");
    }

    #[test]
    fn small_planar_graphs() {
        check(&MultiGraph::complete(4), true);
        check(&MultiGraph::cycle(5), true);
        check(&MultiGraph::path(4), true);
        check(&MultiGraph::with_vertex_count(3), true);
        check(&MultiGraph::complete_bipartite(2, 5), true);
    }

    #[test]
    fn kuratowski_graphs() {
        let k33 = MultiGraph::complete_bipartite(3, 3);
        let w = k33.planarity();
        let k = w.kuratowski().unwrap();
        assert_eq!(k.kind, KuratowskiKind::K33);
        assert_eq!(k.edges.len(), 9);
        assert!(k.verify(&k33));
        check(&MultiGraph::complete(5), false);
        check(&MultiGraph::complete(6), false);
    }

    #[test]
    fn petersen_graph_is_non_planar() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = MultiGraph::from_edges(10, &edges).unwrap();
        let w = g.planarity();
        assert!(!w.is_planar());
        assert!(w.verify(&g));
    }

    #[test]
    fn parallel_edges_do_not_matter() {
        let g =
            MultiGraph::from_edges(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2)])
                .unwrap();
        check(&g, true);
    }

    #[test]
    fn graphs_with_cut_vertices() {
        // two K4s sharing vertex 0, plus a pendant path
        let mut edges = Vec::new();
        for quad in [[0, 1, 2, 3], [0, 4, 5, 6]] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((quad[i], quad[j]));
                }
            }
        }
        edges.extend([(6, 7), (7, 8)]);
        let g = MultiGraph::from_edges(9, &edges).unwrap();
        check(&g, true);
    }

    #[test]
    fn subdivided_k33_inside_a_larger_graph() {
        let mut edges: Vec<SimpleEdge> = Vec::new();
        // K33 on 0..6 with edge 0-3 subdivided through 6
        for u in 0..3 {
            for v in 3..6 {
                if (u, v) != (0, 3) {
                    edges.push((u, v));
                }
            }
        }
        edges.extend([(0, 6), (6, 3), (6, 7), (7, 8), (8, 1)]);
        let g = MultiGraph::from_edges(9, &edges).unwrap();
        check(&g, false);
    }

    #[test]
    fn tampered_witnesses_fail() {
        let k33 = MultiGraph::complete_bipartite(3, 3);
        let PlanarityWitness::Kuratowski(mut k) = k33.planarity() else {
            panic!()
        };
        k.edges.pop();
        assert!(!k.verify(&k33));

        let k4 = MultiGraph::complete(4);
        let PlanarityWitness::Embedding(mut e) = k4.planarity() else {
            panic!()
        };
        e.rotation[0].swap(0, 1);
        assert!(!e.verify(&k4));
    }

    #[test]
    fn classification() {
        let k5: Vec<SimpleEdge> = MultiGraph::complete(5).edges().to_vec();
        assert_eq!(classify_subdivision(&k5), Some(KuratowskiKind::K5));
        let c4: Vec<SimpleEdge> = MultiGraph::cycle(4).edges().to_vec();
        assert_eq!(classify_subdivision(&c4), None);
    }
}
