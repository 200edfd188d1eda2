//! Minor containment for small patterns.
//!
//! A budgeted fast path first tries models whose branch sets are single vertices except
//! for one, which covers a pattern glued onto a large connected piece. Otherwise the full
//! search runs.
//!
//! The search grows one branch set per pattern vertex. Each step takes an
//! unsatisfied pattern edge and routes an induced path of unused host vertices from
//! one branch set towards the other, handing a prefix of the path to the first set and
//! the rest to the second (or seeding a new branch set with the last vertex). Every
//! model can be reached this way, so exhausting the search proves absence.

use std::collections::{HashSet, VecDeque};

use super::{GraphError, MultiGraph, VertexId};

pub const MAX_MINOR_PATTERN_VERTICES: usize = 8;
pub const MAX_MINOR_HOST_VERTICES: usize = 32;

/// Failed assignments remembered during one search.
const MEMO_LIMIT: usize = 1 << 22;

/// `branch_sets[p]` is the connected host vertex set that contracts onto pattern vertex `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<VertexId>>,
}

impl MinorModel {
    /// Disjoint, nonempty, connected branch sets with at least as many host edges
    /// between two sets as the pattern has between the corresponding vertices.
    pub fn verify(&self, host: &MultiGraph, pattern: &MultiGraph) -> bool {
        if self.branch_sets.len() != pattern.vertex_count() {
            return false;
        }
        let mut owner = vec![usize::MAX; host.vertex_count()];
        for (p, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return false;
            }
            for &v in set {
                match owner.get_mut(v) {
                    Some(o) if *o == usize::MAX => *o = p,
                    _ => return false,
                }
            }
        }
        for (p, set) in self.branch_sets.iter().enumerate() {
            let mut seen = vec![false; host.vertex_count()];
            let mut queue = VecDeque::from([set[0]]);
            seen[set[0]] = true;
            let mut reached = 1;
            while let Some(v) = queue.pop_front() {
                for &e in host.incident_edges(v) {
                    let w = host.opposite(e, v);
                    if owner[w] == p && !seen[w] {
                        seen[w] = true;
                        reached += 1;
                        queue.push_back(w);
                    }
                }
            }
            if reached != set.len() {
                return false;
            }
        }
        let k = pattern.vertex_count();
        let mut between = vec![vec![0usize; k]; k];
        for &(u, v) in host.edges() {
            let (a, b) = (owner[u], owner[v]);
            if a != usize::MAX && b != usize::MAX && a != b {
                between[a][b] += 1;
                between[b][a] += 1;
            }
        }
        let mut needed = vec![vec![0usize; k]; k];
        for &(p, q) in pattern.edges() {
            needed[p][q] += 1;
            needed[q][p] += 1;
        }
        (0..k).all(|p| (0..k).all(|q| between[p][q] >= needed[p][q]))
    }
}

impl MultiGraph {
    /// Whether `pattern` is a minor of `self`, counting edge multiplicities.
    pub fn contains_minor(&self, pattern: &MultiGraph) -> Result<Option<MinorModel>, GraphError> {
        if pattern.vertex_count() > MAX_MINOR_PATTERN_VERTICES {
            return Err(GraphError::PatternTooLarge {
                size: pattern.vertex_count(),
                limit: MAX_MINOR_PATTERN_VERTICES,
            });
        }
        if self.vertex_count() > MAX_MINOR_HOST_VERTICES {
            return Err(GraphError::HostTooLarge {
                size: self.vertex_count(),
                limit: MAX_MINOR_HOST_VERTICES,
            });
        }
        if pattern.vertex_count() > self.vertex_count() || pattern.edge_count() > self.edge_count()
        {
            return Ok(None);
        }
        if let Some(model) = near_singleton_model(self, pattern) {
            return Ok(Some(model));
        }
        let mut search = Search::new(self, pattern);
        Ok(search.run().then_some(MinorModel {
            branch_sets: search.sets,
        }))
    }
}

/// Embedding attempts allowed per excluded pattern vertex in the fast path.
const NEAR_SINGLETON_BUDGET: usize = 20_000;

/// Looks for a model in which every branch set but one is a single host vertex: the
/// pattern minus `p` embeds as a subgraph and one leftover component serves as `p`.
/// Budgeted, so a miss says nothing and the full search runs next.
fn near_singleton_model(host: &MultiGraph, pattern: &MultiGraph) -> Option<MinorModel> {
    let k = pattern.vertex_count();
    if k == 0 || k > host.vertex_count() {
        return None;
    }
    let n = host.vertex_count();
    let mut hm = vec![vec![0usize; n]; n];
    for &(u, v) in host.edges() {
        hm[u][v] += 1;
        hm[v][u] += 1;
    }
    let mut pm = vec![vec![0usize; k]; k];
    for &(a, b) in pattern.edges() {
        pm[a][b] += 1;
        pm[b][a] += 1;
    }
    let host_degree = host.valences();
    let pattern_degree = pattern.valences();
    let mut excluded: Vec<usize> = (0..k).collect();
    excluded.sort_by_key(|&p| std::cmp::Reverse(pattern_degree[p]));
    for p in excluded {
        // Place the rest most-connected first so constraints bite early.
        let mut order: Vec<usize> = Vec::new();
        let mut rest: Vec<usize> = (0..k).filter(|&q| q != p).collect();
        while !rest.is_empty() {
            let best = (0..rest.len())
                .max_by_key(|&i| {
                    let q = rest[i];
                    let links: usize = order.iter().map(|&o| pm[q][o]).sum();
                    (links, pattern_degree[q])
                })
                .unwrap();
            order.push(rest.swap_remove(best));
        }
        let mut embed = Embed {
            hm: &hm,
            pm: &pm,
            host,
            host_degree: &host_degree,
            pattern_degree: &pattern_degree,
            order: &order,
            image: vec![usize::MAX; k],
            used: vec![false; n],
            excluded: p,
            budget: NEAR_SINGLETON_BUDGET,
            found: None,
        };
        embed.extend(0);
        if let Some(model) = embed.found {
            return Some(model);
        }
    }
    None
}

struct Embed<'a> {
    hm: &'a [Vec<usize>],
    pm: &'a [Vec<usize>],
    host: &'a MultiGraph,
    host_degree: &'a [usize],
    pattern_degree: &'a [usize],
    order: &'a [usize],
    image: Vec<VertexId>,
    used: Vec<bool>,
    excluded: usize,
    budget: usize,
    found: Option<MinorModel>,
}

impl Embed<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        if depth == self.order.len() {
            return self.close();
        }
        let q = self.order[depth];
        for v in 0..self.used.len() {
            if self.used[v]
                || self.host_degree[v] < self.pattern_degree[q] - self.pm[q][self.excluded]
            {
                continue;
            }
            let fits = self.order[..depth]
                .iter()
                .all(|&o| self.hm[v][self.image[o]] >= self.pm[q][o]);
            if !fits {
                continue;
            }
            self.image[q] = v;
            self.used[v] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[v] = false;
            self.image[q] = usize::MAX;
            if self.budget == 0 {
                return false;
            }
        }
        false
    }

    /// Tries each component of the unused host vertices as the excluded branch set.
    fn close(&mut self) -> bool {
        let p = self.excluded;
        let mut seen = self.used.clone();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &e in self.host.incident_edges(v) {
                    let w = self.host.opposite(e, v);
                    if !seen[w] {
                        seen[w] = true;
                        members.push(w);
                    }
                }
            }
            let fits = self.order.iter().all(|&q| {
                let w = self.image[q];
                members.iter().map(|&v| self.hm[v][w]).sum::<usize>() >= self.pm[p][q]
            });
            if fits {
                let mut branch_sets: Vec<Vec<VertexId>> =
                    self.image.iter().map(|&v| vec![v]).collect();
                branch_sets[p] = members;
                self.found = Some(MinorModel { branch_sets });
                return true;
            }
        }
        false
    }
}

#[derive(Clone, Copy)]
enum Goal {
    /// Add a crossing between two placed branch sets.
    Connect(usize),
    /// Seed the unplaced pattern vertex at the end of the path.
    Seed(usize),
}

struct Search {
    adj: Vec<Vec<VertexId>>,
    mult: Vec<Vec<usize>>,
    host_degree: Vec<usize>,
    /// (p, q, multiplicity) with p < q.
    demands: Vec<(usize, usize, usize)>,
    pattern_degree: Vec<usize>,
    owner: Vec<Option<usize>>,
    sets: Vec<Vec<VertexId>>,
    unused: usize,
    failed: HashSet<Vec<u8>>,
}

impl Search {
    fn new(host: &MultiGraph, pattern: &MultiGraph) -> Self {
        let n = host.vertex_count();
        let mut mult = vec![vec![0; n]; n];
        for &(u, v) in host.edges() {
            mult[u][v] += 1;
            mult[v][u] += 1;
        }
        let k = pattern.vertex_count();
        let mut pm = vec![vec![0; k]; k];
        for &(p, q) in pattern.edges() {
            pm[p][q] += 1;
            pm[q][p] += 1;
        }
        let demands = (0..k)
            .flat_map(|p| (p + 1..k).map(move |q| (p, q)))
            .filter(|&(p, q)| pm[p][q] > 0)
            .map(|(p, q)| (p, q, pm[p][q]))
            .collect();
        Search {
            adj: host.simple_adjacency(),
            mult,
            host_degree: host.valences(),
            demands,
            pattern_degree: pattern.valences(),
            owner: vec![None; n],
            sets: vec![Vec::new(); k],
            unused: n,
            failed: HashSet::new(),
        }
    }

    fn assign(&mut self, v: VertexId, p: usize) {
        debug_assert!(self.owner[v].is_none());
        self.owner[v] = Some(p);
        self.sets[p].push(v);
        self.unused -= 1;
    }

    fn unassign(&mut self, v: VertexId, p: usize) {
        let popped = self.sets[p].pop();
        debug_assert_eq!(popped, Some(v));
        self.owner[v] = None;
        self.unused += 1;
    }

    /// Unplaced pattern vertices with many placed neighbours are the most constrained.
    fn priority(&self, p: usize) -> (usize, usize) {
        let links = self
            .demands
            .iter()
            .filter(|&&(a, b, _)| {
                (a == p && !self.sets[b].is_empty()) || (b == p && !self.sets[a].is_empty())
            })
            .map(|&(_, _, m)| m)
            .sum();
        (self.pattern_degree[p], links)
    }

    fn crossing(&self, p: usize, q: usize) -> usize {
        self.sets[p]
            .iter()
            .map(|&v| self.sets[q].iter().map(|&w| self.mult[v][w]).sum::<usize>())
            .sum()
    }

    fn touches(&self, v: VertexId, p: usize) -> bool {
        self.sets[p].iter().any(|&w| self.mult[v][w] > 0)
    }

    fn free_neighbours(&self, p: usize) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.sets[p]
            .iter()
            .flat_map(|&v| self.adj[v].iter().copied())
            .filter(|&w| self.owner[w].is_none())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Can `B_p` still reach `B_q` through unused vertices?
    fn reachable(&self, p: usize, q: usize) -> bool {
        let mut seen = vec![false; self.adj.len()];
        let mut queue: VecDeque<VertexId> = self.free_neighbours(p).into();
        for &v in &queue {
            seen[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            if self.touches(v, q) {
                return true;
            }
            for &w in &self.adj[v] {
                if self.owner[w].is_none() && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }

    fn run(&mut self) -> bool {
        // The remaining search depends only on the current assignment, so an assignment
        // that failed once fails again.
        let key: Vec<u8> = self
            .owner
            .iter()
            .map(|o| o.map_or(u8::MAX, |p| p as u8))
            .collect();
        if self.failed.contains(&key) {
            return false;
        }
        let found = self.step();
        if !found && self.failed.len() < MEMO_LIMIT {
            self.failed.insert(key);
        }
        found
    }

    fn step(&mut self) -> bool {
        let unplaced: Vec<usize> = (0..self.sets.len())
            .filter(|&p| self.sets[p].is_empty())
            .collect();
        if unplaced.len() > self.unused {
            return false;
        }
        let mut connect = None;
        let mut seed: Option<(usize, usize)> = None;
        let mut fresh = None;
        for &(p, q, m) in &self.demands {
            match (self.sets[p].is_empty(), self.sets[q].is_empty()) {
                (false, false) => {
                    if self.crossing(p, q) < m {
                        if !self.reachable(p, q) {
                            return false;
                        }
                        connect.get_or_insert((p, q));
                    }
                }
                (false, true) | (true, false) => {
                    let (placed, new) = if self.sets[p].is_empty() {
                        (q, p)
                    } else {
                        (p, q)
                    };
                    if self.free_neighbours(placed).is_empty() {
                        return false;
                    }
                    let better =
                        seed.is_none_or(|(_, cur)| self.priority(new) > self.priority(cur));
                    if better {
                        seed = Some((placed, new));
                    }
                }
                (true, true) => {
                    let pick = if self.pattern_degree[p] >= self.pattern_degree[q] {
                        p
                    } else {
                        q
                    };
                    let better = fresh.is_none_or(|cur: usize| {
                        self.pattern_degree[pick] > self.pattern_degree[cur]
                    });
                    if better {
                        fresh = Some(pick);
                    }
                }
            }
        }
        if let Some((p, q)) = connect {
            return self.route(p, Goal::Connect(q));
        }
        if let Some((p, q)) = seed {
            return self.route(p, Goal::Seed(q));
        }
        if let Some(p) = fresh {
            let mut roots: Vec<VertexId> = (0..self.adj.len())
                .filter(|&v| self.owner[v].is_none())
                .collect();
            roots.sort_by_key(|&v| std::cmp::Reverse(self.host_degree[v]));
            for r in roots {
                self.assign(r, p);
                if self.run() {
                    return true;
                }
                self.unassign(r, p);
            }
            return false;
        }
        // Only isolated pattern vertices remain.
        let free: Vec<VertexId> = (0..self.adj.len())
            .filter(|&v| self.owner[v].is_none())
            .collect();
        for (&p, &v) in unplaced.iter().zip(&free) {
            self.assign(v, p);
        }
        true
    }

    fn route(&mut self, p: usize, goal: Goal) -> bool {
        let starts = self.free_neighbours(p);
        let budget = self.unused;
        let mut path = Vec::new();
        for len in 1..=budget {
            for &s in &starts {
                path.push(s);
                if self.walk(&mut path, len, p, goal) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }

    /// Extends an induced path of unused vertices whose only vertex touching `B_p` is
    /// the first one.
    fn walk(&mut self, path: &mut Vec<VertexId>, len: usize, p: usize, goal: Goal) -> bool {
        let last = *path.last().unwrap();
        let at_target = match goal {
            Goal::Connect(q) => self.touches(last, q),
            Goal::Seed(_) => false,
        };
        if path.len() == len {
            return match goal {
                Goal::Connect(q) => at_target && self.split(path, p, q),
                Goal::Seed(q) => self.seed(path, p, q),
            };
        }
        if at_target {
            return false;
        }
        let candidates: Vec<VertexId> = self.adj[last]
            .iter()
            .copied()
            .filter(|&w| {
                self.owner[w].is_none()
                    && !path.contains(&w)
                    && !self.touches(w, p)
                    && path[..path.len() - 1].iter().all(|&x| self.mult[x][w] == 0)
            })
            .collect();
        for w in candidates {
            path.push(w);
            if self.walk(path, len, p, goal) {
                return true;
            }
            path.pop();
        }
        false
    }

    fn split(&mut self, path: &[VertexId], p: usize, q: usize) -> bool {
        for cut in 0..=path.len() {
            for (i, &v) in path.iter().enumerate() {
                self.assign(v, if i < cut { p } else { q });
            }
            if self.run() {
                return true;
            }
            for (i, &v) in path.iter().enumerate().rev() {
                self.unassign(v, if i < cut { p } else { q });
            }
        }
        false
    }

    fn seed(&mut self, path: &[VertexId], p: usize, q: usize) -> bool {
        let (root, prefix) = path.split_last().unwrap();
        for &v in prefix {
            self.assign(v, p);
        }
        self.assign(*root, q);
        if self.run() {
            return true;
        }
        self.unassign(*root, q);
        for &v in prefix.iter().rev() {
            self.unassign(v, p);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_minor(host: &MultiGraph, pattern: &MultiGraph) -> bool {
        match host.contains_minor(pattern).unwrap() {
            Some(model) => {
                assert!(model.verify(host, pattern), "{model:?}");
                true
            }
            None => false,
        }
    }

    #[test]
    fn cycle_minors() {
        assert!(has_minor(&MultiGraph::cycle(6), &MultiGraph::cycle(4)));
        assert!(!has_minor(&MultiGraph::cycle(4), &MultiGraph::cycle(6)));
        assert!(!has_minor(&MultiGraph::path(6), &MultiGraph::cycle(3)));
    }

    #[test]
    fn k4_has_no_k5_minor() {
        assert!(!has_minor(
            &MultiGraph::complete(4),
            &MultiGraph::complete(5)
        ));
    }

    #[test]
    fn planar_graphs_avoid_k5_and_k33() {
        // 4x4 grid, 16 vertices
        let mut edges = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                let v = r * 4 + c;
                if c < 3 {
                    edges.push((v, v + 1));
                }
                if r < 3 {
                    edges.push((v, v + 4));
                }
            }
        }
        let grid = MultiGraph::from_edges(16, &edges).unwrap();
        assert!(!has_minor(&grid, &MultiGraph::complete_bipartite(3, 3)));
        assert!(has_minor(&grid, &MultiGraph::complete(4)));
    }

    #[test]
    fn petersen_has_k5_and_k33_minors() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = MultiGraph::from_edges(10, &edges).unwrap();
        assert!(has_minor(&g, &MultiGraph::complete(5)));
        assert!(has_minor(&g, &MultiGraph::complete_bipartite(3, 3)));
    }

    #[test]
    fn multiplicity_matters() {
        let double = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(has_minor(&MultiGraph::cycle(3), &double));
        assert!(!has_minor(&MultiGraph::path(3), &double));
    }

    #[test]
    fn isolated_pattern_vertices() {
        let pattern = MultiGraph::with_vertex_count(3);
        assert!(has_minor(&MultiGraph::path(3), &pattern));
        assert!(!has_minor(&MultiGraph::path(2), &pattern));
    }

    #[test]
    fn caps_are_enforced() {
        let big = MultiGraph::cycle(9);
        assert!(matches!(
            MultiGraph::cycle(12).contains_minor(&big),
            Err(GraphError::PatternTooLarge { size: 9, .. })
        ));
        assert!(matches!(
            MultiGraph::cycle(40).contains_minor(&MultiGraph::cycle(3)),
            Err(GraphError::HostTooLarge { size: 40, .. })
        ));
    }
}
