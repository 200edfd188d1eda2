//! Slow, independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the algorithms under test besides the graph container.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wgeo_core::MultiGraph;

/// Minimum number of edges crossing a proper vertex bipartition; 0 when disconnected.
pub fn brute_force_edge_connectivity(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    assert!((2..=16).contains(&n));
    // Vertex 0 always sits on the first side.
    (0u32..1 << (n - 1))
        .map(|mask| (mask << 1) | 1)
        .filter(|&side| side != (1 << n) - 1)
        .map(|side| {
            g.edges()
                .iter()
                .filter(|&&(u, v)| (side >> u & 1) != (side >> v & 1))
                .count()
        })
        .min()
        .unwrap()
}

/// A random loop-free multigraph on at most `max_vertices` vertices and `max_edges` edges.
pub fn random_multigraph(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_edges: usize,
) -> MultiGraph {
    let n = rng.gen_range(2..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let mut g = MultiGraph::with_vertex_count(n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        g.add_edge(u, v).unwrap();
    }
    g
}

/// A connected random multigraph: a random spanning tree plus extra edges.
pub fn random_connected_multigraph(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_edges: usize,
) -> MultiGraph {
    let n = rng.gen_range(2..=max_vertices);
    let m = rng.gen_range(n - 1..=max_edges.max(n - 1));
    let mut g = MultiGraph::with_vertex_count(n);
    for v in 1..n {
        g.add_edge(rng.gen_range(0..v), v).unwrap();
    }
    for _ in n - 1..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        g.add_edge(u, v).unwrap();
    }
    g
}

/// A random simple graph with `n` vertices and edge probability `p`.
pub fn random_simple_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> MultiGraph {
    let mut g = MultiGraph::with_vertex_count(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// Planarity by exhaustive search for subdivisions of K5 and K3,3.

struct Subdivision {
    adj: Vec<Vec<usize>>,
    used: Vec<bool>,
}

impl Subdivision {
    fn new(g: &MultiGraph) -> Self {
        Self {
            adj: g.simple_adjacency(),
            used: vec![false; g.vertex_count()],
        }
    }

    /// Internally disjoint paths joining every listed pair of branch vertices.
    fn route(
        &mut self,
        pairs: &[(usize, usize)],
        used_edges: &mut BTreeSet<(usize, usize)>,
    ) -> bool {
        let Some((&(x, y), rest)) = pairs.split_first() else {
            return true;
        };
        let mut path = vec![x];
        self.extend(&mut path, y, rest, used_edges)
    }

    fn extend(
        &mut self,
        path: &mut Vec<usize>,
        target: usize,
        rest: &[(usize, usize)],
        used_edges: &mut BTreeSet<(usize, usize)>,
    ) -> bool {
        let last = *path.last().unwrap();
        let nbrs = self.adj[last].clone();
        for w in nbrs {
            if w == target {
                let key = (last.min(w), last.max(w));
                if used_edges.contains(&key) {
                    continue;
                }
                used_edges.insert(key);
                if self.route(rest, used_edges) {
                    return true;
                }
                used_edges.remove(&key);
            } else if !self.used[w] {
                self.used[w] = true;
                path.push(w);
                if self.extend(path, target, rest, used_edges) {
                    return true;
                }
                path.pop();
                self.used[w] = false;
            }
        }
        false
    }

    fn try_branches(&mut self, branch: &[usize], pairs: &[(usize, usize)]) -> bool {
        for &b in branch {
            self.used[b] = true;
        }
        let mapped: Vec<(usize, usize)> =
            pairs.iter().map(|&(i, j)| (branch[i], branch[j])).collect();
        // A pair without a direct edge needs at least one interior vertex.
        let indirect = mapped
            .iter()
            .filter(|&&(x, y)| !self.adj[x].contains(&y))
            .count();
        let free = self.used.iter().filter(|&&u| !u).count();
        let found = indirect <= free && self.route(&mapped, &mut BTreeSet::new());
        for &b in branch {
            self.used[b] = false;
        }
        found
    }
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = subsets(&items[1..], k - 1);
    for s in &mut out {
        s.insert(0, items[0]);
    }
    out.extend(subsets(&items[1..], k));
    out
}

pub fn has_kuratowski_subdivision(g: &MultiGraph) -> bool {
    let mut search = Subdivision::new(g);
    let degree: Vec<usize> = search.adj.iter().map(Vec::len).collect();
    let n = g.vertex_count();

    let k5_pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let heavy: Vec<usize> = (0..n).filter(|&v| degree[v] >= 4).collect();
    for branch in subsets(&heavy, 5) {
        if search.try_branches(&branch, &k5_pairs) {
            return true;
        }
    }

    let k33_pairs: Vec<(usize, usize)> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
    let cubic: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
    for six in subsets(&cubic, 6) {
        // The side containing six[0] is six[0] plus two of the other five.
        for pair in subsets(&six[1..], 2) {
            let side = [six[0], pair[0], pair[1]];
            let mut branch = side.to_vec();
            branch.extend(six.iter().copied().filter(|v| !side.contains(v)));
            if search.try_branches(&branch, &k33_pairs) {
                return true;
            }
        }
    }
    false
}

pub fn oracle_is_planar(g: &MultiGraph) -> bool {
    let simple_edges: usize = g.simple_adjacency().iter().map(Vec::len).sum::<usize>() / 2;
    let n = g.vertex_count();
    if n >= 3 && simple_edges > 3 * n - 6 {
        return false;
    }
    !has_kuratowski_subdivision(g)
}

// Rank-2 cyclic words as signed integers: 1 = a, -1 = A, 2 = b, -2 = B.

pub type Letters = Vec<i8>;

fn reduce(word: impl IntoIterator<Item = i8>) -> Letters {
    let mut out: Letters = Vec::new();
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    while out.len() >= 2 && out[0] == -out[out.len() - 1] {
        out.remove(0);
        out.pop();
    }
    out
}

fn order(l: i8) -> i8 {
    // a < A < b < B
    2 * (l.abs() - 1) + i8::from(l < 0)
}

pub fn canonical(word: &[i8]) -> Letters {
    let n = word.len();
    (0..n)
        .map(|s| (0..n).map(|i| word[(s + i) % n]).collect::<Letters>())
        .min_by(|x, y| x.iter().map(|&l| order(l)).cmp(y.iter().map(|&l| order(l))))
        .unwrap_or_default()
}

/// Canonical cyclically reduced rank-2 words of length `1..=max_len`.
pub fn cyclic_words(max_len: usize) -> Vec<Letters> {
    let mut out = Vec::new();
    let mut stack: Vec<Letters> = [1, -1, 2, -2].into_iter().map(|l| vec![l]).collect();
    while let Some(w) = stack.pop() {
        let cyclic = w.len() == 1 || w[0] != -w[w.len() - 1];
        if cyclic && canonical(&w) == w {
            out.push(w.clone());
        }
        if w.len() < max_len {
            for l in [1i8, -1, 2, -2] {
                if *w.last().unwrap() != -l {
                    let mut next = w.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
    }
    out.sort_by_key(|w| (w.len(), w.iter().map(|&l| order(l)).collect::<Vec<_>>()));
    out
}

pub fn to_text(word: &[i8]) -> String {
    word.iter()
        .map(|&l| match l {
            1 => 'a',
            -1 => 'A',
            2 => 'b',
            -2 => 'B',
            _ => unreachable!(),
        })
        .collect()
}

/// Images of a and b under the elementary Nielsen moves of F2.
fn nielsen_moves() -> Vec<[Letters; 2]> {
    vec![
        [vec![-1], vec![2]],
        [vec![1], vec![-2]],
        [vec![2], vec![1]],
        [vec![1, 2], vec![2]],
        [vec![2, 1], vec![2]],
        [vec![1], vec![2, 1]],
        [vec![1], vec![1, 2]],
    ]
}

fn substitute(word: &[i8], images: &[Letters; 2]) -> Letters {
    reduce(word.iter().flat_map(|&l| {
        let img = &images[(l.abs() - 1) as usize];
        if l > 0 {
            img.clone()
        } else {
            img.iter().rev().map(|x| -x).collect()
        }
    }))
}

/// Automorphism-orbit minimum of every cyclic word of length at most `max_len`, found by
/// joining words connected by Nielsen moves without ever exceeding `ceiling` letters.
pub struct OrbitMinima {
    minimum: HashMap<Letters, usize>,
}

impl OrbitMinima {
    pub fn new(ceiling: usize) -> Self {
        let words = cyclic_words(ceiling);
        let index: HashMap<Letters, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut parent: Vec<usize> = (0..words.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let moves = nielsen_moves();
        for (i, w) in words.iter().enumerate() {
            for images in &moves {
                let image = substitute(w, images);
                if image.is_empty() || image.len() > ceiling {
                    continue;
                }
                let j = index[&canonical(&image)];
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
        let mut root_min: HashMap<usize, usize> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            let r = find(&mut parent, i);
            let e = root_min.entry(r).or_insert(usize::MAX);
            *e = (*e).min(w.len());
        }
        let minimum = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), root_min[&find(&mut parent, i)]))
            .collect();
        Self { minimum }
    }

    pub fn of(&self, word: &[i8]) -> usize {
        self.minimum[&canonical(word)]
    }
}
