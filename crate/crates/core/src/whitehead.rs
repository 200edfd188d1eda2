//! Whitehead graphs, the cut test for reducibility, minimization and minimal orbits.

use std::collections::HashSet;

use thiserror::Error;

use crate::automorphism::{enumerate_whitehead_automorphisms, WhiteheadAutomorphism};
use crate::graph::{CutWitness, GraphError, MultiGraph, VertexId, VertexLabel};
use crate::word::{canonical_collection, total_length, Alphabet, CyclicWord, Letter, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhiteheadError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("word {word} uses generators beyond rank {rank}")]
    AlphabetMismatch { word: String, rank: usize },
    #[error("graph labels do not follow the x1..xn, X1..Xn layout")]
    MalformedLabels,
    #[error("collection is not minimal: {0} shortens it")]
    NotMinimal(String),
    #[error("orbit cap must be at least 1")]
    InvalidCap,
    #[error("cut does not separate the pair of generator {0}")]
    CutDoesNotSeparate(usize),
}

fn check_alphabet(ws: &[CyclicWord], alphabet: Alphabet) -> Result<(), WhiteheadError> {
    match ws.iter().find(|w| w.min_rank() > alphabet.rank()) {
        Some(w) => Err(WhiteheadError::AlphabetMismatch {
            word: w.to_string(),
            rank: alphabet.rank(),
        }),
        None => Ok(()),
    }
}

/// Vertex of letter `l` in a Whitehead graph of rank `n`.
pub fn letter_vertex(l: Letter, n: usize) -> VertexId {
    l.generator() + if l.is_inverse() { n } else { 0 }
}

/// Vertices `x1..xn` then `X1..Xn`; each cyclic pair `xy` adds the edge `x⁻¹–y`, and a
/// length-one word `x` adds `x⁻¹–x`. Edges appear in word order, then position order.
pub fn whitehead_graph(
    ws: &[CyclicWord],
    alphabet: Alphabet,
) -> Result<MultiGraph, WhiteheadError> {
    check_alphabet(ws, alphabet)?;
    let n = alphabet.rank();
    let labels = (0..n)
        .map(Letter::positive)
        .chain((0..n).map(Letter::negative))
        .map(VertexLabel::new);
    let mut g = MultiGraph::with_vertices(labels);
    for w in ws {
        if w.len() == 1 {
            let x = w.at(0);
            g.add_edge(letter_vertex(x.inverse(), n), letter_vertex(x, n))?;
            continue;
        }
        for i in 0..w.len() {
            let (x, y) = (w.at(i), w.at(i + 1));
            g.add_edge(letter_vertex(x.inverse(), n), letter_vertex(y, n))?;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReduciblePair {
    pub generator: usize,
    pub valence: usize,
    pub cut: CutWitness,
}

fn whitehead_rank(g: &MultiGraph) -> Result<usize, WhiteheadError> {
    let count = g.vertex_count();
    if count == 0 || count % 2 == 1 {
        return Err(WhiteheadError::MalformedLabels);
    }
    let n = count / 2;
    let ok = (0..n).all(|i| {
        g.label(i).letter == Letter::positive(i) && g.label(n + i).letter == Letter::negative(i)
    });
    if ok {
        Ok(n)
    } else {
        Err(WhiteheadError::MalformedLabels)
    }
}

/// The first generator `x` whose vertices `x`, `x⁻¹` are separated by fewer edges than
/// their valence. Unused generators are skipped.
pub fn reducible_pair(g: &MultiGraph) -> Result<Option<ReduciblePair>, WhiteheadError> {
    let n = whitehead_rank(g)?;
    for generator in 0..n {
        let valence = g.valence(generator)?;
        if valence == 0 {
            continue;
        }
        let (size, cut) = g.min_edge_cut(generator, n + generator)?;
        if size < valence {
            return Ok(Some(ReduciblePair {
                generator,
                valence,
                cut,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub words: Vec<CyclicWord>,
    pub steps: Vec<WhiteheadAutomorphism>,
}

/// Applies the first length-reducing automorphism in enumeration order until none
/// remains.
pub fn whitehead_reduce(
    ws: &[CyclicWord],
    alphabet: Alphabet,
) -> Result<Reduction, WhiteheadError> {
    if ws.is_empty() {
        return Err(WordError::EmptyCollection.into());
    }
    check_alphabet(ws, alphabet)?;
    let autos = enumerate_whitehead_automorphisms(alphabet);
    let mut words = ws.to_vec();
    let mut length = total_length(&words);
    let mut steps = Vec::new();
    'outer: loop {
        for phi in &autos {
            let image = phi.apply(&words)?;
            let l = total_length(&image);
            if l < length {
                words = image;
                length = l;
                steps.push(phi.clone());
                continue 'outer;
            }
        }
        return Ok(Reduction { words, steps });
    }
}

/// Lazy breadth-first walk over collections reachable by length-preserving moves.
///
/// Members are stored as produced (word order follows the parent); deduplication uses
/// the sorted collection.
#[derive(Debug, Clone)]
pub struct Orbit {
    autos: Vec<WhiteheadAutomorphism>,
    members: Vec<Vec<CyclicWord>>,
    parents: Vec<Option<(usize, usize)>>,
    seen: HashSet<Vec<CyclicWord>>,
    cursor: usize,
    cap: usize,
    length: usize,
    truncated: bool,
}

impl Orbit {
    /// Starts a walk at `ws`, which must be minimal.
    pub fn new(ws: &[CyclicWord], alphabet: Alphabet, cap: usize) -> Result<Self, WhiteheadError> {
        if cap < 1 {
            return Err(WhiteheadError::InvalidCap);
        }
        if ws.is_empty() {
            return Err(WordError::EmptyCollection.into());
        }
        check_alphabet(ws, alphabet)?;
        Ok(Self {
            autos: enumerate_whitehead_automorphisms(alphabet),
            members: vec![ws.to_vec()],
            parents: vec![None],
            seen: HashSet::from([canonical_collection(ws)]),
            cursor: 0,
            cap,
            length: total_length(ws),
            truncated: false,
        })
    }

    fn exhausted(&self) -> bool {
        self.cursor >= self.members.len() || self.truncated
    }

    fn expand_next(&mut self) -> Result<(), WhiteheadError> {
        let current = self.members[self.cursor].clone();
        let parent = self.cursor;
        self.cursor += 1;
        for (index, phi) in self.autos.iter().enumerate() {
            let image = phi.apply(&current)?;
            let l = total_length(&image);
            if l < self.length {
                return Err(WhiteheadError::NotMinimal(phi.to_string()));
            }
            if l > self.length {
                continue;
            }
            let key = canonical_collection(&image);
            if self.seen.contains(&key) {
                continue;
            }
            if self.members.len() >= self.cap {
                self.truncated = true;
                return Ok(());
            }
            self.seen.insert(key);
            self.members.push(image);
            self.parents.push(Some((parent, index)));
        }
        Ok(())
    }

    /// Member `i` in discovery order, expanding the walk as needed.
    pub fn member(&mut self, i: usize) -> Result<Option<&[CyclicWord]>, WhiteheadError> {
        while self.members.len() <= i && !self.exhausted() {
            self.expand_next()?;
        }
        Ok(self.members.get(i).map(Vec::as_slice))
    }

    /// Expands everything up to the cap.
    pub fn complete(&mut self) -> Result<(), WhiteheadError> {
        while !self.exhausted() {
            self.expand_next()?;
        }
        Ok(())
    }

    pub fn members(&self) -> &[Vec<CyclicWord>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Set once a new member was found with the cap already reached.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn contains(&self, ws: &[CyclicWord]) -> bool {
        self.seen.contains(&canonical_collection(ws))
    }

    /// Automorphisms which, applied in order to the start, produce member `i` exactly.
    pub fn path_to(&self, mut i: usize) -> Vec<WhiteheadAutomorphism> {
        let mut path = Vec::new();
        while let Some(Some((parent, index))) = self.parents.get(i) {
            path.push(self.autos[*index].clone());
            i = *parent;
        }
        path.reverse();
        path
    }
}

/// The full (capped) breadth-first closure of a minimal collection.
pub fn minimal_orbit(
    ws: &[CyclicWord],
    alphabet: Alphabet,
    cap: usize,
) -> Result<Orbit, WhiteheadError> {
    let mut orbit = Orbit::new(ws, alphabet, cap)?;
    orbit.complete()?;
    Ok(orbit)
}

/// Graph surgery realizing a reduction along `cut`.
///
/// Each cut edge is split into two halves, the one on the side of `x` ending at a new
/// vertex `w₊` and the other at `w₋`. The old pair `x`, `x⁻¹` now lies in different
/// components and is spliced away, pairing their edges in edge-id order. The new pair
/// takes over the ids and labels of the old one, so the result has
/// `edges − valence + cut size` edges.
pub fn graph_whitehead_move(
    g: &MultiGraph,
    generator: usize,
    cut: &CutWitness,
) -> Result<MultiGraph, WhiteheadError> {
    let n = whitehead_rank(g)?;
    if generator >= n {
        return Err(GraphError::UnknownVertex(generator).into());
    }
    let (plus, minus) = (generator, n + generator);
    let plus_on_source = cut.source_side.contains(&plus);
    let minus_on_source = cut.source_side.contains(&minus);
    let both_placed = (plus_on_source || cut.sink_side.contains(&plus))
        && (minus_on_source || cut.sink_side.contains(&minus));
    if !cut.verify(g) || !both_placed || plus_on_source == minus_on_source {
        return Err(WhiteheadError::CutDoesNotSeparate(generator));
    }
    let mut plus_side = vec![false; g.vertex_count()];
    let side = if plus_on_source {
        &cut.source_side
    } else {
        &cut.sink_side
    };
    for &v in side {
        plus_side[v] = true;
    }
    // Every vertex must sit on one side for the halves to be assigned.
    if cut.source_side.len() + cut.sink_side.len() != g.vertex_count() {
        return Err(WhiteheadError::CutDoesNotSeparate(generator));
    }

    let (new_plus, new_minus) = (g.vertex_count(), g.vertex_count() + 1);
    let mut in_cut = vec![false; g.edge_count()];
    for &e in &cut.edges {
        in_cut[e] = true;
    }
    let mut halves: Vec<(VertexId, VertexId)> = Vec::with_capacity(g.edge_count() + cut.size());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if in_cut[e] {
            let (x, y) = if plus_side[u] { (u, v) } else { (v, u) };
            halves.push((x, new_plus));
            halves.push((new_minus, y));
        } else {
            halves.push((u, v));
        }
    }
    let far = |v: VertexId| {
        move |&(a, b): &(VertexId, VertexId)| match (a == v, b == v) {
            (true, _) => Some(b),
            (_, true) => Some(a),
            _ => None,
        }
    };
    let plus_ends: Vec<VertexId> = halves.iter().filter_map(far(plus)).collect();
    let minus_ends: Vec<VertexId> = halves.iter().filter_map(far(minus)).collect();
    debug_assert_eq!(plus_ends.len(), minus_ends.len());

    let remap = |v: VertexId| match v {
        v if v == new_plus => plus,
        v if v == new_minus => minus,
        v => v,
    };
    let mut out = MultiGraph::with_vertices(g.labels().iter().copied());
    for &(a, b) in &halves {
        if a != plus && a != minus && b != plus && b != minus {
            out.add_edge(remap(a), remap(b))?;
        }
    }
    for (&a, &b) in plus_ends.iter().zip(&minus_ends) {
        out.add_edge(remap(a), remap(b))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_collection;

    fn words(text: &str, rank: usize) -> (Vec<CyclicWord>, Alphabet) {
        let alphabet = Alphabet::new(rank).unwrap();
        (parse_collection(text, alphabet).unwrap(), alphabet)
    }

    #[test]
    fn k33_example() {
        let (ws, alphabet) = words("bbaaccabc", 3);
        let g = whitehead_graph(&ws, alphabet).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert!(g
            .is_isomorphic(&MultiGraph::complete_bipartite(3, 3))
            .unwrap()
            .is_some());
        assert_eq!(reducible_pair(&g).unwrap(), None);
    }

    #[test]
    fn single_letter_word() {
        let (ws, alphabet) = words("a", 1);
        let g = whitehead_graph(&ws, alphabet).unwrap();
        assert_eq!(g.edges(), &[(1, 0)]);
    }

    #[test]
    fn commutator_is_a_four_cycle() {
        let (ws, alphabet) = words("abAB", 2);
        let g = whitehead_graph(&ws, alphabet).unwrap();
        assert!(g.is_isomorphic(&MultiGraph::cycle(4)).unwrap().is_some());
        // a–b–A–B–a
        for (x, y) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            assert_eq!(g.multiplicity(x, y), 1);
        }
        assert_eq!(reducible_pair(&g).unwrap(), None);
    }

    #[test]
    fn alphabet_mismatch() {
        let (ws, _) = words("abc", 3);
        assert!(matches!(
            whitehead_graph(&ws, Alphabet::new(2).unwrap()),
            Err(WhiteheadError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn aba_is_reducible() {
        let (ws, alphabet) = words("aba", 2);
        let g = whitehead_graph(&ws, alphabet).unwrap();
        let pair = reducible_pair(&g).unwrap().unwrap();
        assert_eq!((pair.generator, pair.valence, pair.cut.size()), (0, 2, 1));
        assert_eq!(g.endpoints(pair.cut.edges[0]).unwrap(), (2, 0));

        let moved = graph_whitehead_move(&g, 0, &pair.cut).unwrap();
        assert_eq!(moved.edge_count(), 2);
        let (ab, _) = words("ab", 2);
        let target = whitehead_graph(&ab, alphabet).unwrap();
        assert!(moved.is_isomorphic(&target).unwrap().is_some());
    }

    #[test]
    fn move_rejects_non_separating_cuts() {
        let (ws, alphabet) = words("abAB", 2);
        let g = whitehead_graph(&ws, alphabet).unwrap();
        let (_, mut cut) = g.min_edge_cut(0, 2).unwrap();
        cut.edges.pop();
        assert_eq!(
            graph_whitehead_move(&g, 0, &cut),
            Err(WhiteheadError::CutDoesNotSeparate(0))
        );
    }

    #[test]
    fn move_with_empty_cut_isolates_the_pair() {
        let (ws, alphabet) = words("ab", 2);
        let g = whitehead_graph(&ws, alphabet).unwrap();
        // W(ab) = {A–b, B–a}: a and A are in different components.
        let (size, cut) = g.min_edge_cut(0, 2).unwrap();
        assert_eq!(size, 0);
        let moved = graph_whitehead_move(&g, 0, &cut).unwrap();
        assert_eq!(moved.edge_count(), 1);
        assert_eq!(moved.valence(0).unwrap(), 0);
        assert_eq!(moved.valence(2).unwrap(), 0);
    }

    #[test]
    fn reduce_examples() {
        // aba is conjugate to a²b, which is primitive.
        let (ws, alphabet) = words("aba", 2);
        let r = whitehead_reduce(&ws, alphabet).unwrap();
        assert_eq!(total_length(&r.words), 1);
        assert_eq!(r.steps[0].to_string(), "wh(a;aB)");

        let (ws, alphabet) = words("abAB", 2);
        let r = whitehead_reduce(&ws, alphabet).unwrap();
        assert_eq!(r.words, ws);
        assert!(r.steps.is_empty());

        let (ws, alphabet) = words("bbaaccabc", 3);
        let r = whitehead_reduce(&ws, alphabet).unwrap();
        assert_eq!(r.words, ws);
    }

    #[test]
    fn reduce_steps_replay() {
        let (ws, alphabet) = words("aabaBAbbb,abAAb", 2);
        let r = whitehead_reduce(&ws, alphabet).unwrap();
        let mut replay = ws.clone();
        for phi in &r.steps {
            replay = phi.apply(&replay).unwrap();
        }
        assert_eq!(replay, r.words);
        let g = whitehead_graph(&r.words, alphabet).unwrap();
        assert_eq!(reducible_pair(&g).unwrap(), None);
    }

    #[test]
    fn orbit_of_a_single_letter() {
        let (ws, alphabet) = words("a", 1);
        let orbit = minimal_orbit(&ws, alphabet, 10).unwrap();
        let members: Vec<String> = orbit.members().iter().map(|m| m[0].to_string()).collect();
        assert_eq!(members, ["a", "A"]);
        assert!(!orbit.truncated());
    }

    #[test]
    fn orbit_cap_one() {
        let (ws, alphabet) = words("a", 1);
        let orbit = minimal_orbit(&ws, alphabet, 1).unwrap();
        assert_eq!(orbit.len(), 1);
        assert!(orbit.truncated());
        assert_eq!(
            minimal_orbit(&ws, alphabet, 0).unwrap_err(),
            WhiteheadError::InvalidCap
        );
    }

    #[test]
    fn commutator_orbit_preserves_length() {
        let (ws, alphabet) = words("abAB", 2);
        let orbit = minimal_orbit(&ws, alphabet, 10_000).unwrap();
        assert!(orbit.contains(&ws));
        assert!(orbit.members().iter().all(|m| total_length(m) == 4));
        for i in 0..orbit.len() {
            let mut replay = ws.clone();
            for phi in orbit.path_to(i) {
                replay = phi.apply(&replay).unwrap();
            }
            assert_eq!(replay, orbit.members()[i]);
        }
    }

    #[test]
    fn orbit_rejects_non_minimal_input() {
        let (ws, alphabet) = words("aba", 2);
        assert!(matches!(
            minimal_orbit(&ws, alphabet, 10),
            Err(WhiteheadError::NotMinimal(_))
        ));
    }
}
