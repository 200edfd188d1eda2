//! Fixed inputs shared by the benchmarks.

use wgeo_core::splice::{random_splice_trial, SpliceTrial};
use wgeo_core::{
    parse_collection, simulate_cover, whitehead_graph, Alphabet, CyclicWord, MultiGraph,
};

pub const K33_WORD: &str = "bbaaccabc";
pub const COMMUTATOR_WORD: &str = "baabccACBBCA";

pub fn words(text: &str) -> (Vec<CyclicWord>, Alphabet) {
    let alphabet = Alphabet::new(3).expect("rank 3");
    (
        parse_collection(text, alphabet).expect("fixture parses"),
        alphabet,
    )
}

pub fn graph_of(text: &str) -> MultiGraph {
    let (ws, alphabet) = words(text);
    whitehead_graph(&ws, alphabet).expect("fixture graph")
}

/// A label-matched 5-sheeted cover of the K3,3 Whitehead graph: 22 vertices, 33 edges.
pub fn k33_cover() -> MultiGraph {
    simulate_cover(&graph_of(K33_WORD), 5, 0, true).expect("cover exists")
}

/// Two 5-valent graphs on 8 and 14 vertices spliced together.
pub fn dense_splice() -> SpliceTrial {
    random_splice_trial(8, 14, 5, 0).expect("trial exists")
}

/// A non-minimal collection: the K3,3 word under a few automorphisms.
pub fn blown_up_k33() -> (Vec<CyclicWord>, Alphabet) {
    words("bAbaaccabcaB,abAB")
}
