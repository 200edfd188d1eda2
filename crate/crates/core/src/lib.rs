//! Free group words, Whitehead graphs and certificates of non-geometricity.
//!
//! The crate is organised bottom up: [`word`] handles letters, free and cyclic
//! reduction and parsing; [`automorphism`] implements Whitehead automorphisms;
//! [`graph`] holds the multigraph type with flows, planarity, isomorphism and minors;
//! [`whitehead`] builds Whitehead graphs and minimizes collections; [`splice`]
//! simulates covers by splicing graphs; [`certify`] produces and checks certificates.

pub mod automorphism;
pub mod certify;
pub mod graph;
pub mod splice;
pub mod whitehead;
pub mod word;

pub use automorphism::{
    apply_automorphism, enumerate_whitehead_automorphisms, WhiteheadAutomorphism,
};
pub use certify::{
    certify, verify_certificate, Certificate, CertificateDefect, CutRecord, OrbitSummary, Verdict,
};
pub use graph::{
    CutWitness, EdgeId, Embedding, GraphError, KuratowskiKind, KuratowskiWitness, MinorModel,
    MultiGraph, PlanarityWitness, VertexId, VertexLabel,
};
pub use splice::{
    random_regular_connected_graph, simulate_cover, splice, SimulationReport, SpliceError,
    SpliceInstruction, TrialRecord,
};
pub use whitehead::{
    graph_whitehead_move, minimal_orbit, reducible_pair, whitehead_graph, whitehead_reduce, Orbit,
    ReduciblePair, Reduction, WhiteheadError,
};
pub use word::{
    cyclic_reduce, free_reduce, parse_collection, parse_cyclic_word, parse_word, Alphabet,
    CyclicWord, Letter, Word, WordError,
};
