//! Certificates that a collection of words is not virtually geometric.
//!
//! The certifier minimizes the collection, walks its minimal orbit and looks for a
//! representative whose Whitehead graph is regular of valence `k ≥ 3`, `k`-edge-connected
//! and non-planar. A certificate is plain JSON and can be re-checked from scratch by
//! [`verify_certificate`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automorphism::{enumerate_whitehead_automorphisms, WhiteheadAutomorphism};
use crate::graph::{KuratowskiKind, KuratowskiWitness, MultiGraph, PlanarityWitness, VertexId};
use crate::whitehead::{
    letter_vertex, reducible_pair, whitehead_graph, whitehead_reduce, Orbit, WhiteheadError,
};
use crate::word::{
    cyclic_reduce, parse_letters, parse_word_extended, total_length, Alphabet, CyclicWord, Letter,
};

pub const CERTIFICATE_VERSION: u32 = 1;
pub const DEFAULT_ORBIT_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NotVirtuallyGeometric,
    NotGeometric,
    Inconclusive,
}

/// Minimum cut between the two vertices of one generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRecord {
    pub generator: String,
    pub size: usize,
    pub edges: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub explored: usize,
    pub cap: usize,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub alphabet_rank: usize,
    pub input_words: Vec<String>,
    pub verdict: Verdict,
    pub k: Option<usize>,
    /// Applied in order to the input, these produce `minimal_words` exactly.
    pub minimizing_automorphisms: Vec<String>,
    pub minimal_words: Vec<String>,
    pub cuts: Vec<CutRecord>,
    pub kuratowski_edges: Vec<[String; 2]>,
    pub orbit: OrbitSummary,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn label_pair(g: &MultiGraph, u: VertexId, v: VertexId) -> [String; 2] {
    [g.label(u).to_string(), g.label(v).to_string()]
}

fn cut_records(g: &MultiGraph, n: usize) -> Result<Vec<CutRecord>, WhiteheadError> {
    let mut out = Vec::with_capacity(n);
    for generator in 0..n {
        let (size, cut) = g.min_edge_cut(generator, n + generator)?;
        let edges = cut
            .edges
            .iter()
            .map(|&e| {
                let (u, v) = g.edges()[e];
                label_pair(g, u, v)
            })
            .collect();
        out.push(CutRecord {
            generator: Letter::positive(generator).to_string(),
            size,
            edges,
        });
    }
    Ok(out)
}

fn strings(ws: &[CyclicWord]) -> Vec<String> {
    ws.iter().map(ToString::to_string).collect()
}

/// Minimizes `ws`, then scans its minimal orbit (at most `orbit_cap` members) in
/// breadth-first order.
///
/// The first member meeting all three hypotheses yields `NotVirtuallyGeometric`. Failing
/// that, the first member with a non-planar graph yields `NotGeometric`. Otherwise the
/// verdict is `Inconclusive`.
pub fn certify(
    ws: &[CyclicWord],
    alphabet: Alphabet,
    orbit_cap: usize,
) -> Result<Certificate, WhiteheadError> {
    let reduction = whitehead_reduce(ws, alphabet)?;
    let mut orbit = Orbit::new(&reduction.words, alphabet, orbit_cap)?;
    let n = alphabet.rank();
    let mut non_planar: Option<(usize, Vec<CyclicWord>, MultiGraph, KuratowskiWitness)> = None;
    let mut verdict = None;
    let mut i = 0;
    while let Some(member) = orbit.member(i)? {
        let member = member.to_vec();
        let g = whitehead_graph(&member, alphabet)?;
        if let PlanarityWitness::Kuratowski(witness) = g.planarity() {
            let hypotheses = match g.is_regular()? {
                Some(k) if k >= 3 && g.is_k_edge_connected(k)? => Some(k),
                _ => None,
            };
            if let Some(k) = hypotheses {
                verdict = Some((
                    Verdict::NotVirtuallyGeometric,
                    Some(k),
                    i,
                    member,
                    g,
                    witness,
                ));
                break;
            }
            if non_planar.is_none() {
                non_planar = Some((i, member, g, witness));
            }
        }
        i += 1;
    }
    let explored = match &verdict {
        Some((_, _, index, ..)) => index + 1,
        None => orbit.len(),
    };
    let verdict = verdict.or_else(|| {
        non_planar.map(|(index, member, g, witness)| {
            (
                Verdict::NotGeometric,
                g.is_regular().ok().flatten(),
                index,
                member,
                g,
                witness,
            )
        })
    });
    let summary = |explored| OrbitSummary {
        explored,
        cap: orbit.cap(),
        truncated: orbit.truncated(),
    };
    let steps = |extra: Vec<WhiteheadAutomorphism>| {
        reduction
            .steps
            .iter()
            .chain(extra.iter())
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    };
    let certificate = match verdict {
        Some((verdict, k, index, member, g, witness)) => Certificate {
            version: CERTIFICATE_VERSION,
            alphabet_rank: n,
            input_words: strings(ws),
            verdict,
            k,
            minimizing_automorphisms: steps(orbit.path_to(index)),
            minimal_words: strings(&member),
            cuts: cut_records(&g, n)?,
            kuratowski_edges: witness
                .edges
                .iter()
                .map(|&(u, v)| label_pair(&g, u, v))
                .collect(),
            orbit: summary(explored),
        },
        None => {
            let g = whitehead_graph(&reduction.words, alphabet)?;
            Certificate {
                version: CERTIFICATE_VERSION,
                alphabet_rank: n,
                input_words: strings(ws),
                verdict: Verdict::Inconclusive,
                k: g.is_regular()?,
                minimizing_automorphisms: steps(Vec::new()),
                minimal_words: strings(&reduction.words),
                cuts: cut_records(&g, n)?,
                kuratowski_edges: Vec::new(),
                orbit: summary(explored),
            }
        }
    };
    Ok(certificate)
}

/// The first problem found while re-checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateDefect {
    #[error("unsupported certificate version {0}")]
    UnsupportedVersion(u32),
    #[error("malformed field: {0}")]
    Malformed(String),
    #[error("automorphisms do not turn the input into the minimal words")]
    ReplayMismatch,
    #[error("cut for {generator}: {reason}")]
    BadCut { generator: String, reason: String },
    #[error("verdict needs k >= 3, certificate has {0:?}")]
    ValenceTooLow(Option<usize>),
    #[error("graph is not regular of valence {0}")]
    NotRegular(usize),
    #[error("graph is only {found}-edge-connected, expected {expected}")]
    ConnectivityTooLow { expected: usize, found: usize },
    #[error("Kuratowski edges do not form a subdivision of K5 or K3,3")]
    BadKuratowski,
    #[error("minimal words are shortened by {0}")]
    NotMinimal(String),
}

fn malformed(what: impl Into<String>) -> CertificateDefect {
    CertificateDefect::Malformed(what.into())
}

fn parse_words(words: &[String], alphabet: Alphabet) -> Result<Vec<CyclicWord>, CertificateDefect> {
    words
        .iter()
        .map(|w| {
            parse_word_extended(w, alphabet)
                .ok()
                .and_then(|word| cyclic_reduce(&word).ok())
                .ok_or_else(|| malformed(format!("word {w:?}")))
        })
        .collect()
}

fn parse_vertex(label: &str, n: usize) -> Result<VertexId, CertificateDefect> {
    match parse_letters(label).as_deref() {
        Ok([l]) if l.generator() < n => Ok(letter_vertex(*l, n)),
        _ => Err(malformed(format!("vertex {label:?}"))),
    }
}

fn parse_edges(
    pairs: &[[String; 2]],
    n: usize,
) -> Result<Vec<(VertexId, VertexId)>, CertificateDefect> {
    pairs
        .iter()
        .map(|[a, b]| Ok((parse_vertex(a, n)?, parse_vertex(b, n)?)))
        .collect()
}

fn check_cut(g: &MultiGraph, n: usize, record: &CutRecord) -> Result<usize, CertificateDefect> {
    let bad = |reason: &str| CertificateDefect::BadCut {
        generator: record.generator.clone(),
        reason: reason.to_string(),
    };
    let generator = match parse_letters(&record.generator).as_deref() {
        Ok([l]) if !l.is_inverse() && l.generator() < n => l.generator(),
        _ => return Err(malformed(format!("generator {:?}", record.generator))),
    };
    if record.size != record.edges.len() {
        return Err(bad("size differs from the number of edges"));
    }
    // Match each listed edge to a distinct edge of the graph.
    let mut used = vec![false; g.edge_count()];
    for (u, v) in parse_edges(&record.edges, n)? {
        let found = g
            .incident_edges(u)
            .iter()
            .copied()
            .find(|&e| !used[e] && g.opposite(e, u) == v)
            .ok_or_else(|| bad("edge not in graph"))?;
        used[found] = true;
    }
    let removed: Vec<usize> = (0..g.edge_count()).filter(|&e| used[e]).collect();
    let rest = g
        .delete_edges(&removed)
        .map_err(|e| malformed(e.to_string()))?;
    let (comp, _) = rest.components();
    if comp[generator] == comp[n + generator] {
        return Err(bad("edges do not separate the pair"));
    }
    let (minimum, _) = g
        .min_edge_cut(generator, n + generator)
        .map_err(|e| malformed(e.to_string()))?;
    if minimum != record.size {
        return Err(bad("not a minimum cut"));
    }
    Ok(generator)
}

fn check_kuratowski(
    g: &MultiGraph,
    pairs: &[[String; 2]],
    n: usize,
) -> Result<(), CertificateDefect> {
    let edges = parse_edges(pairs, n)?;
    let genuine = [KuratowskiKind::K5, KuratowskiKind::K33]
        .into_iter()
        .any(|kind| {
            KuratowskiWitness {
                kind,
                edges: edges.clone(),
            }
            .verify(g)
        });
    if genuine {
        Ok(())
    } else {
        Err(CertificateDefect::BadKuratowski)
    }
}

/// Rechecks every claim of a certificate without trusting the search that produced it.
pub fn verify_certificate(c: &Certificate) -> Result<(), CertificateDefect> {
    if c.version != CERTIFICATE_VERSION {
        return Err(CertificateDefect::UnsupportedVersion(c.version));
    }
    let alphabet = Alphabet::new(c.alphabet_rank).map_err(|e| malformed(e.to_string()))?;
    let n = alphabet.rank();
    let input = parse_words(&c.input_words, alphabet)?;
    let minimal = parse_words(&c.minimal_words, alphabet)?;
    if input.is_empty() {
        return Err(malformed("no input words"));
    }
    let mut replay = input;
    for text in &c.minimizing_automorphisms {
        let phi: WhiteheadAutomorphism = text
            .parse()
            .map_err(|_| malformed(format!("automorphism {text:?}")))?;
        if phi.min_rank() > n {
            return Err(malformed(format!("automorphism {text:?} exceeds the rank")));
        }
        replay = phi
            .apply(&replay)
            .map_err(|_| CertificateDefect::ReplayMismatch)?;
    }
    if replay != minimal {
        return Err(CertificateDefect::ReplayMismatch);
    }
    let g = whitehead_graph(&minimal, alphabet).map_err(|e| malformed(e.to_string()))?;
    let mut covered = vec![false; n];
    for record in &c.cuts {
        covered[check_cut(&g, n, record)?] = true;
    }
    match c.verdict {
        Verdict::NotVirtuallyGeometric => {
            let k = match c.k {
                Some(k) if k >= 3 => k,
                other => return Err(CertificateDefect::ValenceTooLow(other)),
            };
            if g.is_regular().ok().flatten() != Some(k) {
                return Err(CertificateDefect::NotRegular(k));
            }
            if let Some(g_missing) = covered.iter().position(|&c| !c) {
                return Err(CertificateDefect::BadCut {
                    generator: Letter::positive(g_missing).to_string(),
                    reason: "missing".into(),
                });
            }
            if let Some(r) = c.cuts.iter().find(|r| r.size != k) {
                return Err(CertificateDefect::BadCut {
                    generator: r.generator.clone(),
                    reason: format!("size {} differs from k = {k}", r.size),
                });
            }
            let found = g
                .edge_connectivity()
                .map_err(|e| malformed(e.to_string()))?
                .0;
            if found < k {
                return Err(CertificateDefect::ConnectivityTooLow { expected: k, found });
            }
            check_kuratowski(&g, &c.kuratowski_edges, n)?;
        }
        Verdict::NotGeometric => {
            check_kuratowski(&g, &c.kuratowski_edges, n)?;
            let length = total_length(&minimal);
            for phi in enumerate_whitehead_automorphisms(alphabet) {
                let image = phi.apply(&minimal).map_err(|e| malformed(e.to_string()))?;
                if total_length(&image) < length {
                    return Err(CertificateDefect::NotMinimal(phi.to_string()));
                }
            }
            if let Ok(Some(pair)) = reducible_pair(&g) {
                return Err(CertificateDefect::NotMinimal(format!(
                    "a cut of size {} at {}",
                    pair.cut.size(),
                    Letter::positive(pair.generator)
                )));
            }
        }
        Verdict::Inconclusive => {}
    }
    Ok(())
}
