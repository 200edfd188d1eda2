use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use wgeo_core::certify::DEFAULT_ORBIT_CAP;
use wgeo_core::splice::{cover_trials, regular_trials};
use wgeo_core::word::{infer_rank, total_length, MAX_TEXT_RANK};
use wgeo_core::{
    certify, parse_collection, verify_certificate, whitehead_graph, whitehead_reduce, Alphabet,
    CyclicWord, MultiGraph, Verdict,
};

const EXIT_INPUT: u8 = 2;
const EXIT_NOT_GEOMETRIC: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "wgeo",
    version,
    about = "Whitehead graphs and virtual geometricity certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Words {
    /// Cyclic words over a-z (inverse A-Z); several words may be given or comma-separated.
    #[arg(required = true, num_args = 1..)]
    words: Vec<String>,
    /// Rank of the free group; defaults to the highest generator used.
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Whitehead graph of a collection.
    Graph {
        #[command(flatten)]
        words: Words,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Add vertex and edge counts, valences, edge connectivity and planarity.
        #[arg(long)]
        stats: bool,
    },
    /// Minimize the total length over the automorphism orbit.
    Minimize {
        #[command(flatten)]
        words: Words,
    },
    /// Certify a collection; the exit code carries the verdict.
    Certify {
        #[command(flatten)]
        words: Words,
        #[arg(long, env = "WGEO_ORBIT_CAP", default_value_t = DEFAULT_ORBIT_CAP)]
        orbit_cap: usize,
        /// Print the certificate as JSON on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Run seeded splice trials and report the invariants per trial.
    SpliceSim {
        /// Splice copies of the Whitehead graph of this word collection.
        #[arg(long, conflicts_with = "regular", required_unless_present = "regular")]
        word: Option<String>,
        /// Splice random k-valent k-edge-connected graphs on n vertices, given as n,k.
        #[arg(long, value_parser = parse_pair)]
        regular: Option<(usize, usize)>,
        #[arg(long, default_value_t = 2)]
        copies: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the built-in examples.
    Selftest,
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let (n, k) = text.split_once(',').ok_or("expected n,k")?;
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
    Ok((parse(n)?, parse(k)?))
}

/// An error message and the exit code to leave with.
struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Graph {
            words,
            dot,
            json,
            stats,
        } => graph(&words, dot, json, stats),
        Command::Minimize { words } => minimize(&words),
        Command::Certify {
            words,
            orbit_cap,
            json,
        } => certify_cmd(&words, orbit_cap, json),
        Command::SpliceSim {
            word,
            regular,
            copies,
            trials,
            seed,
        } => splice_sim(word, regular, copies, trials, seed),
        Command::Selftest => selftest(),
    }
}

fn read_words(words: &Words) -> Result<(Vec<CyclicWord>, Alphabet), Failure> {
    let text = words.words.join(",");
    let inferred = infer_rank(&text)?;
    let rank = words.rank.unwrap_or(inferred).max(1);
    if rank > MAX_TEXT_RANK {
        return Err(Failure(
            EXIT_INPUT,
            format!("rank {rank} exceeds the {MAX_TEXT_RANK} generators expressible as a-z"),
        ));
    }
    let alphabet = Alphabet::new(rank)?;
    Ok((parse_collection(&text, alphabet)?, alphabet))
}

#[derive(Serialize)]
struct Stats {
    vertices: usize,
    edges: usize,
    valences: Vec<usize>,
    regular: Option<usize>,
    edge_connectivity: usize,
    planar: bool,
}

fn stats(g: &MultiGraph) -> Result<Stats, Failure> {
    let edge_connectivity = if g.vertex_count() >= 2 {
        g.edge_connectivity()?.0
    } else {
        0
    };
    Ok(Stats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        valences: g.valences(),
        regular: g.is_regular()?,
        edge_connectivity,
        planar: g.is_planar(),
    })
}

fn edge_labels(g: &MultiGraph) -> Vec<[String; 2]> {
    g.edges()
        .iter()
        .map(|&(u, v)| [g.label(u).to_string(), g.label(v).to_string()])
        .collect()
}

fn graph(words: &Words, dot: bool, json: bool, with_stats: bool) -> Result<u8, Failure> {
    let (ws, alphabet) = read_words(words)?;
    let g = whitehead_graph(&ws, alphabet)?;
    let summary = if with_stats { Some(stats(&g)?) } else { None };
    if json {
        let mut out = json!({
            "vertices": g.labels().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "edges": edge_labels(&g),
        });
        if let Some(s) = &summary {
            out["stats"] = serde_json::to_value(s)?;
        }
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(0);
    }
    let mut out = String::new();
    if dot {
        out.push_str(&g.to_dot());
    } else {
        let labels: Vec<String> = g.labels().iter().map(ToString::to_string).collect();
        writeln!(out, "vertices: {}", labels.join(" ")).unwrap();
        for [u, v] in edge_labels(&g) {
            writeln!(out, "{u} -- {v}").unwrap();
        }
    }
    if let Some(s) = summary {
        // Comment lines keep DOT output valid.
        let prefix = if dot { "// " } else { "" };
        let valences: Vec<String> = s.valences.iter().map(ToString::to_string).collect();
        let regular = s.regular.map_or("no".to_string(), |k| format!("k={k}"));
        writeln!(out, "{prefix}vertices: {}", s.vertices).unwrap();
        writeln!(out, "{prefix}edges: {}", s.edges).unwrap();
        writeln!(out, "{prefix}valences: {}", valences.join(" ")).unwrap();
        writeln!(out, "{prefix}regular: {regular}").unwrap();
        writeln!(out, "{prefix}edge_connectivity: {}", s.edge_connectivity).unwrap();
        writeln!(out, "{prefix}planar: {}", s.planar).unwrap();
    }
    print!("{out}");
    Ok(0)
}

fn minimize(words: &Words) -> Result<u8, Failure> {
    let (ws, alphabet) = read_words(words)?;
    let reduced = whitehead_reduce(&ws, alphabet)?;
    let out = json!({
        "minimal_words": reduced.words.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "automorphisms": reduced.steps.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "initial_length": total_length(&ws),
        "final_length": total_length(&reduced.words),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(0)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::NotVirtuallyGeometric => 0,
        Verdict::NotGeometric => EXIT_NOT_GEOMETRIC,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn certify_cmd(words: &Words, orbit_cap: usize, json: bool) -> Result<u8, Failure> {
    let (ws, alphabet) = read_words(words)?;
    let c = certify(&ws, alphabet, orbit_cap)?;
    let verdict = match c.verdict {
        Verdict::NotVirtuallyGeometric => "not virtually geometric",
        Verdict::NotGeometric => "not geometric",
        Verdict::Inconclusive => "inconclusive",
    };
    let mut summary = verdict.to_string();
    if let Some(k) = c.k {
        write!(summary, ", k = {k}").unwrap();
    }
    write!(
        summary,
        "; minimal words {}; {} orbit member(s) examined{}",
        c.minimal_words.join(","),
        c.orbit.explored,
        if c.orbit.truncated {
            " (orbit truncated)"
        } else {
            ""
        }
    )
    .unwrap();
    if json {
        println!("{}", c.to_json());
        eprintln!("{summary}");
    } else {
        println!("{summary}");
    }
    Ok(verdict_code(c.verdict))
}

fn splice_sim(
    word: Option<String>,
    regular: Option<(usize, usize)>,
    copies: usize,
    trials: usize,
    seed: u64,
) -> Result<u8, Failure> {
    let report = match (word, regular) {
        (Some(text), _) => {
            let (ws, alphabet) = read_words(&Words {
                words: vec![text],
                rank: None,
            })?;
            cover_trials(&whitehead_graph(&ws, alphabet)?, copies, trials, seed)?
        }
        (None, Some((n, k))) => regular_trials(n, k, copies, trials, seed)?,
        (None, None) => {
            return Err(Failure(
                EXIT_INPUT,
                "one of --word or --regular is required".into(),
            ))
        }
    };
    println!("{}", report.to_json());
    if report.violations > 0 {
        return Err(Failure(
            1,
            format!(
                "{} of {} trials violated an invariant",
                report.violations, report.trials
            ),
        ));
    }
    Ok(0)
}

fn selftest() -> Result<u8, Failure> {
    let mut failures = 0;
    let mut check = |name: &str, result: Result<String, String>| match result {
        Ok(detail) => println!("PASS {name}: {detail}"),
        Err(detail) => {
            failures += 1;
            println!("FAIL {name}: {detail}");
        }
    };
    check("W(bbaaccabc) is K3,3", k33_check());
    check(
        "bbaaccabc not virtually geometric",
        certificate_check("bbaaccabc", 3),
    );
    check(
        "baabccACBBCA not virtually geometric",
        certificate_check("baabccACBBCA", 4),
    );
    if failures > 0 {
        return Err(Failure(1, format!("{failures} selftest check(s) failed")));
    }
    Ok(0)
}

fn k33_check() -> Result<String, String> {
    let alphabet = Alphabet::new(3).map_err(|e| e.to_string())?;
    let ws = parse_collection("bbaaccabc", alphabet).map_err(|e| e.to_string())?;
    let g = whitehead_graph(&ws, alphabet).map_err(|e| e.to_string())?;
    match g.is_isomorphic(&MultiGraph::complete_bipartite(3, 3)) {
        Ok(Some(_)) => Ok("isomorphic".into()),
        Ok(None) => Err("not isomorphic".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn certificate_check(text: &str, k: usize) -> Result<String, String> {
    let alphabet = Alphabet::new(3).map_err(|e| e.to_string())?;
    let ws = parse_collection(text, alphabet).map_err(|e| e.to_string())?;
    let c = certify(&ws, alphabet, DEFAULT_ORBIT_CAP).map_err(|e| e.to_string())?;
    if c.verdict != Verdict::NotVirtuallyGeometric || c.k != Some(k) {
        return Err(format!("verdict {:?}, k {:?}", c.verdict, c.k));
    }
    verify_certificate(&c).map_err(|e| format!("certificate rejected: {e}"))?;
    Ok(format!("k = {k}, certificate verified"))
}
