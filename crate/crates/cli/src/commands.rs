use std::fmt::Write;

use cocircuit::axioms::check_all;
use cocircuit::generators::{cyclic, u2n};
use cocircuit::graphs::{cocircuit_graph, crabbed_hull, tope_graph};
use cocircuit::lattice::contract as contract_elements;
use cocircuit::verify::{cost_comparison, equivalence_harness, CostReport};
use cocircuit::{Error, FaceLattice, HullSignature, SignSystem, SignVector, SignedGraph};
use serde_json::json;

use crate::input::load;
use crate::{CliError, Format, GraphChoice, InputArgs, Outcome, RunConfig};

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports are always serializable");
    s.push('\n');
    s
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Input(format!("{command} does not support --format {}", format_name(format)))
}

fn format_name(format: Format) -> &'static str {
    match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Dot => "dot",
    }
}

fn ok(stdout: String) -> Result<Outcome, CliError> {
    Ok(Outcome { stdout, code: 0 })
}

pub fn check(input: &InputArgs, config: &RunConfig) -> Result<Outcome, CliError> {
    let system = load(input, config)?;
    let verdict = check_all(&system);
    let code = if verdict.is_pass() { 0 } else { 1 };
    let stdout = match config.format {
        Format::Text => format!("{verdict}\n"),
        Format::Json => pretty(&json!({
            "ground": system.ground().labels(),
            "members": system.len(),
            "verdict": verdict,
        })),
        Format::Dot => return Err(unsupported("check", config.format)),
    };
    Ok(Outcome { stdout, code })
}

fn emit_graph(graph: &SignedGraph, format: Format) -> String {
    let export = graph.export();
    match format {
        Format::Text => export.to_text(),
        Format::Json => {
            let mut s = export.to_json();
            s.push('\n');
            s
        }
        Format::Dot => export.to_dot(),
    }
}

pub fn graph(input: &InputArgs, kind: GraphChoice, config: &RunConfig) -> Result<Outcome, CliError> {
    let system = load(input, config)?;
    let lattice = FaceLattice::build(&system, &config.budget)?;
    let graph = match kind {
        GraphChoice::Cocircuit => cocircuit_graph(&lattice),
        GraphChoice::Tope => tope_graph(&lattice),
    };
    ok(emit_graph(&graph, config.format))
}

pub fn verify_theorem(input: &InputArgs, hulls: bool, config: &RunConfig) -> Result<Outcome, CliError> {
    let system = load(input, config)?;
    let mut report = equivalence_harness(&system, &config.policy, &config.budget)?;
    let code = if report.holds() { 0 } else { 1 };
    let hulls_checked = report.hulls_checked;
    let records = std::mem::take(&mut report.hulls);
    if hulls {
        report.hulls = records.clone();
    }
    let stdout = match config.format {
        Format::Json => pretty(&report),
        Format::Text => {
            let mut out = String::new();
            let rank = report.rank.map_or_else(|| "not graded".to_string(), |r| r.to_string());
            writeln!(out, "cocircuits     {}", report.cocircuits).unwrap();
            writeln!(out, "edges          {}", report.edges).unwrap();
            writeln!(out, "covectors      {}", report.covectors).unwrap();
            writeln!(out, "rank           {rank}").unwrap();
            writeln!(out, "(i) axioms     {}", report.verdict_i).unwrap();
            writeln!(out, "(ii) hulls     {} ({hulls_checked} hulls)", report.verdict_ii).unwrap();
            writeln!(out, "(iii) paths    {}", report.verdict_iii).unwrap();
            writeln!(out, "agree          {}", report.agree).unwrap();
            writeln!(out, "ii_consistent  {}", report.ii_consistent).unwrap();
            writeln!(out, "cost_naive     {}", report.cost_naive).unwrap();
            writeln!(out, "cost_graph     {}", report.cost_graph).unwrap();
            if hulls {
                for h in &records {
                    let gens: Vec<String> = h.generators.iter().map(SignVector::to_string).collect();
                    writeln!(
                        out,
                        "hull {} signature {} vertices {} connectivity {} target {}",
                        gens.join(","),
                        h.signature,
                        h.vertices,
                        h.connectivity,
                        h.target
                    )
                    .unwrap();
                }
            }
            out
        }
        Format::Dot => return Err(unsupported("verify-theorem", config.format)),
    };
    Ok(Outcome { stdout, code })
}

/// `a..b`, `a..=b` (both inclusive) or a single `a`.
fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("invalid size range {s:?}; expected A..B"));
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?)),
        None => {
            let n = parse(s)?;
            Ok((n, n))
        }
    }
}

pub fn bench(family: &str, args: &[String], timings: bool, config: &RunConfig) -> Result<Outcome, CliError> {
    let (rank, range) = match (family, args) {
        ("u2n", [range]) => (None, parse_range(range)?),
        ("cyclic", [r, range]) => {
            let r: usize = r.parse().map_err(|_| CliError::Input(format!("invalid rank {r:?}")))?;
            (Some(r), parse_range(range)?)
        }
        _ => return Err(CliError::Input("bench expects `u2n A..B` or `cyclic R A..B`".into())),
    };
    let mut rows: Vec<(usize, CostReport)> = Vec::new();
    for n in range.0..=range.1 {
        let system = match rank {
            None => u2n(n)?,
            Some(r) => cyclic(r, n)?,
        };
        rows.push((n, cost_comparison(&system, &config.budget)?));
    }
    let stdout = match config.format {
        Format::Text => {
            let mut out = String::new();
            if let Some(r) = rank {
                writeln!(out, "# {family} r={r}").unwrap();
            } else {
                writeln!(out, "# {family}").unwrap();
            }
            write!(
                out,
                "{:>4} {:>10} {:>8} {:>12} {:>12} {:>8}",
                "n", "cocircuits", "edges", "cost_naive", "cost_graph", "ratio"
            )
            .unwrap();
            if timings {
                write!(out, " {:>12} {:>12}", "naive_s", "graph_s").unwrap();
            }
            out.push('\n');
            for (n, r) in &rows {
                let ratio = if r.cost_graph == 0 { "inf".to_string() } else { format!("{:.3}", r.ratio()) };
                write!(
                    out,
                    "{n:>4} {:>10} {:>8} {:>12} {:>12} {ratio:>8}",
                    r.cocircuits, r.edges, r.cost_naive, r.cost_graph
                )
                .unwrap();
                if timings {
                    write!(out, " {:>12.6} {:>12.6}", r.timings.naive_seconds, r.timings.graph_seconds).unwrap();
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, r)| {
                    let mut row = json!({
                        "n": n,
                        "cocircuits": r.cocircuits,
                        "edges": r.edges,
                        "cost_naive": r.cost_naive,
                        "cost_graph": r.cost_graph,
                        "ratio": if r.cost_graph == 0 { None } else { Some(r.ratio()) },
                        "naive_pass": r.naive_pass,
                        "graph_pass": r.graph_pass,
                    });
                    if timings {
                        row["naive_seconds"] = json!(r.timings.naive_seconds);
                        row["graph_seconds"] = json!(r.timings.graph_seconds);
                    }
                    row
                })
                .collect();
            pretty(&json!({ "family": family, "rank": rank, "rows": rows }))
        }
        Format::Dot => return Err(unsupported("bench", config.format)),
    };
    ok(stdout)
}

fn emit_system(system: &SignSystem, format: Format, command: &str) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(system.to_text()),
        Format::Json => Ok(pretty(&json!({ "ground": system.ground().labels(), "members": system.members() }))),
        Format::Dot => Err(unsupported(command, format)),
    }
}

pub fn gen(family: &str, args: &[String], config: &RunConfig) -> Result<Outcome, CliError> {
    let spec = std::iter::once(family).chain(args.iter().map(String::as_str)).collect::<Vec<_>>().join(":");
    let system = crate::input::generate(&spec, config.seed)?;
    ok(emit_system(&system, config.format, "gen")?)
}

pub fn contract(input: &InputArgs, elements: &str, config: &RunConfig) -> Result<Outcome, CliError> {
    let system = load(input, config)?;
    let set = system.ground().parse_elements(elements)?;
    let minor = contract_elements(&system, set)?;
    let labels = system.ground().labels();
    let kept: Vec<&str> = minor.kept.iter().map(|&i| labels[i].as_str()).collect();
    let stdout = match config.format {
        Format::Json => pretty(&json!({
            "ground": minor.system.ground().labels(),
            "kept": kept,
            "members": minor.system.members(),
        })),
        _ => {
            let mapping: Vec<String> =
                kept.iter().zip(minor.system.ground().labels()).map(|(old, new)| format!("{new}={old}")).collect();
            eprintln!("# elements: {}", mapping.join(","));
            emit_system(&minor.system, config.format, "contract")?
        }
    };
    ok(stdout)
}

pub fn closure(input: &InputArgs, config: &RunConfig) -> Result<Outcome, CliError> {
    let system = load(input, config)?;
    let lattice = FaceLattice::build(&system, &config.budget)?;
    let export = lattice.export();
    let stdout = match config.format {
        Format::Json => pretty(&export),
        Format::Text => {
            let mut out = String::new();
            let rank = export.rank.map_or_else(|| "not graded".to_string(), |r| r.to_string());
            writeln!(out, "# covectors: {}, graded: {}, rank: {rank}", export.covectors.len(), export.graded).unwrap();
            for (v, h) in export.covectors.iter().zip(&export.heights) {
                writeln!(out, "{v}\t{h}").unwrap();
            }
            out
        }
        Format::Dot => {
            let mut out = String::from("digraph lattice {\n");
            for (i, v) in export.covectors.iter().enumerate() {
                writeln!(out, "  v{i} [label=\"{v}\"];").unwrap();
            }
            writeln!(out, "  top [label=\"1\"];").unwrap();
            let top = export.covectors.len();
            for &(lower, upper) in &export.hasse {
                if upper == top {
                    writeln!(out, "  v{lower} -> top;").unwrap();
                } else {
                    writeln!(out, "  v{lower} -> v{upper};").unwrap();
                }
            }
            out.push_str("}\n");
            out
        }
    };
    ok(stdout)
}

pub fn hull(input: &InputArgs, vertices: &[String], config: &RunConfig) -> Result<Outcome, CliError> {
    let system = load(input, config)?;
    let lattice = FaceLattice::build(&system, &config.budget)?;
    let graph = cocircuit_graph(&lattice);
    let mut chosen = Vec::with_capacity(vertices.len());
    for s in vertices {
        let v: SignVector = s.trim().parse()?;
        if v.len() != system.ground_size() {
            return Err(Error::GroundMismatch { left: v.len(), right: system.ground_size() }.into());
        }
        if graph.index_of(&v).is_none() {
            return Err(Error::NotVertex(v.to_string()).into());
        }
        chosen.push(v);
    }
    let signature = HullSignature::from_vectors(&chosen)?;
    ok(emit_graph(&crabbed_hull(&graph, &signature), config.format))
}
