//! `matchbound` command line. Every subcommand is a thin adapter over the
//! library: it loads inputs, calls one or two library functions and reports
//! the results.

pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{
    coloring_bound_ln, finite_matching_bound, lemma41_deviation, lemma42_check,
    reference_envelope_ln, transversal_bound_ln, BoundParameters, BoundReport, ColoringMode,
    DEFAULT_TOL,
};
use crate::constructions::{
    cayley_cyclic, incidence_hypergraph, kdd_union, ls_to_hypergraph, transversal_free_entries,
    CellSet, LatinSquare, UniformHypergraph, DEFAULT_MAX_ORDER,
};
use crate::enumeration::{
    count_a_perfect_matchings, count_proper_colorings, count_proper_colorings_direct,
    count_transversals, per_entry_transversal_counts, CountOptions, CountReport, DEFAULT_MAX_NODES,
};
use crate::error::Error;
use crate::hypercore::{degree_stats, BipartiteHypergraph, DegreeStats};
use crate::verify::{
    sampler_uniformity_test, verify_bound_dominance, verify_lemma31, verify_lemma33,
    ExpectationMode, VerifyOptions,
};
use report::{num, Format, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "matchbound",
    version,
    about = "Exact counts and entropy-method bounds for hypergraph matchings, Latin square transversals and edge-colorings"
)]
pub struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Quadrature tolerance for bound evaluation.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, global = true, env = "MATCHBOUND_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: u64,
    /// Largest Latin square order for per-entry transversal work.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Include wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Encode instances as bipartite hypergraphs.
    #[command(subcommand)]
    Encode(EncodeCommand),
    /// Exact counts.
    #[command(subcommand)]
    Count(CountCommand),
    /// Evaluate bounds (natural log).
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Check the inequalities of the entropy argument on an instance.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// One-shot reports.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Cayley table of the cyclic group of order n.
    Cayley {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjoint union of copies of K_{d,d}.
    Kdd {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum EncodeCommand {
    /// Rows -> A, columns and symbols -> B.
    Square {
        #[command(flatten)]
        square: SquareSource,
        /// Drop transversal-free cells.
        #[arg(long)]
        prune: bool,
        /// Extra cells to drop, as `r,c;r,c;...`.
        #[arg(long)]
        exclude: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Incidence hypergraph of a q-edge-coloring problem.
    Incidence {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum CountCommand {
    Transversals {
        #[command(flatten)]
        square: SquareSource,
    },
    Matchings {
        #[command(flatten)]
        instance: InstanceSource,
    },
    Colorings {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        /// Also run the direct color-assignment backtracker and compare.
        #[arg(long)]
        direct: bool,
    },
    /// Number of transversals through each cell.
    PerEntry {
        #[command(flatten)]
        square: SquareSource,
    },
}

#[derive(Debug, Subcommand)]
enum BoundCommand {
    /// Finite matching bound from the instance's degree statistics.
    Finite {
        #[command(flatten)]
        instance: InstanceSource,
    },
    /// n(ln n - 2.117) next to n(ln n - 2).
    TransversalEnvelope {
        #[arg(long)]
        n: u64,
    },
    Coloring {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Finite)]
        mode: ModeArg,
    },
    /// ∫ ln(eps + x^k) dx and its scaled deviation from -k.
    Lemma41 {
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        k: usize,
    },
    /// ln(8n/9 + 1/3) - 2 against ln n - 2.117.
    Lemma42 {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Finite,
    Asymptotic,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    Lemma31 {
        #[command(flatten)]
        instance: InstanceSource,
    },
    Lemma33 {
        #[command(flatten)]
        instance: InstanceSource,
    },
    Dominance {
        #[command(flatten)]
        instance: InstanceSource,
    },
    Sampler {
        #[command(flatten)]
        instance: InstanceSource,
        #[arg(long, default_value_t = 3000)]
        trials: usize,
    },
}

#[derive(Debug, Subcommand)]
enum AnalyzeCommand {
    /// Count, transversal-free cells, pruned stats, bound and dominance.
    Square {
        #[command(flatten)]
        square: SquareSource,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SquareSource {
    /// Latin square file.
    #[arg(long)]
    square: Option<PathBuf>,
    /// Cyclic Cayley table of this order.
    #[arg(long)]
    cayley: Option<usize>,
}

#[derive(Debug, Args)]
#[group(skip)]
struct GraphSource {
    /// Uniform hypergraph file.
    #[arg(long, group = "graph_source")]
    graph: Option<PathBuf>,
    /// K_{d,d} (see --copies).
    #[arg(long, group = "graph_source")]
    kdd: Option<usize>,
    #[arg(long, default_value_t = 1, requires = "kdd")]
    copies: usize,
}

/// Anything that resolves to a bipartite hypergraph.
#[derive(Debug, Args)]
struct InstanceSource {
    #[arg(long, group = "instance")]
    hypergraph: Option<PathBuf>,
    #[arg(long, group = "instance")]
    square: Option<PathBuf>,
    #[arg(long, group = "instance")]
    cayley: Option<usize>,
    /// Uniform hypergraph file; needs --q.
    #[arg(long, group = "instance", requires = "q")]
    graph: Option<PathBuf>,
    /// K_{d,d} incidence hypergraph; needs --q.
    #[arg(long, group = "instance", requires = "q")]
    kdd: Option<usize>,
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long)]
    q: Option<usize>,
    /// For squares: drop transversal-free cells.
    #[arg(long)]
    prune: bool,
}

/// Failure with the exit code to return.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn from_error(context: &str, e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Io(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        let message = if context.is_empty() {
            e.to_string()
        } else {
            format!("{context}: {e}")
        };
        Failure { code, message }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

trait Context<T> {
    fn ctx(self, context: &str) -> CliResult<T>;
}

impl<T> Context<T> for crate::error::Result<T> {
    fn ctx(self, context: &str) -> CliResult<T> {
        self.map_err(|e| Failure::from_error(context, e))
    }
}

struct Session {
    global: GlobalArgs,
    inputs: BTreeMap<String, String>,
}

impl Session {
    fn count_opts(&self) -> CountOptions {
        CountOptions::default()
            .with_threads(self.global.threads)
            .with_max_nodes(self.global.max_nodes)
    }

    fn verify_opts(&self) -> VerifyOptions {
        VerifyOptions {
            count: self.count_opts(),
            tol: self.global.tol.max(1e-9),
            seed: self.global.seed,
            ..VerifyOptions::default()
        }
    }

    fn read(&mut self, path: &Path) -> CliResult<String> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| Failure::from_error(&name, e.into()))?;
        let digest = Sha256::digest(text.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.insert(name, hex);
        Ok(text)
    }

    fn write(&self, path: &Path, text: &str) -> CliResult<()> {
        std::fs::write(path, text).map_err(|e| Failure::from_error(&path.display().to_string(), e.into()))
    }

    fn square(&mut self, src: &SquareSource) -> CliResult<(String, LatinSquare)> {
        match (&src.square, src.cayley) {
            (Some(path), _) => {
                let name = path.display().to_string();
                let text = self.read(path)?;
                Ok((name.clone(), LatinSquare::parse(&text).ctx(&name)?))
            }
            (None, Some(n)) => Ok((format!("cayley:{n}"), cayley_cyclic(n).ctx("--cayley")?)),
            (None, None) => Err(Failure::usage("one of --square or --cayley is required")),
        }
    }

    fn graph(&mut self, src: &GraphSource) -> CliResult<(String, UniformHypergraph)> {
        match (&src.graph, src.kdd) {
            (Some(path), _) => {
                let name = path.display().to_string();
                let text = self.read(path)?;
                Ok((name.clone(), UniformHypergraph::parse(&text).ctx(&name)?))
            }
            (None, Some(d)) => Ok((
                format!("kdd:{d}x{}", src.copies),
                kdd_union(d, src.copies).ctx("--kdd")?,
            )),
            (None, None) => Err(Failure::usage("one of --graph or --kdd is required")),
        }
    }

    fn instance(&mut self, src: &InstanceSource) -> CliResult<(String, BipartiteHypergraph)> {
        let prune = |s: &mut Self, id: String, l: LatinSquare| -> CliResult<(String, BipartiteHypergraph)> {
            let excluded = if src.prune {
                transversal_free_entries(&l, s.global.max_order, &s.count_opts()).ctx(&id)?
            } else {
                CellSet::new()
            };
            let id = if src.prune { format!("{id}+pruned") } else { id };
            let h = ls_to_hypergraph(&l, &excluded).ctx(&id)?;
            Ok((id, h))
        };
        if let Some(path) = &src.hypergraph {
            let name = path.display().to_string();
            let text = self.read(path)?;
            return Ok((name.clone(), BipartiteHypergraph::parse(&text).ctx(&name)?));
        }
        if src.square.is_some() || src.cayley.is_some() {
            let (id, l) = self.square(&SquareSource {
                square: src.square.clone(),
                cayley: src.cayley,
            })?;
            return prune(self, id, l);
        }
        if src.graph.is_some() || src.kdd.is_some() {
            let q = src.q.ok_or_else(|| Failure::usage("--q is required with --graph/--kdd"))?;
            let (id, g) = self.graph(&GraphSource {
                graph: src.graph.clone(),
                kdd: src.kdd,
                copies: src.copies,
            })?;
            let id = format!("{id}/q={q}");
            let h = incidence_hypergraph(&g, q).ctx(&id)?;
            return Ok((id, h));
        }
        Err(Failure::usage(
            "an instance is required: --hypergraph, --square, --cayley, --graph or --kdd",
        ))
    }
}

fn count_json(r: &CountReport) -> Value {
    json!({
        "count": r.count.to_string(),
        "ln_count": num(r.ln_count),
        "nodes_visited": r.nodes_visited,
    })
}

fn stats_json(s: &DegreeStats) -> Value {
    json!({
        "q_avg": num(s.q_avg_f64()),
        "q_avg_exact": s.q_avg.to_string(),
        "d_max_b": s.d_max_b,
        "delta2": s.delta2,
        "rho": num(s.rho_f64()),
        "rho_exact": s.rho.to_string(),
        "min_a_degree": s.min_a_degree,
    })
}

fn hypergraph_json(h: &BipartiteHypergraph) -> Value {
    json!({
        "k": h.k(),
        "a_count": h.a_count(),
        "b_count": h.b_count(),
        "edge_count": h.edges().len(),
    })
}

fn bound_json(b: &BoundReport) -> Value {
    json!({
        "ln_bound": num(b.ln_bound),
        "integrand_constant": num(b.integrand_constant),
        "quadrature_error_estimate": num(b.quadrature_error_estimate),
        "method": serde_json::to_value(b.method).expect("method serializes"),
        "units": "nats",
    })
}

fn params_json(p: &BoundParameters) -> Value {
    json!({
        "a_count": p.a_count,
        "k": p.k,
        "q": num(p.q),
        "d": num(p.d),
        "delta2": p.delta2,
        "rho": num(p.rho),
        "s_bar": num(p.s_bar),
        "t_bar": num(p.t_bar),
    })
}

fn mode_json(m: &ExpectationMode) -> Value {
    match m {
        ExpectationMode::Exact => json!({"kind": "exact"}),
        ExpectationMode::Sampled {
            samples,
            ci_half_width,
        } => json!({"kind": "sampled", "samples": samples, "ci_half_width": num(*ci_half_width)}),
    }
}

fn parse_cells(spec: &str) -> CliResult<CellSet> {
    spec.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let mut it = pair.split(',').map(|x| x.trim().parse::<usize>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(r)), Some(Ok(c)), None) => Ok((r, c)),
                _ => Err(Failure::usage(format!("--exclude: bad cell {pair:?}, expected r,c"))),
            }
        })
        .collect()
}

fn execute(session: &mut Session, command: &Command) -> CliResult<Value> {
    let opts = session.count_opts();
    let tol = session.global.tol;
    Ok(match command {
        Command::Gen(GenCommand::Cayley { n, out }) => {
            let l = cayley_cyclic(*n).ctx("--n")?;
            if let Some(path) = out {
                session.write(path, &l.to_text())?;
            }
            json!({"order": n, "square": l.rows()})
        }
        Command::Gen(GenCommand::Kdd { d, copies, out }) => {
            let g = kdd_union(*d, *copies).ctx("--d")?;
            if let Some(path) = out {
                session.write(path, &g.to_text())?;
            }
            json!({"stats": serde_json::to_value(g.stats()).expect("stats serialize"), "edges": g.edges()})
        }
        Command::Encode(EncodeCommand::Square {
            square,
            prune,
            exclude,
            out,
        }) => {
            let (id, l) = session.square(square)?;
            let mut excluded = match exclude {
                Some(spec) => parse_cells(spec)?,
                None => CellSet::new(),
            };
            if *prune {
                let free = transversal_free_entries(&l, session.global.max_order, &opts).ctx(&id)?;
                excluded.0.extend(free.0);
            }
            let h = ls_to_hypergraph(&l, &excluded).ctx(&id)?;
            if let Some(path) = out {
                session.write(path, &h.to_text())?;
            }
            json!({
                "instance": id,
                "excluded": excluded.iter().map(|&(r, c)| [r, c]).collect::<Vec<_>>(),
                "hypergraph": hypergraph_json(&h),
                "stats": stats_json(&degree_stats(&h)),
                "text": h.to_text(),
            })
        }
        Command::Encode(EncodeCommand::Incidence { graph, q, out }) => {
            let (id, g) = session.graph(graph)?;
            let h = incidence_hypergraph(&g, *q).ctx(&id)?;
            if let Some(path) = out {
                session.write(path, &h.to_text())?;
            }
            json!({
                "instance": format!("{id}/q={q}"),
                "hypergraph": hypergraph_json(&h),
                "stats": stats_json(&degree_stats(&h)),
                "text": h.to_text(),
            })
        }
        Command::Count(CountCommand::Transversals { square }) => {
            let (id, l) = session.square(square)?;
            let r = count_transversals(&l, &opts).ctx(&id)?;
            json!({"instance": id, "order": l.order(), "transversals": count_json(&r)})
        }
        Command::Count(CountCommand::Matchings { instance }) => {
            let (id, h) = session.instance(instance)?;
            let r = count_a_perfect_matchings(&h, &opts).ctx(&id)?;
            json!({"instance": id, "hypergraph": hypergraph_json(&h), "matchings": count_json(&r)})
        }
        Command::Count(CountCommand::Colorings { graph, q, direct }) => {
            let (id, g) = session.graph(graph)?;
            let r = count_proper_colorings(&g, *q, &opts).ctx(&id)?;
            let mut out = json!({"instance": id, "q": q, "colorings": count_json(&r)});
            if *direct {
                let d = count_proper_colorings_direct(&g, *q, &opts).ctx(&id)?;
                out["direct"] = count_json(&d);
                out["agree"] = Value::Bool(d.count == r.count);
            }
            out
        }
        Command::Count(CountCommand::PerEntry { square }) => {
            let (id, l) = session.square(square)?;
            if l.order() > session.global.max_order {
                return Err(Failure::from_error(
                    &id,
                    Error::TooLarge {
                        what: "order",
                        value: l.order(),
                        limit: session.global.max_order,
                    },
                ));
            }
            let m = per_entry_transversal_counts(&l, &opts).ctx(&id)?;
            let as_strings: Vec<Vec<String>> = m
                .iter()
                .map(|row| row.iter().map(BigUint::to_string).collect())
                .collect();
            let total: BigUint = m.first().map(|row| row.iter().sum()).unwrap_or_default();
            json!({"instance": id, "order": l.order(), "per_entry": as_strings, "total": total.to_string()})
        }
        Command::Bound(BoundCommand::Finite { instance }) => {
            let (id, h) = session.instance(instance)?;
            let stats = degree_stats(&h);
            let p = BoundParameters::from_stats(&h, &stats);
            let b = finite_matching_bound(&p, tol).ctx(&id)?;
            json!({"instance": id, "parameters": params_json(&p), "bound": bound_json(&b)})
        }
        Command::Bound(BoundCommand::TransversalEnvelope { n }) => {
            let lo = transversal_bound_ln(*n);
            let hi = reference_envelope_ln(*n);
            json!({
                "n": n,
                "ln_bound_2117": num(lo),
                "ln_envelope_e2": num(hi),
                "difference": num(hi - lo),
                "units": "nats",
            })
        }
        Command::Bound(BoundCommand::Coloring { graph, q, mode }) => {
            let (id, g) = session.graph(graph)?;
            let stats = g.stats();
            let (mode, certified) = match mode {
                ModeArg::Finite => (ColoringMode::Finite, true),
                ModeArg::Asymptotic => (ColoringMode::Asymptotic, false),
            };
            let ln = coloring_bound_ln(&stats, *q, mode, tol).ctx(&id)?;
            json!({
                "instance": id,
                "q": q,
                "mode": serde_json::to_value(mode).expect("mode serializes"),
                "certified": certified,
                "ln_bound": num(ln),
                "units": "nats",
            })
        }
        Command::Bound(BoundCommand::Lemma41 { eps, k }) => {
            let r = lemma41_deviation(*eps, *k).ctx("lemma41")?;
            json!({"eps": num(*eps), "k": k, "value": num(r.value), "scaled_dev": num(r.scaled_dev)})
        }
        Command::Bound(BoundCommand::Lemma42 { n }) => {
            let r = lemma42_check(*n).ctx("lemma42")?;
            json!({"n": n, "lhs": num(r.lhs), "rhs": num(r.rhs), "pass": r.pass, "units": "nats"})
        }
        Command::Verify(VerifyCommand::Lemma31 { instance }) => {
            let (id, h) = session.instance(instance)?;
            let r = verify_lemma31(&h, &session.verify_opts()).ctx(&id)?;
            json!({
                "instance": id,
                "lemma": "lemma31",
                "lhs": num(r.lhs_bits),
                "rhs": num(r.rhs_bits),
                "rhs_pre_jensen": num(r.rhs_pre_jensen_bits),
                "matching_count": r.matching_count.to_string(),
                "mode": mode_json(&r.mode),
                "pass": r.pass,
                "slack": num(r.rhs_bits - r.lhs_bits),
                "units": "bits",
            })
        }
        Command::Verify(VerifyCommand::Lemma33 { instance }) => {
            let (id, h) = session.instance(instance)?;
            let r = verify_lemma33(&h, &session.verify_opts()).ctx(&id)?;
            json!({
                "instance": id,
                "lemma": "lemma33",
                "s_bound": num(r.s_bound),
                "t_bound": num(r.t_bound),
                "worst_s_slack": num(r.worst_s_slack),
                "worst_t_slack": num(r.worst_t_slack),
                "checked_matchings": r.checked_matchings,
                "mode": mode_json(&r.mode),
                "pass": r.pass,
                "units": "edges",
            })
        }
        Command::Verify(VerifyCommand::Dominance { instance }) => {
            let (id, h) = session.instance(instance)?;
            let r = verify_bound_dominance(&h, &session.verify_opts()).ctx(&id)?;
            json!({
                "instance": id,
                "lemma": "dominance",
                "count": r.count.to_string(),
                "lhs": num(r.ln_count),
                "rhs": num(r.bound.ln_bound),
                "gap_per_a": num(r.gap_per_a),
                "vacuous": r.vacuous,
                "pass": r.pass,
                "bound": bound_json(&r.bound),
                "units": "nats",
            })
        }
        Command::Verify(VerifyCommand::Sampler { instance, trials }) => {
            let (id, h) = session.instance(instance)?;
            let r = sampler_uniformity_test(&h, *trials, session.global.seed, &opts).ctx(&id)?;
            let mut v = serde_json::to_value(&r).expect("report serializes");
            v["chi_square"] = num(r.chi_square);
            v["critical_value"] = num(r.critical_value);
            v["instance"] = Value::String(id);
            v
        }
        Command::Analyze(AnalyzeCommand::Square { square }) => {
            let (id, l) = session.square(square)?;
            analyze_square(&id, &l, session)?
        }
    })
}

fn analyze_square(id: &str, l: &LatinSquare, session: &Session) -> CliResult<Value> {
    let opts = session.count_opts();
    let n = l.order();
    let total = count_transversals(l, &opts).ctx(id)?;
    let free = transversal_free_entries(l, session.global.max_order, &opts).ctx(id)?;
    let pruned = ls_to_hypergraph(l, &free).ctx(id)?;
    let stats = degree_stats(&pruned);
    let params = BoundParameters::from_stats(&pruned, &stats);
    let bound = finite_matching_bound(&params, session.global.tol).ctx(id)?;
    let dominance = verify_bound_dominance(&pruned, &session.verify_opts()).ctx(id)?;
    Ok(json!({
        "instance": id,
        "order": n,
        "transversals": count_json(&total),
        "transversal_free": {
            "count": free.len(),
            "cells": free.iter().map(|&(r, c)| [r, c]).collect::<Vec<_>>(),
        },
        "pruned": {
            "hypergraph": hypergraph_json(&pruned),
            "stats": stats_json(&stats),
            "parameters": params_json(&params),
        },
        "bound": bound_json(&bound),
        "dominance": {
            "count": dominance.count.to_string(),
            "pass": dominance.pass,
            "vacuous": dominance.vacuous,
            "gap_per_a": num(dominance.gap_per_a),
        },
        "envelopes": {
            "ln_bound_2117": num(transversal_bound_ln(n as u64)),
            "ln_envelope_e2": num(reference_envelope_ln(n as u64)),
            "certified": false,
        },
    }))
}

/// Parses `args` (including the program name), runs one subcommand and writes
/// the report to `out` or a one-line diagnostic to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let start = Instant::now();
    let mut command: Vec<String> = vec!["matchbound".into()];
    command.extend(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()));
    let format = match cli.global.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Csv => Format::Csv,
    };
    let seed = cli.global.seed;
    let timing = cli.global.timing;
    let mut session = Session {
        global: cli.global,
        inputs: BTreeMap::new(),
    };
    match execute(&mut session, &cli.command) {
        Ok(results) => {
            let report = RunReport {
                command,
                inputs: session.inputs,
                results,
                seed,
                elapsed_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
            };
            match out.write_all(report.render(format).as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "matchbound: write failed: {e}");
                    EXIT_DOMAIN
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "matchbound: {}", f.message);
            f.code
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("matchbound").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn results(args: &[&str]) -> Value {
        let (code, out, err) = run_args(args);
        assert_eq!(code, 0, "{err}");
        serde_json::from_str::<Value>(&out).unwrap()["results"].clone()
    }

    #[test]
    fn count_cyclic_five() {
        let r = results(&["count", "transversals", "--cayley", "5"]);
        assert_eq!(r["transversals"]["count"], "15");
    }

    #[test]
    fn envelope_values() {
        let r = results(&["bound", "transversal-envelope", "--n", "600"]);
        assert!((r["ln_bound_2117"].as_f64().unwrap() - 2568.0).abs() < 0.05);
        assert!((r["ln_envelope_e2"].as_f64().unwrap() - 2638.2).abs() < 0.05);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["count", "transversals"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        let (code, _, err) = run_args(&["count", "transversals", "--square", "/nonexistent.ls"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("/nonexistent.ls"));
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn domain_errors_exit_one() {
        let (code, _, err) = run_args(&["count", "per-entry", "--cayley", "13"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("cayley:13"), "{err}");
        let (code, _, _) = run_args(&["--max-nodes", "5", "count", "transversals", "--cayley", "7"]);
        assert_eq!(code, EXIT_DOMAIN);
        let (code, _, err) = run_args(&["verify", "lemma31", "--cayley", "4"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("infeasible"));
    }

    #[test]
    fn csv_output() {
        let (code, out, _) = run_args(&["--format", "csv", "count", "transversals", "--cayley", "3"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("key,value\n"));
        assert!(out.contains("results.transversals.count,3\n"));
    }

    #[test]
    fn exclude_cells() {
        let r = results(&["encode", "square", "--cayley", "3", "--exclude", "0,0;1,2"]);
        assert_eq!(r["hypergraph"]["edge_count"], 7);
        assert_eq!(run_args(&["encode", "square", "--cayley", "3", "--exclude", "0"]).0, EXIT_USAGE);
    }

    #[test]
    fn colorings_direct_agree() {
        let r = results(&["count", "colorings", "--kdd", "3", "--q", "3", "--direct"]);
        assert_eq!(r["colorings"]["count"], "12");
        assert_eq!(r["agree"], true);
    }
}
