//! `urmatch`: exact solvers, certified constructions and bound audits for
//! uniquely restricted and acyclic matchings.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use urmatch::audit::{
    audit_corpus, conjecture1_scan, conjecture2_scan, stats_to_csv, trend, AuditConfig, Conjecture1Config,
};
use urmatch::constructive::{
    construct_theorem1_with, construct_theorem2_with, construct_theorem3_with, strip_isolated, ConstructOptions,
};
use urmatch::graph::{
    complete_bipartite, degree_sorted_connected_graphs, gk_gadget, parse_edge_list, parse_graph6, random_graph_with,
    write_graph6, Edge, Graph, RandomGraphParams,
};
use urmatch::matching::{is_acyclic_matching, is_uniquely_restricted_fast, is_uniquely_restricted_oracle, Matching};
use urmatch::solvers::{solve, Objective, DEFAULT_BUDGET};
use urmatch::Rational64;

#[derive(Parser)]
#[command(name = "urmatch", version, about = "Uniquely restricted and acyclic matchings")]
struct Cli {
    /// Output format; csv applies to audit and conjecture reports.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Nu,
    #[value(name = "nu_ur", alias = "nu-ur")]
    NuUr,
    #[value(name = "nu_ac", alias = "nu-ac")]
    NuAc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Ur,
    Acyclic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Kdr,
    Gk,
    Random,
    /// One connected graph on `n` vertices per isomorphism class (n ≤ 7).
    Connected,
}

#[derive(Subcommand)]
enum Command {
    /// Exact matching number with a witness.
    Solve {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Checks a matching for the uniquely restricted or acyclic property.
    Verify {
        #[arg(long, value_name = "FILE")]
        matching: String,
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        #[arg(long, value_enum)]
        check: Check,
        /// Use the exhaustive definition instead of the cycle search.
        #[arg(long)]
        oracle: bool,
    },
    /// Builds a certified uniquely restricted matching and its trace.
    Construct {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        /// Degree parameter; defaults to the maximum degree (at least 4 for
        /// theorem 3).
        #[arg(long)]
        delta: Option<usize>,
        /// Drop isolated vertices first (theorem 1); the bound is reported
        /// for the remaining graph.
        #[arg(long)]
        strip_isolated: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Prints graphs as graph6 lines.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        girth: Option<usize>,
        /// Number of edges to reach (random family).
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long)]
        connected: bool,
        /// Number of random graphs, using seeds S, S+1, ...
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, env = "URMATCH_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Audits every graph of a corpus against the bounds.
    Audit {
        #[arg(long, value_name = "FILE|-")]
        corpus: String,
        #[arg(long, default_value_t = 14)]
        threshold: usize,
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Experimental scans of the two conjectures.
    Conjecture {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long, default_value_t = 3)]
        delta: usize,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,7")]
        girth_list: Vec<usize>,
        #[arg(long, default_value_t = 14)]
        threshold: usize,
        #[arg(long, env = "URMATCH_SEED", default_value_t = 0)]
        seed: u64,
    },
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// graph6 unless the first non-empty line has two fields.
fn read_graph(path: &str) -> Result<Graph> {
    let text = read_source(path)?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    if first.split_whitespace().count() > 1 {
        parse_edge_list(&text).with_context(|| format!("{path}: edge list"))
    } else {
        parse_graph6(first).with_context(|| format!("{path}: graph6"))
    }
}

/// A JSON array of `"u-v"` strings or whitespace-separated `u-v` tokens.
fn read_matching(path: &str, g: &Graph) -> Result<Matching> {
    let text = read_source(path)?;
    let edges: Vec<Edge> = if text.trim_start().starts_with('[') {
        serde_json::from_str(&text).with_context(|| format!("{path}: matching JSON"))?
    } else {
        text.split_whitespace()
            .map(|t| t.parse::<Edge>().map_err(|e| anyhow!("{path}: {t:?}: {e}")))
            .collect::<Result<_>>()?
    };
    Matching::new(g, edges).with_context(|| format!("{path}: not a matching of the graph"))
}

fn usage_error(message: &str) -> ! {
    Cli::command().error(ErrorKind::MissingRequiredArgument, message).exit()
}

fn emit(out: &mut impl Write, text: &str) -> Result<()> {
    writeln!(out, "{}", text.trim_end()).context("writing output")
}

fn run(cli: Cli) -> Result<u8> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let format = cli.format;
    if format == Format::Csv && !matches!(cli.command, Command::Audit { .. } | Command::Conjecture { .. }) {
        Cli::command()
            .error(
                ErrorKind::InvalidValue,
                "csv output is only available for audit and conjecture",
            )
            .exit();
    }
    match cli.command {
        Command::Solve { what, input, budget } => {
            let g = read_graph(&input)?;
            let objective = match what {
                What::Nu => Objective::Matching,
                What::NuUr => Objective::UniquelyRestricted,
                What::NuAc => Objective::Acyclic,
            };
            let r = solve(&g, objective, budget);
            if !r.optimal {
                eprintln!("budget of {budget} nodes exhausted; value is a lower bound");
            }
            match format {
                Format::Plain => emit(&mut out, &r.value.to_string())?,
                _ => emit(&mut out, &serde_json::to_string_pretty(&r)?)?,
            }
        }
        Command::Verify {
            matching,
            input,
            check,
            oracle,
        } => {
            let g = read_graph(&input)?;
            let m = read_matching(&matching, &g)?;
            let (result, witness) = match (check, oracle) {
                (Check::Ur, false) => {
                    let status = is_uniquely_restricted_fast(&g, &m)?;
                    (
                        status.is_uniquely_restricted(),
                        status.witness().map(|w| w.cycle.clone()),
                    )
                }
                (Check::Ur, true) => (is_uniquely_restricted_oracle(&g, &m)?, None),
                (Check::Acyclic, _) => (is_acyclic_matching(&g, &m)?, None),
            };
            match format {
                Format::Plain => emit(&mut out, &result.to_string())?,
                _ => emit(
                    &mut out,
                    &serde_json::to_string_pretty(&serde_json::json!({
                        "result": result,
                        "witness": witness,
                    }))?,
                )?,
            }
        }
        Command::Construct {
            theorem,
            input,
            delta,
            strip_isolated: strip,
            budget,
        } => {
            let g = read_graph(&input)?;
            let options = ConstructOptions {
                budget,
                ..ConstructOptions::default()
            };
            let trace = match theorem {
                1 => {
                    let (h, map) = if strip {
                        let (h, map) = strip_isolated(&g);
                        (h, Some(map))
                    } else {
                        (g.clone(), None)
                    };
                    let d = delta.unwrap_or(h.max_degree().max(1));
                    let t = construct_theorem1_with(&h, d, options)?;
                    match map {
                        Some(map) => t.map_vertices(|v| map.new_to_old[v]),
                        None => t,
                    }
                }
                2 => construct_theorem2_with(&g, options)?,
                _ => construct_theorem3_with(&g, delta.unwrap_or(g.max_degree().max(4)), options)?,
            };
            if !trace.guaranteed {
                eprintln!("a cubic base component exceeded the exact solver; the guarantee is not certified");
            }
            match format {
                Format::Plain => emit(&mut out, &trace.size().to_string())?,
                _ => emit(&mut out, &serde_json::to_string_pretty(&trace)?)?,
            }
        }
        Command::Generate {
            family,
            a,
            b,
            k,
            n,
            delta,
            girth,
            edges,
            connected,
            count,
            seed,
        } => {
            let need =
                |v: Option<usize>, flag: &str| v.unwrap_or_else(|| usage_error(&format!("--{flag} is required")));
            let graphs: Vec<Graph> = match family {
                Family::Kdr => vec![complete_bipartite(need(a, "a"), need(b, "b"))?],
                Family::Gk => vec![gk_gadget(need(k, "k"))?],
                Family::Connected => degree_sorted_connected_graphs(need(n, "n"))?,
                Family::Random => {
                    let mut params = RandomGraphParams::new(need(n, "n"), need(delta, "delta"), girth);
                    if let Some(t) = edges {
                        params = params.edges(t);
                    }
                    if connected {
                        params = params.connected();
                    }
                    (0..count as u64)
                        .map(|i| random_graph_with(&params, seed.wrapping_add(i)))
                        .collect::<Result<_, _>>()?
                }
            };
            for g in &graphs {
                emit(&mut out, &write_graph6(g)?)?;
            }
        }
        Command::Audit {
            corpus,
            threshold,
            strict,
            jobs,
            budget,
        } => {
            let text = read_source(&corpus)?;
            let config = AuditConfig {
                exact_threshold: threshold,
                budget,
                ..AuditConfig::default()
            };
            let report = audit_corpus(&text, &config, strict, jobs);
            for e in &report.errors {
                eprintln!("line {}: {}", e.line, e.message);
            }
            eprintln!(
                "audited {} graphs, {} violations, {} unreadable lines",
                report.records.len(),
                report.violations,
                report.errors.len()
            );
            if let Some(g6) = &report.reproducer {
                eprintln!("first violation: {g6}");
            }
            match format {
                Format::Csv => emit(&mut out, &report.to_csv()?)?,
                Format::Plain => emit(&mut out, &format!("{} {}", report.records.len(), report.violations))?,
                Format::Json => emit(&mut out, &report.to_json()?)?,
            }
            return Ok(report.exit_code() as u8);
        }
        Command::Conjecture {
            which,
            delta,
            n,
            samples,
            girth_list,
            threshold,
            seed,
        } => {
            let audit = AuditConfig {
                exact_threshold: threshold,
                ..AuditConfig::default()
            };
            let stats = if which == 1 {
                let config = Conjecture1Config {
                    audit,
                    ..Conjecture1Config::default()
                };
                vec![conjecture1_scan(delta, samples, n, seed, &config)?]
            } else {
                conjecture2_scan(delta, &girth_list, samples, n, seed, &audit)?
            };
            let direction = trend(&stats);
            match format {
                Format::Csv => emit(&mut out, &stats_to_csv(&stats)?)?,
                Format::Plain => {
                    for s in &stats {
                        let ratio = |r: Option<Rational64>| r.map_or("-".to_string(), |r| r.to_string());
                        emit(
                            &mut out,
                            &format!(
                                "girth>={} samples={} min={} mean={} counterexample={}",
                                s.girth_bucket,
                                s.samples,
                                ratio(s.min_ratio),
                                ratio(s.mean_ratio),
                                s.counterexample.as_deref().unwrap_or("none")
                            ),
                        )?;
                    }
                }
                Format::Json => emit(
                    &mut out,
                    &serde_json::to_string_pretty(&serde_json::json!({
                        "trend": direction,
                        "stats": stats,
                    }))?,
                )?,
            }
            if stats.iter().any(|s| s.counterexample.is_some()) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
