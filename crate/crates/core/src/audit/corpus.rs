use std::collections::HashMap;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use super::{audit_graph, AuditConfig, AuditError, AuditRecord, Exact};
use crate::graph::{
    complete_bipartite, cycle, gk_gadget, parse_graph6, path, petersen, random_graph_with, robertson, Graph,
    RandomGraphParams,
};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub line: usize,
    pub source: String,
    pub graph: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

/// Reads one graph per line: a graph6 string, or a generator spec such as
/// `gk:k=2` or `random:n=12,delta=3,girth=5,seed=7`. Blank lines and lines
/// starting with `#` are skipped. Line numbers start at 1.
pub fn parse_corpus(text: &str) -> (Vec<CorpusEntry>, Vec<LineError>) {
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = if line.contains(':') {
            parse_generator_spec(line).map_err(|e| e.to_string())
        } else {
            parse_graph6(line).map_err(|e| e.to_string())
        };
        match parsed {
            Ok(graph) => entries.push(CorpusEntry {
                line: i + 1,
                source: line.to_string(),
                graph,
            }),
            Err(message) => errors.push(LineError { line: i + 1, message }),
        }
    }
    (entries, errors)
}

/// Builds a graph from `family:key=value,...`.
pub fn parse_generator_spec(spec: &str) -> Result<Graph, AuditError> {
    let fail = |message: String| AuditError::Spec {
        spec: spec.to_string(),
        message,
    };
    let (family, rest) = spec.split_once(':').ok_or_else(|| fail("missing ':'".into()))?;
    let mut args: HashMap<&str, &str> = HashMap::new();
    for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| fail(format!("expected key=value, found {part:?}")))?;
        args.insert(k.trim(), v.trim());
    }
    let num = |key: &str| -> Result<u64, AuditError> {
        args.get(key)
            .ok_or_else(|| fail(format!("missing {key}")))?
            .parse()
            .map_err(|_| fail(format!("{key} is not a non-negative integer")))
    };
    let opt = |key: &str| -> Result<Option<u64>, AuditError> {
        if args.contains_key(key) {
            num(key).map(Some)
        } else {
            Ok(None)
        }
    };
    let graph_err = |e: crate::graph::GraphError| fail(e.to_string());
    Ok(match family.trim() {
        "gk" => gk_gadget(num("k")? as usize).map_err(graph_err)?,
        "kdr" => complete_bipartite(num("a")? as usize, num("b")? as usize).map_err(graph_err)?,
        "path" => path(num("n")? as usize),
        "cycle" => cycle(num("n")? as usize),
        "empty" => Graph::empty(num("n")? as usize),
        "petersen" => petersen(),
        "robertson" => robertson(),
        "random" => {
            let mut params = RandomGraphParams::new(
                num("n")? as usize,
                num("delta")? as usize,
                opt("girth")?.map(|g| g as usize),
            );
            if let Some(t) = opt("edges")? {
                params = params.edges(t as usize);
            }
            if opt("connected")?.unwrap_or(0) != 0 {
                params = params.connected();
            }
            random_graph_with(&params, opt("seed")?.unwrap_or(0)).map_err(|e| fail(e.to_string()))?
        }
        other => return Err(fail(format!("unknown family {other:?}"))),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub config: AuditConfig,
    pub strict: bool,
    pub records: Vec<AuditRecord>,
    pub errors: Vec<LineError>,
    pub violations: usize,
    /// graph6 of the first violating graph; the audit stops there.
    pub reproducer: Option<String>,
}

impl AuditReport {
    /// 0 clean, 1 violations, 2 input errors in strict mode.
    pub fn exit_code(&self) -> i32 {
        if self.strict && !self.errors.is_empty() {
            2
        } else if self.violations > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Result<String, AuditError> {
        serde_json::to_string_pretty(self).map_err(|e| AuditError::Output(e.to_string()))
    }

    pub fn to_csv(&self) -> Result<String, AuditError> {
        let out = |e: csv::Error| AuditError::Output(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "graph_id",
            "n",
            "m",
            "c",
            "maxdeg",
            "girth",
            "nu",
            "nu_ur",
            "nu_ac",
            "bound_thm1",
            "bound_thm2",
            "bound_thm3",
            "bound_mdelta2",
            "bound_nu_over_delta",
            "bound_ac_upper",
            "bound_subcubic",
            "thm1_equality",
            "is_extremal_family",
            "violations",
        ])
        .map_err(out)?;
        let exact = |e: Exact| e.known().map_or("unknown".to_string(), |v| v.to_string());
        let bound = |b: Option<Rational64>| b.map_or(String::new(), |r| r.to_string());
        for r in &self.records {
            w.write_record([
                r.graph_id.clone(),
                r.n.to_string(),
                r.m.to_string(),
                r.c.to_string(),
                r.max_degree.to_string(),
                r.girth.to_string(),
                exact(r.nu),
                exact(r.nu_ur),
                exact(r.nu_ac),
                bound(r.bound_thm1),
                bound(r.bound_thm2),
                bound(r.bound_thm3),
                bound(r.bound_mdelta2),
                bound(r.bound_nu_over_delta),
                bound(r.bound_ac_upper),
                bound(r.bound_subcubic),
                r.thm1_equality.map_or(String::new(), |b| b.to_string()),
                r.is_extremal_family.to_string(),
                r.violations.join("; "),
            ])
            .map_err(out)?;
        }
        let bytes = w.into_inner().map_err(|e| AuditError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| AuditError::Output(e.to_string()))
    }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

/// Audits graphs in parallel and assembles records in input order, up to
/// and including the first record with a violation.
pub fn audit_graphs(graphs: &[Graph], config: &AuditConfig, jobs: usize) -> AuditReport {
    let all: Vec<AuditRecord> = pool(jobs).install(|| graphs.par_iter().map(|g| audit_graph(g, config)).collect());
    let mut records = Vec::with_capacity(all.len());
    let mut reproducer = None;
    for r in all {
        let bad = !r.violations.is_empty();
        if bad {
            reproducer = Some(r.graph_id.clone());
        }
        records.push(r);
        if bad {
            break;
        }
    }
    AuditReport {
        config: *config,
        strict: false,
        violations: records.iter().map(|r| r.violations.len()).sum(),
        records,
        errors: Vec::new(),
        reproducer,
    }
}

/// Parses and audits a corpus. Unparseable lines are reported and skipped,
/// except under `strict`, where they stop the run before any graph is
/// audited.
pub fn audit_corpus(text: &str, config: &AuditConfig, strict: bool, jobs: usize) -> AuditReport {
    let (entries, errors) = parse_corpus(text);
    let graphs: Vec<Graph> = if strict && !errors.is_empty() {
        Vec::new()
    } else {
        entries.into_iter().map(|e| e.graph).collect()
    };
    let mut report = audit_graphs(&graphs, config, jobs);
    report.errors = errors;
    report.strict = strict;
    report
}
