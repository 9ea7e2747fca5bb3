use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: invalid edge")]
    Graph { line: usize, source: GraphError },
    #[error("header announces {expected} edges but {found} were given")]
    CountMismatch { expected: usize, found: usize },
}

fn pair(line: &str, number: usize) -> Result<(usize, usize), EdgeListError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, EdgeListError> {
        it.next()
            .ok_or_else(|| EdgeListError::Syntax {
                line: number,
                message: "expected two integers".into(),
            })?
            .parse()
            .map_err(|_| EdgeListError::Syntax {
                line: number,
                message: format!("not a non-negative integer in {line:?}"),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(EdgeListError::Syntax {
            line: number,
            message: "more than two fields".into(),
        });
    }
    Ok((a, b))
}

/// Parses `n m` followed by `m` lines `u v`. Blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or(EdgeListError::Syntax {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    let (n, m) = pair(header, header_line)?;

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut found = 0;
    for (number, line) in lines {
        let (u, v) = pair(line, number)?;
        let wrap = |source| EdgeListError::Graph { line: number, source };
        for x in [u, v] {
            if x >= n {
                return Err(wrap(GraphError::VertexOutOfRange { vertex: x, order: n }));
            }
        }
        let e = super::Edge::try_new(u, v).map_err(wrap)?;
        if adjacency[u].contains(&v) {
            return Err(wrap(GraphError::DuplicateEdge(e)));
        }
        adjacency[u].push(v);
        adjacency[v].push(u);
        found += 1;
    }
    if found != m {
        return Err(EdgeListError::CountMismatch { expected: m, found });
    }
    Ok(Graph::from_edge_set(
        n,
        adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| super::Edge::new(u, v)))
            .collect::<Vec<_>>(),
    ))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.low(), e.high()));
    }
    out
}
