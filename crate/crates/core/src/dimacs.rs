//! DIMACS edge-format reader and writer.
//!
//! Accepted lines: `c ...` comments, a single `p edge <n> <m>` (or `p col`)
//! problem line, and `e <u> <v>` edge lines with 1-based endpoints. Blank
//! lines are skipped. Repeated edges are collapsed and reported as warnings.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("no `p edge <n> <m>` problem line found")]
    MissingProblemLine,
    #[error("line {line}: second problem line (first at line {first})")]
    DuplicateProblemLine { line: usize, first: usize },
    #[error("line {line}: edge line appears before the problem line")]
    EdgeBeforeProblemLine { line: usize },
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: endpoint {endpoint} out of range 1..={n}")]
    EndpointOutOfRange {
        line: usize,
        endpoint: usize,
        n: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsWarning {
    /// Edge lines naming an already-seen pair, in either orientation.
    DuplicateEdges { count: usize },
    /// Declared edge count differs from the number of distinct edges read.
    EdgeCountMismatch { declared: usize, distinct: usize },
}

impl fmt::Display for DimacsWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimacsWarning::DuplicateEdges { count } => {
                write!(f, "{count} duplicate edge line(s) collapsed")
            }
            DimacsWarning::EdgeCountMismatch { declared, distinct } => write!(
                f,
                "problem line declares {declared} edges but {distinct} distinct edges were read"
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub warnings: Vec<DimacsWarning>,
}

pub fn parse_dimacs_str(text: &str) -> Result<ParsedGraph, DimacsError> {
    parse_dimacs(text.as_bytes())
}

pub fn read_dimacs_file(path: impl AsRef<Path>) -> Result<ParsedGraph, DimacsError> {
    let path = path.as_ref();
    let io_err = |source| DimacsError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::open(path).map_err(io_err)?;
    parse_dimacs(BufReader::new(file)).map_err(|e| match e {
        DimacsError::Io { source, .. } => io_err(source),
        other => other,
    })
}

pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<ParsedGraph, DimacsError> {
    // (line of the p line, n, declared m)
    let mut problem: Option<(usize, usize, usize)> = None;
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|source| DimacsError::Io {
            path: "<input>".to_string(),
            source,
        })?;
        let mut tokens = line.split_ascii_whitespace();
        let Some(kind) = tokens.next() else {
            continue;
        };
        match kind {
            "c" => {}
            "p" => {
                if let Some((first, _, _)) = problem {
                    return Err(DimacsError::DuplicateProblemLine {
                        line: lineno,
                        first,
                    });
                }
                let format = tokens.next();
                if !matches!(format, Some("edge") | Some("col")) {
                    return Err(malformed(lineno, "expected `p edge <n> <m>`"));
                }
                let n = number(tokens.next(), lineno, "vertex count")?;
                let m = number(tokens.next(), lineno, "edge count")?;
                if tokens.next().is_some() {
                    return Err(malformed(lineno, "trailing tokens after problem line"));
                }
                problem = Some((lineno, n, m));
                pairs.reserve(m);
            }
            "e" => {
                let Some((_, n, _)) = problem else {
                    return Err(DimacsError::EdgeBeforeProblemLine { line: lineno });
                };
                let u = number(tokens.next(), lineno, "edge endpoint")?;
                let v = number(tokens.next(), lineno, "edge endpoint")?;
                if tokens.next().is_some() {
                    return Err(malformed(lineno, "trailing tokens after edge"));
                }
                for endpoint in [u, v] {
                    if endpoint == 0 || endpoint > n {
                        return Err(DimacsError::EndpointOutOfRange {
                            line: lineno,
                            endpoint,
                            n,
                        });
                    }
                }
                if u == v {
                    return Err(DimacsError::SelfLoop {
                        line: lineno,
                        vertex: u,
                    });
                }
                pairs.push((u - 1, v - 1));
            }
            other => {
                return Err(malformed(lineno, &format!("unknown line type `{other}`")));
            }
        }
    }

    let (_, n, declared) = problem.ok_or(DimacsError::MissingProblemLine)?;
    let graph = Graph::new(n, pairs).expect("endpoints and self-loops validated per line");
    let mut warnings = Vec::new();
    if graph.duplicates_dropped() > 0 {
        warnings.push(DimacsWarning::DuplicateEdges {
            count: graph.duplicates_dropped(),
        });
    }
    if declared != graph.edge_count() {
        warnings.push(DimacsWarning::EdgeCountMismatch {
            declared,
            distinct: graph.edge_count(),
        });
    }
    Ok(ParsedGraph { graph, warnings })
}

fn malformed(line: usize, reason: &str) -> DimacsError {
    DimacsError::Malformed {
        line,
        reason: reason.to_string(),
    }
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize, DimacsError> {
    let token = token.ok_or_else(|| malformed(line, &format!("missing {what}")))?;
    token.parse().map_err(|_| {
        malformed(
            line,
            &format!("{what} `{token}` is not a non-negative integer"),
        )
    })
}

/// Writes `g` in DIMACS edge format with 1-based ids.
pub fn write_dimacs<W: Write>(g: &Graph, comment: Option<&str>, mut out: W) -> io::Result<()> {
    if let Some(comment) = comment {
        for line in comment.lines() {
            writeln!(out, "c {line}")?;
        }
    }
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count())?;
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn to_dimacs_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_dimacs(g, None, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}
