//! Graph file formats.
//!
//! Edge list:
//!
//! ```text
//! n 4 undirected
//! 0 1
//! 1 2
//! ```
//!
//! The header names the node count and `directed` or `undirected`; each
//! following line is a `j i` pair meaning `j` influences `i`. Undirected
//! files list every edge once with `j < i`. Blank lines and lines starting
//! with `#` are skipped when reading.
//!
//! JSON: `{"n":4,"directed":false,"edges":[[0,1],[1,2]]}` with the same edge
//! listing rule.
//!
//! Both writers are canonical (sorted edges, fixed spacing, trailing newline),
//! so reading and re-writing a canonical file reproduces it byte for byte.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DiGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Json,
}

impl GraphFormat {
    /// `.json` selects JSON, anything else the edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => GraphFormat::Json,
            _ => GraphFormat::EdgeList,
        }
    }

    pub fn parse_name(name: &str) -> Result<Self> {
        match name {
            "edgelist" | "edge-list" | "txt" => Ok(GraphFormat::EdgeList),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::invalid(format!("unknown graph format {other:?}"))),
        }
    }
}

/// Serde form of the JSON graph document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub directed: bool,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDoc {
    pub fn from_graph(g: &DiGraph) -> Self {
        GraphDoc {
            n: g.n(),
            directed: g.is_directed(),
            edges: listed_edges(g).map(|(j, i)| [j, i]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<DiGraph> {
        DiGraph::from_edges(self.n, self.directed, self.edges.iter().map(|e| (e[0], e[1])))
    }
}

fn listed_edges(g: &DiGraph) -> Box<dyn Iterator<Item = (usize, usize)> + '_> {
    if g.is_directed() {
        Box::new(g.edges())
    } else {
        Box::new(g.undirected_edges())
    }
}

pub fn emit_edge_list(g: &DiGraph) -> String {
    let kind = if g.is_directed() { "directed" } else { "undirected" };
    let mut out = format!("n {} {kind}\n", g.n());
    for (j, i) in listed_edges(g) {
        out.push_str(&format!("{j} {i}\n"));
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<DiGraph> {
    let mut header: Option<(usize, bool)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_err = |msg: String| Error::Parse { line: line_no, msg };
        match header {
            None => {
                let [tag, count, kind] = tokens[..] else {
                    return Err(parse_err("expected header `n <count> directed|undirected`".into()));
                };
                if tag != "n" {
                    return Err(parse_err(format!("expected header tag `n`, found {tag:?}")));
                }
                let n = count
                    .parse::<usize>()
                    .map_err(|e| parse_err(format!("bad node count {count:?}: {e}")))?;
                let directed = match kind {
                    "directed" => true,
                    "undirected" => false,
                    other => return Err(parse_err(format!("unknown graph kind {other:?}"))),
                };
                header = Some((n, directed));
            }
            Some(_) => {
                let [a, b] = tokens[..] else {
                    return Err(parse_err(format!("expected `j i`, found {line:?}")));
                };
                let j = a.parse::<usize>().map_err(|e| parse_err(format!("bad node id {a:?}: {e}")))?;
                let i = b.parse::<usize>().map_err(|e| parse_err(format!("bad node id {b:?}: {e}")))?;
                edges.push((j, i));
            }
        }
    }
    let (n, directed) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    DiGraph::from_edges(n, directed, edges)
}

pub fn emit_json(g: &DiGraph) -> String {
    let mut out = serde_json::to_string(&GraphDoc::from_graph(g)).expect("graph doc serializes");
    out.push('\n');
    out
}

pub fn parse_json(text: &str) -> Result<DiGraph> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    doc.to_graph()
}

pub fn emit(g: &DiGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => emit_edge_list(g),
        GraphFormat::Json => emit_json(g),
    }
}

/// Parses either format, sniffing JSON by a leading `{`.
pub fn parse_any(text: &str) -> Result<DiGraph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn read_graph(path: &Path) -> Result<DiGraph> {
    parse_any(&fs::read_to_string(path)?)
}

pub fn write_graph(path: &Path, g: &DiGraph, format: GraphFormat) -> Result<()> {
    write_atomic(path, emit(g, format).as_bytes())
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::invalid(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", file_name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
