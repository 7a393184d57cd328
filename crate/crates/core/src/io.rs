//! File formats: rotation-system text, graph6 adjacency input, coloring
//! JSON, and machine-readable run reports.

use crate::graph::{GraphError, PlanarGraph, SimpleGraph};
use crate::solver::{class_of_color, PaletteColoring, PipelinePath};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("coloring file does not fit the graph: {0}")]
    ColoringMismatch(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the rotation-system text format: a vertex count line, then one
/// `v: n1 n2 ...` line per vertex listing its clockwise neighbors. Blank
/// lines and `#` comments are ignored.
pub fn parse_rot(text: &str) -> Result<PlanarGraph, IoError> {
    let mut rows: Vec<Option<Vec<usize>>> = Vec::new();
    let mut n: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(count) = n else {
            let parsed = content
                .parse::<usize>()
                .map_err(|_| parse_err(line, format!("expected vertex count, got {content:?}")))?;
            n = Some(parsed);
            rows = vec![None; parsed];
            continue;
        };
        let (head, tail) = content
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected `vertex: neighbors...`"))?;
        let v = head
            .trim()
            .parse::<usize>()
            .map_err(|_| parse_err(line, format!("bad vertex index {head:?}")))?;
        if v >= count {
            return Err(parse_err(line, format!("vertex {v} out of range (n = {count})")));
        }
        if rows[v].is_some() {
            return Err(parse_err(line, format!("vertex {v} listed twice")));
        }
        let mut nbrs = Vec::new();
        for tok in tail.split_whitespace() {
            let u = tok
                .parse::<usize>()
                .map_err(|_| parse_err(line, format!("bad neighbor {tok:?}")))?;
            if u >= count {
                return Err(parse_err(line, format!("neighbor {u} out of range (n = {count})")));
            }
            nbrs.push(u);
        }
        rows[v] = Some(nbrs);
    }
    let Some(count) = n else {
        return Err(parse_err(0, "empty input"));
    };
    let mut rot = Vec::with_capacity(count);
    for (v, row) in rows.into_iter().enumerate() {
        rot.push(row.ok_or_else(|| parse_err(0, format!("vertex {v} has no rotation line")))?);
    }
    Ok(PlanarGraph::from_rotation(rot)?)
}

/// Canonical rotation-system text for `g`; `parse_rot` inverts it.
pub fn write_rot(g: &PlanarGraph) -> String {
    let mut out = format!("{}\n", g.n());
    for v in 0..g.n() {
        let nbrs: Vec<String> = g.rotation(v).iter().map(|u| u.to_string()).collect();
        out.push_str(&format!("{}: {}\n", v, nbrs.join(" ")));
    }
    out
}

/// SHA-256 of the canonical rotation text, hex encoded. Identifies an
/// embedded graph in reports.
pub fn graph_hash(g: &PlanarGraph) -> String {
    hex::encode(Sha256::digest(write_rot(g).as_bytes()))
}

/// SHA-256 over the sorted edge list, hex encoded. Identifies an abstract
/// graph (graph6 input) in reports.
pub fn edge_list_hash(g: &SimpleGraph) -> String {
    let mut text = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        text.push_str(&format!("{u} {v}\n"));
    }
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Decodes the graph6 format (adjacency only, no embedding). Accepts the
/// optional `>>graph6<<` header.
pub fn parse_graph6(text: &str) -> Result<SimpleGraph, IoError> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(IoError::Graph6("empty input".into()));
    }
    let bad = |b: u8| IoError::Graph6(format!("byte {b} outside the printable range 63..=126"));
    let (n, mut pos) = match bytes[0] {
        126 => {
            if bytes.len() < 4 {
                return Err(IoError::Graph6("truncated vertex count".into()));
            }
            if bytes[1] == 126 {
                return Err(IoError::Graph6("graphs beyond 2^18 vertices unsupported".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                if !(63..=126).contains(&b) {
                    return Err(bad(b));
                }
                n = (n << 6) | (b - 63) as usize;
            }
            (n, 4)
        }
        b if (63..=125).contains(&b) => ((b - 63) as usize, 1),
        b => return Err(bad(b)),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if bytes.len() - pos < need {
        return Err(IoError::Graph6(format!(
            "need {need} adjacency bytes for n = {n}, got {}",
            bytes.len() - pos
        )));
    }
    let mut g = SimpleGraph::new(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let b = bytes[pos + bit / 6];
            if !(63..=126).contains(&b) {
                return Err(bad(b));
            }
            if (b - 63) >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    pos += need;
    if bytes.len() > pos {
        return Err(IoError::Graph6(format!(
            "{} trailing bytes after adjacency data",
            bytes.len() - pos
        )));
    }
    Ok(g)
}

/// One vertex's palette color in a coloring file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexColor {
    pub vertex: usize,
    pub class: String,
    pub color: u8,
}

/// A stored square coloring, bound to its graph by hash.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ColoringFile {
    pub graph_hash: String,
    pub n: usize,
    pub colors: Vec<VertexColor>,
}

impl ColoringFile {
    pub fn new(graph_hash: String, pal: &PaletteColoring) -> Self {
        let colors = (0..pal.n())
            .filter_map(|v| {
                pal.get(v).map(|c| VertexColor {
                    vertex: v,
                    class: match class_of_color(c) {
                        crate::precolor::Mark::Blue => "blue".into(),
                        _ => "red".into(),
                    },
                    color: c,
                })
            })
            .collect();
        ColoringFile {
            graph_hash,
            n: pal.n(),
            colors,
        }
    }

    /// Reconstructs the palette coloring, validating ranges and classes.
    pub fn to_coloring(&self) -> Result<PaletteColoring, IoError> {
        let mut pal = PaletteColoring::empty(self.n);
        for vc in &self.colors {
            if vc.vertex >= self.n {
                return Err(IoError::ColoringMismatch(format!(
                    "vertex {} out of range (n = {})",
                    vc.vertex, self.n
                )));
            }
            if !(1..=7).contains(&vc.color) {
                return Err(IoError::ColoringMismatch(format!(
                    "color {} out of range 1..=7",
                    vc.color
                )));
            }
            if pal.get(vc.vertex).is_some() {
                return Err(IoError::ColoringMismatch(format!(
                    "vertex {} colored twice",
                    vc.vertex
                )));
            }
            pal.set(vc.vertex, vc.color);
        }
        Ok(pal)
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct TimingsMs {
    pub total: u128,
    pub color: u128,
    pub verify: u128,
}

/// A self-contained record of one coloring run: holds the coloring and the
/// graph hash, so verification can be reproduced from the report alone.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub input: String,
    pub format: String,
    pub mode: String,
    pub n: usize,
    pub verified: bool,
    pub colors_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PipelinePath>,
    pub coloring: ColoringFile,
    pub timings_ms: TimingsMs,
}
