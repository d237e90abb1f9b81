use std::fmt::Write;

use serde::Serialize;

use crate::orders::{ClassInvariant, OrderJson};

use super::{QuotientGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Serialize)]
struct InvariantJson {
    level: String,
    shape: Vec<usize>,
    gaps: Vec<i64>,
    section_dim: usize,
    semisimple_dim: usize,
    parity: i64,
}

impl From<&ClassInvariant> for InvariantJson {
    fn from(i: &ClassInvariant) -> Self {
        InvariantJson {
            level: i.level.to_string(),
            shape: i.shape.clone(),
            gaps: i.gaps.clone(),
            section_dim: i.section_dim,
            semisimple_dim: i.semisimple_dim,
            parity: i.parity,
        }
    }
}

#[derive(Serialize)]
struct MetaJson {
    q: u8,
    #[serde(rename = "D")]
    level: String,
    #[serde(rename = "Q")]
    place: String,
    depth: usize,
    seeds: Vec<OrderJson>,
}

#[derive(Serialize)]
struct VertexJson {
    id: usize,
    invariant: InvariantJson,
    split: bool,
    representative: OrderJson,
}

#[derive(Serialize)]
struct EdgeJson {
    id: usize,
    src: usize,
    dst: usize,
    rev: usize,
    representative: OrderJson,
}

#[derive(Serialize)]
struct HalfEdgeJson {
    vertex: usize,
    representative: OrderJson,
}

#[derive(Serialize)]
struct GraphJson {
    meta: MetaJson,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
    half_edges: Vec<HalfEdgeJson>,
}

/// Short class label: `D_n` for maximal orders, otherwise the splitting
/// gaps at the grid corners.
pub fn vertex_label(v: &Vertex) -> String {
    let gaps = v.invariant.corner_gaps();
    let mut s = if v.invariant.shape.is_empty() {
        format!("D_{}", gaps[0])
    } else {
        let g: Vec<String> = gaps.iter().map(|x| x.to_string()).collect();
        format!("[{}]", g.join(" "))
    };
    if !v.split {
        s.push_str(" ns");
    }
    s
}

fn to_json(g: &QuotientGraph) -> String {
    let doc = GraphJson {
        meta: MetaJson {
            q: g.meta.q,
            level: g.meta.level.to_string(),
            place: g.meta.place.to_string(),
            depth: g.meta.depth,
            seeds: g.meta.seeds.iter().map(|s| s.to_json()).collect(),
        },
        vertices: g
            .vertices
            .iter()
            .map(|v| VertexJson {
                id: v.id,
                invariant: (&v.invariant).into(),
                split: v.split,
                representative: v.representative.to_json(),
            })
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeJson {
                id: e.id,
                src: e.src,
                dst: e.dst,
                rev: e.rev,
                representative: e.representative.to_json(),
            })
            .collect(),
        half_edges: g
            .half_edges
            .iter()
            .map(|h| HalfEdgeJson {
                vertex: h.vertex,
                representative: h.representative.to_json(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graph serializes");
    s.push('\n');
    s
}

/// Undirected rendering: one line per reverse pair, dashed lines to `*`
/// nodes for half-edges.
fn to_dot(g: &QuotientGraph) -> String {
    let mut s = String::new();
    let m = &g.meta;
    writeln!(s, "graph cgraph {{").unwrap();
    writeln!(s, "  label=\"q={} D={} Q={} depth={}\";", m.q, m.level, m.place, m.depth).unwrap();
    for v in &g.vertices {
        writeln!(s, "  v{} [label=\"{}\"];", v.id, vertex_label(v)).unwrap();
    }
    for e in g.edges.iter().filter(|e| e.id < e.rev) {
        writeln!(s, "  v{} -- v{};", e.src, e.dst).unwrap();
    }
    for h in &g.half_edges {
        writeln!(s, "  x{} [label=\"*\", shape=plaintext];", h.endpoint).unwrap();
        writeln!(s, "  v{} -- x{} [style=dashed];", h.vertex, h.endpoint).unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}

pub fn export_graph(g: &QuotientGraph, format: Format) -> String {
    match format {
        Format::Dot => to_dot(g),
        Format::Json => to_json(g),
    }
}
