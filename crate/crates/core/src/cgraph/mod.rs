//! Classifying graphs C_Q(O_D): vertices are conjugacy classes of level-D
//! Eichler orders, pairs of mutually reverse edges are classes of level-(D+Q)
//! orders, and edges inverted by a conjugation become half-edges.
//!
//! An edge order E'' is carried with an orientation: its first corner lies
//! on the source side at Q.

mod export;
mod figures;
mod iso;
mod valency;
mod verify;

pub use export::{export_graph, vertex_label, Format};
pub use figures::{check_figure, figure_graph, figure_setting, find_path, FigureCheck, FIGURES};
pub use iso::is_isomorphic;
pub use valency::sgraph_split_valency;
pub use verify::{
    count_nonsplit_classes, default_place, default_seeds, standard_places, theorem2_cases,
    verify_theorem2, ClassRecord,
    Expectation, Theorem2Report, VerificationReport,
};

use std::collections::VecDeque;

use log::{debug, info};

use crate::error::{Error, Result};
use crate::funcfield::{Divisor, Place};
use crate::lattices::{distance_divisor, tree_neighbors};
use crate::orders::{are_conjugate_with, is_split, ClassInvariant, EichlerOrder, SplitCertificate};

#[derive(Clone, Debug)]
pub struct Vertex {
    pub id: usize,
    pub invariant: ClassInvariant,
    pub representative: EichlerOrder,
    pub split: bool,
    pub certificate: SplitCertificate,
    /// Quotient distance from the nearest seed.
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub id: usize,
    pub src: usize,
    pub dst: usize,
    pub rev: usize,
    /// Level D+Q order oriented from `src`.
    pub representative: EichlerOrder,
    invariant: ClassInvariant,
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub vertex: usize,
    pub representative: EichlerOrder,
    /// Synthetic id, disjoint from vertex ids.
    pub endpoint: usize,
    invariant: ClassInvariant,
}

#[derive(Clone, Debug)]
pub struct GraphMeta {
    pub q: u8,
    pub level: Divisor,
    pub place: Place,
    pub depth: usize,
    pub seeds: Vec<EichlerOrder>,
}

#[derive(Clone, Debug)]
pub struct QuotientGraph {
    pub meta: GraphMeta,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub half_edges: Vec<HalfEdge>,
    /// Some vertex at the depth limit was left unexpanded.
    pub truncated: bool,
}

impl QuotientGraph {
    /// Ids of edges with source `v`.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.src == v)
    }

    pub fn half_edges_at(&self, v: usize) -> impl Iterator<Item = &HalfEdge> {
        self.half_edges.iter().filter(move |h| h.vertex == v)
    }

    /// Number of edge ends at `v`, half-edges counted once.
    pub fn valency(&self, v: usize) -> usize {
        self.out_edges(v).count() + self.half_edges_at(v).count()
    }

    /// Distinct neighbouring vertex ids of `v`, in edge order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for e in self.out_edges(v) {
            if !out.contains(&e.dst) {
                out.push(e.dst);
            }
        }
        out
    }

    /// Vertex whose class contains `e`, if any.
    pub fn find_class(&self, e: &EichlerOrder) -> Option<usize> {
        let inv = ClassInvariant::of(e);
        self.vertices
            .iter()
            .find(|v| v.invariant == inv && are_conjugate_with(e, &v.representative, None).is_some())
            .map(|v| v.id)
    }

    /// Checks r(r(e)) = e, s(r(e)) = t(e) and r(e) != e on every edge.
    pub fn check_axioms(&self) -> bool {
        self.edges.iter().all(|e| {
            let r = &self.edges[e.rev];
            e.rev != e.id && r.rev == e.id && r.src == e.dst && r.dst == e.src
        })
    }
}

/// The edge order between adjacent level-D orders `e` and `e2`, oriented
/// from `e`. Returns None unless they differ by one step at a single place.
pub fn edge_order(e: &EichlerOrder, e2: &EichlerOrder) -> Option<(EichlerOrder, Place)> {
    let l1 = e.corner_a().lattice();
    let g2 = e2.grid();
    for sigma in g2.sigmas() {
        let c = g2.corner(&sigma);
        let d = distance_divisor(l1, &c);
        let mut terms = d.terms();
        let (Some((p, 1)), None) = (terms.next(), terms.next()) else {
            continue;
        };
        let p = p.clone();
        let opp: Vec<bool> = sigma.iter().map(|x| !x).collect();
        let edge = EichlerOrder::new(l1, &g2.corner(&opp));
        if edge.level() == &(e.level() + &Divisor::place(e.q(), p.clone())) {
            return Some((edge, p));
        }
    }
    None
}

/// True if some conjugation swaps the Q-faces of the edge order `edge`.
fn inverts(edge: &EichlerOrder, place: &Place) -> bool {
    are_conjugate_with(edge, edge, Some((place, true))).is_some()
}

/// True iff some g conjugates the ordered pair (E, E2) to (E2, E).
pub fn detect_half_edge(e: &EichlerOrder, e2: &EichlerOrder) -> bool {
    match edge_order(e, e2) {
        Some((edge, p)) => inverts(&edge, &p),
        None => false,
    }
}

/// The level-D+Q edge orders leaving `e` at `place`, one per tree
/// neighbour of its first corner, paired with their far Q-face.
pub fn candidate_edges(e: &EichlerOrder, place: &Place) -> Vec<(EichlerOrder, EichlerOrder)> {
    let l1 = e.corner_a().lattice();
    let g = e.grid();
    let far = g.corner(&vec![true; g.places.len()]);
    tree_neighbors(l1, place)
        .into_iter()
        .map(|n| {
            let n2 = far.intersection(&n);
            (EichlerOrder::new(l1, &n2), EichlerOrder::new(&n, &n2))
        })
        .collect()
}

struct Builder<'a> {
    g: QuotientGraph,
    place: &'a Place,
    next_virtual: usize,
}

impl Builder<'_> {
    fn add_vertex(&mut self, rep: EichlerOrder, inv: ClassInvariant, depth: usize) -> usize {
        let id = self.g.vertices.len();
        let (split, _, certificate) = is_split(&rep);
        debug!("vertex {id} at depth {depth}, split = {split}");
        self.g.vertices.push(Vertex {
            id,
            invariant: inv,
            representative: rep,
            split,
            certificate,
            depth,
        });
        id
    }

    fn locate(&self, e: &EichlerOrder, inv: &ClassInvariant) -> Option<usize> {
        self.g
            .vertices
            .iter()
            .find(|v| &v.invariant == inv && are_conjugate_with(e, &v.representative, None).is_some())
            .map(|v| v.id)
    }

    /// True if `edge` (oriented from v) is already registered at v.
    fn known_at(&self, v: usize, edge: &EichlerOrder, inv: &ClassInvariant) -> bool {
        let c = Some((self.place, false));
        self.g
            .out_edges(v)
            .map(|e| (&e.representative, &e.invariant))
            .chain(self.g.half_edges_at(v).map(|h| (&h.representative, &h.invariant)))
            .any(|(r, i)| i == inv && are_conjugate_with(edge, r, c).is_some())
    }

    fn expand(&mut self, v: usize, max_depth: usize, queue: &mut VecDeque<usize>) {
        let rep = self.g.vertices[v].representative.clone();
        let depth = self.g.vertices[v].depth;
        for (edge, e2) in candidate_edges(&rep, self.place) {
            let inv = ClassInvariant::of(&edge);
            if self.known_at(v, &edge, &inv) {
                continue;
            }
            if inverts(&edge, self.place) {
                let endpoint = self.next_virtual;
                self.next_virtual += 1;
                debug!("half-edge at vertex {v}");
                self.g.half_edges.push(HalfEdge {
                    vertex: v,
                    representative: edge,
                    endpoint,
                    invariant: inv,
                });
                continue;
            }
            let inv2 = ClassInvariant::of(&e2);
            let w = match self.locate(&e2, &inv2) {
                Some(w) => w,
                None => {
                    debug_assert!(depth < max_depth);
                    let w = self.add_vertex(e2, inv2, depth + 1);
                    queue.push_back(w);
                    w
                }
            };
            let id = self.g.edges.len();
            let back = edge.reversed();
            self.g.edges.push(Edge {
                id,
                src: v,
                dst: w,
                rev: id + 1,
                representative: edge,
                invariant: inv.clone(),
            });
            self.g.edges.push(Edge {
                id: id + 1,
                src: w,
                dst: v,
                rev: id,
                representative: back,
                invariant: inv,
            });
        }
    }
}

/// Breadth-first construction of a window of C_Q(O_D) around the seeds.
/// Vertices closer than `depth` to a seed are expanded.
pub fn build_cgraph(
    level: &Divisor,
    place: &Place,
    depth: usize,
    seeds: &[EichlerOrder],
) -> Result<QuotientGraph> {
    let q = level.q();
    if !level.is_effective() {
        return Err(Error::NotEffective(level.to_string()));
    }
    if level.coeff(place) != 0 {
        return Err(Error::PlaceInLevel {
            level: level.to_string(),
            place: place.to_string(),
        });
    }
    for s in seeds {
        if s.q() != q {
            return Err(Error::FieldMismatch(s.q(), q));
        }
        if s.level() != level {
            return Err(Error::SeedLevel {
                found: s.level().to_string(),
                expected: level.to_string(),
            });
        }
    }
    let mut b = Builder {
        g: QuotientGraph {
            meta: GraphMeta {
                q,
                level: level.clone(),
                place: place.clone(),
                depth,
                seeds: seeds.to_vec(),
            },
            vertices: Vec::new(),
            edges: Vec::new(),
            half_edges: Vec::new(),
            truncated: false,
        },
        place,
        next_virtual: 0,
    };
    let mut queue = VecDeque::new();
    for s in seeds {
        let inv = ClassInvariant::of(s);
        if b.locate(s, &inv).is_none() {
            let v = b.add_vertex(s.clone(), inv, 0);
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        if b.g.vertices[v].depth >= depth {
            b.g.truncated = true;
            continue;
        }
        b.expand(v, depth, &mut queue);
    }
    let n = b.g.vertices.len();
    for h in &mut b.g.half_edges {
        h.endpoint += n;
    }
    info!(
        "classifying graph: {} vertices, {} edges, {} half-edges",
        n,
        b.g.edges.len() / 2,
        b.g.half_edges.len()
    );
    Ok(b.g)
}
