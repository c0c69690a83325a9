use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{twin, Diagram, EdgeKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceGraph {
    pub faces: usize,
    pub adjacency: Vec<BTreeSet<usize>>,
    /// shared edges per adjacent pair `(a, b)`, `a < b`
    pub shared: BTreeMap<(usize, usize), Vec<usize>>,
}

impl FaceGraph {
    pub fn neighbours(&self, f: usize) -> usize {
        self.adjacency[f].len()
    }
}

/// Faces adjacent when they share an edge.
pub fn face_graph(d: &Diagram) -> FaceGraph {
    let f = d.face_of();
    let mut adjacency = vec![BTreeSet::new(); d.faces.len()];
    let mut shared: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in 0..d.edges.len() {
        if let (Some(a), Some(b)) = (f[2 * e], f[2 * e + 1]) {
            if a != b {
                adjacency[a].insert(b);
                adjacency[b].insert(a);
                shared.entry((a.min(b), a.max(b))).or_default().push(e);
            }
        }
    }
    FaceGraph { faces: d.faces.len(), adjacency, shared }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub closed: bool,
}

impl Arc {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Maximal paths of interior edges whose inner vertices have exactly two
/// edge ends and avoid the boundary.
pub fn interior_arcs(d: &Diagram) -> Vec<Arc> {
    let kinds = d.edge_kinds();
    let on_b = d.on_boundary();
    let through = |v: usize| d.rotation[v].len() == 2 && !on_b[v];
    let mut used = vec![false; d.edges.len()];
    let mut out = Vec::new();
    // walk from dart `s` onwards through pass-through vertices
    let extend = |s: usize, used: &mut Vec<bool>, darts: &mut Vec<usize>| {
        let mut x = s;
        loop {
            used[x / 2] = true;
            darts.push(x);
            let v = d.head(x);
            if !through(v) {
                return false;
            }
            let r = &d.rotation[v];
            let nx = if r[0] == twin(x) { r[1] } else { r[0] };
            if used[nx / 2] {
                return true;
            }
            x = nx;
        }
    };
    for e in 0..d.edges.len() {
        if used[e] || kinds[e] != EdgeKind::Interior {
            continue;
        }
        let mut fwd = Vec::new();
        let closed = extend(2 * e, &mut used, &mut fwd);
        let mut darts = Vec::new();
        if !closed {
            let mut back = Vec::new();
            if through(d.tail(2 * e)) {
                let r = &d.rotation[d.tail(2 * e)];
                let nx = if r[0] == 2 * e { r[1] } else { r[0] };
                if !used[nx / 2] {
                    extend(nx, &mut used, &mut back);
                }
            }
            darts.extend(back.iter().rev().map(|&x| twin(x)));
        }
        darts.extend(fwd);
        let mut vertices: Vec<usize> = darts.iter().map(|&x| d.tail(x)).collect();
        if !closed {
            vertices.push(d.head(*darts.last().unwrap()));
            if vertices[0] > *vertices.last().unwrap() {
                vertices.reverse();
                darts.reverse();
            }
        }
        let edges = darts.iter().map(|&x| x / 2).collect();
        out.push(Arc { vertices, edges, closed });
    }
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurvatureConvention {
    /// edges and vertex degrees as drawn; the second sum runs over
    /// boundary-free faces again
    RawEdges,
    /// degree-2 vertices suppressed, counts in maximal arcs; the second sum
    /// runs over faces with one boundary arc
    ContractedArcs,
}

impl std::str::FromStr for CurvatureConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw-edges" => Ok(Self::RawEdges),
            "contracted-arcs" => Ok(Self::ContractedArcs),
            _ => Err(Error::InvalidInput(format!("unknown curvature convention {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvatureTerms {
    pub convention: CurvatureConvention,
    /// Σ (3 - d(v))
    pub vertices: i64,
    pub first: i64,
    pub second: i64,
    /// Σ over k ≥ 2 of Σ ((6 - 2k) - i(B))
    pub rest: i64,
    pub total: i64,
}

/// Right-hand side of the curvature identity, expected to equal 6 for a
/// disc diagram under a correct convention.
pub fn curvature_rhs(d: &Diagram, conv: CurvatureConvention) -> Result<CurvatureTerms> {
    if !d.is_disc() {
        return Err(Error::Unsupported("curvature sums need a disc diagram".into()));
    }
    let kinds = d.edge_kinds();
    // vertices that stay after contraction, and their degrees
    let (kept, deg): (Vec<bool>, Vec<i64>) = match conv {
        CurvatureConvention::RawEdges => (vec![true; d.num_vertices], (0..d.num_vertices).map(|v| d.degree(v) as i64).collect()),
        CurvatureConvention::ContractedArcs => {
            let mut k: Vec<bool> = d.rotation.iter().map(|r| r.len() != 2).collect();
            if !k.contains(&true) {
                k[d.base] = true;
            }
            (k, d.rotation.iter().map(|r| r.len() as i64).collect())
        }
    };
    let vertices: i64 = (0..d.num_vertices).filter(|&v| kept[v]).map(|v| 3 - deg[v]).sum();
    let (mut first, mut second, mut rest) = (0i64, 0i64, 0i64);
    for face in &d.faces {
        let (mut e, mut i) = (0i64, 0i64);
        for &x in &face.darts {
            if conv == CurvatureConvention::ContractedArcs && !kept[d.tail(x)] {
                continue;
            }
            if kinds[x / 2] == EdgeKind::Interior {
                i += 1;
            } else {
                e += 1;
            }
        }
        match (conv, e) {
            (_, 0) => {
                first += 6 - i;
                if conv == CurvatureConvention::RawEdges {
                    second += 4 - i;
                }
            }
            (CurvatureConvention::ContractedArcs, 1) => second += 4 - i,
            (CurvatureConvention::RawEdges, 1) => {}
            (_, k) => rest += (6 - 2 * k) - i,
        }
    }
    Ok(CurvatureTerms { convention: conv, vertices, first, second, rest, total: vertices + first + second + rest })
}
