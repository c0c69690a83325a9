//! Van Kampen diagrams over the completed relator graph, stored as planar
//! maps with a rotation system.
//!
//! Darts `2e` and `2e+1` traverse edge `e` forwards and backwards. Every
//! dart cycle of `phi` bounds the face on its left, so bounded faces run
//! counterclockwise and the outer walk runs clockwise.

mod analysis;
mod build;
mod checks;
mod render;
mod search;

pub use analysis::{curvature_rhs, face_graph, interior_arcs, Arc, CurvatureConvention, CurvatureTerms, FaceGraph};
pub use build::DiagramBuilder;
pub use checks::{
    check_bigon_structure, check_minimality_conditions, BigonFace, BigonReport, MinimalityReport, Violation,
};
pub use render::{to_dot, to_svg, tutte_layout};
pub use search::search_diagram;

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::dehn::Presentation;
use crate::error::{Error, Result};
use crate::freeprod::{is_factor_word, FreeProduct, Letter, Word};
use crate::lgraph::{canonical_cycle_label, Edge, LabelledGraph};

pub type Dart = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub u: usize,
    pub v: usize,
    pub label: Letter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub trivial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    Interior,
    Boundary,
    /// both sides on the outer face
    Spur,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub num_vertices: usize,
    pub edges: Vec<DiagramEdge>,
    /// outgoing darts per vertex, counterclockwise
    pub rotation: Vec<Vec<Dart>>,
    pub faces: Vec<Face>,
    /// outer walk from the base vertex; reads the boundary word
    pub boundary: Vec<Dart>,
    pub base: usize,
}

pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

impl Diagram {
    /// A single vertex.
    pub fn trivial() -> Self {
        Diagram { num_vertices: 1, edges: Vec::new(), rotation: vec![Vec::new()], faces: Vec::new(), boundary: Vec::new(), base: 0 }
    }

    pub fn num_darts(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn tail(&self, d: Dart) -> usize {
        let e = &self.edges[d / 2];
        if d % 2 == 0 {
            e.u
        } else {
            e.v
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(d ^ 1)
    }

    pub fn letter(&self, d: Dart, fp: &FreeProduct) -> Letter {
        let l = self.edges[d / 2].label;
        if d % 2 == 0 {
            l
        } else {
            fp.inv_letter(l)
        }
    }

    pub fn read(&self, darts: &[Dart], fp: &FreeProduct) -> Word {
        darts.iter().map(|&d| self.letter(d, fp)).collect()
    }

    pub fn boundary_word(&self, fp: &FreeProduct) -> Word {
        self.read(&self.boundary, fp)
    }

    pub fn face_word(&self, f: usize, fp: &FreeProduct) -> Word {
        self.read(&self.faces[f].darts, fp)
    }

    /// The underlying labelled graph, with the same dart numbering.
    pub fn graph(&self, fp: &FreeProduct) -> Result<LabelledGraph> {
        let edges = self.edges.iter().map(|e| Edge { u: e.u, v: e.v, label: e.label }).collect();
        LabelledGraph::new(self.num_vertices, edges, fp)
    }

    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.num_darts()];
        for r in &self.rotation {
            for (i, &d) in r.iter().enumerate() {
                if d < pos.len() {
                    pos[d] = i;
                }
            }
        }
        pos
    }

    /// Next dart along the face on the left of `d`.
    pub fn phi(&self, d: Dart) -> Dart {
        let v = self.head(d);
        let r = &self.rotation[v];
        let i = r.iter().position(|&x| x == twin(d)).expect("dart in rotation");
        r[(i + r.len() - 1) % r.len()]
    }

    /// All dart cycles of `phi`, each starting at its least dart.
    pub fn trace_cycles(&self) -> Vec<Vec<Dart>> {
        let pos = self.positions();
        let phi = |d: Dart| {
            let r = &self.rotation[self.head(d)];
            r[(pos[twin(d)] + r.len() - 1) % r.len()]
        };
        let mut seen = vec![false; self.num_darts()];
        let mut out = Vec::new();
        for s in 0..self.num_darts() {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                c.push(d);
                d = phi(d);
            }
            out.push(c);
        }
        out
    }

    /// Face index per dart; `None` for the outer face.
    pub fn face_of(&self) -> Vec<Option<usize>> {
        let mut f = vec![None; self.num_darts()];
        for (i, face) in self.faces.iter().enumerate() {
            for &d in &face.darts {
                f[d] = Some(i);
            }
        }
        f
    }

    pub fn edge_kinds(&self) -> Vec<EdgeKind> {
        let f = self.face_of();
        (0..self.edges.len())
            .map(|e| match (f[2 * e], f[2 * e + 1]) {
                (Some(_), Some(_)) => EdgeKind::Interior,
                (None, None) => EdgeKind::Spur,
                _ => EdgeKind::Boundary,
            })
            .collect()
    }

    pub fn on_boundary(&self) -> Vec<bool> {
        let mut b = vec![false; self.num_vertices];
        b[self.base] = true;
        for &d in &self.boundary {
            b[self.tail(d)] = true;
        }
        b
    }

    /// Number of distinct neighbours.
    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].iter().map(|&d| self.head(d)).filter(|&w| w != v).collect::<BTreeSet<_>>().len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Homeomorphic to a disc: at least one face, no spurs, and the outer
    /// walk passes each vertex once.
    pub fn is_disc(&self) -> bool {
        if self.faces.is_empty() || self.edge_kinds().contains(&EdgeKind::Spur) {
            return false;
        }
        let mut seen = BTreeSet::new();
        self.boundary.iter().all(|&d| seen.insert(self.tail(d)))
    }

    /// Combinatorial checks: rotation system, face cycles, Euler
    /// characteristic, edge incidences and trivial faces on the boundary.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        let n = self.num_vertices;
        if self.rotation.len() != n || self.base >= n.max(1) {
            return bad("rotation table does not match the vertex count".into());
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return bad(format!("edge {i} leaves the vertex range"));
            }
        }
        let mut count = vec![0u8; self.num_darts()];
        for (v, r) in self.rotation.iter().enumerate() {
            for &d in r {
                if d >= count.len() || self.tail(d) != v {
                    return bad(format!("rotation at {v} lists dart {d} not leaving it"));
                }
                count[d] += 1;
            }
        }
        if let Some(d) = count.iter().position(|&c| c != 1) {
            return bad(format!("dart {d} appears {} times in the rotation system", count[d]));
        }
        // connected
        let mut seen = vec![false; n];
        let mut q = VecDeque::from([self.base]);
        seen[self.base] = true;
        while let Some(v) = q.pop_front() {
            for &d in &self.rotation[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("diagram is not connected".into());
        }

        let norm = |c: &[Dart]| -> Vec<Dart> {
            if c.is_empty() {
                return Vec::new();
            }
            let i = (0..c.len()).min_by_key(|&i| c[i]).unwrap();
            c[i..].iter().chain(&c[..i]).copied().collect()
        };
        let traced: BTreeSet<Vec<Dart>> = self.trace_cycles().iter().map(|c| norm(c)).collect();
        let mut declared: BTreeSet<Vec<Dart>> = BTreeSet::new();
        for (i, f) in self.faces.iter().enumerate() {
            if f.darts.is_empty() || !declared.insert(norm(&f.darts)) {
                return bad(format!("face {i} is empty or repeated"));
            }
        }
        if self.edges.is_empty() {
            if !self.boundary.is_empty() || !self.faces.is_empty() || n != 1 {
                return bad("edgeless diagram must be a single vertex".into());
            }
        } else {
            if self.tail(self.boundary[0]) != self.base {
                return bad("boundary walk does not start at the base vertex".into());
            }
            if !declared.insert(norm(&self.boundary)) {
                return bad("boundary walk coincides with a face".into());
            }
        }
        if traced != declared {
            return bad(format!(
                "declared faces and boundary ({} cycles) differ from the traced face cycles ({})",
                declared.len(),
                traced.len()
            ));
        }
        if self.euler_characteristic() != 1 {
            return bad(format!("V - E + F = {}, expected 1", self.euler_characteristic()));
        }
        // each dart in exactly one cycle, so an edge lies on two faces
        // (interior), one face and the outer face, or the outer face twice
        let kinds = self.edge_kinds();
        let f = self.face_of();
        for (e, k) in kinds.iter().enumerate() {
            if *k == EdgeKind::Interior && f[2 * e] == f[2 * e + 1] {
                return bad(format!("interior edge {e} has the same face on both sides"));
            }
        }
        for (i, face) in self.faces.iter().enumerate() {
            if face.trivial && face.darts.iter().any(|&d| kinds[d / 2] == EdgeKind::Interior) {
                return bad(format!("trivial face {i} has an interior edge"));
            }
        }
        Ok(())
    }

    /// Face labels: non-trivial faces read a relator up to rotation and
    /// inversion in the free product, trivial faces read a factor word
    /// equal to 1 along a closed path without backtracking.
    pub fn validate_labels(&self, p: &Presentation) -> Result<()> {
        let fp = &p.fp;
        for (i, face) in self.faces.iter().enumerate() {
            let w = self.face_word(i, fp);
            if face.trivial {
                if !simple_factor_loop(&w, fp) {
                    return Err(Error::InvalidDiagram(format!(
                        "trivial face {i} reads {}, not a simple closed factor path",
                        fp.format_word(&w)
                    )));
                }
            } else if relator_of(&w, p).is_none() {
                return Err(Error::InvalidDiagram(format!("face {i} reads {}, not a relator", fp.format_word(&w))));
            }
        }
        Ok(())
    }

    pub fn validate_over(&self, p: &Presentation, w: &[Letter]) -> Result<()> {
        self.validate()?;
        self.validate_labels(p)?;
        let b = self.boundary_word(&p.fp);
        if b != w {
            return Err(Error::InvalidDiagram(format!(
                "boundary reads {}, expected {}",
                p.fp.format_word(&b),
                p.fp.format_word(w)
            )));
        }
        Ok(())
    }
}

/// Index of the relator that the cyclic word `w` represents.
pub fn relator_of(w: &[Letter], p: &Presentation) -> Option<usize> {
    let nf = p.fp.cyclic_reduce(w).ok()?;
    if nf.is_empty() {
        return None;
    }
    let c = canonical_cycle_label(&nf.spell(), &p.fp);
    p.relators().iter().position(|r| *r == c)
}

/// A factor word equal to 1 whose path in the factor Cayley graph visits
/// no vertex twice and is not a single backtrack.
pub fn simple_factor_loop(w: &[Letter], fp: &FreeProduct) -> bool {
    let Some(f) = is_factor_word(w) else { return false };
    if w.len() < 2 {
        return false;
    }
    if w.len() == 2 && w[1] == fp.inv_letter(w[0]) && !fp.is_involution(w[0]) {
        return false;
    }
    let g = fp.factor(f);
    let mut e = g.identity();
    let mut seen = BTreeSet::from([e.clone()]);
    for (i, l) in w.iter().enumerate() {
        e = g.multiply(&e, g.gen_elem(l.sym));
        if i + 1 < w.len() && !seen.insert(e.clone()) {
            return false;
        }
    }
    g.is_identity(&e)
}

#[cfg(test)]
mod tests;
