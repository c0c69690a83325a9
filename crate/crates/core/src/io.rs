//! JSON file formats: factor configs, relator graphs, presentations and
//! diagrams. Letters are written `i:sym`.

use serde::{Deserialize, Serialize};

use crate::dehn::Presentation;
use crate::error::{Error, Result};
use crate::frac::parse_frac;
use crate::freeprod::{FactorSpec, FreeProduct};
use crate::lgraph::{Edge, LabelledGraph};
use crate::vkdiag::{Diagram, DiagramEdge, Face};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorsConfig {
    pub factors: Vec<FactorSpec>,
}

impl FactorsConfig {
    pub fn free_product(&self) -> Result<FreeProduct> {
        if self.factors.is_empty() {
            return Err(Error::InvalidInput("factor list is empty".into()));
        }
        FreeProduct::from_specs(&self.factors)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: usize,
    pub v: usize,
    pub label: String,
    /// +1 reads `label` from u to v, -1 from v to u
    #[serde(default = "plus_one")]
    pub orient: i8,
}

fn plus_one() -> i8 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeJson>,
    /// optional, so a graph file can stand alone
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorSpec>>,
}

impl GraphJson {
    pub fn from_graph(g: &LabelledGraph, fp: &FreeProduct) -> Self {
        GraphJson {
            vertices: (0..g.num_vertices()).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeJson { u: e.u, v: e.v, label: fp.letter_name(e.label), orient: 1 })
                .collect(),
            factors: None,
        }
    }

    /// Vertex ids may be arbitrary; they are renumbered in listed order.
    pub fn to_graph(&self, fp: &FreeProduct) -> Result<LabelledGraph> {
        let mut index = std::collections::BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            if index.insert(v, i).is_some() {
                return Err(Error::Malformed(format!("vertex {v} listed twice")));
            }
        }
        let id = |v: usize| index.get(&v).copied().ok_or_else(|| Error::Malformed(format!("edge uses unknown vertex {v}")));
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let label = fp.parse_letter(&e.label)?;
            let (u, v) = match e.orient {
                1 => (id(e.u)?, id(e.v)?),
                -1 => (id(e.v)?, id(e.u)?),
                o => return Err(Error::Malformed(format!("orient must be +1 or -1, got {o}"))),
            };
            edges.push(Edge { u, v, label });
        }
        LabelledGraph::new(self.vertices.len(), edges, fp)
    }
}

/// Factors, relator graph and, when the generator produced it, its
/// certificate. A claimed λ is re-checked on load, never trusted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub factors: Vec<FactorSpec>,
    pub graph: GraphJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completion_radius: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            factors: p.fp.specs(),
            graph: GraphJson::from_graph(&p.graph, &p.fp),
            lambda: p.certified().map(|l| l.to_string()),
            completion_radius: None,
            certificate: None,
        }
    }

    /// Build the presentation and, if a λ is claimed, certify it again.
    /// A failed re-check leaves the presentation uncertified.
    pub fn load(&self) -> Result<Presentation> {
        let fp = FactorsConfig { factors: self.factors.clone() }.free_product()?;
        let g = self.graph.to_graph(&fp)?;
        let mut p = Presentation::new(fp, g)?;
        if let Some(l) = &self.lambda {
            let lambda = parse_frac(l)?;
            let radius = self
                .completion_radius
                .unwrap_or_else(|| crate::lgraph::default_radius(lambda, p.graph_girth()));
            p.certify(lambda, radius)?;
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdgeJson {
    pub u: usize,
    pub v: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceJson {
    pub darts: Vec<usize>,
    pub trivial: bool,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub vertices: usize,
    pub base: usize,
    pub edges: Vec<DiagramEdgeJson>,
    /// outgoing darts per vertex, counterclockwise; dart 2e runs along
    /// edge e, 2e+1 against it
    pub rotation: Vec<Vec<usize>>,
    pub faces: Vec<FaceJson>,
    pub boundary: Vec<usize>,
    pub boundary_word: String,
}

impl DiagramJson {
    pub fn from_diagram(d: &Diagram, fp: &FreeProduct) -> Self {
        DiagramJson {
            vertices: d.num_vertices,
            base: d.base,
            edges: d.edges.iter().map(|e| DiagramEdgeJson { u: e.u, v: e.v, label: fp.letter_name(e.label) }).collect(),
            rotation: d.rotation.clone(),
            faces: d
                .faces
                .iter()
                .enumerate()
                .map(|(i, f)| FaceJson { darts: f.darts.clone(), trivial: f.trivial, label: fp.format_word(&d.face_word(i, fp)) })
                .collect(),
            boundary: d.boundary.clone(),
            boundary_word: fp.format_word(&d.boundary_word(fp)),
        }
    }

    pub fn to_diagram(&self, fp: &FreeProduct) -> Result<Diagram> {
        let edges = self
            .edges
            .iter()
            .map(|e| Ok(DiagramEdge { u: e.u, v: e.v, label: fp.parse_letter(&e.label)? }))
            .collect::<Result<Vec<_>>>()?;
        let d = Diagram {
            num_vertices: self.vertices,
            edges,
            rotation: self.rotation.clone(),
            faces: self.faces.iter().map(|f| Face { darts: f.darts.clone(), trivial: f.trivial }).collect(),
            boundary: self.boundary.clone(),
            base: self.base,
        };
        d.validate()?;
        Ok(d)
    }
}
