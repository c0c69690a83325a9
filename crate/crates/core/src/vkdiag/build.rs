use super::{twin, Dart, Diagram, DiagramEdge, Face};
use crate::error::{Error, Result};
use crate::freeprod::Letter;

/// Grows a diagram by attaching faces and spurs in the outer face.
///
/// Positions on the boundary are corners: corner `i` sits before boundary
/// dart `i`, and corner `len` is the base corner reached at the end of the
/// walk.
#[derive(Clone, Debug)]
pub struct DiagramBuilder {
    d: Diagram,
}

impl Default for DiagramBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl DiagramBuilder {
    pub fn new() -> Self {
        DiagramBuilder { d: Diagram::trivial() }
    }

    pub fn diagram(&self) -> &Diagram {
        &self.d
    }

    pub fn finish(self) -> Diagram {
        self.d
    }

    pub fn boundary_len(&self) -> usize {
        self.d.boundary.len()
    }

    pub fn corner_vertex(&self, i: usize) -> usize {
        let b = &self.d.boundary;
        if b.is_empty() {
            self.d.base
        } else {
            self.d.tail(b[i % b.len()])
        }
    }

    fn new_vertex(&mut self) -> usize {
        self.d.rotation.push(Vec::new());
        self.d.num_vertices += 1;
        self.d.num_vertices - 1
    }

    /// Dart reading `l` from `u` to `v`.
    fn new_edge(&mut self, u: usize, v: usize, l: Letter) -> Dart {
        self.d.edges.push(DiagramEdge { u, v, label: l });
        2 * (self.d.edges.len() - 1)
    }

    fn insert_after(&mut self, v: usize, anchor: Dart, d: Dart) {
        let r = &mut self.d.rotation[v];
        let i = r.iter().position(|&x| x == anchor).expect("anchor at vertex");
        r.insert(i + 1, d);
    }

    fn insert_before(&mut self, v: usize, anchor: Dart, d: Dart) {
        let r = &mut self.d.rotation[v];
        let i = r.iter().position(|&x| x == anchor).expect("anchor at vertex");
        r.insert(i, d);
    }

    /// Darts leaving and entering corner `i`.
    fn corner(&self, i: usize) -> (Dart, Dart) {
        let b = &self.d.boundary;
        let n = b.len();
        (b[i % n], b[(i + n - 1) % n])
    }

    /// Hang an edge reading `l` at corner `i`. The walk then goes out along
    /// it and straight back.
    pub fn attach_spur(&mut self, i: usize, l: Letter) -> Result<()> {
        let n = self.boundary_len();
        if i > n {
            return Err(Error::InvalidInput(format!("corner {i} beyond boundary length {n}")));
        }
        let c = self.corner_vertex(i);
        let t = self.new_vertex();
        let d = self.new_edge(c, t, l);
        if n == 0 {
            self.d.rotation[c].push(d);
        } else {
            let (out, _) = self.corner(i);
            self.insert_after(c, out, d);
        }
        self.d.rotation[t].push(twin(d));
        self.d.boundary.splice(i..i, [d, twin(d)]);
        Ok(())
    }

    /// Add a face bounded by the boundary segment `[i, j)` and a new path
    /// reading `path` from corner `i` to corner `j` through the outer face.
    /// With `i == j` the face hangs at a single corner. Returns the face
    /// index.
    pub fn attach_face(&mut self, i: usize, j: usize, path: &[Letter], trivial: bool) -> Result<usize> {
        let n = self.boundary_len();
        if i > j || j > n {
            return Err(Error::InvalidInput(format!("segment [{i}, {j}) outside boundary of length {n}")));
        }
        if path.is_empty() {
            return Err(Error::InvalidInput("attaching path must be non-empty".into()));
        }
        let p = self.corner_vertex(i);
        let q = if j == n { self.d.base } else { self.corner_vertex(j) };
        let mut darts = Vec::with_capacity(path.len());
        let mut x = p;
        for (k, &l) in path.iter().enumerate() {
            let y = if k + 1 == path.len() { q } else { self.new_vertex() };
            let d = self.new_edge(x, y, l);
            if k > 0 {
                self.d.rotation[x].push(d);
            }
            if k + 1 < path.len() {
                self.d.rotation[y].push(twin(d));
            }
            darts.push(d);
            x = y;
        }
        let (first, last) = (darts[0], twin(*darts.last().unwrap()));
        if n == 0 {
            self.d.rotation[p].extend([last, first]);
        } else if i == j {
            let (out, inn) = self.corner(i);
            self.insert_after(p, out, last);
            self.insert_before(p, twin(inn), first);
        } else {
            let (out_i, _) = self.corner(i);
            let (_, in_j) = self.corner(j);
            self.insert_after(p, out_i, first);
            self.insert_before(q, twin(in_j), last);
        }
        let mut face: Vec<Dart> = self.d.boundary[i..j].to_vec();
        face.extend(darts.iter().rev().map(|&d| twin(d)));
        self.d.faces.push(Face { darts: face, trivial });
        self.d.boundary.splice(i..j, darts);
        Ok(self.d.faces.len() - 1)
    }
}
