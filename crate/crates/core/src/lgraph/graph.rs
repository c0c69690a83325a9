use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freeprod::{FreeProduct, Letter, Word};

/// Directed edge: `2e` runs u→v along edge `e`, `2e+1` runs back.
pub type Dart = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: Letter,
}

#[derive(Clone, Debug)]
pub struct LabelledGraph {
    n: usize,
    edges: Vec<Edge>,
    out: Vec<Vec<Dart>>,
    letters: Vec<Letter>,
    codes: Vec<u32>,
}

impl LabelledGraph {
    /// Dart codes separate orientation from the group letter: traversing an
    /// edge labelled `s` backwards and traversing an `s⁻¹` edge forwards get
    /// the same code, and for an involution the two directions differ.
    pub fn new(n: usize, edges: Vec<Edge>, fp: &FreeProduct) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        let mut letters = Vec::with_capacity(2 * edges.len());
        let mut codes = Vec::with_capacity(2 * edges.len());
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::Malformed(format!("edge {i} uses a vertex outside 0..{n}")));
            }
            fp.check_letter(e.label)?;
            let inv = fp.inv_letter(e.label);
            let (pos, flip) = if inv.sym < e.label.sym { (inv, 1) } else { (e.label, 0) };
            let c = 2 * fp.code(pos) as u32;
            letters.push(e.label);
            letters.push(inv);
            codes.push(c + flip);
            codes.push(c + (1 - flip));
            out[e.u].push(2 * i);
            out[e.v].push(2 * i + 1);
        }
        Ok(LabelledGraph { n, edges, out, letters, codes })
    }

    /// Single oriented cycle reading `w` from vertex 0.
    pub fn cycle(w: &[Letter], fp: &FreeProduct) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidInput("cycle label must be non-empty".into()));
        }
        let n = w.len();
        let edges = w.iter().enumerate().map(|(i, &l)| Edge { u: i, v: (i + 1) % n, label: l }).collect();
        Self::new(n, edges, fp)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_darts(&self, v: usize) -> &[Dart] {
        &self.out[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len()
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

    pub fn letter(&self, d: Dart) -> Letter {
        self.letters[d]
    }

    pub fn code(&self, d: Dart) -> u32 {
        self.codes[d]
    }

    pub fn walk_label(&self, darts: &[Dart]) -> Word {
        darts.iter().map(|&d| self.letter(d)).collect()
    }

    /// Darts in cyclic order if the graph is one cycle through every vertex.
    pub fn as_single_cycle(&self) -> Option<Vec<Dart>> {
        if self.n == 0 || self.edges.len() != self.n || self.out.iter().any(|o| o.len() != 2) {
            return None;
        }
        let mut darts = Vec::with_capacity(self.n);
        let mut d = self.out[0].iter().copied().find(|&d| d % 2 == 0).unwrap_or(self.out[0][0]);
        let start = d;
        loop {
            darts.push(d);
            let v = self.head(d);
            let back = d ^ 1;
            let o = &self.out[v];
            let next = if o[0] == back { o[1] } else { o[0] };
            if next == start {
                break;
            }
            if darts.len() > self.n {
                return None;
            }
            d = next;
        }
        (darts.len() == self.n).then_some(darts)
    }

    /// Connected components as a vertex → component index map.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n];
        let mut k = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = k;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &d in &self.out[x] {
                    let y = self.head(d);
                    if comp[y] == usize::MAX {
                        comp[y] = k;
                        stack.push(y);
                    }
                }
            }
            k += 1;
        }
        (k, comp)
    }

    /// Is the edge a bridge? Computed for all edges at once.
    pub fn bridges(&self) -> Vec<bool> {
        let blocks = self.blocks();
        let mut count = vec![0usize; blocks.len()];
        let edge_block = self.edge_blocks_from(&blocks);
        for &b in &edge_block {
            count[b] += 1;
        }
        (0..self.edges.len())
            .map(|e| count[edge_block[e]] == 1 && self.edges[e].u != self.edges[e].v)
            .collect()
    }

    fn edge_blocks_from(&self, blocks: &[Vec<usize>]) -> Vec<usize> {
        let mut eb = vec![0; self.edges.len()];
        for (b, es) in blocks.iter().enumerate() {
            for &e in es {
                eb[e] = b;
            }
        }
        eb
    }

    /// Biconnected blocks as lists of edge indices (Tarjan, iterative).
    /// Self-loops form their own block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut blocks = Vec::new();
        let mut estack: Vec<usize> = Vec::new();
        let mut t = 0;
        for root in 0..self.n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = t;
            low[root] = t;
            t += 1;
            // frame: (vertex, parent edge, next out index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&(v, pe, i)) = stack.last() {
                if i < self.out[v].len() {
                    let d = self.out[v][i];
                    stack.last_mut().unwrap().2 += 1;
                    let e = d / 2;
                    if e == pe {
                        continue;
                    }
                    let w = self.head(d);
                    if w == v {
                        // both darts of a loop leave v
                        if d % 2 == 0 {
                            blocks.push(vec![e]);
                        }
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        estack.push(e);
                        disc[w] = t;
                        low[w] = t;
                        t += 1;
                        stack.push((w, e, 0));
                    } else if disc[w] < disc[v] {
                        estack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            let mut b = Vec::new();
                            while let Some(e) = estack.pop() {
                                b.push(e);
                                if e == pe {
                                    break;
                                }
                            }
                            b.sort_unstable();
                            blocks.push(b);
                        }
                    }
                }
            }
        }
        blocks
    }

    pub fn to_dot(&self, fp: &FreeProduct) -> String {
        let mut s = String::from("digraph G {\n");
        for v in 0..self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for e in &self.edges {
            s.push_str(&format!("  {} -> {} [label=\"{}\"];\n", e.u, e.v, fp.letter_name(e.label)));
        }
        s.push_str("}\n");
        s
    }
}
