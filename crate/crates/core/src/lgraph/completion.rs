use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use super::graph::{Edge, LabelledGraph};
use crate::error::{Error, Result};
use crate::freeprod::{Elem, FreeProduct, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexKey {
    /// A class of base vertices, named by its least member.
    Base(usize),
    Attached { factor: usize, component: usize, elem: Elem },
}

/// Two factor elements forced onto one vertex: the attached copy of the
/// factor's Cayley graph does not embed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collapse {
    pub factor: usize,
    pub vertex: usize,
    pub first: Elem,
    pub second: Elem,
}

#[derive(Clone, Debug)]
pub struct CompletionSlice {
    pub radius: usize,
    pub graph: LabelledGraph,
    pub base_vertex: Vec<usize>,
    pub base_edge: Vec<usize>,
    pub from_base: Vec<bool>,
    pub keys: Vec<VertexKey>,
    /// (factor, component, element) → slice vertex
    pub cells: BTreeMap<(usize, usize, Elem), usize>,
    pub collapses: Vec<Collapse>,
}

impl CompletionSlice {
    pub fn embedded(&self) -> bool {
        self.collapses.is_empty()
    }

    /// Nothing attached and nothing folded.
    pub fn is_trivial_extension(&self, base: &LabelledGraph) -> bool {
        self.graph.num_vertices() == base.num_vertices() && self.graph.num_edges() == base.num_edges()
    }
}

struct Uf(Vec<usize>);

impl Uf {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

/// Per factor: class → (component, element), plus collapses found.
type Assignment = Vec<BTreeMap<usize, (usize, Elem)>>;

fn assign(g: &LabelledGraph, fp: &FreeProduct, uf: &mut Uf) -> (Assignment, Vec<Collapse>) {
    let n = g.num_vertices();
    let nf = fp.num_factors();
    let mut adj: Vec<Vec<Vec<(usize, Letter)>>> = vec![vec![Vec::new(); n]; nf];
    for e in g.edges() {
        let (cu, cv) = (uf.find(e.u), uf.find(e.v));
        let f = e.label.factor as usize;
        adj[f][cu].push((cv, e.label));
        adj[f][cv].push((cu, fp.inv_letter(e.label)));
    }
    let mut out = vec![BTreeMap::new(); nf];
    let mut collapses = Vec::new();
    for f in 0..nf {
        let fo = fp.factor(f);
        let mut comp = 0;
        for s in 0..n {
            if uf.find(s) != s || adj[f][s].is_empty() || out[f].contains_key(&s) {
                continue;
            }
            out[f].insert(s, (comp, fo.identity()));
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                let gx = out[f][&x].1.clone();
                for &(y, l) in &adj[f][x] {
                    let gy = fo.multiply(&gx, fo.gen_elem(l.sym));
                    match out[f].get(&y) {
                        None => {
                            out[f].insert(y, (comp, gy));
                            q.push_back(y);
                        }
                        Some((_, old)) if *old != gy => {
                            if !collapses.iter().any(|c: &Collapse| c.factor == f && c.vertex == y) {
                                collapses.push(Collapse { factor: f, vertex: y, first: old.clone(), second: gy });
                            }
                        }
                        _ => {}
                    }
                }
            }
            comp += 1;
        }
    }
    (out, collapses)
}

/// Cap on factor-ball vertices over all attached copies.
pub const MAX_ATTACHED: usize = 2_000_000;

/// Attach radius-`radius` balls of each factor's Cayley graph along every
/// connected run of same-factor edges, folding vertices that the factor
/// structure forces together.
pub fn bounded_completion(g: &LabelledGraph, radius: usize, fp: &FreeProduct) -> Result<CompletionSlice> {
    if radius < 1 {
        return Err(Error::InvalidInput("completion radius must be at least 1".into()));
    }
    let n = g.num_vertices();
    let mut uf = Uf((0..n).collect());
    let (assignment, collapses) = loop {
        let (asg, col) = assign(g, fp, &mut uf);
        let mut changed = false;
        for per in &asg {
            let mut seen: HashMap<(usize, &Elem), usize> = HashMap::new();
            for (&cls, (comp, el)) in per {
                match seen.get(&(*comp, el)) {
                    Some(&other) => changed |= uf.union(other, cls),
                    None => {
                        seen.insert((*comp, el), cls);
                    }
                }
            }
        }
        if !changed {
            break (asg, col);
        }
    };

    let mut keys = Vec::new();
    let mut class_vertex = vec![usize::MAX; n];
    for v in 0..n {
        if uf.find(v) == v {
            class_vertex[v] = keys.len();
            keys.push(VertexKey::Base(v));
        }
    }
    let base_vertex: Vec<usize> = (0..n).map(|v| class_vertex[uf.find(v)]).collect();

    let mut cells: BTreeMap<(usize, usize, Elem), usize> = BTreeMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut from_base: Vec<bool> = Vec::new();
    // (factor, comp, tail elem, sym) or for involutions the unordered pair
    let mut edge_index: HashMap<(usize, usize, Elem, Elem, u16), usize> = HashMap::new();

    let mut attached = 0usize;
    for (f, per) in assignment.iter().enumerate() {
        let fo = fp.factor(f);
        let mut members: BTreeMap<usize, Vec<(Elem, usize)>> = BTreeMap::new();
        for (&cls, (comp, el)) in per {
            members.entry(*comp).or_default().push((el.clone(), class_vertex[cls]));
        }
        for (comp, mem) in members {
            let mut dist: HashMap<Elem, usize> = HashMap::new();
            let mut order: Vec<Elem> = Vec::new();
            let mut q = VecDeque::new();
            for (el, v) in &mem {
                if !dist.contains_key(el) {
                    dist.insert(el.clone(), 0);
                    order.push(el.clone());
                    q.push_back(el.clone());
                }
                cells.entry((f, comp, el.clone())).or_insert(*v);
            }
            while let Some(x) = q.pop_front() {
                let dx = dist[&x];
                if dx == radius {
                    continue;
                }
                for s in 0..fo.num_gens() as u16 {
                    let y = fo.multiply(&x, fo.gen_elem(s));
                    if !dist.contains_key(&y) {
                        attached += 1;
                        if attached > MAX_ATTACHED {
                            return Err(Error::DepthExceeded(format!(
                                "completion slice exceeds {MAX_ATTACHED} factor vertices at radius {radius}; lower the radius"
                            )));
                        }
                        dist.insert(y.clone(), dx + 1);
                        order.push(y.clone());
                        q.push_back(y);
                    }
                }
            }
            let pos: HashMap<&Elem, usize> = order.iter().enumerate().map(|(i, e)| (e, i)).collect();
            for el in &order {
                if !cells.contains_key(&(f, comp, el.clone())) {
                    cells.insert((f, comp, el.clone()), keys.len());
                    keys.push(VertexKey::Attached { factor: f, component: comp, elem: el.clone() });
                }
            }
            for x in &order {
                for s in 0..fo.num_gens() as u16 {
                    let is = fo.inv_sym(s);
                    if is < s {
                        continue;
                    }
                    let y = fo.multiply(x, fo.gen_elem(s));
                    if !dist.contains_key(&y) {
                        continue;
                    }
                    let key = if is == s {
                        if pos[&y] < pos[x] {
                            continue;
                        }
                        (f, comp, x.clone(), y.clone(), s)
                    } else {
                        (f, comp, x.clone(), Elem::Int(0), s)
                    };
                    edge_index.insert(key, edges.len());
                    edges.push(Edge { u: cells[&(f, comp, x.clone())], v: cells[&(f, comp, y)], label: Letter::new(f, s) });
                    from_base.push(false);
                }
            }
        }
    }

    let mut base_edge = Vec::with_capacity(g.num_edges());
    for e in g.edges() {
        let f = e.label.factor as usize;
        let fo = fp.factor(f);
        let (cu, cv) = (uf.find(e.u), uf.find(e.v));
        let (comp, gu) = assignment[f][&cu].clone();
        let gv = assignment[f][&cv].1.clone();
        let s = e.label.sym;
        let is = fo.inv_sym(s);
        let consistent = fo.multiply(&gu, fo.gen_elem(s)) == gv;
        let key = if !consistent {
            None
        } else if is == s {
            let (a, b) = if edge_index.contains_key(&(f, comp, gu.clone(), gv.clone(), s)) { (gu, gv) } else { (gv, gu) };
            Some((f, comp, a, b, s))
        } else if s < is {
            Some((f, comp, gu, Elem::Int(0), s))
        } else {
            Some((f, comp, gv, Elem::Int(0), is))
        };
        match key.and_then(|k| edge_index.get(&k).copied()) {
            Some(i) => {
                if !from_base[i] && is == s {
                    // keep the base orientation for involution edges
                    edges[i] = Edge { u: base_vertex[e.u], v: base_vertex[e.v], label: e.label };
                }
                from_base[i] = true;
                base_edge.push(i);
            }
            None => {
                base_edge.push(edges.len());
                edges.push(Edge { u: base_vertex[e.u], v: base_vertex[e.v], label: e.label });
                from_base.push(true);
            }
        }
    }
    // base edges first, in base order
    let mut perm: Vec<usize> = Vec::with_capacity(edges.len());
    let mut placed = vec![false; edges.len()];
    for i in base_edge.iter().copied().chain(0..edges.len()) {
        if !placed[i] {
            placed[i] = true;
            perm.push(i);
        }
    }
    let mut new_pos = vec![0; edges.len()];
    for (k, &i) in perm.iter().enumerate() {
        new_pos[i] = k;
    }
    let edges: Vec<Edge> = perm.iter().map(|&i| edges[i].clone()).collect();
    let from_base: Vec<bool> = perm.iter().map(|&i| from_base[i]).collect();
    let base_edge: Vec<usize> = base_edge.iter().map(|&i| new_pos[i]).collect();
    let graph = LabelledGraph::new(keys.len(), edges, fp)?;
    Ok(CompletionSlice { radius, graph, base_vertex, base_edge, from_base, keys, cells, collapses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeprod::{z2_cubed, FactorSpec};

    #[test]
    fn z_edge_becomes_segment() {
        let fp = FreeProduct::from_specs(&[FactorSpec::CyclicZ]).unwrap();
        let g = LabelledGraph::new(2, vec![Edge { u: 0, v: 1, label: Letter::new(0, 0) }], &fp).unwrap();
        let s = bounded_completion(&g, 2, &fp).unwrap();
        assert_eq!(s.graph.num_edges(), 5);
        assert_eq!(s.graph.num_vertices(), 6);
        assert!(s.graph.edges().iter().all(|e| e.label == Letter::new(0, 0)));
        assert!(s.embedded());
    }

    #[test]
    fn oversized_slice_is_refused() {
        let fp = FreeProduct::from_specs(&[FactorSpec::Free { rank: 3 }, FactorSpec::Free { rank: 3 }]).unwrap();
        let g = LabelledGraph::cycle(&fp.parse_word("0:a 1:a 0:b 1:b").unwrap(), &fp).unwrap();
        assert!(matches!(bounded_completion(&g, 12, &fp), Err(Error::DepthExceeded(_))));
        assert!(bounded_completion(&g, 3, &fp).is_ok());
    }

    #[test]
    fn z2_cycle_unchanged() {
        let fp = z2_cubed(2);
        let s_edge = LabelledGraph::new(2, vec![Edge { u: 0, v: 1, label: Letter::new(0, 0) }], &fp).unwrap();
        for r in 1..4 {
            let s = bounded_completion(&s_edge, r, &fp).unwrap();
            assert!(s.is_trivial_extension(&s_edge));
        }
        let g = LabelledGraph::cycle(&fp.parse_word("0:a 1:a 0:a 1:a").unwrap(), &fp).unwrap();
        let s = bounded_completion(&g, 1, &fp).unwrap();
        assert!(s.is_trivial_extension(&g));
        assert_eq!(s.graph.edges(), g.edges());
    }

    #[test]
    fn folding_identifies_same_label_neighbours() {
        let fp = FreeProduct::from_specs(&[FactorSpec::CyclicZ]).unwrap();
        let a = Letter::new(0, 0);
        // two a-edges leaving vertex 0
        let g = LabelledGraph::new(3, vec![Edge { u: 0, v: 1, label: a }, Edge { u: 0, v: 2, label: a }], &fp).unwrap();
        let s = bounded_completion(&g, 1, &fp).unwrap();
        assert_eq!(s.base_vertex[1], s.base_vertex[2]);
        assert_eq!(s.base_edge[0], s.base_edge[1]);
        assert!(s.embedded());
    }

    #[test]
    fn nontrivial_factor_loop_collapses() {
        let fp = FreeProduct::from_specs(&[FactorSpec::CyclicZ]).unwrap();
        let w = fp.parse_word("0:a 0:a 0:a").unwrap();
        let g = LabelledGraph::cycle(&w, &fp).unwrap();
        let s = bounded_completion(&g, 1, &fp).unwrap();
        assert!(!s.embedded());
        // a Z/3 triangle is a genuine Cayley graph and embeds
        let fp3 = FreeProduct::from_specs(&[FactorSpec::Cyclic { order: 3 }]).unwrap();
        let g3 = LabelledGraph::cycle(&fp3.parse_word("0:a 0:a 0:a").unwrap(), &fp3).unwrap();
        let s3 = bounded_completion(&g3, 2, &fp3).unwrap();
        assert!(s3.embedded());
        assert!(s3.is_trivial_extension(&g3));
    }

    #[test]
    fn monotone_in_radius() {
        let fp = FreeProduct::from_specs(&[FactorSpec::CyclicZ, FactorSpec::Free { rank: 2 }, FactorSpec::Cyclic { order: 5 }]).unwrap();
        let w = fp.parse_word("0:a 1:a 1:B 2:a 0:A 1:b 2:A 2:A").unwrap();
        let g = LabelledGraph::cycle(&w, &fp).unwrap();
        for r in 1..4 {
            let s1 = bounded_completion(&g, r, &fp).unwrap();
            let s2 = bounded_completion(&g, r + 1, &fp).unwrap();
            let vmap: Vec<usize> = s1
                .keys
                .iter()
                .map(|k| s2.keys.iter().position(|k2| k2 == k).expect("vertex survives"))
                .collect();
            for e in s1.graph.edges() {
                let img = Edge { u: vmap[e.u], v: vmap[e.v], label: e.label };
                assert!(s2.graph.edges().contains(&img));
            }
        }
    }
}
