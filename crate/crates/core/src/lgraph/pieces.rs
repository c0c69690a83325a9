use serde::Serialize;

use super::graph::{Dart, LabelledGraph};
use super::suffix::{lcp_array, suffix_array};
use crate::freeprod::{Elem, FreeProduct, Word};

/// Two distinct label- and orientation-preserving immersions of one path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceWitness {
    pub label: Word,
    pub imm1: Vec<Dart>,
    pub imm2: Vec<Dart>,
}

impl PieceWitness {
    pub fn len(&self) -> usize {
        self.imm1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.imm1.is_empty()
    }
}

/// Longest piece of `g`; 0 and no witness when nothing repeats.
pub fn longest_piece(g: &LabelledGraph) -> (usize, Option<PieceWitness>) {
    if let Some(c) = g.as_single_cycle() {
        return cycle_longest_piece(g, &c);
    }
    let out = PieceSearch::new(g).run();
    (out.length, out.witness)
}

/// Longest piece of a single cycle through the doubled forward and
/// backward label sequences. Only rotations are compared, and a path on an
/// n-cycle has at most n-1 edges.
pub fn cycle_longest_piece(g: &LabelledGraph, darts: &[Dart]) -> (usize, Option<PieceWitness>) {
    let n = darts.len();
    if n < 2 {
        return (0, None);
    }
    let fwd: Vec<u32> = darts.iter().map(|&d| g.code(d)).collect();
    let bwd: Vec<u32> = (0..n).map(|j| g.code(darts[n - 1 - j] ^ 1)).collect();
    let sep = fwd.iter().chain(&bwd).copied().max().unwrap() + 1;
    let mut text = Vec::with_capacity(4 * n);
    text.extend_from_slice(&fwd);
    text.extend_from_slice(&fwd[..n - 1]);
    text.push(sep);
    let boff = text.len();
    text.extend_from_slice(&bwd);
    text.extend_from_slice(&bwd[..n - 1]);
    text.push(sep + 1);
    let canonical = |p: usize| p < n || (p >= boff && p < boff + n);
    let sa = suffix_array(&text);
    let lcp = lcp_array(&text, &sa);
    let mut best = (0usize, 0usize, 0usize);
    let mut last: Option<usize> = None;
    let mut run = usize::MAX;
    for t in 0..sa.len() {
        if t > 0 {
            run = run.min(lcp[t]);
        }
        if !canonical(sa[t]) {
            continue;
        }
        if let Some(p) = last {
            let len = run.min(n - 1);
            if len > best.0 {
                best = (len, p, sa[t]);
            }
        }
        last = Some(sa[t]);
        run = usize::MAX;
    }
    if best.0 == 0 {
        return (0, None);
    }
    let walk = |p: usize, len: usize| -> Vec<Dart> {
        if p < n {
            (0..len).map(|t| darts[(p + t) % n]).collect()
        } else {
            let j = p - boff;
            (0..len).map(|t| darts[(2 * n - 1 - j - t) % n] ^ 1).collect()
        }
    };
    let imm1 = walk(best.1, best.0);
    let imm2 = walk(best.2, best.0);
    (best.0, Some(PieceWitness { label: g.walk_label(&imm1), imm1, imm2 }))
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub length: usize,
    pub witness: Option<PieceWitness>,
    /// False when the node budget ran out before the search finished.
    pub complete: bool,
}

/// Exhaustive search over pairs of simple walks reading the same codes.
pub struct PieceSearch<'a> {
    g: &'a LabelledGraph,
    edge_block: Option<&'a [usize]>,
    block_ok: Option<&'a [bool]>,
    geodesic: Option<&'a FreeProduct>,
    budget: u64,
}

struct State {
    vis1: Vec<bool>,
    vis2: Vec<bool>,
    p1: Vec<Dart>,
    p2: Vec<Dart>,
    best: usize,
    witness: Option<(Vec<Dart>, Vec<Dart>)>,
    nodes: u64,
    by_code: Vec<Vec<Dart>>,
}

impl<'a> PieceSearch<'a> {
    pub fn new(g: &'a LabelledGraph) -> Self {
        PieceSearch { g, edge_block: None, block_ok: None, geodesic: None, budget: u64::MAX }
    }

    /// The first immersion must stay inside one block with `ok[block]`.
    pub fn restrict_first(mut self, edge_block: &'a [usize], ok: &'a [bool]) -> Self {
        self.edge_block = Some(edge_block);
        self.block_ok = Some(ok);
        self
    }

    /// Only locally geodesic labels: each factor run must be a geodesic word.
    pub fn locally_geodesic(mut self, fp: &'a FreeProduct) -> Self {
        self.geodesic = Some(fp);
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.budget = nodes;
        self
    }

    pub fn run(&self) -> SearchOutcome {
        let g = self.g;
        let nd = 2 * g.num_edges();
        let max_code = (0..nd).map(|d| g.code(d)).max().map_or(0, |c| c as usize + 1);
        let mut by_code = vec![Vec::new(); max_code];
        for d in 0..nd {
            by_code[g.code(d) as usize].push(d);
        }
        let mut st = State {
            vis1: vec![false; g.num_vertices()],
            vis2: vec![false; g.num_vertices()],
            p1: Vec::new(),
            p2: Vec::new(),
            best: 0,
            witness: None,
            nodes: 0,
            by_code,
        };
        let symmetric = self.edge_block.is_none();
        let mut complete = true;
        'outer: for d1 in 0..nd {
            let block = match self.edge_block {
                Some(eb) => {
                    let b = eb[d1 / 2];
                    if !self.block_ok.unwrap()[b] {
                        continue;
                    }
                    Some(b)
                }
                None => None,
            };
            let c = g.code(d1) as usize;
            for k in 0..st.by_code[c].len() {
                let d2 = st.by_code[c][k];
                if symmetric && d2 < d1 {
                    continue;
                }
                let (u1, u2) = (g.tail(d1), g.tail(d2));
                st.vis1[u1] = true;
                st.vis2[u2] = true;
                let ok = self.step(&mut st, d1, d2, true, block, None);
                st.vis1[u1] = false;
                st.vis2[u2] = false;
                if !ok {
                    complete = false;
                    break 'outer;
                }
            }
        }
        let witness = st.witness.map(|(a, b)| PieceWitness { label: g.walk_label(&a), imm1: a, imm2: b });
        SearchOutcome { length: st.best, witness, complete }
    }

    /// Take darts `d1`, `d2` (same code) and continue. Returns false when
    /// the budget is exhausted.
    fn step(
        &self,
        st: &mut State,
        d1: Dart,
        d2: Dart,
        same: bool,
        block: Option<usize>,
        run: Option<(u16, Elem, usize)>,
    ) -> bool {
        let g = self.g;
        let (h1, h2) = (g.head(d1), g.head(d2));
        if st.vis1[h1] || st.vis2[h2] {
            return true;
        }
        if let (Some(eb), Some(b)) = (self.edge_block, block) {
            if eb[d1 / 2] != b {
                return true;
            }
        }
        let run = match self.geodesic {
            None => None,
            Some(fp) => {
                let l = g.letter(d1);
                let f = fp.factor(l.factor as usize);
                match run {
                    Some((rf, e, len)) if rf == l.factor => {
                        let e2 = f.multiply(&e, f.gen_elem(l.sym));
                        if f.length(&e2) != len + 1 {
                            return true;
                        }
                        Some((rf, e2, len + 1))
                    }
                    _ => Some((l.factor, f.gen_elem(l.sym).clone(), 1)),
                }
            }
        };
        st.nodes += 1;
        if st.nodes > self.budget {
            return false;
        }
        let same = same && d1 == d2;
        st.vis1[h1] = true;
        st.vis2[h2] = true;
        st.p1.push(d1);
        st.p2.push(d2);
        if !same && st.p1.len() > st.best {
            st.best = st.p1.len();
            st.witness = Some((st.p1.clone(), st.p2.clone()));
        }
        let mut ok = true;
        'ext: for &e1 in g.out_darts(h1) {
            let c = g.code(e1);
            for &e2 in g.out_darts(h2) {
                if g.code(e2) != c {
                    continue;
                }
                if !self.step(st, e1, e2, same, block, run.clone()) {
                    ok = false;
                    break 'ext;
                }
            }
        }
        st.p1.pop();
        st.p2.pop();
        st.vis1[h1] = false;
        st.vis2[h2] = false;
        ok
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::freeprod::{z2_cubed, FactorSpec, Letter};
    use crate::lgraph::graph::Edge;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    /// Enumerate every simple path, group by code sequence.
    pub(crate) fn brute_longest_piece(g: &LabelledGraph) -> usize {
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut best = 0;
        fn go(
            g: &LabelledGraph,
            v: usize,
            vis: &mut Vec<bool>,
            codes: &mut Vec<u32>,
            seen: &mut HashMap<Vec<u32>, usize>,
            best: &mut usize,
        ) {
            for &d in g.out_darts(v) {
                let w = g.head(d);
                if vis[w] {
                    continue;
                }
                codes.push(g.code(d));
                let c = seen.entry(codes.clone()).or_insert(0);
                *c += 1;
                if *c >= 2 && codes.len() > *best {
                    *best = codes.len();
                }
                vis[w] = true;
                go(g, w, vis, codes, seen, best);
                vis[w] = false;
                codes.pop();
            }
        }
        let mut vis = vec![false; g.num_vertices()];
        for s in 0..g.num_vertices() {
            vis[s] = true;
            go(g, s, &mut vis, &mut Vec::new(), &mut seen, &mut best);
            vis[s] = false;
        }
        best
    }

    fn zz() -> FreeProduct {
        FreeProduct::from_specs(&[FactorSpec::CyclicZ, FactorSpec::CyclicZ]).unwrap()
    }

    #[test]
    fn cycle_examples() {
        let fp = zz();
        let g = LabelledGraph::cycle(&fp.parse_word("0:a 1:a").unwrap(), &fp).unwrap();
        assert_eq!(longest_piece(&g).0, 0);
        let g = LabelledGraph::cycle(&fp.parse_word("0:a 1:a 0:a 1:a").unwrap(), &fp).unwrap();
        assert_eq!(longest_piece(&g).0, 3);
        let w: Word = fp.parse_word("0:a 1:a").unwrap().repeat(4);
        let g = LabelledGraph::cycle(&w, &fp).unwrap();
        let (len, wit) = longest_piece(&g);
        assert_eq!(len, 7);
        let wit = wit.unwrap();
        assert_ne!(wit.imm1, wit.imm2);
        assert_eq!(g.walk_label(&wit.imm1), g.walk_label(&wit.imm2));
    }

    #[test]
    fn reverse_orientation_counts() {
        // a b A B read backwards is b a B A, sharing "b a"... as codes
        let fp = zz();
        let g = LabelledGraph::cycle(&fp.parse_word("0:a 0:a 1:a 0:A 0:A 1:A").unwrap(), &fp).unwrap();
        assert_eq!(longest_piece(&g).0, brute_longest_piece(&g));
        let (_, w) = longest_piece(&g);
        let w = w.unwrap();
        let codes = |p: &[Dart]| p.iter().map(|&d| g.code(d)).collect::<Vec<_>>();
        assert_eq!(codes(&w.imm1), codes(&w.imm2));
    }

    #[test]
    fn involution_reversal_is_not_a_piece() {
        let fp = z2_cubed(3);
        let g = LabelledGraph::cycle(&fp.parse_word("0:a 1:a 2:a").unwrap(), &fp).unwrap();
        assert_eq!(longest_piece(&g).0, 0);
    }

    pub(crate) fn random_graph(rng: &mut ChaCha8Rng, fp: &FreeProduct) -> LabelledGraph {
        let letters = fp.letters();
        let kind = rng.gen_range(0..3);
        let (n, pairs): (usize, Vec<(usize, usize)>) = match kind {
            0 => {
                let n = rng.gen_range(1..=40);
                (n, (0..n).map(|i| (i, (i + 1) % n)).collect())
            }
            1 => {
                let n = rng.gen_range(2..=30);
                let mut p: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
                let extra = rng.gen_range(0..=(40 - p.len()).min(5));
                for _ in 0..extra {
                    p.push((rng.gen_range(0..n), rng.gen_range(0..n)));
                }
                (n, p)
            }
            _ => {
                let n = rng.gen_range(1..=7);
                let m = rng.gen_range(1..=11);
                (n, (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect())
            }
        };
        let edges = pairs
            .into_iter()
            .map(|(u, v)| Edge { u, v, label: letters[rng.gen_range(0..letters.len())] })
            .collect();
        LabelledGraph::new(n, edges, fp).unwrap()
    }

    #[test]
    fn agrees_with_brute_force() {
        let fp = FreeProduct::from_specs(&[FactorSpec::Cyclic { order: 2 }, FactorSpec::CyclicZ]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let g = random_graph(&mut rng, &fp);
            assert_eq!(longest_piece(&g).0, brute_longest_piece(&g), "{:?}", g.edges());
        }
    }

    #[test]
    fn restricted_search_only_starts_in_allowed_blocks() {
        let fp = zz();
        let a = Letter::new(0, 0);
        // two disjoint a-edges in separate blocks; forbid the second block
        let g = LabelledGraph::new(4, vec![Edge { u: 0, v: 1, label: a }, Edge { u: 2, v: 3, label: a }], &fp).unwrap();
        let eb = [0, 1];
        let out = PieceSearch::new(&g).restrict_first(&eb, &[true, false]).run();
        assert_eq!(out.length, 1);
        assert_eq!(out.witness.unwrap().imm1, vec![0]);
        let none = PieceSearch::new(&g).restrict_first(&eb, &[false, false]).run();
        assert_eq!(none.length, 0);
    }
}
