use std::collections::VecDeque;

use super::graph::{Dart, LabelledGraph};
use crate::freeprod::{is_factor_word, FreeProduct, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub darts: Vec<Dart>,
    pub label: Word,
}

/// Shortest simple cycle length, `None` for forests.
pub fn girth(g: &LabelledGraph) -> Option<usize> {
    let (k, comp) = g.components();
    let mut nv = vec![0usize; k];
    let mut ne = vec![0usize; k];
    for v in 0..g.num_vertices() {
        nv[comp[v]] += 1;
    }
    for e in g.edges() {
        ne[comp[e.u]] += 1;
    }
    let mut best: Option<usize> = None;
    let mut heavy = vec![false; k];
    for c in 0..k {
        if ne[c] < nv[c] {
            continue;
        }
        let is_cycle = ne[c] == nv[c] && (0..g.num_vertices()).filter(|&v| comp[v] == c).all(|v| g.degree(v) == 2);
        if is_cycle {
            best = Some(best.map_or(nv[c], |b| b.min(nv[c])));
        } else {
            heavy[c] = true;
        }
    }
    let n = g.num_vertices();
    let mut dist = vec![usize::MAX; n];
    let mut pe = vec![usize::MAX; n];
    for root in 0..n {
        if !heavy[comp[root]] {
            continue;
        }
        let mut touched = vec![root];
        dist[root] = 0;
        let mut q = VecDeque::from([root]);
        'bfs: while let Some(x) = q.pop_front() {
            if let Some(b) = best {
                if 2 * dist[x] + 1 >= b {
                    break;
                }
            }
            for &d in g.out_darts(x) {
                let e = d / 2;
                if e == pe[x] {
                    continue;
                }
                let y = g.head(d);
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    pe[y] = e;
                    touched.push(y);
                    q.push_back(y);
                } else {
                    let c = dist[x] + dist[y] + 1;
                    if best.map_or(true, |b| c < b) {
                        best = Some(c);
                    }
                    if c == 1 {
                        break 'bfs;
                    }
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
            pe[v] = usize::MAX;
        }
    }
    best
}

/// Every simple cycle of length `≤ max_len`, once up to rotation and
/// reversal. Each cycle starts at its least vertex.
pub fn simple_cycles(g: &LabelledGraph, max_len: usize) -> Vec<Cycle> {
    simple_cycles_capped(g, max_len, usize::MAX).0
}

/// As [`simple_cycles`], stopping after `cap` cycles; the flag reports
/// whether the enumeration finished.
pub fn simple_cycles_capped(g: &LabelledGraph, max_len: usize, cap: usize) -> (Vec<Cycle>, bool) {
    let n = g.num_vertices();
    if let Some(darts) = g.as_single_cycle() {
        if n < 2 || max_len < n || cap == 0 {
            // loops and the short cases go through the search below
        } else {
            let darts = if darts[0] / 2 < darts[n - 1] / 2 {
                darts
            } else {
                darts.iter().rev().map(|&d| d ^ 1).collect()
            };
            let label = g.walk_label(&darts);
            return (vec![Cycle { darts, label }], true);
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        // loops at s
        for &d in g.out_darts(s) {
            if d % 2 == 0 && g.head(d) == s && max_len >= 1 {
                out.push(Cycle { darts: vec![d], label: vec![g.letter(d)] });
            }
        }
        on_path[s] = true;
        if !dfs(g, s, max_len, cap, &mut on_path, &mut out) {
            return (out, false);
        }
        on_path[s] = false;
    }
    (out, true)
}

/// Paths from `s` through vertices above `s`, closed when they return.
fn dfs(g: &LabelledGraph, s: usize, max_len: usize, cap: usize, on_path: &mut [bool], out: &mut Vec<Cycle>) -> bool {
    let mut path: Vec<Dart> = Vec::new();
    // (vertex, next out-dart index)
    let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        let darts = g.out_darts(v);
        if path.len() >= max_len || i == darts.len() {
            stack.pop();
            if let Some(d) = path.pop() {
                on_path[g.head(d)] = false;
            }
            continue;
        }
        top.1 += 1;
        let d = darts[i];
        let w = g.head(d);
        if w == s && !path.is_empty() {
            let first = path[0] / 2;
            if d / 2 != first && first < d / 2 {
                path.push(d);
                out.push(Cycle { darts: path.clone(), label: g.walk_label(&path) });
                path.pop();
                if out.len() >= cap {
                    for &d in &path {
                        on_path[g.head(d)] = false;
                    }
                    return false;
                }
            }
            continue;
        }
        if w <= s || on_path[w] {
            continue;
        }
        on_path[w] = true;
        path.push(d);
        stack.push((w, 0));
    }
    true
}

/// Lexicographically least rotation of the lesser of `w` and `w⁻¹`.
pub fn canonical_cycle_label(w: &[Letter], fp: &FreeProduct) -> Word {
    let a = least_rotation(w);
    let b = least_rotation(&fp.inverse(w));
    a.min(b)
}

/// Two-pointer minimum rotation, linear time.
fn least_rotation(w: &[Letter]) -> Word {
    let n = w.len();
    let (mut i, mut j, mut k) = (0, 1, 0);
    while i < n && j < n && k < n {
        let (a, b) = (w[(i + k) % n], w[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    let s = i.min(j).min(n.saturating_sub(1));
    w[s..].iter().chain(&w[..s]).copied().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSubpath {
    pub length: usize,
    pub darts: Vec<Dart>,
    pub factor: Option<usize>,
}

/// Longest subpath of a simple cycle whose label lies in one factor.
/// Enumerates simple cycles unless the graph is a single cycle.
pub fn factor_subpath_bound(g: &LabelledGraph) -> FactorSubpath {
    let mut best = FactorSubpath { length: 0, darts: Vec::new(), factor: None };
    let cycles: Vec<Vec<Dart>> = match g.as_single_cycle() {
        Some(c) => vec![c],
        None => simple_cycles(g, g.num_edges()).into_iter().map(|c| c.darts).collect(),
    };
    for c in cycles {
        let n = c.len();
        let f: Vec<u16> = c.iter().map(|&d| g.letter(d).factor).collect();
        if f.iter().all(|&x| x == f[0]) {
            // a proper subpath of the cycle leaves out at least one edge
            let len = n.saturating_sub(1).max(1).min(n);
            if len > best.length {
                best = FactorSubpath { length: len, darts: c[..len].to_vec(), factor: Some(f[0] as usize) };
            }
            continue;
        }
        // start scanning right after a factor change so runs do not wrap
        let start = (0..n).find(|&i| f[i] != f[(i + n - 1) % n]).unwrap();
        let mut i = 0;
        while i < n {
            let a = (start + i) % n;
            let mut j = i + 1;
            while j < n && f[(start + j) % n] == f[a] {
                j += 1;
            }
            if j - i > best.length {
                let darts: Vec<Dart> = (i..j).map(|k| c[(start + k) % n]).collect();
                debug_assert!(is_factor_word(&g.walk_label(&darts)).is_some());
                best = FactorSubpath { length: j - i, darts, factor: Some(f[a] as usize) };
            }
            i = j;
        }
    }
    best
}
