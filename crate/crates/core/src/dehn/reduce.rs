use std::collections::HashMap;

use serde::Serialize;

use super::Presentation;
use crate::frac::{gt_frac_times, Frac};
use crate::freeprod::{Elem, FreeProduct, Letter, Syllable, Word};

/// One relator rewrite. `split` is `before` with at most two syllables
/// respelled so that `matched` occurs literally at `start`; then `matched`
/// is replaced by `replacement` and the result reduced to `after`. The
/// cyclic word `matched · replacement⁻¹` is a conjugate of the relator
/// (inverted when `inverse`), starting at letter `offset`.
#[derive(Clone, Debug, Serialize)]
pub struct RewriteStep {
    pub before: Word,
    pub split: Word,
    pub start: usize,
    pub matched: Word,
    pub replacement: Word,
    pub relator: usize,
    pub inverse: bool,
    pub offset: usize,
    pub after: Word,
}

#[derive(Clone, Debug, Serialize)]
pub struct DehnTrace {
    pub input: Word,
    /// Free-product normal form of the input.
    pub initial: Word,
    pub steps: Vec<RewriteStep>,
    pub output: Word,
}

/// A relator with the syllables of itself and of its inverse.
#[derive(Clone, Debug)]
pub(crate) struct RelatorForms {
    pub len: usize,
    pub syl: [Vec<Syllable>; 2],
    /// Letter offset of each syllable.
    pub cum: [Vec<usize>; 2],
}

impl RelatorForms {
    pub fn new(r: &[Letter], fp: &FreeProduct) -> Self {
        let nf = fp.reduce(r).expect("valid relator");
        let fwd = nf.syllables.clone();
        let inv = fp.invert_nf(&nf).syllables;
        let cum = |s: &[Syllable]| {
            let mut c = Vec::with_capacity(s.len());
            let mut t = 0;
            for x in s {
                c.push(t);
                t += x.len();
            }
            c
        };
        RelatorForms { len: r.len(), cum: [cum(&fwd), cum(&inv)], syl: [fwd, inv] }
    }
}

pub(crate) type SyllableIndex = HashMap<(u16, Elem), Vec<(usize, usize, usize)>>;

const HASH_MOD: u64 = (1 << 61) - 1;
const HASH_BASE: u64 = 1_000_003;
/// Relators whose required literal run is shorter than this go through the
/// shared syllable index.
const MIN_FILTER_RUN: usize = 16;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % HASH_MOD as u128) as u64
}

/// Rolling hashes of every prefix of a code sequence.
struct PrefixHash {
    h: Vec<u64>,
}

impl PrefixHash {
    fn new(codes: impl Iterator<Item = usize>) -> Self {
        let mut h = vec![0];
        for c in codes {
            let last = *h.last().unwrap();
            h.push((mulmod(last, HASH_BASE) + c as u64 + 1) % HASH_MOD);
        }
        PrefixHash { h }
    }

    fn window(&self, i: usize, len: usize, pow: u64) -> u64 {
        (self.h[i + len] + HASH_MOD - mulmod(self.h[i], pow)) % HASH_MOD
    }
}

fn hash_pow(n: usize) -> u64 {
    let (mut r, mut b, mut e) = (1u64, HASH_BASE, n);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

/// A long relator. Any match worth rewriting contains a literal run of at
/// least `run` letters of a cyclic conjugate, so a word position is only
/// tried when the hash of its next `run` letters is in `windows`, and only
/// against conjugates starting with the same hash.
#[derive(Clone, Debug)]
pub(crate) struct LongRelator {
    pub rel: usize,
    run: usize,
    pow: u64,
    windows: Vec<u64>,
    /// window hash at each letter offset, per variant
    at: [Vec<u64>; 2],
    index: HashMap<(u16, Elem), Vec<(usize, usize)>>,
}

impl LongRelator {
    fn new(rel: usize, f: &RelatorForms, fp: &FreeProduct) -> Option<Self> {
        let longest = f.syl.iter().flatten().map(|s| s.len()).max().unwrap_or(0);
        let run = (f.len / 2 + 1).saturating_sub(2 * longest);
        if run < MIN_FILTER_RUN {
            return None;
        }
        let pow = hash_pow(run);
        let mut at = [Vec::new(), Vec::new()];
        let mut index: HashMap<(u16, Elem), Vec<(usize, usize)>> = HashMap::new();
        for v in 0..2 {
            let codes: Vec<usize> = f.syl[v].iter().flat_map(|s| s.letters()).map(|l| fp.code(l)).collect();
            let ph = PrefixHash::new(codes.iter().chain(&codes).copied());
            at[v] = (0..f.len).map(|i| ph.window(i, run, pow)).collect();
            for (p, s) in f.syl[v].iter().enumerate() {
                index.entry((s.factor, s.elem.clone())).or_default().push((v, p));
            }
        }
        let mut windows: Vec<u64> = at.iter().flatten().copied().collect();
        windows.sort_unstable();
        windows.dedup();
        Some(LongRelator { rel, run, pow, windows, at, index })
    }
}

pub(crate) fn build_long(rels: &[RelatorForms], fp: &FreeProduct) -> Vec<LongRelator> {
    rels.iter().enumerate().filter_map(|(r, f)| LongRelator::new(r, f, fp)).collect()
}

pub(crate) fn build_index(rels: &[RelatorForms], long: &[LongRelator]) -> SyllableIndex {
    let mut idx: SyllableIndex = HashMap::new();
    for (r, f) in rels.iter().enumerate() {
        if long.iter().any(|l| l.rel == r) {
            continue;
        }
        for v in 0..2 {
            for (p, s) in f.syl[v].iter().enumerate() {
                idx.entry((s.factor, s.elem.clone())).or_default().push((r, v, p));
            }
        }
    }
    idx
}

#[derive(Clone, Debug)]
struct Match {
    start: usize,
    len: usize,
    rel: usize,
    var: usize,
    pos: usize,
    /// index in the word of the first full syllable
    a: usize,
    full: usize,
    pl: Elem,
    pr: Elem,
}

impl Match {
    fn key(&self) -> (usize, std::cmp::Reverse<usize>, usize, usize, usize) {
        (self.start, std::cmp::Reverse(self.len), self.rel, self.var, self.pos)
    }
}

pub(crate) fn dehn_trace(p: &Presentation, w: &[Letter], theta: Frac) -> crate::Result<DehnTrace> {
    let fp = &p.fp;
    let nf = fp.reduce(w)?;
    let initial = nf.spell();
    let mut syl = nf.syllables;
    let mut steps = Vec::new();
    while let Some(m) = best_match(p, &syl, theta) {
        let step = apply(p, &syl, &m);
        syl = fp.reduce(&step.after).expect("letters checked").syllables;
        steps.push(step);
    }
    let output: Word = syl.iter().flat_map(|s| s.letters()).collect();
    Ok(DehnTrace { input: w.to_vec(), initial, steps, output })
}

fn best_match(p: &Presentation, x: &[Syllable], theta: Frac) -> Option<Match> {
    let fp = &p.fp;
    let k = x.len();
    if k == 0 {
        return None;
    }
    let mut off = Vec::with_capacity(k + 1);
    let mut t = 0;
    for s in x {
        off.push(t);
        t += s.len();
    }
    off.push(t);
    let total = t;
    let useful = |r: usize| gt_frac_times(total, theta, p.forms[r].len);
    let mut best: Option<Match> = None;
    fn consider(best: &mut Option<Match>, m: Match) {
        if best.as_ref().map_or(true, |b| m.key() < b.key()) {
            *best = Some(m);
        }
    }

    let eval = |a: usize, full: usize, r: usize, v: usize, pos: usize| -> Option<Match> {
        let f = &p.forms[r];
        let rs = &f.syl[v];
        let m = rs.len();
        let at = |j: usize| &rs[(pos + j) % m];
        if full >= m {
            let len = f.len;
            return Some(Match {
                start: off[a],
                len,
                rel: r,
                var: v,
                pos,
                a,
                full: m,
                pl: Elem::Int(0),
                pr: Elem::Int(0),
            })
            .filter(|_| gt_frac_times(len, theta, f.len));
        }
        let left = &rs[(pos + m - 1) % m];
        let right = at(full);
        let mut pl = None;
        if a >= 1 && x[a - 1].factor == left.factor {
            let o = fp.factor(left.factor as usize);
            let e = o.common_geodesic_suffix(&x[a - 1].elem, &left.elem);
            if !o.is_identity(&e) {
                pl = Some(e);
            }
        }
        let mut pr = None;
        if a + full < k && x[a + full].factor == right.factor {
            let o = fp.factor(right.factor as usize);
            let e = o.common_geodesic_prefix(&x[a + full].elem, &right.elem);
            if !o.is_identity(&e) {
                pr = Some(e);
            }
        }
        if full + 1 == m {
            // both partials sit in the same relator syllable
            if let (Some(l), Some(q)) = (&pl, &pr) {
                let o = fp.factor(left.factor as usize);
                let mid = o.multiply(&o.multiply(&o.invert(q), &left.elem), &o.invert(l));
                if o.length(l) + o.length(q) + o.length(&mid) != left.len() {
                    if o.length(q) < o.length(l) {
                        pr = None;
                    } else {
                        pl = None;
                    }
                }
            }
        }
        let lenof = |e: &Option<Elem>, f: u16| e.as_ref().map_or(0, |e| fp.factor(f as usize).length(e));
        let lpl = lenof(&pl, left.factor);
        let lpr = lenof(&pr, right.factor);
        let mid: usize = (0..full).map(|j| at(j).len()).sum();
        let len = lpl + mid + lpr;
        if len == 0 || !gt_frac_times(len, theta, f.len) || 2 * len <= f.len {
            return None;
        }
        let id = |f: u16| fp.factor(f as usize).identity();
        Some(Match {
            start: off[a] - lpl,
            len,
            rel: r,
            var: v,
            pos,
            a,
            full,
            pl: pl.unwrap_or_else(|| id(left.factor)),
            pr: pr.unwrap_or_else(|| id(right.factor)),
        })
    };

    let extend = |a: usize, rs: &[Syllable], pos: usize| {
        let m = rs.len();
        let mut full = 0;
        while full < m && a + full < k && x[a + full] == rs[(pos + full) % m] {
            full += 1;
        }
        full
    };
    let word_hash = if p.long.is_empty() {
        None
    } else {
        Some(PrefixHash::new(x.iter().flat_map(|s| s.letters()).map(|l| fp.code(l))))
    };

    // Matches are ordered by start first. Anchors past found + 1 start
    // strictly later than anything found at `found`.
    let mut found: Option<usize> = None;
    for a in 0..k {
        if found.map_or(false, |f| a > f + 1) {
            break;
        }
        if let Some(list) = p.syllable_index.get(&(x[a].factor, x[a].elem.clone())) {
            for &(r, v, pos) in list {
                if !useful(r) {
                    continue;
                }
                let full = extend(a, &p.forms[r].syl[v], pos);
                if let Some(mt) = eval(a, full, r, v, pos) {
                    consider(&mut best, mt);
                }
            }
        }
        if let Some(wh) = &word_hash {
            for lr in &p.long {
                let r = lr.rel;
                if !useful(r) || off[a] + lr.run > total {
                    continue;
                }
                let h = wh.window(off[a], lr.run, lr.pow);
                if lr.windows.binary_search(&h).is_err() {
                    continue;
                }
                let Some(list) = lr.index.get(&(x[a].factor, x[a].elem.clone())) else { continue };
                let cum = &p.forms[r].cum;
                for &(v, pos) in list {
                    if lr.at[v][cum[v][pos]] != h {
                        continue;
                    }
                    let full = extend(a, &p.forms[r].syl[v], pos);
                    if let Some(mt) = eval(a, full, r, v, pos) {
                        consider(&mut best, mt);
                    }
                }
            }
        }
        // matches made only of two partial syllables; never long enough
        // for a long relator
        if a >= 1 {
            let two = x[a - 1].len() + x[a].len();
            for (r, f) in p.forms.iter().enumerate() {
                if !gt_frac_times(two, theta, f.len) || 2 * two <= f.len {
                    continue;
                }
                for v in 0..2 {
                    let m = f.syl[v].len();
                    for pos in 0..m {
                        let left = &f.syl[v][(pos + m - 1) % m];
                        if left.factor == x[a - 1].factor && f.syl[v][pos].factor == x[a].factor {
                            if let Some(mt) = eval(a, 0, r, v, pos) {
                                consider(&mut best, mt);
                            }
                        }
                    }
                }
            }
        }
        if found.is_none() && best.is_some() {
            found = Some(a);
        }
    }
    best
}

fn apply(p: &Presentation, x: &[Syllable], m: &Match) -> RewriteStep {
    let fp = &p.fp;
    let f = &p.forms[m.rel];
    let rs = &f.syl[m.var];
    let rn = rs.len();
    let at = |j: usize| &rs[(m.pos + j) % rn];
    let spell = |factor: u16, e: &Elem| -> Word {
        fp.factor(factor as usize).spell(e).into_iter().map(|s| Letter { factor, sym: s }).collect()
    };
    let before: Word = x.iter().flat_map(|s| s.letters()).collect();
    let k = x.len();
    let has_pl = m.a >= 1 && m.full < rn && !fp.factor(x[m.a - 1].factor as usize).is_identity(&m.pl);
    let has_pr = m.a + m.full < k && m.full < rn && !fp.factor(x[m.a + m.full].factor as usize).is_identity(&m.pr);

    let mut split: Word = Vec::with_capacity(before.len());
    let mut matched: Word = Vec::new();
    let head_end = if has_pl { m.a - 1 } else { m.a };
    for s in &x[..head_end] {
        split.extend(s.letters());
    }
    if has_pl {
        let s = &x[m.a - 1];
        let o = fp.factor(s.factor as usize);
        let y = o.multiply(&s.elem, &o.invert(&m.pl));
        split.extend(spell(s.factor, &y));
        matched.extend(spell(s.factor, &m.pl));
    }
    for j in 0..m.full {
        matched.extend(at(j).letters());
    }
    if has_pr {
        matched.extend(spell(x[m.a + m.full].factor, &m.pr));
    }
    let start = split.len();
    split.extend_from_slice(&matched);
    let tail_start = if has_pr { m.a + m.full + 1 } else { m.a + m.full };
    if has_pr {
        let s = &x[m.a + m.full];
        let o = fp.factor(s.factor as usize);
        let z = o.multiply(&o.invert(&m.pr), &s.elem);
        split.extend(spell(s.factor, &z));
    }
    for s in &x[tail_start.min(k)..] {
        split.extend(s.letters());
    }

    // complement: the rest of the relator read after the matched part
    let mut comp: Word = Vec::new();
    if m.full < rn {
        let left = at(rn - 1);
        let right = at(m.full);
        let ol = fp.factor(left.factor as usize);
        let or = fp.factor(right.factor as usize);
        let pl = if has_pl { m.pl.clone() } else { ol.identity() };
        let pr = if has_pr { m.pr.clone() } else { or.identity() };
        if m.full + 1 == rn {
            let q = ol.multiply(&ol.multiply(&or.invert(&pr), &left.elem), &ol.invert(&pl));
            comp.extend(spell(left.factor, &q));
        } else {
            comp.extend(spell(right.factor, &or.multiply(&or.invert(&pr), &right.elem)));
            for j in m.full + 1..rn - 1 {
                comp.extend(at(j).letters());
            }
            comp.extend(spell(left.factor, &ol.multiply(&left.elem, &ol.invert(&pl))));
        }
    }
    let replacement = fp.inverse(&comp);
    let mut raw: Word = split[..start].to_vec();
    raw.extend_from_slice(&replacement);
    raw.extend_from_slice(&split[start + matched.len()..]);
    let after = fp.reduce(&raw).expect("letters checked").spell();
    let pl_len = if has_pl { fp.factor(x[m.a - 1].factor as usize).length(&m.pl) } else { 0 };
    let offset = (f.cum[m.var][m.pos] + f.len - pl_len) % f.len;
    debug_assert!(replacement.len() < matched.len());
    RewriteStep {
        before,
        split,
        start,
        matched,
        replacement,
        relator: m.rel,
        inverse: m.var == 1,
        offset,
        after,
    }
}
