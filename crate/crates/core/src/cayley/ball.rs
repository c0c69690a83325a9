//! Radius-R balls of the Cayley graph.
//!
//! Every element carries, for each factor `f`, a key `(coset, position)`
//! placing it inside a copy of `G_f`. Letter adjacency is read off these
//! keys, so factor relations hold by construction. Relator loops are traced
//! syllable by syllable from elements near the frontier; a loop with a
//! single missing step merges two cosets, and a loop with a single missing
//! vertex identifies two candidates for the next sphere.

use rustc_hash::FxHashMap as HashMap;

use serde::Serialize;

use crate::dehn::Presentation;
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::freeprod::{Elem, FreeProduct, Letter, Word};

pub const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
pub struct BallOptions {
    /// Build even if the presentation is not certified at λ ≤ 1/6.
    pub force: bool,
    pub max_elements: usize,
}

impl Default for BallOptions {
    fn default() -> Self {
        BallOptions { force: false, max_elements: 4_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct BallIndex {
    fp: FreeProduct,
    radius: usize,
    words: Vec<Word>,
    dist: Vec<u32>,
    /// `levels[n]` is the first id at distance `n`; one extra sentinel.
    levels: Vec<usize>,
    adj: Vec<u32>,
    /// Per factor, per element: id of the coset `gG_f`, the least member.
    cosets: Vec<Vec<u32>>,
    certified: bool,
}

type Key = (u32, Elem);

struct Builder<'a> {
    fp: &'a FreeProduct,
    words: Vec<Word>,
    dist: Vec<u32>,
    key: Vec<Vec<Key>>,
    members: Vec<Vec<Vec<u32>>>,
    table: Vec<HashMap<Key, u32>>,
    /// relator loops read from a syllable boundary, both orientations
    loops: Vec<Vec<(usize, Elem)>>,
    max_syl: usize,
}

fn clash(a: u32, b: u32) -> Error {
    Error::ConstructionViolation(format!("relator tracing identified distinct ball elements {a} and {b}"))
}

impl<'a> Builder<'a> {
    fn new(p: &'a Presentation) -> Result<Self> {
        let fp = &p.fp;
        let mut loops = Vec::new();
        let mut max_syl = 1;
        for r in p.relators() {
            let nf = fp.cyclic_reduce(r)?;
            if nf.syllables.len() < 2 {
                return Err(Error::Unsupported(format!(
                    "relator {} lies in a single factor",
                    fp.format_word(r)
                )));
            }
            for form in [nf.clone(), fp.invert_nf(&nf)] {
                let syl: Vec<(usize, Elem)> =
                    form.syllables.iter().map(|s| (s.factor as usize, s.elem.clone())).collect();
                max_syl = max_syl.max(form.syllables.iter().map(|s| s.len()).max().unwrap_or(1));
                for k in 0..syl.len() {
                    let mut rot = syl[k..].to_vec();
                    rot.extend_from_slice(&syl[..k]);
                    loops.push(rot);
                }
            }
        }
        loops.sort();
        loops.dedup();
        let k = fp.num_factors();
        let mut b = Builder {
            fp,
            words: Vec::new(),
            dist: Vec::new(),
            key: vec![Vec::new(); k],
            members: vec![Vec::new(); k],
            table: vec![HashMap::default(); k],
            loops,
            max_syl,
        };
        b.insert(Vec::new(), 0, &vec![None; k])?;
        Ok(b)
    }

    fn mul(&self, f: usize, a: &Elem, b: &Elem) -> Elem {
        self.fp.factor(f).multiply(a, b)
    }

    fn lookup(&self, f: usize, x: u32, e: &Elem) -> Option<u32> {
        let (c, p) = &self.key[f][x as usize];
        self.table[f].get(&(*c, self.mul(f, p, e))).copied()
    }

    fn moved_key(&self, f: usize, x: u32, e: &Elem) -> Key {
        let (c, p) = &self.key[f][x as usize];
        (*c, self.mul(f, p, e))
    }

    fn insert(&mut self, word: Word, dist: u32, keys: &[Option<Key>]) -> Result<u32> {
        let id = self.words.len() as u32;
        self.words.push(word);
        self.dist.push(dist);
        for (f, k) in keys.iter().enumerate() {
            let k = match k {
                Some(k) => k.clone(),
                None => {
                    self.members[f].push(Vec::new());
                    ((self.members[f].len() - 1) as u32, self.fp.factor(f).identity())
                }
            };
            if let Some(&other) = self.table[f].get(&k) {
                return Err(clash(other, id));
            }
            self.members[f][k.0 as usize].push(id);
            self.table[f].insert(k.clone(), id);
            self.key[f].push(k);
        }
        Ok(id)
    }

    /// Declare that position `pa` of coset `ca` and position `pb` of coset
    /// `cb` are the same element. Returns whether anything changed.
    fn merge(&mut self, f: usize, ka: Key, kb: Key) -> Result<bool> {
        let ((mut ca, mut pa), (mut cb, mut pb)) = (ka, kb);
        if ca == cb {
            if pa == pb {
                return Ok(false);
            }
            let x = self.table[f].get(&(ca, pa)).copied().unwrap_or(NONE);
            let y = self.table[f].get(&(cb, pb)).copied().unwrap_or(NONE);
            return Err(Error::ConstructionViolation(format!(
                "coset of factor {f} closes up on itself (elements {x}, {y})"
            )));
        }
        if self.members[f][ca as usize].len() < self.members[f][cb as usize].len() {
            std::mem::swap(&mut ca, &mut cb);
            std::mem::swap(&mut pa, &mut pb);
        }
        let fo = self.fp.factor(f);
        let delta = fo.multiply(&pa, &fo.invert(&pb));
        let moved = std::mem::take(&mut self.members[f][cb as usize]);
        for &z in &moved {
            let old = self.key[f][z as usize].clone();
            self.table[f].remove(&old);
        }
        for &z in &moved {
            let np = fo.multiply(&delta, &self.key[f][z as usize].1);
            let k = (ca, np);
            if let Some(&other) = self.table[f].get(&k) {
                return Err(clash(other, z));
            }
            self.table[f].insert(k.clone(), z);
            self.key[f][z as usize] = k;
        }
        self.members[f][ca as usize].extend(moved);
        Ok(true)
    }

    /// Candidates for the next sphere: keys not yet in the table reached by
    /// one letter from sphere `lo..hi`.
    fn candidates(&self, lo: usize, hi: usize) -> (Vec<(usize, Key)>, Vec<(u32, usize)>, HashMap<(usize, Key), usize>) {
        let mut keys = Vec::new();
        let mut rep: Vec<(u32, usize)> = Vec::new();
        let mut at = HashMap::default();
        for g in lo..hi {
            for code in 0..self.fp.num_letters() {
                let l = self.fp.letter_of_code(code);
                let f = l.factor as usize;
                let e = self.fp.letter_elem(l);
                if self.lookup(f, g as u32, e).is_some() {
                    continue;
                }
                let k = (f, self.moved_key(f, g as u32, e));
                let i = *at.entry(k.clone()).or_insert_with(|| {
                    keys.push(k.clone());
                    rep.push((g as u32, code));
                    keys.len() - 1
                });
                rep[i] = rep[i].min((g as u32, code));
            }
        }
        (keys, rep, at)
    }

    /// One deduction pass over the loops starting at `starts`. Returns
    /// whether a coset merge happened; `same` collects candidate pairs that
    /// name one element.
    fn pass(
        &mut self,
        starts: std::ops::Range<usize>,
        at: &HashMap<(usize, Key), usize>,
        same: &mut Vec<(usize, usize)>,
    ) -> Result<bool> {
        let mut changed = false;
        let loops = std::mem::take(&mut self.loops);
        let res = (|| {
            for a in starts {
                let a = a as u32;
                for lp in &loops {
                    let m = lp.len();
                    // forward: v_0 = a, v_j = v_{j-1} s_j
                    let mut fwd = vec![a];
                    for (f, s) in lp {
                        match self.lookup(*f, *fwd.last().unwrap(), s) {
                            Some(v) => fwd.push(v),
                            None => break,
                        }
                    }
                    if fwd.len() == m + 1 {
                        if fwd[m] != a {
                            return Err(clash(a, fwd[m]));
                        }
                        continue;
                    }
                    let p = fwd.len() - 1;
                    // backward: w_m = a, w_{j-1} = w_j s_j^-1
                    let mut bwd = vec![a];
                    for j in (1..=m).rev() {
                        let (f, s) = &lp[j - 1];
                        let inv = self.fp.factor(*f).invert(s);
                        match self.lookup(*f, *bwd.last().unwrap(), &inv) {
                            Some(w) => bwd.push(w),
                            None => break,
                        }
                        if j - 1 <= p + 1 {
                            break;
                        }
                    }
                    let q = m + 1 - bwd.len();
                    let w_at = |j: usize| bwd[m - j];
                    if q <= p + 1 {
                        let (f, s) = &lp[p];
                        let ka = self.moved_key(*f, fwd[p], s);
                        let kb = self.key[*f][w_at(p + 1) as usize].clone();
                        changed |= self.merge(*f, ka, kb)?;
                    } else if q == p + 2 {
                        let (f1, s1) = &lp[p];
                        let (f2, s2) = &lp[p + 1];
                        let k1 = (*f1, self.moved_key(*f1, fwd[p], s1));
                        let inv = self.fp.factor(*f2).invert(s2);
                        let k2 = (*f2, self.moved_key(*f2, w_at(p + 2), &inv));
                        if let (Some(&i), Some(&j)) = (at.get(&k1), at.get(&k2)) {
                            same.push((i, j));
                        }
                    }
                }
            }
            Ok(changed)
        })();
        self.loops = loops;
        res
    }

    /// Close sphere `n` under deductions; when `grow`, add sphere `n + 1`.
    fn step(&mut self, levels: &mut Vec<usize>, n: usize, grow: bool, max_elements: usize) -> Result<()> {
        let lo = levels[n];
        let hi = self.words.len();
        let first = levels[n.saturating_sub(self.max_syl)];
        loop {
            let (keys, rep, at) = self.candidates(lo, hi);
            let mut same = Vec::new();
            if !self.loops.is_empty() && self.pass(first..hi, &at, &mut same)? {
                continue;
            }
            if !grow {
                return Ok(());
            }
            let mut uf: Vec<usize> = (0..keys.len()).collect();
            fn find(uf: &mut [usize], mut x: usize) -> usize {
                while uf[x] != x {
                    uf[x] = uf[uf[x]];
                    x = uf[x];
                }
                x
            }
            for (i, j) in same {
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                if a != b {
                    uf[a.max(b)] = a.min(b);
                }
            }
            let mut classes: HashMap<usize, Vec<usize>> = HashMap::default();
            for i in 0..keys.len() {
                let r = find(&mut uf, i);
                classes.entry(r).or_default().push(i);
            }
            let mut classes: Vec<Vec<usize>> = classes.into_values().collect();
            for c in &mut classes {
                c.sort_by_key(|&i| rep[i]);
            }
            classes.sort_by_key(|c| rep[c[0]]);
            if hi + classes.len() > max_elements {
                return Err(Error::Unsupported(format!(
                    "ball would exceed {max_elements} elements at radius {}",
                    n + 1
                )));
            }
            for c in classes {
                let (g, code) = rep[c[0]];
                let mut word = self.words[g as usize].clone();
                word.push(self.fp.letter_of_code(code));
                // same element seen from several cosets of one factor
                let mut by_factor: Vec<Vec<(u32, usize)>> = vec![Vec::new(); self.fp.num_factors()];
                for &i in &c {
                    let f = keys[i].0;
                    by_factor[f].push(rep[i]);
                }
                let mut slots = vec![None; self.fp.num_factors()];
                for (f, reps) in by_factor.iter().enumerate() {
                    let key_of = |b: &Self, (g, code): (u32, usize)| {
                        let l = b.fp.letter_of_code(code);
                        b.moved_key(f, g, b.fp.letter_elem(l))
                    };
                    if let Some(&r0) = reps.first() {
                        for &r in &reps[1..] {
                            let (ka, kb) = (key_of(self, r0), key_of(self, r));
                            self.merge(f, ka, kb)?;
                        }
                        slots[f] = Some(key_of(self, r0));
                    }
                }
                self.insert(word, n as u32 + 1, &slots)?;
            }
            levels.push(self.words.len());
            return Ok(());
        }
    }
}

impl BallIndex {
    /// Ball of radius `radius` about the identity. Refuses presentations that
    /// are not certified at λ ≤ 1/6 unless `opts.force`.
    pub fn build(p: &Presentation, radius: usize, opts: BallOptions) -> Result<Self> {
        let certified = p.relators().is_empty() || p.certified().is_some_and(|l| l <= Frac::new(1, 6));
        if !certified && !opts.force {
            return Err(Error::OracleUnsound(
                "presentation is not certified C'*(λ) with λ ≤ 1/6; pass --force to build anyway".into(),
            ));
        }
        let mut b = Builder::new(p)?;
        let mut levels = vec![0, 1];
        for n in 0..radius {
            b.step(&mut levels, n, true, opts.max_elements)?;
        }
        b.step(&mut levels, radius, false, opts.max_elements)?;

        let fp = p.fp.clone();
        let k = fp.num_letters();
        let n = b.words.len();
        let mut adj = vec![NONE; n * k];
        for x in 0..n {
            for code in 0..k {
                let l = fp.letter_of_code(code);
                if let Some(y) = b.lookup(l.factor as usize, x as u32, fp.letter_elem(l)) {
                    adj[x * k + code] = y;
                }
            }
        }
        let cosets = (0..fp.num_factors())
            .map(|f| {
                let mut least: HashMap<u32, u32> = HashMap::default();
                for x in 0..n {
                    let c = b.key[f][x].0;
                    least.entry(c).or_insert(x as u32);
                }
                (0..n).map(|x| least[&b.key[f][x].0]).collect()
            })
            .collect();
        Ok(BallIndex { fp, radius, words: b.words, dist: b.dist, levels, adj, cosets, certified })
    }

    pub fn fp(&self) -> &FreeProduct {
        &self.fp
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// False when built with `force` from an uncertified presentation.
    pub fn certified(&self) -> bool {
        self.certified
    }

    /// Shortlex-least geodesic word.
    pub fn word(&self, x: u32) -> &[Letter] {
        &self.words[x as usize]
    }

    pub fn dist(&self, x: u32) -> usize {
        self.dist[x as usize] as usize
    }

    pub fn sphere(&self, n: usize) -> std::ops::Range<u32> {
        if n > self.radius {
            return 0..0;
        }
        self.levels[n] as u32..self.levels[n + 1] as u32
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.levels.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn neighbor(&self, x: u32, l: Letter) -> Option<u32> {
        let y = self.adj[x as usize * self.fp.num_letters() + self.fp.code(l)];
        (y != NONE).then_some(y)
    }

    /// Neighbours inside the ball with the letter that leads to them, in
    /// letter order.
    pub fn neighbors(&self, x: u32) -> impl Iterator<Item = (Letter, u32)> + '_ {
        let k = self.fp.num_letters();
        self.adj[x as usize * k..(x as usize + 1) * k]
            .iter()
            .enumerate()
            .filter(|(_, &y)| y != NONE)
            .map(|(c, &y)| (self.fp.letter_of_code(c), y))
    }

    /// Geodesic predecessors `(y, l)` with `y l = x`.
    pub fn predecessors(&self, x: u32) -> Vec<(u32, Letter)> {
        let d = self.dist(x);
        self.neighbors(x)
            .filter(|&(_, y)| self.dist(y) + 1 == d)
            .map(|(l, y)| (y, self.fp.inv_letter(l)))
            .collect()
    }

    /// Element reached by reading `w` from the identity, if the walk stays
    /// in the ball.
    pub fn lookup(&self, w: &[Letter]) -> Option<u32> {
        self.walk(0, w)
    }

    pub fn walk(&self, from: u32, w: &[Letter]) -> Option<u32> {
        let mut x = from;
        for &l in w {
            x = self.neighbor(x, l)?;
        }
        Some(x)
    }

    /// Id of the coset `x G_f`, canonicalised as its least member in the
    /// ball. Cosets whose pieces are not joined inside the ball stay apart.
    pub fn coset(&self, f: usize, x: u32) -> u32 {
        self.cosets[f][x as usize]
    }

    pub fn coset_members(&self, f: usize, c: u32) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| self.cosets[f][x as usize] == c).collect()
    }

    /// Pairs are answerable when `d(1,x) + d(1,y) ≤ R`: every geodesic
    /// between them then stays inside the ball.
    pub fn usable(&self, x: u32, y: u32) -> bool {
        self.dist(x) + self.dist(y) <= self.radius
    }

    pub fn check_usable(&self, x: u32, y: u32) -> Result<()> {
        if self.usable(x, y) {
            Ok(())
        } else {
            Err(Error::Unverifiable {
                radius: self.radius,
                what: format!(
                    "pair ({}, {}) needs radius {}",
                    self.fp.format_word(self.word(x)),
                    self.fp.format_word(self.word(y)),
                    self.dist(x) + self.dist(y)
                ),
            })
        }
    }

    pub fn export(&self) -> BallExport {
        let k = self.fp.num_letters();
        BallExport {
            radius: self.radius,
            sphere_sizes: self.sphere_sizes(),
            letters: (0..k).map(|c| self.fp.letter_name(self.fp.letter_of_code(c))).collect(),
            elements: (0..self.len())
                .map(|x| BallElement {
                    id: x as u32,
                    word: self.fp.format_word(&self.words[x]),
                    dist: self.dist[x],
                    adj: self.adj[x * k..(x + 1) * k].iter().map(|&y| (y != NONE).then_some(y)).collect(),
                    cosets: self.cosets.iter().map(|c| c[x]).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BallElement {
    pub id: u32,
    pub word: String,
    pub dist: u32,
    pub adj: Vec<Option<u32>>,
    pub cosets: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BallExport {
    pub radius: usize,
    pub sphere_sizes: Vec<usize>,
    pub letters: Vec<String>,
    pub elements: Vec<BallElement>,
}
