//! Paths between points of a sphere that avoid the ball inside it, built
//! level by level by splicing in relator boundaries.

use serde::Serialize;

use super::ball::BallIndex;
use crate::dehn::Presentation;
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::freeprod::{Letter, Word};

#[derive(Clone, Copy, Debug)]
pub struct OneEndedOptions {
    /// Extension depth for isolated vertices and run ends; interior run
    /// vertices extend one less. Half the generator scale.
    pub extension: usize,
    /// Run without C'*(1/8) certification.
    pub force: bool,
}

impl Default for OneEndedOptions {
    fn default() -> Self {
        OneEndedOptions { extension: 4, force: false }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OneEndedStats {
    pub splices: usize,
    pub relator_walk_letters: usize,
    /// Chain vertices where more than one letter outside the last factor
    /// fails to leave the sphere.
    pub extension_violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OneEndedPath {
    pub x: String,
    pub y: String,
    /// the path avoids `B(1, d - 1)`; here `d = d(1,x)`
    pub level: usize,
    pub vertices: Vec<u32>,
    pub word: String,
    pub min_dist: usize,
    pub stats: OneEndedStats,
}

struct Ctx<'a> {
    b: &'a BallIndex,
    p: &'a Presentation,
    h: usize,
    stats: OneEndedStats,
}

fn edge_letter(b: &BallIndex, u: u32, v: u32) -> Option<Letter> {
    b.neighbors(u).find(|&(_, w)| w == v).map(|(l, _)| l)
}

fn label(b: &BallIndex, path: &[u32]) -> Result<Word> {
    path.windows(2)
        .map(|w| {
            edge_letter(b, w[0], w[1])
                .ok_or_else(|| Error::ConstructionViolation(format!("{} and {} are not adjacent", w[0], w[1])))
        })
        .collect()
}

/// Chronological loop erasure: whenever a vertex recurs, the closed subwalk
/// since its first visit is cut out.
pub fn erase_loops(walk: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::with_capacity(walk.len());
    let mut pos = std::collections::HashMap::new();
    for &v in walk {
        if let Some(&i) = pos.get(&v) {
            for u in out.drain(i + 1..) {
                pos.remove(&u);
            }
        } else {
            pos.insert(v, out.len());
            out.push(v);
        }
    }
    out
}

impl<'a> Ctx<'a> {
    fn depth(&self, what: &str) -> Error {
        Error::DepthExceeded(format!("{what} leaves the ball of radius {}", self.b.radius()))
    }

    /// Walk `w` from `from`, returning every vertex.
    fn trace(&mut self, from: u32, w: &[Letter]) -> Result<Vec<u32>> {
        let mut out = vec![from];
        for &l in w {
            let v = self.b.neighbor(*out.last().unwrap(), l).ok_or_else(|| self.depth("relator boundary"))?;
            out.push(v);
        }
        self.stats.relator_walk_letters += w.len();
        Ok(out)
    }

    /// The relator conjugate `u v` starting with the label `u` of `q`, and
    /// the vertices of `v` read from the end of `q`.
    fn close(&mut self, q: &[u32]) -> Result<Option<Vec<u32>>> {
        let u = label(self.b, q)?;
        let fp = &self.p.fp;
        let (len, at) = self.p.index().longest_prefix(&u, fp);
        let Some(at) = at.filter(|_| len == u.len()) else {
            return Ok(None);
        };
        let r = &self.p.relators()[at.rel];
        let r = if at.inverse { fp.inverse(r) } else { r.clone() };
        let c: Word = r[at.offset..].iter().chain(&r[..at.offset]).copied().collect();
        let back = self.trace(*q.last().unwrap(), &c[u.len()..])?;
        if back.last() != q.first() {
            return Err(Error::ConstructionViolation("relator boundary does not close up in the ball".into()));
        }
        Ok(Some(back))
    }

    /// No relator shares a suffix of length at least |r|/4 + 3 with the
    /// geodesic from 1 through `chain`.
    fn long_relation_free(&self, start: u32, chain: &[u32]) -> Result<bool> {
        let mut w = self.b.word(start).to_vec();
        w.extend(label(self.b, chain)?);
        let back = self.p.fp.inverse(&w);
        let (len, at) = self.p.index().longest_prefix(&back, &self.p.fp);
        Ok(match at {
            Some(at) => 4 * len < self.p.relators()[at.rel].len() + 12,
            None => true,
        })
    }

    fn extension_check(&mut self, chain: &[u32]) {
        for w in chain.windows(2) {
            let (g, last) = (w[1], edge_letter(self.b, w[0], w[1]).map(|l| l.factor));
            if self.b.dist(g) >= self.b.radius() {
                continue;
            }
            let down = self
                .b
                .neighbors(g)
                .filter(|&(l, y)| Some(l.factor) != last && self.b.dist(y) <= self.b.dist(g))
                .count();
            if down > 1 {
                self.stats.extension_violations += 1;
            }
        }
    }

    /// Distance-increasing chains from `prefix` with `steps` more vertices,
    /// lexicographic by letter, that pass the long-relation filter and
    /// `accept`.
    fn extend(
        &mut self,
        prefix: Vec<u32>,
        steps: usize,
        accept: &mut dyn FnMut(&mut Self, &[u32]) -> Result<bool>,
    ) -> Result<Option<Vec<u32>>> {
        if steps == 0 {
            let ok = self.long_relation_free(prefix[0], &prefix)? && accept(self, &prefix)?;
            return Ok(ok.then_some(prefix));
        }
        let v = *prefix.last().unwrap();
        if self.b.dist(v) >= self.b.radius() {
            return Err(self.depth("geodesic extension"));
        }
        let next: Vec<u32> =
            self.b.neighbors(v).filter(|&(_, y)| self.b.dist(y) == self.b.dist(v) + 1).map(|(_, y)| y).collect();
        for y in next {
            let mut c = prefix.clone();
            c.push(y);
            if let Some(c) = self.extend(c, steps - 1, accept)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn build(&mut self, x: u32, y: u32) -> Result<Vec<u32>> {
        let dx = self.b.dist(x);
        if x == y {
            return Ok(vec![x]);
        }
        let walk = if dx == 1 { self.base(x, y)? } else { self.step(x, y)? };
        let path = erase_loops(&walk);
        self.verify(&path, x, y, dx)?;
        Ok(path)
    }

    fn verify(&self, path: &[u32], x: u32, y: u32, d: usize) -> Result<()> {
        label(self.b, path)?;
        if path.first() != Some(&x) || path.last() != Some(&y) {
            return Err(Error::ConstructionViolation("path has the wrong endpoints".into()));
        }
        if let Some(&p) = path.iter().find(|&&p| self.b.dist(p) < d) {
            return Err(Error::ConstructionViolation(format!(
                "vertex {} at distance {} on a path that should avoid B(1, {})",
                self.p.fp.format_word(self.b.word(p)),
                self.b.dist(p),
                d - 1
            )));
        }
        Ok(())
    }

    /// Around a relator through `x^-1 y`, the long way.
    fn base(&mut self, x: u32, y: u32) -> Result<Vec<u32>> {
        let q = vec![x, 0, y];
        match self.close(&q)? {
            Some(back) => {
                self.stats.splices += 1;
                Ok(back.into_iter().rev().collect())
            }
            None => Err(Error::ConstructionViolation(format!(
                "no relator contains {}",
                self.p.fp.format_word(&label(self.b, &q)?)
            ))),
        }
    }

    fn step(&mut self, x: u32, y: u32) -> Result<Vec<u32>> {
        let d = self.b.dist(x) - 1;
        let parent = |v: u32| self.b.lookup(&self.b.word(v)[..d]).expect("prefix of a ball word");
        let mut walk = self.build(parent(x), parent(y))?;
        match walk.iter().position(|&v| v == x) {
            Some(i) => {
                walk.drain(..i);
            }
            None => walk.insert(0, x),
        }
        match walk.iter().position(|&v| v == y) {
            Some(j) => walk.truncate(j + 1),
            None => walk.push(y),
        }
        let mut out = Vec::with_capacity(walk.len());
        let mut i = 0;
        while i < walk.len() {
            if self.b.dist(walk[i]) != d {
                out.push(walk[i]);
                i += 1;
                continue;
            }
            let s = i;
            while self.b.dist(walk[i]) == d {
                i += 1;
            }
            // walk[s - 1] and walk[i] are z'_1 and z'_k
            out.pop();
            out.extend(self.splice(&walk[s - 1..=i])?);
            i += 1;
        }
        Ok(out)
    }

    /// Replace `z'_1, z_1 .. z_k, z'_k` by relator boundaries from `z'_1`
    /// to `z'_k`.
    fn splice(&mut self, seg: &[u32]) -> Result<Vec<u32>> {
        let h = self.h;
        let zs = &seg[1..seg.len() - 1];
        let k = zs.len();
        let none = |what: String| Error::ConstructionViolation(format!("no admissible extension at {what}"));
        if k == 1 {
            let z = zs[0];
            let a1 = self
                .extend(vec![z, seg[0]], h - 1, &mut |_, _| Ok(true))?
                .ok_or_else(|| none(self.p.fp.format_word(self.b.word(z))))?;
            let mut found = None;
            let a2 = self.extend(vec![z, seg[2]], h - 1, &mut |me, c| {
                let mut q: Vec<u32> = a1.iter().rev().copied().collect();
                q.extend_from_slice(&c[1..]);
                found = me.close(&q)?.map(|back| (q, back));
                Ok(found.is_some())
            })?;
            a2.ok_or_else(|| none(self.p.fp.format_word(self.b.word(z))))?;
            let (q, back) = found.unwrap();
            self.extension_check(&a1);
            return Ok(self.long_way(&q, &back, h - 1, h + 1));
        }
        let mut chains: Vec<Vec<u32>> = Vec::with_capacity(k);
        let first = self
            .extend(vec![zs[0], seg[0]], h - 1, &mut |_, _| Ok(true))?
            .ok_or_else(|| none(self.p.fp.format_word(self.b.word(zs[0]))))?;
        chains.push(first);
        let mut out = vec![seg[0]];
        for i in 1..k {
            let prev = chains[i - 1].clone();
            let (start, steps) = if i + 1 == k { (vec![zs[i], seg[k + 1]], h - 1) } else { (vec![zs[i]], h - 1) };
            let mut found = None;
            let c = self.extend(start, steps, &mut |me, c| {
                let mut q: Vec<u32> = prev.iter().rev().copied().collect();
                q.extend_from_slice(c);
                found = me.close(&q)?.map(|back| (q, back));
                Ok(found.is_some())
            })?;
            let c = c.ok_or_else(|| none(self.p.fp.format_word(self.b.word(zs[i]))))?;
            let (q, back) = found.unwrap();
            let iy = prev.len() - 2;
            let jy = prev.len() + 1;
            let seg = self.long_way(&q, &back, iy, jy);
            out.extend_from_slice(&seg[1..]);
            chains.push(c);
        }
        for c in &chains {
            self.extension_check(c);
        }
        Ok(out)
    }

    /// Vertices from `q[i]` to `q[j]` around the loop `q`, `back` without
    /// passing `q[i+1..j]`.
    fn long_way(&mut self, q: &[u32], back: &[u32], i: usize, j: usize) -> Vec<u32> {
        self.stats.splices += 1;
        let mut fwd: Vec<u32> = q[j..].to_vec();
        fwd.extend_from_slice(&back[1..]);
        fwd.extend_from_slice(&q[1..=i]);
        fwd.reverse();
        fwd
    }
}

/// Path from `x` to `y` with every vertex at distance at least `d(1,x)`
/// from the identity. Each level is checked against the ball distances; a
/// failure is reported, never returned.
pub fn one_ended_path(
    b: &BallIndex,
    p: &Presentation,
    x: u32,
    y: u32,
    opts: OneEndedOptions,
) -> Result<OneEndedPath> {
    if p.relators().is_empty() {
        return Err(Error::InvalidInput("relator-free free products have infinitely many ends".into()));
    }
    if p.fp.num_factors() < 3 {
        return Err(Error::InvalidInput("the construction needs at least three factors".into()));
    }
    if !opts.force && !p.certified().is_some_and(|l| l <= Frac::new(1, 8)) {
        return Err(Error::OracleUnsound("presentation is not certified C'*(1/8); pass --force".into()));
    }
    if opts.extension < 2 {
        return Err(Error::InvalidInput("extension depth must be at least 2".into()));
    }
    if b.dist(x) != b.dist(y) {
        return Err(Error::InvalidInput("endpoints lie on different spheres".into()));
    }
    let mut ctx = Ctx { b, p, h: opts.extension, stats: OneEndedStats::default() };
    let vertices = ctx.build(x, y)?;
    let word = label(b, &vertices)?;
    let min_dist = vertices.iter().map(|&v| b.dist(v)).min().unwrap_or(0);
    Ok(OneEndedPath {
        x: p.fp.format_word(b.word(x)),
        y: p.fp.format_word(b.word(y)),
        level: b.dist(x),
        vertices,
        word: p.fp.format_word(&word),
        min_dist,
        stats: ctx.stats,
    })
}
