use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::ball::BallIndex;
use super::geodesic::UNREACHED;
use crate::error::{Error, Result};

/// The ball with one cone vertex per peripheral coset it meets. Cone
/// vertices are numbered after the ball elements.
#[derive(Clone, Debug)]
pub struct ConedOverlay<'a> {
    ball: &'a BallIndex,
    peripherals: Vec<usize>,
    /// (factor, coset id) per cone vertex
    cones: Vec<(usize, u32)>,
    /// per element, its cone vertices
    cone_of: Vec<Vec<u32>>,
    members: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeExport {
    pub factor: usize,
    pub coset: u32,
    pub members: Vec<u32>,
}

pub fn check_peripherals(ball: &BallIndex, peripherals: &[usize]) -> Result<Vec<usize>> {
    let mut p = peripherals.to_vec();
    p.sort_unstable();
    p.dedup();
    if let Some(&f) = p.iter().find(|&&f| f >= ball.fp().num_factors()) {
        return Err(Error::InvalidInput(format!("peripheral factor {f} out of range")));
    }
    Ok(p)
}

impl<'a> ConedOverlay<'a> {
    pub fn new(ball: &'a BallIndex, peripherals: &[usize]) -> Result<Self> {
        let peripherals = check_peripherals(ball, peripherals)?;
        let n = ball.len();
        let mut index: BTreeMap<(usize, u32), u32> = BTreeMap::new();
        for &f in &peripherals {
            for x in 0..n as u32 {
                let c = ball.coset(f, x);
                let next = index.len() as u32;
                index.entry((f, c)).or_insert(next);
            }
        }
        // renumber in (factor, coset) order
        let cones: Vec<(usize, u32)> = index.keys().copied().collect();
        let id_of: BTreeMap<(usize, u32), u32> = cones.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let mut cone_of = vec![Vec::new(); n];
        let mut members = vec![Vec::new(); cones.len()];
        for x in 0..n as u32 {
            for &f in &peripherals {
                let c = id_of[&(f, ball.coset(f, x))];
                cone_of[x as usize].push(n as u32 + c);
                members[c as usize].push(x);
            }
        }
        Ok(ConedOverlay { ball, peripherals, cones, cone_of, members })
    }

    pub fn ball(&self) -> &BallIndex {
        self.ball
    }

    pub fn peripherals(&self) -> &[usize] {
        &self.peripherals
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    pub fn cone_degree(&self, c: usize) -> usize {
        self.members[c].len()
    }

    pub fn cones(&self) -> Vec<ConeExport> {
        self.cones
            .iter()
            .zip(&self.members)
            .map(|(&(factor, coset), m)| ConeExport { factor, coset, members: m.clone() })
            .collect()
    }

    /// Distances in the coned-off graph from ball element `x` to every
    /// vertex, cones included.
    pub fn bfs(&self, x: u32) -> Vec<u32> {
        let n = self.ball.len();
        let mut d = vec![UNREACHED; n + self.cones.len()];
        let mut q = VecDeque::new();
        d[x as usize] = 0;
        q.push_back(x);
        while let Some(v) = q.pop_front() {
            let dv = d[v as usize] + 1;
            let mut visit = |w: u32, q: &mut VecDeque<u32>| {
                if d[w as usize] == UNREACHED {
                    d[w as usize] = dv;
                    q.push_back(w);
                }
            };
            if (v as usize) < n {
                for (_, w) in self.ball.neighbors(v) {
                    visit(w, &mut q);
                }
                for &c in &self.cone_of[v as usize] {
                    visit(c, &mut q);
                }
            } else {
                for &w in &self.members[v as usize - n] {
                    visit(w, &mut q);
                }
            }
        }
        d
    }

    pub fn distance(&self, x: u32, y: u32) -> Result<usize> {
        self.ball.check_usable(x, y)?;
        Ok(self.bfs(x)[y as usize] as usize)
    }
}
