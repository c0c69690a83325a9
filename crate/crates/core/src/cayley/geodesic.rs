use std::collections::VecDeque;

use super::ball::BallIndex;
use crate::error::{Error, Result};
use crate::freeprod::Letter;

pub const UNREACHED: u32 = u32::MAX;

impl BallIndex {
    /// Ball-graph distances from `x`, `UNREACHED` outside its component.
    pub fn bfs(&self, x: u32) -> Vec<u32> {
        self.bfs_bounded(&[x], u32::MAX)
    }

    /// Multi-source BFS truncated at depth `max`.
    pub fn bfs_bounded(&self, sources: &[u32], max: u32) -> Vec<u32> {
        let mut d = vec![UNREACHED; self.len()];
        let mut q = VecDeque::new();
        for &s in sources {
            if d[s as usize] == UNREACHED {
                d[s as usize] = 0;
                q.push_back(s);
            }
        }
        while let Some(v) = q.pop_front() {
            let dv = d[v as usize];
            if dv == max {
                continue;
            }
            for (_, w) in self.neighbors(v) {
                if d[w as usize] == UNREACHED {
                    d[w as usize] = dv + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    /// `d_Γ(x, y)`, answered only for usable pairs.
    pub fn distance(&self, x: u32, y: u32) -> Result<usize> {
        self.check_usable(x, y)?;
        Ok(self.bfs(x)[y as usize] as usize)
    }

    /// Every geodesic from `x` to `y` as a vertex list. `Ok(None)` when more
    /// than `cap` exist.
    pub fn geodesics_capped(&self, x: u32, y: u32, cap: usize) -> Result<Option<Vec<Vec<u32>>>> {
        self.check_usable(x, y)?;
        let dx = self.bfs(x);
        let mut out = Vec::new();
        let mut stack = vec![y];
        if !self.enumerate_back(&dx, &mut stack, cap, &mut out) {
            return Ok(None);
        }
        out.sort();
        Ok(Some(out))
    }

    pub fn geodesics(&self, x: u32, y: u32) -> Result<Vec<Vec<u32>>> {
        self.geodesics_capped(x, y, usize::MAX)?
            .ok_or_else(|| Error::Unsupported("too many geodesics".into()))
    }

    fn enumerate_back(&self, dx: &[u32], stack: &mut Vec<u32>, cap: usize, out: &mut Vec<Vec<u32>>) -> bool {
        let v = *stack.last().unwrap();
        let d = dx[v as usize];
        if d == 0 {
            if out.len() >= cap {
                return false;
            }
            out.push(stack.iter().rev().copied().collect());
            return true;
        }
        for (_, w) in self.neighbors(v) {
            if dx[w as usize] + 1 == d {
                stack.push(w);
                let ok = self.enumerate_back(dx, stack, cap, out);
                stack.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// The geodesic from `x` to `y` whose label is lexicographically least.
    pub fn lex_geodesic(&self, x: u32, y: u32) -> Result<(Vec<u32>, Vec<Letter>)> {
        self.check_usable(x, y)?;
        Ok(self.lex_path(&self.bfs(y), x))
    }

    /// Greedy descent along `to_target` distances, least letter first.
    pub(crate) fn lex_path(&self, to_target: &[u32], from: u32) -> (Vec<u32>, Vec<Letter>) {
        let mut path = vec![from];
        let mut word = Vec::new();
        let mut v = from;
        while to_target[v as usize] > 0 {
            let d = to_target[v as usize];
            let (l, w) = self
                .neighbors(v)
                .find(|&(_, w)| to_target[w as usize] + 1 == d)
                .expect("BFS layers are consistent");
            path.push(w);
            word.push(l);
            v = w;
        }
        (path, word)
    }
}
