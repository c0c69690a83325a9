use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ball::BallIndex;
use super::geodesic::UNREACHED;
use crate::error::{Error, Result};
use crate::frac::Frac;

#[derive(Clone, Debug, Serialize)]
pub struct MorseReport {
    pub lambda: String,
    pub epsilon: String,
    pub samples: usize,
    pub accepted: usize,
    /// Largest distance from γ over accepted detours. A lower bound for
    /// the Morse gauge, diagnostic only.
    pub max_offset: usize,
    pub diagnostic: bool,
}

/// Random detours between points of the geodesic `gamma` (a vertex list),
/// kept when they are (λ, ε)-quasi-geodesics in the ball metric.
pub fn morse_probe(
    b: &BallIndex,
    gamma: &[u32],
    lambda: Frac,
    epsilon: Frac,
    samples: usize,
    seed: u64,
) -> Result<MorseReport> {
    if gamma.is_empty() {
        return Err(Error::InvalidInput("empty geodesic".into()));
    }
    if lambda < Frac::from_integer(1) {
        return Err(Error::InvalidInput("λ must be at least 1".into()));
    }
    for w in gamma.windows(2) {
        if !b.neighbors(w[0]).any(|(_, y)| y == w[1]) {
            return Err(Error::InvalidInput("γ is not an edge path".into()));
        }
    }
    let (s, t) = (gamma[0], gamma[gamma.len() - 1]);
    b.check_usable(s, t)?;
    if b.bfs(s)[t as usize] as usize != gamma.len() - 1 {
        return Err(Error::InvalidInput("γ is not a geodesic".into()));
    }
    let to_gamma = b.bfs_bounded(gamma, u32::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut accepted, mut max_offset) = (0, 0);
    for _ in 0..samples {
        if gamma.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..gamma.len() - 1);
        let j = rng.gen_range(i + 1..gamma.len());
        let steps = rng.gen_range(1..=2 * (j - i) + 2);
        let mut path = vec![gamma[i]];
        for _ in 0..steps {
            let v = *path.last().unwrap();
            let nb: Vec<u32> = b.neighbors(v).map(|(_, y)| y).collect();
            path.push(nb[rng.gen_range(0..nb.len())]);
        }
        let back = b.bfs(gamma[j]);
        let end = *path.last().unwrap();
        if back[end as usize] == UNREACHED {
            continue;
        }
        let (tail, _) = b.lex_path(&back, end);
        path.extend_from_slice(&tail[1..]);
        if is_quasi_geodesic(b, &path, lambda, epsilon) {
            accepted += 1;
            let off = path.iter().map(|&v| to_gamma[v as usize] as usize).max().unwrap_or(0);
            max_offset = max_offset.max(off);
        }
    }
    Ok(MorseReport {
        lambda: lambda.to_string(),
        epsilon: epsilon.to_string(),
        samples,
        accepted,
        max_offset,
        diagnostic: true,
    })
}

/// `|s - t| ≤ λ (d(σ_s, σ_t) + ε)` for all parameter pairs. The upper
/// inequality holds for any edge path once λ ≥ 1.
fn is_quasi_geodesic(b: &BallIndex, path: &[u32], lambda: Frac, eps: Frac) -> bool {
    let len = path.len() as u32;
    for s in 0..path.len() {
        let d = b.bfs_bounded(&[path[s]], len);
        for t in s + 1..path.len() {
            let dst = d[path[t] as usize];
            if dst == UNREACHED {
                // farther than the whole path is long
                continue;
            }
            let rhs = lambda * (Frac::from_integer(dst as u64) + eps);
            if Frac::from_integer((t - s) as u64) > rhs {
                return false;
            }
        }
    }
    true
}
