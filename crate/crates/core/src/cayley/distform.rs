use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ball::BallIndex;
use super::coned::ConedOverlay;
use crate::error::{Error, Result};
use crate::frac::Frac;

/// Peripheral cosets within distance `d` of `v`, as (factor, coset id).
pub(crate) fn near_cosets(b: &BallIndex, peripherals: &[usize], v: u32, d: usize) -> BTreeSet<(usize, u32)> {
    let mut out = BTreeSet::new();
    if d == 0 {
        for &f in peripherals {
            out.insert((f, b.coset(f, v)));
        }
        return out;
    }
    let dist = b.bfs_bounded(&[v], d as u32);
    for (u, &du) in dist.iter().enumerate() {
        if du as usize <= d {
            for &f in peripherals {
                out.insert((f, b.coset(f, u as u32)));
            }
        }
    }
    out
}

/// `diam(γ ∩ [B]_D)` for every coset `B` that `γ` comes near. `γ` is a
/// geodesic, so the diameter is the spread of indices along it.
pub(crate) fn coset_spans(
    b: &BallIndex,
    peripherals: &[usize],
    path: &[u32],
    d: usize,
    cache: &mut BTreeMap<u32, BTreeSet<(usize, u32)>>,
) -> BTreeMap<(usize, u32), usize> {
    let mut range: BTreeMap<(usize, u32), (usize, usize)> = BTreeMap::new();
    for (i, &v) in path.iter().enumerate() {
        let near = cache.entry(v).or_insert_with(|| near_cosets(b, peripherals, v, d));
        for &k in near.iter() {
            let r = range.entry(k).or_insert((i, i));
            r.1 = i;
        }
    }
    range.into_iter().map(|(k, (lo, hi))| (k, hi - lo)).collect()
}

#[derive(Clone, Debug)]
pub struct DistformOptions {
    pub d: usize,
    pub m: usize,
    pub sample: usize,
    pub seed: u64,
    /// Also evaluate every geodesic (up to this many) and report the spread.
    pub all_geodesics: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistformPair {
    pub x: String,
    pub y: String,
    pub d_gamma: usize,
    pub d_coned: usize,
    /// `Σ_B ⦃diam(γ ∩ [B]_D)⦄_M`
    pub coset_sum: usize,
    pub middle: usize,
    pub geodesic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub middle_range: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistformReport {
    pub d: usize,
    pub m: usize,
    pub peripherals: Vec<usize>,
    pub radius: usize,
    pub pairs: Vec<DistformPair>,
    /// Least K with C = 0, absent when some pair has middle 0 but d_Γ > 0.
    pub k_alone: Option<String>,
    /// Least C with K = 1.
    pub c_alone: usize,
    /// Least C for K = 1..=8.
    pub frontier: Vec<(usize, String)>,
}

fn truncate(x: usize, m: usize) -> usize {
    if x >= m {
        x
    } else {
        0
    }
}

/// Middle expression of the distance formula for each pair, along the
/// lexicographically least geodesic.
pub fn distance_formula_pairs(
    overlay: &ConedOverlay<'_>,
    pairs: &[(u32, u32)],
    opts: &DistformOptions,
) -> Result<DistformReport> {
    if opts.m == 0 {
        return Err(Error::InvalidInput("M must be at least 1".into()));
    }
    let b = overlay.ball();
    let per = overlay.peripherals().to_vec();
    let fp = b.fp();
    let mut cache = BTreeMap::new();
    let mut rows = Vec::with_capacity(pairs.len());
    for &(x, y) in pairs {
        let (path, word) = b.lex_geodesic(x, y)?;
        let d_gamma = word.len();
        let d_coned = overlay.distance(x, y)?;
        let middle_of = |path: &[u32], cache: &mut BTreeMap<_, _>| {
            let sum: usize = coset_spans(b, &per, path, opts.d, cache).values().map(|&s| truncate(s, opts.m)).sum();
            (sum, d_coned + sum)
        };
        let (coset_sum, middle) = middle_of(&path, &mut cache);
        let middle_range = match opts.all_geodesics {
            Some(cap) => {
                let all = b
                    .geodesics_capped(x, y, cap)?
                    .ok_or_else(|| Error::Unsupported(format!("more than {cap} geodesics")))?;
                let ms: Vec<usize> = all.iter().map(|p| middle_of(p, &mut cache).1).collect();
                Some((*ms.iter().min().unwrap(), *ms.iter().max().unwrap()))
            }
            None => None,
        };
        rows.push(DistformPair {
            x: fp.format_word(b.word(x)),
            y: fp.format_word(b.word(y)),
            d_gamma,
            d_coned,
            coset_sum,
            middle,
            geodesic: fp.format_word(&word),
            middle_range,
        });
    }

    let k_alone = rows
        .iter()
        .try_fold(Frac::from_integer(1), |k, r| {
            if r.d_gamma == 0 {
                return Some(k);
            }
            if r.middle == 0 {
                return None;
            }
            let a = Frac::new(r.middle as u64, r.d_gamma as u64);
            let bb = Frac::new(r.d_gamma as u64, r.middle as u64);
            Some(k.max(a).max(bb))
        })
        .map(|k| k.to_string());
    let c_alone = rows.iter().map(|r| r.middle.abs_diff(r.d_gamma)).max().unwrap_or(0);
    let frontier = (1..=8u64)
        .map(|k| {
            let c = rows.iter().fold(Frac::zero(), |c, r| {
                let (d, mid) = (r.d_gamma as u64, r.middle as u64);
                let low = Frac::new(d, k);
                let mut need = c;
                if low > Frac::from_integer(mid) {
                    need = need.max(low - Frac::from_integer(mid));
                }
                if mid > k * d {
                    need = need.max(Frac::from_integer(mid - k * d));
                }
                need
            });
            (k as usize, c.to_string())
        })
        .collect();
    Ok(DistformReport {
        d: opts.d,
        m: opts.m,
        peripherals: per,
        radius: b.radius(),
        pairs: rows,
        k_alone,
        c_alone,
        frontier,
    })
}

/// Seeded sample of usable pairs: pick `d(1,x)` uniformly in `0..=R`, then
/// `d(1,y)` in `0..=R-d(1,x)`, then uniform elements of those spheres.
pub fn sample_pairs(b: &BallIndex, n: usize, seed: u64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = b.radius();
    (0..n)
        .map(|_| {
            let dx = rng.gen_range(0..=r);
            let dy = rng.gen_range(0..=r - dx);
            let x = rng.gen_range(b.sphere(dx));
            let y = rng.gen_range(b.sphere(dy));
            if rng.gen_bool(0.5) {
                (x, y)
            } else {
                (y, x)
            }
        })
        .collect()
}

pub fn distance_formula_report(overlay: &ConedOverlay<'_>, opts: &DistformOptions) -> Result<DistformReport> {
    let pairs = sample_pairs(overlay.ball(), opts.sample, opts.seed);
    distance_formula_pairs(overlay, &pairs, opts)
}
