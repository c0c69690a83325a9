use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ball::BallIndex;
use super::coned::check_peripherals;
use super::distform::coset_spans;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelStableParams {
    /// neighbourhood radius
    pub d: usize,
    /// cap on intersection diameters
    pub l: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StableReport {
    pub params: RelStableParams,
    pub peripherals: Vec<usize>,
    pub members: Vec<u32>,
    /// `d(1,x) + D > R`, or too many geodesics to enumerate.
    pub unverifiable: Vec<u32>,
}

/// Elements `x` with some geodesic `γ` from 1 such that every peripheral
/// coset `B` has `diam(γ ∩ [B]_D) ≤ L`. Geodesics are enumerated
/// exhaustively up to `cap` per element.
pub fn relative_stable_points(
    b: &BallIndex,
    params: RelStableParams,
    peripherals: &[usize],
    cap: usize,
) -> Result<StableReport> {
    let per = check_peripherals(b, peripherals)?;
    // (member, unverifiable) per element
    let rows: Vec<(bool, bool)> = (0..b.len() as u32)
        .into_par_iter()
        .map_init(BTreeMap::new, |cache, x| {
            if b.dist(x) + params.d > b.radius() {
                return (false, true);
            }
            let mut found = false;
            let complete = from_identity(b, x, cap, &mut |path| {
                let ok = coset_spans(b, &per, path, params.d, cache).values().all(|&s| s <= params.l);
                found |= ok;
                !ok
            });
            (found, !found && !complete)
        })
        .collect();
    let pick = |k: usize| (0..b.len() as u32).filter(|&x| if k == 0 { rows[x as usize].0 } else { rows[x as usize].1 }).collect();
    let (members, unverifiable) = (pick(0), pick(1));
    Ok(StableReport { params, peripherals: per, members, unverifiable })
}

/// Visit geodesics from 1 to `x` through the predecessor structure until
/// `visit` returns false. Returns false if `cap` paths were visited without
/// finishing.
pub(crate) fn from_identity(b: &BallIndex, x: u32, cap: usize, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    fn rec(b: &BallIndex, stack: &mut Vec<u32>, left: &mut usize, visit: &mut dyn FnMut(&[u32]) -> bool) -> Option<bool> {
        let v = *stack.last().unwrap();
        if v == 0 {
            if *left == 0 {
                return None;
            }
            *left -= 1;
            let path: Vec<u32> = stack.iter().rev().copied().collect();
            return Some(visit(&path));
        }
        for (y, _) in b.predecessors(v) {
            stack.push(y);
            let r = rec(b, stack, left, visit);
            stack.pop();
            match r {
                Some(true) => {}
                other => return other,
            }
        }
        Some(true)
    }
    let mut left = cap;
    rec(b, &mut vec![x], &mut left, visit).is_some()
}
