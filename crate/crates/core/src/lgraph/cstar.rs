use serde::Serialize;

use super::completion::{bounded_completion, Collapse, CompletionSlice};
use super::cycles::{factor_subpath_bound, simple_cycles_capped, FactorSubpath};
use super::graph::{Dart, LabelledGraph};
use super::pieces::{cycle_longest_piece, PieceSearch, PieceWitness};
use crate::error::{Error, Result};
use crate::frac::{lt_frac_times, open_unit, Frac};
use crate::freeprod::FreeProduct;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CstarStatus {
    /// Every constraint holds on the radius-R slice.
    PassAtRadius,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessOut {
    pub label: String,
    pub imm1: Vec<Dart>,
    pub imm2: Vec<Dart>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CstarReport {
    pub status: CstarStatus,
    pub lambda: String,
    pub radius: usize,
    pub embedded: bool,
    pub collapses: Vec<Collapse>,
    /// Lower bound for |γ| over simple closed paths with non-trivial label.
    pub gamma_lower: Option<usize>,
    pub longest_piece: usize,
    pub piece_ratio: Option<String>,
    pub piece_witness: Option<WitnessOut>,
    pub factor_subpath: usize,
    pub factor_subpath_ratio: Option<String>,
    /// Auxiliary condition: factor-labelled subpaths shorter than |C|/8.
    pub factor_subpath_ok: bool,
    pub method: String,
    pub slice_vertices: usize,
    pub slice_edges: usize,
    pub notes: Vec<String>,
}

impl CstarReport {
    pub fn passed(&self) -> bool {
        self.status == CstarStatus::PassAtRadius
    }
}

#[derive(Clone, Debug)]
pub struct CstarOptions {
    /// Node budget for the general piece search.
    pub budget: u64,
    /// Cap on enumerated simple cycles of the base graph.
    pub cycle_cap: usize,
}

impl Default for CstarOptions {
    fn default() -> Self {
        CstarOptions { budget: 50_000_000, cycle_cap: 100_000 }
    }
}

pub fn default_radius(lambda: Frac, girth: Option<usize>) -> usize {
    let lg = girth.map_or(0, |g| (*lambda.numer() as usize * g) / *lambda.denom() as usize);
    lg.max(8) + 1
}

pub fn check_cstar(g: &LabelledGraph, lambda: Frac, radius: usize, fp: &FreeProduct) -> Result<CstarReport> {
    check_cstar_with(g, lambda, radius, fp, &CstarOptions::default())
}

pub fn check_cstar_with(
    g: &LabelledGraph,
    lambda: Frac,
    radius: usize,
    fp: &FreeProduct,
    opts: &CstarOptions,
) -> Result<CstarReport> {
    if !open_unit(lambda) {
        return Err(Error::InvalidInput(format!("lambda must lie in (0,1), got {lambda}")));
    }
    if radius == 0 {
        return Err(Error::InvalidInput("radius must be at least 1".into()));
    }
    let slice = bounded_completion(g, radius, fp)?;
    let mut notes = Vec::new();

    let single = g.as_single_cycle();
    let mut complete = true;
    let gamma_lower = match &single {
        Some(c) => {
            let nf = fp.cyclic_reduce(&g.walk_label(c))?;
            (!nf.is_empty()).then(|| nf.len())
        }
        None => {
            let (cycles, done) = simple_cycles_capped(g, g.num_edges(), opts.cycle_cap);
            if !done {
                complete = false;
                notes.push(format!("cycle enumeration stopped after {} cycles", opts.cycle_cap));
            }
            let mut best: Option<usize> = None;
            for c in cycles {
                let nf = fp.cyclic_reduce(&c.label)?;
                if !nf.is_empty() {
                    best = Some(best.map_or(nf.len(), |b| b.min(nf.len())));
                }
            }
            best
        }
    };

    let fs: FactorSubpath = factor_subpath_bound(g);
    let (factor_subpath_ratio, factor_subpath_ok) = match gamma_lower {
        Some(gm) => (Some(format!("{}/{}", fs.length, gm)), 8 * fs.length < gm),
        None => (None, true),
    };

    let (piece, witness, method) = match gamma_lower {
        None => {
            notes.push("no simple closed path with non-trivial label".into());
            (0, None, "vacuous".to_string())
        }
        Some(_) => {
            let fast = single.as_ref().filter(|c| slice.is_trivial_extension(g) && cyclically_geodesic(g, c, fp));
            match fast {
                Some(c) => {
                    let (len, w) = cycle_longest_piece(g, c);
                    (len, w, "suffix-array".to_string())
                }
                None => {
                    let (len, w, done) = sliced_piece_search(g, &slice, fp, opts.budget);
                    if !done {
                        complete = false;
                        notes.push(format!("piece search budget of {} nodes exhausted", opts.budget));
                    }
                    (len, w, "pair-search".to_string())
                }
            }
        }
    };

    let embedded = slice.embedded();
    let pieces_ok = gamma_lower.map_or(true, |gm| lt_frac_times(piece, lambda, gm));
    let status = if !embedded || !pieces_ok {
        CstarStatus::Fail
    } else if !complete {
        CstarStatus::Inconclusive
    } else {
        CstarStatus::PassAtRadius
    };
    Ok(CstarReport {
        status,
        lambda: lambda.to_string(),
        radius,
        embedded,
        collapses: slice.collapses.clone(),
        gamma_lower,
        longest_piece: piece,
        piece_ratio: gamma_lower.map(|gm| format!("{piece}/{gm}")),
        piece_witness: witness.map(|w| WitnessOut { label: fp.format_word(&w.label), imm1: w.imm1, imm2: w.imm2 }),
        factor_subpath: fs.length,
        factor_subpath_ratio,
        factor_subpath_ok,
        method,
        slice_vertices: slice.graph.num_vertices(),
        slice_edges: slice.graph.num_edges(),
        notes,
    })
}

/// The cycle label is its own cyclic normal form, so every subpath is
/// locally geodesic.
fn cyclically_geodesic(g: &LabelledGraph, c: &[Dart], fp: &FreeProduct) -> bool {
    let w = g.walk_label(c);
    if !fp.is_reduced(&w) {
        return false;
    }
    w.len() == 1 || w[0].factor != w[w.len() - 1].factor
}

/// Pieces of the slice whose first immersion lies in a block carrying a
/// cycle of the base graph.
fn sliced_piece_search(
    base: &LabelledGraph,
    slice: &CompletionSlice,
    fp: &FreeProduct,
    budget: u64,
) -> (usize, Option<PieceWitness>, bool) {
    let sg = &slice.graph;
    let blocks = sg.blocks();
    let mut edge_block = vec![0usize; sg.num_edges()];
    for (b, es) in blocks.iter().enumerate() {
        for &e in es {
            edge_block[e] = b;
        }
    }
    let base_bridge = base.bridges();
    let mut ok = vec![false; blocks.len()];
    for (e, &se) in slice.base_edge.iter().enumerate() {
        if !base_bridge[e] {
            ok[edge_block[se]] = true;
        }
    }
    let out = PieceSearch::new(sg).restrict_first(&edge_block, &ok).locally_geodesic(fp).budget(budget).run();
    (out.length, out.witness, out.complete)
}
