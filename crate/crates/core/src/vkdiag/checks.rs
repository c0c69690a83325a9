use std::collections::BTreeMap;

use serde::Serialize;

use super::analysis::face_graph;
use super::{twin, Dart, Diagram, EdgeKind};
use crate::cayley::BallIndex;
use crate::dehn::Presentation;
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::lgraph::LabelledGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1: a face intersection that is not a piece, 2: an interior face with
    /// fewer than 7 neighbours, 3: a face with a geodesic boundary path and
    /// fewer than 4 neighbours
    pub condition: u8,
    pub faces: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub violations: Vec<Violation>,
    /// checks that could not be decided
    pub unverified: Vec<String>,
}

impl MinimalityReport {
    /// A violation proves the diagram is not minimal.
    pub fn refutes_minimality(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// Maximal runs of `face` darts satisfying `pred`, read cyclically.
fn runs(face: &[Dart], pred: impl Fn(Dart) -> bool) -> Vec<Vec<Dart>> {
    let n = face.len();
    let Some(start) = (0..n).find(|&i| !pred(face[i])) else {
        return if n == 0 { Vec::new() } else { vec![face.to_vec()] };
    };
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for k in 1..=n {
        let x = face[(start + k) % n];
        if pred(x) {
            cur.push(x);
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    out
}

/// Distinct walks in `g` reading the dart codes `codes`, capped at `cap`.
fn count_walks(g: &LabelledGraph, codes: &[u32], cap: usize) -> usize {
    fn rec(g: &LabelledGraph, v: usize, codes: &[u32], left: &mut usize) {
        if *left == 0 {
            return;
        }
        let Some((&c, rest)) = codes.split_first() else {
            *left -= 1;
            return;
        };
        for &d in g.out_darts(v) {
            if g.code(d) == c {
                rec(g, g.head(d), rest, left);
            }
        }
    }
    let mut left = cap;
    for v in 0..g.num_vertices() {
        rec(g, v, codes, &mut left);
    }
    cap - left
}

/// Necessary conditions for a minimal diagram. Condition 1 asks that two
/// faces meet in one path, that its label occurs at two places of the
/// relator graph or lies in one factor, and, when the presentation is
/// certified at λ, that it is shorter than λ times either face. Condition 3
/// decides geodesicity in `ball` when given, and otherwise only refutes it
/// by Dehn reduction.
pub fn check_minimality_conditions(
    d: &Diagram,
    p: &Presentation,
    ball: Option<&BallIndex>,
) -> Result<MinimalityReport> {
    d.validate()?;
    let fp = &p.fp;
    let dg = d.graph(fp)?;
    let fg = face_graph(d);
    let face_of = d.face_of();
    let kinds = d.edge_kinds();
    let mut rep = MinimalityReport::default();

    for &(a, b) in fg.shared.keys() {
        let shared = runs(&d.faces[a].darts, |x| face_of[twin(x)] == Some(b));
        if shared.len() != 1 {
            rep.violations.push(Violation {
                condition: 1,
                faces: vec![a, b],
                detail: format!("faces meet in {} separate paths", shared.len()),
            });
            continue;
        }
        let path = &shared[0];
        let label = d.read(path, fp);
        let codes: Vec<u32> = path.iter().map(|&x| dg.code(x)).collect();
        let in_factor = crate::freeprod::is_factor_word(&label).is_some();
        if !in_factor && count_walks(&p.graph, &codes, 2) < 2 {
            rep.violations.push(Violation {
                condition: 1,
                faces: vec![a, b],
                detail: format!("shared path {} occurs once in the relator graph", fp.format_word(&label)),
            });
            continue;
        }
        if let Some(lambda) = p.certified() {
            let short = |f: usize| {
                Frac::from_integer(path.len() as u64) < lambda * Frac::from_integer(d.faces[f].darts.len() as u64)
            };
            if !short(a) || !short(b) {
                rep.violations.push(Violation {
                    condition: 1,
                    faces: vec![a, b],
                    detail: format!("shared path of length {} is not shorter than {lambda} of a face", path.len()),
                });
            }
        }
    }

    for (f, face) in d.faces.iter().enumerate() {
        let on_boundary = runs(&face.darts, |x| kinds[x / 2] != EdgeKind::Interior);
        let nb = fg.neighbours(f);
        if on_boundary.is_empty() {
            if nb < 7 {
                rep.violations.push(Violation {
                    condition: 2,
                    faces: vec![f],
                    detail: format!("interior face with {nb} neighbours"),
                });
            }
            continue;
        }
        if on_boundary.len() != 1 || nb >= 4 {
            continue;
        }
        let label = d.read(&on_boundary[0], fp);
        match geodesic(&label, p, ball)? {
            Some(true) => rep.violations.push(Violation {
                condition: 3,
                faces: vec![f],
                detail: format!("geodesic boundary path {} and {nb} neighbours", fp.format_word(&label)),
            }),
            Some(false) => {}
            None => rep.unverified.push(format!("face {f}: geodesicity of {} undecided", fp.format_word(&label))),
        }
    }
    Ok(rep)
}

fn geodesic(w: &[crate::freeprod::Letter], p: &Presentation, ball: Option<&BallIndex>) -> Result<Option<bool>> {
    if !p.fp.is_reduced(w) {
        return Ok(Some(false));
    }
    if let Some(b) = ball {
        if let Some(x) = b.walk(0, w) {
            return Ok(Some(b.dist(x) == w.len()));
        }
    }
    if p.relators().is_empty() {
        return Ok(Some(true));
    }
    let r = p.dehn_reduce(w, Frac::new(1, 2))?;
    Ok(if r.len() < w.len() { Some(false) } else { None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigonFace {
    pub face: usize,
    /// boundary positions of P1 on γ1 and of P2 on γ2, half-open
    pub p1: (usize, usize),
    pub p2: (usize, usize),
    pub shared_with: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigonReport {
    pub ok: bool,
    /// faces ordered along γ1
    pub ladder: Vec<usize>,
    pub faces: Vec<BigonFace>,
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    G1,
    G2,
    Face(usize),
}

/// The boundary walk is `γ1` (its first `gamma1_len` darts) followed by
/// `γ2⁻¹`. Each face must meet `γ1` and `γ2` in one path of positive
/// length each and share at most two further paths with other faces.
pub fn check_bigon_structure(d: &Diagram, gamma1_len: usize) -> Result<BigonReport> {
    d.validate()?;
    if gamma1_len > d.boundary.len() {
        return Err(Error::InvalidInput(format!(
            "γ1 length {gamma1_len} exceeds boundary length {}",
            d.boundary.len()
        )));
    }
    let mut pos: BTreeMap<Dart, usize> = BTreeMap::new();
    for (i, &x) in d.boundary.iter().enumerate() {
        pos.insert(x, i);
    }
    let face_of = d.face_of();
    let side = |x: Dart| match face_of[twin(x)] {
        Some(f) => Side::Face(f),
        None if pos[&twin(x)] < gamma1_len => Side::G1,
        None => Side::G2,
    };
    let mut faces = Vec::new();
    let mut witness = None;
    for (f, face) in d.faces.iter().enumerate() {
        let sides: Vec<Side> = face.darts.iter().map(|&x| side(x)).collect();
        let n = sides.len();
        // cyclic runs of equal sides
        let start = (0..n).find(|&i| sides[i] != sides[(i + n - 1) % n]).unwrap_or(0);
        let mut rs: Vec<(Side, Vec<Dart>)> = Vec::new();
        for k in 0..n {
            let i = (start + k) % n;
            match rs.last_mut() {
                Some((s, v)) if *s == sides[i] && k > 0 => v.push(face.darts[i]),
                _ => rs.push((sides[i], vec![face.darts[i]])),
            }
        }
        let g1: Vec<&Vec<Dart>> = rs.iter().filter(|r| r.0 == Side::G1).map(|r| &r.1).collect();
        let g2: Vec<&Vec<Dart>> = rs.iter().filter(|r| r.0 == Side::G2).map(|r| &r.1).collect();
        let shared: Vec<usize> = rs
            .iter()
            .filter_map(|r| match r.0 {
                Side::Face(g) => Some(g),
                _ => None,
            })
            .collect();
        if g1.len() != 1 || g2.len() != 1 || shared.len() > 2 {
            if witness.is_none() {
                witness = Some(format!(
                    "face {f} meets γ1 in {} paths, γ2 in {} paths and other faces in {} paths",
                    g1.len(),
                    g2.len(),
                    shared.len()
                ));
            }
            continue;
        }
        let span = |r: &Vec<Dart>| {
            let ps: Vec<usize> = r.iter().map(|&x| pos[&twin(x)]).collect();
            (*ps.iter().min().unwrap(), ps.iter().max().unwrap() + 1)
        };
        faces.push(BigonFace { face: f, p1: span(g1[0]), p2: span(g2[0]), shared_with: shared });
    }
    let ok = witness.is_none();
    let mut ladder: Vec<&BigonFace> = faces.iter().collect();
    ladder.sort_by_key(|b| b.p1.0);
    let ladder = ladder.iter().map(|b| b.face).collect();
    Ok(BigonReport { ok, ladder, faces, witness })
}
