use super::{simple_factor_loop, Diagram, DiagramBuilder};
use crate::dehn::Presentation;
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::freeprod::{FreeProduct, Letter};

/// A diagram with boundary label `w`, assembled by replaying the Dehn
/// trace of `w` backwards: each rewrite attaches one relator face along
/// the boundary segment reading its replacement, and free cancellations
/// come back as spurs. A word that is a simple closed path in one factor
/// gives a single trivial face.
///
/// `Ok(None)` when Dehn reduction does not reach the empty word or needs
/// more than `budget` rewrites. Reductions that respell syllables rather
/// than cancel letters are `Unsupported`.
pub fn search_diagram(w: &[Letter], p: &Presentation, budget: usize) -> Result<Option<Diagram>> {
    let fp = &p.fp;
    for &l in w {
        fp.check_letter(l)?;
    }
    if simple_factor_loop(w, fp) {
        let mut b = DiagramBuilder::new();
        b.attach_face(0, 0, w, true)?;
        return Ok(Some(b.finish()));
    }
    let trace = p.dehn_trace(w, Frac::new(1, 2))?;
    if !trace.output.is_empty() || trace.steps.len() > budget {
        return Ok(None);
    }
    let mut b = DiagramBuilder::new();
    for s in trace.steps.iter().rev() {
        if s.split != s.before {
            return Err(Error::Unsupported("rewrite respells a syllable".into()));
        }
        let m = s.matched.len();
        let mut raw = s.split[..s.start].to_vec();
        raw.extend_from_slice(&s.replacement);
        raw.extend_from_slice(&s.split[s.start + m..]);
        unreduce(&mut b, &raw, &s.after, fp)?;
        b.attach_face(s.start, s.start + s.replacement.len(), &s.matched, false)?;
    }
    unreduce(&mut b, &trace.input, &trace.initial, fp)?;
    let d = b.finish();
    debug_assert_eq!(d.boundary_word(fp), w);
    Ok(Some(d))
}

/// The boundary reads `target`, the free reduction of `raw`. Hang the
/// cancelled letters back on as trees.
fn unreduce(b: &mut DiagramBuilder, raw: &[Letter], target: &[Letter], fp: &FreeProduct) -> Result<()> {
    let mut stack: Vec<usize> = Vec::new();
    let mut partner = vec![usize::MAX; raw.len()];
    for (i, &l) in raw.iter().enumerate() {
        match stack.last() {
            Some(&j) if raw[j] == fp.inv_letter(l) => {
                stack.pop();
                partner[j] = i;
                partner[i] = j;
            }
            _ => stack.push(i),
        }
    }
    let survivors: Vec<Letter> = stack.iter().map(|&i| raw[i]).collect();
    if survivors != target {
        return Err(Error::Unsupported("free-product reduction is not a free cancellation".into()));
    }
    let mut pos = 0;
    for (i, &l) in raw.iter().enumerate() {
        if partner[i] != usize::MAX && partner[i] > i {
            b.attach_spur(pos, l)?;
        }
        pos += 1;
    }
    Ok(())
}
