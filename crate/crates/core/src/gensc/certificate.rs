use std::collections::HashMap;

use serde::Serialize;

use super::build::{GenMode, GenOptions};
use crate::error::{Error, Result};
use crate::frac::lt_frac_times;
use crate::freeprod::{enumerate_reduced_words, FreeProduct, Letter, Word};
use crate::lgraph::{cycle_longest_piece, factor_subpath_bound, LabelledGraph, WitnessOut};

#[derive(Clone, Debug, Serialize)]
pub struct Coverage {
    pub expected: usize,
    pub covered: usize,
    /// First position of each enumerated word, in enumeration order.
    pub first_position: Vec<Option<usize>>,
    pub missing: Vec<String>,
}

impl Coverage {
    pub fn complete(&self) -> bool {
        self.covered == self.expected
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCertificate {
    pub mode: GenMode,
    pub scale: usize,
    /// Scale 8 in full mode; anything else is a toy.
    pub within_hypotheses: bool,
    pub d: usize,
    pub d_enumerated: usize,
    #[serde(skip)]
    pub w: Word,
    pub w_len: usize,
    pub reduced: bool,
    pub longest_piece: usize,
    pub piece_witness: Option<WitnessOut>,
    pub piece_bound: usize,
    pub lambda: String,
    pub lambda_ok: bool,
    pub coverage: Coverage,
    pub factor_subpath_max: usize,
    pub length_lower_bound: usize,
    pub padding: Vec<usize>,
    /// `|w| > 8·piece_bound`; only meaningful for d ≥ 36.
    pub bound_inequality: bool,
    pub valid: bool,
}

/// Recompute every field from `w` alone.
pub fn verify(w: &[Letter], d: usize, fp: &FreeProduct, opts: &GenOptions) -> Result<GeneratorCertificate> {
    if w.is_empty() {
        return Err(Error::InvalidInput("empty relator word".into()));
    }
    let l0 = opts.scale;
    let n = w.len();
    let reduced = fp.is_reduced(w) && fp.cyclic_reduce(w)?.len() == n;

    let g = LabelledGraph::cycle(w, fp)?;
    let darts = g.as_single_cycle().expect("cycle graph");
    let (piece, witness) = cycle_longest_piece(&g, &darts);
    let fs = factor_subpath_bound(&g).length;

    let words = enumerate_reduced_words(l0, fp);
    let coverage = coverage(w, &words, fp);

    let (piece_bound, length_lower_bound) = match opts.mode {
        GenMode::Full => (2 * l0 * d + 5 * l0, l0 * d * d.saturating_sub(1) / 2),
        GenMode::Compact => (l0, 0),
    };
    let lambda_ok = lt_frac_times(piece, opts.lambda, n);
    let valid = reduced
        && coverage.complete()
        && d == words.len()
        && piece < piece_bound
        && lambda_ok
        && fs <= l0
        && n >= length_lower_bound;
    Ok(GeneratorCertificate {
        mode: opts.mode,
        scale: l0,
        within_hypotheses: opts.mode == GenMode::Full && l0 == 8,
        d,
        d_enumerated: words.len(),
        w: w.to_vec(),
        w_len: n,
        reduced,
        longest_piece: piece,
        piece_witness: witness.map(|p| WitnessOut { label: fp.format_word(&p.label), imm1: p.imm1, imm2: p.imm2 }),
        piece_bound,
        lambda: opts.lambda.to_string(),
        lambda_ok,
        coverage,
        factor_subpath_max: fs,
        length_lower_bound,
        padding: Vec::new(),
        bound_inequality: n > 8 * piece_bound,
        valid,
    })
}

fn coverage(w: &[Letter], words: &[Word], fp: &FreeProduct) -> Coverage {
    let l0 = words.first().map_or(0, |x| x.len());
    let n = w.len();
    let mut first: HashMap<&[Letter], usize> = HashMap::new();
    let doubled: Word = w.iter().chain(w.iter().take(l0.saturating_sub(1))).copied().collect();
    if l0 > 0 {
        for i in 0..n {
            if i + l0 <= doubled.len() {
                first.entry(&doubled[i..i + l0]).or_insert(i);
            }
        }
    }
    let first_position: Vec<Option<usize>> = words.iter().map(|x| first.get(&x[..]).copied()).collect();
    let missing: Vec<String> = words
        .iter()
        .zip(&first_position)
        .filter(|(_, p)| p.is_none())
        .take(10)
        .map(|(x, _)| fp.format_word(x))
        .collect();
    Coverage {
        expected: words.len(),
        covered: first_position.iter().filter(|p| p.is_some()).count(),
        first_position,
        missing,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GapScan {
    /// Cyclic gaps between consecutive letters of the third factor.
    pub gaps: usize,
    /// Blocks i ≥ 2 whose gap range [L₀i, L₀i+2] is hit other than once.
    pub failures: Vec<(usize, usize)>,
}

/// For block i ≥ 2 exactly one gap between consecutive third-factor letters
/// has length in [L₀i, L₀i+2]. The ranges of neighbouring blocks overlap
/// when L₀ < 4, so the scan only means something from there on.
pub fn gap_scan(w: &[Letter], d: usize, l0: usize) -> GapScan {
    let n = w.len();
    let pos: Vec<usize> = (0..n).filter(|&i| w[i].factor == 2).collect();
    let mut count: HashMap<usize, usize> = HashMap::new();
    for k in 0..pos.len() {
        let next = if k + 1 < pos.len() { pos[k + 1] } else { pos[0] + n };
        *count.entry(next - pos[k] - 1).or_default() += 1;
    }
    let failures = (2..=d)
        .filter_map(|i| {
            let c: usize = (l0 * i..=l0 * i + 2).map(|g| count.get(&g).copied().unwrap_or(0)).sum();
            (c != 1).then_some((i, c))
        })
        .collect();
    GapScan { gaps: pos.len(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeprod::z2_cubed;
    use crate::gensc::{generate, full_word};

    fn opts(scale: usize) -> GenOptions {
        GenOptions { scale, ..Default::default() }
    }

    #[test]
    fn toy_scale_is_valid() {
        let fp = z2_cubed(3);
        let g = generate(&fp.specs(), &opts(6)).unwrap();
        let c = &g.certificate;
        assert!(c.valid, "{c:?}");
        assert_eq!(c.d, 96);
        assert_eq!(c.factor_subpath_max, 1);
        assert!(!c.within_hypotheses);
        assert!(gap_scan(&g.word, c.d, 6).failures.is_empty());
    }

    #[test]
    fn w1_alone_is_invalid() {
        let fp = z2_cubed(3);
        let w1 = fp.parse_word("0:a 1:a 0:a 1:a 0:a 1:a 0:a 1:a").unwrap();
        let c = verify(&w1, 384, &fp, &opts(8)).unwrap();
        assert!(!c.valid);
        assert!(!c.coverage.complete());
        assert_eq!(c.longest_piece, 7);
        assert!(!c.lambda_ok);
    }

    #[test]
    fn deleting_letters_breaks_the_certificate() {
        let fp = z2_cubed(3);
        let words = enumerate_reduced_words(4, &fp);
        let w = full_word(&fp, 4, &words).unwrap();
        let good = verify(&w, words.len(), &fp, &opts(4)).unwrap();
        assert!(good.reduced && good.coverage.complete());
        let mut broken = 0;
        for i in (0..w.len()).step_by(7) {
            let mut m = w.clone();
            m.remove(i);
            let c = verify(&m, words.len(), &fp, &opts(4)).unwrap();
            if !c.reduced || !c.coverage.complete() {
                broken += 1;
            }
        }
        assert!(broken > 0);
    }

    #[test]
    fn empty_word_is_rejected() {
        assert!(verify(&[], 1, &z2_cubed(3), &opts(8)).is_err());
    }
}
