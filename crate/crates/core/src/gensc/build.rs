use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::certificate::{verify, GeneratorCertificate};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::freeprod::{enumerate_reduced_words, FactorSpec, FreeProduct, Letter, Word};
use crate::lgraph::LabelledGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenMode {
    /// The block construction.
    Full,
    /// A de Bruijn style cycle with every reduced length-L₀ word once.
    Compact,
}

#[derive(Clone, Debug)]
pub struct GenOptions {
    pub scale: usize,
    pub mode: GenMode,
    pub lambda: Frac,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions { scale: 8, mode: GenMode::Full, lambda: Frac::new(1, 8) }
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub fp: FreeProduct,
    pub padding: Vec<usize>,
    pub word: Word,
    pub graph: LabelledGraph,
    pub certificate: GeneratorCertificate,
}

pub fn generate(specs: &[FactorSpec], opts: &GenOptions) -> Result<Generated> {
    if specs.is_empty() {
        return Err(Error::InvalidInput("no factors given".into()));
    }
    let mut specs = specs.to_vec();
    let mut padding = Vec::new();
    if opts.mode == GenMode::Full {
        while specs.len() < 3 {
            padding.push(specs.len());
            specs.push(FactorSpec::CyclicZ);
        }
    }
    let fp = FreeProduct::from_specs(&specs)?;
    let words = enumerate_reduced_words(opts.scale, &fp);
    let word = match opts.mode {
        GenMode::Full => full_word(&fp, opts.scale, &words)?,
        GenMode::Compact => compact_word(&fp, &words)?,
    };
    let graph = LabelledGraph::cycle(&word, &fp)?;
    let mut certificate = verify(&word, words.len(), &fp, opts)?;
    certificate.padding = padding.clone();
    Ok(Generated { fp, padding, word, graph, certificate })
}

/// First generator of factor `f` with a non-identity image.
fn pick(fp: &FreeProduct, f: usize) -> Result<Letter> {
    let o = fp.factor(f);
    (0..o.num_gens() as u16)
        .find(|&s| !o.is_identity(o.gen_elem(s)))
        .map(|s| Letter::new(f, s))
        .ok_or_else(|| Error::InvalidInput(format!("factor {f} is trivial")))
}

/// `words` is the enumeration; w₁ = (s₁s₂)^{L₀/2} is moved to the front.
pub fn full_word(fp: &FreeProduct, l0: usize, words: &[Word]) -> Result<Word> {
    if l0 < 2 || l0 % 2 != 0 {
        return Err(Error::InvalidInput(format!("scale must be even and at least 2, got {l0}")));
    }
    if fp.num_factors() < 3 {
        return Err(Error::InvalidInput("the block word needs three factors".into()));
    }
    for f in 0..fp.num_factors() {
        pick(fp, f)?;
    }
    let (s1, s2, s3) = (pick(fp, 0)?, pick(fp, 1)?, pick(fp, 2)?);
    let w1: Word = [s1, s2].repeat(l0 / 2);
    let mut order: Vec<&Word> = Vec::with_capacity(words.len());
    order.push(&w1);
    order.extend(words.iter().filter(|w| **w != w1));
    if order.len() != words.len() {
        return Err(Error::InvalidInput("w₁ is missing from the enumeration".into()));
    }
    let d = order.len();
    let mut w = Vec::with_capacity(l0 * d * (d + 1) / 2 + (l0 + 2) * d);
    for (i, wi) in order.iter().enumerate() {
        for _ in 0..=i {
            w.extend_from_slice(&w1);
        }
        // any letter of the third factor next to tᵢ would merge into one syllable
        let t = if wi[0].factor == s3.factor { s1 } else { s3 };
        let t2 = if wi[wi.len() - 1].factor == s3.factor { s2 } else { s3 };
        w.push(t);
        w.extend_from_slice(wi);
        w.push(t2);
    }
    Ok(w)
}

/// Eulerian circuit in the graph whose vertices are length-(L₀−1) words and
/// whose edges are the given length-L₀ words.
pub fn compact_word(fp: &FreeProduct, words: &[Word]) -> Result<Word> {
    let l0 = words.first().map_or(0, |w| w.len());
    if l0 < 2 {
        return Err(Error::InvalidInput("compact mode needs scale at least 2".into()));
    }
    let mut ids: BTreeMap<&[Letter], usize> = BTreeMap::new();
    for w in words {
        for part in [&w[..l0 - 1], &w[1..]] {
            let n = ids.len();
            ids.entry(part).or_insert(n);
        }
    }
    let n = ids.len();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    let mut head = Vec::with_capacity(words.len());
    for (e, w) in words.iter().enumerate() {
        let (a, b) = (ids[&w[..l0 - 1]], ids[&w[1..]]);
        out[a].push(e);
        indeg[b] += 1;
        head.push(b);
    }
    if let Some(v) = (0..n).find(|&v| out[v].len() != indeg[v]) {
        let (w, _) = ids.iter().find(|(_, &i)| i == v).unwrap();
        return Err(Error::InvalidInput(format!(
            "no Eulerian cycle: {} has in-degree {} and out-degree {}",
            fp.format_word(w),
            indeg[v],
            out[v].len()
        )));
    }
    // Hierholzer; edges are taken in enumeration order
    for o in out.iter_mut() {
        o.reverse();
    }
    let start = ids[&words[0][..l0 - 1]];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut circuit = Vec::with_capacity(words.len());
    while let Some(&(v, _)) = stack.last() {
        match out[v].pop() {
            Some(e) => stack.push((head[e], Some(e))),
            None => {
                if let Some(e) = stack.pop().unwrap().1 {
                    circuit.push(e);
                }
            }
        }
    }
    if circuit.len() != words.len() {
        return Err(Error::InvalidInput("the word graph is not connected".into()));
    }
    circuit.reverse();
    Ok(circuit.iter().map(|&e| words[e][0]).collect())
}
