//! Word problem for C'*(λ) presentations by Dehn rewriting interleaved with
//! free-product reduction.

mod index;
mod reduce;

pub use index::{ConjugateAt, RelatorIndex};
pub use reduce::{DehnTrace, RewriteStep};

use reduce::{build_index, build_long, dehn_trace, LongRelator, RelatorForms, SyllableIndex};

use crate::error::{Error, Result};
use crate::frac::{open_unit, Frac};
use crate::freeprod::{FreeProduct, Letter, Word};
use crate::lgraph::{canonical_cycle_label, check_cstar, girth, simple_cycles_capped, CstarReport, LabelledGraph};

const CYCLE_CAP: usize = 100_000;

/// A free product with one relator per simple cycle of the relator graph.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub fp: FreeProduct,
    pub graph: LabelledGraph,
    relators: Vec<Word>,
    forms: Vec<RelatorForms>,
    syllable_index: SyllableIndex,
    long: Vec<LongRelator>,
    index: RelatorIndex,
    certified: Option<Frac>,
}

impl Presentation {
    /// Relators are the cyclically reduced labels of the simple cycles of
    /// `graph`, up to rotation and inversion, shortest first.
    pub fn new(fp: FreeProduct, graph: LabelledGraph) -> Result<Self> {
        let (cycles, done) = simple_cycles_capped(&graph, graph.num_edges(), CYCLE_CAP);
        if !done {
            return Err(Error::Unsupported(format!("relator graph has more than {CYCLE_CAP} simple cycles")));
        }
        let mut relators: Vec<Word> = Vec::new();
        for c in &cycles {
            let nf = fp.cyclic_reduce(&c.label)?;
            if nf.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "cycle with label {} is trivial in the free product",
                    fp.format_word(&c.label)
                )));
            }
            relators.push(canonical_cycle_label(&nf.spell(), &fp));
        }
        relators.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        relators.dedup();
        let forms: Vec<RelatorForms> = relators.iter().map(|r| RelatorForms::new(r, &fp)).collect();
        let long = build_long(&forms, &fp);
        let syllable_index = build_index(&forms, &long);
        let index = RelatorIndex::new(&relators, &fp);
        Ok(Presentation { fp, graph, relators, forms, syllable_index, long, index, certified: None })
    }

    /// The free product itself, with an empty relator graph.
    pub fn relator_free(fp: FreeProduct) -> Self {
        let graph = LabelledGraph::new(0, Vec::new(), &fp).expect("empty graph");
        Presentation::new(fp, graph).expect("no cycles")
    }

    pub fn from_relators(fp: FreeProduct, relators: &[Word]) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 0;
        for r in relators {
            let base = n;
            for (i, &l) in r.iter().enumerate() {
                let v = if i + 1 == r.len() { base } else { base + i + 1 };
                edges.push(crate::lgraph::Edge { u: base + i, v, label: l });
            }
            n += r.len();
        }
        let g = LabelledGraph::new(n, edges, &fp)?;
        Presentation::new(fp, g)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn index(&self) -> &RelatorIndex {
        &self.index
    }

    /// Shortest relator length, `None` without relators.
    pub fn relator_girth(&self) -> Option<usize> {
        self.relators.iter().map(|r| r.len()).min()
    }

    pub fn graph_girth(&self) -> Option<usize> {
        girth(&self.graph)
    }

    /// Run the C'*(λ) checker; a pass marks the presentation certified at λ.
    pub fn certify(&mut self, lambda: Frac, radius: usize) -> Result<CstarReport> {
        let rep = check_cstar(&self.graph, lambda, radius, &self.fp)?;
        if rep.passed() {
            self.certified = Some(match self.certified {
                Some(c) if c <= lambda => c,
                _ => lambda,
            });
        }
        Ok(rep)
    }

    pub fn certified(&self) -> Option<Frac> {
        self.certified
    }

    pub fn dehn_trace(&self, w: &[Letter], theta: Frac) -> Result<DehnTrace> {
        if !open_unit(theta) {
            return Err(Error::InvalidInput(format!("theta must lie in (0,1), got {theta}")));
        }
        for &l in w {
            self.fp.check_letter(l)?;
        }
        dehn_trace(self, w, theta)
    }

    pub fn dehn_reduce(&self, w: &[Letter], theta: Frac) -> Result<Word> {
        Ok(self.dehn_trace(w, theta)?.output)
    }
}

/// Equality oracle. Only sound for presentations certified at λ ≤ 1/6.
#[derive(Clone, Copy, Debug)]
pub struct WordProblem<'a> {
    p: &'a Presentation,
    theta: Frac,
}

impl<'a> WordProblem<'a> {
    pub fn new(p: &'a Presentation, force: bool) -> Result<Self> {
        let sound = p.relators.is_empty() || p.certified.is_some_and(|l| l <= Frac::new(1, 6));
        if !sound && !force {
            return Err(Error::OracleUnsound(
                "presentation is not certified C'*(λ) with λ ≤ 1/6; pass --force to use it anyway".into(),
            ));
        }
        Ok(WordProblem { p, theta: Frac::new(1, 2) })
    }

    pub fn with_theta(mut self, theta: Frac) -> Result<Self> {
        if !open_unit(theta) {
            return Err(Error::InvalidInput(format!("theta must lie in (0,1), got {theta}")));
        }
        self.theta = theta;
        Ok(self)
    }

    pub fn presentation(&self) -> &'a Presentation {
        self.p
    }

    pub fn reduce(&self, w: &[Letter]) -> Result<Word> {
        self.p.dehn_reduce(w, self.theta)
    }

    pub fn trace(&self, w: &[Letter]) -> Result<DehnTrace> {
        self.p.dehn_trace(w, self.theta)
    }

    pub fn is_trivial(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.reduce(w)?.is_empty())
    }

    pub fn equal(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        let mut w = u.to_vec();
        w.extend(self.p.fp.inverse(v));
        self.is_trivial(&w)
    }
}
