use std::fmt;

use serde::{Deserialize, Serialize};

use super::oracle::{Elem, FactorOracle, FactorSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub factor: u16,
    pub sym: u16,
}

impl Letter {
    pub fn new(factor: usize, sym: u16) -> Self {
        Letter { factor: factor as u16, sym }
    }
}

pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub factor: u16,
    pub elem: Elem,
    pub spelling: Vec<u16>,
}

impl Syllable {
    pub fn len(&self) -> usize {
        self.spelling.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spelling.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.spelling.iter().map(move |&s| Letter { factor: self.factor, sym: s })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub syllables: Vec<Syllable>,
}

impl NormalForm {
    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter length of the spelled-out form.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.len()).sum()
    }

    pub fn spell(&self) -> Word {
        self.syllables.iter().flat_map(|s| s.letters()).collect()
    }
}

/// The free product of a list of factor oracles.
#[derive(Clone, Debug)]
pub struct FreeProduct {
    factors: Vec<FactorOracle>,
    offsets: Vec<usize>,
}

impl FreeProduct {
    pub fn new(factors: Vec<FactorOracle>) -> Self {
        let mut offsets = Vec::with_capacity(factors.len() + 1);
        let mut acc = 0;
        for f in &factors {
            offsets.push(acc);
            acc += f.num_gens();
        }
        offsets.push(acc);
        FreeProduct { factors, offsets }
    }

    pub fn from_specs(specs: &[FactorSpec]) -> Result<Self> {
        let fs = specs
            .iter()
            .enumerate()
            .map(|(i, s)| FactorOracle::new(i, s.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(fs))
    }

    pub fn specs(&self) -> Vec<FactorSpec> {
        self.factors.iter().map(|f| f.spec().clone()).collect()
    }

    pub fn factors(&self) -> &[FactorOracle] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &FactorOracle {
        &self.factors[i]
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Size of the alphabet S = ⊔ S_i.
    pub fn num_letters(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Dense index of a letter in `0..num_letters()`.
    pub fn code(&self, l: Letter) -> usize {
        self.offsets[l.factor as usize] + l.sym as usize
    }

    pub fn letter_of_code(&self, c: usize) -> Letter {
        let f = self.offsets.partition_point(|&o| o <= c) - 1;
        Letter::new(f, (c - self.offsets[f]) as u16)
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.num_letters()).map(|c| self.letter_of_code(c)).collect()
    }

    pub fn check_letter(&self, l: Letter) -> Result<()> {
        match self.factors.get(l.factor as usize) {
            None => Err(Error::Malformed(format!("unknown factor index {}", l.factor))),
            Some(f) if l.sym as usize >= f.num_gens() => {
                Err(Error::Malformed(format!("factor {} has no generator #{}", l.factor, l.sym)))
            }
            _ => Ok(()),
        }
    }

    pub fn inv_letter(&self, l: Letter) -> Letter {
        Letter { factor: l.factor, sym: self.factors[l.factor as usize].inv_sym(l.sym) }
    }

    pub fn is_involution(&self, l: Letter) -> bool {
        self.inv_letter(l) == l
    }

    pub fn inverse(&self, w: &[Letter]) -> Word {
        w.iter().rev().map(|&l| self.inv_letter(l)).collect()
    }

    pub fn letter_elem(&self, l: Letter) -> &Elem {
        self.factors[l.factor as usize].gen_elem(l.sym)
    }

    pub fn syllable(&self, factor: usize, elem: Elem) -> Syllable {
        let spelling = self.factors[factor].spell(&elem);
        Syllable { factor: factor as u16, elem, spelling }
    }

    /// Free-product normal form of `w`.
    pub fn reduce(&self, w: &[Letter]) -> Result<NormalForm> {
        let mut stack: Vec<(u16, Elem)> = Vec::new();
        for &l in w {
            self.check_letter(l)?;
            let f = &self.factors[l.factor as usize];
            match stack.last_mut() {
                Some((fi, e)) if *fi == l.factor => {
                    let p = f.multiply(e, f.gen_elem(l.sym));
                    if f.is_identity(&p) {
                        stack.pop();
                    } else {
                        *e = p;
                    }
                }
                _ => stack.push((l.factor, f.gen_elem(l.sym).clone())),
            }
        }
        Ok(NormalForm { syllables: stack.into_iter().map(|(f, e)| self.syllable(f as usize, e)).collect() })
    }

    /// Normal form of a word already known to use valid letters.
    pub fn nf(&self, w: &[Letter]) -> NormalForm {
        self.reduce(w).expect("letters validated")
    }

    /// Multiply syllable sequences, merging at the junction.
    pub fn concat(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let mut out = a.syllables.clone();
        for s in &b.syllables {
            self.push_syllable(&mut out, s.factor as usize, &s.elem);
        }
        NormalForm { syllables: out }
    }

    /// Append a factor element to a syllable stack, merging and cancelling.
    pub fn push_syllable(&self, out: &mut Vec<Syllable>, factor: usize, e: &Elem) {
        let f = &self.factors[factor];
        if f.is_identity(e) {
            return;
        }
        if let Some(last) = out.last() {
            if last.factor as usize == factor {
                let p = f.multiply(&last.elem, e);
                out.pop();
                if !f.is_identity(&p) {
                    out.push(self.syllable(factor, p));
                }
                return;
            }
        }
        out.push(self.syllable(factor, e.clone()));
    }

    pub fn invert_nf(&self, a: &NormalForm) -> NormalForm {
        NormalForm {
            syllables: a
                .syllables
                .iter()
                .rev()
                .map(|s| self.syllable(s.factor as usize, self.factors[s.factor as usize].invert(&s.elem)))
                .collect(),
        }
    }

    /// Is `w` literally the spelled-out normal form of itself?
    pub fn is_reduced(&self, w: &[Letter]) -> bool {
        match self.reduce(w) {
            Ok(nf) => nf.spell() == w,
            Err(_) => false,
        }
    }

    /// Cyclically reduced normal form: the junction of the last and first
    /// syllables is merged until they lie in different factors.
    pub fn cyclic_reduce(&self, w: &[Letter]) -> Result<NormalForm> {
        let mut syl = self.reduce(w)?.syllables;
        while syl.len() >= 2 && syl[0].factor == syl[syl.len() - 1].factor {
            let first = syl.remove(0);
            let last = syl.pop().unwrap();
            let f = &self.factors[first.factor as usize];
            let p = f.multiply(&last.elem, &first.elem);
            if !f.is_identity(&p) {
                syl.push(self.syllable(first.factor as usize, p));
            }
        }
        Ok(NormalForm { syllables: syl })
    }

    pub fn letter_name(&self, l: Letter) -> String {
        format!("{}:{}", l.factor, self.factors[l.factor as usize].gen_name(l.sym))
    }

    pub fn parse_letter(&self, s: &str) -> Result<Letter> {
        let (i, sym) = s
            .split_once(':')
            .ok_or_else(|| Error::Malformed(format!("letter {s:?} is not of the form i:sym")))?;
        let i: usize = i.trim().parse().map_err(|_| Error::Malformed(format!("bad factor index in {s:?}")))?;
        let f = self.factors.get(i).ok_or_else(|| Error::Malformed(format!("unknown factor index {i}")))?;
        let sym = f
            .sym_by_name(sym.trim())
            .ok_or_else(|| Error::Malformed(format!("factor {i} has no generator {sym:?}")))?;
        Ok(Letter::new(i, sym))
    }

    /// Parse whitespace separated letters, e.g. `"0:a 1:b 0:A"`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace().map(|t| self.parse_letter(t)).collect()
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        w.iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn display<'a>(&'a self, w: &'a [Letter]) -> impl fmt::Display + 'a {
        WordDisplay { fp: self, w }
    }
}

struct WordDisplay<'a> {
    fp: &'a FreeProduct,
    w: &'a [Letter],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fp.format_word(self.w))
    }
}

/// Returns `Some(i)` iff every letter lies in factor `i`. The empty word
/// has no factor.
pub fn is_factor_word(w: &[Letter]) -> Option<usize> {
    let first = w.first()?.factor;
    w.iter().all(|l| l.factor == first).then_some(first as usize)
}
