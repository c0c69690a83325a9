use crate::freeprod::{FreeProduct, Letter, Word};
use crate::lgraph::suffix::suffix_array;

/// Position of a cyclic conjugate: relator `rel`, inverted when `inverse`,
/// read from letter `offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjugateAt {
    pub rel: usize,
    pub inverse: bool,
    pub offset: usize,
}

/// Suffix array over every relator and its inverse, each doubled.
#[derive(Clone, Debug)]
pub struct RelatorIndex {
    text: Vec<u32>,
    sa: Vec<usize>,
    /// (text start, relator length, conjugate family) per doubled block
    blocks: Vec<(usize, usize, usize, bool)>,
}

impl RelatorIndex {
    pub fn new(relators: &[Word], fp: &FreeProduct) -> Self {
        let sep_base = fp.num_letters() as u32;
        let mut text = Vec::new();
        let mut blocks = Vec::new();
        let mut sep = sep_base;
        for (i, r) in relators.iter().enumerate() {
            for inverse in [false, true] {
                let w = if inverse { fp.inverse(r) } else { r.clone() };
                let n = w.len();
                blocks.push((text.len(), n, i, inverse));
                text.extend(w.iter().chain(&w[..n.saturating_sub(1)]).map(|&l| fp.code(l) as u32));
                text.push(sep);
                sep += 1;
            }
        }
        let sa = suffix_array(&text);
        RelatorIndex { text, sa, blocks }
    }

    fn locate(&self, pos: usize) -> Option<(ConjugateAt, usize)> {
        let b = self.blocks.partition_point(|&(start, ..)| start <= pos).checked_sub(1)?;
        let (start, n, rel, inverse) = self.blocks[b];
        let off = pos - start;
        (off < 2 * n - 1).then_some((ConjugateAt { rel, inverse, offset: off % n }, n))
    }

    /// Longest prefix of `w` that reads along some cyclic conjugate of a
    /// relator or its inverse, capped at the relator length. Ties go to the
    /// least conjugate.
    pub fn longest_prefix(&self, w: &[Letter], fp: &FreeProduct) -> (usize, Option<ConjugateAt>) {
        let codes: Vec<u32> = w.iter().map(|&l| fp.code(l) as u32).collect();
        let (mut lo, mut hi) = (0usize, self.sa.len());
        let mut k = 0;
        while k < codes.len() && lo < hi {
            let c = codes[k];
            let a = lo + self.sa[lo..hi].partition_point(|&p| self.text.get(p + k).map_or(true, |&x| x < c));
            let b = a + self.sa[a..hi].partition_point(|&p| self.text.get(p + k) == Some(&c));
            if a == b {
                break;
            }
            lo = a;
            hi = b;
            k += 1;
        }
        if k == 0 {
            return (0, None);
        }
        // entries in [lo, hi) share the first k codes
        let mut best: Option<(usize, ConjugateAt)> = None;
        for &p in &self.sa[lo..hi] {
            if let Some((at, n)) = self.locate(p) {
                let len = k.min(n);
                if best.map_or(true, |(l, b)| len > l || (len == l && at < b)) {
                    best = Some((len, at));
                }
            }
        }
        match best {
            Some((l, at)) => (l, Some(at)),
            None => (0, None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeprod::z2_cubed;

    fn brute(rels: &[Word], w: &[Letter], fp: &FreeProduct) -> usize {
        let mut best = 0;
        for r in rels {
            for v in [r.clone(), fp.inverse(r)] {
                let n = v.len();
                for o in 0..n {
                    let l = (0..n.min(w.len())).take_while(|&t| v[(o + t) % n] == w[t]).count();
                    best = best.max(l);
                }
            }
        }
        best
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let fp = z2_cubed(3);
        let rels = vec![
            fp.parse_word("0:a 1:a 2:a 0:a 2:a 1:a 2:a").unwrap(),
            fp.parse_word("0:a 1:a 0:a 2:a").unwrap(),
        ];
        let idx = RelatorIndex::new(&rels, &fp);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let len = rng.gen_range(0..12);
            let w: Word = (0..len).map(|_| Letter::new(rng.gen_range(0..3), 0)).collect();
            let (l, at) = idx.longest_prefix(&w, &fp);
            assert_eq!(l, brute(&rels, &w, &fp), "{}", fp.format_word(&w));
            if let Some(at) = at {
                let r = if at.inverse { fp.inverse(&rels[at.rel]) } else { rels[at.rel].clone() };
                for t in 0..l {
                    assert_eq!(r[(at.offset + t) % r.len()], w[t]);
                }
            }
        }
    }
}
