use super::oracle::Elem;
use super::word::{FreeProduct, Letter, Word};

/// Every canonical normal-form word of length exactly `len`, one per
/// element of the free product at that length, sorted lexicographically.
pub fn enumerate_reduced_words(len: usize, fp: &FreeProduct) -> Vec<Word> {
    // spheres[f][l] = canonical spellings of factor-f elements of length l
    let spheres: Vec<Vec<Vec<Vec<u16>>>> = fp
        .factors()
        .iter()
        .map(|f| (0..=len).map(|l| f.sphere(l).iter().map(|e: &Elem| f.spell(e)).collect()).collect())
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    rec(&spheres, len, None, &mut cur, &mut out);
    out.sort();
    out
}

fn rec(
    spheres: &[Vec<Vec<Vec<u16>>>],
    left: usize,
    prev: Option<usize>,
    cur: &mut Vec<Letter>,
    out: &mut Vec<Word>,
) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for (f, sph) in spheres.iter().enumerate() {
        if prev == Some(f) {
            continue;
        }
        for l in 1..=left {
            for sp in &sph[l] {
                let n = cur.len();
                cur.extend(sp.iter().map(|&s| Letter::new(f, s)));
                rec(spheres, left - l, Some(f), cur, out);
                cur.truncate(n);
            }
        }
    }
}
