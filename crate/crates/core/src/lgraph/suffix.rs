//! Suffix array by induced sorting (SA-IS), plus Kasai LCP.

pub fn suffix_array(s: &[u32]) -> Vec<usize> {
    let Some(&max) = s.iter().max() else {
        return Vec::new();
    };
    let s: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    sa_is(&s, max as usize)
}

const NONE: usize = usize::MAX;

fn sa_is(s: &[usize], upper: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }
    // ls[i]: suffix i is S-type
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] { ls[i + 1] } else { s[i] < s[i + 1] };
    }
    let mut sum_l = vec![0usize; upper + 1];
    let mut sum_s = vec![0usize; upper + 1];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i]] += 1;
        } else {
            sum_l[s[i] + 1] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        if c < upper {
            sum_l[c + 1] += sum_s[c];
        }
    }
    let induce = |lms: &[usize], sa: &mut Vec<usize>| {
        sa.iter_mut().for_each(|x| *x = NONE);
        let mut buf = sum_s.clone();
        for &d in lms {
            if d == n {
                continue;
            }
            sa[buf[s[d]]] = d;
            buf[s[d]] += 1;
        }
        let mut buf = sum_l.clone();
        sa[buf[s[n - 1]]] = n - 1;
        buf[s[n - 1]] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != NONE && v >= 1 && !ls[v - 1] {
                sa[buf[s[v - 1]]] = v - 1;
                buf[s[v - 1]] += 1;
            }
        }
        let mut buf = sum_l.clone();
        for i in (0..n).rev() {
            let v = sa[i];
            if v != NONE && v >= 1 && ls[v - 1] {
                buf[s[v - 1] + 1] -= 1;
                sa[buf[s[v - 1] + 1]] = v - 1;
            }
        }
    };
    let mut lms_map = vec![NONE; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len();
            lms.push(i);
        }
    }
    let m = lms.len();
    let mut sa = vec![NONE; n];
    induce(&lms, &mut sa);
    if m > 0 {
        let mut sorted: Vec<usize> = sa.iter().copied().filter(|&v| lms_map[v] != NONE).collect();
        let mut rec = vec![0usize; m];
        let mut rec_upper = 0;
        for i in 1..m {
            let (mut l, mut r) = (sorted[i - 1], sorted[i]);
            let end_l = if lms_map[l] + 1 < m { lms[lms_map[l] + 1] } else { n };
            let end_r = if lms_map[r] + 1 < m { lms[lms_map[r] + 1] } else { n };
            let mut same = end_l - l == end_r - r;
            if same {
                while l < end_l && s[l] == s[r] {
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec[lms_map[sorted[i]]] = rec_upper;
        }
        let rec_sa = sa_is(&rec, rec_upper);
        for i in 0..m {
            sorted[i] = lms[rec_sa[i]];
        }
        induce(&sorted, &mut sa);
    }
    sa
}

/// `lcp[t]` = longest common prefix of suffixes `sa[t-1]` and `sa[t]`;
/// `lcp[0] = 0`.
pub fn lcp_array(s: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (t, &i) in sa.iter().enumerate() {
        rank[i] = t;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}


#[cfg(test)]
mod periodic {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn periodic_texts(unit in prop::collection::vec(0u32..4, 1..6), reps in 1usize..40, tail in prop::collection::vec(0u32..6, 0..4)) {
            let mut s = unit.repeat(reps);
            s.extend(tail);
            let mut v: Vec<usize> = (0..s.len()).collect();
            v.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
            prop_assert_eq!(suffix_array(&s), v);
        }
    }
}
