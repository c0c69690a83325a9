//! Free products of factor groups: letters, words, normal forms.

mod enumerate;
mod oracle;
mod word;

pub use enumerate::enumerate_reduced_words;
pub use oracle::{Elem, FactorKind, FactorOracle, FactorSpec};
pub use word::{is_factor_word, FreeProduct, Letter, NormalForm, Syllable, Word};

/// `k` copies of Z/2.
pub fn z2_cubed(k: usize) -> FreeProduct {
    FreeProduct::from_specs(&vec![FactorSpec::Cyclic { order: 2 }; k]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn mixed() -> FreeProduct {
        FreeProduct::from_specs(&[
            FactorSpec::Cyclic { order: 2 },
            FactorSpec::Cyclic { order: 3 },
            FactorSpec::CyclicZ,
            FactorSpec::Free { rank: 2 },
        ])
        .unwrap()
    }

    #[test]
    fn reduce_examples() {
        let fp = z2_cubed(3);
        assert!(fp.reduce(&[]).unwrap().is_empty());
        let a = Letter::new(0, 0);
        assert!(fp.reduce(&[a, a]).unwrap().is_empty());

        let zz = FreeProduct::from_specs(&[FactorSpec::CyclicZ, FactorSpec::CyclicZ]).unwrap();
        let w = zz.parse_word("0:a 1:a 1:A 0:a").unwrap();
        let nf = zz.reduce(&w).unwrap();
        assert_eq!(nf.syllables.len(), 1);
        assert_eq!(nf.syllables[0].elem, Elem::Int(2));
        assert_eq!(zz.format_word(&nf.spell()), "0:a 0:a");
    }

    #[test]
    fn unknown_factor_is_malformed() {
        let fp = z2_cubed(2);
        assert!(fp.reduce(&[Letter::new(5, 0)]).is_err());
        assert!(fp.parse_word("7:a").is_err());
    }

    #[test]
    fn enumeration_counts() {
        let fp = z2_cubed(3);
        assert_eq!(enumerate_reduced_words(0, &fp), vec![Vec::<Letter>::new()]);
        assert_eq!(enumerate_reduced_words(1, &fp).len(), 3);
        assert_eq!(enumerate_reduced_words(8, &fp).len(), 384);
        for k in 2..5 {
            let fp = z2_cubed(k);
            for l in 1..7 {
                assert_eq!(enumerate_reduced_words(l, &fp).len(), k * (k - 1).pow(l as u32 - 1));
            }
        }
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let fp = mixed();
        for l in 0..5 {
            let ws = enumerate_reduced_words(l, &fp);
            let set: HashSet<_> = ws.iter().collect();
            assert_eq!(set.len(), ws.len());
            for w in &ws {
                assert_eq!(w.len(), l);
                assert_eq!(&fp.reduce(w).unwrap().spell(), w);
            }
        }
    }

    #[test]
    fn factor_word() {
        let fp = FreeProduct::from_specs(&[FactorSpec::CyclicZ, FactorSpec::CyclicZ]).unwrap();
        assert_eq!(is_factor_word(&fp.parse_word("0:a 0:a 0:a").unwrap()), Some(0));
        assert_eq!(is_factor_word(&fp.parse_word("0:a 1:a").unwrap()), None);
        assert_eq!(is_factor_word(&[]), None);
    }

    #[test]
    fn cyclic_reduce_merges_ends() {
        let fp = FreeProduct::from_specs(&[FactorSpec::CyclicZ, FactorSpec::CyclicZ]).unwrap();
        let w = fp.parse_word("0:a 1:a 0:a").unwrap();
        let c = fp.cyclic_reduce(&w).unwrap();
        assert_eq!(fp.format_word(&c.spell()), "1:a 0:a 0:a");
        let w = fp.parse_word("0:a 1:a 0:A").unwrap();
        assert_eq!(fp.format_word(&fp.cyclic_reduce(&w).unwrap().spell()), "1:a");
    }

    fn arb_word(fp: &FreeProduct, max: usize) -> impl Strategy<Value = Word> {
        let n = fp.num_letters();
        let letters = fp.letters();
        prop::collection::vec(0..n, 0..max).prop_map(move |v| v.into_iter().map(|c| letters[c]).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn reduce_is_retraction(w in arb_word(&mixed(), 24)) {
            let fp = mixed();
            let nf = fp.reduce(&w).unwrap();
            let sp = nf.spell();
            prop_assert!(sp.len() <= w.len());
            prop_assert_eq!(fp.reduce(&sp).unwrap(), nf.clone());
            for pair in nf.syllables.windows(2) {
                prop_assert_ne!(pair[0].factor, pair[1].factor);
            }
            let inv = fp.inverse(&w);
            let mut ww = w.clone();
            ww.extend(inv);
            prop_assert!(fp.reduce(&ww).unwrap().is_empty());
        }
    }
}
