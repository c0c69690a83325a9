use std::time::Instant;

use rayon::prelude::*;

use fpsc_core::freeprod::{z2_cubed, FactorSpec, FreeProduct};
use fpsc_core::gensc::{adaptive_scale, gap_scan, generate, verify, GenOptions};

#[test]
fn three_z2_full_scale() {
    let t = Instant::now();
    let fp = z2_cubed(3);
    let g = generate(&fp.specs(), &GenOptions::default()).unwrap();
    let c = &g.certificate;
    eprintln!("d={} |w|={} piece={} bound={} in {:?}", c.d, c.w_len, c.longest_piece, c.piece_bound, t.elapsed());
    assert_eq!(c.d, 384);
    assert_eq!(c.w_len, 595200);
    assert_eq!(c.piece_bound, 6184);
    assert!(c.longest_piece < 6184 && 8 * c.longest_piece < c.w_len);
    assert!(c.factor_subpath_max <= 8);
    assert!(c.reduced && c.coverage.complete() && c.within_hypotheses && c.bound_inequality);
    assert!(c.valid);
    assert!(gap_scan(&g.word, c.d, 8).failures.is_empty());
}

#[test]
fn property_suite_over_small_factor_lists() {
    let pool = [
        FactorSpec::Cyclic { order: 2 },
        FactorSpec::Cyclic { order: 3 },
        FactorSpec::CyclicZ,
        FactorSpec::Free { rank: 1 },
        FactorSpec::Free { rank: 2 },
    ];
    let mut lists: Vec<Vec<FactorSpec>> = Vec::new();
    for a in 0..pool.len() {
        lists.push(vec![pool[a].clone()]);
        for b in a..pool.len() {
            lists.push(vec![pool[a].clone(), pool[b].clone()]);
            for c in b..pool.len() {
                lists.push(vec![pool[a].clone(), pool[b].clone(), pool[c].clone()]);
            }
        }
    }
    lists.push(vec![pool[0].clone(); 4]);
    lists.push(vec![pool[0].clone(), pool[1].clone(), pool[2].clone(), pool[4].clone()]);
    lists.par_iter().enumerate().for_each(|(k, specs)| {
        let mut padded = specs.clone();
        while padded.len() < 3 {
            padded.push(FactorSpec::CyclicZ);
        }
        let scale = adaptive_scale(&FreeProduct::from_specs(&padded).unwrap());
        let g = generate(specs, &GenOptions { scale, ..Default::default() }).unwrap();
        let c = &g.certificate;
        assert!(c.valid, "{specs:?} at scale {scale}: {c:?}");
        if k % 5 == 0 {
            let again = verify(&g.word, c.d, &g.fp, &GenOptions { scale, ..Default::default() }).unwrap();
            assert_eq!(again.longest_piece, c.longest_piece);
        }
        if scale >= 4 {
            assert!(gap_scan(&g.word, c.d, scale).failures.is_empty(), "{specs:?}");
        }
        if c.d >= 36 {
            assert!(c.bound_inequality);
        }
    });
}

#[test]
fn gap_scan_at_scale_four() {
    for specs in [
        vec![FactorSpec::Cyclic { order: 2 }, FactorSpec::Cyclic { order: 3 }, FactorSpec::Cyclic { order: 2 }],
        vec![FactorSpec::Cyclic { order: 2 }, FactorSpec::Cyclic { order: 2 }, FactorSpec::CyclicZ],
        vec![FactorSpec::Cyclic { order: 3 }, FactorSpec::Cyclic { order: 2 }, FactorSpec::Free { rank: 1 }],
    ] {
        let g = generate(&specs, &GenOptions { scale: 4, ..Default::default() }).unwrap();
        let scan = gap_scan(&g.word, g.certificate.d, 4);
        assert!(scan.failures.is_empty(), "{specs:?}: {scan:?}");
    }
}
