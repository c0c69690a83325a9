use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::dehn::{Presentation, WordProblem};
use crate::frac::Frac;
use crate::freeprod::{enumerate_reduced_words, z2_cubed, FactorSpec, FreeProduct};
use crate::gensc::compact_word;

pub(crate) fn toy() -> Presentation {
    let fp = z2_cubed(3);
    let r = compact_word(&fp, &enumerate_reduced_words(4, &fp)).unwrap();
    let mut p = Presentation::from_relators(fp, &[r]).unwrap();
    assert!(p.certify(Frac::new(1, 6), 2).unwrap().passed());
    p
}

fn free(specs: &[FactorSpec], r: usize) -> BallIndex {
    let p = Presentation::relator_free(FreeProduct::from_specs(specs).unwrap());
    BallIndex::build(&p, r, BallOptions::default()).unwrap()
}

#[test]
fn relator_free_z2_cubed_spheres() {
    let b = free(&vec![FactorSpec::Cyclic { order: 2 }; 3], 10);
    let s = b.sphere_sizes();
    assert_eq!(s[0], 1);
    for n in 1..=10 {
        assert_eq!(s[n], 3 << (n - 1), "sphere {n}");
    }
}

#[test]
fn two_z_factors() {
    let b = free(&[FactorSpec::CyclicZ, FactorSpec::CyclicZ], 5);
    assert_eq!(b.sphere_sizes(), vec![1, 4, 12, 36, 108, 324]);
}

#[test]
fn relator_free_matches_normal_forms() {
    let klein = FactorSpec::FiniteTable {
        table: vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]],
        gens: vec![1, 2],
        names: None,
    };
    let lists = [
        vec![FactorSpec::Cyclic { order: 3 }, FactorSpec::Cyclic { order: 2 }],
        vec![klein.clone(), FactorSpec::Cyclic { order: 2 }],
        vec![FactorSpec::Free { rank: 2 }, FactorSpec::Cyclic { order: 4 }],
        vec![klein, FactorSpec::CyclicZ, FactorSpec::Cyclic { order: 5 }],
    ];
    for specs in lists {
        let fp = FreeProduct::from_specs(&specs).unwrap();
        let b = free(&specs, 5);
        for n in 0..=5 {
            let words = enumerate_reduced_words(n, &fp);
            assert_eq!(b.sphere_sizes()[n], words.len(), "{specs:?} sphere {n}");
            for w in &words {
                let x = b.lookup(w).expect("in ball");
                assert_eq!(b.dist(x), n);
            }
        }
    }
}

#[test]
fn toy_spheres_drop_at_half_relator() {
    let p = toy();
    let b = BallIndex::build(&p, 13, BallOptions::default()).unwrap();
    let s = b.sphere_sizes();
    for n in 1..12 {
        assert_eq!(s[n], 3 << (n - 1), "sphere {n}");
    }
    // each of the 24 ways to cut the relator into equal halves
    assert_eq!(s[12], (3 << 11) - 24);
    assert!(s[13] < 3 << 12);
}

#[test]
fn toy_ball_agrees_with_dehn() {
    let p = toy();
    let wp = WordProblem::new(&p, false).unwrap();
    let b = BallIndex::build(&p, 13, BallOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // edges
    for _ in 0..3000 {
        let x = rng.gen_range(0..b.len() as u32);
        for (l, y) in b.neighbors(x) {
            let mut w = b.word(x).to_vec();
            w.push(l);
            assert!(wp.equal(&w, b.word(y)).unwrap());
            assert!(b.dist(x).abs_diff(b.dist(y)) <= 1);
        }
    }
    // distinct ids within a sphere are distinct elements
    for n in [11, 12, 13] {
        let r = b.sphere(n);
        for _ in 0..3000 {
            let x = rng.gen_range(r.clone());
            let y = rng.gen_range(r.clone());
            assert_eq!(x == y, wp.equal(b.word(x), b.word(y)).unwrap());
        }
    }
    // the two halves of the relator meet
    let r = &p.relators()[0];
    let x = b.lookup(&r[..12]).unwrap();
    let y = b.lookup(&p.fp.inverse(&r[12..])).unwrap();
    assert_eq!(x, y);
}

#[test]
fn uncertified_refused() {
    let fp = z2_cubed(3);
    let r = fp.parse_word("0:a 1:a 0:a 1:a 2:a 0:a 2:a 1:a").unwrap();
    let p = Presentation::from_relators(fp, &[r]).unwrap();
    assert!(BallIndex::build(&p, 3, BallOptions::default()).is_err());
    assert!(BallIndex::build(&p, 3, BallOptions { force: true, ..Default::default() }).is_ok());
}

#[test]
fn cosets_of_z_factor() {
    let b = free(&[FactorSpec::CyclicZ, FactorSpec::Cyclic { order: 2 }], 6);
    let fp = b.fp().clone();
    let a = fp.parse_word("0:a 0:a 0:a").unwrap();
    let x = b.lookup(&a).unwrap();
    assert_eq!(b.coset(0, x), 0);
    assert_ne!(b.coset(1, x), 0);
    // a^-6 .. a^6 all lie in the coset of the identity
    assert_eq!(b.coset_members(0, 0).len(), 13);
}

#[test]
fn z_factor_presentation_agrees_with_dehn() {
    let fp = FreeProduct::from_specs(&[FactorSpec::CyclicZ, FactorSpec::CyclicZ, FactorSpec::CyclicZ]).unwrap();
    let words: Vec<_> = enumerate_reduced_words(3, &fp);
    let r = compact_word(&fp, &words).unwrap();
    let mut p = Presentation::from_relators(fp, &[r]).unwrap();
    assert!(p.certify(Frac::new(1, 6), 2).unwrap().passed());
    let wp = WordProblem::new(&p, false).unwrap();
    let b = BallIndex::build(&p, 6, BallOptions::default()).unwrap();
    assert_eq!(b.sphere_sizes()[3], 150);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let x = rng.gen_range(0..b.len() as u32);
        for (l, y) in b.neighbors(x) {
            let mut w = b.word(x).to_vec();
            w.push(l);
            assert!(wp.equal(&w, b.word(y)).unwrap());
        }
        let y = rng.gen_range(0..b.len() as u32);
        assert_eq!(x == y, wp.equal(b.word(x), b.word(y)).unwrap());
    }
}

fn z_z2() -> BallIndex {
    free(&[FactorSpec::CyclicZ, FactorSpec::Cyclic { order: 2 }], 10)
}

#[test]
fn geodesics_in_trees_are_unique() {
    let b = free(&[FactorSpec::CyclicZ, FactorSpec::CyclicZ], 6);
    let fp = b.fp().clone();
    let a = b.lookup(&fp.parse_word("0:a").unwrap()).unwrap();
    let c = b.lookup(&fp.parse_word("1:a").unwrap()).unwrap();
    assert_eq!(b.geodesics(a, c).unwrap(), vec![vec![a, 0, c]]);
    assert_eq!(b.geodesics(a, a).unwrap(), vec![vec![a]]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (x, y) in sample_pairs(&b, 200, 5) {
        assert_eq!(b.geodesics(x, y).unwrap().len(), 1);
        let _ = &mut rng;
    }
    let far = b.sphere(6).start;
    assert!(matches!(b.geodesics(far, far + 1), Err(crate::Error::Unverifiable { .. })));
}

#[test]
fn toy_geodesics_cross_the_relator() {
    let p = toy();
    let b = BallIndex::build(&p, 12, BallOptions::default()).unwrap();
    let r = &p.relators()[0];
    let x = b.lookup(&r[..12]).unwrap();
    let g = b.geodesics(0, x).unwrap();
    assert_eq!(g.len(), 2);
    for path in &g {
        assert_eq!(path.len(), 13);
    }
}

#[test]
fn coned_distances() {
    let b = z_z2();
    let o = ConedOverlay::new(&b, &[0]).unwrap();
    let fp = b.fp().clone();
    for n in 2..=8 {
        let w: Vec<_> = std::iter::repeat(fp.parse_letter("0:a").unwrap()).take(n).collect();
        let x = b.lookup(&w).unwrap();
        assert_eq!(o.distance(0, x).unwrap(), 2);
    }
    assert_eq!(o.distance(0, 0).unwrap(), 0);
    for (x, y) in sample_pairs(&b, 300, 2) {
        let dc = o.distance(x, y).unwrap();
        assert!(dc <= b.distance(x, y).unwrap());
        if b.coset(0, x) == b.coset(0, y) {
            assert!(dc <= 2);
        }
    }
    for c in 0..o.num_cones() {
        assert!(o.cone_degree(c) >= 1);
    }
}

#[test]
fn distance_formula_on_z_line() {
    let b = z_z2();
    let o = ConedOverlay::new(&b, &[0]).unwrap();
    let fp = b.fp().clone();
    for n in 2..=8 {
        let w: Vec<_> = std::iter::repeat(fp.parse_letter("0:a").unwrap()).take(n).collect();
        let x = b.lookup(&w).unwrap();
        for m in 1..=n {
            let opts = DistformOptions { d: 0, m, sample: 0, seed: 0, all_geodesics: None };
            let rep = distance_formula_pairs(&o, &[(0, x)], &opts).unwrap();
            assert_eq!(rep.pairs[0].middle, 2 + n);
        }
    }
    let none = ConedOverlay::new(&b, &[]).unwrap();
    let opts = DistformOptions { d: 1, m: 1, sample: 200, seed: 9, all_geodesics: Some(10) };
    let rep = distance_formula_report(&none, &opts).unwrap();
    assert_eq!(rep.pairs.len(), 200);
    for r in &rep.pairs {
        assert_eq!(r.middle, r.d_gamma);
        assert_eq!(r.middle_range, Some((r.d_gamma, r.d_gamma)));
    }
    assert_eq!(rep.c_alone, 0);
    let same = distance_formula_pairs(&o, &[(3, 3)], &DistformOptions { d: 0, m: 1, sample: 0, seed: 0, all_geodesics: None }).unwrap();
    assert_eq!(same.pairs[0].middle, 0);
}

#[test]
fn distance_formula_alternating() {
    let b = free(&vec![FactorSpec::Cyclic { order: 2 }; 3], 8);
    let o = ConedOverlay::new(&b, &[0, 1, 2]).unwrap();
    let rep = distance_formula_report(&o, &DistformOptions { d: 0, m: 2, sample: 100, seed: 1, all_geodesics: None }).unwrap();
    for r in &rep.pairs {
        assert_eq!(r.middle, r.d_coned);
    }
}

#[test]
fn stable_points_examples() {
    let b = z_z2();
    let fp = b.fp().clone();
    for n in 1..=8 {
        let w: Vec<_> = std::iter::repeat(fp.parse_letter("0:a").unwrap()).take(n).collect();
        let x = b.lookup(&w).unwrap();
        for l in 0..=9 {
            let rep = relative_stable_points(&b, RelStableParams { d: 0, l }, &[0], 1000).unwrap();
            assert_eq!(rep.members.contains(&x), n <= l, "n {n} L {l}");
        }
    }
    let all = relative_stable_points(&b, RelStableParams { d: 0, l: 20 }, &[0], 1000).unwrap();
    assert_eq!(all.members.len(), b.len());
    let z2 = free(&vec![FactorSpec::Cyclic { order: 2 }; 3], 6);
    let rep = relative_stable_points(&z2, RelStableParams { d: 0, l: 1 }, &[0, 1, 2], 1000).unwrap();
    assert_eq!(rep.members.len(), z2.len());
}

#[test]
fn stable_points_monotone_on_toy() {
    let p = toy();
    let b = BallIndex::build(&p, 9, BallOptions::default()).unwrap();
    let mut grid = vec![];
    for d in 0..5 {
        let row: Vec<_> = (0..5)
            .map(|l| relative_stable_points(&b, RelStableParams { d, l }, &[0], 1000).unwrap().members)
            .collect();
        grid.push(row);
    }
    let subset = |a: &Vec<u32>, b: &Vec<u32>| a.iter().all(|x| b.binary_search(x).is_ok());
    for d in 0..5 {
        for l in 0..5 {
            if l + 1 < 5 {
                assert!(subset(&grid[d][l], &grid[d][l + 1]));
            }
            if d + 1 < 5 {
                assert!(subset(&grid[d + 1][l], &grid[d][l]));
            }
        }
    }
}

#[test]
fn morse_on_tree_and_toy() {
    let b = z_z2();
    let fp = b.fp().clone();
    let x = b.lookup(&fp.parse_word("0:a 1:a 0:a 0:a 1:a").unwrap()).unwrap();
    let (g, _) = b.lex_geodesic(0, x).unwrap();
    let rep = morse_probe(&b, &g, Frac::from_integer(1), Frac::from_integer(0), 200, 3).unwrap();
    assert_eq!(rep.max_offset, 0);
    assert!(rep.accepted > 0);
    let rep = morse_probe(&b, &g, Frac::from_integer(2), Frac::from_integer(2), 0, 3).unwrap();
    assert_eq!(rep.max_offset, 0);

    let p = toy();
    let b = BallIndex::build(&p, 10, BallOptions::default()).unwrap();
    let x = b.sphere(5).start + 7;
    let (g, _) = b.lex_geodesic(0, x).unwrap();
    let rep = morse_probe(&b, &g, Frac::from_integer(2), Frac::from_integer(2), 100, 3).unwrap();
    assert!(rep.max_offset <= b.radius());
}

#[test]
fn loop_erasure() {
    assert_eq!(erase_loops(&[1, 2, 3, 2, 4, 1, 5]), vec![1, 5]);
    assert_eq!(erase_loops(&[1, 2, 3]), vec![1, 2, 3]);
}

#[test]
fn one_ended_refuses_relator_free() {
    let p = Presentation::relator_free(z2_cubed(3));
    let b = BallIndex::build(&p, 3, BallOptions::default()).unwrap();
    let opts = OneEndedOptions { extension: 2, force: true };
    assert!(one_ended_path(&b, &p, 1, 2, opts).is_err());
}

#[test]
fn one_ended_toy_paths_avoid_inner_ball() {
    let p = toy();
    let b = BallIndex::build(&p, 16, BallOptions::default()).unwrap();
    let opts = OneEndedOptions { extension: 2, force: true };
    assert!(one_ended_path(&b, &p, 1, 2, OneEndedOptions { force: false, ..opts }).is_err());
    for d in 1..=3 {
        let s = b.sphere(d);
        let pts: Vec<u32> = s.clone().step_by((s.len() / 4).max(1)).collect();
        for &x in &pts {
            for &y in &pts {
                let path = one_ended_path(&b, &p, x, y, opts).unwrap();
                assert_eq!(path.vertices.first(), Some(&x));
                assert_eq!(path.vertices.last(), Some(&y));
                // independent recheck
                let dist = b.bfs(0);
                assert!(path.vertices.iter().all(|&v| dist[v as usize] as usize >= d));
            }
        }
    }
}
