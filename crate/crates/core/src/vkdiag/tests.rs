use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::cayley::tests::toy;
use crate::freeprod::{z2_cubed, FactorSpec, Word};

fn letters(fp: &FreeProduct, s: &str) -> Word {
    fp.parse_word(s).unwrap()
}

fn random_reduced(fp: &FreeProduct, len: usize, rng: &mut ChaCha8Rng) -> Word {
    let all = fp.letters();
    let mut w: Word = Vec::new();
    while w.len() < len {
        let l = all[rng.gen_range(0..all.len())];
        if w.last().map_or(true, |&x| x != fp.inv_letter(l) && x.factor != l.factor) {
            w.push(l);
        }
    }
    w
}

/// Normal form of a product of `k` conjugates of relators or inverses.
fn random_trivial(p: &Presentation, k: usize, rng: &mut ChaCha8Rng) -> Word {
    let fp = &p.fp;
    let mut w = Vec::new();
    for _ in 0..k {
        let x = random_reduced(fp, rng.gen_range(0..5), rng);
        let r = &p.relators()[rng.gen_range(0..p.relators().len())];
        let s = rng.gen_range(0..r.len());
        let mut c: Word = r[s..].iter().chain(&r[..s]).copied().collect();
        if rng.gen_bool(0.5) {
            c = fp.inverse(&c);
        }
        w.extend_from_slice(&x);
        w.extend(c);
        w.extend(fp.inverse(&x));
    }
    fp.nf(&w).spell()
}

fn polygon(n: usize, fp: &FreeProduct) -> Diagram {
    let a = fp.letters()[0];
    let mut b = DiagramBuilder::new();
    b.attach_face(0, 0, &vec![a; n], false).unwrap();
    b.finish()
}

/// Faces A, B, C in a row, B sharing one edge with each neighbour.
fn ladder(fp: &FreeProduct) -> Diagram {
    let l = fp.letters();
    let mut b = DiagramBuilder::new();
    b.attach_face(0, 0, &[l[0], l[1], l[2], l[0]], false).unwrap();
    b.attach_face(1, 2, &[l[2], l[1], l[0]], false).unwrap();
    b.attach_face(2, 3, &[l[1], l[2], l[1]], false).unwrap();
    b.finish()
}

#[test]
fn relator_gives_single_face() {
    let p = toy();
    let r = p.relators()[0].clone();
    let d = search_diagram(&r, &p, 10).unwrap().unwrap();
    d.validate_over(&p, &r).unwrap();
    assert_eq!(d.faces.len(), 1);
    assert!(!d.faces[0].trivial);
    assert!(interior_arcs(&d).is_empty());
    assert!(face_graph(&d).shared.is_empty());
    assert!(d.is_disc());
    let raw = curvature_rhs(&d, CurvatureConvention::RawEdges).unwrap();
    assert_eq!(raw.total, 6 - r.len() as i64);
}

#[test]
fn involution_square_is_trivial_face() {
    let fp = z2_cubed(3);
    let p = Presentation::relator_free(fp.clone());
    let w = letters(&fp, "0:a 0:a");
    let d = search_diagram(&w, &p, 1).unwrap().unwrap();
    d.validate_over(&p, &w).unwrap();
    assert_eq!(d.faces.len(), 1);
    assert!(d.faces[0].trivial);
}

#[test]
fn z_backtrack_is_a_spur() {
    let fp = FreeProduct::from_specs(&[FactorSpec::CyclicZ, FactorSpec::Cyclic { order: 2 }]).unwrap();
    let p = Presentation::relator_free(fp.clone());
    let w = letters(&fp, "0:a 1:a 0:A");
    assert_eq!(search_diagram(&w, &p, 1).unwrap(), None);
    let w = letters(&fp, "0:a 1:a 1:a 0:A");
    let d = search_diagram(&w, &p, 1).unwrap().unwrap();
    d.validate_over(&p, &w).unwrap();
    assert!(d.faces.is_empty());
    assert_eq!(d.edges.len(), 2);
    assert!(d.edge_kinds().iter().all(|&k| k == EdgeKind::Spur));
}

#[test]
fn two_adjacent_conjugates_give_two_faces() {
    let p = toy();
    let fp = &p.fp;
    let r = p.relators()[0].clone();
    // r · (r rotated by 3)⁻¹
    let rot: Word = r[3..].iter().chain(&r[..3]).copied().collect();
    let mut w = r.clone();
    w.extend(fp.inverse(&rot));
    let w = fp.nf(&w).spell();
    let d = search_diagram(&w, &p, 10).unwrap().unwrap();
    d.validate_over(&p, &w).unwrap();
    assert_eq!(d.faces.len(), 2);
}

#[test]
fn random_trivial_words_have_valid_diagrams() {
    let p = toy();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let k = rng.gen_range(1..4);
        let w = random_trivial(&p, k, &mut rng);
        let d = search_diagram(&w, &p, 64).unwrap().expect("trivial word");
        d.validate_over(&p, &w).unwrap();
        assert_eq!(d.euler_characteristic(), 1);
        assert!(d.faces.len() <= k || w.is_empty() || d.faces.len() <= 2 * k);
    }
}

#[test]
fn polygon_curvature() {
    let fp = z2_cubed(3);
    for n in [3, 5, 8] {
        let d = polygon(n, &fp);
        d.validate().unwrap();
        assert_eq!(curvature_rhs(&d, CurvatureConvention::RawEdges).unwrap().total, 6 - n as i64);
        // one kept vertex with a loop arc
        assert_eq!(curvature_rhs(&d, CurvatureConvention::ContractedArcs).unwrap().total, 5);
    }
}

#[test]
fn two_faces_share_one_arc() {
    let fp = z2_cubed(3);
    let l = fp.letters();
    let mut b = DiagramBuilder::new();
    b.attach_face(0, 0, &[l[0], l[1], l[2], l[0], l[1], l[2]], false).unwrap();
    b.attach_face(0, 3, &[l[1], l[0], l[2], l[1]], false).unwrap();
    let d = b.finish();
    d.validate().unwrap();
    let arcs = interior_arcs(&d);
    assert_eq!(arcs.len(), 1);
    assert_eq!(arcs[0].len(), 3);
    assert!(!arcs[0].closed);
    assert_eq!(curvature_rhs(&d, CurvatureConvention::ContractedArcs).unwrap().total, 6);
    let raw = curvature_rhs(&d, CurvatureConvention::RawEdges).unwrap();
    assert_ne!(raw.total, 6);
}

#[test]
fn ladder_is_a_bigon() {
    let fp = z2_cubed(3);
    let d = ladder(&fp);
    d.validate().unwrap();
    assert_eq!(d.boundary.len(), 8);
    let rep = check_bigon_structure(&d, 4).unwrap();
    assert!(rep.ok, "{:?}", rep.witness);
    assert_eq!(rep.ladder, vec![0, 1, 2]);
    assert_eq!(curvature_rhs(&d, CurvatureConvention::ContractedArcs).unwrap().total, 6);
    let bad = check_bigon_structure(&d, 1).unwrap();
    assert!(!bad.ok);
    assert!(bad.witness.unwrap().contains("face 1"));
    assert!(check_bigon_structure(&d, 9).is_err());
}

#[test]
fn empty_bigon_is_vacuous() {
    let rep = check_bigon_structure(&Diagram::trivial(), 0).unwrap();
    assert!(rep.ok);
    assert!(rep.ladder.is_empty());
}

#[test]
fn face_missing_a_side_fails_bigon() {
    let fp = z2_cubed(3);
    let l = fp.letters();
    // the second face hangs off the first at a single corner
    let mut b = DiagramBuilder::new();
    b.attach_face(0, 0, &[l[0], l[1], l[2], l[0]], false).unwrap();
    b.attach_face(1, 1, &[l[1], l[2], l[1]], false).unwrap();
    let d = b.finish();
    d.validate().unwrap();
    assert!(check_bigon_structure(&d, 2).unwrap().ok);
    assert!(!check_bigon_structure(&d, 1).unwrap().ok);
}

#[test]
fn over_glued_pair_violates_pieces() {
    let p = toy();
    let fp = &p.fp;
    let r = p.relators()[0].clone();
    let mut b = DiagramBuilder::new();
    b.attach_face(0, 0, &r, false).unwrap();
    b.attach_face(0, 12, &fp.inverse(&r[12..]), false).unwrap();
    let d = b.finish();
    d.validate().unwrap();
    d.validate_labels(&p).unwrap();
    let rep = check_minimality_conditions(&d, &p, None).unwrap();
    assert!(rep.refutes_minimality());
    assert!(rep.violations.iter().any(|v| v.condition == 1 && v.faces == vec![0, 1]));
}

#[test]
fn single_relator_face_meets_minimality_conditions() {
    let p = toy();
    let r = p.relators()[0].clone();
    let d = search_diagram(&r, &p, 10).unwrap().unwrap();
    let rep = check_minimality_conditions(&d, &p, None).unwrap();
    assert!(!rep.refutes_minimality(), "{rep:?}");
}

#[test]
fn validation_catches_bad_diagrams() {
    let fp = z2_cubed(3);
    let mut d = polygon(4, &fp);
    d.faces.clear();
    assert!(d.validate().is_err());
    let mut d = polygon(4, &fp);
    d.rotation[1].clear();
    assert!(d.validate().is_err());
    let mut d = polygon(4, &fp);
    d.faces[0].trivial = true;
    d.validate().unwrap();
    let p = Presentation::relator_free(fp.clone());
    assert!(d.validate_labels(&p).is_err());
    // a trivial face glued to another face
    let l = fp.letters();
    let mut b = DiagramBuilder::new();
    b.attach_face(0, 0, &[l[0], l[0]], true).unwrap();
    b.attach_face(0, 1, &[l[1], l[1], l[0]], false).unwrap();
    assert!(b.finish().validate().is_err());
}

#[test]
fn renders() {
    let fp = z2_cubed(3);
    let d = ladder(&fp);
    let dot = to_dot(&d, &fp);
    assert!(dot.starts_with("digraph") && dot.contains("0:a"));
    let svg = to_svg(&d, &fp);
    assert_eq!(svg.matches("<line").count(), d.edges.len());
    let xy = tutte_layout(&d, 100);
    assert!(xy.iter().all(|p| p.0.is_finite() && p.1.is_finite()));
}

#[test]
fn non_cancelling_factor_is_unsupported() {
    let fp = FreeProduct::from_specs(&[FactorSpec::Cyclic { order: 3 }, FactorSpec::Cyclic { order: 2 }]).unwrap();
    let p = Presentation::relator_free(fp.clone());
    // b b cancels, then a a a merges to 1 inside the factor
    let w = letters(&fp, "0:a 1:a 1:a 0:a 0:a");
    assert!(matches!(search_diagram(&w, &p, 4), Err(Error::Unsupported(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn search_reproduces_boundary(seed in any::<u64>(), k in 1usize..4) {
        let p = toy();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_trivial(&p, k, &mut rng);
        let d = search_diagram(&w, &p, 64).unwrap().unwrap();
        prop_assert_eq!(d.boundary_word(&p.fp), w.clone());
        prop_assert!(d.validate_over(&p, &w).is_ok());
        let fg = face_graph(&d);
        prop_assert_eq!(fg.adjacency.iter().map(|a| a.len()).sum::<usize>(), 2 * fg.shared.len());
    }
}
