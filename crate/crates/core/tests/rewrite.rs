use std::path::PathBuf;

use ncalg::rewrite::{
    anick_chains, is_normal, parse_complex, parse_images, search_normal, verify_complex, verify_homomorphism,
};
use ncalg::{complete, parse_presentation, NCPoly, Presentation, Scalar, Word};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn pres(name: &str) -> Presentation {
    parse_presentation(&fixture(name)).unwrap()
}

const REGULAR: [usize; 11] = [1, 2, 4, 7, 11, 16, 23, 31, 41, 53, 67];

#[test]
fn catalog_regulars_and_o_share_the_series() {
    for f in ["A_2.pres", "B_2.pres", "C_2.pres", "D_3_2.pres", "O.pres", "B_1.pres", "C_1.pres"] {
        let sys = complete(&pres(f), 10).unwrap();
        assert_eq!(sys.hilbert_coeffs(10).unwrap(), REGULAR, "{f}");
    }
}

#[test]
fn refuted_candidates() {
    let h = complete(&pres("X_2_3.pres"), 5).unwrap().hilbert_coeffs(5).unwrap();
    assert_eq!(h, vec![1, 2, 4, 7, 11, 17]);
    let h = complete(&pres("Z_2_3.pres"), 7).unwrap().hilbert_coeffs(7).unwrap();
    assert_eq!(h[7], 32);
    let h = complete(&pres("Z_2_m2.pres"), 7).unwrap().hilbert_coeffs(7).unwrap();
    assert_eq!(&h[5..], &[17, 26, 39]);
}

#[test]
fn y_quotient_by_normal_square() {
    let mut p = pres("Y_2_5.pres");
    let sys = complete(&p, 6).unwrap();
    let z2sq = p.parse_expr("z2^2").unwrap();
    assert!(is_normal(&sys, &z2sq, 6).unwrap().normal);
    p.add_relation(z2sq).unwrap();
    let h = complete(&p, 5).unwrap().hilbert_coeffs(5).unwrap();
    assert_eq!(h, vec![1, 2, 3, 5, 7, 10]);
}

fn words(p: &Presentation, ws: &[&str]) -> Vec<Word> {
    let mut v: Vec<Word> = ws
        .iter()
        .map(|s| p.parse_expr(s).unwrap().terms().next().unwrap().0.clone())
        .collect();
    v.sort();
    v
}

fn degree5_rule(p: &Presentation, n: i64) -> NCPoly {
    let sys = complete(p, n).unwrap();
    let r: Vec<_> = sys.rules.iter().filter(|r| r.degree[0] == 5).collect();
    assert_eq!(r.len(), 1);
    r[0].as_poly()
}

#[test]
fn a2_degree_five_rule_and_overlaps() {
    let p = pres("A_2.pres");
    let want = p
        .parse_expr("z2*z1*z2*z1^2 + 1/2*z2*z1^2*z2*z1 - 1/8*z1*z2*z1^2*z2 - 1/16*z1^2*z2*z1*z2")
        .unwrap();
    assert_eq!(degree5_rule(&p, 8), want);
    let sys = complete(&p, 8).unwrap();
    let mut amb: Vec<Word> = sys.overlap_ambiguities(8).into_iter().map(|a| a.word).collect();
    amb.sort();
    amb.dedup();
    assert_eq!(amb, words(&p, &["z2^2*z1^3", "z2*z1*z2*z1^3", "z2^2*z1*z2*z1^2"]));
    for a in sys.overlap_ambiguities(8) {
        assert!(sys.resolve(&a).is_zero());
    }
}

#[test]
fn c1_degree_five_rule() {
    let p = pres("C_1.pres");
    let want = p.parse_expr("z2*z1*z2*z1^2 - u^2*z1^3*z2^2 + z1^2*z2*z1*z2 - z1*z2*z1*z2*z1").unwrap();
    assert_eq!(degree5_rule(&p, 8), want);
}

#[test]
fn monomial_chains() {
    let p = pres("O.pres");
    let sys = complete(&p, 10).unwrap();
    let ch = anick_chains(&sys, 5).unwrap();
    assert_eq!(ch.chains[1].len(), 3);
    let mut v2 = ch.chains[1].clone();
    v2.sort();
    assert_eq!(v2, words(&p, &["z2^2*z1*z2*z1^2", "z2^2*z1^3", "z2*z1*z2*z1^3"]));
    assert_eq!(ch.chains[2], words(&p, &["z2^2*z1*z2*z1^3"]));
    assert!(ch.chains.get(3).is_none_or(|c| c.is_empty()));
    assert_eq!(ch.polynomial, vec![1, -2, 0, 1, 1, 0, -2, 1]);
}

#[test]
fn normal_elements() {
    let a = pres("A_2.pres");
    let sys = complete(&a, 6).unwrap();
    let h = a.parse_expr("z1^2*z2 + 4*z2*z1^2").unwrap();
    assert!(is_normal(&sys, &h, 6).unwrap().normal);
    assert!(!is_normal(&sys, &a.parse_expr("z1^3").unwrap(), 6).unwrap().normal);
    let found = search_normal(&sys, 2, 1).unwrap();
    let hits: Vec<&NCPoly> = found.families.iter().flat_map(|f| f.elements.iter()).collect();
    assert!(hits.iter().any(|e| {
        let c = e.coeff(h.terms().next().unwrap().0);
        !c.is_zero() && e.scale(&c.inv()) == h.scale(&h.coeff(h.terms().next().unwrap().0).inv())
    }));

    let b = pres("B_2.pres");
    let sys = complete(&b, 6).unwrap();
    for e in ["z2^2", "z1^4"] {
        assert!(is_normal(&sys, &b.parse_expr(e).unwrap(), 6).unwrap().normal, "{e}");
    }
    for (x, y) in [(3, 0), (2, 1), (1, 2), (0, 3)] {
        let s = search_normal(&sys, x, y).unwrap();
        assert!(s.families.is_empty(), "B(2) bidegree ({x},{y}): {:?}", s.families);
        assert!(s.unresolved.is_empty(), "B(2) bidegree ({x},{y}): {:?}", s.unresolved);
    }

    let c = pres("C_2.pres");
    let sys = complete(&c, 6).unwrap();
    for e in ["z1^3", "z2^3"] {
        assert!(is_normal(&sys, &c.parse_expr(e).unwrap(), 6).unwrap().normal, "{e}");
    }
}

#[test]
fn commutative_everything_normal() {
    let p = parse_presentation("field Q\ngen z1 : (1,1,0)\ngen z2 : (1,0,1)\nrel z1*z2 - z2*z1\n").unwrap();
    let sys = complete(&p, 5).unwrap();
    let s = search_normal(&sys, 1, 1).unwrap();
    assert_eq!(s.families.len(), 1);
    assert_eq!(s.families[0].vectors.len(), s.basis.len());
}

#[test]
fn explicit_resolutions_are_exact() {
    for (f, m) in [("B_1.pres", "B_1_resolution.maps"), ("C_1.pres", "C_1_resolution.maps")] {
        let p = pres(f);
        let sys = complete(&p, 10).unwrap();
        let cx = parse_complex(&fixture(m), &p).unwrap();
        let rep = verify_complex(&cx, &sys, 10).unwrap();
        assert!(rep.is_complex, "{m}: {:?}", rep.composite_failures);
        assert!(rep.is_resolution_of_field(), "{m}: {:?}", rep.homology);
    }
}

#[test]
fn ore_presentation_round_trip() {
    let d = pres("D_3_2.pres");
    let ore = pres("ore_D_3_2.pres");
    let dsys = complete(&d, 8).unwrap();
    let osys = complete(&ore, 8).unwrap();
    let to_d = parse_images(
        &ore,
        &d,
        &["x=z1*z2+u*z2*z1".into(), "y=z1*(z1*z2+u*z2*z1)+(3-u)*(z1*z2+u*z2*z1)*z1".into()],
    )
    .unwrap();
    assert!(verify_homomorphism(&ore, &dsys, &to_d, 8).unwrap().ok);
    let to_ore = parse_images(&d, &ore, &[]).unwrap();
    assert!(verify_homomorphism(&d, &osys, &to_ore, 8).unwrap().ok);
    assert_eq!(dsys.hilbert_coeffs(8).unwrap(), osys.hilbert_coeffs(8).unwrap());
}

#[test]
fn identity_map_is_a_homomorphism() {
    let a = pres("A_2.pres");
    let sys = complete(&a, 5).unwrap();
    let id = parse_images(&a, &a, &[]).unwrap();
    assert!(verify_homomorphism(&a, &sys, &id, 5).unwrap().ok);
    let _ = Scalar::one();
}
