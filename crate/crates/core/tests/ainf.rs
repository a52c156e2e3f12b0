use std::collections::BTreeMap;
use std::path::PathBuf;

use ncalg::ainf::{
    check_frobenius, check_stasheff, check_unit, forced_vanishing, frobenius_data, keller_check, merkulov_model,
    rescale_basis, AInfStructure, Merkulov, SplittingPolicy,
};
use ncalg::{complete, parse_presentation, Error, Presentation, Scalar};

fn pres(name: &str) -> Presentation {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    parse_presentation(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn model(p: &Presentation, policy: SplittingPolicy) -> AInfStructure {
    let sys = complete(p, 7).unwrap();
    let mut st = merkulov_model(&sys, 4, 7, policy).unwrap();
    rescale_basis(&mut st, p).unwrap();
    st
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_frac(n, d)
}

fn coeff(st: &AInfStructure, args: &[&str], target: &str) -> Scalar {
    let t = st.resolve_names(args).unwrap();
    st.coeff(&t, st.index_of(target).unwrap()).unwrap()
}

#[test]
fn a2_higher_products() {
    let p = pres("A_2.pres");
    let st = model(&p, SplittingPolicy::Structured);
    let names: Vec<&str> = st.basis.iter().map(|b| b.name.as_str()).collect();
    assert_eq!(names, ["1", "a1", "a2", "b1", "b2", "c1", "c2", "d1"]);
    assert_eq!(coeff(&st, &["a2", "a2", "a1"], "b1"), q(-4, 1));
    assert_eq!(coeff(&st, &["a1", "a2", "a2"], "b1"), q(1, 1));
    assert_eq!(coeff(&st, &["a2", "a1", "a2"], "b1"), q(0, 1));
    let y: Vec<Scalar> = [["a1", "a1", "a1", "a2"], ["a1", "a1", "a2", "a1"], ["a1", "a2", "a1", "a1"], ["a2", "a1", "a1", "a1"]]
        .iter()
        .map(|t| coeff(&st, t, "b2"))
        .collect();
    assert_eq!(y, [q(1, 1), q(2, 1), q(4, 1), q(8, 1)]);
    assert!(st.tables.keys().all(|t| (2..=4).contains(&t.len())));
    assert!(st.tables.keys().all(|t| t.len() != 5 && t.len() != 6));
    st.check_degrees().unwrap();
    assert!(check_unit(&st).unwrap());
}

#[test]
fn policies_agree_and_identities_hold() {
    for f in ["A_2.pres", "B_1.pres"] {
        let p = pres(f);
        let a = model(&p, SplittingPolicy::Structured);
        let b = model(&p, SplittingPolicy::Echelon);
        let on_e1 = |st: &AInfStructure| -> BTreeMap<Vec<usize>, Vec<(usize, Scalar)>> {
            st.tables.iter().filter(|(t, _)| t.iter().all(|&i| st.basis[i].s == 1)).map(|(t, v)| (t.clone(), v.clone())).collect()
        };
        assert_eq!(on_e1(&a), on_e1(&b), "{f}");
        for n in 3..=7 {
            let r = check_stasheff(&a, n, true).unwrap();
            assert!(r.ok(), "{f} SI({n}): {:?}", r.failures.first());
        }
    }
}

#[test]
fn homotopy_data_is_consistent() {
    let p = pres("A_2.pres");
    let sys = complete(&p, 7).unwrap();
    for policy in [SplittingPolicy::Structured, SplittingPolicy::Echelon] {
        let mut m = Merkulov::new(&sys, 7, policy).unwrap();
        assert!(m.homotopy_failures().unwrap().is_empty());
        assert!(m.inclusion_failures().unwrap().is_empty());
    }
}

#[test]
fn keller_roundtrip_for_regular_catalog() {
    let cases = [
        ("A_2.pres", ["-1/4*z1*z2^2 + z2^2*z1", "1/8*z1^3*z2 + 1/4*z1^2*z2*z1 + 1/2*z1*z2*z1^2 + z2*z1^3"]),
        ("B_1.pres", ["-u*z1*z2^2 + z2^2*z1", "z1^3*z2 + z1^2*z2*z1 + z1*z2*z1^2 + z2*z1^3"]),
        ("C_1.pres", ["z1*z2^2 + z2*z1*z2 + z2^2*z1", "(1-u)*z1^3*z2 + z2*z1^3"]),
        (
            "D_3_2.pres",
            ["1/4*z1*z2^2 + 3/4*z2*z1*z2 + z2^2*z1", "1/8*z1^3*z2 + 5/8*z1^2*z2*z1 + 5/4*z1*z2*z1^2 + z2*z1^3"],
        ),
    ];
    for (f, want) in cases {
        let p = pres(f);
        let st = model(&p, SplittingPolicy::Echelon);
        let rep = keller_check(&st, &p).unwrap();
        assert!(rep.matches(), "{f}: {:?}", rep.mismatches);
        let got: Vec<_> = rep.relations.iter().map(|r| r.poly.clone()).collect();
        let want: Vec<_> = want.iter().map(|s| p.parse_expr(s).unwrap()).collect();
        assert_eq!(got, want, "{f}");
        for n in 3..=7 {
            assert!(check_stasheff(&st, n, true).unwrap().ok(), "{f} SI({n})");
        }
        assert!(check_frobenius(&st).unwrap().ok(), "{f}");
    }
}

#[test]
fn frobenius_data_matches_solution_formulas() {
    // (file, Lambda diagonal, t)
    let cases = [
        ("A_2.pres", ["-8", "-1/16"], "1/32"),
        ("B_1.pres", ["u", "-1"], "-u"),
        ("C_1.pres", ["-1", "1-u"], "-u"),
        ("D_3_2.pres", ["8", "-1/16"], "-1/32"),
    ];
    for (f, lam, t) in cases {
        let p = pres(f);
        let st = model(&p, SplittingPolicy::Echelon);
        let d = frobenius_data(&st).unwrap();
        let s = |x: &str| ncalg::scalar::parse_scalar(x, p.field, &p.var).unwrap();
        assert_eq!(d.lambda, vec![vec![s(lam[0]), Scalar::zero()], vec![Scalar::zero(), s(lam[1])]], "{f}");
        assert_eq!(d.t, s(t), "{f}");
        // t = -g1 g2^2 with (g1, g2) the diagonal of Lambda
        assert_eq!(d.t, -(&d.lambda[0][0] * &(&d.lambda[1][1] * &d.lambda[1][1])), "{f}");
    }
}

#[test]
fn tables_round_trip_and_perturbation_breaks_identities() {
    let p = pres("A_2.pres");
    let st = model(&p, SplittingPolicy::Echelon);
    let text = st.to_text();
    let back = AInfStructure::parse(&text).unwrap();
    assert_eq!(back, st);
    assert_eq!(back.to_text(), text);

    let mut bad = st.clone();
    let t = bad.resolve_names(&["a1", "a1", "a2", "a1"]).unwrap();
    let b2 = bad.index_of("b2").unwrap();
    for (i, c) in bad.tables.get_mut(&t).unwrap() {
        if *i == b2 {
            *c = &*c + &Scalar::one();
        }
    }
    let broken = (5..=6).any(|n| !check_stasheff(&bad, n, true).unwrap().ok());
    assert!(broken);
}

#[test]
fn missing_entries_are_errors() {
    let p = pres("A_2.pres");
    let sys = complete(&p, 7).unwrap();
    let st = merkulov_model(&sys, 4, 7, SplittingPolicy::Echelon).unwrap();
    let mut small = st.clone();
    small.arity_max = 3;
    assert!(matches!(check_stasheff(&small, 5, true), Err(Error::MissingEntry(_))));
    let c1 = st.index_of("c1").unwrap();
    let d1 = st.index_of("d1").unwrap();
    assert!(matches!(st.m(&[c1, d1]), Err(Error::MissingEntry(_))));
}

#[test]
fn koszul_algebra_has_no_higher_products() {
    let p = parse_presentation("field Q\ngen z1 : (1,1,0)\ngen z2 : (1,0,1)\nrel z1*z2 - z2*z1\n").unwrap();
    let sys = complete(&p, 5).unwrap();
    let st = merkulov_model(&sys, 4, 5, SplittingPolicy::Structured).unwrap();
    assert!(st.tables.keys().all(|t| t.len() == 2));
    let dims: Vec<_> = st.dims().into_iter().collect();
    assert_eq!(dims, [((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]);
    for n in 3..=5 {
        assert!(check_stasheff(&st, n, true).unwrap().ok());
    }
    let rep = keller_check(&st, &p).unwrap();
    assert!(rep.matches());
}

#[test]
fn free_algebra_is_not_frobenius_and_has_no_relations() {
    let p = parse_presentation("field Q\ngen z1 : (1,1,0)\ngen z2 : (1,0,1)\n").unwrap();
    let sys = complete(&p, 4).unwrap();
    let st = merkulov_model(&sys, 4, 4, SplittingPolicy::Echelon).unwrap();
    assert_eq!(st.basis.len(), 3);
    assert!(!check_frobenius(&st).unwrap().ok());
    assert!(keller_check(&st, &p).unwrap().relations.is_empty());
    assert!(matches!(frobenius_data(&st), Err(Error::NotFrobenius(_))));
}

#[test]
fn degenerate_pairing_is_rejected() {
    let p = pres("A_2.pres");
    let mut st = model(&p, SplittingPolicy::Echelon);
    let b1 = st.index_of("b1").unwrap();
    st.tables.retain(|t, _| !(t.len() == 2 && t.contains(&b1) && !t.contains(&0)));
    assert!(matches!(frobenius_data(&st), Err(Error::NotFrobenius(_))));
    assert!(!check_frobenius(&st).unwrap().ok());
}

#[test]
fn associative_tables_satisfy_the_first_identity() {
    // the group algebra of Z/2 in degree zero, written with m2 only
    let text = "field Q\nunit 1\n1 0 (0)\ng 0 (0)\nbound m2 adams 0\nm2 1 1 -> 1*1\nm2 1 g -> 1*g\nm2 g 1 -> 1*g\nm2 g g -> 1*1\n";
    let st = AInfStructure::parse(text).unwrap();
    let mut plain = st.clone();
    plain.unit = None;
    assert!(check_stasheff(&plain, 3, true).unwrap().ok());
    assert!(check_unit(&st).unwrap());
}

fn dims(rows: &[((usize, i64), usize)]) -> BTreeMap<(usize, i64), usize> {
    rows.iter().cloned().collect()
}

#[test]
fn degree_forced_vanishing() {
    let t12221 = dims(&[((0, 0), 1), ((1, 1), 2), ((2, 3), 1), ((2, 4), 1), ((3, 6), 2), ((4, 7), 1)]);
    let t13431 = dims(&[((0, 0), 1), ((1, 1), 3), ((2, 2), 2), ((2, 3), 2), ((3, 4), 3), ((4, 5), 1)]);
    let t14641 = dims(&[((0, 0), 1), ((1, 1), 4), ((2, 2), 6), ((3, 3), 4), ((4, 4), 1)]);
    assert!(forced_vanishing(&t12221, 5));
    assert!(forced_vanishing(&t12221, 6));
    assert!(!forced_vanishing(&t12221, 3));
    assert!(!forced_vanishing(&t12221, 4));
    assert!(forced_vanishing(&t13431, 4));
    assert!(forced_vanishing(&t13431, 5));
    assert!(!forced_vanishing(&t13431, 3));
    assert!(forced_vanishing(&t14641, 3));
    assert!(forced_vanishing(&t14641, 4));
    assert!(!forced_vanishing(&t14641, 2));
}
