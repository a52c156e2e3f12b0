use std::path::PathBuf;

use ncalg::ainf::{frobenius_data, merkulov_model, SplittingPolicy};
use ncalg::classify::{
    catalog, check_solution, regular_quotient_series, regular_series, regularity_screen, solution_params, CatalogName,
    SolutionId,
};
use ncalg::{complete, parse_presentation, Presentation, Scalar};

fn pres(name: &str) -> Presentation {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    parse_presentation(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn params(v: &[(&str, i64)]) -> Vec<(String, Scalar)> {
    v.iter().map(|(k, x)| (k.to_string(), Scalar::from_int(*x))).collect()
}

fn rels(p: &Presentation) -> Vec<String> {
    p.relations.iter().map(|r| p.show(&r.poly)).collect()
}

#[test]
fn series_formulas() {
    assert_eq!(regular_series(10), [1, 2, 4, 7, 11, 16, 23, 31, 41, 53, 67]);
    assert_eq!(regular_quotient_series(5), [1, 2, 3, 5, 7, 9]);
}

#[test]
fn screen_verdicts() {
    for f in ["A_2.pres", "B_2.pres", "C_2.pres", "D_3_2.pres"] {
        let r = regularity_screen(&pres(f), 10).unwrap();
        assert_eq!(r.verdict(), "PASS: series, betti, frobenius", "{f}");
    }
    assert_eq!(regularity_screen(&pres("X_2_3.pres"), 10).unwrap().verdict(), "FAIL: H[5]=17 expected 16");
    assert_eq!(regularity_screen(&pres("Z_2_m2.pres"), 10).unwrap().verdict(), "FAIL: H[5]=17 expected 16");
    assert_eq!(regularity_screen(&pres("Z_2_3.pres"), 10).unwrap().verdict(), "FAIL: H[7]=32 expected 31");
    let y = regularity_screen(&pres("Y_2_5.pres"), 10).unwrap();
    assert!(y.verdict().starts_with("FAIL: H[5]=10 expected 9 for the quotient"), "{}", y.verdict());
    let o = regularity_screen(&pres("O.pres"), 10).unwrap();
    assert_eq!(o.passed, ["series"]);
}

#[test]
fn y_quotient_independent_of_f() {
    for f in [1, 2, 5, -3] {
        let mut p = catalog(CatalogName::Y, &params(&[("h", 2), ("f", f)])).unwrap();
        let z = p.parse_expr("z2^2").unwrap();
        p.add_relation(z).unwrap();
        assert_eq!(complete(&p, 5).unwrap().hilbert_coeffs(5).unwrap()[5], 10, "f={f}");
    }
}

#[test]
fn catalog_matches_fixtures() {
    let cases = [
        (CatalogName::A, params(&[("p", 2)]), "A_2.pres"),
        (CatalogName::D, params(&[("v", 3), ("p", 2)]), "D_3_2.pres"),
        (CatalogName::X, params(&[("p", 2), ("h", 3)]), "X_2_3.pres"),
        (CatalogName::Z, params(&[("p", 2), ("h", -2)]), "Z_2_m2.pres"),
    ];
    for (name, ps, f) in cases {
        assert_eq!(rels(&catalog(name, &ps).unwrap()), rels(&pres(f)), "{f}");
    }
    let d = catalog(CatalogName::D, &params(&[("v", 3), ("p", 2)])).unwrap();
    let want = ["z1*z2^2 + 3*z2*z1*z2 + 4*z2^2*z1", "z1^3*z2 + 5*z1^2*z2*z1 + 10*z1*z2*z1^2 + 8*z2*z1^3"];
    let want: Vec<_> = want.iter().map(|s| d.parse_expr(s).unwrap()).collect();
    assert_eq!(d.relations.iter().map(|r| r.poly.clone()).collect::<Vec<_>>(), want);
    assert!(catalog(CatalogName::A, &params(&[("p", 0)])).is_err());
}

#[test]
fn z_on_the_diagonal_is_the_second_family() {
    for h in [2i64, 3, -2] {
        let z = catalog(CatalogName::Z, &params(&[("p", h), ("h", h)])).unwrap();
        let hs = Scalar::from_int(h);
        let f = &Scalar::from_int(-3) / &hs;
        let g = solution_params(SolutionId::S2_2, &[("h".into(), hs.clone()), ("f".into(), f)]).unwrap();
        let r4 = format!(
            "z1*z2*z1*z2 + ({})*z2*z1^2*z2 + ({})*z2*z1*z2*z1 + ({})*z2^2*z1^2",
            g.p, g.q, g.r
        );
        let r3 = format!("z1*z2^2 + ({})*z2*z1*z2 + ({})*z2^2*z1", g.v, g.w);
        let want = [z.parse_expr(&r3).unwrap(), z.parse_expr(&r4).unwrap()];
        let got: Vec<_> = z.relations.iter().map(|r| r.poly.clone()).collect();
        assert_eq!(got, want, "h={h}");
    }
}

#[test]
fn every_solution_at_every_sample() {
    for id in SolutionId::ALL {
        let samples = id.samples();
        assert!(samples.len() >= 3);
        for s in samples {
            let rep = check_solution(id, &s).unwrap();
            assert!(rep.passes(), "{id} {s:?}: {:?}", rep.residuals.nonzero.first());
            assert!(rep.gm.gm2, "{id} {s:?}");
        }
    }
}

#[test]
fn model_frobenius_data_matches_family() {
    let cases = [
        ("A_2.pres", SolutionId::S1_2a, params(&[("p", 2)])),
        ("D_3_2.pres", SolutionId::S1_1, params(&[("f", -2), ("v", 3)])),
    ];
    for (f, id, ps) in cases {
        let p = pres(f);
        let sys = complete(&p, 7).unwrap();
        let st = merkulov_model(&sys, 4, 7, SplittingPolicy::Echelon).unwrap();
        let d = frobenius_data(&st).unwrap();
        let g = solution_params(id, &ps).unwrap();
        assert_eq!((d.lambda[0][0].clone(), d.lambda[1][1].clone(), d.t.clone()), (g.g1, g.g2, g.t), "{f}");
    }
}
