//! One line per acceptance criterion; exits nonzero if any fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncalg::ainf::{
    check_frobenius, check_stasheff, frobenius_data, keller_check, merkulov_model, rescale_basis, AInfStructure,
    SplittingPolicy,
};
use ncalg::barext::{betti_minimal, hilbert_betti_product, resolution_shape, BarComplex};
use ncalg::classify::{check_solution, SolutionId};
use ncalg::rewrite::{
    is_normal, parse_complex, parse_images, search_normal, verify_complex, verify_homomorphism,
};
use ncalg::{complete, parse_presentation, Presentation, Scalar};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn pres(name: &str) -> Presentation {
    parse_presentation(&fixture(name)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Check {
    let e = t.elapsed();
    ensure(e < limit, || format!("{what} took {e:?}, limit {limit:?}"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

const REGULAR: [usize; 11] = [1, 2, 4, 7, 11, 16, 23, 31, 41, 53, 67];

fn hilbert_golden() -> Check {
    for f in ["A_2.pres", "B_2.pres", "C_2.pres", "D_3_2.pres", "O.pres"] {
        let t = Instant::now();
        let h = complete(&pres(f), 10).and_then(|s| s.hilbert_coeffs(10)).map_err(err)?;
        ensure(h == REGULAR, || format!("{f}: {h:?}"))?;
        within(t, Duration::from_secs(30), f)?;
    }
    Ok(())
}

fn refutations() -> Check {
    let series = |f: &str, n: i64| complete(&pres(f), n).and_then(|s| s.hilbert_coeffs(n)).map_err(err);
    let t = Instant::now();
    let x = series("X_2_3.pres", 5)?;
    ensure(x[5] == 17, || format!("X(2,3) t^5: {}", x[5]))?;
    within(t, Duration::from_secs(60), "X(2,3)")?;

    let t = Instant::now();
    let mut y = pres("Y_2_5.pres");
    let sq = y.parse_expr("z2^2").map_err(err)?;
    let sys = complete(&y, 6).map_err(err)?;
    ensure(is_normal(&sys, &sq, 6).map_err(err)?.normal, || "z2^2 not normal in Y(2,5)".into())?;
    y.add_relation(sq).map_err(err)?;
    let yq = complete(&y, 5).and_then(|s| s.hilbert_coeffs(5)).map_err(err)?;
    ensure(yq[5] == 10, || format!("Y(2,5)/(z2^2) t^5: {}", yq[5]))?;
    within(t, Duration::from_secs(60), "Y(2,5)")?;

    let t = Instant::now();
    let z = series("Z_2_3.pres", 7)?;
    ensure(z[7] == 32, || format!("Z(2,3) t^7: {}", z[7]))?;
    within(t, Duration::from_secs(60), "Z(2,3)")?;

    let t = Instant::now();
    let z = series("Z_2_m2.pres", 7)?;
    ensure(z[5..] == [17, 26, 39], || format!("Z(2,-2) t^5..t^7: {:?}", &z[5..]))?;
    within(t, Duration::from_secs(60), "Z(2,-2)")
}

fn completion_derivations() -> Check {
    let cases = [
        ("A_2.pres", "z2*z1*z2*z1^2 + 1/2*z2*z1^2*z2*z1 - 1/8*z1*z2*z1^2*z2 - 1/16*z1^2*z2*z1*z2"),
        ("C_1.pres", "z2*z1*z2*z1^2 - u^2*z1^3*z2^2 + z1^2*z2*z1*z2 - z1*z2*z1*z2*z1"),
    ];
    for (f, want) in cases {
        let p = pres(f);
        let sys = complete(&p, 8).map_err(err)?;
        let rules: Vec<_> = sys.rules.iter().filter(|r| r.degree[0] == 5).collect();
        ensure(rules.len() == 1, || format!("{f}: {} degree-5 rules", rules.len()))?;
        let want = p.parse_expr(want).map_err(err)?;
        ensure(rules[0].as_poly() == want, || format!("{f}: got {}", sys.show_rule(rules[0])))?;
        let mut amb: Vec<String> = sys.overlap_ambiguities(8).iter().map(|a| sys.show_word(&a.word)).collect();
        amb.sort();
        amb.dedup();
        ensure(amb == ["z2*z1*z2*z1^3", "z2^2*z1*z2*z1^2", "z2^2*z1^3"], || format!("{f}: ambiguities {amb:?}"))?;
        for a in sys.overlap_ambiguities(8) {
            ensure(sys.resolve(&a).is_zero(), || format!("{f}: {} unresolved", sys.show_word(&a.word)))?;
        }
    }
    Ok(())
}

fn betti_tables() -> Check {
    let t = Instant::now();
    let sys = complete(&pres("A_2.pres"), 10).map_err(err)?;
    let b = betti_minimal(&sys, 5, 10).map_err(err)?;
    let want = vec![(0, 0, 1), (1, 1, 2), (2, 3, 1), (2, 4, 1), (3, 6, 2), (4, 7, 1)];
    ensure(b.rows() == want, || format!("rows {:?}", b.rows()))?;
    let shape = resolution_shape(&b, 4);
    ensure(shape.symmetric() && shape.l == Some(7), || format!("shape {shape:?}"))?;
    let mut one = vec![0i64; 11];
    one[0] = 1;
    let prod = hilbert_betti_product(&b, &sys.hilbert_coeffs(10).map_err(err)?);
    ensure(prod == one, || format!("Hilbert times Betti: {prod:?}"))?;
    let mut bar = BarComplex::new(&sys, 7).map_err(err)?;
    let bad = bar.d_squared_failures().map_err(err)?;
    ensure(bad.is_empty(), || format!("d^2 nonzero on {} slices", bad.len()))?;
    within(t, Duration::from_secs(300), "Betti")
}

fn model(p: &Presentation, policy: SplittingPolicy) -> Result<AInfStructure, String> {
    let sys = complete(p, 7).map_err(err)?;
    let mut st = merkulov_model(&sys, 4, 7, policy).map_err(err)?;
    rescale_basis(&mut st, p).map_err(err)?;
    Ok(st)
}

fn keller_roundtrip() -> Check {
    let t = Instant::now();
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
        let a = model(&p, SplittingPolicy::Structured)?;
        let b = model(&p, SplittingPolicy::Echelon)?;
        let on_e1 = |st: &AInfStructure| {
            st.tables.iter().filter(|(k, _)| k.iter().all(|&i| st.basis[i].s == 1)).map(|(k, v)| (k.clone(), v.clone())).collect::<Vec<_>>()
        };
        ensure(on_e1(&a) == on_e1(&b), || format!("{f}: splittings disagree on E^1"))?;
        let rep = keller_check(&a, &p).map_err(err)?;
        ensure(rep.matches(), || format!("{f}: span mismatch in {:?}", rep.mismatches))?;
        let got: Vec<String> = rep.relations.iter().map(|r| p.show(&r.poly)).collect();
        let want: Vec<String> = want.iter().map(|s| p.show(&p.parse_expr(s).unwrap())).collect();
        ensure(got == want, || format!("{f}: normalized relations {got:?}"))?;
        for n in 3..=7 {
            let r = check_stasheff(&a, n, true).map_err(err)?;
            ensure(r.ok(), || format!("{f}: SI({n}) fails at {:?}", r.failures.first()))?;
        }
        ensure(a.tables.keys().all(|k| k.len() != 5 && k.len() != 6), || format!("{f}: m5 or m6 nonzero"))?;
    }
    within(t, Duration::from_secs(600), "models")
}

fn frobenius() -> Check {
    let p = pres("A_2.pres");
    let st = model(&p, SplittingPolicy::Echelon)?;
    let d = frobenius_data(&st).map_err(err)?;
    let q = Scalar::from_frac;
    let z = Scalar::zero;
    ensure(d.lambda == vec![vec![q(-8, 1), z()], vec![z(), q(-1, 16)]], || format!("Lambda {:?}", d.lambda))?;
    ensure(d.t == q(1, 32), || format!("t {:?}", d.t))?;
    let g = (&d.lambda[0][0], &d.lambda[1][1]);
    ensure(d.t == -(g.0 * &(g.1 * g.1)), || "t differs from -g1 g2^2".into())?;
    for f in ["A_2.pres", "B_2.pres", "C_2.pres", "D_3_2.pres"] {
        let sys = complete(&pres(f), 7).map_err(err)?;
        let st = merkulov_model(&sys, 4, 7, SplittingPolicy::Echelon).map_err(err)?;
        let c = check_frobenius(&st).map_err(err)?;
        ensure(c.ok(), || format!("{f}: pairing rank {} of {}", c.gram_rank, c.dim))?;
    }
    Ok(())
}

fn solution_residuals() -> Check {
    for id in SolutionId::ALL {
        let samples = id.samples();
        ensure(samples.len() >= 3, || format!("{id}: {} samples", samples.len()))?;
        for s in samples {
            let rep = check_solution(id, &s).map_err(err)?;
            ensure(rep.residuals.all_zero(), || format!("{id} {s:?}: {:?}", rep.residuals.nonzero.first()))?;
            let dead: Vec<_> = rep.perturbations.iter().filter(|(_, n)| *n == 0).collect();
            ensure(dead.is_empty(), || format!("{id} {s:?}: perturbations with no effect {dead:?}"))?;
        }
    }
    Ok(())
}

fn structural() -> Check {
    let a = pres("A_2.pres");
    let sys = complete(&a, 6).map_err(err)?;
    let h = a.parse_expr("z1^2*z2 + 4*z2*z1^2").map_err(err)?;
    ensure(is_normal(&sys, &h, 6).map_err(err)?.normal, || "h not normal in A(2)".into())?;

    let b = pres("B_2.pres");
    let sys = complete(&b, 6).map_err(err)?;
    for e in ["z2^2", "z1^4"] {
        let x = b.parse_expr(e).map_err(err)?;
        ensure(is_normal(&sys, &x, 6).map_err(err)?.normal, || format!("{e} not normal in B(2)"))?;
    }
    for (x, y) in [(3, 0), (2, 1), (1, 2), (0, 3)] {
        let s = search_normal(&sys, x, y).map_err(err)?;
        ensure(s.families.is_empty() && s.unresolved.is_empty(), || format!("B(2) bidegree ({x},{y}): {:?}", s.families))?;
    }

    let c = pres("C_2.pres");
    let sys = complete(&c, 6).map_err(err)?;
    for e in ["z1^3", "z2^3"] {
        let x = c.parse_expr(e).map_err(err)?;
        ensure(is_normal(&sys, &x, 6).map_err(err)?.normal, || format!("{e} not normal in C(2)"))?;
    }

    for (f, m) in [("B_1.pres", "B_1_resolution.maps"), ("C_1.pres", "C_1_resolution.maps")] {
        let p = pres(f);
        let sys = complete(&p, 10).map_err(err)?;
        let cx = parse_complex(&fixture(m), &p).map_err(err)?;
        let rep = verify_complex(&cx, &sys, 10).map_err(err)?;
        ensure(rep.is_resolution_of_field(), || format!("{m}: {:?} {:?}", rep.composite_failures, rep.homology))?;
    }

    let d = pres("D_3_2.pres");
    let ore = pres("ore_D_3_2.pres");
    let dsys = complete(&d, 8).map_err(err)?;
    let osys = complete(&ore, 8).map_err(err)?;
    let maps = ["x=z1*z2+u*z2*z1".to_string(), "y=z1*(z1*z2+u*z2*z1)+(3-u)*(z1*z2+u*z2*z1)*z1".to_string()];
    let to_d = parse_images(&ore, &d, &maps).map_err(err)?;
    ensure(verify_homomorphism(&ore, &dsys, &to_d, 8).map_err(err)?.ok, || "Ore to D(3,2) fails".into())?;
    let to_ore = parse_images(&d, &ore, &[]).map_err(err)?;
    ensure(verify_homomorphism(&d, &osys, &to_ore, 8).map_err(err)?.ok, || "D(3,2) to Ore fails".into())?;
    let (hd, ho) = (dsys.hilbert_coeffs(8).map_err(err)?, osys.hilbert_coeffs(8).map_err(err)?);
    ensure(hd == ho, || format!("series differ: {hd:?} {ho:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Hilbert series of the regular catalog and O", hilbert_golden),
        ("series refutations of X, Y, Z", refutations),
        ("degree-5 rules and resolvable overlaps", completion_derivations),
        ("Betti table, symmetry, bar d^2, Euler duality", betti_tables),
        ("A-infinity models recover relations", keller_roundtrip),
        ("Frobenius data", frobenius),
        ("solution residuals and perturbations", solution_residuals),
        ("normal elements, resolutions, Ore maps", structural),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name} ({:.1?})", i + 1, t.elapsed()),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
