use std::fs;
use std::path::Path;

use ncalg::ainf::{
    check_frobenius, check_stasheff, frobenius_data, keller_check, merkulov_model, rescale_basis, AInfStructure,
    SplittingPolicy,
};
use ncalg::barext::{betti_minimal, betti_numbers, resolution_shape, BettiTable};
use ncalg::classify::{case_dispatch, catalog, check_solution, regularity_screen, CatalogName, SolutionId};
use ncalg::rewrite::{
    anick_chains, is_normal, parse_complex, parse_images, search_normal, verify_complex, verify_homomorphism,
    Provenance,
};
use ncalg::{
    complete, parse_field_text, parse_presentation, Error, Field, Presentation, ReductionSystem, Result, Scalar, Word,
};

use crate::report::Report;
use crate::{BettiMethod, Cli, Command};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Presentation> {
    parse_presentation(&read(path)?)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn series_text(h: &[usize]) -> String {
    let terms: Vec<String> = h
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| match k {
            0 => c.to_string(),
            1 => format!("{c}t"),
            _ => format!("{c}t^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A scalar written as an expression in the field variable, e.g. `-1/16` or `u^2 - 3`.
fn scalar_expr(text: &str, field: Field, var: &str) -> Result<Scalar> {
    let mut ctx = Presentation::new(field, Vec::new());
    ctx.var = var.to_string();
    let e = ctx.parse_expr(text)?;
    let mut out = Scalar::zero();
    for (w, c) in e.terms() {
        if !w.0.is_empty() {
            return Err(Error::Invalid(format!("`{text}` is not a scalar")));
        }
        out = c.clone();
    }
    Ok(out)
}

fn parse_params(raw: &[String], field: Field) -> Result<Vec<(String, Scalar)>> {
    raw.iter()
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Invalid(format!("expected k=v, got `{kv}`")))?;
            Ok((k.trim().to_string(), scalar_expr(v, field, "u")?))
        })
        .collect()
}

fn parse_policy(s: &str) -> Result<SplittingPolicy> {
    s.parse()
}

pub fn run(cli: &Cli) -> Result<Report> {
    let variant = format!("{:?}", cli.command);
    let mut name = String::new();
    for (i, c) in variant.chars().take_while(|c| c.is_alphanumeric()).enumerate() {
        if c.is_uppercase() && i > 0 {
            name.push('-');
        }
        name.push(c.to_ascii_lowercase());
    }
    let mut r = Report::new(cli.format, &name);
    match &cli.command {
        Command::Complete { file, max_deg } => cmd_complete(&mut r, &load(file)?, *max_deg)?,
        Command::Hilbert { file, max_deg } => {
            let h = complete(&load(file)?, *max_deg)?.hilbert_coeffs(*max_deg)?;
            r.both("hilbert", "H(t)", series_text(&h));
            r.kv("coeffs", join(&h));
        }
        Command::Nf { file, expr } => {
            let p = load(file)?;
            let e = p.parse_expr(expr)?;
            let deg = e.terms().map(|(w, _)| w.degree(&p.degrees())).max().unwrap_or(0).max(1);
            let sys = complete(&p, deg)?;
            r.both("nf", "normal form", sys.show(&sys.normal_form(&e)?));
        }
        Command::Normal { file, element, search_bidegree, max_deg } => {
            cmd_normal(&mut r, &load(file)?, element.as_deref(), search_bidegree.as_deref(), *max_deg)?
        }
        Command::Hom { src, tgt, maps, max_deg } => {
            let (s, t) = (load(src)?, load(tgt)?);
            let images = parse_images(&s, &t, maps)?;
            let sys = complete(&t, *max_deg)?;
            let rep = verify_homomorphism(&s, &sys, &images, *max_deg)?;
            for (i, res) in &rep.failures {
                r.line(format!("relation {} maps to {}", i + 1, sys.show(res)));
                r.kv(format!("failure.{}", i + 1), sys.show(res));
            }
            r.both("homomorphism", "homomorphism", rep.ok);
            if !rep.ok {
                r.fail();
            }
        }
        Command::VerifyComplex { file, maps, max_deg } => {
            let p = load(file)?;
            let cx = parse_complex(&read(maps)?, &p)?;
            let sys = complete(&p, *max_deg)?;
            let rep = verify_complex(&cx, &sys, *max_deg)?;
            for f in &rep.composite_failures {
                r.line(format!("nonzero composite: {f}"));
            }
            r.both("complex", "complex", rep.is_complex);
            for (k, row) in rep.homology.iter().enumerate() {
                r.line(format!("H_{k} by degree: {}", join(row)));
                r.kv(format!("homology.{k}"), join(row));
            }
            let res = rep.is_resolution_of_field();
            r.both("resolution", "resolution of the field", res);
            if !res {
                r.fail();
            }
        }
        Command::Anick { file, max_n } => {
            let p = load(file)?;
            let bound = p.max_relation_degree().max(1) * (*max_n as i64 + 1);
            let full = complete(&p, bound)?;
            let leads: Vec<Word> = full.rules.iter().map(|r| r.lead.clone()).collect();
            let sys = ReductionSystem::monomial(&p, &leads, bound);
            let a = anick_chains(&sys, *max_n)?;
            for (n, ch) in a.chains.iter().enumerate().map(|(i, c)| (i + 1, c)) {
                let words: Vec<String> = ch.iter().map(|w| sys.show_word(w)).collect();
                r.line(format!("chains {n}: {}", words.join(" ")));
                r.kv(format!("chains.{n}"), words.len());
            }
            r.both("polynomial", "polynomial", join(&a.polynomial));
        }
        Command::Betti { file, max_s, max_adams, shape, method } => {
            let sys = complete(&load(file)?, *max_adams)?;
            let b = match method {
                BettiMethod::Resolution => betti_minimal(&sys, *max_s, *max_adams)?,
                BettiMethod::Bar => betti_numbers(&sys, *max_s, *max_adams)?,
            };
            report_betti(&mut r, &b);
            if let Some(d) = shape {
                let sh = resolution_shape(&b, *d);
                for (w, deg) in sh.degrees.iter().enumerate() {
                    r.line(format!("generators {w}: {}", join(deg)));
                }
                match (&sh.violation, sh.l) {
                    (Some(v), _) => {
                        r.both("shape", "shape", format!("violated: {v}"));
                        r.fail();
                    }
                    (None, l) => r.both("shape", "shape", format!("symmetric, l={}", l.map_or("-".into(), |l| l.to_string()))),
                }
            }
        }
        Command::Aext { file, max_s, max_adams, policy, out } => {
            let p = load(file)?;
            let sys = complete(&p, *max_adams)?;
            let mut st = merkulov_model(&sys, *max_s, *max_adams, parse_policy(policy)?)?;
            if rescale_basis(&mut st, &p).is_ok() {
                r.kv("rescaled", true);
            }
            let text = st.to_text();
            r.both("classes", "classes", st.basis.len());
            r.both("entries", "table entries", st.tables.len());
            match out {
                Some(o) => {
                    write(o, &text)?;
                    r.both("out", "written to", o.display());
                }
                None => r.line(text.trim_end()),
            }
        }
        Command::Stasheff { tables, max_n } => {
            let st = AInfStructure::parse(&read(tables)?)?;
            for n in 3..=*max_n {
                let rep = check_stasheff(&st, n, true)?;
                let status = if rep.ok() { "ok" } else { "FAIL" };
                r.line(format!("arity {n}: {} tuples, {} failures {status}", rep.checked, rep.failures.len()));
                r.kv(format!("arity.{n}"), format!("{} {}", rep.checked, rep.failures.len()));
                if let Some((t, v)) = rep.failures.first() {
                    let names: Vec<&str> = t.iter().map(|&i| st.basis[i].name.as_str()).collect();
                    r.line(format!("  first failure at ({}): {}", names.join(", "), st.show_vec(v)));
                }
                if !rep.ok() {
                    r.fail();
                }
            }
        }
        Command::Keller { file, max_adams, policy } => {
            let p = load(file)?;
            let n = max_adams.unwrap_or_else(|| p.max_relation_degree());
            let sys = complete(&p, n)?;
            let st = merkulov_model(&sys, 2, n, parse_policy(policy)?)?;
            let rep = keller_check(&st, &p)?;
            for (i, k) in rep.relations.iter().enumerate() {
                r.line(format!("{}: {}", st.basis[k.class].name, p.show(&k.poly)));
                r.kv(format!("relation.{}", i + 1), p.show(&k.poly));
            }
            for md in &rep.mismatches {
                r.line(format!("mismatch in multidegree ({})", join(md)));
            }
            r.both("matches", "matches presentation", rep.matches());
            if !rep.matches() {
                r.fail();
            }
        }
        Command::Frobenius { tables } => {
            let st = AInfStructure::parse(&read(tables)?)?;
            let fc = check_frobenius(&st)?;
            r.both("pairing_rank", "pairing rank", format!("{} of {}", fc.gram_rank, fc.dim));
            if !fc.ok() {
                r.fail();
                return Ok(r);
            }
            match frobenius_data(&st) {
                Ok(d) => {
                    let v = &st.var;
                    let lam: Vec<String> =
                        d.lambda.iter().map(|row| row.iter().map(|x| x.to_text(v)).collect::<Vec<_>>().join(" ")).collect();
                    r.both("lambda", "Lambda", lam.join("; "));
                    r.both("t", "t", d.t.to_text(v));
                }
                Err(Error::NotFrobenius(m)) => {
                    r.both("frobenius", "not Frobenius", m);
                    r.fail();
                }
                Err(e) => return Err(e),
            }
        }
        Command::Catalog { name, params, out } => {
            let c: CatalogName = name.parse()?;
            let p = catalog(c, &parse_params(params, c.base_field())?)?;
            let text = p.to_text();
            match out {
                Some(o) => {
                    write(o, &text)?;
                    r.both("out", "written to", o.display());
                }
                None => r.line(text.trim_end()),
            }
        }
        Command::Solution { id, params } => {
            let id: SolutionId = id.parse()?;
            let runs = if params.is_empty() { id.samples() } else { vec![parse_params(params, id.field())?] };
            for (i, ps) in runs.iter().enumerate() {
                let rep = check_solution(id, ps)?;
                let shown: Vec<String> = ps.iter().map(|(k, v)| format!("{k}={}", v.to_text("u"))).collect();
                let cases: Vec<String> = rep.cases.iter().map(|c| c.to_string()).collect();
                let verdict = if rep.passes() { "PASS" } else { "FAIL" };
                r.line(format!(
                    "{id} [{}]: {} nonzero residuals, cases {}, {verdict}",
                    shown.join(" "),
                    rep.residuals.nonzero.len(),
                    if cases.is_empty() { "none".into() } else { cases.join(", ") }
                ));
                r.kv(format!("run.{i}"), format!("{} {} {verdict}", shown.join(" "), rep.residuals.nonzero.len()));
                if let Some(res) = rep.residuals.nonzero.first() {
                    r.line(format!("  {} {} at {:?}: {}", res.family, res.equation, res.index, res.value.to_text("u")));
                }
                if !rep.passes() {
                    r.fail();
                }
            }
        }
        Command::Screen { file, max_deg } => {
            let rep = regularity_screen(&load(file)?, *max_deg)?;
            r.line(rep.verdict());
            r.kv("verdict", rep.verdict());
            if !rep.passes() {
                r.fail();
            }
        }
        Command::Case { g1, g2, t, field } => {
            let (f, var) = parse_field_text(field)?;
            let s = |x: &str| scalar_expr(x, f, &var);
            let cases = case_dispatch(&s(g1)?, &s(g2)?, &s(t)?);
            let shown: Vec<String> = cases.iter().map(|c| c.to_string()).collect();
            r.both("cases", "cases", if shown.is_empty() { "none".into() } else { shown.join(", ") });
            if cases.is_empty() {
                r.fail();
            }
        }
    }
    Ok(r)
}

fn cmd_complete(r: &mut Report, p: &Presentation, n: i64) -> Result<()> {
    let sys = complete(p, n)?;
    for (i, rule) in sys.rules.iter().enumerate() {
        let from = match sys.log.iter().find(|e| e.rule == i).map(|e| &e.provenance) {
            Some(Provenance::Relation(k)) => format!("relation {}", k + 1),
            Some(Provenance::Overlap { word, left, right }) => {
                format!("overlap {} of rules {} and {}", sys.show_word(word), left + 1, right + 1)
            }
            None => "input".into(),
        };
        r.line(format!("{:>3}. {}    [{from}]", i + 1, sys.show_rule(rule)));
        r.kv(format!("rule.{}", i + 1), sys.show_rule(rule));
    }
    let amb = sys.overlap_ambiguities(n);
    let unresolved: Vec<_> = amb.iter().filter(|a| !sys.resolve(a).is_zero()).collect();
    for a in &unresolved {
        r.line(format!("unresolved ambiguity at {}", sys.show_word(&a.word)));
    }
    r.both("rules", "rules", sys.rules.len());
    r.both("ambiguities", "ambiguities", format!("{} checked, {} unresolved", amb.len(), unresolved.len()));
    r.both("monomial", "monomial", sys.is_monomial());
    if !unresolved.is_empty() {
        r.fail();
    }
    Ok(())
}

fn cmd_normal(r: &mut Report, p: &Presentation, element: Option<&str>, bideg: Option<&str>, n: i64) -> Result<()> {
    let sys = complete(p, n)?;
    if let Some(e) = element {
        let a = p.parse_expr(e)?;
        let v = is_normal(&sys, &a, n)?;
        let show = |c: &[Option<Scalar>]| {
            c.iter().map(|x| x.as_ref().map_or("-".into(), |s| s.to_text(&p.var))).collect::<Vec<_>>().join(" ")
        };
        r.both("normal", "normal", v.normal);
        if v.normal {
            r.both("left", "z a = c a z, c per generator", show(&v.left));
            r.both("right", "a z = c z a, c per generator", show(&v.right));
        }
        for f in &v.failures {
            r.line(format!("  {f}"));
        }
        if !v.normal {
            r.fail();
        }
        return Ok(());
    }
    let b = bideg.unwrap_or_default();
    let (x, y) = b.split_once(',').ok_or_else(|| Error::Invalid(format!("expected a,b, got `{b}`")))?;
    let num = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad integer `{s}`")));
    let s = search_normal(&sys, num(x)?, num(y)?)?;
    r.both("multidegree", "multidegree", format!("({})", join(&s.multidegree)));
    let basis: Vec<String> = s.basis.iter().map(|w| sys.show_word(w)).collect();
    r.both("basis", "basis", basis.join(" "));
    let mut count = 0;
    for f in &s.families {
        let sc: Vec<String> = f.scalars.iter().map(|c| c.to_text(&p.var)).collect();
        for el in &f.elements {
            count += 1;
            r.line(format!("normal: {}    scalars {}", sys.show(el), sc.join(" ")));
            r.kv(format!("element.{count}"), sys.show(el));
        }
    }
    for u in &s.unresolved {
        r.line(format!("unresolved: {u}"));
    }
    r.both("found", "normal elements found", count);
    if count == 0 {
        r.fail();
    }
    Ok(())
}

fn report_betti(r: &mut Report, b: &BettiTable) {
    r.line("s  adams  dim");
    for (s, n, d) in b.rows() {
        r.line(format!("{s:<2} {n:<6} {d}"));
        r.kv("row", format!("{s} {n} {d}"));
    }
}
