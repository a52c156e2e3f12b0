//! Checking that generator images respect the defining relations.

use crate::error::{Error, Result};
use crate::poly::NCPoly;
use crate::presentation::Presentation;

use super::ReductionSystem;

#[derive(Clone, Debug, PartialEq)]
pub struct HomReport {
    pub ok: bool,
    /// Relations whose image does not reduce to zero, with the normal form of the image.
    pub failures: Vec<(usize, NCPoly)>,
}

/// Parses `name=EXPR` assignments; generators sharing a name with a target generator
/// default to it.
pub fn parse_images(src: &Presentation, tgt: &Presentation, maps: &[String]) -> Result<Vec<NCPoly>> {
    let mut out: Vec<Option<NCPoly>> = vec![None; src.gens.len()];
    for m in maps {
        let (name, expr) = m
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("map `{m}` is not of the form name=expression")))?;
        let g = src
            .gen_index(name.trim())
            .ok_or_else(|| Error::Invalid(format!("`{}` is not a source generator", name.trim())))?;
        out[g] = Some(tgt.parse_expr(expr)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(g, p)| match p {
            Some(p) => Ok(p),
            None => {
                let name = &src.gens[g].name;
                tgt.gen_index(name)
                    .map(NCPoly::generator)
                    .ok_or_else(|| Error::Invalid(format!("no image given for generator `{name}`")))
            }
        })
        .collect()
}

/// Substitutes generator images into a polynomial.
pub fn substitute(p: &NCPoly, images: &[NCPoly]) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let mut t = NCPoly::constant(c.clone());
        for &g in &w.0 {
            t = t.try_mul(&images[g as usize])?;
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// True iff every source relation maps to zero in the target, checked by normal forms.
pub fn verify_homomorphism(src: &Presentation, tgt: &ReductionSystem, images: &[NCPoly], n: i64) -> Result<HomReport> {
    if images.len() != src.gens.len() {
        return Err(Error::Invalid("one image per source generator is required".into()));
    }
    for (g, img) in images.iter().enumerate() {
        let want = src.gens[g].degree[0];
        for (w, _) in img.terms() {
            if tgt.degree(w) != want {
                return Err(Error::Invalid(format!(
                    "image of `{}` has a term of degree {} instead of {}",
                    src.gens[g].name,
                    tgt.degree(w),
                    want
                )));
            }
        }
    }
    let mut rep = HomReport { ok: true, failures: Vec::new() };
    for (i, r) in src.relations.iter().enumerate() {
        if r.degree[0] > n {
            return Err(Error::DegreeBound { bound: n, requested: r.degree[0] });
        }
        let img = substitute(&r.poly, images)?;
        let nf = tgt.normal_form(&img)?;
        if !nf.is_zero() {
            rep.ok = false;
            rep.failures.push((i, nf));
        }
    }
    Ok(rep)
}
