//! Complexes of free left modules over a quotient algebra and their homology.
//!
//! An element `a e_g` of a free module maps to `sum_h a * M[g][h] e_h`.

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon};
use crate::poly::NCPoly;
use crate::presentation::Presentation;

use super::{QuotientBasis, ReductionSystem};

#[derive(Clone, Debug, PartialEq)]
pub struct FreeModule {
    pub name: String,
    /// Degree of each free generator.
    pub shifts: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    pub modules: Vec<FreeModule>,
    /// `maps[k]` goes from `modules[k]` to `modules[k+1]`; rows are source generators.
    pub maps: Vec<Vec<Vec<NCPoly>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexReport {
    pub is_complex: bool,
    pub composite_failures: Vec<String>,
    /// `homology[k][n]`: homology at module k in degree n.
    pub homology: Vec<Vec<usize>>,
}

impl ComplexReport {
    /// Homology vanishes except for a one-dimensional class in degree 0 of the last module.
    pub fn is_resolution_of_field(&self) -> bool {
        let last = self.homology.len().saturating_sub(1);
        self.is_complex
            && self.homology.iter().enumerate().all(|(k, row)| {
                row.iter().enumerate().all(|(n, &h)| if k == last && n == 0 { h == 1 } else { h == 0 })
            })
    }
}

fn parse_shift(tok: &str, line: usize) -> Result<i64> {
    let t = tok.trim();
    let first = t.trim_start_matches('(').split(',').next().unwrap_or("").trim_end_matches(')').trim();
    first.parse::<i64>().map_err(|_| Error::Parse { line, col: 1, msg: format!("bad module shift `{t}`") })
}

/// Parses a maps file:
/// ```text
/// module NAME : shift shift ...
/// map SRC -> TGT
/// entry ; entry ; ...      (one row per source generator)
/// ```
pub fn parse_complex(text: &str, pres: &Presentation) -> Result<FreeComplex> {
    let mut modules: Vec<FreeModule> = Vec::new();
    let mut maps: Vec<Option<Vec<Vec<NCPoly>>>> = Vec::new();
    let mut current: Option<(usize, Vec<Vec<NCPoly>>)> = None;
    let finish = |cur: &mut Option<(usize, Vec<Vec<NCPoly>>)>, maps: &mut Vec<Option<Vec<Vec<NCPoly>>>>| {
        if let Some((k, rows)) = cur.take() {
            if maps.len() <= k {
                maps.resize(k + 1, None);
            }
            maps[k] = Some(rows);
        }
    };
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix("module ") {
            finish(&mut current, &mut maps);
            let (name, shifts) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse { line, col: 1, msg: "expected `module NAME : shifts`".into() })?;
            let shifts = shifts
                .split_whitespace()
                .map(|t| parse_shift(t, line))
                .collect::<Result<Vec<_>>>()?;
            modules.push(FreeModule { name: name.trim().to_string(), shifts });
        } else if let Some(rest) = s.strip_prefix("map ") {
            finish(&mut current, &mut maps);
            let (a, b) = rest
                .split_once("->")
                .ok_or_else(|| Error::Parse { line, col: 1, msg: "expected `map SRC -> TGT`".into() })?;
            let find = |n: &str| modules.iter().position(|m| m.name == n.trim());
            let (Some(ia), Some(ib)) = (find(a), find(b)) else {
                return Err(Error::Parse { line, col: 1, msg: "unknown module in map header".into() });
            };
            if ib != ia + 1 {
                return Err(Error::Parse { line, col: 1, msg: "maps must go between consecutive modules".into() });
            }
            current = Some((ia, Vec::new()));
        } else {
            let Some((_, rows)) = current.as_mut() else {
                return Err(Error::Parse { line, col: 1, msg: "matrix row outside a map block".into() });
            };
            let row = s
                .split(';')
                .map(|e| {
                    pres.parse_expr(e.trim()).map_err(|err| match err {
                        Error::Parse { col, msg, .. } => Error::Parse { line, col, msg },
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
    }
    finish(&mut current, &mut maps);
    if modules.is_empty() {
        return Err(Error::Invalid("no modules declared".into()));
    }
    let mut out = Vec::new();
    for k in 0..modules.len() - 1 {
        let m = maps
            .get(k)
            .cloned()
            .flatten()
            .ok_or_else(|| Error::Invalid(format!("missing map {} -> {}", modules[k].name, modules[k + 1].name)))?;
        if m.len() != modules[k].shifts.len() || m.iter().any(|r| r.len() != modules[k + 1].shifts.len()) {
            return Err(Error::Invalid(format!("matrix {} -> {} has the wrong shape", modules[k].name, modules[k + 1].name)));
        }
        out.push(m);
    }
    Ok(FreeComplex { modules, maps: out })
}

/// Composites vanish and homology dimensions per module and degree `0..=n`.
pub fn verify_complex(cx: &FreeComplex, sys: &ReductionSystem, n: i64) -> Result<ComplexReport> {
    // homogeneity of entries
    for (k, m) in cx.maps.iter().enumerate() {
        for (g, row) in m.iter().enumerate() {
            for (h, e) in row.iter().enumerate() {
                let want = cx.modules[k].shifts[g] - cx.modules[k + 1].shifts[h];
                if e.terms().any(|(w, _)| sys.degree(w) != want) {
                    return Err(Error::Invalid(format!(
                        "entry ({},{}) of map {} -> {} is not homogeneous of degree {want}",
                        g + 1,
                        h + 1,
                        cx.modules[k].name,
                        cx.modules[k + 1].name
                    )));
                }
            }
        }
    }
    let mut rep = ComplexReport { is_complex: true, composite_failures: Vec::new(), homology: Vec::new() };
    for k in 0..cx.maps.len().saturating_sub(1) {
        let (m1, m2) = (&cx.maps[k], &cx.maps[k + 1]);
        for (g, row) in m1.iter().enumerate() {
            for l in 0..cx.modules[k + 2].shifts.len() {
                let mut acc = NCPoly::zero();
                for (e, next) in row.iter().zip(m2) {
                    acc = acc.add(&e.try_mul(&next[l])?);
                }
                if !sys.normal_form(&acc)?.is_zero() {
                    rep.is_complex = false;
                    rep.composite_failures.push(format!(
                        "{} -> {}: generator {} component {}",
                        cx.modules[k].name,
                        cx.modules[k + 2].name,
                        g + 1,
                        l + 1
                    ));
                }
            }
        }
    }
    let qb = QuotientBasis::new(sys, n)?;
    // basis of module k in degree d: (generator, word id)
    let basis = |k: usize, d: i64| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (g, &s) in cx.modules[k].shifts.iter().enumerate() {
            if d - s >= 0 && d - s <= n {
                for &w in &qb.by_degree[(d - s) as usize] {
                    v.push((g, w));
                }
            }
        }
        v
    };
    let rank_of = |k: usize, d: i64| -> Result<usize> {
        // rank of maps[k] in degree d
        let src = basis(k, d);
        let tgt = basis(k + 1, d);
        let pos: std::collections::HashMap<(usize, usize), usize> = tgt.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut e = Echelon::new(tgt.len());
        for (g, w) in src {
            let a = qb.poly_of(w);
            let mut entries = Vec::new();
            for (h, m) in cx.maps[k][g].iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                for (id, c) in qb.nf_ids(&a.try_mul(m)?)? {
                    entries.push((pos[&(h, id)], c));
                }
            }
            e.insert(&linalg::from_entries(entries));
        }
        Ok(e.rank())
    };
    let nmods = cx.modules.len();
    for k in 0..nmods {
        let mut row = Vec::new();
        for d in 0..=n {
            let dim = basis(k, d).len();
            let out = if k + 1 < nmods { rank_of(k, d)? } else { 0 };
            let inn = if k > 0 { rank_of(k - 1, d)? } else { 0 };
            row.push(dim - out - inn);
        }
        rep.homology.push(row);
    }
    Ok(rep)
}
