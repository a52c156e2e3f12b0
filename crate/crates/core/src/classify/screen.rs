//! Necessary conditions for regularity of type 12221: Hilbert series, Ext dimensions, Frobenius pairing.

use crate::ainf::{check_frobenius, Merkulov, SplittingPolicy};
use crate::barext::{betti_minimal, BettiTable};
use crate::error::{Error, Result};
use crate::poly::{NCPoly, Word};
use crate::presentation::Presentation;
use crate::rewrite::{complete, is_normal};
use crate::scalar::Scalar;

/// Ext dimensions of type 12221 as `(s, adams, dim)`.
pub const BETTI_12221: [(usize, i64, usize); 6] = [(0, 0, 1), (1, 1, 2), (2, 3, 1), (2, 4, 1), (3, 6, 2), (4, 7, 1)];

/// Coefficients of `1/((1-t)^2 (1-t^2) (1-t^3))` through `t^n`.
pub fn regular_series(n: usize) -> Vec<usize> {
    let mut c = vec![0usize; n + 1];
    c[0] = 1;
    for d in [1usize, 1, 2, 3] {
        for k in d..=n {
            c[k] += c[k - d];
        }
    }
    c
}

/// Series of the quotient by a regular normal element of degree 2.
pub fn regular_quotient_series(n: usize) -> Vec<usize> {
    let h = regular_series(n);
    (0..=n).map(|k| h[k] - if k >= 2 { h[k - 2] } else { 0 }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenReport {
    /// Stages that ran and passed, in order.
    pub passed: Vec<&'static str>,
    pub failure: Option<String>,
}

impl ScreenReport {
    pub fn passes(&self) -> bool {
        self.failure.is_none()
    }

    pub fn verdict(&self) -> String {
        match &self.failure {
            None => format!("PASS: {}", self.passed.join(", ")),
            Some(f) => format!("FAIL: {f}"),
        }
    }
}

fn first_mismatch(got: &[usize], want: &[usize]) -> Option<(usize, usize, usize)> {
    got.iter().zip(want).enumerate().find(|(_, (g, w))| g != w).map(|(k, (g, w))| (k, *g, *w))
}

/// Direct series, refined by the quotient by `z2^2` when that element is normal and the quotient
/// fails in a lower degree.
fn series_stage(pres: &Presentation, n: i64) -> Result<Option<String>> {
    let sys = complete(pres, n)?;
    let got = sys.hilbert_coeffs(n)?;
    let Some((k, g, w)) = first_mismatch(&got, &regular_series(n as usize)) else {
        return Ok(None);
    };
    let direct = format!("H[{k}]={g} expected {w}");
    let last = pres.gens.len() - 1;
    let sq = NCPoly::monomial(Word(vec![last as u8, last as u8]), Scalar::one());
    let bound = n.min(sys.complete_up_to);
    if bound < 4 || !is_normal(&sys, &sq, bound)?.normal {
        return Ok(Some(direct));
    }
    let mut q = pres.clone();
    q.add_relation(sq.clone())?;
    let qgot = complete(&q, k as i64)?.hilbert_coeffs(k as i64)?;
    match first_mismatch(&qgot, &regular_quotient_series(k)) {
        Some((qk, qg, qw)) if qk < k => Ok(Some(format!(
            "H[{qk}]={qg} expected {qw} for the quotient by the normal element {}",
            pres.show(&sq)
        ))),
        _ => Ok(Some(direct)),
    }
}

fn betti_stage(b: &BettiTable) -> Option<String> {
    for s in 0..=b.s_max {
        for a in 0..=b.n_max {
            let want = BETTI_12221.iter().find(|(t, d, _)| *t == s && *d == a).map_or(0, |x| x.2);
            let got = b.by_degree(s, a);
            if got != want {
                return Some(format!("Ext^{s} in Adams degree {a} has dimension {got}, expected {want}"));
            }
        }
    }
    None
}

/// Runs series, Ext dimensions and the Frobenius pairing in that order, stopping at the first failure.
pub fn regularity_screen(pres: &Presentation, n: i64) -> Result<ScreenReport> {
    let two_linear = pres.gens.len() == 2 && pres.gens.iter().all(|g| g.degree[0] == 1);
    if !two_linear {
        return Err(Error::Unsupported("the screen needs two generators of degree one".into()));
    }
    if n < 7 {
        return Err(Error::Invalid(format!("the screen needs degree at least 7, got {n}")));
    }
    let mut rep = ScreenReport { passed: Vec::new(), failure: None };
    if let Some(f) = series_stage(pres, n)? {
        rep.failure = Some(f);
        return Ok(rep);
    }
    rep.passed.push("series");
    let sys = complete(pres, n)?;
    let b = betti_minimal(&sys, 5, n)?;
    if let Some(f) = betti_stage(&b) {
        rep.failure = Some(f);
        return Ok(rep);
    }
    rep.passed.push("betti");
    let mut m = Merkulov::new(&sys, 7, SplittingPolicy::Echelon)?;
    let e = m.structure(4, 2)?;
    let fc = check_frobenius(&e)?;
    if !fc.ok() {
        rep.failure = Some(format!(
            "pairing into the top class has rank {} on a {}-dimensional Ext algebra (top dimension {})",
            fc.gram_rank, fc.dim, fc.top_dim
        ));
        return Ok(rep);
    }
    rep.passed.push("frobenius");
    Ok(rep)
}
