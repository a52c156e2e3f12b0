//! Bar complexes, Ext dimensions and resolution shapes.

mod bar;
mod resolution;

use std::collections::BTreeMap;

pub use bar::{BarComplex, Slice, SliceKey};
pub use resolution::betti_minimal;

use crate::error::Result;
use crate::rewrite::ReductionSystem;

pub const DEFAULT_DIM_CAP: usize = 20000;

/// Largest slice dimension allowed, from `NCALG_DIM_CAP` when set.
pub fn dim_cap() -> usize {
    std::env::var("NCALG_DIM_CAP").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_DIM_CAP)
}

/// `b_{s,D}`: dimension of Ext^s in multidegree D. Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub s_max: usize,
    pub n_max: i64,
    pub entries: BTreeMap<(usize, Vec<i64>), usize>,
}

impl BettiTable {
    pub fn new(s_max: usize, n_max: i64) -> BettiTable {
        BettiTable { s_max, n_max, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, s: usize, md: &[i64], b: usize) {
        if b == 0 {
            self.entries.remove(&(s, md.to_vec()));
        } else {
            self.entries.insert((s, md.to_vec()), b);
        }
    }

    pub fn get(&self, s: usize, md: &[i64]) -> usize {
        self.entries.get(&(s, md.to_vec())).copied().unwrap_or(0)
    }

    /// Total over multidegrees with first component `n`.
    pub fn by_degree(&self, s: usize, n: i64) -> usize {
        self.entries.iter().filter(|((t, md), _)| *t == s && md[0] == n).map(|(_, b)| b).sum()
    }

    /// Nonzero `(s, n, b)` rows in the first-component grading.
    pub fn rows(&self) -> Vec<(usize, i64, usize)> {
        let mut out = Vec::new();
        for s in 0..=self.s_max {
            for n in 0..=self.n_max {
                let b = self.by_degree(s, n);
                if b > 0 {
                    out.push((s, n, b));
                }
            }
        }
        out
    }

    /// Degrees of the free generators in homological degree `s`, ascending, with repetition.
    pub fn generator_degrees(&self, s: usize) -> Vec<i64> {
        let mut v = Vec::new();
        for n in 0..=self.n_max {
            for _ in 0..self.by_degree(s, n) {
                v.push(n);
            }
        }
        v
    }

    /// Coefficients of `sum_{s,n} (-1)^s b_{s,n} t^n` up to `n_max`.
    pub fn euler_polynomial(&self) -> Vec<i64> {
        let mut p = vec![0i64; self.n_max as usize + 1];
        for ((s, md), b) in &self.entries {
            if md[0] <= self.n_max {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                p[md[0] as usize] += sign * *b as i64;
            }
        }
        p
    }
}

/// Product of the Euler polynomial with a Hilbert series, truncated; `[1, 0, 0, ..]` when they are inverse.
pub fn hilbert_betti_product(b: &BettiTable, hilbert: &[usize]) -> Vec<i64> {
    let p = b.euler_polynomial();
    let n = p.len().min(hilbert.len());
    (0..n)
        .map(|k| (0..=k).map(|i| p[i] * hilbert[k - i] as i64).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    /// Generator degrees per homological degree `0..=d`.
    pub degrees: Vec<Vec<i64>>,
    /// The constant `l` when the pairing holds.
    pub l: Option<i64>,
    pub violation: Option<String>,
}

impl ShapeReport {
    pub fn symmetric(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `n_w = n_{d-w}` and `i_{w,s} + i_{d-w, n_w - s + 1} = l` for a single `l`.
pub fn resolution_shape(b: &BettiTable, d: usize) -> ShapeReport {
    let degrees: Vec<Vec<i64>> = (0..=d).map(|w| b.generator_degrees(w)).collect();
    let mut rep = ShapeReport { degrees: degrees.clone(), l: None, violation: None };
    for w in 0..=d {
        let (a, c) = (&degrees[w], &degrees[d - w]);
        if a.len() != c.len() {
            rep.violation = Some(format!("rank {} in degree {w} but {} in degree {}", a.len(), c.len(), d - w));
            return rep;
        }
        let n = a.len();
        for s in 0..n {
            let sum = a[s] + c[n - 1 - s];
            match rep.l {
                None => rep.l = Some(sum),
                Some(l) if l != sum => {
                    rep.violation = Some(format!(
                        "generator degrees {} (homological {w}) and {} (homological {}) sum to {sum}, expected {l}",
                        a[s],
                        c[n - 1 - s],
                        d - w
                    ));
                    rep.l = None;
                    return rep;
                }
                _ => {}
            }
        }
    }
    if b.s_max > d && (d + 1..=b.s_max).any(|s| !b.generator_degrees(s).is_empty()) {
        rep.violation = Some(format!("nonzero Ext beyond homological degree {d}"));
        rep.l = None;
    }
    rep
}

/// Bar-complex Betti numbers, the route that computes homology slice by slice.
pub fn betti_numbers(sys: &ReductionSystem, s_max: usize, n_max: i64) -> Result<BettiTable> {
    BarComplex::new(sys, n_max)?.betti(s_max)
}
