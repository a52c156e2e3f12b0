//! The normalized bar complex of a quotient algebra, sliced by tensor length and multidegree.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::rewrite::{QuotientBasis, ReductionSystem};

use super::{dim_cap, BettiTable};

/// Basis of one slice: tensors `[a1|..|as]` of standard monomials of positive degree.
#[derive(Clone, Debug, Default)]
pub struct Slice {
    pub tensors: Vec<Vec<u32>>,
    pub index: HashMap<Vec<u32>, usize>,
}

impl Slice {
    pub fn len(&self) -> usize {
        self.tensors.len()
    }
    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }
}

pub type SliceKey = (usize, Vec<i64>);

pub struct BarComplex<'a> {
    pub qb: QuotientBasis<'a>,
    pub n_max: i64,
    pub slices: BTreeMap<SliceKey, Slice>,
    products: HashMap<(u32, u32), Vec<(usize, crate::Scalar)>>,
}

fn add_md(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<'a> BarComplex<'a> {
    /// All slices with first-component degree at most `n_max` (hence tensor length at most `n_max`).
    pub fn new(sys: &'a ReductionSystem, n_max: i64) -> Result<BarComplex<'a>> {
        if n_max > sys.complete_up_to {
            return Err(Error::DegreeBound { bound: sys.complete_up_to, requested: n_max });
        }
        let qb = QuotientBasis::new(sys, n_max)?;
        let cap = dim_cap();
        let rank = sys.degrees.first().map_or(1, |d| d.len());
        let mut slices: BTreeMap<SliceKey, Slice> = BTreeMap::new();
        let mut level: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
        level.insert(vec![0; rank], vec![Vec::new()]);
        let positive: Vec<usize> = (0..qb.len()).filter(|&i| qb.degree[i] > 0).collect();
        for s in 0..=n_max as usize {
            if level.is_empty() {
                break;
            }
            let mut next: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
            for (md, mut ts) in std::mem::take(&mut level) {
                ts.sort();
                if ts.len() > cap {
                    return Err(Error::DimCap { dim: ts.len(), cap });
                }
                for t in &ts {
                    for &id in &positive {
                        if md[0] + qb.degree[id] > n_max {
                            continue;
                        }
                        let mut u = t.clone();
                        u.push(id as u32);
                        next.entry(add_md(&md, &qb.multideg[id])).or_default().push(u);
                    }
                }
                let index = ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
                slices.insert((s, md), Slice { tensors: ts, index });
            }
            level = next;
        }
        Ok(BarComplex { qb, n_max, slices, products: HashMap::new() })
    }

    pub fn slice(&self, s: usize, md: &[i64]) -> Option<&Slice> {
        self.slices.get(&(s, md.to_vec()))
    }

    pub fn dim(&self, s: usize, md: &[i64]) -> usize {
        self.slice(s, md).map_or(0, |x| x.len())
    }

    /// Multidegrees occurring in some slice, in increasing order.
    pub fn multidegrees(&self) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self.slices.keys().map(|(_, m)| m.clone()).collect();
        v.sort_by(|a, b| (a[0], a).cmp(&(b[0], b)));
        v.dedup();
        v
    }

    fn product(&mut self, u: u32, v: u32) -> Result<Vec<(usize, crate::Scalar)>> {
        if let Some(p) = self.products.get(&(u, v)) {
            return Ok(p.clone());
        }
        let p = self.qb.product(u as usize, v as usize)?;
        self.products.insert((u, v), p.clone());
        Ok(p)
    }

    /// Differential of one tensor as (tensor, coefficient) pairs:
    /// `d[a1|..|as] = sum_{i>=2} (-1)^(i-1) [a1|..|a_{i-1} a_i|..|as]`.
    pub fn d_tensor(&mut self, t: &[u32]) -> Result<Vec<(Vec<u32>, crate::Scalar)>> {
        let mut out = Vec::new();
        for i in 1..t.len() {
            let sign_neg = i % 2 == 1;
            for (id, c) in self.product(t[i - 1], t[i])? {
                let mut u: Vec<u32> = Vec::with_capacity(t.len() - 1);
                u.extend_from_slice(&t[..i - 1]);
                u.push(id as u32);
                u.extend_from_slice(&t[i + 1..]);
                out.push((u, if sign_neg { -c } else { c }));
            }
        }
        Ok(out)
    }

    /// Rows: images of the basis tensors of slice `(s, md)` in slice `(s-1, md)`.
    pub fn differential(&mut self, s: usize, md: &[i64]) -> Result<Vec<SparseVec>> {
        let Some(src) = self.slice(s, md) else { return Ok(Vec::new()) };
        let src = src.tensors.clone();
        if s < 2 {
            return Ok(vec![Vec::new(); src.len()]);
        }
        let mut rows = Vec::with_capacity(src.len());
        for t in &src {
            let img = self.d_tensor(t)?;
            let tgt = self.slice(s - 1, md).expect("target slice exists");
            rows.push(linalg::from_entries(img.into_iter().map(|(u, c)| (tgt.index[&u], c)).collect()));
        }
        Ok(rows)
    }

    pub fn rank_d(&mut self, s: usize, md: &[i64]) -> Result<usize> {
        if s < 2 {
            return Ok(0);
        }
        let rows = self.differential(s, md)?;
        Ok(linalg::rank(self.dim(s - 1, md), &rows))
    }

    /// Slices on which `d∘d` fails to vanish.
    pub fn d_squared_failures(&mut self) -> Result<Vec<SliceKey>> {
        let keys: Vec<SliceKey> = self.slices.keys().filter(|(s, _)| *s >= 3).cloned().collect();
        let mut bad = Vec::new();
        for (s, md) in keys {
            let tensors = self.slices[&(s, md.clone())].tensors.clone();
            for t in &tensors {
                let mut acc: HashMap<Vec<u32>, crate::Scalar> = HashMap::new();
                for (u, c) in self.d_tensor(t)? {
                    for (v, e) in self.d_tensor(&u)? {
                        *acc.entry(v).or_insert_with(crate::Scalar::zero) += &(&c * &e);
                    }
                }
                if acc.values().any(|c| !c.is_zero()) {
                    bad.push((s, md.clone()));
                    break;
                }
            }
        }
        Ok(bad)
    }

    /// Homology of the bar complex per slice, for tensor lengths up to `s_max`.
    pub fn betti(&mut self, s_max: usize) -> Result<BettiTable> {
        let mut table = BettiTable::new(s_max, self.n_max);
        for md in self.multidegrees() {
            let mut ranks = vec![0usize; s_max + 2];
            for (s, r) in ranks.iter_mut().enumerate().skip(2) {
                *r = self.rank_d(s, &md)?;
            }
            for s in 0..=s_max {
                let b = self.dim(s, &md) - ranks[s] - ranks[s + 1];
                table.set(s, &md, b);
            }
        }
        Ok(table)
    }

    /// `sum_s (-1)^s dim` of the slices of first-component degree `n`.
    pub fn euler(&self, n: i64) -> i64 {
        self.slices
            .iter()
            .filter(|((_, md), _)| md[0] == n)
            .map(|((s, _), sl)| if s % 2 == 0 { sl.len() as i64 } else { -(sl.len() as i64) })
            .sum()
    }
}
