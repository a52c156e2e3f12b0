//! Minimal free resolution of the trivial module, built degree by degree.
//! Only generator counts are kept; they equal the Ext dimensions.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::rewrite::{QuotientBasis, ReductionSystem};
use crate::scalar::Scalar;

use super::BettiTable;

struct Gen {
    md: Vec<i64>,
    /// Image in the previous free module as (generator, word id, coefficient).
    image: Vec<(usize, usize, Scalar)>,
}

struct Products<'q, 'a> {
    qb: &'q QuotientBasis<'a>,
    cache: HashMap<(usize, usize), Vec<(usize, Scalar)>>,
}

impl Products<'_, '_> {
    fn get(&mut self, u: usize, v: usize) -> Result<&Vec<(usize, Scalar)>> {
        if !self.cache.contains_key(&(u, v)) {
            let p = self.qb.product(u, v)?;
            self.cache.insert((u, v), p);
        }
        Ok(&self.cache[&(u, v)])
    }
}

fn sub_md(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let v: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    v.iter().all(|&x| x >= 0).then_some(v)
}

/// Basis `(generator, word)` of a free module in one multidegree.
fn module_basis(gens: &[Gen], qb: &QuotientBasis, md: &[i64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (g, gen) in gens.iter().enumerate() {
        if let Some(rest) = sub_md(md, &gen.md) {
            for &w in qb.ids_of_multideg(&rest) {
                out.push((g, w));
            }
        }
    }
    out
}

/// `w * image(g)` in coordinates of `target`.
fn act(
    prod: &mut Products,
    w: usize,
    image: &[(usize, usize, Scalar)],
    target: &HashMap<(usize, usize), usize>,
) -> Result<SparseVec> {
    let mut e = Vec::new();
    for (g, u, c) in image {
        for (id, k) in prod.get(w, *u)?.clone() {
            let pos = target.get(&(*g, id)).ok_or_else(|| Error::Invalid("resolution image outside its multidegree".into()))?;
            e.push((*pos, c * &k));
        }
    }
    Ok(linalg::from_entries(e))
}

pub fn betti_minimal(sys: &ReductionSystem, s_max: usize, n_max: i64) -> Result<BettiTable> {
    if n_max > sys.complete_up_to {
        return Err(Error::DegreeBound { bound: sys.complete_up_to, requested: n_max });
    }
    let qb = QuotientBasis::new(sys, n_max)?;
    let mut prod = Products { qb: &qb, cache: HashMap::new() };
    let rank = sys.degrees.first().map_or(1, |d| d.len());
    let mut table = BettiTable::new(s_max, n_max);
    let zero = vec![0i64; rank];
    table.set(0, &zero, 1);
    let mut levels: Vec<Vec<Gen>> = vec![vec![Gen { md: zero, image: Vec::new() }]];
    for s in 1..=s_max {
        let prev = &levels[s - 1];
        let mut degs: BTreeSet<(i64, Vec<i64>)> = BTreeSet::new();
        for g in prev {
            for md in qb.by_multideg.keys() {
                let d: Vec<i64> = g.md.iter().zip(md).map(|(x, y)| x + y).collect();
                if d[0] <= n_max && md[0] > 0 {
                    degs.insert((d[0], d));
                }
            }
        }
        let mut cur: Vec<Gen> = Vec::new();
        for (_, md) in degs {
            let src = module_basis(prev, &qb, &md);
            let src_index: HashMap<(usize, usize), usize> = src.iter().enumerate().map(|(i, x)| (*x, i)).collect();
            let kernel: Vec<SparseVec> = if s == 1 {
                (0..src.len()).map(|i| vec![(i, Scalar::one())]).collect()
            } else {
                let pp = &levels[s - 2];
                let tgt = module_basis(pp, &qb, &md);
                let tgt_index: HashMap<(usize, usize), usize> = tgt.iter().enumerate().map(|(i, x)| (*x, i)).collect();
                let mut images = Vec::with_capacity(src.len());
                for &(g, w) in &src {
                    images.push(act(&mut prod, w, &prev[g].image, &tgt_index)?);
                }
                linalg::kernel(&images, tgt.len())
            };
            let mut im = Echelon::new(src.len());
            for gen in &cur {
                if let Some(rest) = sub_md(&md, &gen.md) {
                    for &w in qb.ids_of_multideg(&rest) {
                        im.insert(&act(&mut prod, w, &gen.image, &src_index)?);
                    }
                }
            }
            let mut fresh = Vec::new();
            for v in kernel {
                if im.insert(&v).is_some() {
                    fresh.push(Gen { md: md.clone(), image: v.into_iter().map(|(i, c)| (src[i].0, src[i].1, c)).collect() });
                }
            }
            if !fresh.is_empty() {
                table.set(s, &md, fresh.len());
            }
            cur.extend(fresh);
        }
        let done = cur.is_empty();
        levels.push(cur);
        if done {
            break;
        }
    }
    Ok(table)
}
