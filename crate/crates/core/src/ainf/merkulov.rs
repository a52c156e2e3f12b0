//! Minimal A-infinity model of the dual bar algebra by homotopy transfer.
//!
//! Cochains in slice `(s, D)` are vectors over the bar tensors of that slice; the
//! product concatenates tensors and the differential is `f -> -f∘d`.

use std::collections::{BTreeMap, HashMap};

use crate::barext::{BarComplex, SliceKey};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::rewrite::ReductionSystem;
use crate::scalar::Scalar;

use super::{AInfStructure, BasisElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingPolicy {
    /// Degree-two splitting built from the first-letter factorization of standard words.
    Structured,
    /// Complements from reduced echelon forms everywhere.
    Echelon,
}

impl std::str::FromStr for SplittingPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<SplittingPolicy> {
        match s {
            "structured" => Ok(SplittingPolicy::Structured),
            "echelon" => Ok(SplittingPolicy::Echelon),
            _ => Err(Error::Invalid(format!("unknown policy `{s}` (structured|echelon)"))),
        }
    }
}

/// A homogeneous cochain.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub s: i64,
    pub md: Vec<i64>,
    pub v: SparseVec,
}

enum QRule {
    /// `Q(v) = sum_k v[pb[k]] * qb[k]`; H coordinates at `h_cols` after removing the B part.
    Echelon { pb: Vec<usize>, b_rows: Vec<SparseVec>, qb: Vec<SparseVec>, h_cols: Vec<usize> },
    /// `Q(f)[target] = f[source]`; H coordinates are `f . r_k`.
    Structured { xi: Vec<(usize, usize)>, r: Vec<SparseVec> },
}

struct Split {
    rule: QRule,
    h_vecs: Vec<SparseVec>,
    l_basis: Vec<SparseVec>,
}

pub struct Merkulov<'a> {
    pub bar: BarComplex<'a>,
    pub policy: SplittingPolicy,
    splits: HashMap<SliceKey, Split>,
    diffs: HashMap<SliceKey, Vec<SparseVec>>,
    /// H basis elements, globally indexed.
    pub basis: Vec<BasisElem>,
    pub unit: usize,
    /// Global ids of the H basis of each slice, in coordinate order.
    pub ids: BTreeMap<SliceKey, Vec<usize>>,
    slot: Vec<(SliceKey, usize)>,
    qlambda: HashMap<Vec<usize>, Cochain>,
    m_cache: HashMap<Vec<usize>, Vec<(usize, Scalar)>>,
}

fn add_md(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn unit_vec(i: usize) -> SparseVec {
    vec![(i, Scalar::one())]
}

impl<'a> Merkulov<'a> {
    pub fn new(sys: &'a ReductionSystem, n_max: i64, policy: SplittingPolicy) -> Result<Merkulov<'a>> {
        if policy == SplittingPolicy::Structured && sys.degrees.iter().any(|d| d[0] != 1) {
            return Err(Error::Unsupported("the structured splitting needs generators of degree one".into()));
        }
        let bar = BarComplex::new(sys, n_max)?;
        let mut m = Merkulov {
            bar,
            policy,
            splits: HashMap::new(),
            diffs: HashMap::new(),
            basis: Vec::new(),
            unit: 0,
            ids: BTreeMap::new(),
            slot: Vec::new(),
            qlambda: HashMap::new(),
            m_cache: HashMap::new(),
        };
        let mut keys: Vec<SliceKey> = m.bar.slices.keys().cloned().collect();
        keys.sort_by(|a, b| (a.0, a.1[0], std::cmp::Reverse(&a.1)).cmp(&(b.0, b.1[0], std::cmp::Reverse(&b.1))));
        for k in &keys {
            m.ensure_split(k)?;
        }
        let mut count_by_s: BTreeMap<usize, usize> = BTreeMap::new();
        for k in keys {
            let n = m.splits[&k].h_vecs.len();
            let mut ids = Vec::new();
            for j in 0..n {
                let c = count_by_s.entry(k.0).or_insert(0);
                *c += 1;
                let name = match k.0 {
                    0 => "1".to_string(),
                    1 => format!("a{c}"),
                    2 => format!("b{c}"),
                    3 => format!("c{c}"),
                    4 => format!("d{c}"),
                    s => format!("e{s}_{c}"),
                };
                ids.push(m.basis.len());
                m.slot.push((k.clone(), j));
                m.basis.push(BasisElem { name, s: k.0, md: k.1.clone() });
            }
            if !ids.is_empty() {
                m.ids.insert(k, ids);
            }
        }
        Ok(m)
    }

    fn diff(&mut self, s: usize, md: &[i64]) -> Result<&Vec<SparseVec>> {
        let key = (s, md.to_vec());
        if !self.diffs.contains_key(&key) {
            let rows = self.bar.differential(s, md)?;
            self.diffs.insert(key.clone(), rows);
        }
        Ok(&self.diffs[&key])
    }

    /// `∂ℓ` for `ℓ` in slice `(s-1, md)`, as a vector over slice `(s, md)`.
    fn coboundary(&mut self, s: usize, md: &[i64], ls: &[SparseVec]) -> Result<Vec<SparseVec>> {
        let rows = self.diff(s, md)?;
        let mut cols: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for (u, row) in rows.iter().enumerate() {
            for (p, c) in row {
                cols.entry(*p).or_default().push((u, -c));
            }
        }
        Ok(ls
            .iter()
            .map(|l| {
                let mut e = Vec::new();
                for (p, c) in l {
                    if let Some(col) = cols.get(p) {
                        for (u, d) in col {
                            e.push((*u, c * d));
                        }
                    }
                }
                linalg::from_entries(e)
            })
            .collect())
    }

    fn ensure_split(&mut self, key: &SliceKey) -> Result<()> {
        if self.splits.contains_key(key) {
            return Ok(());
        }
        let (s, md) = (key.0, key.1.clone());
        if s >= 1 && self.bar.slice(s - 1, &md).is_some() {
            self.ensure_split(&(s - 1, md.clone()))?;
        }
        let split = if s == 2 && self.policy == SplittingPolicy::Structured {
            self.structured_split(&md)?
        } else {
            self.echelon_split(s, &md)?
        };
        self.splits.insert(key.clone(), split);
        Ok(())
    }

    fn echelon_split(&mut self, s: usize, md: &[i64]) -> Result<Split> {
        let dim = self.bar.dim(s, md);
        let next = self.diff(s + 1, md)?.clone();
        let mut e1 = Echelon::from_rows(dim, next.iter());
        e1.make_reduced();
        let mut pivots = e1.pivots.clone();
        pivots.sort_unstable();
        let is_pivot: Vec<bool> = (0..dim).map(|c| e1.is_pivot(c)).collect();
        let l_basis: Vec<SparseVec> = pivots.iter().map(|&p| unit_vec(p)).collect();

        let prev_l: Vec<SparseVec> = if s >= 1 {
            self.splits.get(&(s - 1, md.to_vec())).map(|sp| sp.l_basis.clone()).unwrap_or_default()
        } else {
            Vec::new()
        };
        let nl = prev_l.len();
        let mut pb = Vec::new();
        let mut b_rows = Vec::new();
        let mut qb = Vec::new();
        if nl > 0 {
            let cob = self.coboundary(s, md, &prev_l)?;
            let mut eb = Echelon::with_pivot_limit(dim + nl, dim);
            for (j, v) in cob.into_iter().enumerate() {
                let mut aug: SparseVec = v.into_iter().filter(|(c, _)| !is_pivot[*c]).collect();
                aug.push((dim + j, Scalar::one()));
                if eb.insert(&aug).is_none() {
                    return Err(Error::Malformed(format!("coboundary not injective on the complement in slice ({s}, {md:?})")));
                }
            }
            eb.make_reduced();
            let mut rows: Vec<SparseVec> = eb.rows.clone();
            rows.sort_by_key(|r| r[0].0);
            for r in rows {
                pb.push(r[0].0);
                let (b, t): (SparseVec, SparseVec) = r.into_iter().partition(|(c, _)| *c < dim);
                let mut q = Vec::new();
                for (c, coef) in t {
                    for (i, x) in &prev_l[c - dim] {
                        q.push((*i, &coef * x));
                    }
                }
                b_rows.push(b);
                qb.push(linalg::from_entries(q));
            }
        }
        let h_cols: Vec<usize> = (0..dim).filter(|c| !is_pivot[*c] && !pb.contains(c)).collect();
        // z_c = e_c - sum over echelon rows of row[c] e_pivot
        let mut colmap: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for row in &e1.rows {
            let p = row[0].0;
            for (c, v) in row.iter().skip(1) {
                colmap.entry(*c).or_default().push((p, -v));
            }
        }
        let h_vecs = h_cols
            .iter()
            .map(|&c| {
                let mut e = colmap.get(&c).cloned().unwrap_or_default();
                e.push((c, Scalar::one()));
                linalg::from_entries(e)
            })
            .collect();
        Ok(Split { rule: QRule::Echelon { pb, b_rows, qb, h_cols }, h_vecs, l_basis })
    }

    fn structured_split(&mut self, md: &[i64]) -> Result<Split> {
        let dim2 = self.bar.dim(2, md);
        let sl1 = self.bar.slice(1, md).cloned().unwrap_or_default();
        let sl2 = self.bar.slice(2, md).cloned().unwrap_or_default();
        // first-letter factorizations [w0|w']
        let mut xi = Vec::new();
        let mut xs: Vec<SparseVec> = Vec::new();
        for (i, t) in sl1.tensors.iter().enumerate() {
            let w = &self.bar.qb.words[t[0] as usize];
            if w.len() < 2 {
                continue;
            }
            let w0 = self.bar.qb.index[&crate::poly::Word(w.0[..1].to_vec())] as u32;
            let rest = self.bar.qb.index[&crate::poly::Word(w.0[1..].to_vec())] as u32;
            let j = sl2.index[&vec![w0, rest]];
            xi.push((i, j));
            xs.push(unit_vec(j));
        }
        let d3 = self.diff(3, md)?.clone();
        let d2 = self.diff(2, md)?.clone();
        let dim1 = sl1.len();
        let first_linear: Vec<usize> =
            (0..dim2).filter(|&j| self.bar.qb.degree[sl2.tensors[j][0] as usize] == 1).collect();
        let images: Vec<SparseVec> = first_linear.iter().map(|&j| d2[j].clone()).collect();
        let ker: Vec<SparseVec> = linalg::kernel(&images, dim1)
            .into_iter()
            .map(|v| linalg::from_entries(v.into_iter().map(|(k, c)| (first_linear[k], c)).collect()))
            .collect();
        let mut ei = Echelon::from_rows(dim2, d3.iter());
        let rank_i = ei.rank();
        let mut r = Vec::new();
        for v in ker {
            if ei.insert(&v).is_some() {
                r.push(v);
            }
        }
        let rank_d2 = linalg::rank(dim1, &d2);
        if rank_i + r.len() != dim2 - rank_d2 {
            return Err(Error::Unsupported(format!(
                "relations in multidegree {md:?} are not spanned by tensors starting with a generator"
            )));
        }
        // cocycles dual to the chosen R, vanishing on the factorizations
        let mut ez = Echelon::from_rows(dim2, d3.iter());
        let z = ez.annihilator();
        let eqs: Vec<&SparseVec> = xs.iter().chain(r.iter()).collect();
        if eqs.len() != z.len() {
            return Err(Error::Malformed(format!("degree-two splitting in {md:?} has inconsistent dimensions")));
        }
        let mut h_vecs = Vec::new();
        if !r.is_empty() {
            let m: Vec<Vec<Scalar>> = eqs.iter().map(|e| z.iter().map(|zj| linalg::dot(zj, e)).collect()).collect();
            let inv = linalg::invert(&m).ok_or_else(|| Error::Malformed("singular degree-two splitting".into()))?;
            for k in 0..r.len() {
                let col = xs.len() + k;
                let mut acc = Vec::new();
                for (j, zj) in z.iter().enumerate() {
                    let c = &inv[j][col];
                    if !c.is_zero() {
                        acc.extend(linalg::scale(zj, c));
                    }
                }
                h_vecs.push(linalg::from_entries(acc));
            }
        }
        let rx: Vec<SparseVec> = r.iter().chain(xs.iter()).cloned().collect();
        let l_basis = Echelon::from_rows(dim2, rx.iter()).annihilator();
        Ok(Split { rule: QRule::Structured { xi, r }, h_vecs, l_basis })
    }

    fn split(&self, c: &Cochain) -> Option<&Split> {
        if c.s < 0 {
            return None;
        }
        self.splits.get(&(c.s as usize, c.md.clone()))
    }

    /// The homotopy: zero on H and L, inverse coboundary on B.
    pub fn q(&self, c: &Cochain) -> Cochain {
        let mut out = Cochain { s: c.s - 1, md: c.md.clone(), v: Vec::new() };
        if c.v.is_empty() {
            return out;
        }
        let Some(sp) = self.split(c) else { return out };
        match &sp.rule {
            QRule::Echelon { pb, qb, .. } => {
                let mut acc = Vec::new();
                for (k, p) in pb.iter().enumerate() {
                    if let Some(x) = linalg::get(&c.v, *p) {
                        acc.extend(linalg::scale(&qb[k], x));
                    }
                }
                out.v = linalg::from_entries(acc);
            }
            QRule::Structured { xi, .. } => {
                out.v = linalg::from_entries(
                    xi.iter().filter_map(|(t, src)| linalg::get(&c.v, *src).map(|x| (*t, x.clone()))).collect(),
                );
            }
        }
        out
    }

    /// Basis elements whose representative is not a cocycle or does not project back to itself.
    pub fn inclusion_failures(&mut self) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for id in 0..self.basis.len() {
            let c = self.cochain_of(id);
            let s = c.s as usize;
            let closed = self.bar.slice(s + 1, &c.md).is_none()
                || self.coboundary(s + 1, &c.md.clone(), std::slice::from_ref(&c.v))?.remove(0).is_empty();
            if !closed || self.project(&c) != vec![(id, Scalar::one())] {
                bad.push(id);
            }
        }
        Ok(bad)
    }

    /// Slices where `∂Q + Q∂ = id - ιp` fails on some basis cochain.
    pub fn homotopy_failures(&mut self) -> Result<Vec<SliceKey>> {
        let keys: Vec<SliceKey> = self.bar.slices.keys().cloned().collect();
        let mut bad = Vec::new();
        for (s, md) in keys {
            let dim = self.bar.dim(s, &md);
            for i in 0..dim {
                let e = Cochain { s: s as i64, md: md.clone(), v: unit_vec(i) };
                let mut acc = Vec::new();
                let q = self.q(&e);
                if s >= 1 && !q.v.is_empty() {
                    acc.extend(self.coboundary(s, &md, &[q.v])?.remove(0));
                }
                if self.bar.slice(s + 1, &md).is_some() {
                    let d = self.coboundary(s + 1, &md, std::slice::from_ref(&e.v))?.remove(0);
                    acc.extend(self.q(&Cochain { s: s as i64 + 1, md: md.clone(), v: d }).v);
                }
                for (id, c) in self.project(&e) {
                    acc.extend(linalg::scale(&self.cochain_of(id).v, &c));
                }
                acc.push((i, -Scalar::one()));
                if !linalg::from_entries(acc).is_empty() {
                    bad.push((s, md.clone()));
                    break;
                }
            }
        }
        Ok(bad)
    }

    /// Projection to H as (global basis id, coefficient).
    pub fn project(&self, c: &Cochain) -> Vec<(usize, Scalar)> {
        if c.v.is_empty() || c.s < 0 {
            return Vec::new();
        }
        let key = (c.s as usize, c.md.clone());
        let Some(ids) = self.ids.get(&key) else { return Vec::new() };
        let sp = &self.splits[&key];
        let coords: Vec<Scalar> = match &sp.rule {
            QRule::Echelon { pb, b_rows, h_cols, .. } => {
                let mut b = Vec::new();
                for (k, p) in pb.iter().enumerate() {
                    if let Some(x) = linalg::get(&c.v, *p) {
                        b.extend(linalg::scale(&b_rows[k], x));
                    }
                }
                let b = linalg::from_entries(b);
                h_cols
                    .iter()
                    .map(|&hc| {
                        let v = linalg::get(&c.v, hc).cloned().unwrap_or_else(Scalar::zero);
                        let w = linalg::get(&b, hc).cloned().unwrap_or_else(Scalar::zero);
                        &v - &w
                    })
                    .collect()
            }
            QRule::Structured { r, .. } => r.iter().map(|rk| linalg::dot(rk, &c.v)).collect(),
        };
        ids.iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(i, c)| (*i, c)).collect()
    }

    /// Representative cochain of an H basis element.
    pub fn cochain_of(&self, id: usize) -> Cochain {
        let (key, j) = &self.slot[id];
        Cochain { s: key.0 as i64, md: key.1.clone(), v: self.splits[key].h_vecs[*j].clone() }
    }

    pub fn product(&self, x: &Cochain, y: &Cochain) -> Result<Cochain> {
        let s = x.s + y.s;
        let md = add_md(&x.md, &y.md);
        let mut out = Cochain { s, md, v: Vec::new() };
        if x.v.is_empty() || y.v.is_empty() {
            return Ok(out);
        }
        let (Some(sx), Some(sy)) = (self.bar.slice(x.s as usize, &x.md), self.bar.slice(y.s as usize, &y.md)) else {
            return Ok(out);
        };
        let tgt = self
            .bar
            .slice(s as usize, &out.md)
            .ok_or_else(|| Error::DegreeBound { bound: self.bar.n_max, requested: out.md[0] })?;
        let mut acc = Vec::with_capacity(x.v.len() * y.v.len());
        let mut buf: Vec<u32> = Vec::new();
        for (i, a) in &x.v {
            for (j, b) in &y.v {
                buf.clear();
                buf.extend_from_slice(&sx.tensors[*i]);
                buf.extend_from_slice(&sy.tensors[*j]);
                acc.push((tgt.index[&buf], a * b));
            }
        }
        out.v = linalg::from_entries(acc);
        Ok(out)
    }

    fn tuple_degree(&self, t: &[usize]) -> (i64, Vec<i64>) {
        let mut md = vec![0; self.basis[0].md.len()];
        let mut s = 0i64;
        for &i in t {
            s += self.basis[i].s as i64;
            md = add_md(&md, &self.basis[i].md);
        }
        (s, md)
    }

    /// `λ_n` on a tuple of H basis elements.
    pub fn lambda(&mut self, t: &[usize]) -> Result<Cochain> {
        let (s, md) = self.tuple_degree(t);
        let n = t.len() as i64;
        let mut out = Cochain { s: s + 2 - n, md, v: Vec::new() };
        if out.s < 0 || out.md[0] > self.bar.n_max {
            return Ok(out);
        }
        let mut acc = Vec::new();
        for k in 1..t.len() {
            let a = self.q_lambda(&t[..k])?;
            let b = self.q_lambda(&t[k..])?;
            let p = self.product(&a, &b)?;
            let pre: usize = t[..k].iter().map(|&i| self.basis[i].s).sum();
            let odd = (k + 1 + (t.len() - k + 1) * pre) % 2 == 1;
            let sign = if odd { -Scalar::one() } else { Scalar::one() };
            acc.extend(linalg::scale(&p.v, &sign));
        }
        out.v = linalg::from_entries(acc);
        Ok(out)
    }

    /// `Qλ_n`, with `Qλ_1 = -id`.
    pub fn q_lambda(&mut self, t: &[usize]) -> Result<Cochain> {
        if t.len() == 1 {
            let mut c = self.cochain_of(t[0]);
            c.v = linalg::scale(&c.v, &-Scalar::one());
            return Ok(c);
        }
        if let Some(c) = self.qlambda.get(t) {
            return Ok(c.clone());
        }
        let l = self.lambda(t)?;
        let c = self.q(&l);
        self.qlambda.insert(t.to_vec(), c.clone());
        Ok(c)
    }

    /// `m_n = p λ_n` on a tuple of basis elements.
    pub fn m(&mut self, t: &[usize]) -> Result<Vec<(usize, Scalar)>> {
        if let Some(v) = self.m_cache.get(t) {
            return Ok(v.clone());
        }
        let l = self.lambda(t)?;
        let v = self.project(&l);
        self.m_cache.insert(t.to_vec(), v.clone());
        Ok(v)
    }

    /// Tables of `m_n` for `2 <= n <= arity_max` on tuples with homological degrees at most `s_max`
    /// and total first-component degree at most the bar bound. The unit enters only arity two.
    pub fn structure(&mut self, s_max: usize, arity_max: usize) -> Result<AInfStructure> {
        let n_max = self.bar.n_max;
        let elems: Vec<usize> = (0..self.basis.len()).filter(|&i| self.basis[i].s <= s_max).collect();
        let mut tables = BTreeMap::new();
        let mut frontier: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 0)];
        for n in 1..=arity_max {
            let mut next = Vec::new();
            for (t, deg) in &frontier {
                for &e in &elems {
                    let d = deg + self.basis[e].md[0];
                    if d > n_max {
                        continue;
                    }
                    if e == self.unit && n > 2 {
                        continue;
                    }
                    let mut u = t.clone();
                    u.push(e);
                    next.push((u, d));
                }
            }
            if n >= 2 {
                for (t, _) in &next {
                    if n > 2 && t.contains(&self.unit) {
                        continue;
                    }
                    let v = self.m(t)?;
                    let v: Vec<(usize, Scalar)> = v.into_iter().filter(|(i, _)| self.basis[*i].s <= s_max).collect();
                    if !v.is_empty() {
                        tables.insert(t.clone(), v);
                    }
                }
            }
            if n >= 2 {
                next.retain(|(t, _)| !t.contains(&self.unit));
            }
            frontier = next;
        }
        let field = self.bar.qb.sys.field;
        Ok(AInfStructure {
            field,
            var: self.bar.qb.sys.var.clone(),
            basis: self.basis.iter().filter(|b| b.s <= s_max).cloned().collect(),
            unit: Some(self.unit),
            arity_max,
            adams_max: n_max,
            tables,
        })
    }
}

/// Builds the minimal model and tabulates `m_n` up to arity `n_max`.
pub fn merkulov_model(sys: &ReductionSystem, s_max: usize, n_max: i64, policy: SplittingPolicy) -> Result<AInfStructure> {
    let mut m = Merkulov::new(sys, n_max, policy)?;
    m.structure(s_max, n_max as usize)
}
