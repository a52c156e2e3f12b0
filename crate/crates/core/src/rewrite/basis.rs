//! Standard-monomial bases of a quotient up to a degree bound.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::poly::{NCPoly, Word};
use crate::scalar::Scalar;

use super::ReductionSystem;

/// Standard monomials of degree `0..=bound`, with global ids and lookup by multidegree.
#[derive(Debug)]
pub struct QuotientBasis<'a> {
    pub sys: &'a ReductionSystem,
    pub bound: i64,
    pub words: Vec<Word>,
    pub degree: Vec<i64>,
    pub multideg: Vec<Vec<i64>>,
    pub index: HashMap<Word, usize>,
    /// Global ids per first-component degree.
    pub by_degree: Vec<Vec<usize>>,
    /// Global ids per multidegree.
    pub by_multideg: BTreeMap<Vec<i64>, Vec<usize>>,
    /// Position of each id inside its multidegree list.
    pub local: Vec<usize>,
}

impl<'a> QuotientBasis<'a> {
    pub fn new(sys: &'a ReductionSystem, bound: i64) -> Result<QuotientBasis<'a>> {
        let by = sys.standard_by_degree(bound)?;
        let mut qb = QuotientBasis {
            sys,
            bound,
            words: Vec::new(),
            degree: Vec::new(),
            multideg: Vec::new(),
            index: HashMap::new(),
            by_degree: Vec::new(),
            by_multideg: BTreeMap::new(),
            local: Vec::new(),
        };
        for (d, ws) in by.into_iter().enumerate() {
            let mut ids = Vec::new();
            for w in ws {
                let id = qb.words.len();
                let md = w.multidegree(&sys.degrees);
                let slot = qb.by_multideg.entry(md.clone()).or_default();
                qb.local.push(slot.len());
                slot.push(id);
                qb.index.insert(w.clone(), id);
                qb.words.push(w);
                qb.degree.push(d as i64);
                qb.multideg.push(md);
                ids.push(id);
            }
            qb.by_degree.push(ids);
        }
        Ok(qb)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn ids_of_multideg(&self, md: &[i64]) -> &[usize] {
        self.by_multideg.get(md).map_or(&[], |v| v.as_slice())
    }

    pub fn dim_multideg(&self, md: &[i64]) -> usize {
        self.ids_of_multideg(md).len()
    }

    /// Normal form as (global id, coefficient) pairs.
    pub fn nf_ids(&self, p: &NCPoly) -> Result<Vec<(usize, Scalar)>> {
        let nf = self.sys.normal_form(p)?;
        nf.terms()
            .map(|(w, c)| {
                self.index
                    .get(w)
                    .map(|&i| (i, c.clone()))
                    .ok_or(Error::DegreeBound { bound: self.bound, requested: self.sys.degree(w) })
            })
            .collect()
    }

    /// Coordinates of a homogeneous element in the basis of the multidegree `md`.
    pub fn coords(&self, p: &NCPoly, md: &[i64]) -> Result<SparseVec> {
        let mut out = Vec::new();
        for (i, c) in self.nf_ids(p)? {
            if self.multideg[i] != md {
                return Err(Error::Invalid("element is not homogeneous of the expected multidegree".into()));
            }
            out.push((self.local[i], c));
        }
        Ok(crate::linalg::from_entries(out))
    }

    /// Product of two basis words, in normal form.
    pub fn product(&self, u: usize, v: usize) -> Result<Vec<(usize, Scalar)>> {
        let w = self.words[u].concat(&self.words[v]);
        self.nf_ids(&NCPoly::monomial(w, Scalar::one()))
    }

    pub fn poly_of(&self, id: usize) -> NCPoly {
        NCPoly::monomial(self.words[id].clone(), Scalar::one())
    }
}
