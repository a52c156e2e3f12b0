//! Words and noncommutative polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A monomial: a sequence of generator indices. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }
    pub fn letter(i: usize) -> Word {
        Word(vec![i as u8])
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
    /// Multidegree as the sum of generator degrees.
    pub fn multidegree(&self, degs: &[Vec<i64>]) -> Vec<i64> {
        let k = degs.first().map_or(1, |d| d.len());
        let mut out = vec![0; k];
        for &g in &self.0 {
            for (o, d) in out.iter_mut().zip(&degs[g as usize]) {
                *o += d;
            }
        }
        out
    }
    pub fn degree(&self, degs: &[Vec<i64>]) -> i64 {
        self.0.iter().map(|&g| degs[g as usize][0]).sum()
    }
    /// Positions where `pat` occurs as a subword.
    pub fn occurrences(&self, pat: &[u8]) -> Vec<usize> {
        if pat.len() > self.0.len() {
            return Vec::new();
        }
        (0..=self.0.len() - pat.len())
            .filter(|&i| &self.0[i..i + pat.len()] == pat)
            .collect()
    }
    pub fn contains(&self, pat: &[u8]) -> bool {
        pat.len() <= self.0.len() && self.0.windows(pat.len().max(1)).any(|w| w == pat)
    }

    /// Renders with run-length powers, e.g. `z1^2*z2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == g {
                j += 1;
            }
            let name = &names[g as usize];
            if j - i == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{}^{}", name, j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Word {
        Word(s.to_vec())
    }
}

/// A finite linear combination of words with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly { terms: BTreeMap::new() }
    }
    pub fn one() -> NCPoly {
        NCPoly::monomial(Word::empty(), Scalar::one())
    }
    pub fn monomial(w: Word, c: Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }
    pub fn constant(c: Scalar) -> NCPoly {
        NCPoly::monomial(Word::empty(), c)
    }
    pub fn generator(i: usize) -> NCPoly {
        NCPoly::monomial(Word::letter(i), Scalar::one())
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }
    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }
    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }
    pub fn from_terms(it: impl IntoIterator<Item = (Word, Scalar)>) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }
    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), -c);
        }
        r
    }
    pub fn scale(&self, s: &Scalar) -> NCPoly {
        if s.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect() }
    }
    pub fn neg(&self) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    /// Free-algebra product. Errors when coefficients live in incompatible fields.
    pub fn try_mul(&self, o: &NCPoly) -> Result<NCPoly> {
        let mut r = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                if !c1.compatible(c2) {
                    return Err(Error::FieldMismatch);
                }
                r.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(r)
    }
    /// Free-algebra product; panics on mixed fields.
    pub fn mul(&self, o: &NCPoly) -> NCPoly {
        self.try_mul(o).expect("mixed fields in product")
    }
    pub fn pow(&self, e: u32) -> NCPoly {
        let mut r = NCPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Set of multidegrees of the terms.
    pub fn multidegrees(&self, degs: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self.terms.keys().map(|w| w.multidegree(degs)).collect();
        v.sort();
        v.dedup();
        v
    }
    /// The multidegree when homogeneous.
    pub fn homogeneous_degree(&self, degs: &[Vec<i64>]) -> Option<Vec<i64>> {
        let v = self.multidegrees(degs);
        if v.len() == 1 {
            v.into_iter().next()
        } else {
            None
        }
    }
    /// Component of the given multidegree.
    pub fn component(&self, degs: &[Vec<i64>], d: &[i64]) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.multidegree(degs) == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renders terms in increasing deg-lex order, e.g. `z1*z2^2 - 4*z2^2*z1`.
    pub fn render(&self, names: &[String], var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ws: Vec<(&Word, &Scalar)> = self.terms.iter().collect();
        ws.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        let mut out = String::new();
        for (k, (w, c)) in ws.into_iter().enumerate() {
            let zero = num_rational::BigRational::from_integer(0.into());
            let neg = if c.is_rational() { c.re() < &zero } else { *c.re() == zero && c.im() < &zero };
            let (neg, mag) = if neg {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let cs = mag.to_text(var);
            let cs = if mag.is_compound() { format!("({cs})") } else { cs };
            if w.is_empty() {
                out.push_str(&cs);
            } else if mag.is_one() {
                out.push_str(&w.render(names));
            } else {
                out.push_str(&format!("{}*{}", cs, w.render(names)));
            }
        }
        out
    }
}

pub struct Rendered<'a> {
    pub poly: &'a NCPoly,
    pub names: &'a [String],
    pub var: &'a str,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.render(self.names, self.var))
    }
}
