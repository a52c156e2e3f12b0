//! Degree-bounded diamond-lemma completion and everything built on normal forms.

mod anick;
mod basis;
mod complex;
mod hom;
mod normal;

pub use anick::{anick_chains, AnickChains};
pub use basis::QuotientBasis;
pub use complex::{parse_complex, verify_complex, ComplexReport, FreeComplex, FreeModule};
pub use hom::{parse_images, verify_homomorphism, HomReport};
pub use normal::{is_normal, search_normal, NormalFamily, NormalSearch, NormalVerdict};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{NCPoly, Word};
use crate::presentation::Presentation;
use crate::scalar::{Field, Scalar};

/// Degree-lexicographic order: weighted first-component degree, then the
/// lexicographic order given by `rank` (rank 0 is the smallest letter).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub weights: Vec<i64>,
    pub rank: Vec<u8>,
}

impl MonomialOrder {
    pub fn new(weights: Vec<i64>, precedence: Option<&[usize]>) -> MonomialOrder {
        let n = weights.len();
        let mut rank = vec![0u8; n];
        match precedence {
            Some(p) => {
                for (r, &g) in p.iter().enumerate() {
                    rank[g] = r as u8;
                }
            }
            None => {
                for (g, r) in rank.iter_mut().enumerate() {
                    *r = g as u8;
                }
            }
        }
        MonomialOrder { weights, rank }
    }

    pub fn weight(&self, w: &Word) -> i64 {
        w.0.iter().map(|&g| self.weights[g as usize]).sum()
    }

    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| {
            for (x, y) in a.0.iter().zip(&b.0) {
                let c = self.rank[*x as usize].cmp(&self.rank[*y as usize]);
                if c != Ordering::Equal {
                    return c;
                }
            }
            a.len().cmp(&b.len())
        })
    }

    fn key(&self, w: &Word) -> (i64, Vec<u8>) {
        (self.weight(w), w.0.iter().map(|&g| self.rank[g as usize]).collect())
    }
}

/// `lead -> tail` with the lead coefficient normalised to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lead: Word,
    pub tail: NCPoly,
    pub degree: Vec<i64>,
}

impl RewriteRule {
    /// The rule as the polynomial `lead - tail`.
    pub fn as_poly(&self) -> NCPoly {
        NCPoly::monomial(self.lead.clone(), Scalar::one()).sub(&self.tail)
    }
}

/// Where a rule came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Relation(usize),
    Overlap { word: Word, left: usize, right: usize },
}

#[derive(Clone, Debug)]
pub struct LogEntry {
    pub rule: usize,
    pub provenance: Provenance,
}

/// An overlap or inclusion ambiguity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub word: Word,
    pub left: usize,
    pub right: usize,
    /// Position where the right rule's lead starts.
    pub offset: usize,
}

#[derive(Clone, Debug)]
pub struct ReductionSystem {
    pub names: Vec<String>,
    pub degrees: Vec<Vec<i64>>,
    pub field: Field,
    pub var: String,
    pub order: MonomialOrder,
    pub rules: Vec<RewriteRule>,
    pub complete_up_to: i64,
    pub log: Vec<LogEntry>,
    lead_index: HashMap<Vec<u8>, usize>,
    lead_lens: Vec<usize>,
}

impl ReductionSystem {
    pub fn empty(pres: &Presentation, bound: i64) -> ReductionSystem {
        let degrees = pres.degrees();
        let weights = degrees.iter().map(|d| d[0]).collect();
        ReductionSystem {
            names: pres.names(),
            degrees,
            field: pres.field,
            var: pres.var.clone(),
            order: MonomialOrder::new(weights, pres.order.as_deref()),
            rules: Vec::new(),
            complete_up_to: bound,
            log: Vec::new(),
            lead_index: HashMap::new(),
            lead_lens: Vec::new(),
        }
    }

    /// A system whose rules are the given monomials rewritten to zero.
    pub fn monomial(pres: &Presentation, leads: &[Word], bound: i64) -> ReductionSystem {
        let mut s = ReductionSystem::empty(pres, bound);
        for l in leads {
            let degree = l.multidegree(&s.degrees);
            s.push_rule(RewriteRule { lead: l.clone(), tail: NCPoly::zero(), degree });
        }
        s
    }

    fn push_rule(&mut self, r: RewriteRule) -> usize {
        let idx = self.rules.len();
        self.lead_index.insert(r.lead.0.clone(), idx);
        let l = r.lead.len();
        if !self.lead_lens.contains(&l) {
            self.lead_lens.push(l);
            self.lead_lens.sort_unstable();
        }
        self.rules.push(r);
        idx
    }

    pub fn degree(&self, w: &Word) -> i64 {
        self.order.weight(w)
    }

    /// Leftmost rule occurrence in a word: (position, rule index).
    pub fn find_lead(&self, w: &[u8]) -> Option<(usize, usize)> {
        for i in 0..w.len() {
            for &l in &self.lead_lens {
                if i + l > w.len() {
                    break;
                }
                if let Some(&r) = self.lead_index.get(&w[i..i + l]) {
                    return Some((i, r));
                }
            }
        }
        None
    }

    /// True when some lead is a suffix of `w`.
    fn has_lead_suffix(&self, w: &[u8]) -> bool {
        self.lead_lens.iter().any(|&l| l <= w.len() && self.lead_index.contains_key(&w[w.len() - l..]))
    }

    pub fn is_standard(&self, w: &Word) -> bool {
        self.find_lead(&w.0).is_none()
    }

    fn check_bound(&self, p: &NCPoly) -> Result<()> {
        for (w, _) in p.terms() {
            let d = self.degree(w);
            if d > self.complete_up_to {
                return Err(Error::DegreeBound { bound: self.complete_up_to, requested: d });
            }
        }
        Ok(())
    }

    /// Normal form; errors when a term lies above the completion bound.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        self.check_bound(p)?;
        Ok(self.reduce_unchecked(p))
    }

    /// Reduction by the current rules regardless of the completion bound.
    pub fn reduce_unchecked(&self, p: &NCPoly) -> NCPoly {
        let mut work: BTreeMap<(i64, Vec<u8>), (Word, Scalar)> = BTreeMap::new();
        let add = |work: &mut BTreeMap<(i64, Vec<u8>), (Word, Scalar)>, w: Word, c: Scalar| {
            let k = self.order.key(&w);
            match work.entry(k) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert((w, c));
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = &e.get().1 + &c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        e.get_mut().1 = s;
                    }
                }
            }
        };
        for (w, c) in p.terms() {
            add(&mut work, w.clone(), c.clone());
        }
        let mut out = NCPoly::zero();
        while let Some((_, (w, c))) = work.pop_last() {
            match self.find_lead(&w.0) {
                None => out.add_term(w, c),
                Some((pos, r)) => {
                    let rule = &self.rules[r];
                    let l = rule.lead.len();
                    for (t, tc) in rule.tail.terms() {
                        let mut nw = Vec::with_capacity(w.len() - l + t.len());
                        nw.extend_from_slice(&w.0[..pos]);
                        nw.extend_from_slice(&t.0);
                        nw.extend_from_slice(&w.0[pos + l..]);
                        add(&mut work, Word(nw), &c * tc);
                    }
                }
            }
        }
        out
    }

    /// Rewrites one occurrence: `w` with the rule `r` applied at `pos`.
    pub fn apply_at(&self, w: &Word, r: usize, pos: usize) -> NCPoly {
        let rule = &self.rules[r];
        let l = rule.lead.len();
        debug_assert_eq!(&w.0[pos..pos + l], &rule.lead.0[..]);
        NCPoly::from_terms(rule.tail.terms().map(|(t, c)| {
            let mut nw = w.0[..pos].to_vec();
            nw.extend_from_slice(&t.0);
            nw.extend_from_slice(&w.0[pos + l..]);
            (Word(nw), c.clone())
        }))
    }

    /// All overlap and inclusion ambiguities of weighted degree at most `n`, deduplicated by
    /// (word, rule pair, offset) and sorted by degree then word order.
    pub fn overlap_ambiguities(&self, n: i64) -> Vec<Ambiguity> {
        let mut out = Vec::new();
        for (a, ra) in self.rules.iter().enumerate() {
            for (b, rb) in self.rules.iter().enumerate() {
                let la = &ra.lead.0;
                let lb = &rb.lead.0;
                // proper overlaps: suffix of a equals prefix of b
                for k in 1..la.len().min(lb.len()) {
                    if la[la.len() - k..] == lb[..k] {
                        let w = Word([&la[..], &lb[k..]].concat());
                        if self.degree(&w) <= n {
                            out.push(Ambiguity { word: w, left: a, right: b, offset: la.len() - k });
                        }
                    }
                }
                // inclusions: b inside a
                if a != b && lb.len() <= la.len() {
                    for pos in ra.lead.occurrences(lb) {
                        if self.degree(&ra.lead) <= n {
                            out.push(Ambiguity { word: ra.lead.clone(), left: a, right: b, offset: pos });
                        }
                    }
                }
            }
        }
        out.sort_by(|x, y| self.order.cmp(&x.word, &y.word).then((x.left, x.right, x.offset).cmp(&(y.left, y.right, y.offset))));
        out.dedup();
        out
    }

    /// Difference of the two one-step reductions of an ambiguity, in normal form.
    pub fn resolve(&self, amb: &Ambiguity) -> NCPoly {
        let p1 = self.apply_at(&amb.word, amb.left, 0);
        let p2 = self.apply_at(&amb.word, amb.right, amb.offset);
        self.reduce_unchecked(&p1.sub(&p2))
    }

    /// Standard monomials per weighted degree `0..=n`, each list sorted increasingly.
    pub fn standard_by_degree(&self, n: i64) -> Result<Vec<Vec<Word>>> {
        if n > self.complete_up_to {
            return Err(Error::DegreeBound { bound: self.complete_up_to, requested: n });
        }
        Ok(self.standard_words_unchecked(n))
    }

    fn standard_words_unchecked(&self, n: i64) -> Vec<Vec<Word>> {
        let n = n.max(0) as usize;
        let mut by: Vec<Vec<Word>> = vec![Vec::new(); n + 1];
        by[0].push(Word::empty());
        for d in 1..=n {
            let mut cur = Vec::new();
            for (g, &wt) in self.order.weights.iter().enumerate() {
                let wt = wt as usize;
                if wt > d {
                    continue;
                }
                for w in &by[d - wt] {
                    let mut nw = w.0.clone();
                    nw.push(g as u8);
                    if !self.has_lead_suffix(&nw) {
                        cur.push(Word(nw));
                    }
                }
            }
            cur.sort_by(|a, b| self.order.cmp(a, b));
            by[d] = cur;
        }
        by
    }

    /// Standard monomials of a given multidegree (or first-component degree if `d.len()==1`).
    pub fn standard_monomials(&self, d: &[i64]) -> Result<Vec<Word>> {
        let all = self.standard_by_degree(d[0])?;
        let k = self.degrees.first().map_or(1, |x| x.len());
        Ok(all[d[0].max(0) as usize]
            .iter()
            .filter(|w| d.len() == 1 || (d.len() == k && w.multidegree(&self.degrees) == d))
            .cloned()
            .collect())
    }

    /// Number of standard monomials per degree `0..=n`.
    pub fn hilbert_coeffs(&self, n: i64) -> Result<Vec<usize>> {
        Ok(self.standard_by_degree(n)?.iter().map(|v| v.len()).collect())
    }

    pub fn show(&self, p: &NCPoly) -> String {
        p.render(&self.names, &self.var)
    }
    pub fn show_word(&self, w: &Word) -> String {
        w.render(&self.names)
    }
    pub fn show_rule(&self, r: &RewriteRule) -> String {
        format!("{} -> {}", self.show_word(&r.lead), self.show(&r.tail))
    }

    pub fn is_monomial(&self) -> bool {
        self.rules.iter().all(|r| r.tail.is_zero())
    }
}

/// Graded completion up to weighted degree `n`.
pub fn complete(pres: &Presentation, n: i64) -> Result<ReductionSystem> {
    let mut sys = ReductionSystem::empty(pres, n);
    for d in 1..=n {
        let mut cands: Vec<(NCPoly, Provenance)> = Vec::new();
        for (i, r) in pres.relations.iter().enumerate() {
            if r.degree[0] == d {
                cands.push((r.poly.clone(), Provenance::Relation(i)));
            }
        }
        for amb in sys.overlap_ambiguities(d) {
            if sys.degree(&amb.word) != d {
                continue;
            }
            let diff = sys.resolve(&amb);
            cands.push((diff, Provenance::Overlap { word: amb.word.clone(), left: amb.left, right: amb.right }));
        }
        // normal forms against rules of lower degree
        let mut reduced: Vec<(NCPoly, Provenance)> = Vec::new();
        for (p, prov) in cands {
            let r = sys.reduce_unchecked(&p);
            if !r.is_zero() {
                reduced.push((r, prov));
            }
        }
        if reduced.is_empty() {
            continue;
        }
        // linear algebra over the words that occur, largest word first
        let mut words: Vec<Word> = Vec::new();
        for (p, _) in &reduced {
            for (w, _) in p.terms() {
                words.push(w.clone());
            }
        }
        words.sort_by(|a, b| sys.order.cmp(b, a));
        words.dedup();
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut ech = Echelon::new(words.len());
        let mut prov_of_row: Vec<Provenance> = Vec::new();
        for (p, prov) in &reduced {
            let v: SparseVec = crate::linalg::from_entries(p.terms().map(|(w, c)| (index[w], c.clone())).collect());
            if ech.insert(&v).is_some() {
                prov_of_row.push(prov.clone());
            }
        }
        ech.make_reduced();
        let mut new_rules: Vec<(RewriteRule, Provenance)> = Vec::new();
        for (row, prov) in ech.rows.iter().zip(prov_of_row) {
            let lead = words[row[0].0].clone();
            let tail = NCPoly::from_terms(row.iter().skip(1).map(|(c, v)| (words[*c].clone(), -v)));
            let degree = lead.multidegree(&sys.degrees);
            new_rules.push((RewriteRule { lead, tail, degree }, prov));
        }
        new_rules.sort_by(|a, b| sys.order.cmp(&a.0.lead, &b.0.lead));
        for (rule, prov) in new_rules {
            let idx = sys.push_rule(rule);
            sys.log.push(LogEntry { rule: idx, provenance: prov });
        }
    }
    Ok(sys)
}
