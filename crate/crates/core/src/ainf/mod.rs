//! A-infinity structures on Ext algebras: the minimal model, its tables, and checks on them.

pub mod merkulov;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

pub use merkulov::{merkulov_model, Cochain, Merkulov, SplittingPolicy};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::{NCPoly, Word};
use crate::presentation::{parse_field, Presentation};
use crate::rewrite::MonomialOrder;
use crate::scalar::{parse_scalar, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub name: String,
    /// Homological degree.
    pub s: usize,
    /// Internal multidegree; the first component is the Adams degree.
    pub md: Vec<i64>,
}

/// Structure maps `m_n` on a finite basis. Only nonzero outputs are stored; a tuple inside the
/// bounds without an entry maps to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfStructure {
    pub field: Field,
    pub var: String,
    pub basis: Vec<BasisElem>,
    pub unit: Option<usize>,
    pub arity_max: usize,
    pub adams_max: i64,
    pub tables: BTreeMap<Vec<usize>, Vec<(usize, Scalar)>>,
}

fn add_md(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

impl AInfStructure {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn resolve_names(&self, names: &[&str]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| self.index_of(n).ok_or_else(|| Error::Invalid(format!("no basis element named `{n}`"))))
            .collect()
    }

    fn zero_md(&self) -> Vec<i64> {
        vec![0; self.basis.first().map_or(1, |b| b.md.len())]
    }

    /// `(sum of s, sum of multidegrees)` of a tuple.
    pub fn degree(&self, t: &[usize]) -> (i64, Vec<i64>) {
        let mut md = self.zero_md();
        let mut s = 0;
        for &i in t {
            s += self.basis[i].s as i64;
            md = add_md(&md, &self.basis[i].md);
        }
        (s, md)
    }

    /// Dimensions per bidegree `(s, adams)`.
    pub fn dims(&self) -> BTreeMap<(usize, i64), usize> {
        let mut d = BTreeMap::new();
        for b in &self.basis {
            *d.entry((b.s, b.md[0])).or_insert(0) += 1;
        }
        d
    }

    fn show_tuple(&self, t: &[usize]) -> String {
        t.iter().map(|&i| self.basis[i].name.as_str()).collect::<Vec<_>>().join(",")
    }

    /// `m_n` on a tuple of basis indices.
    pub fn m(&self, t: &[usize]) -> Result<Vec<(usize, Scalar)>> {
        if t.len() < 2 {
            return Err(Error::Invalid("structure maps start at arity 2".into()));
        }
        if let Some(&bad) = t.iter().find(|&&i| i >= self.basis.len()) {
            return Err(Error::Invalid(format!("basis index {bad} out of range")));
        }
        let (_, md) = self.degree(t);
        if t.len() > self.arity_max || md[0] > self.adams_max {
            return Err(Error::MissingEntry(format!(
                "m{}({}) lies outside the tabulated range (arity {}, adams {})",
                t.len(),
                self.show_tuple(t),
                self.arity_max,
                self.adams_max
            )));
        }
        if let Some(u) = self.unit {
            if t.len() > 2 && t.contains(&u) {
                return Ok(Vec::new());
            }
        }
        Ok(self.tables.get(t).cloned().unwrap_or_default())
    }

    /// Coefficient of `target` in `m_n(t)`.
    pub fn coeff(&self, t: &[usize], target: usize) -> Result<Scalar> {
        Ok(self.m(t)?.into_iter().find(|(i, _)| *i == target).map_or_else(Scalar::zero, |(_, c)| c))
    }

    /// Replaces basis element `id` by `c` times itself.
    pub fn rescale(&mut self, id: usize, c: &Scalar) {
        let ci = c.inv();
        for (t, out) in self.tables.iter_mut() {
            let k = t.iter().filter(|&&i| i == id).count() as i64;
            let f = c.pow(k);
            for (i, v) in out.iter_mut() {
                *v = &*v * &f;
                if *i == id {
                    *v = &*v * &ci;
                }
            }
        }
    }

    /// Checks that every output has the bidegree `(sum s + 2 - n, sum md)`.
    pub fn check_degrees(&self) -> Result<()> {
        for (t, out) in &self.tables {
            let (s, md) = self.degree(t);
            for (i, _) in out {
                let b = &self.basis[*i];
                if b.s as i64 != s + 2 - t.len() as i64 || b.md != md {
                    return Err(Error::Malformed(format!(
                        "m{}({}) has a term {} of the wrong degree",
                        t.len(),
                        self.show_tuple(t),
                        b.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Line-oriented text form, read back by [`AInfStructure::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "field {}", self.field.describe(&self.var));
        if let Some(u) = self.unit {
            let _ = writeln!(out, "unit {}", self.basis[u].name);
        }
        for b in &self.basis {
            let md: Vec<String> = b.md.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{} {} ({})", b.name, b.s, md.join(","));
        }
        let _ = writeln!(out, "bound m{} adams {}", self.arity_max, self.adams_max);
        for (t, v) in &self.tables {
            let args: Vec<&str> = t.iter().map(|&i| self.basis[i].name.as_str()).collect();
            let _ = writeln!(out, "m{} {} -> {}", t.len(), args.join(" "), self.show_vec(v));
        }
        out
    }

    pub fn show_vec(&self, v: &[(usize, Scalar)]) -> String {
        if v.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = v
            .iter()
            .map(|(i, c)| {
                let ct = c.to_text(&self.var);
                if c.is_compound() {
                    format!("({ct})*{}", self.basis[*i].name)
                } else {
                    format!("{ct}*{}", self.basis[*i].name)
                }
            })
            .collect();
        terms.join(" + ")
    }

    pub fn parse(text: &str) -> Result<AInfStructure> {
        let mut field = None;
        let mut unit_name = None;
        let mut basis: Vec<BasisElem> = Vec::new();
        let mut bound = None;
        let mut raw_entries = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let perr = |msg: String| Error::Parse { line, col: 1, msg };
            let l = raw.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            if let Some(rest) = l.strip_prefix("field ") {
                field = Some(parse_field(rest, line, 7)?);
            } else if let Some(rest) = l.strip_prefix("unit ") {
                unit_name = Some(rest.trim().to_string());
            } else if let Some(rest) = l.strip_prefix("bound ") {
                let w: Vec<&str> = rest.split_whitespace().collect();
                let ok = match w.as_slice() {
                    [m, "adams", a] => m.strip_prefix('m').and_then(|n| n.parse().ok()).zip(a.parse().ok()),
                    _ => None,
                };
                bound = Some(ok.ok_or_else(|| perr("expected `bound mN adams A`".into()))?);
            } else if l.contains("->") {
                raw_entries.push((line, l.to_string()));
            } else {
                let (head, md) = l.split_once('(').ok_or_else(|| perr(format!("unrecognised line `{l}`")))?;
                let w: Vec<&str> = head.split_whitespace().collect();
                let [name, s] = w.as_slice() else {
                    return Err(perr("expected `name s (d1,..)`".into()));
                };
                let s: usize = s.parse().map_err(|_| perr(format!("bad homological degree `{s}`")))?;
                let md = md.trim().strip_suffix(')').ok_or_else(|| perr("missing `)`".into()))?;
                let md: Vec<i64> = md
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| perr(format!("bad degree `{x}`"))))
                    .collect::<Result<_>>()?;
                if basis.iter().any(|b| b.name == *name) {
                    return Err(perr(format!("duplicate basis element `{name}`")));
                }
                if basis.first().is_some_and(|b| b.md.len() != md.len()) {
                    return Err(perr("multidegrees of different lengths".into()));
                }
                basis.push(BasisElem { name: name.to_string(), s, md });
            }
        }
        let (field, var) = field.ok_or_else(|| Error::Parse { line: 0, col: 0, msg: "missing `field` line".into() })?;
        let (arity_max, adams_max) =
            bound.ok_or_else(|| Error::Parse { line: 0, col: 0, msg: "missing `bound` line".into() })?;
        let mut st = AInfStructure { field, var, basis, unit: None, arity_max, adams_max, tables: BTreeMap::new() };
        if let Some(u) = unit_name {
            st.unit = Some(st.index_of(&u).ok_or_else(|| Error::Parse { line: 0, col: 0, msg: format!("unknown unit `{u}`") })?);
        }
        for (line, l) in raw_entries {
            let perr = |msg: String| Error::Parse { line, col: 1, msg };
            let (lhs, rhs) = l.split_once("->").expect("checked above");
            let w: Vec<&str> = lhs.split_whitespace().collect();
            let n: usize = w
                .first()
                .and_then(|m| m.strip_prefix('m'))
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| perr("expected `mN x y .. -> ..`".into()))?;
            if w.len() != n + 1 {
                return Err(perr(format!("m{n} takes {n} arguments")));
            }
            let t = st.resolve_names(&w[1..]).map_err(|e| perr(e.to_string()))?;
            let v = st.parse_vec(rhs).map_err(|e| perr(e.to_string()))?;
            if !v.is_empty() {
                st.tables.insert(t, v);
            }
        }
        st.check_degrees()?;
        Ok(st)
    }

    /// Parses `c*name + c*name ..` with compound coefficients in parentheses.
    fn parse_vec(&self, text: &str) -> Result<Vec<(usize, Scalar)>> {
        let t = text.trim();
        if t == "0" {
            return Ok(Vec::new());
        }
        let mut terms = Vec::new();
        let mut depth = 0;
        let mut cur = String::new();
        for ch in t.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if ch == '+' && depth == 0 && !cur.trim().is_empty() && !cur.trim_end().ends_with('*') {
                terms.push(std::mem::take(&mut cur));
            } else {
                cur.push(ch);
            }
        }
        terms.push(cur);
        let mut e = Vec::new();
        for term in terms {
            let term = term.trim();
            let (c, name) = term.rsplit_once('*').ok_or_else(|| Error::Invalid(format!("expected `coeff*name`, got `{term}`")))?;
            let c = c.trim();
            let c = c.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(c);
            let id = self.index_of(name.trim()).ok_or_else(|| Error::Invalid(format!("no basis element named `{}`", name.trim())))?;
            e.push((id, parse_scalar(c, self.field, &self.var)?));
        }
        Ok(linalg::from_entries(e))
    }

    fn non_unit(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| Some(i) != self.unit).collect()
    }

    /// All tuples of non-unit elements of arity `n` within the Adams bound.
    pub fn tuples(&self, n: usize) -> Vec<Vec<usize>> {
        let elems = self.non_unit();
        let mut out = vec![(Vec::new(), 0i64)];
        for _ in 0..n {
            let mut next = Vec::new();
            for (t, a) in &out {
                for &e in &elems {
                    let b = a + self.basis[e].md[0];
                    if b <= self.adams_max {
                        let mut u = t.clone();
                        u.push(e);
                        next.push((u, b));
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(|(t, _)| t).collect()
    }
}

/// Stasheff identity residuals at one arity.
#[allow(clippy::type_complexity)]
#[derive(Clone, Debug, PartialEq)]
pub struct StasheffReport {
    pub arity: usize,
    pub checked: usize,
    /// Input tuple and the nonzero residual it produces.
    pub failures: Vec<(Vec<usize>, Vec<(usize, Scalar)>)>,
}

impl StasheffReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `sum (-1)^(r+st) m_(r+1+t)(1^r ⊗ m_s ⊗ 1^t)` on every non-unit tuple of arity `n`,
/// with the extra factor `(-1)^(s * (|x_1|+..+|x_r|))` when `koszul` is set.
pub fn check_stasheff(st: &AInfStructure, n: usize, koszul: bool) -> Result<StasheffReport> {
    if n < 3 {
        return Err(Error::Invalid("the identities start at arity 3".into()));
    }
    if n > st.arity_max + 1 {
        return Err(Error::MissingEntry(format!("arity {n} needs tables up to m{}", n - 1)));
    }
    let mut rep = StasheffReport { arity: n, checked: 0, failures: Vec::new() };
    for t in st.tuples(n) {
        rep.checked += 1;
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for s in 2..n {
            for r in 0..=n - s {
                let tt = n - s - r;
                let inner = st.m(&t[r..r + s])?;
                if inner.is_empty() {
                    continue;
                }
                let mut odd = (r + s * tt) % 2 == 1;
                if koszul {
                    let pre: usize = t[..r].iter().map(|&i| st.basis[i].s).sum();
                    odd ^= (s * pre) % 2 == 1;
                }
                let sg = sign(odd);
                let mut outer = t[..r].to_vec();
                outer.push(0);
                outer.extend_from_slice(&t[r + s..]);
                for (k, c) in inner {
                    outer[r] = k;
                    let f = &sg * &c;
                    for (j, d) in st.m(&outer)? {
                        acc.push((j, &f * &d));
                    }
                }
            }
        }
        let acc = linalg::from_entries(acc);
        if !acc.is_empty() {
            rep.failures.push((t, acc));
        }
    }
    Ok(rep)
}

/// Strict unit: `m2(1,x) = x = m2(x,1)` for every basis element within the bounds.
pub fn check_unit(st: &AInfStructure) -> Result<bool> {
    let Some(u) = st.unit else { return Ok(false) };
    for x in 0..st.basis.len() {
        if st.basis[x].md[0] > st.adams_max {
            continue;
        }
        let want = vec![(x, Scalar::one())];
        if st.m(&[u, x])? != want || st.m(&[x, u])? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when degree reasons alone force `m_n = 0`: no tuple of nonzero non-unit bidegrees lands in a
/// nonzero bidegree `(sum s + 2 - n, sum adams)`.
pub fn forced_vanishing(dims: &BTreeMap<(usize, i64), usize>, n: usize) -> bool {
    let degs: Vec<(usize, i64)> = dims.iter().filter(|(k, d)| **d > 0 && **k != (0, 0)).map(|(k, _)| *k).collect();
    let mut sums: BTreeSet<(usize, i64)> = [(0, 0)].into_iter().collect();
    for _ in 0..n {
        sums = sums.iter().flat_map(|(s, a)| degs.iter().map(move |(t, b)| (s + t, a + b))).collect();
    }
    sums.into_iter().all(|(s, a)| {
        let out = s as i64 + 2 - n as i64;
        out < 0 || dims.get(&(out as usize, a)).copied().unwrap_or(0) == 0
    })
}

/// A relation read off the higher products with values in one degree-two class.
#[derive(Clone, Debug, PartialEq)]
pub struct KellerRelation {
    pub class: usize,
    pub poly: NCPoly,
}

/// Degree-one classes matched to generators by multidegree.
fn generator_classes(st: &AInfStructure, pres: &Presentation) -> Result<Vec<usize>> {
    pres.gens
        .iter()
        .map(|g| {
            let hits: Vec<usize> = (0..st.basis.len()).filter(|&i| st.basis[i].s == 1 && st.basis[i].md == g.degree).collect();
            match hits.as_slice() {
                [one] => Ok(*one),
                _ => Err(Error::Unsupported(format!(
                    "generator {} does not match exactly one degree-one class",
                    g.name
                ))),
            }
        })
        .collect()
}

fn words_of_md(degs: &[Vec<i64>], md: &[i64]) -> Vec<Word> {
    if md.iter().all(|&x| x == 0) {
        return vec![Word::empty()];
    }
    let mut out = Vec::new();
    for (g, d) in degs.iter().enumerate() {
        let rest: Vec<i64> = md.iter().zip(d).map(|(a, b)| a - b).collect();
        if rest[0] < 0 || rest.iter().any(|&x| x < 0) || d[0] <= 0 {
            continue;
        }
        for w in words_of_md(degs, &rest) {
            out.push(Word::letter(g).concat(&w));
        }
    }
    out
}

fn normalize_lead(p: &NCPoly, order: &MonomialOrder) -> NCPoly {
    match p.terms().max_by(|a, b| order.cmp(a.0, b.0)) {
        Some((_, c)) => p.scale(&c.inv()),
        None => p.clone(),
    }
}

/// Relations `sum_I coeff(beta, m_n(alpha_I)) z_I`, one per degree-two class, normalized so the
/// leading word has coefficient 1. Zero polynomials are dropped.
pub fn keller_relations(st: &AInfStructure, pres: &Presentation) -> Result<Vec<KellerRelation>> {
    let gens = generator_classes(st, pres)?;
    let degs = pres.degrees();
    let order = MonomialOrder::new(degs.iter().map(|d| d[0]).collect(), pres.order.as_deref());
    for n in 2..=st.arity_max {
        for t in st.tuples(n) {
            if t.iter().any(|&i| st.basis[i].s != 1) {
                continue;
            }
            if let Some((k, _)) = st.m(&t)?.iter().find(|(k, _)| st.basis[*k].s != 2) {
                return Err(Error::Malformed(format!(
                    "m{n}({}) has a component {} outside degree two",
                    st.show_tuple(&t),
                    st.basis[*k].name
                )));
            }
        }
    }
    let mut out = Vec::new();
    for (b, elem) in st.basis.iter().enumerate() {
        if elem.s != 2 {
            continue;
        }
        let mut p = NCPoly::zero();
        for w in words_of_md(&degs, &elem.md) {
            if w.len() < 2 {
                continue;
            }
            let t: Vec<usize> = w.0.iter().map(|&g| gens[g as usize]).collect();
            let c = st.coeff(&t, b)?;
            if !c.is_zero() {
                p.add_term(w, c);
            }
        }
        if !p.is_zero() {
            out.push(KellerRelation { class: b, poly: normalize_lead(&p, &order) });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KellerReport {
    pub relations: Vec<KellerRelation>,
    /// Multidegrees where the recovered relations and the presentation disagree modulo lower relations.
    pub mismatches: Vec<Vec<i64>>,
}

impl KellerReport {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the recovered relations with the presentation's, degree by degree, modulo the
/// two-sided ideal generated by relations of lower degree.
pub fn keller_check(st: &AInfStructure, pres: &Presentation) -> Result<KellerReport> {
    let relations = keller_relations(st, pres)?;
    let degs = pres.degrees();
    let mut mds: BTreeSet<(i64, Vec<i64>)> = BTreeSet::new();
    for r in &pres.relations {
        mds.insert((r.degree[0], r.degree.clone()));
    }
    for r in &relations {
        let md = st.basis[r.class].md.clone();
        mds.insert((md[0], md));
    }
    let mut mismatches = Vec::new();
    for (d0, md) in mds {
        if d0 > st.adams_max {
            continue;
        }
        let mut lower = Vec::new();
        for r in pres.relations.iter().filter(|r| r.degree[0] < d0) {
            let rest: Vec<i64> = md.iter().zip(&r.degree).map(|(a, b)| a - b).collect();
            if rest.iter().any(|&x| x < 0) {
                continue;
            }
            for u in words_of_md(&degs, &rest) {
                for k in 0..=u.len() {
                    let left = NCPoly::monomial(Word(u.0[..k].to_vec()), Scalar::one());
                    let right = NCPoly::monomial(Word(u.0[k..].to_vec()), Scalar::one());
                    lower.push(left.mul(&r.poly).mul(&right));
                }
            }
        }
        let given: Vec<NCPoly> = pres.relations.iter().filter(|r| r.degree == md).map(|r| r.poly.clone()).collect();
        let found: Vec<NCPoly> = relations.iter().filter(|r| st.basis[r.class].md == md).map(|r| r.poly.clone()).collect();
        let mut index: HashMap<Word, usize> = HashMap::new();
        let mut vec_of = |p: &NCPoly| -> SparseVec {
            linalg::from_entries(
                p.terms()
                    .map(|(w, c)| {
                        let n = index.len();
                        (*index.entry(w.clone()).or_insert(n), c.clone())
                    })
                    .collect(),
            )
        };
        let lv: Vec<SparseVec> = lower.iter().map(&mut vec_of).collect();
        let gv: Vec<SparseVec> = given.iter().map(&mut vec_of).collect();
        let fv: Vec<SparseVec> = found.iter().map(&mut vec_of).collect();
        let n = index.len();
        let rank_of = |parts: &[&[SparseVec]]| {
            let mut e = Echelon::new(n);
            for p in parts {
                for v in p.iter() {
                    e.insert(v);
                }
            }
            e.rank()
        };
        let rg = rank_of(&[&lv, &gv]);
        let rf = rank_of(&[&lv, &fv]);
        let rall = rank_of(&[&lv, &gv, &fv]);
        if !(rg == rall && rf == rall) {
            mismatches.push(md);
        }
    }
    Ok(KellerReport { relations, mismatches })
}

/// Rescales each degree-two class so that the smallest word of its recovered relation has coefficient 1.
pub fn rescale_basis(st: &mut AInfStructure, pres: &Presentation) -> Result<()> {
    let degs = pres.degrees();
    let order = MonomialOrder::new(degs.iter().map(|d| d[0]).collect(), pres.order.as_deref());
    let gens = generator_classes(st, pres)?;
    let classes: Vec<usize> = (0..st.basis.len()).filter(|&i| st.basis[i].s == 2).collect();
    for b in classes {
        let mut words = words_of_md(&degs, &st.basis[b].md);
        words.sort_by(|x, y| order.cmp(x, y));
        for w in words {
            if w.len() < 2 {
                continue;
            }
            let t: Vec<usize> = w.0.iter().map(|&g| gens[g as usize]).collect();
            let c = st.coeff(&t, b)?;
            if !c.is_zero() {
                st.rescale(b, &c);
                break;
            }
        }
    }
    Ok(())
}

/// Frobenius pairing data in top degree four with two generators in degree one.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusData {
    pub top: usize,
    pub beta1: usize,
    pub beta2: usize,
    /// `beta2 * beta1 = t * top` once `beta1 * beta2 = top`.
    pub t: Scalar,
    /// `Lambda[i][j]`: coefficient of the top class in `m2(gamma_i, alpha_j)`, where the `gamma`
    /// are dual to the degree-one classes under `m2(alpha_i, gamma_j)`.
    pub lambda: Vec<Vec<Scalar>>,
}

fn single(st: &AInfStructure, pred: impl Fn(&BasisElem) -> bool, what: &str) -> Result<usize> {
    let v: Vec<usize> = (0..st.basis.len()).filter(|&i| pred(&st.basis[i])).collect();
    match v.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::NotFrobenius(format!("expected one {what}, found {}", v.len()))),
    }
}

pub fn frobenius_data(st: &AInfStructure) -> Result<FrobeniusData> {
    let top_s = st.basis.iter().map(|b| b.s).max().unwrap_or(0);
    if top_s != 4 {
        return Err(Error::NotFrobenius(format!("top homological degree is {top_s}, expected 4")));
    }
    let top = single(st, |b| b.s == 4, "class in degree 4")?;
    let two: Vec<usize> = (0..st.basis.len()).filter(|&i| st.basis[i].s == 2).collect();
    if two.len() != 2 {
        return Err(Error::NotFrobenius(format!("expected two classes in degree 2, found {}", two.len())));
    }
    let (beta1, beta2) = if st.basis[two[0]].md[0] <= st.basis[two[1]].md[0] { (two[0], two[1]) } else { (two[1], two[0]) };
    let b12 = st.coeff(&[beta1, beta2], top)?;
    if b12.is_zero() {
        return Err(Error::NotFrobenius("the degree-two classes pair to zero".into()));
    }
    let t = &st.coeff(&[beta2, beta1], top)? / &b12;
    let alpha: Vec<usize> = (0..st.basis.len()).filter(|&i| st.basis[i].s == 1).collect();
    let c: Vec<usize> = (0..st.basis.len()).filter(|&i| st.basis[i].s == 3).collect();
    if alpha.len() != c.len() {
        return Err(Error::NotFrobenius(format!("{} classes in degree 1 but {} in degree 3", alpha.len(), c.len())));
    }
    let g: Vec<Vec<Scalar>> = alpha
        .iter()
        .map(|&a| c.iter().map(|&k| st.coeff(&[a, k], top)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let ginv = linalg::invert(&g).ok_or_else(|| Error::NotFrobenius("degenerate pairing between degrees 1 and 3".into()))?;
    let n = alpha.len();
    let mut lambda = vec![vec![Scalar::zero(); n]; n];
    for (i, row) in lambda.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for (k, &ck) in c.iter().enumerate() {
                let w = &ginv[k][i];
                if !w.is_zero() {
                    acc += &(w * &st.coeff(&[ck, alpha[j]], top)?);
                }
            }
            *cell = acc;
        }
    }
    Ok(FrobeniusData { top, beta1, beta2, t, lambda })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusCheck {
    pub top_dim: usize,
    pub gram_rank: usize,
    pub dim: usize,
}

impl FrobeniusCheck {
    pub fn ok(&self) -> bool {
        self.top_dim == 1 && self.gram_rank == self.dim
    }
}

/// One-dimensional top degree and a nondegenerate pairing `(x, y) -> top coefficient of m2(x, y)`.
pub fn check_frobenius(st: &AInfStructure) -> Result<FrobeniusCheck> {
    let top_s = st.basis.iter().map(|b| b.s).max().unwrap_or(0);
    let tops: Vec<usize> = (0..st.basis.len()).filter(|&i| st.basis[i].s == top_s).collect();
    let dim = st.basis.len();
    if tops.len() != 1 {
        return Ok(FrobeniusCheck { top_dim: tops.len(), gram_rank: 0, dim });
    }
    let top = tops[0];
    let top_md = &st.basis[top].md;
    let mut rows = Vec::with_capacity(dim);
    for x in 0..dim {
        let mut row = Vec::new();
        for y in 0..dim {
            if &add_md(&st.basis[x].md, &st.basis[y].md) != top_md || st.basis[x].s + st.basis[y].s != top_s {
                continue;
            }
            let c = st.coeff(&[x, y], top)?;
            if !c.is_zero() {
                row.push((y, c));
            }
        }
        rows.push(row);
    }
    Ok(FrobeniusCheck { top_dim: 1, gram_rank: linalg::rank(dim, &rows), dim })
}
