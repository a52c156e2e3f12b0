//! Coefficient families of a type-12221 Ext-algebra and the Stasheff identity families they must satisfy.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Which vanishing factor `1 - t g1^a g2^b` selects the shape of the degree-4 relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    One,
    Two,
    Three,
    Four,
    Five,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::One, Case::Two, Case::Three, Case::Four, Case::Five];

    /// Exponents `(a, b)` of the factor `1 - t g1^a g2^b`.
    pub fn exponents(self) -> (i64, i64) {
        match self {
            Case::One => (4, 0),
            Case::Two => (0, 4),
            Case::Three => (1, 3),
            Case::Four => (2, 2),
            Case::Five => (3, 1),
        }
    }
    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
            Case::Three => 3,
            Case::Four => 4,
            Case::Five => 5,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Case {}", self.number())
    }
}

/// Scalars describing a candidate Ext-algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericParams {
    pub g1: Scalar,
    pub g2: Scalar,
    pub t: Scalar,
    pub v: Scalar,
    pub w: Scalar,
    pub p: Scalar,
    pub q: Scalar,
    pub r: Scalar,
    /// Shape of the degree-4 relation.
    pub case: Case,
    /// `c[k][i]` is the coefficient `c_{k+1, i+1}`.
    pub c: [[Scalar; 2]; 3],
}

impl GenericParams {
    pub fn new(case: Case) -> GenericParams {
        let z = Scalar::zero;
        GenericParams {
            g1: Scalar::one(),
            g2: Scalar::one(),
            t: Scalar::one(),
            v: z(),
            w: z(),
            p: z(),
            q: z(),
            r: z(),
            case,
            c: [[z(), z()], [z(), z()], [z(), z()]],
        }
    }

    /// Named scalar fields, in a fixed order, for reports and perturbation.
    pub fn named(&self) -> Vec<(&'static str, Scalar)> {
        let mut v = vec![
            ("g1", self.g1.clone()),
            ("g2", self.g2.clone()),
            ("t", self.t.clone()),
            ("v", self.v.clone()),
            ("w", self.w.clone()),
            ("p", self.p.clone()),
            ("q", self.q.clone()),
            ("r", self.r.clone()),
        ];
        if self.case == Case::Four {
            v.push(("c11", self.c[0][0].clone()));
            v.push(("c21", self.c[1][0].clone()));
            v.push(("c31", self.c[2][0].clone()));
        }
        v
    }

    pub fn with_named(&self, name: &str, value: Scalar) -> GenericParams {
        let mut o = self.clone();
        match name {
            "g1" => o.g1 = value,
            "g2" => o.g2 = value,
            "t" => o.t = value,
            "v" => o.v = value,
            "w" => o.w = value,
            "p" => o.p = value,
            "q" => o.q = value,
            "r" => o.r = value,
            "c11" => o.c[0][0] = value,
            "c21" => o.c[1][0] = value,
            "c31" => o.c[2][0] = value,
            _ => panic!("unknown parameter {name}"),
        }
        o
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmCheck {
    pub gm2: bool,
    pub gm3: bool,
}

/// `(g1/g2)^i != 1` for `i = 1..4`, and `1 + v + w != 0`.
pub fn gm_check(p: &GenericParams) -> GmCheck {
    let ratio = &p.g1 / &p.g2;
    let gm2 = (1..=4).all(|i| !ratio.pow(i).is_one());
    let gm3 = !(&(&Scalar::one() + &p.v) + &p.w).is_zero();
    GmCheck { gm2, gm3 }
}

/// The vanishing factors `1 - t g1^a g2^b`.
pub fn case_dispatch(g1: &Scalar, g2: &Scalar, t: &Scalar) -> Vec<Case> {
    Case::ALL
        .into_iter()
        .filter(|c| {
            let (a, b) = c.exponents();
            (&Scalar::one() - &(&(t * &g1.pow(a)) * &g2.pow(b))).is_zero()
        })
        .collect()
}

/// A coefficient family indexed by small tuples; absent keys read as zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub entries: BTreeMap<Vec<u8>, Scalar>,
}

impl Table {
    pub fn get(&self, k: &[u8]) -> Scalar {
        self.entries.get(k).cloned().unwrap_or_else(Scalar::zero)
    }
    pub fn set(&mut self, k: &[u8], v: Scalar) {
        if v.is_zero() {
            self.entries.remove(k);
        } else {
            self.entries.insert(k.to_vec(), v);
        }
    }
}

/// The a-, b-, c-, x-, y-tables and the pairing matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTables {
    pub a: Table,
    pub b: Table,
    pub c: Table,
    pub x: Table,
    pub y: Table,
    /// `lambda[(i,j)] = r_ij`; diagonal with entries g1, g2.
    pub lambda: Table,
    pub t: Scalar,
}

const I2: [u8; 2] = [1, 2];

/// How the x-table is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XSource {
    /// The closed-form table of the degree-5 relation case.
    Printed,
    /// Solved from the SI(5a) family.
    Derived,
}

pub fn coeff_tables(p: &GenericParams) -> CoeffTables {
    let src = if p.case == Case::Five { XSource::Printed } else { XSource::Derived };
    coeff_tables_with(p, src)
}

pub fn coeff_tables_with(p: &GenericParams, xsrc: XSource) -> CoeffTables {
    let (g1, g2, v, w) = (&p.g1, &p.g2, &p.v, &p.w);
    let mut a = Table::default();
    a.set(&[1, 2, 2], Scalar::one());
    a.set(&[2, 1, 2], v.clone());
    a.set(&[2, 2, 1], w.clone());
    let mut b = Table::default();
    b.set(&[1, 3, 2, 2], Scalar::one());
    b.set(&[2, 3, 1, 2], v.clone());
    b.set(&[2, 3, 2, 1], w.clone());
    b.set(&[2, 2, 2, 1], g1.clone());
    b.set(&[1, 2, 2, 2], g2 * v);
    b.set(&[2, 2, 1, 2], g2 * w);
    b.set(&[1, 1, 2, 2], &(g2 * g2) * w);
    b.set(&[2, 1, 1, 2], g2 * g1);
    b.set(&[2, 1, 2, 1], &(g1 * g2) * v);
    let mut y = Table::default();
    let keys: [[u8; 4]; 4] = match p.case {
        Case::Four => [[1, 2, 1, 2], [2, 1, 1, 2], [2, 1, 2, 1], [2, 2, 1, 1]],
        _ => [[1, 1, 1, 2], [1, 1, 2, 1], [1, 2, 1, 1], [2, 1, 1, 1]],
    };
    for (k, val) in keys.iter().zip([Scalar::one(), p.p.clone(), p.q.clone(), p.r.clone()]) {
        y.set(k, val);
    }
    let mut c = Table::default();
    for k in 0..3u8 {
        for i in 0..2u8 {
            c.set(&[k + 1, i + 1], p.c[k as usize][i as usize].clone());
        }
    }
    let mut lambda = Table::default();
    lambda.set(&[1, 1], g1.clone());
    lambda.set(&[2, 2], g2.clone());
    let mut tables = CoeffTables { a, b, c, x: Table::default(), y, lambda, t: p.t.clone() };
    tables.x = match xsrc {
        XSource::Printed => printed_x(g1, g2, &p.p, &p.q, &p.r),
        XSource::Derived => derived_x(&tables),
    };
    tables
}

/// Closed-form x-table (keys `(s, position, i, j, k)`).
fn printed_x(g1: &Scalar, g2: &Scalar, p: &Scalar, q: &Scalar, r: &Scalar) -> Table {
    let m = |e1: i64, e2: i64, extra: Option<&Scalar>| -> Scalar {
        let base = -(&g1.pow(e1) * &g2.pow(e2));
        match extra {
            Some(s) => &base * s,
            None => base,
        }
    };
    let mut x = Table::default();
    let rows: Vec<([u8; 5], Scalar)> = vec![
        ([1, 1, 2, 1, 1], m(3, 3, Some(r))),
        ([2, 1, 1, 1, 1], m(4, 2, None)),
        ([1, 1, 1, 1, 2], m(3, 3, Some(p))),
        ([1, 1, 1, 2, 1], m(3, 3, Some(q))),
        ([1, 2, 1, 2, 1], m(2, 3, Some(r))),
        ([1, 2, 2, 1, 1], m(3, 2, None)),
        ([2, 2, 1, 1, 1], m(3, 2, Some(p))),
        ([1, 2, 1, 1, 2], m(2, 3, Some(q))),
        ([1, 3, 1, 2, 1], m(2, 2, None)),
        ([1, 3, 2, 1, 1], m(2, 2, Some(p))),
        ([2, 3, 1, 1, 1], m(2, 2, Some(q))),
        ([1, 3, 1, 1, 2], m(1, 3, Some(r))),
        ([1, 4, 1, 1, 2], m(1, 2, None)),
        ([1, 4, 2, 1, 1], m(1, 2, Some(q))),
        ([1, 4, 1, 2, 1], m(1, 2, Some(p))),
        ([2, 4, 1, 1, 1], m(1, 2, Some(r))),
    ];
    for (k, v) in rows {
        x.set(&k, v);
    }
    x
}

/// Solves the first four SI(5a) equations for the x-table, position 4 down to 1.
fn derived_x(tb: &CoeffTables) -> Table {
    let (a, c, y, r, t) = (&tb.a, &tb.c, &tb.y, &tb.lambda, &tb.t);
    let mut x = Table::default();
    let quads = || {
        I2.into_iter().flat_map(|i| {
            I2.into_iter().flat_map(move |j| I2.into_iter().flat_map(move |k| I2.into_iter().map(move |h| (i, j, k, h))))
        })
    };
    for (i, j, k, h) in quads() {
        let v = &(&(&a.get(&[i, j, k]) * &c.get(&[2, h])) - &(&a.get(&[j, k, h]) * &c.get(&[1, i]))) + &(t * &y.get(&[i, j, k, h]));
        x.set(&[i, 4, j, k, h], v);
    }
    let lift = |x: &Table, pos: u8, i: u8, j: u8, k: u8, h: u8| -> Scalar {
        &(&r.get(&[1, h]) * &x.get(&[1, pos, i, j, k])) + &(&r.get(&[2, h]) * &x.get(&[2, pos, i, j, k]))
    };
    let mut next = x.clone();
    for (i, j, k, h) in quads() {
        let v = &(&a.get(&[i, j, k]) * &c.get(&[3, h])) + &lift(&x, 4, i, j, k, h);
        next.set(&[i, 3, j, k, h], v);
    }
    x = next;
    let mut next = x.clone();
    for (i, j, k, h) in quads() {
        next.set(&[i, 2, j, k, h], lift(&x, 3, i, j, k, h));
    }
    x = next;
    let mut next = x.clone();
    for (i, j, k, h) in quads() {
        let v = &(-&(&c.get(&[1, i]) * &a.get(&[j, k, h]))) + &lift(&x, 2, i, j, k, h);
        next.set(&[i, 1, j, k, h], v);
    }
    next
}

/// Identity family names in report order.
pub const FAMILIES: [&str; 5] = ["SI(4a)", "SI(4b)", "SI(5a)", "SI(5c)", "SI(6a)"];

/// A nonzero residual: family, equation label, index tuple, value.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub family: &'static str,
    pub equation: &'static str,
    pub index: Vec<u8>,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    /// Number of equations evaluated per family.
    pub evaluated: BTreeMap<&'static str, usize>,
    pub nonzero: Vec<Residual>,
}

impl ResidualReport {
    pub fn all_zero(&self) -> bool {
        self.nonzero.is_empty()
    }
    pub fn nonzero_in(&self, family: &str) -> usize {
        self.nonzero.iter().filter(|r| r.family == family).count()
    }
}

/// Evaluates every equation of the identity families over all index tuples.
pub fn si_residuals(tb: &CoeffTables) -> ResidualReport {
    let (a, b, c, x, y, r, t) = (&tb.a, &tb.b, &tb.c, &tb.x, &tb.y, &tb.lambda, &tb.t);
    let mut rep = ResidualReport { evaluated: BTreeMap::new(), nonzero: Vec::new() };
    let mut push = |family: &'static str, equation: &'static str, index: Vec<u8>, value: Scalar| {
        *rep.evaluated.entry(family).or_insert(0) += 1;
        if !value.is_zero() {
            rep.nonzero.push(Residual { family, equation, index, value });
        }
    };
    let sum2 = |f: &dyn Fn(u8) -> Scalar| -> Scalar { &f(1) + &f(2) };
    for i in I2 {
        for j in I2 {
            for k in I2 {
                let idx = vec![i, j, k];
                let aijk = a.get(&[i, j, k]);
                push("SI(4a)", "4a.1", idx.clone(), &aijk - &b.get(&[i, 3, j, k]));
                push("SI(4a)", "4a.2", idx.clone(), &b.get(&[i, 2, j, k]) - &sum2(&|s| &r.get(&[s, k]) * &b.get(&[s, 3, i, j])));
                push("SI(4a)", "4a.3", idx.clone(), &b.get(&[i, 1, j, k]) - &sum2(&|s| &r.get(&[s, k]) * &b.get(&[s, 2, i, j])));
                push("SI(4a)", "4a.4", idx.clone(), &(-&(t * &aijk)) - &sum2(&|s| &r.get(&[s, k]) * &b.get(&[s, 1, i, j])));
                let mut acc = Scalar::zero();
                for s in I2 {
                    for tt in I2 {
                        for u in I2 {
                            let term = &(&(&r.get(&[s, k]) * &r.get(&[tt, j])) * &r.get(&[u, i])) * &a.get(&[u, tt, s]);
                            acc += &term;
                        }
                    }
                }
                push("SI(4b)", "4b", idx, &(-&(t * &aijk)) - &acc);
            }
        }
    }
    let g = |i: u8| r.get(&[i, i]);
    for i in I2 {
        for j in I2 {
            for k in I2 {
                for h in I2 {
                    let idx = vec![i, j, k, h];
                    let lift = |pos: u8| -> Scalar {
                        &(&r.get(&[1, h]) * &x.get(&[1, pos, i, j, k])) + &(&r.get(&[2, h]) * &x.get(&[2, pos, i, j, k]))
                    };
                    let aijk = a.get(&[i, j, k]);
                    let ajkh = a.get(&[j, k, h]);
                    let yv = y.get(&[i, j, k, h]);
                    let e1 = &(&(&(&aijk * &c.get(&[2, h])) - &(&ajkh * &c.get(&[1, i]))) + &(t * &yv)) - &x.get(&[i, 4, j, k, h]);
                    push("SI(5a)", "5a.1", idx.clone(), e1);
                    let e2 = &(&(&aijk * &c.get(&[3, h])) + &lift(4)) - &x.get(&[i, 3, j, k, h]);
                    push("SI(5a)", "5a.2", idx.clone(), e2);
                    push("SI(5a)", "5a.3", idx.clone(), &lift(3) - &x.get(&[i, 2, j, k, h]));
                    let e4 = &(&(&c.get(&[1, i]) * &ajkh) - &lift(2)) + &x.get(&[i, 1, j, k, h]);
                    push("SI(5a)", "5a.4", idx.clone(), e4);
                    let e5 = &(&(&(&ajkh * &c.get(&[2, i])) - &(&aijk * &c.get(&[3, h]))) - &lift(1)) + &yv;
                    push("SI(5a)", "5a.5", idx.clone(), e5);
                    let prod = &(&(&g(i) * &g(j)) * &g(k)) * &g(h);
                    push("SI(5c)", "5c", idx, &(&Scalar::one() - &(t * &prod)) * &yv);
                }
            }
        }
    }
    for code in 0..128u32 {
        let bit = |n: u32| -> u8 { if code >> (6 - n) & 1 == 0 { 1 } else { 2 } };
        let (i, j, k, h, m, n, s) = (bit(0), bit(1), bit(2), bit(3), bit(4), bit(5), bit(6));
        let terms = [
            -(&a.get(&[i, j, k]) * &x.get(&[s, 1, h, m, n])),
            &a.get(&[j, k, h]) * &x.get(&[s, 2, i, m, n]),
            -(&a.get(&[k, h, m]) * &x.get(&[s, 3, i, j, n])),
            &a.get(&[h, m, n]) * &x.get(&[s, 4, i, j, k]),
            &b.get(&[s, 1, m, n]) * &y.get(&[i, j, k, h]),
            -(&b.get(&[s, 2, i, n]) * &y.get(&[j, k, h, m])),
            &b.get(&[s, 3, i, j]) * &y.get(&[k, h, m, n]),
        ];
        let mut acc = Scalar::zero();
        for term in &terms {
            acc += term;
        }
        push("SI(6a)", "6a", vec![i, j, k, h, m, n, s], acc);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_case_five_for_a2_data() {
        let g1 = Scalar::from_int(-8);
        let g2 = Scalar::from_frac(-1, 16);
        let t = Scalar::from_frac(1, 32);
        assert_eq!(case_dispatch(&g1, &g2, &t), vec![Case::Five]);
        assert!(gm_check(&GenericParams { g1, g2, ..GenericParams::new(Case::Five) }).gm2);
    }

    #[test]
    fn gm_failures() {
        let mut p = GenericParams::new(Case::Five);
        assert!(!gm_check(&p).gm2);
        p.w = Scalar::from_int(-1);
        assert!(!gm_check(&p).gm3);
    }
}
