//! Named two-generator algebras with one cubic and one quartic relation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{NCPoly, Word};
use crate::presentation::Presentation;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    A,
    B,
    C,
    D,
    X,
    Y,
    Z,
    O,
}

impl CatalogName {
    pub const ALL: [CatalogName; 8] = [
        CatalogName::A,
        CatalogName::B,
        CatalogName::C,
        CatalogName::D,
        CatalogName::X,
        CatalogName::Y,
        CatalogName::Z,
        CatalogName::O,
    ];

    /// Parameter names in the order they appear in `A(p)`, `D(v,p)`, ...
    pub fn params(self) -> &'static [&'static str] {
        match self {
            CatalogName::A | CatalogName::B | CatalogName::C => &["p"],
            CatalogName::D => &["v", "p"],
            CatalogName::X | CatalogName::Z => &["p", "h"],
            CatalogName::Y => &["h", "f"],
            CatalogName::O => &[],
        }
    }

    /// Smallest field holding the fixed constants of the family.
    pub fn base_field(self) -> Field {
        match self {
            CatalogName::B => Field::Quadratic { p: 0, q: 1 },
            CatalogName::C => Field::Quadratic { p: -1, q: 1 },
            _ => Field::Rationals,
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;
    fn from_str(s: &str) -> Result<CatalogName> {
        CatalogName::ALL
            .into_iter()
            .find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Invalid(format!("unknown catalog algebra `{s}` (expected one of A B C D X Y Z O)")))
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CatalogName::A => "A",
            CatalogName::B => "B",
            CatalogName::C => "C",
            CatalogName::D => "D",
            CatalogName::X => "X",
            CatalogName::Y => "Y",
            CatalogName::Z => "Z",
            CatalogName::O => "O",
        };
        f.write_str(s)
    }
}

/// Word over `z1, z2` written with the digits 1 and 2.
fn word(digits: &str) -> Word {
    Word(digits.bytes().map(|b| b - b'1').collect())
}

fn poly(terms: &[(&str, Scalar)]) -> NCPoly {
    let mut p = NCPoly::zero();
    for (w, c) in terms {
        p.add_term(word(w), c.clone());
    }
    p
}

fn lookup(params: &[(String, Scalar)], name: &str) -> Result<Scalar> {
    params
        .iter()
        .find(|(k, _)| k == name)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| Error::Invalid(format!("missing parameter `{name}`")))
}

/// The presentation of a catalog algebra with its parameters substituted.
pub fn catalog(name: CatalogName, params: &[(String, Scalar)]) -> Result<Presentation> {
    for (k, _) in params {
        if !name.params().contains(&k.as_str()) {
            return Err(Error::Invalid(format!("{name} takes no parameter `{k}`")));
        }
    }
    let mut field = name.base_field();
    let mut vals = Vec::new();
    for &k in name.params() {
        let v = lookup(params, k)?;
        field = field.join(v.field()).ok_or(Error::FieldMismatch)?;
        vals.push((k.to_string(), v));
    }
    let get = |k: &str| vals.iter().find(|(n, _)| n == k).map(|(_, v)| v.clone()).unwrap();
    let one = Scalar::one;
    let (r3, r4) = match name {
        CatalogName::A | CatalogName::B | CatalogName::C | CatalogName::D => {
            let p = get("p");
            if p.is_zero() {
                return Err(Error::Invalid(format!("{name} requires p != 0")));
            }
            let (p2, p3) = (p.pow(2), p.pow(3));
            match name {
                CatalogName::A => (
                    poly(&[("122", one()), ("221", -&p2)]),
                    poly(&[("1112", one()), ("1121", p.clone()), ("1211", p2), ("2111", p3)]),
                ),
                CatalogName::B => {
                    let i = field.generator();
                    (
                        poly(&[("122", one()), ("221", &i * &p2)]),
                        poly(&[("1112", one()), ("1121", p.clone()), ("1211", p2), ("2111", p3)]),
                    )
                }
                CatalogName::C => {
                    let j = field.generator();
                    (
                        poly(&[("122", one()), ("212", p.clone()), ("221", p2)]),
                        poly(&[("1112", one()), ("2111", &j * &p3)]),
                    )
                }
                _ => {
                    let v = get("v");
                    (
                        poly(&[("122", one()), ("212", v.clone()), ("221", p2.clone())]),
                        poly(&[("1112", one()), ("1121", &v + &p), ("1211", &p2 + &(&p * &v)), ("2111", p3)]),
                    )
                }
            }
        }
        CatalogName::X => {
            let (p, h) = (get("p"), get("h"));
            let hp = &h * &p;
            (
                poly(&[("122", one()), ("212", &p - &h), ("221", -&hp)]),
                poly(&[("1212", one()), ("2112", p.clone()), ("2121", hp.clone()), ("2211", &hp * &p)]),
            )
        }
        CatalogName::Y => {
            let (h, f) = (get("h"), get("f"));
            (
                poly(&[("122", one()), ("221", -&h.pow(2))]),
                poly(&[("1212", one()), ("2112", h.clone()), ("2121", h.pow(2)), ("2211", &h.pow(4) * &f)]),
            )
        }
        CatalogName::Z => {
            let (p, h) = (get("p"), get("h"));
            if p.is_zero() || h.is_zero() {
                return Err(Error::Invalid("Z requires p != 0 and h != 0".into()));
            }
            let hp = &h * &p;
            let s = &(&h.pow(2) + &hp) + &p.pow(2);
            let c212 = &(&h.pow(3) - &p.pow(3)) / &hp;
            let c2121 = &(&(&(&(&h.pow(5) + &(&h.pow(4) * &p)) + &(&h.pow(3) * &p.pow(2))) - &(&h * &p.pow(4))) - &p.pow(5))
                / &(&h.pow(2) * &p);
            (
                poly(&[("122", one()), ("212", c212), ("221", -&hp)]),
                poly(&[("1212", one()), ("2112", p.clone()), ("2211", -&(&p * &s)), ("2121", c2121)]),
            )
        }
        CatalogName::O => (poly(&[("221", one())]), poly(&[("2111", one())])),
    };
    let mut pres = Presentation::two_generator(field);
    pres.params = vals;
    pres.add_relation(r3)?;
    pres.add_relation(r4)?;
    if name == CatalogName::O {
        pres.add_relation(poly(&[("21211", one())]))?;
    }
    Ok(pres)
}
