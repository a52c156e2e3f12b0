//! Closed-form parameter families satisfying every identity family, with sensitivity checks.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

use super::tables::{case_dispatch, coeff_tables, gm_check, si_residuals, Case, GenericParams, GmCheck, ResidualReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionId {
    S1_1,
    S1_2a,
    S1_2b,
    S1_3a,
    S2_1,
    S2_2,
    S2_3,
}

impl SolutionId {
    pub const ALL: [SolutionId; 7] = [
        SolutionId::S1_1,
        SolutionId::S1_2a,
        SolutionId::S1_2b,
        SolutionId::S1_3a,
        SolutionId::S2_1,
        SolutionId::S2_2,
        SolutionId::S2_3,
    ];

    /// Free parameters. `c11` is accepted as an optional extra for the quartic-`(2,2)` families.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            SolutionId::S1_1 => &["f", "v"],
            SolutionId::S1_2a | SolutionId::S1_2b => &["p"],
            SolutionId::S1_3a => &["v"],
            SolutionId::S2_1 | SolutionId::S2_2 => &["h", "f"],
            SolutionId::S2_3 => &["h", "p"],
        }
    }

    pub fn field(self) -> Field {
        match self {
            SolutionId::S1_2b => Field::Quadratic { p: 0, q: 1 },
            SolutionId::S1_3a => Field::Quadratic { p: -1, q: 1 },
            _ => Field::Rationals,
        }
    }

    pub fn expected_case(self) -> Case {
        match self {
            SolutionId::S2_1 | SolutionId::S2_2 | SolutionId::S2_3 => Case::Four,
            _ => Case::Five,
        }
    }

    /// Three or more sample points avoiding zeros and small roots of unity.
    pub fn samples(self) -> Vec<Vec<(String, Scalar)>> {
        let s = |v: &[(&str, Scalar)]| v.iter().map(|(k, x)| (k.to_string(), x.clone())).collect::<Vec<_>>();
        let int = Scalar::from_int;
        let half = Scalar::from_frac(1, 2);
        match self {
            SolutionId::S1_1 => vec![
                s(&[("f", int(2)), ("v", int(5))]),
                s(&[("f", int(3)), ("v", int(2))]),
                s(&[("f", half.clone()), ("v", int(-2))]),
            ],
            SolutionId::S1_2a | SolutionId::S1_2b => {
                vec![s(&[("p", int(2))]), s(&[("p", int(3))]), s(&[("p", int(-2))]), s(&[("p", half)])]
            }
            SolutionId::S1_3a => vec![s(&[("v", int(2))]), s(&[("v", int(3))]), s(&[("v", half)])],
            SolutionId::S2_1 | SolutionId::S2_2 => vec![
                s(&[("h", int(2)), ("f", int(3))]),
                s(&[("h", int(3)), ("f", int(5))]),
                s(&[("h", int(-2)), ("f", half)]),
            ],
            SolutionId::S2_3 => vec![
                s(&[("h", int(2)), ("p", int(3))]),
                s(&[("h", int(3)), ("p", int(5))]),
                s(&[("h", half), ("p", int(-2))]),
            ],
        }
    }
}

impl FromStr for SolutionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<SolutionId> {
        let norm = s.trim().trim_start_matches(['S', 's']).to_ascii_lowercase();
        SolutionId::ALL
            .into_iter()
            .find(|id| id.to_string()[1..].to_ascii_lowercase() == norm)
            .ok_or_else(|| Error::Invalid(format!("unknown solution `{s}` (expected S1.1 S1.2a S1.2b S1.3a S2.1 S2.2 S2.3)")))
    }
}

impl fmt::Display for SolutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SolutionId::S1_1 => "S1.1",
            SolutionId::S1_2a => "S1.2a",
            SolutionId::S1_2b => "S1.2b",
            SolutionId::S1_3a => "S1.3a",
            SolutionId::S2_1 => "S2.1",
            SolutionId::S2_2 => "S2.2",
            SolutionId::S2_3 => "S2.3",
        };
        f.write_str(s)
    }
}

fn lookup(params: &[(String, Scalar)], name: &str) -> Result<Scalar> {
    params
        .iter()
        .find(|(k, _)| k == name)
        .map(|(_, v)| v.clone())
        .ok_or_else(|| Error::Invalid(format!("missing parameter `{name}`")))
}

fn nonzero(s: &Scalar, name: &str) -> Result<()> {
    if s.is_zero() {
        Err(Error::Invalid(format!("parameter `{name}` must be nonzero")))
    } else {
        Ok(())
    }
}

/// Substitutes the family's formulas into a full parameter set.
pub fn solution_params(id: SolutionId, params: &[(String, Scalar)]) -> Result<GenericParams> {
    let mut allowed: Vec<&str> = id.params().to_vec();
    if id.expected_case() == Case::Four {
        allowed.extend(["c11", "f"]);
    }
    for (k, v) in params {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::Invalid(format!("{id} takes no parameter `{k}`")));
        }
        if id.field().join(v.field()).is_none() {
            return Err(Error::FieldMismatch);
        }
    }
    let one = Scalar::one();
    let mut g = GenericParams::new(id.expected_case());
    let gen = id.field().generator();
    match id {
        SolutionId::S1_1 => {
            let (f, v) = (lookup(params, "f")?, lookup(params, "v")?);
            nonzero(&f, "f")?;
            g.g1 = -f.pow(3);
            g.g2 = -f.pow(-4);
            g.v = v.clone();
            g.w = f.pow(2);
            g.p = &v - &f;
            g.q = -(&(&v - &f) * &f);
            g.r = -f.pow(3);
        }
        SolutionId::S1_2a | SolutionId::S1_2b => {
            let p = lookup(params, "p")?;
            nonzero(&p, "p")?;
            let unit = if id == SolutionId::S1_2b { gen } else { -&one };
            g.g1 = &unit * &p.pow(3);
            g.g2 = -p.pow(-4);
            g.w = &unit * &p.pow(2);
            g.q = p.pow(2);
            g.r = p.pow(3);
            g.p = p;
        }
        SolutionId::S1_3a => {
            let v = lookup(params, "v")?;
            nonzero(&v, "v")?;
            g.g1 = -v.pow(3);
            g.g2 = &gen * &v.pow(-4);
            g.w = v.pow(2);
            g.r = &v.pow(3) / &gen;
            g.v = v;
        }
        SolutionId::S2_1 | SolutionId::S2_2 | SolutionId::S2_3 => {
            let h = lookup(params, "h")?;
            nonzero(&h, "h")?;
            let f = match id {
                SolutionId::S2_3 => {
                    let p = lookup(params, "p")?;
                    nonzero(&p, "p")?;
                    let hp = &h * &p;
                    let s = &(&h.pow(2) + &hp) + &p.pow(2);
                    let f = -(&s / &h.pow(3));
                    if let Ok(given) = lookup(params, "f") {
                        if given != f {
                            return Err(Error::Invalid(format!(
                                "f is determined by h and p here; expected {f}, got {given}"
                            )));
                        }
                    }
                    g.v = &(&h.pow(3) - &p.pow(3)) / &hp;
                    g.w = -hp.clone();
                    g.q = &(&(&(&(&h.pow(5) + &(&h.pow(4) * &p)) + &(&h.pow(3) * &p.pow(2))) - &(&h * &p.pow(4))) - &p.pow(5))
                        / &(&h.pow(2) * &p);
                    g.r = -(&p * &s);
                    g.p = p;
                    f
                }
                SolutionId::S2_1 => {
                    let f = lookup(params, "f")?;
                    g.v = &(&h.pow(2) * &f) - &h;
                    g.w = -(&h.pow(3) * &f);
                    g.p = &h.pow(2) * &f;
                    g.q = &h.pow(3) * &f;
                    g.r = &h.pow(5) * &f.pow(2);
                    f
                }
                _ => {
                    let f = lookup(params, "f")?;
                    g.w = -h.pow(2);
                    g.p = h.clone();
                    g.q = h.pow(2);
                    g.r = &h.pow(4) * &f;
                    f
                }
            };
            nonzero(&f, "f")?;
            g.g1 = -h.pow(4);
            g.g2 = -h.pow(-3);
            let c11 = lookup(params, "c11").unwrap_or_else(|_| Scalar::zero());
            g.c[2][0] = -(&(&h.pow(4) * &c11) + &(&h.pow(2) * &f));
            g.c[0][0] = c11;
            g.c[1][0] = f;
        }
    }
    g.t = -(&g.g1 * &g.g2.pow(2));
    Ok(g)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionReport {
    pub id: SolutionId,
    pub params: GenericParams,
    pub gm: GmCheck,
    pub cases: Vec<Case>,
    pub residuals: ResidualReport,
    /// For each named scalar: the number of nonzero residuals after adding 1 to it alone.
    pub perturbations: Vec<(&'static str, usize)>,
}

impl SolutionReport {
    pub fn passes(&self) -> bool {
        self.residuals.all_zero()
            && self.cases == vec![self.id.expected_case()]
            && self.perturbations.iter().all(|(_, n)| *n > 0)
    }
}

pub fn check_solution(id: SolutionId, params: &[(String, Scalar)]) -> Result<SolutionReport> {
    let g = solution_params(id, params)?;
    let residuals = si_residuals(&coeff_tables(&g));
    let perturbations = g
        .named()
        .into_iter()
        .map(|(name, v)| {
            let bumped = g.with_named(name, &v + &Scalar::one());
            (name, si_residuals(&coeff_tables(&bumped)).nonzero.len())
        })
        .collect();
    Ok(SolutionReport {
        id,
        gm: gm_check(&g),
        cases: case_dispatch(&g.g1, &g.g2, &g.t),
        residuals,
        perturbations,
        params: g,
    })
}
