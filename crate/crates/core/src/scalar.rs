//! Exact scalars: rationals and elements of quadratic number fields `Q[u]/(u^2 + p u + q)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field. `Quadratic { p, q }` means `Q[u]/(u^2 + p u + q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// `Q[u]/(u + c)`: the symbol `u` denotes the rational `-c`.
    Linear { c: i64 },
    Quadratic { p: i64, q: i64 },
}

impl Field {
    /// Builds a field from a monic integer polynomial given by its coefficients,
    /// lowest degree first (the leading 1 included).
    pub fn from_monic(coeffs: &[i64]) -> Result<Field> {
        match coeffs {
            [c, 1] => Ok(Field::Linear { c: *c }),
            [q, p, 1] => {
                let disc = (*p as i128) * (*p as i128) - 4 * (*q as i128);
                if disc >= 0 {
                    let r = isqrt(disc as u128) as i128;
                    if r * r == disc {
                        // roots (-p ± r)/2
                        let r1 = BigRational::new(BigInt::from(-(*p as i128) + r), BigInt::from(2));
                        let r2 = BigRational::new(BigInt::from(-(*p as i128) - r), BigInt::from(2));
                        return Err(Error::ReducibleField(format!(
                            "{} has rational roots {} and {}",
                            poly_text(*p, *q),
                            fmt_rat(&r1),
                            fmt_rat(&r2)
                        )));
                    }
                }
                Ok(Field::Quadratic { p: *p, q: *q })
            }
            _ => Err(Error::Field(
                "minimal polynomial must be monic of degree 1 or 2".into(),
            )),
        }
    }

    pub fn is_extension(&self) -> bool {
        matches!(self, Field::Quadratic { .. })
    }

    /// Text form used by the presentation grammar, e.g. `Q[u]/(u^2+1)`.
    pub fn describe(&self, var: &str) -> String {
        match self {
            Field::Rationals => "Q".to_string(),
            Field::Linear { c } => {
                let tail = match c.cmp(&0) {
                    Ordering::Less => format!("-{}", -c),
                    Ordering::Equal => String::new(),
                    Ordering::Greater => format!("+{}", c),
                };
                format!("Q[{var}]/({var}{tail})")
            }
            Field::Quadratic { p, q } => {
                format!("Q[{var}]/({})", poly_text(*p, *q).replace('u', var))
            }
        }
    }

    /// Two fields can be mixed when equal or when one of them is the rationals.
    pub fn join(self, other: Field) -> Option<Field> {
        if self == other {
            Some(self)
        } else if self == Field::Rationals {
            Some(other)
        } else if other == Field::Rationals {
            Some(self)
        } else {
            None
        }
    }

    /// The generator `u` of the field as a scalar.
    pub fn generator(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::zero(),
            Field::Linear { c } => Scalar::from_int(-c),
            Field::Quadratic { .. } => Scalar {
                field: *self,
                a: BigRational::zero(),
                b: BigRational::one(),
            },
        }
    }
}

fn poly_text(p: i64, q: i64) -> String {
    let mut s = "u^2".to_string();
    match p.cmp(&0) {
        Ordering::Less if p == -1 => s.push_str("-u"),
        Ordering::Less => s.push_str(&format!("-{}*u", -p)),
        Ordering::Greater if p == 1 => s.push_str("+u"),
        Ordering::Greater => s.push_str(&format!("+{}*u", p)),
        Ordering::Equal => {}
    }
    match q.cmp(&0) {
        Ordering::Less => s.push_str(&format!("-{}", -q)),
        Ordering::Greater => s.push_str(&format!("+{}", q)),
        Ordering::Equal => {}
    }
    s
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// An exact scalar `a + b u`. Rational scalars carry `Field::Rationals` and `b = 0`.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: Field,
    a: BigRational,
    b: BigRational,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.field == other.field)
    }
}
impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { field: Field::Rationals, a: BigRational::zero(), b: BigRational::zero() }
    }
    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }
    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }
    pub fn from_frac(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }
    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar { field: Field::Rationals, a: r, b: BigRational::zero() }
    }
    /// `a + b u` in the given field.
    pub fn from_parts(field: Field, a: BigRational, b: BigRational) -> Scalar {
        match field {
            Field::Quadratic { .. } => Scalar { field, a, b }.canon(),
            Field::Linear { c } => {
                let u = BigRational::from_integer(BigInt::from(-c));
                Scalar::from_rational(a + b * u)
            }
            Field::Rationals => {
                assert!(b.is_zero(), "rational scalar with nonzero u-part");
                Scalar::from_rational(a)
            }
        }
    }

    fn canon(mut self) -> Scalar {
        if self.b.is_zero() {
            self.field = Field::Rationals;
        }
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn re(&self) -> &BigRational {
        &self.a
    }
    pub fn im(&self) -> &BigRational {
        &self.b
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn joined(&self, other: &Scalar) -> Field {
        self.field
            .join(other.field)
            .unwrap_or_else(|| panic!("scalars from different fields: {:?} and {:?}", self.field, other.field))
    }

    pub fn compatible(&self, other: &Scalar) -> bool {
        self.field.join(other.field).is_some()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero scalar");
        if self.b.is_zero() {
            return Scalar::from_rational(self.a.recip());
        }
        // (a + b u)^{-1} = (a + b u') / N with u' = -p - u the conjugate.
        let (p, q) = match self.field {
            Field::Quadratic { p, q } => (rat(p), rat(q)),
            _ => unreachable!(),
        };
        let ca = &self.a - &self.b * &p; // a + b(-p)
        let cb = -self.b.clone();
        // N = (a + b u)(ca + cb u)
        let norm = &self.a * &ca - &self.b * &cb * &q;
        Scalar { field: self.field, a: ca / &norm, b: cb / &norm }.canon()
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact square root inside the field when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        self.sqrt_in(self.field)
    }

    /// Square root inside `field` (which must contain this scalar).
    pub fn sqrt_in(&self, field: Field) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.b.is_zero() {
            if let Some(r) = rat_sqrt(&self.a) {
                return Some(Scalar::from_rational(r));
            }
        }
        let field = if self.b.is_zero() { field } else { self.field };
        let (p, q) = match field {
            Field::Quadratic { p, q } => (rat(p), rat(q)),
            _ => return None,
        };
        // (c + d u)^2 = c^2 - q d^2 + (2cd - p d^2) u ; search d != 0 via D = d^2.
        let d0 = &self.a;
        let d1 = &self.b;
        let two = rat(2);
        let four = rat(4);
        // (p^2 - 4q) D^2 + (2 p d1 - 4 d0) D + d1^2 = 0
        let qa = &p * &p - &four * &q;
        let qb = &two * &p * d1 - &four * d0;
        let qc = d1 * d1;
        let mut cands = Vec::new();
        if qa.is_zero() {
            if !qb.is_zero() {
                cands.push(-qc / qb);
            }
        } else {
            let disc = &qb * &qb - &four * &qa * &qc;
            if let Some(sd) = rat_sqrt(&disc) {
                cands.push((-&qb + &sd) / (&two * &qa));
                cands.push((-&qb - &sd) / (&two * &qa));
            }
        }
        for dd in cands {
            if dd.is_zero() || dd.is_negative() {
                continue;
            }
            if let Some(d) = rat_sqrt(&dd) {
                let c = (d1 + &p * &d * &d) / (&two * &d);
                let s = Scalar { field, a: c, b: d }.canon();
                if &(&s * &s) == self {
                    return Some(s);
                }
            }
        }
        None
    }

    /// Rational text `a/b` or field text `c0+c1*u`.
    pub fn to_text(&self, var: &str) -> String {
        if self.b.is_zero() {
            return fmt_rat(&self.a);
        }
        let bt = if self.b.is_one() {
            var.to_string()
        } else if (-self.b.clone()).is_one() {
            format!("-{var}")
        } else {
            format!("{}*{var}", fmt_rat(&self.b))
        };
        if self.a.is_zero() {
            bt
        } else if bt.starts_with('-') {
            format!("{}{}", fmt_rat(&self.a), bt)
        } else {
            format!("{}+{}", fmt_rat(&self.a), bt)
        }
    }

    /// True when printing needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        !self.b.is_zero() && !self.a.is_zero()
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("u"))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.b.is_zero() && o.b.is_zero() {
            return Scalar::from_rational(&self.a + &o.a);
        }
        let field = self.joined(o);
        Scalar { field, a: &self.a + &o.a, b: &self.b + &o.b }.canon()
    }
}
impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if self.b.is_zero() && o.b.is_zero() {
            return Scalar::from_rational(&self.a - &o.a);
        }
        let field = self.joined(o);
        Scalar { field, a: &self.a - &o.a, b: &self.b - &o.b }.canon()
    }
}
impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.b.is_zero() {
            if o.b.is_zero() {
                return Scalar::from_rational(&self.a * &o.a);
            }
            return Scalar { field: o.field, a: &self.a * &o.a, b: &self.a * &o.b }.canon();
        }
        if o.b.is_zero() {
            return Scalar { field: self.field, a: &self.a * &o.a, b: &self.b * &o.a }.canon();
        }
        let field = self.joined(o);
        let (p, q) = match field {
            Field::Quadratic { p, q } => (rat(p), rat(q)),
            _ => unreachable!(),
        };
        // u^2 = -p u - q
        let bb = &self.b * &o.b;
        let a = &self.a * &o.a - &bb * &q;
        let b = &self.a * &o.b + &self.b * &o.a - &bb * &p;
        Scalar { field, a, b }.canon()
    }
}
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        if self.b.is_zero() && o.b.is_zero() {
            assert!(!o.a.is_zero(), "division by zero scalar");
            return Scalar::from_rational(&self.a / &o.a);
        }
        self * &o.inv()
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, a: -self.a.clone(), b: -self.b.clone() }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, a: -self.a, b: -self.b }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

/// Parses `a`, `a/b`, `c0+c1*u` (the printed forms) in the given field.
pub fn parse_scalar(text: &str, field: Field, var: &str) -> Result<Scalar> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse { line: 0, col: 0, msg: "empty scalar".into() });
    }
    let parse_rat = |s: &str| -> Result<BigRational> {
        let bad = || Error::Parse { line: 0, col: 0, msg: format!("bad rational literal '{s}'") };
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
        }
    };
    if !t.contains(var) {
        return Ok(Scalar::from_rational(parse_rat(&t)?));
    }
    // split at the last sign that starts the u-term (not at index 0)
    let bytes: Vec<char> = t.chars().collect();
    let mut split = 0;
    for (i, c) in bytes.iter().enumerate().skip(1) {
        if (*c == '+' || *c == '-') && bytes[i - 1] != '/' {
            split = i;
        }
    }
    let (re, imt) = if split == 0 { ("", t.as_str()) } else { t.split_at(split) };
    let imt = imt.strip_prefix('+').unwrap_or(imt);
    let coeff = imt.strip_suffix(var).unwrap_or(imt);
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let b = match coeff {
        "" => BigRational::one(),
        "-" => -BigRational::one(),
        c => parse_rat(c)?,
    };
    let a = if re.is_empty() { BigRational::zero() } else { parse_rat(re)? };
    Ok(Scalar::from_parts(field, a, b))
}

