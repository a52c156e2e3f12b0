//! Dense univariate polynomials over a scalar field, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Field, Scalar};

pub type UPoly = Vec<Scalar>;

pub fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn is_zero(p: &UPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn degree(p: &UPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => Scalar::zero(),
            })
            .collect(),
    )
}

pub fn neg(a: &UPoly) -> UPoly {
    a.iter().map(|c| -c).collect()
}

pub fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

pub fn eval(p: &UPoly, x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let b = trim(b.clone());
    let db = b.len() - 1;
    let lead_inv = b[db].inv();
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Scalar::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let f = &r[r.len() - 1] * &lead_inv;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &(&f * c);
        }
        q[k] = f;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(p: &UPoly) -> UPoly {
    let p = trim(p.clone());
    match p.last() {
        Some(l) => {
            let inv = l.inv();
            p.iter().map(|c| c * &inv).collect()
        }
        None => p,
    }
}

pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Roots in the coefficient field, with multiplicity collapsed, plus the part
/// of the polynomial whose roots could not be located.
pub fn roots(p: &UPoly, field: Field) -> (Vec<Scalar>, UPoly) {
    let mut p = monic(p);
    let mut out = Vec::new();
    if p.len() <= 1 {
        return (out, Vec::new());
    }
    if p[0].is_zero() {
        out.push(Scalar::zero());
        while p.len() > 1 && p[0].is_zero() {
            p.remove(0);
        }
    }
    // rational roots must annihilate both coordinate polynomials
    let re: Vec<BigRational> = p.iter().map(|c| c.re().clone()).collect();
    let im: Vec<BigRational> = p.iter().map(|c| c.im().clone()).collect();
    let probe = if im.iter().all(|c| c.is_zero()) { re } else { im };
    for cand in rational_root_candidates(&probe) {
        let s = Scalar::from_rational(cand);
        while p.len() > 1 && eval(&p, &s).is_zero() {
            if !out.contains(&s) {
                out.push(s.clone());
            }
            p = divrem(&p, &vec![-&s, Scalar::one()]).0;
        }
    }
    match p.len() {
        0 | 1 => (out, Vec::new()),
        2 => {
            out.push(-&p[0]);
            (out, Vec::new())
        }
        3 => {
            // x^2 + b x + c
            let disc = &(&p[1] * &p[1]) - &(&Scalar::from_int(4) * &p[0]);
            match disc.sqrt_in(field) {
                Some(sq) => {
                    let half = Scalar::from_frac(1, 2);
                    for r in [&(&(-&p[1]) + &sq) * &half, &(&(-&p[1]) - &sq) * &half] {
                        if !out.contains(&r) {
                            out.push(r);
                        }
                    }
                    (out, Vec::new())
                }
                None => (out, p),
            }
        }
        _ => (out, p),
    }
}

fn rational_root_candidates(p: &[BigRational]) -> Vec<BigRational> {
    let p: Vec<BigRational> = {
        let mut v = p.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    if p.len() < 2 {
        return Vec::new();
    }
    // clear denominators
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let Some(k) = ints.iter().position(|c| !c.is_zero()) else { return Vec::new() };
    let a0 = ints[k].abs();
    let an = ints.last().unwrap().abs();
    let (Some(d0), Some(dn)) = (small_divisors(&a0), small_divisors(&an)) else { return Vec::new() };
    let mut out: Vec<BigRational> = Vec::new();
    for a in &d0 {
        for b in &dn {
            for sgn in [1, -1] {
                let c = BigRational::new(BigInt::from(sgn) * a, b.clone());
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let limit = BigInt::from(1_000_000_000_000i64);
    if n > &limit {
        return None;
    }
    let n: i64 = n.try_into().ok()?;
    let mut out = Vec::new();
    let mut d = 1i64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UPoly {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn gcd_and_roots() {
        // (x-2)(x+3) and (x-2)(x-5)
        let a = mul(&p(&[-2, 1]), &p(&[3, 1]));
        let b = mul(&p(&[-2, 1]), &p(&[-5, 1]));
        assert_eq!(gcd(&a, &b), p(&[-2, 1]));
        let (r, rest) = roots(&mul(&a, &p(&[0, 1])), Field::Rationals);
        assert!(rest.is_empty());
        assert_eq!(r.len(), 3);
        let (r, rest) = roots(&p(&[1, 0, 1]), Field::Rationals);
        assert!(r.is_empty());
        assert_eq!(rest.len(), 3);
        let i = Field::from_monic(&[1, 0, 1]).unwrap();
        let (r, rest) = roots(&p(&[1, 0, 1]), i);
        assert!(rest.is_empty());
        assert_eq!(r.len(), 2);
    }
}
