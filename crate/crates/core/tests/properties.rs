use proptest::prelude::*;

use ncalg::{complete, parse_presentation, Field, NCPoly, Presentation, Scalar, Word};

const GAUSS: Field = Field::Quadratic { p: 0, q: 1 };
const EISENSTEIN: Field = Field::Quadratic { p: -1, q: 1 };

fn scalar_in(field: Field) -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(move |(a, b, c, d)| {
        let re = Scalar::from_frac(a, b);
        if field == Field::Rationals {
            re
        } else {
            &re + &(&field.generator() * &Scalar::from_frac(c, d))
        }
    })
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..=max_len).prop_map(Word)
}

fn poly(field: Field) -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((word(3), scalar_in(field)), 0..5).prop_map(NCPoly::from_terms)
}

fn two_gen(field: Field) -> Presentation {
    let head = match field {
        Field::Rationals => "field Q",
        _ => "field Q[u]/(u^2+1)",
    };
    parse_presentation(&format!("{head}\ngen z1 : (1)\ngen z2 : (1)\n")).unwrap()
}

/// A homogeneous relation of degree `d` with small integer coefficients.
fn relation(d: usize) -> impl Strategy<Value = Vec<(u32, i64)>> {
    prop::collection::vec((0u32..(1 << d), -3i64..=3), 1..4)
}

fn word_of(bits: u32, len: usize) -> Word {
    Word((0..len).map(|i| ((bits >> (len - 1 - i)) & 1) as u8).collect())
}

fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        let pivot: Vec<Scalar> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// `dim A_n = 2^n - dim span{ u r v }` by direct linear algebra in the free algebra.
fn brute_hilbert(rels: &[NCPoly], degs: &[usize], n: usize) -> Vec<usize> {
    (0..=n)
        .map(|m| {
            let mut rows = Vec::new();
            for (r, &d) in rels.iter().zip(degs) {
                if d > m {
                    continue;
                }
                for left in 0..=(m - d) {
                    let right = m - d - left;
                    for lb in 0..(1u32 << left) {
                        for rb in 0..(1u32 << right) {
                            let mut row = vec![Scalar::zero(); 1 << m];
                            let (u, v) = (word_of(lb, left), word_of(rb, right));
                            for (w, c) in r.terms() {
                                let full = u.concat(w).concat(&v);
                                let idx = full.0.iter().fold(0usize, |acc, &b| acc * 2 + b as usize);
                                row[idx] = &row[idx] + c;
                            }
                            rows.push(row);
                        }
                    }
                }
            }
            (1usize << m) - rank(rows)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_axioms(a in scalar_in(EISENSTEIN), b in scalar_in(EISENSTEIN), c in scalar_in(EISENSTEIN)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv(), Scalar::one());
            prop_assert_eq!(&(&b / &a) * &a, b);
        }
    }

    #[test]
    fn gaussian_inverse(a in scalar_in(GAUSS)) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a * &a.inv(), Scalar::one());
        prop_assert_eq!(&GAUSS.generator() * &GAUSS.generator(), Scalar::from_int(-1));
    }

    #[test]
    fn free_algebra_ring_axioms(p in poly(GAUSS), q in poly(GAUSS), r in poly(GAUSS)) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(q.add(&r).mul(&p), q.mul(&p).add(&r.mul(&p)));
        prop_assert_eq!(p.mul(&NCPoly::one()), p.clone());
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn render_parse_round_trip(p in poly(GAUSS)) {
        let pres = two_gen(GAUSS);
        let text = pres.show(&p);
        prop_assert_eq!(pres.parse_expr(&text).unwrap(), p, "{}", text);
    }

    #[test]
    fn normal_form_is_idempotent_and_kills_relations(
        r2 in relation(2), r3 in relation(3), p in poly(Field::Rationals)
    ) {
        let mut pres = two_gen(Field::Rationals);
        let mk = |terms: &[(u32, i64)], d: usize| {
            NCPoly::from_terms(terms.iter().map(|&(b, c)| (word_of(b, d), Scalar::from_int(c))))
        };
        for (t, d) in [(&r2, 2), (&r3, 3)] {
            let f = mk(t, d);
            if !f.is_zero() {
                pres.add_relation(f).unwrap();
            }
        }
        let sys = complete(&pres, 5).unwrap();
        let nf = sys.normal_form(&p).unwrap();
        prop_assert_eq!(sys.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(nf.terms().all(|(w, _)| sys.is_standard(w)));
        for rel in &pres.relations {
            let wrapped = NCPoly::generator(0).mul(&rel.poly).mul(&NCPoly::generator(1));
            prop_assert!(sys.normal_form(&wrapped).unwrap().is_zero());
        }
    }

    #[test]
    fn hilbert_counts_match_linear_algebra(r2 in relation(2), r3a in relation(3), r3b in relation(3)) {
        let mut pres = two_gen(Field::Rationals);
        let mut rels = Vec::new();
        let mut degs = Vec::new();
        for (t, d) in [(&r2, 2usize), (&r3a, 3), (&r3b, 3)] {
            let f = NCPoly::from_terms(t.iter().map(|&(b, c)| (word_of(b, d), Scalar::from_int(c))));
            if !f.is_zero() {
                pres.add_relation(f.clone()).unwrap();
                rels.push(f);
                degs.push(d);
            }
        }
        let got = complete(&pres, 6).unwrap().hilbert_coeffs(6).unwrap();
        prop_assert_eq!(got, brute_hilbert(&rels, &degs, 6));
    }
}
