use std::path::PathBuf;
use std::time::Instant;

use ncalg::barext::{betti_minimal, betti_numbers, hilbert_betti_product, resolution_shape, BarComplex};
use ncalg::{complete, parse_presentation, Presentation};

fn pres(name: &str) -> Presentation {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    parse_presentation(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn a2_betti_both_routes() {
    let sys = complete(&pres("A_2.pres"), 10).unwrap();
    let t = Instant::now();
    let bar = betti_numbers(&sys, 5, 7).unwrap();
    eprintln!("bar {:?}", t.elapsed());
    assert_eq!(bar.rows(), vec![(0, 0, 1), (1, 1, 2), (2, 3, 1), (2, 4, 1), (3, 6, 2), (4, 7, 1)]);
    let t = Instant::now();
    let res = betti_minimal(&sys, 5, 10).unwrap();
    eprintln!("res {:?}", t.elapsed());
    assert_eq!(res.rows(), bar.rows());
    let shape = resolution_shape(&res, 4);
    assert_eq!(shape.l, Some(7));
    let h = sys.hilbert_coeffs(10).unwrap();
    let mut one = vec![0i64; 11];
    one[0] = 1;
    assert_eq!(hilbert_betti_product(&res, &h), one);
}

#[test]
fn a2_bar_squares_to_zero_and_euler() {
    let sys = complete(&pres("A_2.pres"), 7).unwrap();
    let mut bar = BarComplex::new(&sys, 7).unwrap();
    assert!(bar.d_squared_failures().unwrap().is_empty());
    let b = bar.betti(7).unwrap();
    for n in 1..=7 {
        let e: i64 = (0..=7).map(|s| if s % 2 == 0 { b.by_degree(s, n) as i64 } else { -(b.by_degree(s, n) as i64) }).sum();
        assert_eq!(bar.euler(n), e, "n={n}");
    }
}
