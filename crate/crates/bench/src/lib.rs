//! Inputs shared by the benchmarks.

use ncalg::classify::{catalog, CatalogName};
use ncalg::{Presentation, Scalar};

/// The regular algebra `A(p)` from the catalog.
pub fn regular_a(p: i64) -> Presentation {
    catalog(CatalogName::A, &[("p".to_string(), Scalar::from_int(p))]).expect("catalog A")
}

/// The algebra `D(v, p)` from the catalog.
pub fn regular_d(v: i64, p: i64) -> Presentation {
    catalog(CatalogName::D, &[("v".to_string(), Scalar::from_int(v)), ("p".to_string(), Scalar::from_int(p))])
        .expect("catalog D")
}
