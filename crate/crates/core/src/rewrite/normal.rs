//! Normal elements: membership checks and a complete search in small bidegrees.

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::{NCPoly, Word};
use crate::scalar::Scalar;
use crate::upoly::{self, UPoly};

use super::{QuotientBasis, ReductionSystem};

#[derive(Clone, Debug, PartialEq)]
pub struct NormalVerdict {
    pub normal: bool,
    /// `z_i a = c a z_i` when such a scalar exists.
    pub left: Vec<Option<Scalar>>,
    /// `a z_i = c z_i a` when such a scalar exists.
    pub right: Vec<Option<Scalar>>,
    /// Generators for which a membership failed.
    pub failures: Vec<String>,
}

fn ratio(num: &SparseVec, den: &SparseVec) -> Option<Scalar> {
    let first = den.first()?;
    let c = &linalg::get(num, first.0).cloned().unwrap_or_else(Scalar::zero) / &first.1;
    if linalg::scale(den, &c) == *num {
        Some(c)
    } else {
        None
    }
}

fn ids_vec(v: Vec<(usize, Scalar)>) -> SparseVec {
    linalg::from_entries(v)
}

/// Checks `z_i a ∈ a A` and `a z_i ∈ A a` for every generator, in normal-form coordinates.
pub fn is_normal(sys: &ReductionSystem, a: &NCPoly, n: i64) -> Result<NormalVerdict> {
    let degs = &sys.degrees;
    if a.is_zero() {
        return Err(Error::Invalid("zero element".into()));
    }
    a.homogeneous_degree(degs).ok_or_else(|| Error::Invalid("element is not homogeneous".into()))?;
    let da = a.terms().next().map(|(w, _)| sys.degree(w)).unwrap_or(0);
    let top = da + sys.order.weights.iter().copied().max().unwrap_or(1);
    if top > n || top > sys.complete_up_to {
        return Err(Error::DegreeBound { bound: n.min(sys.complete_up_to), requested: top });
    }
    let qb = QuotientBasis::new(sys, top)?;
    let ncols = qb.len();
    let mut verdict = NormalVerdict { normal: true, left: Vec::new(), right: Vec::new(), failures: Vec::new() };
    for (g, wt) in sys.order.weights.iter().enumerate() {
        let z = NCPoly::generator(g);
        let za = ids_vec(qb.nf_ids(&z.mul(a))?);
        let az = ids_vec(qb.nf_ids(&a.mul(&z))?);
        let mut right_span = Echelon::new(ncols);
        let mut left_span = Echelon::new(ncols);
        for &w in &qb.by_degree[*wt as usize] {
            let wp = qb.poly_of(w);
            right_span.insert(&ids_vec(qb.nf_ids(&a.mul(&wp))?));
            left_span.insert(&ids_vec(qb.nf_ids(&wp.mul(a))?));
        }
        let name = &sys.names[g];
        if !right_span.reduce(&za).is_empty() {
            verdict.normal = false;
            verdict.failures.push(format!("{name}*a not in a*A"));
        }
        if !left_span.reduce(&az).is_empty() {
            verdict.normal = false;
            verdict.failures.push(format!("a*{name} not in A*a"));
        }
        verdict.left.push(ratio(&za, &az));
        verdict.right.push(ratio(&az, &za));
    }
    Ok(verdict)
}

/// One family of normal elements sharing the same twisting scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFamily {
    /// `z_i a = c_i a z_i`; zero means both products vanish.
    pub scalars: Vec<Scalar>,
    /// Basis of the solution space, as coefficient vectors over `NormalSearch::basis`.
    pub vectors: Vec<Vec<Scalar>>,
    pub elements: Vec<NCPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalSearch {
    pub multidegree: Vec<i64>,
    pub basis: Vec<Word>,
    pub families: Vec<NormalFamily>,
    /// Pencil factors whose roots lie outside the field.
    pub unresolved: Vec<String>,
}

/// Multidegree of a bidegree `(a, b)` in the grading of the system.
pub fn bidegree_multideg(sys: &ReductionSystem, a: i64, b: i64) -> Result<Vec<i64>> {
    let rank = sys.degrees.first().map_or(0, |d| d.len());
    match rank {
        3 => Ok(vec![a + b, a, b]),
        2 => Ok(vec![a, b]),
        _ => Err(Error::Unsupported("bidegree search needs a Z^2 or Z^3 grading".into())),
    }
}

fn det_poly(m: &[Vec<UPoly>]) -> UPoly {
    match m.len() {
        0 => vec![Scalar::one()],
        1 => m[0][0].clone(),
        _ => {
            let mut acc: UPoly = Vec::new();
            for j in 0..m.len() {
                let minor: Vec<Vec<UPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = upoly::mul(&m[0][j], &det_poly(&minor));
                acc = if j % 2 == 0 { upoly::add(&acc, &term) } else { upoly::add(&acc, &upoly::neg(&term)) };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// All normal elements of a bidegree up to scalars, via the pencils
/// `[z_i a] - c [a z_i]` in standard-monomial coordinates.
pub fn search_normal(sys: &ReductionSystem, a: i64, b: i64) -> Result<NormalSearch> {
    let md = bidegree_multideg(sys, a, b)?;
    let top = md[0] + sys.order.weights.iter().copied().max().unwrap_or(1);
    let qb = QuotientBasis::new(sys, top)?;
    let basis_ids = qb.ids_of_multideg(&md).to_vec();
    let dim = basis_ids.len();
    if dim > 3 {
        return Err(Error::Unsupported(format!("coefficient dimension {dim} exceeds 3")));
    }
    let basis: Vec<Word> = basis_ids.iter().map(|&i| qb.words[i].clone()).collect();
    let mut search = NormalSearch { multidegree: md.clone(), basis: basis.clone(), families: Vec::new(), unresolved: Vec::new() };
    if dim == 0 {
        return Ok(search);
    }
    let ngens = sys.names.len();
    // per generator: dense M (z_i m) and N (m z_i), rows over the target basis
    let mut pencils: Vec<(Dense, Dense)> = Vec::new();
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    let mut resolved: Vec<bool> = Vec::new();
    for g in 0..ngens {
        let tmd: Vec<i64> = md.iter().zip(&sys.degrees[g]).map(|(x, y)| x + y).collect();
        let rows = qb.dim_multideg(&tmd);
        let mut m = vec![vec![Scalar::zero(); dim]; rows];
        let mut nn = vec![vec![Scalar::zero(); dim]; rows];
        let z = NCPoly::generator(g);
        for (j, w) in basis.iter().enumerate() {
            let wp = NCPoly::monomial(w.clone(), Scalar::one());
            for (r, c) in qb.coords(&z.mul(&wp), &tmd)? {
                m[r][j] = c;
            }
            for (r, c) in qb.coords(&wp.mul(&z), &tmd)? {
                nn[r][j] = c;
            }
        }
        let gcd = pencil_gcd(&m, &nn);
        if gcd.is_empty() {
            return Err(Error::Unsupported(format!("singular pencil for generator {}", sys.names[g])));
        }
        let (roots, rest) = upoly::roots(&gcd, sys.field);
        let open = upoly::degree(&rest).unwrap_or(0) > 0;
        resolved.push(!open);
        if open {
            search.unresolved.push(format!(
                "{}: factor {} has no roots located in the field",
                sys.names[g],
                render_upoly(&rest, &sys.var)
            ));
        }
        candidates.push(roots);
        pencils.push((m, nn));
    }
    if !search.unresolved.is_empty() && unresolved_is_moot(&pencils, &candidates, &resolved, dim) {
        search.unresolved.clear();
    }
    // intersect kernels for every combination of candidate scalars
    let mut choice = vec![0usize; ngens];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(search);
    }
    loop {
        let scalars: Vec<Scalar> = choice.iter().enumerate().map(|(g, &k)| candidates[g][k].clone()).collect();
        let mut stacked: Vec<Vec<Scalar>> = Vec::new();
        for (g, (m, nn)) in pencils.iter().enumerate() {
            stack_pencil(&mut stacked, m, nn, &scalars[g]);
        }
        let ker = kernel_of(&stacked, dim);
        if !ker.is_empty() {
            let mut e = Echelon::from_rows(dim, ker.iter());
            e.make_reduced();
            let vectors: Vec<Vec<Scalar>> = e
                .rows
                .iter()
                .map(|v| (0..dim).map(|j| linalg::get(v, j).cloned().unwrap_or_else(Scalar::zero)).collect())
                .collect();
            let elements = vectors
                .iter()
                .map(|v| NCPoly::from_terms(basis.iter().cloned().zip(v.iter().cloned())))
                .collect();
            search.families.push(NormalFamily { scalars, vectors, elements });
        }
        // next combination
        let mut g = 0;
        loop {
            if g == ngens {
                return Ok(search);
            }
            choice[g] += 1;
            if choice[g] < candidates[g].len() {
                break;
            }
            choice[g] = 0;
            g += 1;
        }
    }
}

type Dense = Vec<Vec<Scalar>>;

/// Gcd of the maximal minors of `M - c N`; empty when they all vanish.
fn pencil_gcd(m: &[Vec<Scalar>], nn: &[Vec<Scalar>]) -> UPoly {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut gcd: UPoly = Vec::new();
    if rows < cols {
        return gcd;
    }
    for rs in combinations(rows, cols) {
        let sub: Vec<Vec<UPoly>> = rs
            .iter()
            .map(|&r| (0..cols).map(|j| upoly::trim(vec![m[r][j].clone(), -&nn[r][j]])).collect())
            .collect();
        let d = det_poly(&sub);
        if !upoly::is_zero(&d) {
            gcd = if gcd.is_empty() { upoly::monic(&d) } else { upoly::gcd(&gcd, &d) };
        }
    }
    gcd
}

/// Rows of `M - c N`; both `M` and `N` when `c = 0`, since normality then forces `z a = a z = 0`.
fn stack_pencil(out: &mut Dense, m: &Dense, nn: &Dense, c: &Scalar) {
    if c.is_zero() {
        out.extend(m.iter().cloned());
        out.extend(nn.iter().cloned());
    } else {
        for (rm, rn) in m.iter().zip(nn) {
            out.push(rm.iter().zip(rn).map(|(x, y)| x - &(c * y)).collect());
        }
    }
}

fn kernel_of(rows: &Dense, dim: usize) -> Vec<SparseVec> {
    let images: Vec<SparseVec> = (0..dim)
        .map(|j| linalg::from_entries(rows.iter().enumerate().map(|(r, row)| (r, row[j].clone())).collect()))
        .collect();
    linalg::kernel(&images, rows.len())
}

fn restrict(m: &Dense, basis: &[Vec<Scalar>]) -> Dense {
    m.iter()
        .map(|row| basis.iter().map(|k| row.iter().zip(k).fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))).collect())
        .collect()
}

/// True when every choice of located scalars for the resolved generators leaves a common kernel
/// on which some unresolved pencil has no eigenvalue over any extension.
fn unresolved_is_moot(pencils: &[(Dense, Dense)], candidates: &[Vec<Scalar>], resolved: &[bool], dim: usize) -> bool {
    let fixed: Vec<usize> = (0..pencils.len()).filter(|&g| resolved[g]).collect();
    if fixed.is_empty() {
        return false;
    }
    if fixed.iter().any(|&g| candidates[g].is_empty()) {
        return true;
    }
    let mut choice = vec![0usize; fixed.len()];
    loop {
        let mut stacked = Dense::new();
        for (i, &g) in fixed.iter().enumerate() {
            stack_pencil(&mut stacked, &pencils[g].0, &pencils[g].1, &candidates[g][choice[i]]);
        }
        let ker: Dense = kernel_of(&stacked, dim)
            .iter()
            .map(|v| (0..dim).map(|j| linalg::get(v, j).cloned().unwrap_or_else(Scalar::zero)).collect())
            .collect();
        if !ker.is_empty() {
            let ruled_out = (0..pencils.len()).filter(|&g| !resolved[g]).any(|g| {
                let (m, nn) = &pencils[g];
                let gcd = pencil_gcd(&restrict(m, &ker), &restrict(nn, &ker));
                upoly::degree(&gcd) == Some(0)
            });
            if !ruled_out {
                return false;
            }
        }
        let mut i = 0;
        loop {
            if i == fixed.len() {
                return true;
            }
            choice[i] += 1;
            if choice[i] < candidates[fixed[i]].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn render_upoly(p: &UPoly, var: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = if c.is_compound() { format!("({})", c.to_text(var)) } else { c.to_text(var) };
        parts.push(match k {
            0 => cs,
            1 => format!("{cs}*c"),
            _ => format!("{cs}*c^{k}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
