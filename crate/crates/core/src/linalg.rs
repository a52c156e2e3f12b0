//! Exact sparse linear algebra over `Scalar`.
//!
//! Vectors are sorted `(index, coefficient)` lists without zeros. Elimination is
//! deterministic: rows are consumed in the given order and the pivot of a row is
//! its first nonzero column.

use std::collections::HashMap;

use crate::scalar::Scalar;

pub type SparseVec = Vec<(usize, Scalar)>;

/// Adds `f * b` into `a` (both sorted).
pub fn axpy(a: &SparseVec, f: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &SparseVec, f: &Scalar) -> SparseVec {
    if f.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, c)| (*i, c * f)).collect()
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn from_entries(mut e: Vec<(usize, Scalar)>) -> SparseVec {
    e.sort_by_key(|x| x.0);
    let mut out: SparseVec = Vec::with_capacity(e.len());
    for (i, c) in e {
        if let Some(last) = out.last_mut() {
            if last.0 == i {
                last.1 = &last.1 + &c;
                if last.1.is_zero() {
                    out.pop();
                }
                continue;
            }
        }
        if !c.is_zero() {
            out.push((i, c));
        }
    }
    out
}

pub fn get(v: &SparseVec, i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |x| x.0).ok().map(|k| &v[k].1)
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> Scalar {
    let (mut i, mut j) = (0, 0);
    let mut acc = Scalar::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Dense scratch accumulator for row reduction.
struct Scratch {
    dense: Vec<Scalar>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch { dense: vec![Scalar::zero(); n], touched: Vec::new(), mark: vec![false; n] }
    }
    fn load(&mut self, v: &SparseVec) {
        for (i, c) in v {
            self.dense[*i] = c.clone();
            if !self.mark[*i] {
                self.mark[*i] = true;
                self.touched.push(*i);
            }
        }
    }
    fn sub_mult(&mut self, f: &Scalar, row: &SparseVec) {
        for (i, c) in row {
            let d = &self.dense[*i] - &(f * c);
            self.dense[*i] = d;
            if !self.mark[*i] {
                self.mark[*i] = true;
                self.touched.push(*i);
            }
        }
    }
    fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::new();
        for &i in &self.touched {
            self.mark[i] = false;
            let c = std::mem::replace(&mut self.dense[i], Scalar::zero());
            if !c.is_zero() {
                out.push((i, c));
            }
        }
        self.touched.clear();
        out
    }
}

/// Semi-echelon form: every stored row has a distinct pivot (its first nonzero,
/// normalised to 1); rows need not be reduced against later pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
    /// Only columns below this bound may become pivots (for augmented systems).
    pivot_limit: usize,
    reduced: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new(), pivot_row: HashMap::new(), pivot_limit: ncols, reduced: true }
    }
    /// Echelon over `ncols` columns where only columns `< limit` may hold pivots.
    pub fn with_pivot_limit(ncols: usize, limit: usize) -> Echelon {
        let mut e = Echelon::new(ncols);
        e.pivot_limit = limit;
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row.contains_key(&c)
    }
    pub fn row_of_pivot(&self, c: usize) -> Option<usize> {
        self.pivot_row.get(&c).copied()
    }

    fn reduce_in(&self, s: &mut Scratch, v: &SparseVec) -> SparseVec {
        s.load(v);
        // scan columns in increasing order; pivot rows only reach rightwards
        let mut idx: Vec<usize> = v.iter().map(|x| x.0).collect();
        let mut k = 0;
        let mut heap = std::collections::BinaryHeap::new();
        for &i in &idx {
            heap.push(std::cmp::Reverse(i));
        }
        idx.clear();
        let mut last = None;
        while let Some(std::cmp::Reverse(c)) = heap.pop() {
            if last == Some(c) {
                continue;
            }
            last = Some(c);
            k += 1;
            if let Some(&r) = self.pivot_row.get(&c) {
                if s.dense[c].is_zero() {
                    continue;
                }
                let f = s.dense[c].clone();
                let row = &self.rows[r];
                for (i, _) in row.iter().skip(1) {
                    if !s.mark[*i] || s.dense[*i].is_zero() {
                        heap.push(std::cmp::Reverse(*i));
                    }
                }
                s.sub_mult(&f, row);
            }
        }
        let _ = k;
        s.drain()
    }

    /// Remainder of `v` after elimination by the stored pivots.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut s = Scratch::new(self.ncols);
        self.reduce_in(&mut s, v)
    }

    /// Inserts a vector; returns the index of the new row if it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let mut s = Scratch::new(self.ncols);
        self.insert_with(&mut s, v)
    }

    fn insert_with(&mut self, s: &mut Scratch, v: &SparseVec) -> Option<usize> {
        let r = self.reduce_in(s, v);
        let first = r.first()?;
        if first.0 >= self.pivot_limit {
            return None;
        }
        let inv = first.1.inv();
        let row = scale(&r, &inv);
        let p = row[0].0;
        self.pivot_row.insert(p, self.rows.len());
        self.pivots.push(p);
        self.rows.push(row);
        self.reduced = false;
        Some(self.rows.len() - 1)
    }

    /// Row space echelon of the given vectors (in order).
    pub fn from_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a SparseVec>) -> Echelon {
        let mut e = Echelon::new(ncols);
        let mut s = Scratch::new(ncols);
        for v in rows {
            e.insert_with(&mut s, v);
        }
        e
    }

    /// Brings the form to reduced row echelon form (pivot columns are unit columns).
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        // process pivots from the rightmost to the leftmost
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r][0].0));
        let mut s = Scratch::new(self.ncols);
        for (k, &r) in order.iter().enumerate() {
            // reduce row r against all rows with larger pivots (already reduced)
            let row = std::mem::take(&mut self.rows[r]);
            s.load(&row);
            for &r2 in &order[..k] {
                let p2 = self.rows[r2][0].0;
                if p2 <= row[0].0 {
                    continue;
                }
                if s.mark[p2] && !s.dense[p2].is_zero() {
                    let f = s.dense[p2].clone();
                    s.sub_mult(&f, &self.rows[r2]);
                }
            }
            self.rows[r] = s.drain();
        }
        self.reduced = true;
    }

    /// Basis of the annihilator `{f : f . row = 0 for all rows}` in RREF form
    /// with respect to the non-pivot columns (below the pivot limit).
    pub fn annihilator(&mut self) -> Vec<SparseVec> {
        self.make_reduced();
        let mut free_cols: Vec<usize> = (0..self.ncols).filter(|c| !self.is_pivot(*c)).collect();
        free_cols.sort_unstable();
        // column view: for each free column q, entries (pivot, coeff) of rows
        let mut colmap: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for row in &self.rows {
            let p = row[0].0;
            for (c, v) in row.iter().skip(1) {
                colmap.entry(*c).or_default().push((p, -v));
            }
        }
        free_cols
            .into_iter()
            .map(|q| {
                let mut e = colmap.remove(&q).unwrap_or_default();
                e.push((q, Scalar::one()));
                from_entries(e)
            })
            .collect()
    }
}

/// Rank of a list of sparse rows.
pub fn rank(ncols: usize, rows: &[SparseVec]) -> usize {
    Echelon::from_rows(ncols, rows.iter()).rank()
}

/// Kernel of the map whose images of basis vectors are `images` (vectors in a space of dim `target_dim`).
/// Returns kernel vectors in the source coordinates.
pub fn kernel(images: &[SparseVec], target_dim: usize) -> Vec<SparseVec> {
    let n = images.len();
    let mut e = Echelon::with_pivot_limit(target_dim + n, target_dim);
    let mut ker = Vec::new();
    let mut s = Scratch::new(target_dim + n);
    for (k, v) in images.iter().enumerate() {
        let mut aug = v.clone();
        aug.push((target_dim + k, Scalar::one()));
        let r = e.reduce_in(&mut s, &aug);
        match r.first() {
            Some((c, _)) if *c < target_dim => {
                let inv = r[0].1.inv();
                let row = scale(&r, &inv);
                let p = row[0].0;
                e.pivot_row.insert(p, e.rows.len());
                e.pivots.push(p);
                e.rows.push(row);
            }
            Some(_) => {
                ker.push(r.into_iter().map(|(c, v)| (c - target_dim, v)).collect());
            }
            None => unreachable!("augmented vector cannot vanish"),
        }
    }
    ker
}

/// Dense square matrix inverse; `None` if singular.
pub fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pr = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pr.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant of a dense square matrix.
pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            a.swap(col, piv);
            d = -d;
        }
        d = &d * &a[col][col];
        let inv = a[col][col].inv();
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                let pr = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pr.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: &[(usize, i64)]) -> SparseVec {
        from_entries(e.iter().map(|(i, c)| (*i, Scalar::from_int(*c))).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(2, 1)])];
        assert_eq!(rank(3, &rows), 2);
        let ker = kernel(&rows, 3);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0], v(&[(0, -2), (1, 1)]));
    }

    #[test]
    fn annihilator_is_orthogonal() {
        let rows = vec![v(&[(0, 1), (2, 3)]), v(&[(1, 1), (2, -1), (3, 2)])];
        let mut e = Echelon::from_rows(4, rows.iter());
        let ann = e.annihilator();
        assert_eq!(ann.len(), 2);
        for a in &ann {
            for r in &rows {
                assert!(dot(a, r).is_zero());
            }
        }
    }

    #[test]
    fn reduced_form_has_unit_pivot_columns() {
        let rows = [v(&[(0, 1), (1, 1), (2, 1)]), v(&[(1, 1), (2, 2)]), v(&[(2, 5)])];
        let mut e = Echelon::from_rows(3, rows.iter());
        e.make_reduced();
        for (k, r) in e.rows.iter().enumerate() {
            assert_eq!(r.len(), 1, "row {k} not reduced: {r:?}");
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![
            vec![Scalar::from_int(2), Scalar::from_int(1)],
            vec![Scalar::from_int(7), Scalar::from_int(4)],
        ];
        let inv = invert(&m).unwrap();
        assert_eq!(inv[0][0], Scalar::from_int(4));
        assert_eq!(inv[1][0], Scalar::from_int(-7));
        assert_eq!(det(&m), Scalar::from_int(1));
    }
}
