//! Dense matrices and canonical subspaces over a finite field.
//!
//! Matrices carry no field tag; every operation takes the [`Gf`] it should
//! compute in. Subspaces are row spaces stored as their reduced row echelon
//! basis, so structural equality is subspace equality.

use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Elem>>, cols: usize) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        self.iter_rows().map(<[Elem]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// True when every entry is below `bound`, i.e. lies in a subfield whose
    /// encodings are `0..bound`.
    pub fn entries_below(&self, bound: Elem) -> bool {
        self.data.iter().all(|&x| x < bound)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn mul(&self, other: &Matrix, f: &Gf) -> Matrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem], f: &Gf) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(a, x));
            }
        }
        out
    }

    pub fn scale(&self, c: Elem, f: &Gf) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.mul(c, x)).collect(),
        }
    }

    /// In-place Gauss-Jordan elimination; returns the rank. Zero rows end up
    /// at the bottom.
    pub fn rref_in_place(&mut self, f: &Gf) -> usize {
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pivot) = (r..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            self.swap_rows(pivot, r);
            let inv = f.inv(self.get(r, col));
            if inv != 1 {
                for x in self.row_mut(r) {
                    *x = f.mul(*x, inv);
                }
            }
            for i in 0..self.rows {
                let c = self.get(i, col);
                if i == r || c == 0 {
                    continue;
                }
                let c = f.neg(c);
                for j in col..self.cols {
                    let v = f.add(self.get(i, j), f.mul(c, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// The reduced row echelon form with zero rows removed, and the rank.
    pub fn rref(&self, f: &Gf) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place(f);
        m.rows = rank;
        m.data.truncate(rank * m.cols);
        (m, rank)
    }

    pub fn rank(&self, f: &Gf) -> usize {
        self.clone().rref_in_place(f)
    }

    /// Pivot columns of a matrix already in reduced row echelon form.
    pub fn pivots(&self) -> Vec<usize> {
        self.iter_rows()
            .filter_map(|row| row.iter().position(|&x| x != 0))
            .collect()
    }

    /// Basis (as rows) of `{x : self · xᵀ = 0}`.
    pub fn null_space(&self, f: &Gf) -> Matrix {
        let (r, _) = self.rref(f);
        let pivots = r.pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Matrix::zeros(0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            out.push_row(&v);
        }
        out
    }

    /// Basis (as rows) of `{u : u · self = 0}`.
    pub fn left_null_space(&self, f: &Gf) -> Matrix {
        self.transpose().null_space(f)
    }

    pub fn is_invertible(&self, f: &Gf) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn inverse(&self, f: &Gf) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.set(i, n + i, 1);
        }
        aug.rref_in_place(f);
        if (0..n).any(|i| aug.get(i, i) != 1) {
            return None;
        }
        let data = (0..n).flat_map(|i| aug.row(i)[n..].to_vec()).collect();
        Some(Matrix::from_vec(n, n, data))
    }

    pub fn det(&self, f: &Gf) -> Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&i| m.get(i, col) != 0) else {
                return 0;
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = f.neg(det);
            }
            let d = m.get(col, col);
            det = f.mul(det, d);
            let inv = f.inv(d);
            for i in col + 1..n {
                let c = f.neg(f.mul(m.get(i, col), inv));
                if c == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.add(m.get(i, j), f.mul(c, m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// A subspace of `F^n`, stored as its RREF basis without zero rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(n),
        }
    }

    /// Row space of `rows`.
    pub fn from_rows(rows: &Matrix, f: &Gf) -> Subspace {
        Subspace {
            basis: rows.rref(f).0,
        }
    }

    pub fn span(vectors: &[Vec<Elem>], n: usize, f: &Gf) -> Subspace {
        Subspace::from_rows(&Matrix::from_rows(vectors.to_vec(), n), f)
    }

    /// Wraps a matrix that is already in RREF with no zero rows.
    pub(crate) fn from_rref_unchecked(basis: Matrix) -> Subspace {
        Subspace { basis }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.pivots()
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if n != self.ambient() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient(),
                found: n,
            });
        }
        Ok(())
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, v: &[Elem], f: &Gf) -> Result<bool> {
        self.check_ambient(v.len())?;
        let mut v = v.to_vec();
        for (i, p) in self.pivots().into_iter().enumerate() {
            let c = v[p];
            if c == 0 {
                continue;
            }
            let c = f.neg(c);
            for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                *x = f.add(*x, f.mul(c, b));
            }
        }
        Ok(v.iter().all(|&x| x == 0))
    }

    pub fn sum(&self, other: &Subspace, f: &Gf) -> Result<Subspace> {
        self.check_ambient(other.ambient())?;
        Ok(Subspace::from_rows(&self.basis.stack(&other.basis), f))
    }

    /// Intersection via the left kernel of the stacked bases: `(x, y)` with
    /// `xU + yV = 0` gives `xU ∈ U ∩ V`.
    pub fn intersect(&self, other: &Subspace, f: &Gf) -> Result<Subspace> {
        self.check_ambient(other.ambient())?;
        let stacked = self.basis.stack(&other.basis);
        let kernel = stacked.left_null_space(f);
        let a = self.dim();
        let mut rows = Matrix::zeros(0, self.ambient());
        for w in kernel.iter_rows() {
            rows.push_row(&self.basis.vec_mul(&w[..a], f));
        }
        Ok(Subspace::from_rows(&rows, f))
    }

    /// `self ⊆ other`.
    pub fn leq(&self, other: &Subspace, f: &Gf) -> Result<bool> {
        self.check_ambient(other.ambient())?;
        for row in self.basis.iter_rows() {
            if !other.contains(row, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complement under the standard dot product. May meet `self`
    /// nontrivially.
    pub fn orthogonal(&self, f: &Gf) -> Subspace {
        Subspace::from_rows(&self.basis.null_space(f), f)
    }

    /// Every vector of the subspace, in odometer order of the coefficients
    /// (first basis vector's coefficient changes fastest).
    pub fn vectors<'a>(&'a self, f: &'a Gf) -> impl Iterator<Item = Vec<Elem>> + 'a {
        let q = f.order() as u64;
        let count = q.pow(self.dim() as u32);
        (0..count).map(move |mut idx| {
            let mut coeffs = vec![0; self.dim()];
            for c in coeffs.iter_mut() {
                *c = (idx % q) as Elem;
                idx /= q;
            }
            self.basis.vec_mul(&coeffs, f)
        })
    }
}

/// Pivot-column sets of `r`-dimensional RREF bases in `F^n`, lexicographic.
pub fn pivot_sets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All subspaces with the given pivot columns: free entries of the RREF
/// basis run through the field in odometer order, the first free entry in
/// row-major order changing fastest.
pub struct PivotCell<'a> {
    field: &'a Gf,
    n: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<Elem>,
    started: bool,
    done: bool,
}

impl<'a> PivotCell<'a> {
    pub fn new(field: &'a Gf, n: usize, pivots: Vec<usize>) -> PivotCell<'a> {
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in p + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let counter = vec![0; free.len()];
        PivotCell {
            field,
            n,
            pivots,
            free,
            counter,
            started: false,
            done: false,
        }
    }

    pub fn len(&self) -> u128 {
        (self.field.order() as u128).pow(self.free.len() as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn build(&self) -> Subspace {
        let mut m = Matrix::zeros(self.pivots.len(), self.n);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, 1);
        }
        for (&(i, j), &v) in self.free.iter().zip(&self.counter) {
            m.set(i, j, v);
        }
        Subspace::from_rref_unchecked(m)
    }
}

impl Iterator for PivotCell<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.build());
        }
        let order = self.field.order();
        for c in self.counter.iter_mut() {
            *c += 1;
            if *c < order {
                return Some(self.build());
            }
            *c = 0;
        }
        self.done = true;
        None
    }
}

/// Every `r`-dimensional subspace of `F^n` exactly once: pivot sets in
/// lexicographic order, then free entries in odometer order.
pub fn enumerate_subspaces(field: &Gf, n: usize, r: usize) -> impl Iterator<Item = Subspace> + '_ {
    pivot_sets(n, r)
        .into_iter()
        .flat_map(move |p| PivotCell::new(field, n, p))
}

/// Number of `r`-dimensional subspaces of an `n`-dimensional space over
/// `GF(q)`. Panics on `u128` overflow.
pub fn gaussian_binomial(n: usize, r: usize, q: u64) -> u128 {
    if r > n {
        return 0;
    }
    let q = q as u128;
    let mut acc: u128 = 1;
    // Each partial product is itself a Gaussian binomial, hence exact.
    for i in 0..r {
        let num = q.pow((n - i) as u32) - 1;
        let den = q.pow((i + 1) as u32) - 1;
        acc = acc.checked_mul(num).expect("gaussian binomial overflow") / den;
    }
    acc
}
