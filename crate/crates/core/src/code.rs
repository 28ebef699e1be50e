//! Rank-metric codes: `L`-linear subspaces of `L^n` and the `K`-linear
//! objects attached to them (rank supports, trace codes, restrictions).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, ExtensionField, Gf, LBasis};
use crate::kspace::{Matrix, Subspace};

/// The `m × n` matrix over `K` whose column `j` holds the coordinates of
/// `c_j` with respect to `basis`.
pub fn expand(field: &ExtensionField, c: &[Elem], basis: &LBasis) -> Matrix {
    let m = field.m();
    let mut out = Matrix::zeros(m, c.len());
    for (j, &x) in c.iter().enumerate() {
        for (i, v) in field.coords_in(basis, x).into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

/// [`expand`] with respect to the power basis.
pub fn expand_power(field: &ExtensionField, c: &[Elem]) -> Matrix {
    let m = field.m();
    let mut out = Matrix::zeros(m, c.len());
    for (j, &x) in c.iter().enumerate() {
        for i in 0..m {
            out.set(i, j, field.coord(x, i));
        }
    }
    out
}

/// Row space of the expansion matrix.
pub fn rank_support(field: &ExtensionField, c: &[Elem]) -> Subspace {
    Subspace::from_rows(&expand_power(field, c), field.k())
}

/// Rank of the expansion matrix.
pub fn rank_weight(field: &ExtensionField, c: &[Elem]) -> usize {
    if field.q() == 2 && c.len() <= 64 {
        binary_rank(field.m(), c)
    } else {
        expand_power(field, c).rank(field.k())
    }
}

// Over K = GF(2) row i of the expansion is bit i of every entry.
fn binary_rank(m: usize, c: &[Elem]) -> usize {
    binary_rank_many(m, &[c])
}

fn binary_rank_many(m: usize, words: &[&[Elem]]) -> usize {
    let mut basis: Vec<u64> = Vec::with_capacity(m * words.len());
    for c in words {
        for i in 0..m {
            let mut x = c
                .iter()
                .enumerate()
                .fold(0u64, |acc, (j, &e)| acc | (((e >> i) & 1) as u64) << j);
            // basis is kept sorted by decreasing leading bit
            for &b in &basis {
                x = x.min(x ^ b);
            }
            if x != 0 {
                let pos = basis.partition_point(|&b| b > x);
                basis.insert(pos, x);
            }
        }
    }
    basis.len()
}

/// `dim Rsupp` of the `L`-span of `rows`: rank of all expansions stacked.
pub fn span_support_weight(field: &ExtensionField, rows: &Matrix) -> usize {
    let n = rows.cols();
    if field.q() == 2 && n <= 64 {
        let words: Vec<&[Elem]> = rows.iter_rows().collect();
        return binary_rank_many(field.m(), &words);
    }
    let mut stacked = Matrix::zeros(0, n);
    for g in rows.iter_rows() {
        stacked = stacked.stack(&expand_power(field, g));
    }
    stacked.rank(field.k())
}

/// Component-wise `x^(q^i)`.
pub fn frobenius_vec(field: &ExtensionField, c: &[Elem], i: usize) -> Vec<Elem> {
    c.iter().map(|&x| field.frobenius(x, i)).collect()
}

/// Component-wise trace `L^n → K^n`.
pub fn trace_vec(field: &ExtensionField, c: &[Elem]) -> Vec<Elem> {
    c.iter().map(|&x| field.trace(x)).collect()
}

pub fn dot(f: &Gf, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn scale_vec(f: &Gf, c: Elem, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

/// Every element of the `L`-span of `rows` (rows assumed independent), in
/// odometer order of the message vector, first coordinate fastest.
pub fn span_codewords<'a>(l: &'a Gf, rows: &'a Matrix) -> impl Iterator<Item = Vec<Elem>> + 'a {
    let q = l.order() as u128;
    let count = q.pow(rows.rows() as u32);
    let k = rows.rows();
    (0..count).map(move |mut idx| {
        let mut msg = vec![0; k];
        for u in msg.iter_mut() {
            *u = (idx % q) as Elem;
            idx /= q;
        }
        rows.vec_mul(&msg, l)
    })
}

/// An `L`-linear code `C ⊆ L^n`, stored by its RREF generator matrix.
#[derive(Clone, Debug)]
pub struct RankCode {
    field: Arc<ExtensionField>,
    gen: Matrix,
}

impl PartialEq for RankCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen && self.field == other.field
    }
}

impl Eq for RankCode {}

impl RankCode {
    /// The row space of `generators`. Dependent rows are allowed.
    pub fn new(field: Arc<ExtensionField>, generators: &Matrix) -> Result<RankCode> {
        if generators.cols() == 0 {
            return Err(Error::EmptyLength);
        }
        let order = field.l().order();
        if let Some(bad) = generators
            .to_rows()
            .into_iter()
            .flatten()
            .find(|&x| x >= order)
        {
            return Err(Error::InvalidElement(bad));
        }
        let gen = generators.rref(field.l()).0;
        Ok(RankCode { field, gen })
    }

    pub fn from_rows(
        field: Arc<ExtensionField>,
        n: usize,
        rows: Vec<Vec<Elem>>,
    ) -> Result<RankCode> {
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        RankCode::new(field, &Matrix::from_rows(rows, n))
    }

    pub fn zero(field: Arc<ExtensionField>, n: usize) -> Result<RankCode> {
        RankCode::new(field, &Matrix::zeros(0, n))
    }

    pub fn full(field: Arc<ExtensionField>, n: usize) -> Result<RankCode> {
        RankCode::new(field, &Matrix::identity(n))
    }

    /// `J ⊗ L`, the `L`-span of a `K`-subspace of `K^n`.
    pub fn extend(field: Arc<ExtensionField>, j: &Subspace) -> Result<RankCode> {
        RankCode::new(field, j.basis())
    }

    pub fn field(&self) -> &Arc<ExtensionField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical (RREF) generator matrix.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// The code as a subspace of `L^n`.
    pub fn as_subspace(&self) -> Subspace {
        Subspace::from_rref_unchecked(self.gen.clone())
    }

    fn l(&self) -> &Gf {
        self.field.l()
    }

    fn k_field(&self) -> &Gf {
        self.field.k()
    }

    fn same_code(&self, gen: &Matrix) -> RankCode {
        RankCode {
            field: self.field.clone(),
            gen: gen.rref(self.field.l()).0,
        }
    }

    pub fn encode(&self, msg: &[Elem]) -> Vec<Elem> {
        self.gen.vec_mul(msg, self.l())
    }

    pub fn contains(&self, c: &[Elem]) -> bool {
        self.as_subspace().contains(c, self.l()).unwrap_or(false)
    }

    pub fn codeword_count(&self) -> u128 {
        (self.l().order() as u128).pow(self.k() as u32)
    }

    /// All codewords, in odometer order of the message vector.
    pub fn codewords(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        span_codewords(self.l(), &self.gen)
    }

    /// `Rsupp(C)`, the sum of the rank supports of the generators.
    pub fn support(&self) -> Subspace {
        let mut rows = Matrix::zeros(0, self.n());
        for g in self.gen.iter_rows() {
            let e = expand_power(&self.field, g);
            rows = rows.stack(&e);
        }
        Subspace::from_rows(&rows, self.k_field())
    }

    /// `wt_R(C) = dim Rsupp(C)`.
    pub fn support_weight(&self) -> usize {
        self.support().dim()
    }

    /// The orthogonal complement in `L^n` under the standard dot product.
    pub fn dual(&self) -> RankCode {
        if self.k() == 0 {
            return RankCode {
                field: self.field.clone(),
                gen: Matrix::identity(self.n()),
            };
        }
        self.same_code(&self.gen.null_space(self.l()))
    }

    /// `C(J)`: codewords orthogonal to every vector of the `K`-subspace `J`.
    pub fn shorten(&self, j: &Subspace) -> Result<RankCode> {
        if j.ambient() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: j.ambient(),
            });
        }
        let l = self.l();
        // u·G·yᵀ = 0 for every basis vector y of J
        let m = self.gen.mul(&j.basis().transpose(), l);
        let kernel = m.left_null_space(l);
        Ok(self.same_code(&kernel.mul(&self.gen, l)))
    }

    /// `Tr(C)`, spanned by `Tr(β g_i)` over a `K`-basis `β` of `L`.
    pub fn trace_code(&self) -> Subspace {
        let l = self.l();
        let mut rows = Matrix::zeros(0, self.n());
        for beta in self.field.power_basis().elems() {
            for g in self.gen.iter_rows() {
                rows.push_row(&trace_vec(&self.field, &scale_vec(l, *beta, g)));
            }
        }
        Subspace::from_rows(&rows, self.k_field())
    }

    /// `C|_K = C ∩ K^n`. Writes the message in `K`-coordinates and solves for
    /// codewords whose non-constant power-basis coordinates all vanish.
    pub fn restriction(&self) -> Subspace {
        let (k, n, m) = (self.k(), self.n(), self.field.m());
        let l = self.l();
        let kf = self.k_field();
        if k == 0 || m == 1 {
            return Subspace::from_rows(&self.gen, kf);
        }
        // row (i, t): coordinates 1..m of α^t · g_i
        let mut images = Vec::with_capacity(k * m);
        let mut eqs = Matrix::zeros(0, n * (m - 1));
        for g in self.gen.iter_rows() {
            for t in 0..m {
                let img = scale_vec(l, self.field.q().pow(t as u32), g);
                let row: Vec<Elem> = img
                    .iter()
                    .flat_map(|&x| (1..m).map(move |i| (x, i)))
                    .map(|(x, i)| self.field.coord(x, i))
                    .collect();
                eqs.push_row(&row);
                images.push(img);
            }
        }
        let kernel = eqs.left_null_space(kf);
        let mut rows = Matrix::zeros(0, n);
        for w in kernel.iter_rows() {
            let mut c = vec![0; n];
            for (&x, img) in w.iter().zip(&images) {
                for (cj, &ij) in c.iter_mut().zip(img) {
                    *cj = l.add(*cj, l.mul(x, ij));
                }
            }
            debug_assert!(c.iter().all(|&x| self.field.in_base(x)));
            rows.push_row(&c);
        }
        Subspace::from_rows(&rows, kf)
    }

    /// `C*`, the span of all Frobenius images of the generators.
    pub fn galois_closure(&self) -> RankCode {
        let mut rows = Matrix::zeros(0, self.n());
        for i in 0..self.field.m() {
            for g in self.gen.iter_rows() {
                rows.push_row(&frobenius_vec(&self.field, g, i));
            }
        }
        self.same_code(&rows)
    }

    pub fn is_galois_closed(&self) -> bool {
        self.galois_closure() == *self
    }

    /// True when the canonical generator matrix has all entries in `K`,
    /// i.e. the code has a basis of vectors in `K^n`.
    pub fn has_base_field_basis(&self) -> bool {
        self.gen.entries_below(self.field.q())
    }

    pub fn intersect(&self, other: &RankCode) -> Result<RankCode> {
        let s = self
            .as_subspace()
            .intersect(&other.as_subspace(), self.l())?;
        Ok(RankCode {
            field: self.field.clone(),
            gen: s.basis().clone(),
        })
    }

    /// The subcode `U · G` for a subspace `U` of the message space `L^k`.
    pub fn subcode(&self, msg: &Subspace) -> Result<RankCode> {
        if msg.ambient() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: msg.ambient(),
            });
        }
        Ok(self.same_code(&msg.basis().mul(&self.gen, self.l())))
    }

    /// Image under `x ↦ λ·(xA)`.
    pub fn apply_isometry(&self, iso: &Isometry) -> Result<RankCode> {
        if iso.matrix.rows() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: iso.matrix.rows(),
            });
        }
        let l = self.l();
        Ok(self.same_code(&self.gen.mul(&iso.matrix, l).scale(iso.scalar, l)))
    }
}

/// A rank isometry `x ↦ λ·(xA)` with `λ ∈ L*` and `A ∈ GL(n, K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    scalar: Elem,
    matrix: Matrix,
}

impl Isometry {
    pub fn new(field: &ExtensionField, scalar: Elem, matrix: Matrix) -> Result<Isometry> {
        if scalar == 0 {
            return Err(Error::ZeroScalar);
        }
        if scalar >= field.l().order() {
            return Err(Error::InvalidElement(scalar));
        }
        if let Some(bad) = matrix
            .to_rows()
            .into_iter()
            .flatten()
            .find(|&x| !field.in_base(x))
        {
            return Err(Error::InvalidElement(bad));
        }
        if !matrix.is_invertible(field.k()) {
            return Err(Error::SingularMatrix);
        }
        Ok(Isometry { scalar, matrix })
    }

    pub fn identity(n: usize) -> Isometry {
        Isometry {
            scalar: 1,
            matrix: Matrix::identity(n),
        }
    }

    pub fn scalar(&self) -> Elem {
        self.scalar
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply_vec(&self, field: &ExtensionField, x: &[Elem]) -> Vec<Elem> {
        scale_vec(field.l(), self.scalar, &self.matrix.vec_mul(x, field.l()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::kspace::enumerate_subspaces;

    fn gf4() -> Arc<ExtensionField> {
        Arc::new(ExtensionField::new(FieldSpec::new(2, 1, 2)).unwrap())
    }

    fn gf8() -> Arc<ExtensionField> {
        Arc::new(
            ExtensionField::new(FieldSpec::new(2, 1, 3).with_l_poly(vec![1, 1, 0, 1])).unwrap(),
        )
    }

    /// The length-4 code over GF(8) spanned by (1,a,a²,a³) and (1,a,a²,a⁴).
    fn example_code() -> RankCode {
        let f = gf8();
        let a = f.alpha();
        let p = |e| f.l().pow(a, e);
        RankCode::from_rows(
            f.clone(),
            4,
            vec![vec![1, a, p(2), p(3)], vec![1, a, p(2), p(4)]],
        )
        .unwrap()
    }

    #[test]
    fn expand_examples() {
        let f = gf4();
        let a = f.alpha();
        assert_eq!(expand_power(&f, &[1, a]), Matrix::identity(2));
        assert!(expand_power(&f, &[0, 0, 0]).is_zero());
        let e = expand_power(&f, &[3, 3, 3]);
        assert_eq!(e.rank(f.k()), 1);
        assert_eq!(expand(&f, &[1, a], &f.power_basis()), Matrix::identity(2));
    }

    #[test]
    fn rank_weight_examples() {
        let f = gf4();
        let a = f.alpha();
        assert_eq!(rank_weight(&f, &[0, 0]), 0);
        assert_eq!(rank_support(&f, &[0, 0]), Subspace::zero(2));
        assert_eq!(rank_weight(&f, &[1, a]), 2);
        assert_eq!(rank_support(&f, &[1, a]), Subspace::full(2));

        let f8 = gf8();
        let a = f8.alpha();
        let c: Vec<Elem> = (0..4).map(|e| f8.l().pow(a, e)).collect();
        assert_eq!(rank_weight(&f8, &c), 3);
    }

    #[test]
    fn binary_fast_path_matches_generic_rank() {
        let f = gf8();
        for x in 0..512u32 {
            let c = [x % 8, (x / 8) % 8, x / 64];
            assert_eq!(rank_weight(&f, &c), expand_power(&f, &c).rank(f.k()));
        }
    }

    #[test]
    fn support_is_basis_independent() {
        let f = Arc::new(ExtensionField::new(FieldSpec::new(3, 1, 2)).unwrap());
        let bases = [
            f.power_basis(),
            f.special_trace_basis(),
            f.dual_basis(&f.power_basis()),
        ];
        for x in 0..81u32 {
            let c = [x % 9, x / 9];
            let reference = rank_support(&f, &c);
            for b in &bases {
                assert_eq!(Subspace::from_rows(&expand(&f, &c, b), f.k()), reference);
            }
        }
    }

    #[test]
    fn example_code_support() {
        let c = example_code();
        assert_eq!(c.k(), 2);
        assert_eq!(c.support(), Subspace::full(4));
        assert_eq!(c.support_weight(), 4);
        let max = c
            .codewords()
            .map(|w| rank_weight(c.field(), &w))
            .max()
            .unwrap();
        assert_eq!(max, 3);
    }

    #[test]
    fn one_dimensional_subcode_support_equals_word_support() {
        let f = gf4();
        for x in 1..16u32 {
            let w = vec![x % 4, x / 4];
            let c = RankCode::from_rows(f.clone(), 2, vec![w.clone()]).unwrap();
            assert_eq!(c.support(), rank_support(&f, &w));
        }
        assert_eq!(RankCode::zero(f, 3).unwrap().support_weight(), 0);
    }

    #[test]
    fn dual_examples() {
        let f = gf4();
        let a = f.alpha();
        let full = RankCode::full(f.clone(), 2).unwrap();
        assert_eq!(full.dual().k(), 0);
        let c = RankCode::from_rows(f.clone(), 2, vec![vec![1, a]]).unwrap();
        let expected = RankCode::from_rows(f.clone(), 2, vec![vec![a, 1]]).unwrap();
        assert_eq!(c.dual(), expected);
        let d = RankCode::from_rows(f.clone(), 2, vec![vec![1, 1]]).unwrap();
        assert_eq!(d.dual(), d);
        assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn shorten_examples() {
        let c = example_code();
        let kf = c.field().k().clone();
        assert_eq!(c.shorten(&Subspace::zero(4)).unwrap(), c);
        assert_eq!(c.shorten(&Subspace::full(4)).unwrap().k(), 0);

        // J = <e4>: codewords whose last entry is zero, found by scanning.
        let j = Subspace::span(&[vec![0, 0, 0, 1]], 4, &kf);
        let short = c.shorten(&j).unwrap();
        let scanned: Vec<Vec<Elem>> = c.codewords().filter(|w| w[3] == 0).collect();
        assert_eq!(scanned.len() as u128, short.codeword_count());
        assert!(scanned.iter().all(|w| short.contains(w)));
        assert_eq!(short.k(), 1);
    }

    #[test]
    fn shorten_rejects_wrong_length() {
        let c = example_code();
        assert!(matches!(
            c.shorten(&Subspace::zero(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn closure_of_base_field_code() {
        let f = gf8();
        let c = RankCode::from_rows(f.clone(), 3, vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(c.galois_closure(), c);
        assert!(c.has_base_field_basis());
        let r = c.restriction();
        assert_eq!(RankCode::extend(f.clone(), &r).unwrap(), c);
        assert_eq!(c.trace_code(), r);
    }

    #[test]
    fn closure_of_gf4_line() {
        let f = gf4();
        let a = f.alpha();
        let c = RankCode::from_rows(f.clone(), 2, vec![vec![1, a]]).unwrap();
        let closure = c.galois_closure();
        assert_eq!(closure, RankCode::full(f.clone(), 2).unwrap());
        assert!(closure.contains(&[1, 3]));
        assert_eq!(c.trace_code(), Subspace::full(2));
        assert_eq!(c.support(), c.trace_code());
        assert_eq!(c.restriction(), Subspace::zero(2));
        assert!(!c.is_galois_closed());
    }

    #[test]
    fn restriction_by_scan() {
        let f = Arc::new(ExtensionField::new(FieldSpec::new(3, 1, 2)).unwrap());
        let kf = f.k().clone();
        for u in enumerate_subspaces(f.l(), 3, 2).step_by(7) {
            let c = RankCode::new(f.clone(), u.basis()).unwrap();
            let scanned: Vec<Vec<Elem>> = c
                .codewords()
                .filter(|w| w.iter().all(|&x| f.in_base(x)))
                .collect();
            let r = c.restriction();
            assert_eq!(scanned.len() as u64, 3u64.pow(r.dim() as u32));
            assert!(scanned.iter().all(|w| r.contains(w, &kf).unwrap()));
        }
    }

    #[test]
    fn isometry_examples() {
        let f = gf4();
        let a = f.alpha();
        let c = RankCode::from_rows(f.clone(), 2, vec![vec![1, a]]).unwrap();
        assert_eq!(c.apply_isometry(&Isometry::identity(2)).unwrap(), c);
        let scaled = c
            .apply_isometry(&Isometry::new(&f, a, Matrix::identity(2)).unwrap())
            .unwrap();
        assert_eq!(scaled, c);
        assert_eq!(
            Isometry::new(&f, 0, Matrix::identity(2)).unwrap_err(),
            Error::ZeroScalar
        );
        assert_eq!(
            Isometry::new(&f, 1, Matrix::from_rows(vec![vec![1, 1], vec![1, 1]], 2)).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn permutation_isometry_preserves_codeword_weights() {
        let c = example_code();
        let f = c.field().clone();
        let perm = Matrix::from_rows(
            vec![
                vec![0, 1, 0, 0],
                vec![0, 0, 0, 1],
                vec![1, 0, 0, 0],
                vec![0, 0, 1, 0],
            ],
            4,
        );
        let iso = Isometry::new(&f, 5, perm).unwrap();
        let image = c.apply_isometry(&iso).unwrap();
        assert_ne!(image.generator(), c.generator());
        for w in c.codewords() {
            let v = iso.apply_vec(&f, &w);
            assert!(image.contains(&v));
            assert_eq!(rank_weight(&f, &v), rank_weight(&f, &w));
        }
    }

    #[test]
    fn construction_errors() {
        let f = gf4();
        assert_eq!(
            RankCode::new(f.clone(), &Matrix::zeros(0, 0)).unwrap_err(),
            Error::EmptyLength
        );
        assert_eq!(
            RankCode::from_rows(f.clone(), 2, vec![vec![4, 0]]).unwrap_err(),
            Error::InvalidElement(4)
        );
        assert!(matches!(
            RankCode::from_rows(f, 2, vec![vec![1]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
