//! Finite fields and the extension tower `K = GF(q) ⊂ L = GF(q^m)`.
//!
//! Every element of a field `GF(p^d)` is encoded as a single integer whose
//! base-`p` digits are its coefficients in the polynomial basis, least
//! significant first. `L` is built as `K[x]/(l_poly)`, so an element of `L`
//! is the integer whose base-`q` digits are its `K`-coordinates in the power
//! basis `{1, α, ..., α^(m-1)}`. Two consequences are used throughout the
//! crate:
//!
//! * the subfield `K` is exactly the set of `L`-encodings below `q`, with the
//!   same integer on both sides;
//! * reading off `K`-coordinates of an `L`-element is digit extraction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kspace::Matrix;

/// Integer encoding of a field element; see the module docs.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

const ADD_TABLE_MAX: u32 = 1024;

/// A finite field `GF(p^d)` with log/antilog multiplication tables.
#[derive(Clone)]
pub struct Gf {
    p: u32,
    order: u32,
    /// `exp[i] = g^i` for a fixed generator `g`, doubled in length so that
    /// `exp[log a + log b]` never needs a reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
    add_table: Option<Vec<Elem>>,
    neg_table: Vec<Elem>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order)
    }
}

impl Gf {
    /// The prime field `GF(p)`.
    pub fn prime(p: u32) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let pm = p as u64;
        Ok(Gf::build(p, p, |a, b| ((a as u64 * b as u64) % pm) as Elem))
    }

    /// The extension `base[x]/(modulus)`; `modulus` is little-endian, monic
    /// and must be irreducible over `base`.
    pub fn extension(base: &Gf, modulus: &[Elem]) -> Result<Gf> {
        let degree = modulus.len().saturating_sub(1);
        if degree == 0 {
            return Err(Error::InvalidSpec(format!(
                "modulus {modulus:?} must have degree at least one"
            )));
        }
        if modulus[degree] != 1 {
            return Err(Error::InvalidSpec(format!(
                "modulus {modulus:?} is not monic"
            )));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= base.order) {
            return Err(Error::InvalidSpec(format!(
                "coefficient {c} is not an element of {base:?}"
            )));
        }
        let order = (base.order as u64).pow(degree as u32);
        if order > MAX_ORDER {
            return Err(Error::InvalidSpec(format!(
                "field of order {order} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        if !is_irreducible(modulus, base) {
            return Err(Error::NotIrreducible(modulus.to_vec()));
        }
        let q = base.order;
        let mul = |a: Elem, b: Elem| -> Elem {
            let a = digits(a, q, degree);
            let b = digits(b, q, degree);
            let mut prod = vec![0; 2 * degree - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                }
            }
            for i in (degree..prod.len()).rev() {
                let c = prod[i];
                if c == 0 {
                    continue;
                }
                for (j, &mj) in modulus[..degree].iter().enumerate() {
                    prod[i - degree + j] = base.sub(prod[i - degree + j], base.mul(c, mj));
                }
                prod[i] = 0;
            }
            undigits(&prod[..degree], q)
        };
        Ok(Gf::build(base.p, order as u32, mul))
    }

    fn build(p: u32, order: u32, mul: impl Fn(Elem, Elem) -> Elem) -> Gf {
        let group = order - 1;
        let pow = |mut a: Elem, mut e: u64| -> Elem {
            let mut acc = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, a);
                }
                a = mul(a, a);
                e >>= 1;
            }
            acc
        };
        let factors = prime_factors(group as u64);
        let generator = (1..order)
            .find(|&g| factors.iter().all(|&r| pow(g, group as u64 / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(2 * group as usize);
        let mut log = vec![0; order as usize];
        let mut x = 1;
        for i in 0..group {
            exp.push(x);
            log[x as usize] = i;
            x = mul(x, generator);
        }
        exp.extend_from_within(..);

        let neg_table = (0..order).map(|a| neg_digits(p, a)).collect();
        let add_table = (p != 2 && order <= ADD_TABLE_MAX).then(|| {
            let mut t = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    t.push(add_digits(p, a, b));
                }
            }
            t
        });
        Gf {
            p,
            order,
            exp,
            log,
            add_table,
            neg_table,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.order + b) as usize]
        } else {
            add_digits(self.p, a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        let group = self.order - 1;
        self.exp[((group - self.log[a as usize]) % group) as usize]
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let group = (self.order - 1) as u64;
        let idx = (self.log[a as usize] as u64 * (e % group)) % group;
        self.exp[idx as usize]
    }
}

/// Field description as it appears in code files. Missing polynomials are
/// filled from the default table by [`ExtensionField::new`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    /// Degree-`s` modulus over `GF(p)`; empty when `s = 1`.
    pub k_poly: Option<Vec<u32>>,
    /// Degree-`m` modulus over `K`, coefficients in the `K` encoding.
    pub l_poly: Option<Vec<Elem>>,
}

impl FieldSpec {
    pub fn new(p: u32, s: u32, m: u32) -> FieldSpec {
        FieldSpec {
            p,
            s,
            m,
            k_poly: None,
            l_poly: None,
        }
    }

    pub fn with_l_poly(mut self, poly: Vec<Elem>) -> FieldSpec {
        self.l_poly = Some(poly);
        self
    }

    pub fn with_k_poly(mut self, poly: Vec<u32>) -> FieldSpec {
        self.k_poly = Some(poly);
        self
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.s)
    }
}

/// Default irreducible polynomials over `GF(p)`, little-endian, indexed by
/// degree `1..=8`, for `p ∈ {2, 3, 5}`.
const DEFAULT_POLYS_2: [&[u32]; 8] = [
    &[1, 1],
    &[1, 1, 1],
    &[1, 1, 0, 1],
    &[1, 1, 0, 0, 1],
    &[1, 0, 1, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 1],
    &[1, 0, 1, 1, 1, 0, 0, 0, 1],
];
const DEFAULT_POLYS_3: [&[u32]; 8] = [
    &[1, 1],
    &[2, 2, 1],
    &[1, 2, 0, 1],
    &[2, 0, 0, 2, 1],
    &[1, 2, 0, 0, 0, 1],
    &[2, 2, 1, 0, 2, 0, 1],
    &[1, 0, 2, 0, 0, 0, 0, 1],
    &[2, 2, 2, 0, 1, 2, 0, 0, 1],
];
const DEFAULT_POLYS_5: [&[u32]; 8] = [
    &[3, 1],
    &[2, 4, 1],
    &[3, 3, 0, 1],
    &[2, 4, 4, 0, 1],
    &[3, 4, 0, 0, 0, 1],
    &[2, 0, 1, 4, 1, 0, 1],
    &[3, 3, 0, 0, 0, 0, 0, 1],
    &[2, 4, 3, 0, 1, 0, 0, 0, 1],
];

/// Entry of the built-in table of irreducible polynomials over `GF(p)`.
pub fn default_prime_poly(p: u32, degree: u32) -> Option<&'static [u32]> {
    let table = match p {
        2 => &DEFAULT_POLYS_2,
        3 => &DEFAULT_POLYS_3,
        5 => &DEFAULT_POLYS_5,
        _ => return None,
    };
    (1..=8)
        .contains(&degree)
        .then(|| table[degree as usize - 1])
}

/// First monic irreducible polynomial of the given degree over `field`, in
/// increasing order of the integer with base-`|field|` digits `c_0, ..., c_{d-1}`.
pub fn first_irreducible(field: &Gf, degree: usize) -> Option<Vec<Elem>> {
    monic_polys(field.order(), degree).find(|f| is_irreducible(f, field))
}

/// The tower `K = GF(q) ⊂ L = GF(q^m)`. Immutable once built.
#[derive(Clone, Debug)]
pub struct ExtensionField {
    spec: FieldSpec,
    k: Gf,
    l: Gf,
    q: u32,
    m: usize,
    /// `q^i mod (|L| - 1)` for `i < m`.
    frob_exp: Vec<u64>,
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for ExtensionField {}

impl ExtensionField {
    pub fn new(spec: FieldSpec) -> Result<ExtensionField> {
        let FieldSpec { p, s, m, .. } = spec;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if s == 0 || m == 0 {
            return Err(Error::InvalidSpec("s and m must be at least one".into()));
        }
        let total = (s as u64).saturating_mul(m as u64);
        let too_big = (p as u64)
            .checked_pow(total.min(64) as u32)
            .is_none_or(|o| o > MAX_ORDER);
        if too_big {
            return Err(Error::InvalidSpec(format!(
                "GF({p}^{total}) exceeds the supported maximum order {MAX_ORDER}"
            )));
        }

        let prime = Gf::prime(p)?;
        let (k, k_poly) = if s == 1 {
            match &spec.k_poly {
                Some(poly) if !poly.is_empty() => {
                    return Err(Error::InvalidSpec("k_poly must be empty when s = 1".into()))
                }
                _ => (prime, Vec::new()),
            }
        } else {
            let poly = match &spec.k_poly {
                Some(poly) => poly.clone(),
                None => default_prime_poly(p, s)
                    .ok_or(Error::NoDefaultPolynomial { p, s: 1, degree: s })?
                    .to_vec(),
            };
            if poly.len() != s as usize + 1 {
                return Err(Error::InvalidSpec(format!(
                    "k_poly {poly:?} must have degree {s}"
                )));
            }
            (Gf::extension(&prime, &poly)?, poly)
        };

        let l_poly = match &spec.l_poly {
            Some(poly) => poly.clone(),
            None if s == 1 => default_prime_poly(p, m)
                .ok_or(Error::NoDefaultPolynomial { p, s, degree: m })?
                .to_vec(),
            None => first_irreducible(&k, m as usize).ok_or(Error::NoDefaultPolynomial {
                p,
                s,
                degree: m,
            })?,
        };
        if l_poly.len() != m as usize + 1 {
            return Err(Error::InvalidSpec(format!(
                "l_poly {l_poly:?} must have degree {m}"
            )));
        }
        let l = Gf::extension(&k, &l_poly)?;

        let q = k.order();
        let group = (l.order() - 1) as u64;
        let mut frob_exp = Vec::with_capacity(m as usize);
        let mut e = 1u64;
        for _ in 0..m {
            frob_exp.push(e);
            e = e * q as u64 % group.max(1);
        }
        Ok(ExtensionField {
            spec: FieldSpec {
                p,
                s,
                m,
                k_poly: Some(k_poly),
                l_poly: Some(l_poly),
            },
            k,
            l,
            q,
            m: m as usize,
            frob_exp,
        })
    }

    /// Resolved specification with both polynomials filled in.
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// The ground field `K`.
    pub fn k(&self) -> &Gf {
        &self.k
    }

    /// The extension field `L`.
    pub fn l(&self) -> &Gf {
        &self.l
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The class of `x` in `L = K[x]/(l_poly)`.
    pub fn alpha(&self) -> Elem {
        if self.m == 1 {
            self.k.neg(self.spec.l_poly.as_ref().unwrap()[0])
        } else {
            self.q
        }
    }

    pub fn in_base(&self, x: Elem) -> bool {
        x < self.q
    }

    /// `x^(q^i)`, the `i`-th power of the Frobenius automorphism of `L/K`.
    pub fn frobenius(&self, x: Elem, i: usize) -> Elem {
        if x == 0 {
            return 0;
        }
        self.l.pow(x, self.frob_exp[i % self.m])
    }

    /// `Tr_{L/K}(x)`, the sum of the Galois conjugates of `x`.
    pub fn trace(&self, x: Elem) -> Elem {
        let t = (0..self.m).fold(0, |acc, i| self.l.add(acc, self.frobenius(x, i)));
        debug_assert!(self.in_base(t));
        t
    }

    /// `K`-coordinates of `x` in the power basis.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        digits(x, self.q, self.m)
    }

    /// `i`-th power-basis coordinate of `x`.
    #[inline]
    pub fn coord(&self, x: Elem, i: usize) -> Elem {
        (x / self.q.pow(i as u32)) % self.q
    }

    pub fn from_coords(&self, coords: &[Elem]) -> Elem {
        debug_assert!(coords.len() <= self.m);
        undigits(coords, self.q)
    }

    /// A `K`-basis of `L`; fails unless `elems` has length `m` and is
    /// linearly independent over `K`.
    pub fn basis(&self, elems: Vec<Elem>, label: impl Into<String>) -> Result<LBasis> {
        if elems.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: elems.len(),
            });
        }
        let coords = self.coord_matrix(&elems);
        let to_basis = coords.inverse(&self.k).ok_or(Error::NotABasis)?;
        Ok(LBasis {
            elems,
            label: label.into(),
            to_basis,
        })
    }

    /// Rows are the power-basis coordinates of `elems`.
    pub fn coord_matrix(&self, elems: &[Elem]) -> Matrix {
        Matrix::from_rows(elems.iter().map(|&x| self.coords(x)).collect(), self.m)
    }

    /// `{1, α, ..., α^(m-1)}`.
    pub fn power_basis(&self) -> LBasis {
        let elems = (0..self.m).map(|i| self.q.pow(i as u32)).collect();
        self.basis(elems, "power").expect("power basis is a basis")
    }

    /// Coordinates of `x` with respect to `basis`.
    pub fn coords_in(&self, basis: &LBasis, x: Elem) -> Vec<Elem> {
        let c = Matrix::from_rows(vec![self.coords(x)], self.m);
        c.mul(&basis.to_basis, &self.k).row(0).to_vec()
    }

    /// `[Tr(a_i b_j)]` over `K`.
    pub fn trace_gram(&self, a: &[Elem], b: &[Elem]) -> Matrix {
        let rows = a
            .iter()
            .map(|&x| b.iter().map(|&y| self.trace(self.l.mul(x, y))).collect())
            .collect();
        Matrix::from_rows(rows, b.len())
    }

    /// The trace-dual basis `b'` with `Tr(b_i b'_j) = δ_ij`.
    pub fn dual_basis(&self, basis: &LBasis) -> LBasis {
        let gram = self.trace_gram(&basis.elems, &basis.elems);
        // The trace form is nondegenerate on a separable extension.
        let x = gram.inverse(&self.k).expect("trace form is nondegenerate");
        let elems = (0..self.m)
            .map(|j| {
                basis.elems.iter().enumerate().fold(0, |acc, (l, &b)| {
                    self.l.add(acc, self.l.mul(x.get(j, l), b))
                })
            })
            .collect();
        self.basis(elems, format!("dual of {}", basis.label))
            .expect("dual of a basis is a basis")
    }

    /// `β_1, ..., β_m` with `Tr(β_1) = 1` and `β_2, ..., β_m` a basis of the
    /// trace kernel. `β_1` is the smallest element of trace one.
    pub fn special_trace_basis(&self) -> LBasis {
        let beta1 = self
            .l
            .elements()
            .find(|&x| self.trace(x) == 1)
            .expect("trace is surjective");
        let traces: Vec<Elem> = (0..self.m)
            .map(|i| self.trace(self.q.pow(i as u32)))
            .collect();
        let kernel = Matrix::from_rows(vec![traces], self.m).null_space(&self.k);
        let mut elems = vec![beta1];
        elems.extend((0..kernel.rows()).map(|i| self.from_coords(kernel.row(i))));
        self.basis(elems, "trace").expect("trace basis is a basis")
    }

    /// `l × l` matrix with entry `(i, j) = elems[j]^(q^i)`.
    pub fn moore_matrix(&self, elems: &[Elem]) -> Matrix {
        let rows = (0..elems.len())
            .map(|i| elems.iter().map(|&x| self.frobenius(x, i)).collect())
            .collect();
        Matrix::from_rows(rows, elems.len())
    }
}

/// A `K`-basis of `L`.
#[derive(Clone, Debug)]
pub struct LBasis {
    elems: Vec<Elem>,
    label: String,
    /// Inverse of the coordinate matrix of `elems`.
    to_basis: Matrix,
}

impl LBasis {
    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn digits(mut x: Elem, base: u32, len: usize) -> Vec<Elem> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = x % base;
        x /= base;
    }
    out
}

pub(crate) fn undigits(ds: &[Elem], base: u32) -> Elem {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d)
}

fn add_digits(p: u32, mut a: u32, mut b: u32) -> u32 {
    let (mut out, mut place) = (0, 1);
    while a != 0 || b != 0 {
        out += ((a % p + b % p) % p) * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

fn neg_digits(p: u32, mut a: u32) -> u32 {
    let (mut out, mut place) = (0, 1);
    while a != 0 {
        out += ((p - a % p) % p) * place;
        place *= p;
        a /= p;
    }
    out
}

/// Monic polynomials of the given degree over a field of `order` elements.
fn monic_polys(order: u32, degree: usize) -> impl Iterator<Item = Vec<Elem>> {
    let count = (order as u64).pow(degree as u32);
    (0..count).map(move |mut idx| {
        let mut poly = vec![0; degree + 1];
        for c in poly.iter_mut().take(degree) {
            *c = (idx % order as u64) as Elem;
            idx /= order as u64;
        }
        poly[degree] = 1;
        poly
    })
}

/// Remainder of `f` modulo the monic polynomial `g`.
pub fn poly_rem_monic(f: &[Elem], g: &[Elem], field: &Gf) -> Vec<Elem> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (j, &gj) in g.iter().enumerate() {
                r[shift + j] = field.sub(r[shift + j], field.mul(lead, gj));
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree at most `deg f / 2`.
pub fn is_irreducible(f: &[Elem], field: &Gf) -> bool {
    let mut f = f.to_vec();
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    let degree = f.len() - 1;
    if degree == 0 {
        return false;
    }
    // Normalize to monic so remainders against monic divisors are exact.
    let lead_inv = field.inv(f[degree]);
    let f: Vec<Elem> = f.iter().map(|&c| field.mul(c, lead_inv)).collect();
    (1..=degree / 2).all(|d| {
        monic_polys(field.order(), d).all(|g| poly_rem_monic(&f, &g, field).iter().any(|&c| c != 0))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> ExtensionField {
        ExtensionField::new(FieldSpec::new(2, 1, 2).with_l_poly(vec![1, 1, 1])).unwrap()
    }

    #[test]
    fn make_small_fields() {
        let f = gf4();
        assert_eq!(f.l().order(), 4);
        assert_eq!(f.q(), 2);
        let f8 =
            ExtensionField::new(FieldSpec::new(2, 1, 3).with_l_poly(vec![1, 1, 0, 1])).unwrap();
        let a = f8.alpha();
        // α^3 = 1 + α
        assert_eq!(f8.l().pow(a, 3), f8.from_coords(&[1, 1, 0]));
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(
            ExtensionField::new(FieldSpec::new(4, 1, 2)).unwrap_err(),
            Error::NotPrime(4)
        );
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        let err = ExtensionField::new(FieldSpec::new(2, 1, 2).with_l_poly(vec![1, 0, 1]));
        assert_eq!(err.unwrap_err(), Error::NotIrreducible(vec![1, 0, 1]));
    }

    #[test]
    fn default_table_is_irreducible() {
        for p in [2, 3, 5] {
            let prime = Gf::prime(p).unwrap();
            for d in 1..=8 {
                let poly = default_prime_poly(p, d).unwrap();
                assert_eq!(poly.len(), d as usize + 1);
                assert!(is_irreducible(poly, &prime), "p={p} d={d} {poly:?}");
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        for (p, s, m) in [(2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 2, 1)] {
            let f = ExtensionField::new(FieldSpec::new(p, s, m)).unwrap();
            let l = f.l();
            for a in l.elements() {
                assert_eq!(l.add(a, l.neg(a)), 0);
                if a != 0 {
                    assert_eq!(l.mul(a, l.inv(a)), 1);
                }
                for b in l.elements() {
                    assert_eq!(l.add(a, b), l.add(b, a));
                    assert_eq!(l.mul(a, b), l.mul(b, a));
                    for c in l.elements().step_by(3) {
                        assert_eq!(l.mul(a, l.add(b, c)), l.add(l.mul(a, b), l.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn base_field_embeds_as_low_integers() {
        let f = ExtensionField::new(FieldSpec::new(3, 1, 2)).unwrap();
        for a in f.k().elements() {
            for b in f.k().elements() {
                assert_eq!(f.k().mul(a, b), f.l().mul(a, b));
                assert_eq!(f.k().add(a, b), f.l().add(a, b));
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let f = gf4();
        let a = f.alpha();
        assert_eq!(f.coords(f.frobenius(a, 1)), vec![1, 1]);
        assert_eq!(f.frobenius(0, 1), 0);
        for x in f.k().elements() {
            assert_eq!(f.frobenius(x, 1), x);
        }
    }

    #[test]
    fn trace_examples() {
        let f = gf4();
        assert_eq!(f.trace(0), 0);
        assert_eq!(f.trace(f.alpha()), 1);
        assert_eq!(f.trace(1), 0);
    }

    #[test]
    fn dual_basis_of_gf4_power_basis() {
        let f = gf4();
        let dual = f.dual_basis(&f.power_basis());
        // {a + 1, 1}
        assert_eq!(dual.elems(), &[3, 1]);
    }

    #[test]
    fn self_dual_basis_is_fixed() {
        // GF(8): the normal basis {a^3, a^5, a^6} for a^3 = a + 1 is self-dual.
        let f = ExtensionField::new(FieldSpec::new(2, 1, 3)).unwrap();
        let a = f.alpha();
        let elems: Vec<Elem> = [3, 5, 6].iter().map(|&e| f.l().pow(a, e)).collect();
        let gram = f.trace_gram(&elems, &elems);
        assert_eq!(gram, Matrix::identity(3));
        let b = f.basis(elems.clone(), "normal").unwrap();
        assert_eq!(f.dual_basis(&b).elems(), elems.as_slice());
    }

    #[test]
    fn special_trace_basis_examples() {
        let f = gf4();
        let b = f.special_trace_basis();
        assert_eq!(b.elems(), &[f.alpha(), 1]);
        let one = ExtensionField::new(FieldSpec::new(3, 1, 1)).unwrap();
        assert_eq!(one.special_trace_basis().elems(), &[1]);
    }

    #[test]
    fn moore_matrix_examples() {
        let f = gf4();
        let a = f.alpha();
        let mm = f.moore_matrix(&[1, a]);
        assert_eq!(mm, Matrix::from_rows(vec![vec![1, a], vec![1, 3]], 2));
        assert_eq!(mm.det(f.l()), 1);
        assert!(!f.moore_matrix(&[1, 1]).is_invertible(f.l()));
        assert!(f.moore_matrix(&[a]).is_invertible(f.l()));
    }

    #[test]
    fn basis_validation() {
        let f = gf4();
        assert_eq!(f.basis(vec![1, 1], "bad").unwrap_err(), Error::NotABasis);
        assert!(matches!(
            f.basis(vec![1], "short"),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coordinates_in_other_basis() {
        let f = ExtensionField::new(FieldSpec::new(3, 1, 3)).unwrap();
        let b = f.special_trace_basis();
        for x in f.l().elements() {
            let c = f.coords_in(&b, x);
            let back = c
                .iter()
                .zip(b.elems())
                .fold(0, |acc, (&ci, &bi)| f.l().add(acc, f.l().mul(ci, bi)));
            assert_eq!(back, x);
        }
    }

    #[test]
    fn default_extension_over_nonprime_base() {
        let f = ExtensionField::new(FieldSpec::new(2, 2, 3)).unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.l().order(), 64);
        assert_eq!(f.spec().k_poly.as_deref(), Some(&[1, 1, 1][..]));
        let lp = f.spec().l_poly.clone().unwrap();
        assert!(is_irreducible(&lp, f.k()));
    }
}
