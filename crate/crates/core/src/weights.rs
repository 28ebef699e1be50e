//! Generalized rank weights under five definitions, and the generalized rank
//! weight enumerators.
//!
//! Every definition is computed on its own terms by exhaustive enumeration:
//! no value is derived from another through a proven equivalence, so the
//! equivalences stay checkable. Subcodes of dimension `r` are enumerated as
//! canonical `r`-dimensional subspaces `U` of the message space `L^k` and
//! mapped to `U · G`.
//!
//! | definition | value                                               |
//! |------------|-----------------------------------------------------|
//! | `jp`       | `min_D wt_R(D)`                                     |
//! | `kmu`      | `min { dim V : V = V*, dim(C ∩ V) ≥ r }`            |
//! | `os`       | `min_D max_{d ∈ D} wt_R(d)`                         |
//! | `ducoat`   | `min_D max_{d ∈ D*} wt_R(d)`                        |
//! | `closure`  | `min_D dim D*`                                      |

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{frobenius_vec, rank_weight, span_codewords, span_support_weight, RankCode};
use crate::error::{Error, Result};
use crate::gf::{Elem, ExtensionField};
use crate::kspace::{enumerate_subspaces, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Definition {
    Jp,
    Kmu,
    Os,
    Ducoat,
    Closure,
}

impl Definition {
    pub const ALL: [Definition; 5] = [
        Definition::Jp,
        Definition::Kmu,
        Definition::Os,
        Definition::Ducoat,
        Definition::Closure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Definition::Jp => "jp",
            Definition::Kmu => "kmu",
            Definition::Os => "os",
            Definition::Ducoat => "ducoat",
            Definition::Closure => "closure",
        }
    }
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Definition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Definition::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                format!("unknown definition `{s}` (expected jp, kmu, os, ducoat or closure)")
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightConfig {
    /// Largest number of codewords a max-scan may visit in one subcode
    /// before giving up with [`Error::Infeasible`].
    pub cutoff: u64,
}

impl Default for WeightConfig {
    fn default() -> Self {
        WeightConfig { cutoff: 1 << 20 }
    }
}

fn check_r(c: &RankCode, r: usize) -> Result<()> {
    if r > c.k() {
        return Err(Error::RankOutOfRange { r, k: c.k() });
    }
    Ok(())
}

/// Generator rows of every `r`-dimensional subcode, in canonical order.
pub fn subcodes(c: &RankCode, r: usize) -> Result<Vec<Matrix>> {
    check_r(c, r)?;
    let l = c.field().l();
    Ok(enumerate_subspaces(l, c.k(), r)
        .map(|u| u.basis().mul(c.generator(), l))
        .collect())
}

/// Basis of `D*` for the subcode spanned by `rows`.
fn closure_rows(field: &ExtensionField, rows: &Matrix) -> Matrix {
    let mut all = Matrix::zeros(0, rows.cols());
    for i in 0..field.m() {
        for g in rows.iter_rows() {
            all.push_row(&frobenius_vec(field, g, i));
        }
    }
    all.rref(field.l()).0
}

/// Subcodes are scanned lazily and the scan stops at a subcode of weight
/// `r`, the least possible since `D ⊆ Rsupp(D) ⊗ L`.
pub fn grw_jp(c: &RankCode, r: usize) -> Result<usize> {
    check_r(c, r)?;
    let field = c.field();
    let l = field.l();
    let best = AtomicUsize::new(usize::MAX);
    enumerate_subspaces(l, c.k(), r).par_bridge().any(|u| {
        let w = span_support_weight(field, &u.basis().mul(c.generator(), l));
        best.fetch_min(w, Ordering::Relaxed);
        w == r
    });
    Ok(best.into_inner())
}

fn jp_over(field: &ExtensionField, ds: &[Matrix]) -> usize {
    ds.par_iter()
        .map(|d| span_support_weight(field, d))
        .min()
        .expect("at least one subcode")
}

/// `min { dim J : dim_L(C ∩ (J ⊗ L)) ≥ r }` over `K`-subspaces `J` of `K^n`;
/// the Galois-closed subspaces of `L^n` are exactly the `J ⊗ L`.
pub fn grw_kmu(c: &RankCode, r: usize) -> Result<usize> {
    check_r(c, r)?;
    let field = c.field();
    for dim in 0..=c.n() {
        let js: Vec<_> = enumerate_subspaces(field.k(), c.n(), dim).collect();
        let found = js.par_iter().any(|j| {
            let v = RankCode::extend(field.clone(), j).expect("J has length n");
            c.intersect(&v).expect("same length").k() >= r
        });
        if found {
            return Ok(dim);
        }
    }
    unreachable!("J = K^n gives C ∩ L^n = C")
}

pub fn grw_closure(c: &RankCode, r: usize) -> Result<usize> {
    Ok(closure_over(c.field(), &subcodes(c, r)?))
}

fn closure_over(field: &ExtensionField, ds: &[Matrix]) -> usize {
    ds.par_iter()
        .map(|d| closure_rows(field, d).rows())
        .min()
        .expect("at least one subcode")
}

pub fn grw_os(c: &RankCode, r: usize, cfg: &WeightConfig) -> Result<usize> {
    os_over(c.field(), &subcodes(c, r)?, r, cfg)
}

fn os_over(field: &ExtensionField, ds: &[Matrix], r: usize, cfg: &WeightConfig) -> Result<usize> {
    min_of_max_rank(field, ds, |d| d.clone(), Definition::Os, r, cfg)
}

pub fn grw_ducoat(c: &RankCode, r: usize, cfg: &WeightConfig) -> Result<usize> {
    ducoat_over(c.field(), &subcodes(c, r)?, r, cfg)
}

fn ducoat_over(
    field: &ExtensionField,
    ds: &[Matrix],
    r: usize,
    cfg: &WeightConfig,
) -> Result<usize> {
    min_of_max_rank(
        field,
        ds,
        |d| closure_rows(field, d),
        Definition::Ducoat,
        r,
        cfg,
    )
}

pub fn grw(def: Definition, c: &RankCode, r: usize, cfg: &WeightConfig) -> Result<usize> {
    match def {
        Definition::Jp => grw_jp(c, r),
        Definition::Kmu => grw_kmu(c, r),
        Definition::Os => grw_os(c, r, cfg),
        Definition::Ducoat => grw_ducoat(c, r, cfg),
        Definition::Closure => grw_closure(c, r),
    }
}

enum Scan {
    /// Exact maximum.
    Max(usize),
    /// Stopped once the running maximum reached the current best minimum.
    AtLeast,
    /// Cutoff reached; the value is the maximum over the scanned prefix.
    Unresolved(usize),
}

/// Messages `(1, β, β², …)` for `β = α^t`, tried before the exhaustive scan.
/// The odometer order visits low-rank words first, while these combinations
/// usually reach the maximum at once.
const PROBES: u64 = 12;

fn probe_words<'a>(
    field: &'a ExtensionField,
    rows: &'a Matrix,
) -> impl Iterator<Item = Vec<Elem>> + 'a {
    let l = field.l();
    (0..PROBES).map(move |t| {
        let beta = l.pow(field.alpha(), t);
        let msg: Vec<Elem> = (0..rows.rows()).map(|i| l.pow(beta, i as u64)).collect();
        rows.vec_mul(&msg, l)
    })
}

/// Maximum codeword rank in the span of `rows`. Stops early when the running
/// maximum reaches `bound` (a proven upper bound, so the result stays exact)
/// or `prune_at` (the subcode can no longer lower the minimum). Only the
/// exhaustive part counts toward `cutoff`.
fn max_rank_scan(
    field: &ExtensionField,
    rows: &Matrix,
    bound: usize,
    prune_at: usize,
    cutoff: u64,
) -> Scan {
    let mut best = 0;
    if bound == 0 {
        return Scan::Max(0);
    }
    let probes = probe_words(field, rows).map(|w| (None, w));
    let all = span_codewords(field.l(), rows)
        .enumerate()
        .map(|(i, w)| (Some(i as u64), w));
    for (seen, w) in probes.chain(all) {
        if seen == Some(cutoff) {
            return Scan::Unresolved(best);
        }
        let r = rank_weight(field, &w);
        if r > best {
            best = r;
            if best >= bound {
                return Scan::Max(best);
            }
            if best >= prune_at {
                return Scan::AtLeast;
            }
        }
    }
    Scan::Max(best)
}

/// `min_D max_{d ∈ span(scan_rows(D))} rk(d)`, a branch-and-bound over the
/// subcodes that never reports a partial maximum as exact.
fn min_of_max_rank(
    field: &ExtensionField,
    ds: &[Matrix],
    scan_rows: impl Fn(&Matrix) -> Matrix + Sync,
    definition: Definition,
    r: usize,
    cfg: &WeightConfig,
) -> Result<usize> {
    let best = AtomicUsize::new(usize::MAX);
    let scans: Vec<Scan> = ds
        .par_iter()
        .map(|d| {
            let rows = scan_rows(d);
            // every word's support lies in the span's support, of dim ≤ n
            let bound = span_support_weight(field, &rows).min(field.m());
            let scan = max_rank_scan(
                field,
                &rows,
                bound,
                best.load(Ordering::Relaxed),
                cfg.cutoff,
            );
            if let Scan::Max(v) = scan {
                best.fetch_min(v, Ordering::Relaxed);
            }
            scan
        })
        .collect();
    settle(&scans, best.into_inner()).ok_or(Error::Infeasible {
        definition,
        r,
        cutoff: cfg.cutoff,
    })
}

/// The minimum is exact unless a cut-off subcode might still lie below it.
fn settle(scans: &[Scan], best: usize) -> Option<usize> {
    let open = scans
        .iter()
        .any(|s| matches!(s, Scan::Unresolved(partial) if *partial < best));
    (!open).then_some(best)
}

/// `A_w^{R,r}` for `w = 0..=n`: the number of `r`-dimensional subcodes of
/// support weight `w`.
pub fn enumerator(c: &RankCode, r: usize) -> Result<Vec<u64>> {
    Ok(enumerator_over(c.field(), c.n(), &subcodes(c, r)?))
}

fn enumerator_over(field: &ExtensionField, n: usize, ds: &[Matrix]) -> Vec<u64> {
    ds.par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, d| {
                acc[span_support_weight(field, d)] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Every generalized rank weight `d[def][r]` for `r = 0..=k` and every
/// enumerator `A[r][w]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    pub n: usize,
    pub k: usize,
    pub m_ge_n: bool,
    pub jp: Vec<usize>,
    pub kmu: Vec<usize>,
    pub os: Vec<usize>,
    pub ducoat: Vec<usize>,
    pub closure: Vec<usize>,
    pub enumerators: Vec<Vec<u64>>,
}

impl WeightProfile {
    pub fn get(&self, def: Definition) -> &[usize] {
        match def {
            Definition::Jp => &self.jp,
            Definition::Kmu => &self.kmu,
            Definition::Os => &self.os,
            Definition::Ducoat => &self.ducoat,
            Definition::Closure => &self.closure,
        }
    }
}

pub fn profile(c: &RankCode, cfg: &WeightConfig) -> Result<WeightProfile> {
    let field = c.field();
    let (n, k) = (c.n(), c.k());
    let mut p = WeightProfile {
        n,
        k,
        m_ge_n: field.m() >= n,
        jp: Vec::with_capacity(k + 1),
        kmu: Vec::with_capacity(k + 1),
        os: Vec::with_capacity(k + 1),
        ducoat: Vec::with_capacity(k + 1),
        closure: Vec::with_capacity(k + 1),
        enumerators: Vec::with_capacity(k + 1),
    };
    for r in 0..=k {
        let ds = subcodes(c, r)?;
        p.jp.push(jp_over(field, &ds));
        p.kmu.push(grw_kmu(c, r)?);
        p.os.push(os_over(field, &ds, r, cfg)?);
        p.ducoat.push(ducoat_over(field, &ds, r, cfg)?);
        p.closure.push(closure_over(field, &ds));
        p.enumerators.push(enumerator_over(field, n, &ds));
    }
    Ok(p)
}
