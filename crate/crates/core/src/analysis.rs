//! Degeneracy diagnostics, the duality relation between the weights of a code
//! and its dual, and the cross-definition equivalence report.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::code::{dot, rank_weight, Isometry, RankCode};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::kspace::Matrix;
use crate::weights::{grw_jp, profile, Definition, WeightConfig, WeightProfile};

/// Verdict of the degeneracy test together with its constructive witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degeneracy {
    pub degenerate: bool,
    /// Lexicographically smallest rank-1 word of `C⊥`, scaled into `K^n`.
    pub witness_h: Option<Vec<Elem>>,
    /// Isometry after which every codeword ends in 0.
    pub witness_isometry: Option<Isometry>,
    /// `Rsupp(C) = K^n`.
    pub rsupp_full: bool,
    /// `d_{R,k}(C)` under the JP definition.
    pub top_weight: usize,
    /// `d_{R,1}(C⊥)`, or `None` when `C⊥ = 0`.
    pub dual_min_weight: Option<usize>,
    pub failures: Vec<String>,
}

/// Rank-1 words of `C⊥` are `β·v` with `v ∈ C⊥ ∩ K^n`. Scaling so the first
/// nonzero entry is 1 gives the smallest representative of each line, and it
/// lies in `K^n`.
fn smallest_rank_one_dual_word(c: &RankCode) -> Option<Vec<Elem>> {
    let field = c.field();
    let kf = field.k();
    let restricted = c.dual().restriction();
    restricted
        .vectors(kf)
        .filter_map(|v| {
            let lead = *v.iter().find(|&&x| x != 0)?;
            let inv = kf.inv(lead);
            Some(v.iter().map(|&x| kf.mul(inv, x)).collect::<Vec<_>>())
        })
        .min()
}

/// `A` with columns `e_i` (`i ≠ j`) followed by `h`, where `h_j = 1`. Then the
/// last entry of `xA` is `x · h`, which vanishes on `C` when `h ∈ C⊥`.
fn zeroing_matrix(h: &[Elem], pivot: usize) -> Matrix {
    let n = h.len();
    let mut a = Matrix::zeros(n, n);
    for (col, i) in (0..n).filter(|&i| i != pivot).enumerate() {
        a.set(i, col, 1);
    }
    for (i, &x) in h.iter().enumerate() {
        a.set(i, n - 1, x);
    }
    a
}

pub(crate) fn degeneracy(c: &RankCode) -> Result<Degeneracy> {
    let field = c.field();
    let n = c.n();
    let mut failures = Vec::new();

    let dual = c.dual();
    let dual_min_weight = if dual.k() == 0 {
        None
    } else {
        Some(grw_jp(&dual, 1)?)
    };
    let degenerate = dual_min_weight == Some(1);
    let rsupp_full = c.support().is_full();
    let top_weight = grw_jp(c, c.k())?;

    if degenerate == rsupp_full {
        failures.push(format!(
            "degeneracy: d_1(dual) = {dual_min_weight:?} disagrees with full support = {rsupp_full}"
        ));
    }
    if degenerate != (top_weight < n) {
        failures.push(format!(
            "degeneracy: d_1(dual) = {dual_min_weight:?} disagrees with d_k = {top_weight} < n = {n}"
        ));
    }

    let (mut witness_h, mut witness_isometry) = (None, None);
    if degenerate {
        match smallest_rank_one_dual_word(c) {
            None => failures.push("degeneracy: no rank-1 word of the dual found".into()),
            Some(h) => {
                let pivot = h.iter().position(|&x| x != 0).expect("h is nonzero");
                let iso = Isometry::new(field, 1, zeroing_matrix(&h, pivot))?;
                let image = c.apply_isometry(&iso)?;
                if image.generator().iter_rows().any(|g| g[n - 1] != 0) {
                    failures
                        .push("degeneracy: witness isometry leaves a nonzero last entry".into());
                }
                if rank_weight(field, &h) != 1 || !dual.contains(&h) {
                    failures.push("degeneracy: witness h is not a rank-1 word of the dual".into());
                }
                witness_h = Some(h);
                witness_isometry = Some(iso);
            }
        }
    }

    Ok(Degeneracy {
        degenerate,
        witness_h,
        witness_isometry,
        rsupp_full,
        top_weight,
        dual_min_weight,
        failures,
    })
}

/// Degeneracy test with witnesses. Requires `k ≥ 1`.
pub fn is_degenerate(c: &RankCode) -> Result<Degeneracy> {
    if c.k() == 0 {
        return Err(Error::EmptyCode);
    }
    degeneracy(c)
}

/// Both sides of the weight-set identity between `C` and `C⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub holds: bool,
    /// `{d_r(C) : 1 ≤ r ≤ k}`.
    pub code_weights: Vec<usize>,
    /// `{1..n} \ {n + 1 − d_r(C⊥) : 1 ≤ r ≤ n − k}`.
    pub complement: Vec<usize>,
}

fn duality_from(n: usize, code_jp: &[usize], dual_jp: &[usize]) -> DualityCheck {
    let left: BTreeSet<usize> = code_jp.iter().skip(1).copied().collect();
    let shifted: BTreeSet<usize> = dual_jp.iter().skip(1).map(|&d| n + 1 - d).collect();
    let right: BTreeSet<usize> = (1..=n).filter(|w| !shifted.contains(w)).collect();
    DualityCheck {
        holds: left == right,
        code_weights: left.into_iter().collect(),
        complement: right.into_iter().collect(),
    }
}

fn jp_table(c: &RankCode) -> Result<Vec<usize>> {
    (0..=c.k()).map(|r| grw_jp(c, r)).collect()
}

pub fn duality_check(c: &RankCode) -> Result<DualityCheck> {
    Ok(duality_from(c.n(), &jp_table(c)?, &jp_table(&c.dual())?))
}

/// `C` nondegenerate implies `k·m ≥ n`.
pub fn dimension_bound_check(c: &RankCode) -> Result<bool> {
    let d = degeneracy(c)?;
    Ok(d.degenerate || c.k() * c.field().m() >= c.n())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceRow {
    pub left: Definition,
    pub right: Definition,
    pub r: usize,
    pub agree: bool,
    /// Whether agreement is guaranteed for this code's parameters.
    pub required: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub degenerate: bool,
    pub witness_h: Option<Vec<Elem>>,
    pub witness_isometry: Option<Isometry>,
    pub rsupp_full: bool,
    pub duality: DualityCheck,
    pub equivalence: Vec<EquivalenceRow>,
    pub bound_km_ge_n: bool,
    pub m_ge_n: bool,
    pub failures: Vec<String>,
    pub profile: WeightProfile,
}

impl AnalysisReport {
    pub fn duality_ok(&self) -> bool {
        self.duality.holds
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

const PAIRS: [(Definition, Definition, bool); 4] = [
    (Definition::Jp, Definition::Kmu, false),
    (Definition::Jp, Definition::Closure, false),
    (Definition::Jp, Definition::Os, true),
    (Definition::Closure, Definition::Ducoat, true),
];

pub fn equivalence_report(c: &RankCode, cfg: &WeightConfig) -> Result<AnalysisReport> {
    let prof = profile(c, cfg)?;
    let deg = degeneracy(c)?;
    let mut failures = deg.failures.clone();

    let mut equivalence = Vec::new();
    for (left, right, needs_m_ge_n) in PAIRS {
        let required = !needs_m_ge_n || prof.m_ge_n;
        for r in 0..=prof.k {
            let agree = prof.get(left)[r] == prof.get(right)[r];
            if required && !agree {
                failures.push(format!(
                    "equivalence: {left} = {} but {right} = {} at r = {r}",
                    prof.get(left)[r],
                    prof.get(right)[r]
                ));
            }
            equivalence.push(EquivalenceRow {
                left,
                right,
                r,
                agree,
                required,
            });
        }
    }

    let duality = duality_from(c.n(), &prof.jp, &jp_table(&c.dual())?);
    if !duality.holds {
        failures.push(format!(
            "duality: weights {:?} differ from complement {:?}",
            duality.code_weights, duality.complement
        ));
    }

    let bound_km_ge_n = deg.degenerate || c.k() * c.field().m() >= c.n();
    if !bound_km_ge_n {
        failures.push(format!(
            "bound: nondegenerate code with k·m = {} < n",
            c.k() * c.field().m()
        ));
    }

    for (r, col) in prof.enumerators.iter().enumerate() {
        let first = if r == 0 {
            Some(0)
        } else {
            col.iter().skip(1).position(|&a| a != 0).map(|w| w + 1)
        };
        if first != Some(prof.jp[r]) {
            failures.push(format!(
                "enumerator: first nonzero weight {first:?} but d_{r} = {}",
                prof.jp[r]
            ));
        }
    }

    // orthogonality of the witness is cheap to recheck here
    if let Some(h) = &deg.witness_h {
        let l = c.field().l();
        if c.generator().iter_rows().any(|g| dot(l, g, h) != 0) {
            failures.push("degeneracy: witness h is not orthogonal to the code".into());
        }
    }

    Ok(AnalysisReport {
        degenerate: deg.degenerate,
        witness_h: deg.witness_h,
        witness_isometry: deg.witness_isometry,
        rsupp_full: deg.rsupp_full,
        duality,
        equivalence,
        bound_km_ge_n,
        m_ge_n: prof.m_ge_n,
        failures,
        profile: prof,
    })
}
