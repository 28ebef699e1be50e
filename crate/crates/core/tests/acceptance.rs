//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use rank_weights::analysis::{duality_check, is_degenerate};
use rank_weights::cli::format::{example_text, parse_code, to_text};
use rank_weights::cli::sweep::{
    check_conditional, check_degeneracy, check_dimension_bound, check_enumerators,
    check_full_support, check_galois_four_way, check_isometry_invariance, check_shortening,
    check_single_vector, check_trace_identity, check_unconditional, exhaustive_codes, random_codes,
    random_isometry, Lcg, Outcome,
};
use rank_weights::code::{span_codewords, RankCode};
use rank_weights::gf::{ExtensionField, FieldSpec};
use rank_weights::kspace::Matrix;
use rank_weights::weights::{grw_jp, grw_os, profile, WeightConfig, WeightProfile};

struct Entry {
    code: RankCode,
    profile: WeightProfile,
}

struct Corpus {
    entries: Vec<Entry>,
    build_time: Duration,
}

fn gf(p: u32, m: u32) -> Arc<ExtensionField> {
    Arc::new(ExtensionField::new(FieldSpec::new(p, 1, m)).unwrap())
}

/// Every code with q = 2, m ∈ {2, 3}, n ≤ 3, k ≤ 2, then 120 random codes
/// each for q = 2 and q = 3 with m ≤ 4, n ≤ 4, k ≤ 3.
fn corpus() -> Corpus {
    let start = Instant::now();
    let mut codes = Vec::new();
    for m in [2, 3] {
        let f = gf(2, m);
        for n in 1..=3 {
            for k in 0..=n.min(2) {
                codes.extend(exhaustive_codes(&f, n, k));
            }
        }
    }
    codes.extend(random_codes(2, 4, 4, 3, 1, 120).unwrap());
    codes.extend(random_codes(3, 4, 4, 3, 2, 120).unwrap());
    let cfg = WeightConfig::default();
    let entries = codes
        .into_par_iter()
        .map(|code| {
            let profile = profile(&code, &cfg).unwrap();
            Entry { code, profile }
        })
        .collect();
    Corpus {
        entries,
        build_time: start.elapsed(),
    }
}

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

/// Runs `check` on every corpus code, collecting failures with the code file.
fn over_corpus(corpus: &Corpus, check: impl Fn(&Entry) -> Outcome + Sync) -> Verdict {
    let outcomes: Vec<Outcome> = corpus.entries.par_iter().map(&check).collect();
    let mut checked = 0;
    for (e, o) in corpus.entries.iter().zip(outcomes) {
        match o {
            Outcome::Pass => checked += 1,
            Outcome::Skipped => {}
            Outcome::Fail(msg) => return Err(format!("{msg}\n{}", to_text(&e.code))),
        }
    }
    Ok(format!("{checked} codes"))
}

/// Rank over GF(2) of the `m × n` expansion, by xor elimination on column
/// bitmasks. Independent of the library's matrix code.
fn binary_expansion_rank(word: &[u32], m: usize) -> usize {
    let mut rows: Vec<u32> = (0..m)
        .map(|i| {
            word.iter()
                .enumerate()
                .fold(0, |acc, (j, &x)| acc | (((x >> i) & 1) << j))
        })
        .collect();
    let mut rank = 0;
    for bit in 0..word.len() {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> bit & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let c = parse_code(example_text()).map_err(|e| e.to_string())?;
    let f = c.field().clone();
    let a = f.alpha();
    // α³ = 1 + α
    if f.l().pow(a, 3) != f.l().add(1, a) {
        return Err("α³ ≠ 1 + α".into());
    }
    let words: Vec<Vec<u32>> = c.codewords().collect();
    let max_rank = words
        .iter()
        .map(|w| binary_expansion_rank(w, 3))
        .max()
        .unwrap();
    let support = c.support_weight();
    let jp = grw_jp(&c, 2).map_err(|e| e.to_string())?;
    let os = grw_os(&c, 2, &WeightConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if words.len() != 64 || support != 4 || max_rank != 3 || jp != 4 || os != 3 {
        return Err(format!(
            "{} codewords, support weight {support}, max rank {max_rank}, jp {jp}, os {os}",
            words.len()
        ));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "support 4, max codeword rank 3, jp 4, os 3 in {elapsed:?}"
    ))
}

fn criterion_2(corpus: &Corpus) -> Verdict {
    let start = Instant::now();
    let v = over_corpus(corpus, |e| check_unconditional(&e.profile))?;
    let total = corpus.build_time + start.elapsed();
    if total >= Duration::from_secs(300) {
        return Err(format!("took {total:?}"));
    }
    Ok(format!("{v} in {total:?}"))
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let f = gf(2, 3);
    let mut count = 0;
    for n in 1..=3 {
        for x in span_codewords(f.l(), &Matrix::identity(n)) {
            if let Outcome::Fail(msg) = check_single_vector(&f, &x) {
                return Err(msg);
            }
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{count} vectors in {elapsed:?}"))
}

fn criterion_7(corpus: &Corpus) -> Verdict {
    over_corpus(corpus, |e| {
        if e.code.n() <= 3 {
            check_shortening(&e.code)
        } else {
            Outcome::Skipped
        }
    })
}

fn criterion_9(corpus: &Corpus) -> Verdict {
    let mut degenerate = 0;
    for e in &corpus.entries {
        if e.code.k() >= 1
            && is_degenerate(&e.code)
                .map_err(|x| x.to_string())?
                .degenerate
        {
            degenerate += 1;
        }
    }
    let v = over_corpus(corpus, |e| {
        check_degeneracy(&e.code).unwrap_or_else(|x| Outcome::Fail(x.to_string()))
    })?;
    Ok(format!(
        "{v}, {degenerate} degenerate with verified witnesses"
    ))
}

fn criterion_10(corpus: &Corpus) -> Verdict {
    over_corpus(corpus, |e| match duality_check(&e.code) {
        Ok(d) if d.holds => Outcome::Pass,
        Ok(d) => Outcome::Fail(format!(
            "weights {:?} complement {:?}",
            d.code_weights, d.complement
        )),
        Err(x) => Outcome::Fail(x.to_string()),
    })
}

fn criterion_12(corpus: &Corpus) -> Verdict {
    let cfg = WeightConfig::default();
    over_corpus(corpus, |e| {
        let seed = e
            .code
            .generator()
            .iter_rows()
            .flatten()
            .fold(e.code.n() as u64, |h, &x| {
                h.wrapping_mul(31).wrapping_add(x as u64)
            });
        let mut rng = Lcg::new(seed);
        let isos: Vec<_> = (0..50)
            .map(|_| random_isometry(e.code.field(), e.code.n(), &mut rng))
            .collect();
        check_isometry_invariance(&e.code, &e.profile, &isos, &cfg)
            .unwrap_or_else(|x| Outcome::Fail(x.to_string()))
    })
}

/// Brute-force oracle for the exhaustive part: `⟨g⟩` is degenerate iff some
/// nonzero `v ∈ K^n` has `g · v = 0`.
fn criterion_13(corpus: &Corpus) -> Verdict {
    let v = over_corpus(corpus, |e| {
        check_dimension_bound(&e.code).unwrap_or_else(|x| Outcome::Fail(x.to_string()))
    })?;
    let f = gf(2, 2);
    let codes = exhaustive_codes(&f, 3, 1);
    for c in &codes {
        let g = c.generator().row(0);
        let oracle = (1u32..8).any(|bits| {
            let s = (0..3)
                .filter(|j| bits >> j & 1 == 1)
                .fold(0, |acc, j| f.l().add(acc, g[j]));
            s == 0
        });
        let verdict = is_degenerate(c).map_err(|x| x.to_string())?.degenerate;
        if !oracle || !verdict {
            return Err(format!("nondegenerate k=1, m=2, n=3 code\n{}", to_text(c)));
        }
    }
    Ok(format!(
        "{v}; all {} codes with q=2, k=1, m=2, n=3 degenerate",
        codes.len()
    ))
}

fn main() {
    let start = Instant::now();
    let corpus = corpus();
    println!(
        "corpus: {} codes, profiles in {:?}",
        corpus.entries.len(),
        corpus.build_time
    );

    let criteria: Vec<Criterion> = vec![
        (
            "1 example: support weight 4, max rank 3, jp 4, os 3",
            Box::new(criterion_1),
        ),
        ("2 kmu = jp = closure", Box::new(|| criterion_2(&corpus))),
        (
            "3 os = jp and ducoat = closure when m >= n",
            Box::new(|| over_corpus(&corpus, |e| check_conditional(&e.profile))),
        ),
        (
            "4 support equals trace code",
            Box::new(|| over_corpus(&corpus, |e| check_trace_identity(&e.code))),
        ),
        (
            "5 Galois-closed four-way equivalence",
            Box::new(|| over_corpus(&corpus, |e| check_galois_four_way(&e.code))),
        ),
        (
            "6 single-vector closure over GF(8)^n, n <= 3",
            Box::new(criterion_6),
        ),
        ("7 shortening, n <= 3", Box::new(|| criterion_7(&corpus))),
        (
            "8 full-support codeword when m >= n",
            Box::new(|| over_corpus(&corpus, |e| check_full_support(&e.code))),
        ),
        (
            "9 degeneracy criteria and witnesses",
            Box::new(|| criterion_9(&corpus)),
        ),
        ("10 duality relation", Box::new(|| criterion_10(&corpus))),
        (
            "11 enumerator consistency",
            Box::new(|| over_corpus(&corpus, |e| check_enumerators(&e.code, &e.profile))),
        ),
        (
            "12 isometry invariance, 50 per code",
            Box::new(|| criterion_12(&corpus)),
        ),
        ("13 dimension bound", Box::new(|| criterion_13(&corpus))),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {name} ({detail}; {:?})", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
