//! Exhaustive searches over `(r, n, s)` boxes.
//!
//! The search looks for perfect groups `H(r,n,s)` (trivial abelianization),
//! for triples surviving every necessary condition of the connected-LOG
//! classification, and runs the cyclotomic-factor precheck that makes the
//! set of `n` with `H(r,n,s)^ab = 1` finite for each fixed `r`, `s`.
//!
//! Work is split across a rayon pool; results are sorted by `(r, n, s)`
//! afterwards so a report never depends on scheduling.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circulant;
use crate::cycpres::{self, HParams};
use crate::error::{Error, Result};
use crate::hclass::{self, Classification};
use crate::intpoly::{self, IntPolynomial};
use crate::record::OutputRecord;

/// Inclusive upper bounds; `r` and `s` start at 1, `n` at 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub r_max: u64,
    pub n_max: u64,
    pub s_max: u64,
}

impl SearchBounds {
    pub fn new(r_max: u64, n_max: u64, s_max: u64) -> Result<Self> {
        if r_max < 1 || s_max < 1 || n_max < 2 {
            return Err(Error::InvalidBounds(format!(
                "need r_max >= 1, n_max >= 2, s_max >= 1 (got {r_max}, {n_max}, {s_max})"
            )));
        }
        let b = SearchBounds { r_max, n_max, s_max };
        b.triple_count()?;
        r_max
            .checked_add(s_max)
            .filter(|&w| usize::try_from(w).is_ok())
            .ok_or_else(|| Error::BoundOverflow(format!("r_max + s_max = {r_max} + {s_max}")))?;
        Ok(b)
    }

    pub fn triple_count(&self) -> Result<u64> {
        self.r_max
            .checked_mul(self.n_max - 1)
            .and_then(|x| x.checked_mul(self.s_max))
            .ok_or_else(|| {
                Error::BoundOverflow(format!(
                    "{} x {} x {} triples",
                    self.r_max,
                    self.n_max - 1,
                    self.s_max
                ))
            })
    }

    /// All triples in lexicographic `(r, n, s)` order.
    pub fn triples(&self) -> impl Iterator<Item = HParams> + '_ {
        (1..=self.r_max).flat_map(move |r| {
            (2..=self.n_max).flat_map(move |n| (1..=self.s_max).map(move |s| HParams { r, n, s }))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectTriple {
    pub params: HParams,
    pub r_zero_mod_n: bool,
    pub s_zero_mod_n: bool,
    /// Neither `r` nor `s` is a multiple of `n`.
    pub conjecture_relevant: bool,
    /// Recomputed through the Smith normal form rather than the resultant.
    pub verified_by_snf: bool,
    /// Smallest member `(r - a n, n, s - a n)` of the shift orbit, which shares the abelianization.
    pub orbit_base: HParams,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateTriple {
    pub params: HParams,
    pub half: (u64, u64, u64),
    /// The case-(c) conditions re-checked independently of the classifier.
    pub conditions_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PrecheckResult {
    NotApplicable {
        diff: u64,
    },
    Checked {
        f0_nonzero: bool,
        no_cyclotomic_factor: bool,
        cyclotomic_witness: Option<u64>,
        finitely_many_n: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecheckRecord {
    pub r: u64,
    pub s: u64,
    pub result: PrecheckResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub bounds: SearchBounds,
    pub triples_examined: u64,
    pub perfect: Vec<PerfectTriple>,
    pub candidates_case_c: Vec<CandidateTriple>,
    pub prechecks: Vec<PrecheckRecord>,
    /// Not serialized, so report files stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SearchReport {
    pub fn conjecture_relevant_perfect(&self) -> impl Iterator<Item = &PerfectTriple> {
        self.perfect.iter().filter(|p| p.conjecture_relevant)
    }

    /// Every reported finding re-verifies through its independent route.
    pub fn is_sound(&self) -> bool {
        self.perfect.iter().all(|p| p.verified_by_snf)
            && self.candidates_case_c.iter().all(|c| c.conditions_verified)
    }

    /// Any `(r, s)` whose precheck came back with a cyclotomic factor or `f(0) = 0`.
    pub fn precheck_failures(&self) -> impl Iterator<Item = &PrecheckRecord> {
        self.prechecks.iter().filter(|p| {
            matches!(
                p.result,
                PrecheckResult::Checked { finitely_many_n: false, .. }
            )
        })
    }

    pub fn summary(&self) -> String {
        format!(
            "{} triples examined, {} perfect, {} conjecture-relevant perfect triples, {} CandidateCaseC, {} precheck failures",
            self.triples_examined,
            self.perfect.len(),
            self.conjecture_relevant_perfect().count(),
            self.candidates_case_c.len(),
            self.precheck_failures().count(),
        )
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Serialization(e.to_string()))
    }

    /// One classified record per finding (perfect triples, then candidates).
    pub fn to_csv(&self) -> Result<String> {
        let mut params: Vec<HParams> = self.perfect.iter().map(|p| p.params).collect();
        params.extend(self.candidates_case_c.iter().map(|c| c.params));
        let records: Vec<OutputRecord> = params.into_iter().map(OutputRecord::classified).collect();
        OutputRecord::to_csv(&records)
    }
}

enum Finding {
    Perfect(PerfectTriple),
    Candidate(CandidateTriple),
}

/// Searches the box for perfect groups and case-(c) candidates using `jobs` worker threads.
pub fn search_perfect(bounds: SearchBounds, jobs: usize) -> Result<SearchReport> {
    let bounds = SearchBounds::new(bounds.r_max, bounds.n_max, bounds.s_max)?;
    if jobs == 0 {
        return Err(Error::InvalidBounds("jobs must be at least 1".into()));
    }
    let started = Instant::now();
    let triples: Vec<HParams> = bounds.triples().collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidBounds(format!("thread pool: {e}")))?;
    let findings: Vec<Finding> = pool.install(|| {
        triples
            .par_iter()
            .flat_map_iter(|&p| examine(p))
            .collect()
    });

    let mut perfect = Vec::new();
    let mut candidates_case_c = Vec::new();
    for f in findings {
        match f {
            Finding::Perfect(p) => perfect.push(p),
            Finding::Candidate(c) => candidates_case_c.push(c),
        }
    }
    perfect.sort_by_key(|p| p.params);
    perfect.dedup_by_key(|p| p.params);
    candidates_case_c.sort_by_key(|c| c.params);
    candidates_case_c.dedup_by_key(|c| c.params);

    let prechecks = (1..=bounds.r_max)
        .flat_map(|r| [r.checked_sub(1), r.checked_add(1)].into_iter().flatten().map(move |s| (r, s)))
        .filter(|&(_, s)| (1..=bounds.s_max).contains(&s))
        .map(|(r, s)| PrecheckRecord { r, s, result: cyclotomic_precheck(r, s) })
        .collect();

    Ok(SearchReport {
        bounds,
        triples_examined: triples.len() as u64,
        perfect,
        candidates_case_c,
        prechecks,
        wall_time: started.elapsed(),
    })
}

fn examine(p: HParams) -> Vec<Finding> {
    let mut out = Vec::new();
    if cycpres::ab_order(p).is_one() {
        let r_zero_mod_n = p.r % p.n == 0;
        let s_zero_mod_n = p.s % p.n == 0;
        let alpha = ((p.r - 1) / p.n).min((p.s - 1) / p.n);
        out.push(Finding::Perfect(PerfectTriple {
            params: p,
            r_zero_mod_n,
            s_zero_mod_n,
            conjecture_relevant: !r_zero_mod_n && !s_zero_mod_n,
            verified_by_snf: cycpres::abelianization(&cycpres::h_word(p)).is_trivial(),
            orbit_base: HParams {
                r: p.r - alpha * p.n,
                n: p.n,
                s: p.s - alpha * p.n,
            },
        }));
    }
    if let Classification::CandidateCaseC { half } = hclass::h_classify(p) {
        out.push(Finding::Candidate(CandidateTriple {
            params: p,
            half,
            conditions_verified: case_c_conditions_hold(p),
        }));
    }
    out
}

/// The case-(c) conditions, with perfection of the half group decided by
/// the Smith normal form instead of a resultant.
pub fn case_c_conditions_hold(p: HParams) -> bool {
    let g = p.r.gcd(&p.n).gcd(&p.s);
    let diff = p.r.abs_diff(p.s);
    if g != 2 || diff != 2 || (p.r.min(p.s), p.r.max(p.s)) == (2, 4) {
        return false;
    }
    if p.n.gcd(&(p.r + p.s)) != 2 || p.r % p.n == 0 || p.s % p.n == 0 {
        return false;
    }
    let half = cycpres::h_exponent_vector(p.r / 2, p.n / 2, p.s / 2);
    circulant::abelian_invariants(&half).is_trivial()
}

/// Checks that `f(t) = 1 + ... + t^{r-1} - t^r - ... - t^{r+s-1}` has
/// `f(0) != 0` and no cyclotomic factor, for `|r - s| = 1`.
pub fn cyclotomic_precheck(r: u64, s: u64) -> PrecheckResult {
    let diff = r.abs_diff(s);
    if diff != 1 || r == 0 || s == 0 {
        return PrecheckResult::NotApplicable { diff };
    }
    let f = unreduced_h_polynomial(r, s);
    let f0_nonzero = !f.coeff(0).is_zero();
    let cyclotomic_witness = intpoly::has_cyclotomic_factor(&f);
    let no_cyclotomic_factor = cyclotomic_witness.is_none();
    PrecheckResult::Checked {
        f0_nonzero,
        no_cyclotomic_factor,
        cyclotomic_witness,
        finitely_many_n: f0_nonzero && no_cyclotomic_factor,
    }
}

/// Representer polynomial of `H(r,n,s)` before reduction mod `t^n - 1`.
pub fn unreduced_h_polynomial(r: u64, s: u64) -> IntPolynomial {
    let coeffs = (0..r)
        .map(|_| BigInt::one())
        .chain((0..s).map(|_| -BigInt::one()))
        .collect();
    IntPolynomial::new(coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiMismatch {
    pub params: HParams,
    pub formula: u64,
    pub gcd_degree: u64,
    pub snf_zeros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiFormulaReport {
    pub bounds: SearchBounds,
    pub examined: u64,
    pub mismatches: Vec<BettiMismatch>,
}

impl BettiFormulaReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the closed-form Betti number with `deg gcd(f, t^n - 1)` and
/// with the number of zeros on the Smith diagonal, for every triple.
pub fn verify_betti_formula(bounds: SearchBounds) -> Result<BettiFormulaReport> {
    let bounds = SearchBounds::new(bounds.r_max, bounds.n_max, bounds.s_max)?;
    let triples: Vec<HParams> = bounds.triples().collect();
    let mut mismatches: Vec<BettiMismatch> = triples
        .par_iter()
        .filter_map(|&p| {
            let formula = hclass::h_betti_formula(p);
            let v = cycpres::exponent_vector(&cycpres::h_word(p));
            let f = circulant::representer_polynomial(&v);
            let g = IntPolynomial::t_pow_minus_one(p.n as usize);
            let gcd_degree = intpoly::poly_gcd(&f, &g)
                .expect("t^n - 1 is nonzero")
                .degree()
                .unwrap_or(0) as u64;
            let snf_zeros = circulant::smith_normal_form(&v)
                .iter()
                .filter(|d| d.is_zero())
                .count() as u64;
            (formula != gcd_degree || formula != snf_zeros).then_some(BettiMismatch {
                params: p,
                formula,
                gcd_degree,
                snf_zeros,
            })
        })
        .collect();
    mismatches.sort_by_key(|m| m.params);
    Ok(BettiFormulaReport {
        bounds,
        examined: triples.len() as u64,
        mismatches,
    })
}
