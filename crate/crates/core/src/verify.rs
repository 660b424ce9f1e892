//! Property suites cross-checking the closed forms against direct computation.
//!
//! | suite       | checks                                                           |
//! |-------------|------------------------------------------------------------------|
//! | `thmB`      | closed-form Betti number = `deg gcd(f, t^n - 1)` = SNF zero count |
//! | `lemma41`   | `Z_2^kappa` quotient, combined generator bound, balanced-presentation infiniteness |
//! | `shift`     | `H(r,n,s)^ab = H(r + a n, n, s + a n)^ab` for `a = 1, 2`          |
//! | `freeprod`  | abelianization when `r` or `s` is a multiple of `n`              |
//! | `detxcheck` | resultant vs SNF determinant and three routes to the rank        |

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circulant::{self, ExponentVector};
use crate::cycpres::{self, HParams};
use crate::error::{Error, Result};
use crate::hclass;
use crate::search::{self, SearchBounds};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    BettiFormula,
    GeneratorBounds,
    Shift,
    FreeProduct,
    DetCrossCheck,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::BettiFormula,
        Suite::GeneratorBounds,
        Suite::Shift,
        Suite::FreeProduct,
        Suite::DetCrossCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::BettiFormula => "thmB",
            Suite::GeneratorBounds => "lemma41",
            Suite::Shift => "shift",
            Suite::FreeProduct => "freeprod",
            Suite::DetCrossCheck => "detxcheck",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub bounds: SearchBounds,
    /// Random exponent vectors added to the `detxcheck` corpus.
    pub random_samples: usize,
    pub random_n_max: usize,
    pub random_entry_bound: i64,
    pub seed: u64,
}

impl VerifyOptions {
    pub fn new(bounds: SearchBounds) -> Self {
        VerifyOptions {
            bounds,
            random_samples: 500,
            random_n_max: 16,
            random_entry_bound: 3,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: Option<HParams>,
    pub vector: Option<Vec<String>>,
    pub detail: String,
}

impl Counterexample {
    fn triple(p: HParams, detail: String) -> Self {
        Counterexample { params: Some(p), vector: None, detail }
    }

    fn vector(v: &ExponentVector, detail: String) -> Self {
        Counterexample {
            params: None,
            vector: Some(v.entries().iter().map(ToString::to_string).collect()),
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub examined: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let bounds = SearchBounds::new(opts.bounds.r_max, opts.bounds.n_max, opts.bounds.s_max)?;
    let (examined, counterexamples) = match suite {
        Suite::BettiFormula => {
            let report = search::verify_betti_formula(bounds)?;
            let cx = report
                .mismatches
                .iter()
                .map(|m| {
                    Counterexample::triple(
                        m.params,
                        format!(
                            "formula {} vs gcd degree {} vs SNF zeros {}",
                            m.formula, m.gcd_degree, m.snf_zeros
                        ),
                    )
                })
                .collect();
            (report.examined, cx)
        }
        Suite::GeneratorBounds => over_triples(bounds.triples(), check_generator_bounds),
        Suite::Shift => over_triples(bounds.triples(), check_shift),
        Suite::FreeProduct => over_triples(
            bounds.triples().filter(|p| p.r % p.n == 0 || p.s % p.n == 0),
            check_free_product,
        ),
        Suite::DetCrossCheck => {
            let mut vectors: Vec<ExponentVector> = bounds
                .triples()
                .map(|p| cycpres::exponent_vector(&cycpres::h_word(p)))
                .collect();
            vectors.extend(random_vectors(opts));
            let cx: Vec<Counterexample> = vectors
                .par_iter()
                .filter_map(|v| check_det_and_rank(v).err().map(|d| Counterexample::vector(v, d)))
                .collect();
            (vectors.len() as u64, cx)
        }
    };
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        examined,
        counterexamples,
    })
}

fn over_triples<I, F>(triples: I, check: F) -> (u64, Vec<Counterexample>)
where
    I: Iterator<Item = HParams>,
    F: Fn(HParams) -> std::result::Result<(), String> + Sync,
{
    let triples: Vec<HParams> = triples.collect();
    let cx = triples
        .par_iter()
        .filter_map(|&p| check(p).err().map(|d| Counterexample::triple(p, d)))
        .collect();
    (triples.len() as u64, cx)
}

/// Random exponent vectors with entries in `[-bound, bound]` and length in `1..=random_n_max`.
pub fn random_vectors(opts: &VerifyOptions) -> Vec<ExponentVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let b = opts.random_entry_bound;
    (0..opts.random_samples)
        .map(|_| {
            let n = rng.gen_range(1..=opts.random_n_max.max(1));
            let entries = (0..n).map(|_| BigInt::from(rng.gen_range(-b..=b))).collect();
            ExponentVector::new(entries).unwrap()
        })
        .collect()
}

pub fn check_generator_bounds(p: HParams) -> std::result::Result<(), String> {
    let ab = cycpres::abelianization(&cycpres::h_word(p));
    let bound = hclass::d_lower_bound(p);
    let mod_two = ab.rank_mod_two() as u64;
    if mod_two < bound.kappa {
        return Err(format!("dim A/2A = {mod_two} < kappa = {}", bound.kappa));
    }
    let d = ab.min_generators() as u64;
    if bound.combined > d {
        return Err(format!("combined bound {} > d(H^ab) = {d}", bound.combined));
    }
    if hclass::infinite_by_balanced(p) && ab.betti == 0 && bound.combined < 4 {
        return Err(format!(
            "balanced criterion claims infinite, but betti = 0 and combined = {}",
            bound.combined
        ));
    }
    Ok(())
}

pub fn check_shift(p: HParams) -> std::result::Result<(), String> {
    let base = cycpres::abelianization(&cycpres::h_word(p));
    for alpha in 1..=2 {
        let shifted = cycpres::abelianization(&cycpres::h_word(p.shifted(alpha)));
        if shifted != base {
            return Err(format!("shift by {alpha}: {shifted} != {base}"));
        }
    }
    Ok(())
}

pub fn check_free_product(p: HParams) -> std::result::Result<(), String> {
    let Some(decomp) = hclass::free_product_decomposition(p) else {
        return Err("no decomposition although r or s is a multiple of n".into());
    };
    let expected = decomp.abelianization();
    let actual = cycpres::abelianization(&cycpres::h_word(p));
    if expected != actual {
        return Err(format!("decomposition predicts {expected}, computed {actual}"));
    }
    Ok(())
}

/// Resultant determinant vs SNF product, and gcd rank vs Bareiss rank vs SNF rank.
pub fn check_det_and_rank(v: &ExponentVector) -> std::result::Result<(), String> {
    let n = v.len();
    let snf = circulant::smith_normal_form(v);
    if !snf.windows(2).all(|w| w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero()) {
        return Err(format!("SNF divisibility chain broken: {snf:?}"));
    }
    let zeros = snf.iter().filter(|d| d.is_zero()).count();
    let det = circulant::circulant_det_abs(v);
    let snf_det: BigUint = if zeros == 0 {
        snf.iter().product()
    } else {
        BigUint::zero()
    };
    if det != snf_det {
        return Err(format!("|Res| = {det} but SNF determinant = {snf_det}"));
    }
    let gcd_rank = circulant::circulant_rank(v);
    let bareiss_rank = circulant::rational_rank(v.circulant_matrix());
    let snf_rank = n - zeros;
    if gcd_rank != bareiss_rank || gcd_rank != snf_rank {
        return Err(format!(
            "rank: gcd {gcd_rank}, elimination {bareiss_rank}, SNF {snf_rank}"
        ));
    }
    if det.is_one() != (snf_rank == n && snf.iter().all(One::is_one)) {
        return Err("unimodularity disagrees".into());
    }
    Ok(())
}
