//! Arithmetic criteria on `(r, n, s)` deciding when `H(r,n,s)` can be a
//! connected LOG group, together with the abelian-invariant bounds they
//! rest on.
//!
//! A connected LOG group abelianizes to `Z`, so every criterion here is a
//! statement about `H(r,n,s)^ab`: its Betti number (closed form), lower
//! bounds on its minimum generator count, and the special shapes that
//! occur when `r` or `s` is a multiple of `n`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cycpres::{self, HParams};

/// The `(r,n)`-torus knot, whose group is `<a, b | a^n = b^r>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusKnot {
    pub r: u64,
    pub n: u64,
}

impl TorusKnot {
    pub fn relation(&self) -> String {
        format!("a^{}=b^{}", self.n, self.r)
    }

    pub fn presentation(&self) -> String {
        format!("<a,b | {}>", self.relation())
    }
}

/// Why `H(r,n,s)` is not a connected LOG group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NotLogReason {
    /// Betti number of the abelianization differs from 1.
    BettiNe1 { betti: u64 },
    /// `d(H^ab) >= 2`; `diff = |r - s| != 2`.
    DLowerBoundGt1 { diff: u64 },
    /// `H(r/2,n/2,s/2)^ab` is nontrivial, of the given order (0 = infinite).
    HalfParamsNotPerfect { half: (u64, u64, u64), half_order: BigUint },
    /// `{r, s} = {4, 2}`, where the half group is a Fibonacci group `F(2, n/2)`.
    ExcludedPair42,
    /// `(n, r+s) != 2`.
    GcdNRPlusSNe2 { gcd: u64 },
}

impl NotLogReason {
    pub fn code(&self) -> &'static str {
        match self {
            NotLogReason::BettiNe1 { .. } => "BETTI_NE_1",
            NotLogReason::DLowerBoundGt1 { .. } => "D_LOWER_BOUND_GT_1",
            NotLogReason::HalfParamsNotPerfect { .. } => "HALF_PARAMS_NOT_PERFECT",
            NotLogReason::ExcludedPair42 => "EXCLUDED_PAIR_4_2",
            NotLogReason::GcdNRPlusSNe2 { .. } => "GCD_N_RPLUSS_NE_2",
        }
    }

    pub fn witness(&self) -> String {
        match self {
            NotLogReason::BettiNe1 { betti } => format!("betti={betti}"),
            NotLogReason::DLowerBoundGt1 { diff } => format!("|r-s|={diff}"),
            NotLogReason::HalfParamsNotPerfect { half_order, .. } => half_order.to_string(),
            NotLogReason::ExcludedPair42 => "{4,2}".to_string(),
            NotLogReason::GcdNRPlusSNe2 { gcd } => format!("(n,r+s)={gcd}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    ConfirmedTorusKnot(TorusKnot),
    ConfirmedInfiniteCyclic,
    NotConnectedLog(NotLogReason),
    /// Every necessary condition holds; whether any such group exists is open.
    CandidateCaseC { half: (u64, u64, u64) },
}

impl Classification {
    pub fn verdict(&self) -> &'static str {
        match self {
            Classification::ConfirmedTorusKnot(_) => "ConfirmedLOG_TorusKnot",
            Classification::ConfirmedInfiniteCyclic => "ConfirmedLOG_InfiniteCyclic",
            Classification::NotConnectedLog(_) => "NotConnectedLOG",
            Classification::CandidateCaseC { .. } => "CandidateCaseC",
        }
    }

    pub fn reason_code(&self) -> Option<&'static str> {
        match self {
            Classification::NotConnectedLog(reason) => Some(reason.code()),
            _ => None,
        }
    }

    pub fn witness(&self) -> String {
        match self {
            Classification::ConfirmedTorusKnot(k) => k.relation(),
            Classification::ConfirmedInfiniteCyclic => "Z".to_string(),
            Classification::NotConnectedLog(reason) => reason.witness(),
            Classification::CandidateCaseC { half: (r, n, s) } => format!("H({r},{n},{s})"),
        }
    }

    pub fn is_confirmed_log(&self) -> bool {
        matches!(
            self,
            Classification::ConfirmedTorusKnot(_) | Classification::ConfirmedInfiniteCyclic
        )
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason_code() {
            Some(code) => write!(f, "{}({}; {})", self.verdict(), code, self.witness()),
            None => write!(f, "{}({})", self.verdict(), self.witness()),
        }
    }
}

/// Lower bounds on `d(H(r,n,s)^ab)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorBound {
    /// `H^ab` maps onto `Z_2^kappa`.
    pub kappa: u64,
    pub easy_bound: u64,
    pub hard_bound: u64,
    pub combined: u64,
}

/// Closed-form Betti number of `H(r,n,s)^ab`.
pub fn h_betti_formula(p: HParams) -> u64 {
    if p.r == p.s {
        p.r.gcd(&p.n)
    } else {
        gcd3(p) - 1
    }
}

pub fn d_lower_bound(p: HParams) -> GeneratorBound {
    let delta = p.n.gcd(&(p.r + p.s));
    let kappa = if ((p.r + p.s) / delta).is_even() {
        delta
    } else {
        delta - 1
    };
    let gcd_is_two = gcd3(p) == 2;
    let diff = p.r.abs_diff(p.s);
    let easy_bound = if gcd_is_two && diff != 2 { 2 } else { 0 };
    let hard_bound = if gcd_is_two && diff == 2 && !half_is_perfect(p) {
        2
    } else {
        0
    };
    GeneratorBound {
        kappa,
        easy_bound,
        hard_bound,
        combined: kappa.max(easy_bound).max(hard_bound),
    }
}

/// Necessary (not sufficient) condition for `H(r,n,s)` to be perfect.
pub fn perfect_necessary(p: HParams) -> bool {
    p.r.abs_diff(p.s) == 1 && p.n.gcd(&(p.r + p.s)) == 1
}

/// Infiniteness criterion from the `Z_2^kappa` quotient and the bound
/// `d(G^ab) <= 3` for finite groups with balanced presentations.
///
/// `false` means the criterion is silent, not that the group is finite.
pub fn infinite_by_balanced(p: HParams) -> bool {
    let delta = p.n.gcd(&(p.r + p.s));
    if ((p.r + p.s) / delta).is_even() {
        delta >= 4
    } else {
        delta >= 5
    }
}

/// Decomposition of `H(r,n,s)` when `r` or `s` is a multiple of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FreeProduct {
    /// `Z_cyclic_order * Z * ... * Z` with `free_rank` copies of `Z`.
    CyclicTimesFree { cyclic_order: u64, free_rank: u64 },
    /// `r = s = 0 mod n`: every relator cancels, leaving the free group of rank `n`.
    Free { rank: u64 },
}

impl FreeProduct {
    pub fn abelianization(&self) -> crate::circulant::AbelianGroup {
        match *self {
            FreeProduct::CyclicTimesFree { cyclic_order, free_rank } => {
                crate::circulant::AbelianGroup::cyclic_plus_free(cyclic_order, free_rank as usize)
            }
            FreeProduct::Free { rank } => {
                crate::circulant::AbelianGroup::cyclic_plus_free(1, rank as usize)
            }
        }
    }
}

pub fn free_product_decomposition(p: HParams) -> Option<FreeProduct> {
    if p.r % p.n != 0 && p.s % p.n != 0 {
        return None;
    }
    if p.r == p.s {
        return Some(FreeProduct::Free { rank: p.n });
    }
    let diff = p.r.abs_diff(p.s);
    let g = p.n.gcd(&diff);
    Some(FreeProduct::CyclicTimesFree {
        cyclic_order: diff / g,
        free_rank: g - 1,
    })
}

/// `H(r,n,s)` is a 2-generator knot group exactly when it is a torus knot group.
pub fn two_generator_knot(p: HParams) -> Option<TorusKnot> {
    (p.r == p.s && p.r.gcd(&p.n) == 1).then_some(TorusKnot { r: p.r, n: p.n })
}

/// Runs the connected-LOG decision procedure; the first failing condition is reported.
pub fn h_classify(p: HParams) -> Classification {
    if let Some(knot) = two_generator_knot(p) {
        return Classification::ConfirmedTorusKnot(knot);
    }
    let betti = h_betti_formula(p);
    if betti != 1 {
        return Classification::NotConnectedLog(NotLogReason::BettiNe1 { betti });
    }
    // from here r != s and (r,n,s) = 2
    let diff = p.r.abs_diff(p.s);
    if p.r % p.n == 0 || p.s % p.n == 0 {
        return if diff == 2 {
            Classification::ConfirmedInfiniteCyclic
        } else {
            Classification::NotConnectedLog(NotLogReason::DLowerBoundGt1 { diff })
        };
    }
    if diff != 2 {
        return Classification::NotConnectedLog(NotLogReason::DLowerBoundGt1 { diff });
    }
    if p.r.min(p.s) == 2 && p.r.max(p.s) == 4 {
        return Classification::NotConnectedLog(NotLogReason::ExcludedPair42);
    }
    let gcd = p.n.gcd(&(p.r + p.s));
    if gcd != 2 {
        return Classification::NotConnectedLog(NotLogReason::GcdNRPlusSNe2 { gcd });
    }
    let half = (p.r / 2, p.n / 2, p.s / 2);
    let half_order = cycpres::ab_order_any_n(half.0, half.1, half.2);
    if !half_order.is_one() {
        return Classification::NotConnectedLog(NotLogReason::HalfParamsNotPerfect {
            half,
            half_order,
        });
    }
    Classification::CandidateCaseC { half }
}

fn gcd3(p: HParams) -> u64 {
    p.r.gcd(&p.n).gcd(&p.s)
}

fn half_is_perfect(p: HParams) -> bool {
    cycpres::is_perfect_any_n(p.r / 2, p.n / 2, p.s / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(r: u64, n: u64, s: u64) -> HParams {
        HParams::new(r, n, s).unwrap()
    }

    #[test]
    fn betti_formula_examples() {
        assert_eq!(h_betti_formula(hp(4, 6, 2)), 1);
        assert_eq!(h_betti_formula(hp(2, 4, 2)), 2);
        assert_eq!(h_betti_formula(hp(3, 5, 2)), 0);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(d_lower_bound(hp(2, 4, 2)).kappa, 3);
        assert_eq!(d_lower_bound(hp(2, 6, 4)).kappa, 5);
        let b = d_lower_bound(hp(6, 8, 4));
        assert_eq!(b.hard_bound, 2);
        assert_eq!(b.easy_bound, 0);
        assert_eq!(b.combined, b.kappa.max(2));
    }

    #[test]
    fn easy_bound_applies_off_two() {
        // (r,n,s) = 2, |r - s| = 4
        let b = d_lower_bound(hp(6, 4, 2));
        assert_eq!((b.easy_bound, b.hard_bound), (2, 0));
        // (r,n,s) = 1: neither applies
        let b = d_lower_bound(hp(3, 5, 2));
        assert_eq!((b.easy_bound, b.hard_bound), (0, 0));
    }

    #[test]
    fn hard_bound_with_two_generators() {
        // n = 2 halves to H(2,1,1), which is trivial
        let b = d_lower_bound(hp(4, 2, 2));
        assert_eq!(b.hard_bound, 0);
    }

    #[test]
    fn perfect_necessary_examples() {
        assert!(!perfect_necessary(hp(3, 5, 2)));
        assert!(perfect_necessary(hp(2, 5, 1)));
        assert!(!perfect_necessary(hp(2, 4, 2)));
    }

    #[test]
    fn balanced_examples() {
        assert!(infinite_by_balanced(hp(2, 6, 4)));
        assert!(infinite_by_balanced(hp(2, 4, 6)));
        assert!(!infinite_by_balanced(hp(2, 4, 2)));
    }

    #[test]
    fn free_product_examples() {
        assert_eq!(
            free_product_decomposition(hp(4, 2, 2)),
            Some(FreeProduct::CyclicTimesFree { cyclic_order: 1, free_rank: 1 })
        );
        assert_eq!(
            free_product_decomposition(hp(3, 3, 1)),
            Some(FreeProduct::CyclicTimesFree { cyclic_order: 2, free_rank: 0 })
        );
        assert_eq!(
            free_product_decomposition(hp(6, 3, 2)),
            Some(FreeProduct::CyclicTimesFree { cyclic_order: 4, free_rank: 0 })
        );
        assert_eq!(
            free_product_decomposition(hp(1, 3, 3)),
            Some(FreeProduct::CyclicTimesFree { cyclic_order: 2, free_rank: 0 })
        );
        assert_eq!(free_product_decomposition(hp(6, 3, 6)), Some(FreeProduct::Free { rank: 3 }));
        assert_eq!(free_product_decomposition(hp(3, 5, 2)), None);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            h_classify(hp(2, 5, 2)),
            Classification::ConfirmedTorusKnot(TorusKnot { r: 2, n: 5 })
        );
        assert_eq!(h_classify(hp(4, 2, 2)), Classification::ConfirmedInfiniteCyclic);
        assert_eq!(
            h_classify(hp(4, 6, 2)),
            Classification::NotConnectedLog(NotLogReason::ExcludedPair42)
        );
        let c = h_classify(hp(6, 8, 4));
        assert_eq!(c.reason_code(), Some("HALF_PARAMS_NOT_PERFECT"));
        assert_eq!(c.witness(), "5");
        assert_eq!(
            h_classify(hp(3, 5, 2)),
            Classification::NotConnectedLog(NotLogReason::BettiNe1 { betti: 0 })
        );
    }

    #[test]
    fn classify_other_reasons() {
        // r = 0 mod n but |r - s| = 4
        assert_eq!(
            h_classify(hp(6, 2, 2)).reason_code(),
            Some("D_LOWER_BOUND_GT_1")
        );
        // (r,n,s) = 2, |r - s| = 4, neither multiple of n
        assert_eq!(
            h_classify(hp(2, 8, 6)).reason_code(),
            Some("D_LOWER_BOUND_GT_1")
        );
        // |r - s| = 2, (n, r+s) = 10
        assert_eq!(
            h_classify(hp(6, 10, 4)).reason_code(),
            Some("GCD_N_RPLUSS_NE_2")
        );
        // r = s with (r,n) > 1
        assert_eq!(
            h_classify(hp(2, 4, 2)),
            Classification::NotConnectedLog(NotLogReason::BettiNe1 { betti: 2 })
        );
    }

    #[test]
    fn two_generator_knot_examples() {
        assert_eq!(two_generator_knot(hp(2, 5, 2)), Some(TorusKnot { r: 2, n: 5 }));
        assert_eq!(two_generator_knot(hp(2, 4, 2)), None);
        assert_eq!(two_generator_knot(hp(3, 5, 2)), None);
        assert_eq!(TorusKnot { r: 2, n: 5 }.relation(), "a^5=b^2");
    }
}
