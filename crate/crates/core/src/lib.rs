//! Abelianization invariants of cyclically presented groups.
//!
//! The relation matrix of a cyclic presentation `G_n(w)` is the circulant
//! matrix built from the exponent sums of `w`, so its abelianization is
//! read off from the representer polynomial `f(t)` and `g(t) = t^n - 1`:
//! the order is `|Res(g, f)|` and the Betti number is `deg gcd(f, g)`.
//! On top of that sit the classification routines for the generalized
//! Fibonacci groups `H(r,n,s)` and a search harness over parameter ranges.

pub mod circulant;
pub mod cycpres;
pub mod error;
pub mod hclass;
pub mod intpoly;
pub mod record;
pub mod search;
pub mod verify;

pub use circulant::{AbelianGroup, ExponentVector};
pub use cycpres::{CyclicWord, HParams, Letter};
pub use error::{Error, Result};
pub use hclass::{Classification, GeneratorBound, NotLogReason, TorusKnot};
pub use intpoly::IntPolynomial;
pub use record::OutputRecord;
pub use search::{SearchBounds, SearchReport};
