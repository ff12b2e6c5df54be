//! Exact computation of the binomial part Bin(I) of a polynomial ideal:
//! the subideal generated by all monomials and binomials contained in I.
//!
//! The computation runs over a tower of exact coefficient fields (the
//! rationals, prime and non-prime finite fields, rational function fields
//! and simple algebraic extensions) and proceeds through exponent lattices
//! of field elements, exponent lattices of units in zero-dimensional
//! algebras, unit lattices with their associated characters, and finally
//! cellular decompositions with (s,t)-binomial parts.

pub mod error;
pub mod intlattice;
pub mod arith;
pub mod poly;
pub mod linalg;
pub mod groebner;
pub mod ideal;
pub mod factor;
pub mod explat;
pub mod zerodim;
pub mod unitchar;
pub mod binpart;

pub use error::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

use std::sync::atomic::{AtomicU64, Ordering};

static GLOBAL_SEED: AtomicU64 = AtomicU64::new(0x5eed);

/// Seed for the randomized splitting decisions (maximal-ideal linear
/// forms); fixed default, settable once from the command line.
pub fn set_global_seed(seed: u64) {
    GLOBAL_SEED.store(seed, Ordering::Relaxed);
}

pub fn global_seed() -> u64 {
    GLOBAL_SEED.load(Ordering::Relaxed)
}
