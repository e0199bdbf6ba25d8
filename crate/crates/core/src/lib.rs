//! Additive codes over `F_{p^e}` under arbitrary character-table dualities.
//!
//! A duality is encoded by a nonsingular `e x e` matrix `D` over `F_p` with
//! `chi_{x_i}(x_j) = xi^{D_ij}`; every character value is handled through its
//! exponent, so all arithmetic is exact arithmetic in `Z/pZ`.
//!
//! Modules, bottom-up:
//!
//! * [`fp`]: prime-field scalars and matrices (rref, rank, nullspace,
//!   congruent diagonalization, quadratic character).
//! * [`duality`]: field parameters, elements, dualities, the associated
//!   quadratic form and self-orthogonal element counting.
//! * [`code`]: additive codes, log-Gram matrices, hulls, duals and minimum
//!   distance.
//! * [`constructions`]: checked builders for ACD and small-rank hull codes.
//! * [`search`]: canonical subspace enumeration and the `d_1[n, k]` search.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod code;
pub mod constructions;
pub mod duality;
mod error;
pub mod fp;
mod packed;
pub mod search;

pub use code::{AdditiveCode, HullClass, HullReport};
pub use duality::{Duality, DualityClass, GfElement, PrimePowerParams};
pub use error::{Error, Hypothesis, Result};
pub use fp::{FpMatrix, PrimeField};

/// Default ceiling on any exhaustive enumeration (elements, dualities,
/// codewords, subspaces).
pub const DEFAULT_BUDGET: u64 = 1 << 24;
