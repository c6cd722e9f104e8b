//! Verification workbench for the biextension line bundle over the moduli
//! space of curves: exact symplectic and exterior algebra, the central
//! extension `G_Z`, finite-field invariant checks, genus 1/2 modular-form
//! numerics, degenerating period matrices and divisor-class bookkeeping.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod degeneration;
pub mod error;
pub mod heisenberg;
pub mod json;
pub mod modular;
pub mod picard;
pub mod repcheck;
pub mod symplectic;

pub use error::{Error, Result};
