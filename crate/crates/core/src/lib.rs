//! Exact arithmetic for weight-2 Eisenstein series built from sieving and
//! rescaling operators, congruent theta series of quaternary quadratic forms,
//! and the point-count identities linking them to elliptic curves.

#![allow(clippy::manual_is_multiple_of, clippy::needless_range_loop)]

pub mod arith;
pub mod cyclotomic;
pub mod eisenstein;
pub mod elliptic;
pub mod error;
pub mod json;
pub mod linalg;
pub mod modular;
pub mod qseries;
pub mod quadform;
pub mod reference;
pub mod verify;

pub use cyclotomic::{roots_of_unity_filter_sum, zeta_power, CycNumber};
pub use error::{Error, Result};
pub use qseries::{e2_holomorphic, eta_product, jacobi_theta, sigma1, FourierSeries, SigmaCache};
