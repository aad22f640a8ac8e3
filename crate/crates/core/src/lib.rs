//! Exact spectra of distance-`j` binary Hamming graphs `H(n, j)` and of the
//! quaternary Cayley graphs `G(r, s) = Cay(Z_4^n, (r, s, r, s))`.
//!
//! Every eigenvalue is computed with arbitrary-precision integers. Each
//! closed form ships with an independent brute-force oracle so the identities
//! can be checked at desk scale, and the spectral bounds on the quantum
//! chromatic number are evaluated on top of the exact spectra.

pub mod chiq_bounds;
pub mod combinatorics;
mod error;
pub mod gaussian;
pub mod hamming_spectrum;
pub mod krawtchouk;
pub mod weight_enum;
pub mod z4_spectrum;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
