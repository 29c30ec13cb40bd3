//! Exact commutative-algebra kernel for checking Ulrich-module obstructions
//! on finite-colength subrings of `k[x, y]` and related rings.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: coefficients, monomials, polynomials, the text grammar;
//! * [`groebner`]: Buchberger's algorithm and ideal arithmetic;
//! * [`semigroup`]: affine semigroups, gap sets, Hilbert-Samuel data;
//! * [`subring`]: presented subrings, subalgebra membership, the ring builder;
//! * [`closure`]: reductions and integral-closure membership;
//! * [`koszul`]: Koszul homology lengths for the module classes used here;
//! * [`sequences`]: parametric module families and asymptotic tables;
//! * [`verify`]: end-to-end pipelines producing [`verify::VerificationReport`]s.

pub mod algebra;
pub mod closure;
pub mod error;
pub mod groebner;
pub mod koszul;
pub mod semigroup;
pub mod sequences;
pub mod subring;
pub mod verify;

pub use error::{Error, Result};
