//! Exact arithmetic for descent on ℓ-th power twists of superelliptic curves
//! `y^ℓ = f(x)` over the rational function field `F_q(t)`, together with a
//! small number-field backend over `Q`, `Z[ω]` and `Q(ζ_ℓ)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`ffpoly`]: finite fields `F_{p^r}`, polynomials over them, factorization.
//! * [`places`]: places of `F_q(t)`, valuations, local ℓ-th power tests.
//! * [`symbols`]: power residue symbols and reciprocity checks.
//! * [`nftools`]: class numbers, Eisenstein integers, cyclotomic arithmetic.
//! * [`descent`]: twists, ambient groups, norm kernels, admissible primes,
//!   rank-0 twist search and Selmer growth.
//! * [`curvecount`]: point counts, L-polynomials, bounded point search.

pub mod arith;
pub mod curvecount;
pub mod descent;
pub mod error;
pub mod ffpoly;
pub mod linalg;
pub mod nftools;
pub mod places;
pub mod symbols;

pub use error::{Error, Result};
pub use ffpoly::{field_make, Fe, Field, PolyFq};
pub use places::{KElem, Place};
pub use symbols::SymbolValue;
