//! Exact computational algebra for the Bost-Connes system on the cyclotomic
//! group ring `Z[Q/Z]` and its lifts.
//!
//! The crate is organised around a handful of effective models:
//!
//! * [`qz`] / [`cyclo`] — arithmetic in `Q/Z` and integer-polynomial
//!   cyclotomic machinery (trial division against `Phi_d` decides whether an
//!   endomorphism is quasi-unipotent).
//! * [`group_ring`] — the group rings `Z[Q/Z]` and `Q[Q/Z]` with the maps
//!   `sigma_n`, `rho_tilde_n`, `rho_n`, the idempotents `pi_n`, and the test
//!   for membership in the subring spanned by the elements `n*pi_n`.
//! * [`bc`] — the integral Bost-Connes algebra as a normal-form calculator
//!   for words in `mu_tilde_n`, `mu_n^*` and group-ring coefficients, plus
//!   its rational crossed-product form.
//! * [`orbits`] — finite cyclic-orbit sums: the zero-dimensional computable
//!   sector of the equivariant Grothendieck ring, with `sigma_n`,
//!   `rho_tilde_n` and the equivariant Euler characteristic.
//! * [`witt`] — Burnside marks, truncated big Witt vectors, ghost maps,
//!   Frobenius and Verschiebung.
//! * [`dynamical`] — graded integer matrices modelling `f_*` on homology,
//!   quasi-unipotence certificates and the spectrum Euler characteristic.
//! * [`scissors`] — pi_0-level K-theory of finitely presented assemblers via
//!   Smith normal form, with induced maps of endofunctors.
//! * [`expectation`] — Gibbs expectation values: Hurwitz zeta by
//!   Euler-Maclaurin summation, polylogarithms at roots of unity, and
//!   equivariant Hodge-Deligne expectation polynomials.
//!
//! Everything is exact except [`expectation`], which is deterministic `f64`
//! numerics. All values are immutable and all operations are pure, so the
//! whole crate is safe to use from multiple threads without synchronisation.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod bc;
pub mod cyclo;
pub mod dynamical;
pub mod error;
pub mod expectation;
pub mod group_ring;
pub mod matrix;
pub mod orbits;
pub mod qz;
pub mod scissors;
pub mod snf;
pub mod witt;

pub use error::Error;
pub use qz::QZ;
