//! Exact computations for the affine group `K⋊K*` acting on the adelic
//! space `Ω_A`, for `K = Q` and imaginary quadratic fields.
//!
//! * [`numberfield`]: elements, ideals, primes, valuations, class groups, units.
//! * [`primesets`]: finitely describable sets of primes and the power-cofinite
//!   topology on `2^𝒫`.
//! * [`adelic`]: superideals, symbolic adeles and points `ω_{r,a}`.
//! * [`dynamics`]: the action, orbit closures, quasi-orbits, stabilizers and
//!   the primitive ideal lattice.
//! * [`cli`]: the `adelic-orbit` command-line frontend.

pub mod adelic;
pub mod arith;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod numberfield;
pub mod primesets;
pub mod sample;

pub use error::{Error, Result};
