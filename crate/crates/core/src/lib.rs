//! Exact arithmetic for positive-definite binary quadratic forms under the
//! congruence subgroups Γ₀(N).
//!
//! The crate covers
//! - the right action of SL₂(ℤ) on forms and the matching Möbius action on
//!   CM points ([`forms`]),
//! - classical and Γ₀(N) reduction, enumeration of reduced forms and an
//!   equivalence decision procedure ([`reduction`]),
//! - the explicit fundamental region of Γ₀(p) for primes p ≥ 5
//!   ([`fundomain`]),
//! - the form class group 𝒞(D, Γ₀(N)) under Dirichlet composition
//!   ([`classgroup`]) and an independent lattice-level check of that
//!   composition ([`ideal`]),
//! - N-representation of integers and the N-genus theory of primes
//!   ([`genus`]).
//!
//! Everything is `no_std` + `alloc`; all comparisons are exact over ℤ or ℚ.

#![no_std]
#![allow(clippy::many_single_char_names)]

extern crate alloc;

pub mod arith;
pub mod classgroup;
mod error;
pub mod forms;
pub mod fundomain;
pub mod genus;
pub mod ideal;
pub mod reduction;

pub use error::{Error, Result};
pub use forms::{CmPoint, Discriminant, Form, GammaLevel, GroupElement};

pub mod prelude {
    pub use crate::classgroup::{class_group, dirichlet_compose, principal_form, FormClassGroup};
    pub use crate::forms::{kronecker, representation_values, CmPoint, Discriminant, Form, GammaLevel, GroupElement};
    pub use crate::reduction::{canonical_rep, enumerate_reduced, equivalent_gamma0, reduce_sl2};
    pub use crate::{Error, Result};
}
