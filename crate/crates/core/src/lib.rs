//! Exact computations in the category of normal coherent sheaves on the
//! monoid projective line `P¹`, and in its Hall algebra.
//!
//! The crate is layered bottom-up:
//!
//! * [`monoid`]: the pointed monoids `⟨t⟩`, `⟨t⁻¹⟩`, `⟨t, t⁻¹⟩`.
//! * [`module`]: explicit finite pointed-set modules over `⟨t⟩`, with
//!   graph-based classification into ladders and cycles.
//! * [`sheaf`]: isomorphism classes of normal coherent sheaves on `P¹`,
//!   Hom counting, short exact sequences, Hall numbers and `K₀`.
//! * [`hall`]: the Hall algebra with convolution product and coproduct.
//! * [`lie`]: the loop algebra `L𝔤𝔩₂⁺ ⊕ κ` and the map `ρ` into the Hall
//!   algebra.
//! * [`oracle`] and [`suite`]: brute-force cross-checks and the
//!   verification suites driven by the CLI.

pub mod error;
pub mod hall;
pub mod lie;
mod linalg;
pub mod module;
pub mod monoid;
pub mod oracle;
mod parse;
pub mod sheaf;
pub mod suite;

pub use error::{Error, ParseError, Result};
pub use hall::{Degree, HallElement, HallTensor};
pub use lie::{LieBasisVector, LieElement, RhoMode};
pub use module::{FinModule, ModuleClass, ModuleSummand};
pub use monoid::{F1Monoid, MonoidElement, PrimeIdeal};
pub use sheaf::{GluingData, Indecomposable, K0Class, Point, SheafClass};

/// Exact rational coefficients used throughout the Hall algebra.
pub type Rational = num_rational::BigRational;
