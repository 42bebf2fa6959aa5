//! Exact arithmetic for interval exchange groups over a dense subgroup `Γ` of `ℝ`.

pub mod builtin;
pub mod circle;
pub mod docs;
pub mod error;
pub mod explorer;
pub mod gamma;
pub mod iet;
pub mod invariants;
pub mod subshift;
pub mod verify;

pub use circle::CircleSet;
pub use error::{Checked, Error, Result, Warning};
pub use gamma::{sign_of, AlgebraicGenerator, GammaElement, GammaSpec, MultiplierRule, Sign, SpecKind};
pub use iet::Iet;
pub use invariants::{AbelianGroupDescriptor, InvariantReport};
