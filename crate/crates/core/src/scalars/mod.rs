//! Rings `E`, their division rings `Q`, valuations, residues and `τ`.

pub mod euclid;
pub mod field;
pub mod hurwitz;
pub mod integers;
pub mod opposite;
pub mod skew;
pub mod traits;
pub mod value;

pub use field::{FieldElem, FiniteField};
pub use hurwitz::{Hurwitz, HurwitzRing, HurwitzScalars, QuaternionAlgebra, RatQuat};
pub use integers::{IntegerRing, IntegerScalars, Rationals};
pub use opposite::Opposite;
pub use skew::{SkewFrac, SkewFracField, SkewPoly, SkewRing, SkewScalars};
pub use traits::{DivisionRing, EuclideanRing, Ring, RingKind, Scalars};
pub use value::Val;

/// Shorthand for the element type of `E`.
pub type BaseElem<S> = <<S as Scalars>::Base as Ring>::Elem;
/// Shorthand for the element type of `Q`.
pub type FracElem<S> = <<S as Scalars>::Frac as Ring>::Elem;
