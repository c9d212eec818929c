//! Finite root systems of the simple types A–G and their representation
//! arithmetic.

mod cartan;
mod datum;
mod freudenthal;
mod tensor;
mod weight;

pub use cartan::{CartanMatrix, TypeLetter};
pub use datum::{DotOutcome, RootDatum};
pub use freudenthal::WeightSystem;
pub use tensor::{tensor_decompose, weyl_dim};
pub use weight::Weight;
