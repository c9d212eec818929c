//! Combinatorics and dimension counts for parahoric conformal blocks.
//!
//! The crate covers a simple, split, untwisted affine root system and the
//! objects that hang off its fundamental alcove:
//!
//! * [`liealg`]: Cartan data for the types A–G (Bourbaki numbering), the Weyl
//!   group dot action, Freudenthal multiplicities and tensor product
//!   decomposition.
//! * [`alcove`]: facets as subsets of affine simple roots, the gcd/lcm
//!   invariants `l(F)` and `ℓ`, the admissible weight sets `P_c` and `P_c^F`,
//!   and the Levi subsystem attached to a facet.
//! * [`picard`]: central charges, the Picard lattice of the moduli stack and
//!   the descent criterion for line bundles on products of flag varieties.
//! * [`fusion`]: the level-`c` fusion ring (Kac–Walton), Verlinde dimensions
//!   with genus factorization, and an S-matrix oracle.
//! * [`bwb`]: Borel–Weil–Bott degree bookkeeping.
//!
//! Integer combinatorics is done in `i64`. The exact linear algebra in
//! [`linalg`] is generic over a field and is used with [`Rational`]; the
//! S-matrix oracle is generic over [`num_traits::Float`] and is used with
//! [`DoubleDouble`] by default.

pub mod alcove;
pub mod bwb;
pub mod error;
pub mod fusion;
pub mod liealg;
pub mod linalg;
pub mod picard;

pub use alcove::{Facet, LeviSubsystem, MarkedPoint, ParahoricDatum};
pub use bwb::{BwbInput, Marking};
pub use error::{Error, Result};
pub use fusion::{FusionTable, HandleOrder, SMatrix};
pub use liealg::{CartanMatrix, DotOutcome, RootDatum, TypeLetter, Weight};
pub use picard::{DescentVerdict, FlagLineBundle, StackLineBundle};

/// Exact rationals used for Gram matrices and linear solves.
pub type Rational = num_rational::Ratio<i64>;

/// Double-double floating point (about 106 bits of mantissa).
pub type DoubleDouble = twofloat::TwoFloat;

/// S-matrix evaluated in plain `f64`.
pub type SMatrixF64 = SMatrix<f64>;

/// S-matrix evaluated in double-double precision; this is the oracle used
/// by [`fusion::verlinde_dim_smatrix`].
pub type SMatrixDd = SMatrix<DoubleDouble>;
