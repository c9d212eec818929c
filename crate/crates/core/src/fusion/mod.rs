//! The level-`c` fusion ring and Verlinde dimensions.

mod smatrix;
mod table;
mod verlinde;

pub use smatrix::{
    round_checked, verlinde_dim_smatrix, SMatrix, MAX_WEYL_ORDER, RESIDUAL_TOLERANCE,
};
pub use table::{affine_fold, FusionTable, CACHE_SCHEMA_VERSION};
pub use verlinde::{admissible_insertions, propagate, vacua_dim, verlinde_dim, HandleOrder};
