//! Exact computations for newforms of `SO(2n+1)`: segments and the `M^*` comultiplication
//! in the Zelevinsky ring, discrete L-parameters and their conductors, the reduction
//! chain to seed parameters, Jacquet-module counting, and the coset geometry of
//! parahoric subgroups.

pub mod coset_geometry;
pub mod error;
pub mod gl_ring;
pub mod sample;
pub mod so_jacquet;
pub mod so_params;
pub mod symbolics;

pub use error::Error;
pub use symbolics::{HalfInt, QLaurent, UnitSign};
