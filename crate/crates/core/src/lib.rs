//! Computational backing for the classification of monoidal-type categories by
//! maps out of the Catalan simplicial set.
//!
//! The library has three layers:
//!
//! * combinatorics: finite ordinals and monotone maps ([`ordcomb`]), the
//!   Catalan simplicial set ([`catalan`]), and the necklace posets underlying
//!   the homotopy coherent nerve ([`necklace`]);
//! * finite 2-categorical algebra: categories as composition tables, functors
//!   and natural transformations as explicit mappings ([`fincat`]);
//! * the classifiers: the `(A^x, T^x, eta^x_C)` family with its coherence
//!   equation ([`mapcore`]) and the lax / skew / sigma constructions that
//!   produce and invert such families ([`classify`]).

pub mod catalan;
pub mod classify;
pub mod error;
pub mod fincat;
pub mod mapcore;
pub mod necklace;
pub mod ordcomb;
pub mod report;

pub use error::{Error, Result};
pub use report::{Failure, Report};
