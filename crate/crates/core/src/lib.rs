//! Exact certification that the A¹-Euler characteristic of `G/N` is a unit
//! in the Grothendieck–Witt ring, for reductive groups given by root data.
//!
//! * [`root_datum`]: root data and Weyl groups as integer matrix groups.
//! * [`coinvariants`]: fake degrees of the coinvariant algebra and the rank.
//! * [`tori`]: real torus classes, compact ranks and the signature.
//! * [`gw`]: Grothendieck–Witt rings over several field classes.
//! * [`pipeline`] and [`cli`]: the assembled report and its command line.

pub mod cli;
pub mod coinvariants;
pub mod error;
pub mod gw;
pub mod linalg;
pub mod pipeline;
pub mod polynomial;
pub mod root_datum;
pub mod tori;

pub use error::{Error, Result};
