//! Exact arithmetic, tile sets and self-similarity computations for the
//! metallic-mean Wang tilings.

pub mod averages;
pub mod coding;
pub mod equations;
pub mod error;
pub mod geometry;
pub mod induction;
pub mod io;
pub mod quadfield;
pub mod svg;
pub mod tiles;
pub mod verify;

pub use error::{FieldError, InductionError, IoError, TileError};
pub use quadfield::{FieldSpec, QuadNum};
pub use tiles::{Label, WangTile};
