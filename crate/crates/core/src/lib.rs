//! Generalized rank weights of rank-metric codes over finite field extensions.

pub mod analysis;
pub mod cli;
pub mod code;
pub mod error;
pub mod gf;
pub mod kspace;
pub mod weights;

pub use code::{Isometry, RankCode};
pub use error::{Error, Result};
pub use gf::{Elem, ExtensionField, FieldSpec, Gf, LBasis};
pub use kspace::{Matrix, Subspace};
pub use weights::{Definition, WeightConfig, WeightProfile};
