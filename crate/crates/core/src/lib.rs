//! Configurations of stable valued translation quivers of Dynkin type.
//!
//! The crate builds the quivers `ZΔ` (as finite windows), their quotients by
//! cyclic groups `<τ^k>` and `<τ^k ρ>`, computes the hom-length function `h`
//! through the `θ` recursion, enumerates configurations, and relates the
//! classical types to 2-Brauer relations.

pub mod bijection;
pub mod bitset;
pub mod brauer;
pub mod combo;
pub mod config;
pub mod dynkin;
pub mod error;
pub mod exceptional;
pub mod export;
pub mod hom;
pub mod labels;
pub mod oracle;
pub mod quiver;
pub mod verify;

pub use dynkin::{build_dynkin, DynkinDiagram, DynkinKind};
pub use error::{Error, Result};
pub use labels::{LabelScheme, Sign, VertexLabel};
pub use quiver::{build_quotient, build_z_window, check_weakly_admissible, GroupSpec, TranslationQuiver};
