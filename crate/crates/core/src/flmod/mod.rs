//! Fontaine–Laffaille modules killed by `ℓ`: objects, internal Hom, `Ext¹`
//! and explicit extensions.

pub mod ext;
pub mod fp;
pub mod hom;
pub mod module;

pub use ext::{
    adjunction_check, build_extension, find_isomorphism, is_fl_morphism, split_by_cohomology, split_by_search,
    AdjunctionReport, FLExtension,
};
pub use fp::{FpMat, Subspace};
pub use hom::{ext1_dim, hom_object, FLHom};
pub use module::{object_mn, unit_object, FLModule, FLModuleJson};
