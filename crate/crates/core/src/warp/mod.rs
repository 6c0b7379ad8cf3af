//! Invariant-metric construction and certification for disk-bundle halves of
//! cohomogeneity one manifolds: warping profiles, the block curvature
//! functions, and independent numerical oracles.

mod gauss;
pub mod profile;
pub mod ricci;
pub mod verify;

pub use profile::{
    build_gz_profile, build_modified_profile, smooth_profile, BlendWindow, Piece, ProfileJets,
    ProfileVariant, WarpProfile,
};
pub use ricci::{ric_functions, ric_t_component, BlockSplitting, RicValues};
pub use verify::{fd_oracle, profile_csv, verify_profile, CurvatureReport, OracleReport};
