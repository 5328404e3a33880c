//! Discrete multi-material branched transport.
//!
//! A network in R^d carries integer vector multiplicities `θ ∈ Z^m`, one
//! coordinate per material, and pays `Σ length · C(θ)` for a cost `C`.
//! Giving every produced unit its own label turns this into a mass
//! minimisation problem in `Z^N` under a monotone norm built from `C`;
//! this crate builds that norm, converts networks in both directions,
//! checks constant calibrations and solves small instances.

pub mod calibration;
pub mod cost;
pub mod error;
pub mod geometry;
pub mod instance;
pub mod layout;
pub mod lifting;
pub mod lp;
pub mod model;
pub mod norm;
pub mod order;
pub mod solver;
pub mod svg;

pub use calibration::{mass_gap_certificate, verify_calibration, CalibrationReport, ConstantForm, MassGapReport};
pub use cost::{check_axioms, extend_from_rectangle, symmetrize_for_orthant, AxiomReport, CostKind, MultiMaterialCost, StarNorm};
pub use error::{Error, Result};
pub use layout::{label_layout, LabelLayout, LabelPermutation};
pub use lifting::{boundary_permutation, flow_decompose, is_forest_per_component, lift, project, remove_cycles, Decomposition, FlowPath};
pub use model::{boundary_of, energy, mass, Atom, Boundary, Edge, LabeledBoundary, LabeledNetwork, Network};
pub use norm::{build_ball, check_monotone_absolute, verify_eqn_main, NormBall};
pub use order::precedes;
pub use solver::{enumerate_topologies, grid_oracle, optimize_geometry, solve_grid, solve_mmtp, GridSpec, SolveOptions, SolveResult, Topology};
pub use instance::InstanceDocument;

