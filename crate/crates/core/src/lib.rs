//! Quantum quench simulation toolkit for 1D spin chains.
//!
//! Drives transverse-field Ising and 3-state Potts chains through their
//! quantum phase transitions at controlled sweep rates, counts domain-wall
//! defects with several kink operators, and extracts the Kibble-Zurek
//! critical exponent from the rate dependence of the kink density.
//!
//! The crate is organized as a set of engines and operator families behind
//! runtime-selectable registries:
//!
//! - [`tensor`]: dense complex tensor kernels (truncated SVD, Hermitian
//!   eigendecomposition, matrix exponential),
//! - [`model`]: lattice model specifications and Hamiltonian term builders,
//! - [`mps`]: matrix-product-state engine (DMRG ground states, second-order
//!   TEBD time evolution),
//! - [`exact`]: dense state-vector reference engine for small chains,
//! - [`observables`]: diagonal kink/defect operators and profiles,
//! - [`protocol`]: the quench driver and scan orchestration,
//! - [`scaling`]: power-law fits and KZ-window detection.

pub mod exact;
pub mod model;
pub mod mps;
pub mod observables;
pub mod protocol;
pub mod scaling;
pub mod tensor;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
