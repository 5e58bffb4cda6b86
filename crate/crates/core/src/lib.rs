//! Ground-state properties of a massless scalar field in a one-dimensional
//! cavity whose second wall is a quantum harmonic oscillator.
//!
//! The wall's zero-point motion dresses the field vacuum with virtual photon
//! pairs. This crate computes, to second order in the wall-field coupling,
//! the photon spectrum, the wall excitation, the energy shift with its
//! free/interaction split, the resulting Casimir force correction and the
//! renormalized field energy density profile. An exact-diagonalization
//! oracle on small truncated Fock spaces cross-checks every perturbative
//! formula.

pub mod config;
pub mod density;
pub mod error;
pub mod hamiltonian;
pub mod observables;
pub mod oracle;
pub mod output;
pub mod params;
pub mod summation;

pub use error::{Error, Result};
pub use params::{max_mode_index, mode_frequency, ModeBasis, PhysicalParams};
