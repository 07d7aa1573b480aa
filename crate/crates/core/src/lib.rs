//! Thermal geometric phases of a locally driven two-spin system.
//!
//! A pair of spin-1/2 particles is coupled by an anisotropic exchange term
//! while a magnetic field of fixed polar angle rotates about the z axis and
//! acts on the first spin only. This crate computes, in closed form and by
//! path-ordered integration:
//!
//! * the exact spectrum and eigenvectors of the driven pair ([`spinmodel`]),
//! * Gibbs states, heat capacities and their two-level decomposition
//!   ([`thermal`]),
//! * Uhlmann connections, holonomies and the mixed-state geometric phase of
//!   the full pair ([`uhlmann`]),
//! * reduced single-spin states, their Bloch geometry and analytic Uhlmann
//!   phases ([`subsystems`]),
//! * winding numbers, transition locations and critical curves in the
//!   coupling-temperature plane ([`analysis`]).
//!
//! All energies are rescaled by half the field magnitude, so the coupling
//! enters through the single dimensionless parameter `g` and temperatures
//! are measured in the same rescaled units with `k_B = 1`.

pub mod analysis;
pub mod error;
mod linalg;
pub mod spinmodel;
pub mod subsystems;
pub mod thermal;
pub mod uhlmann;

pub use error::Error;
pub use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

/// 2x2 complex matrix in the single-spin basis.
pub type Matrix2C = nalgebra::Matrix2<Complex64>;
/// 4x4 complex matrix in the product basis (up-up, up-down, down-up, down-down).
pub type Matrix4C = nalgebra::Matrix4<Complex64>;
/// Amplitudes of a two-spin state in the product basis.
pub type Vector4C = nalgebra::Vector4<Complex64>;
/// Square complex matrix of run-time dimension (2 for a qubit, 4 for the pair).
pub type MatrixC = nalgebra::DMatrix<Complex64>;
