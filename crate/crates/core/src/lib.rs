//! Heisenberg-Weyl-parity toolkit for odd-dimensional qudits.
//!
//! Exact arithmetic in Z(d), the displacement-parity operators `𝔇(α,β,γ,ν)`,
//! the groups HW(d) ⊂ HWP(d) and Δ_d with their commutator series, coherent-state
//! frames of size d² and 2d², the unified Wigner-Weyl function, and noisy
//! reconstruction experiments.

pub mod dihedral;
pub mod error;
pub mod frames;
pub mod grid;
pub mod group;
pub mod io;
pub mod noise;
pub mod operators;
pub mod presets;
pub mod random;
pub mod ring;
pub mod verify;
pub mod wigner;

pub use num_complex::Complex64 as C64;

pub use dihedral::{Axis, DihedralRep};
pub use error::{Error, Result};
pub use frames::{BargmannTable, CoherentFrame, Fiducial, FrameKind};
pub use grid::PhasePoint;
pub use group::{DihedralElement, GroupClosure, GroupElement, HWPElement, LoopArea};
pub use noise::{NoiseConfig, NoiseKind, NoiseReport};
pub use operators::{Ket, Operator};
pub use ring::{Dim, ModInt, Phase};
pub use wigner::WWTable;
