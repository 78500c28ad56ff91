//! Quadratic forms in creation/annihilation operators: standard real
//! forms, Bogolyubov diagonalization, closed-form spectra, brute-force
//! Fock-space oracles, and the local Witten-oscillator picture of
//! singular points of vector fields.
//!
//! Throughout, `a_i` is the CREATION operator and `a_i⁺` the
//! ANNIHILATION operator, `a_i⁺ Φ = 0`.

pub mod conventions;
pub mod error;
pub mod forms;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod morse;
pub mod oracle;
pub mod spectral;

pub use error::{Error, Result};
pub use forms::{
    apply_transform, from_standard, random_canonical, to_standard, validate, BogoliubovTransform,
    QuadraticForm, StandardForm, Statistics, Tolerances, ValidationReport,
};
pub use linalg::Matrix;
pub use spectral::{
    BosonModeData, FermionModeData, Label, ModeClass, Sector, SpectrumEntry, SpectrumResult,
};
