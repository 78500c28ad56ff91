//! Closed-form diagonalization and spectra.
//!
//! Bosons go through the `R·T` pencil, fermions through a
//! determinant-constrained real SVD of `C`.

mod boson;
mod fermion;
mod ladder;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use boson::{
    boson_mode_levels, boson_spectrum, diagonalize_boson, BosonMode, BosonModeData, SpectralOptions,
};
pub use fermion::{
    diagonalize_fermion, fermion_invariants, fermion_spectrum, sign_word_sector, FermionInvariants,
    FermionModeData, MAX_FERMION_SPECTRUM_MODES,
};
pub use ladder::k_smallest_sums;

/// Classification of a single bosonic normal mode `t (b+b⁺)² + r (b−b⁺)²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeClass {
    Discrete,
    ContinuousInverted,
    ContinuousFree,
    ContinuousQuadratic,
    Constant,
}

impl fmt::Display for ModeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Fermion-number parity sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Even,
    Odd,
}

impl Sector {
    pub fn from_count(count: usize) -> Self {
        if count % 2 == 0 {
            Sector::Even
        } else {
            Sector::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Label {
    /// Bosonic occupation multi-index `(m_1, …, m_n)`.
    Occupations(Vec<usize>),
    /// Fermionic sign word, entries ±1.
    SignWord(Vec<i8>),
    /// Local Witten oscillator state: bosonic levels and fermionic occupations.
    Witten { m: Vec<usize>, f: Vec<u8> },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn tuple(xs: &[usize]) -> String {
            let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
        match self {
            Label::Occupations(m) => f.write_str(&tuple(m)),
            Label::SignWord(w) => {
                for &s in w {
                    f.write_str(if s > 0 { "+" } else { "-" })?;
                }
                Ok(())
            }
            Label::Witten { m, f: occ } => {
                let occ: String = occ.iter().map(|x| x.to_string()).collect();
                write!(f, "{}|{}", tuple(m), occ)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub energy: f64,
    pub label: Label,
    pub sector: Option<Sector>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Sorted ascending by energy.
    pub entries: Vec<SpectrumEntry>,
    /// True when `entries` is the whole spectrum (fermions).
    pub complete: bool,
    pub bounded_below: bool,
}

impl SpectrumResult {
    pub fn energies(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.energy).collect()
    }

    /// Energies of one sector, ascending.
    pub fn sector_energies(&self, sector: Sector) -> Vec<f64> {
        self.entries
            .iter()
            .filter(|e| e.sector == Some(sector))
            .map(|e| e.energy)
            .collect()
    }
}
