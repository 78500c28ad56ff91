//! Brute-force ground truth on explicit Fock spaces.

mod eigen;
mod fock;
mod sparse;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{to_standard, validate, QuadraticForm, Statistics, Tolerances};
use crate::spectral::{
    boson_spectrum, diagonalize_boson, diagonalize_fermion, fermion_spectrum, Sector,
    SpectralOptions,
};

pub use eigen::{
    davidson, exact_spectrum, lowest_eigenpairs, symmetric_eigenpairs, DavidsonOptions, Eigenpairs,
    DENSE_LIMIT,
};
pub use fock::{
    assemble, build_boson_rep, build_boson_rep_with_guard, build_fermion_rep, build_hamiltonian,
    build_standard_hamiltonian, form_terms, number_operator, parity_sectors, projector_support,
    standard_terms, BosonFockRep, FermionFockRep, FockSpace, Ladder, Term, BOSON_DIM_GUARD,
    FERMION_DIM_GUARD, FERMION_MAX_MODES,
};
pub use sparse::{CsrBuilder, CsrMatrix};

/// Exact fermionic spectrum split by parity sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorSpectrum {
    pub all: Vec<f64>,
    pub even: Vec<f64>,
    pub odd: Vec<f64>,
}

/// Dense eigensolve of the oracle Hamiltonian of a fermionic form, one
/// sector at a time.
pub fn fermion_oracle_spectrum(form: &QuadraticForm) -> Result<SectorSpectrum> {
    let rep = build_fermion_rep(form.n())?;
    let h = build_hamiltonian(form, &rep)?.to_dense();
    let (even_p, odd_p) = parity_sectors(&rep)?;
    let block = |idx: &[usize]| exact_spectrum(&h.select_rows(idx).select_columns(idx));
    let even = block(&projector_support(&even_p))?;
    let odd = block(&projector_support(&odd_p))?;
    let mut all: Vec<f64> = even.iter().chain(&odd).cloned().collect();
    all.sort_by(f64::total_cmp);
    Ok(SectorSpectrum { all, even, odd })
}

/// Eigenvalues of the truncated boson Hamiltonian that agree between two
/// cutoffs.
#[derive(Debug, Clone, PartialEq)]
pub struct StableSpectrum {
    /// Stable prefix, taken from the finer cutoff.
    pub values: Vec<f64>,
    pub requested: usize,
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub warning: Option<String>,
}

/// Cutoffs visited on the way to `cutoff`, starting from the largest box
/// small enough for the dense solver.
/// Largest box solved densely at the bottom of a cutoff chain.
const CHAIN_START_DIM: usize = 256;

fn cutoff_chain(n: usize, cutoff: usize) -> Vec<usize> {
    let fits = |c: usize| {
        (c + 1)
            .checked_pow(n as u32)
            .is_some_and(|d| d <= CHAIN_START_DIM)
    };
    let mut start = 1;
    while start < cutoff && fits(start + 1) {
        start += 1;
    }
    let mut chain = vec![start];
    let mut c = start;
    while c * 2 < cutoff {
        c *= 2;
        chain.push(c);
    }
    if c < cutoff {
        chain.push(cutoff);
    }
    chain
}

/// The `k` smallest eigenvalues stable between `cutoff` and `2·cutoff`.
///
/// Each larger box is warm-started from the eigenvectors of the previous
/// one, which keeps the iterative solver cheap for well-converged states.
pub fn truncation_stable_spectrum(
    form: &QuadraticForm,
    cutoff: usize,
    k: usize,
    tol: f64,
) -> Result<StableSpectrum> {
    if form.statistics != Statistics::Boson {
        return Err(Error::Precondition(
            "truncation control applies to bosonic forms".into(),
        ));
    }
    let report = validate(form, &Tolerances::default());
    if !report.is_valid() {
        return Err(Error::Validation(report.to_string()));
    }
    let empty = StableSpectrum {
        values: Vec::new(),
        requested: k,
        coarse: Vec::new(),
        fine: Vec::new(),
        warning: None,
    };
    if k == 0 {
        return Ok(empty);
    }
    let n = form.n();
    // Fail fast on the guard before any work.
    build_boson_rep(n, 2 * cutoff)?;

    let mut chain = cutoff_chain(n, cutoff);
    chain.push(2 * cutoff);
    let mut prev: Option<(BosonFockRep, Vec<Vec<f64>>)> = None;
    let mut levels: Vec<Vec<f64>> = Vec::new();
    for &c in &chain {
        let rep = build_boson_rep(n, c)?;
        let h = build_hamiltonian(form, &rep)?;
        let guess: Vec<Vec<f64>> = match &prev {
            Some((small, vecs)) => vecs.iter().map(|v| rep.embed_from(small, v)).collect(),
            None => Vec::new(),
        };
        let pairs = lowest_eigenpairs(&h, k, &guess)?;
        levels.push(pairs.values);
        let mut carried = pairs.vectors;
        carried.extend(pairs.spare);
        prev = Some((rep, carried));
    }
    let fine = levels.pop().expect("chain is non-empty");
    let coarse = levels.pop().expect("chain has two cutoffs");
    let stable = coarse
        .iter()
        .zip(&fine)
        .take_while(|(a, b)| (*a - *b).abs() <= tol)
        .count();
    let warning = (stable < k).then(|| {
        format!(
            "only {stable} of {k} eigenvalues are stable between cutoffs {cutoff} and {}",
            2 * cutoff
        )
    });
    Ok(StableSpectrum {
        values: fine[..stable].to_vec(),
        coarse,
        fine,
        warning,
        ..empty
    })
}

/// Closed form against oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_abs_deviation: f64,
    pub compared: usize,
    pub sector_mismatches: usize,
    pub bounded_below: bool,
    /// Requested values the oracle could not pin down.
    pub unstable: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_abs_deviation <= tol && self.sector_mismatches == 0 && self.unstable == 0
    }
}

fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs()))
}

fn sector_mismatches(closed: &[f64], oracle: &[f64], tol: f64) -> usize {
    let paired = closed
        .iter()
        .zip(oracle)
        .filter(|(x, y)| (*x - *y).abs() > tol)
        .count();
    paired + closed.len().abs_diff(oracle.len())
}

/// Full fermionic spectrum and sectors against the dense oracle.
pub fn verify_fermion(form: &QuadraticForm, tol: f64) -> Result<VerifyReport> {
    let std = to_standard(form, &Tolerances::default())?;
    let closed = fermion_spectrum(&diagonalize_fermion(&std)?)?;
    let oracle = fermion_oracle_spectrum(form)?;
    let energies = closed.energies();
    let mismatches = sector_mismatches(&closed.sector_energies(Sector::Even), &oracle.even, tol)
        + sector_mismatches(&closed.sector_energies(Sector::Odd), &oracle.odd, tol);
    Ok(VerifyReport {
        max_abs_deviation: max_deviation(&energies, &oracle.all),
        compared: energies.len().min(oracle.all.len()),
        sector_mismatches: mismatches,
        bounded_below: true,
        unstable: 0,
        warning: None,
    })
}

/// Lowest `k` bosonic energies against the truncation-stable oracle.
pub fn verify_boson(
    form: &QuadraticForm,
    cutoff: usize,
    k: usize,
    tol: f64,
) -> Result<VerifyReport> {
    let std = to_standard(form, &Tolerances::default())?;
    let data = diagonalize_boson(&std, &SpectralOptions::default())?;
    let closed = boson_spectrum(&data, k)?;
    if !closed.bounded_below {
        return Ok(VerifyReport {
            max_abs_deviation: 0.0,
            compared: 0,
            sector_mismatches: 0,
            bounded_below: false,
            unstable: 0,
            warning: Some("form is not bounded below; nothing to compare".into()),
        });
    }
    let energies = closed.energies();
    let stable = truncation_stable_spectrum(form, cutoff, energies.len(), tol)?;
    Ok(VerifyReport {
        max_abs_deviation: max_deviation(&energies, &stable.values),
        compared: stable.values.len(),
        sector_mismatches: 0,
        bounded_below: true,
        unstable: energies.len() - stable.values.len(),
        warning: stable.warning,
    })
}

/// Dispatches on the statistics of `form`.
pub fn verify(form: &QuadraticForm, cutoff: usize, k: usize, tol: f64) -> Result<VerifyReport> {
    match form.statistics {
        Statistics::Fermion => verify_fermion(form, tol),
        Statistics::Boson => verify_boson(form, cutoff, k, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag, Matrix};

    fn oscillator() -> QuadraticForm {
        QuadraticForm::new(Statistics::Boson, Matrix::zeros(1, 1), diag(&[1.0]), 0.0)
    }

    #[test]
    fn chain_ends_at_cutoff() {
        assert_eq!(cutoff_chain(1, 40), vec![40]);
        assert_eq!(*cutoff_chain(3, 60).last().unwrap(), 60);
        assert_eq!(cutoff_chain(3, 60)[0], 5);
    }

    #[test]
    fn oscillator_is_stable() {
        let s = truncation_stable_spectrum(&oscillator(), 40, 5, 1e-9).unwrap();
        assert!(s.warning.is_none());
        for (m, e) in s.values.iter().enumerate() {
            assert!((e - 2.0 * m as f64).abs() < 1e-9);
        }
        assert!(truncation_stable_spectrum(&oscillator(), 40, 0, 1e-9)
            .unwrap()
            .values
            .is_empty());
    }

    #[test]
    fn inverted_mode_drifts() {
        // t = r = 1/2: U = 1, V = 0.
        let form = QuadraticForm::new(Statistics::Boson, diag(&[1.0]), Matrix::zeros(1, 1), 0.0);
        let s = truncation_stable_spectrum(&form, 40, 3, 1e-6).unwrap();
        assert!(s.values.is_empty());
        assert!(s.warning.is_some());
    }

    #[test]
    fn rotation_form_oracle() {
        let u = 1.0;
        let form = QuadraticForm::new(
            Statistics::Fermion,
            Matrix::from_row_slice(2, 2, &[0.0, u, -u, 0.0]),
            Matrix::zeros(2, 2),
            0.0,
        );
        let s = fermion_oracle_spectrum(&form).unwrap();
        let want = [-2.0, 0.0, 0.0, 2.0];
        assert!(max_deviation(&s.all, &want) < 1e-12);
        let report = verify_fermion(&form, 1e-9).unwrap();
        assert!(report.passed(1e-9));
        assert_eq!(report.compared, 4);
    }
}
