use super::{Label, Sector, SpectrumEntry, SpectrumResult};
use crate::conventions::parity_offset;
use crate::error::{Error, Result};
use crate::forms::StandardForm;
use crate::linalg::Matrix;

/// Largest mode count for which the full `2ⁿ` spectrum is listed.
pub const MAX_FERMION_SPECTRUM_MODES: usize = 20;

/// Relative threshold below which the smallest s-number counts as zero.
const SIGN_AMBIGUITY_TOL: f64 = 1e-10;

/// Diagonal form `O_+ C O_− = diag(λ)` with `O_± ∈ SO(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionModeData {
    pub o_plus: Matrix,
    pub o_minus: Matrix,
    pub lambdas: Vec<f64>,
    pub k0: f64,
    /// `C` is (numerically) singular, so the sign of the smallest `λ` is
    /// not fixed by `det C`.
    pub sign_ambiguous: bool,
}

impl FermionModeData {
    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn negative_count(&self) -> usize {
        self.lambdas.iter().filter(|l| **l < 0.0).count()
    }
}

/// Real SVD `C = Aᵗ Σ B` with `A, B` rotated into `SO(n)` by negating the
/// smallest singular value once per reflection.
pub fn diagonalize_fermion(std: &StandardForm) -> Result<FermionModeData> {
    let (c, k0) = match std {
        StandardForm::Fermion { c, k0 } => (c, *k0),
        StandardForm::Boson { .. } => {
            return Err(Error::Precondition(
                "expected a fermionic standard form".into(),
            ))
        }
    };
    let n = c.nrows();
    let svd = c.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^t");

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));

    let mut o_plus = Matrix::zeros(n, n);
    let mut o_minus = Matrix::zeros(n, n);
    let mut lambdas = Vec::with_capacity(n);
    for (k, &idx) in order.iter().enumerate() {
        o_plus.set_row(k, &u.column(idx).transpose());
        o_minus.set_column(k, &v_t.row(idx).transpose());
        lambdas.push(svd.singular_values[idx]);
    }

    let last = n - 1;
    if o_plus.determinant() < 0.0 {
        let flipped = -o_plus.row(last);
        o_plus.set_row(last, &flipped);
        lambdas[last] = -lambdas[last];
    }
    if o_minus.determinant() < 0.0 {
        let flipped = -o_minus.column(last);
        o_minus.set_column(last, &flipped);
        lambdas[last] = -lambdas[last];
    }

    let largest = lambdas[0].abs();
    let sign_ambiguous = lambdas[last].abs() <= SIGN_AMBIGUITY_TOL * largest || largest == 0.0;
    Ok(FermionModeData {
        o_plus,
        o_minus,
        lambdas,
        k0,
        sign_ambiguous,
    })
}

/// Parity sector of the eigenvector labelled by a sign word.
pub fn sign_word_sector(word: &[i8]) -> Sector {
    let minus = word.iter().filter(|w| **w < 0).count();
    Sector::from_count(minus + parity_offset(word.len()))
}

/// All `2ⁿ` eigenvalues `Σ_p w_p λ_p + k0`, `w ∈ {±1}ⁿ`, each with its
/// parity sector.
pub fn fermion_spectrum(data: &FermionModeData) -> Result<SpectrumResult> {
    let n = data.n();
    if n > MAX_FERMION_SPECTRUM_MODES {
        return Err(Error::Resource {
            dim: 1usize << n.min(63),
            limit: 1 << MAX_FERMION_SPECTRUM_MODES,
        });
    }
    let mut entries: Vec<SpectrumEntry> = (0..1usize << n)
        .map(|mask| {
            // Bit p set ⇔ w_p = +1 (mode p occupied).
            let word: Vec<i8> = (0..n)
                .map(|p| if mask >> p & 1 == 1 { 1 } else { -1 })
                .collect();
            let energy = word
                .iter()
                .zip(&data.lambdas)
                .map(|(w, l)| f64::from(*w) * l)
                .sum::<f64>()
                + data.k0;
            SpectrumEntry {
                energy,
                sector: Some(sign_word_sector(&word)),
                label: Label::SignWord(word),
            }
        })
        .collect();
    entries.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(SpectrumResult {
        entries,
        complete: true,
        bounded_below: true,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionInvariants {
    pub det: f64,
    /// Singular values, descending.
    pub s_numbers: Vec<f64>,
}

/// `det C` and the s-numbers of `C`; together a complete set of invariants
/// under positive transforms.
pub fn fermion_invariants(c: &Matrix) -> FermionInvariants {
    let mut s_numbers: Vec<f64> = c.clone().singular_values().iter().cloned().collect();
    s_numbers.sort_by(|a, b| b.total_cmp(a));
    FermionInvariants {
        det: c.determinant(),
        s_numbers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag, max_abs, max_off_diagonal};

    fn fermion(c: Matrix, k0: f64) -> StandardForm {
        StandardForm::Fermion { c, k0 }
    }

    fn check_invariants(c: &Matrix, data: &FermionModeData) {
        let d = &data.o_plus * c * &data.o_minus;
        assert!(max_off_diagonal(&d) < 1e-12);
        for (i, l) in data.lambdas.iter().enumerate() {
            assert!((d[(i, i)] - l).abs() < 1e-12);
        }
        assert!((data.o_plus.determinant() - 1.0).abs() < 1e-12);
        assert!((data.o_minus.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_input() {
        let c = diag(&[3.0, -2.0]);
        let data = diagonalize_fermion(&fermion(c.clone(), 0.0)).unwrap();
        check_invariants(&c, &data);
        assert_eq!(data.lambdas, vec![3.0, -2.0]);
        assert!(max_abs(&(&data.o_plus - Matrix::identity(2, 2))) < 1e-15);
        let inv = fermion_invariants(&c);
        assert!((inv.det + 6.0).abs() < 1e-12);
        assert_eq!(inv.s_numbers, vec![3.0, 2.0]);
    }

    #[test]
    fn rotation_is_absorbed() {
        let u = 1.7;
        let c = Matrix::from_row_slice(2, 2, &[0.0, u, -u, 0.0]);
        let data = diagonalize_fermion(&fermion(c.clone(), 0.0)).unwrap();
        check_invariants(&c, &data);
        for l in &data.lambdas {
            assert!((l - u).abs() < 1e-12);
        }
        let inv = fermion_invariants(&c);
        assert!((inv.det - u * u).abs() < 1e-12);
    }

    #[test]
    fn odd_determinant_gives_one_negative() {
        let c = diag(&[1.0, 1.0, -1.0]);
        let data = diagonalize_fermion(&fermion(c.clone(), 0.0)).unwrap();
        check_invariants(&c, &data);
        assert_eq!(data.negative_count(), 1);
        assert!(!data.sign_ambiguous);
    }

    #[test]
    fn singular_c_is_flagged() {
        let data = diagonalize_fermion(&fermion(diag(&[1.0, 0.0]), 0.0)).unwrap();
        assert!(data.sign_ambiguous);
    }

    #[test]
    fn single_mode_spectrum() {
        let data = diagonalize_fermion(&fermion(diag(&[1.0]), 1.0)).unwrap();
        let levels = fermion_spectrum(&data).unwrap();
        assert_eq!(levels.energies(), vec![0.0, 2.0]);
        assert_eq!(levels.entries[0].label.to_string(), "-");
        assert_eq!(levels.entries[1].label.to_string(), "+");
        assert_eq!(levels.entries[0].sector, Some(Sector::Even));
        assert_eq!(levels.entries[1].sector, Some(Sector::Odd));
    }

    #[test]
    fn rotation_spectrum_sectors() {
        let u = 1.0;
        let c = Matrix::from_row_slice(2, 2, &[0.0, u, -u, 0.0]);
        let levels = fermion_spectrum(&diagonalize_fermion(&fermion(c, 0.0)).unwrap()).unwrap();
        let e = levels.energies();
        let want = [-2.0, 0.0, 0.0, 2.0];
        for (a, b) in e.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
        let sectors: Vec<Sector> = levels.entries.iter().map(|x| x.sector.unwrap()).collect();
        assert_eq!(
            sectors,
            vec![Sector::Even, Sector::Odd, Sector::Odd, Sector::Even]
        );
    }

    #[test]
    fn flipping_two_signs_preserves_spectrum() {
        let base = FermionModeData {
            o_plus: Matrix::identity(3, 3),
            o_minus: Matrix::identity(3, 3),
            lambdas: vec![1.3, 0.4, -0.9],
            k0: 0.2,
            sign_ambiguous: false,
        };
        let mut flipped = base.clone();
        flipped.lambdas[0] = -flipped.lambdas[0];
        flipped.lambdas[2] = -flipped.lambdas[2];
        let a = fermion_spectrum(&base).unwrap();
        let b = fermion_spectrum(&flipped).unwrap();
        for sector in [Sector::Even, Sector::Odd] {
            let (x, y) = (a.sector_energies(sector), b.sector_energies(sector));
            assert_eq!(x.len(), y.len());
            for (p, q) in x.iter().zip(&y) {
                assert!((p - q).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bosonic_input() {
        let std = StandardForm::Boson {
            t: diag(&[1.0]),
            r: diag(&[1.0]),
            k0: 0.0,
        };
        assert!(diagonalize_fermion(&std).is_err());
    }
}
