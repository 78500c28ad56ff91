//! Singular points of vector fields and their local Witten oscillators.
//!
//! At a nondegenerate singular point the deformed Laplacian is, to leading
//! order, `Σ_i {−∂_i² + λ_i² z_i² + 2λ_i a_i a_i⁺} − Σ_i λ_i` where `λ_i`
//! are the signed singular values of the jacobian.

use serde::{Deserialize, Serialize};

use crate::conventions::LEMMA2_WEDGE_FACTOR;
use crate::error::{Error, Result};
use crate::forms::StandardForm;
use crate::linalg::{max_abs, sym_part, Matrix};
use crate::oracle::{
    assemble, build_boson_rep, build_fermion_rep, build_standard_hamiltonian, lowest_eigenpairs,
    CsrMatrix, FermionFockRep, FockSpace, Ladder, Term,
};
use crate::spectral::{
    diagonalize_fermion, k_smallest_sums, Label, Sector, SpectrumEntry, SpectrumResult,
};

/// Relative threshold on `|det J|` below which a point is degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SingularPoint {
    pub label: String,
    /// `∂X^k/∂y^i` in orthonormal coordinates.
    pub jacobian: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorFieldFixture {
    pub n: usize,
    pub chi: i64,
    pub points: Vec<SingularPoint>,
}

impl VectorFieldFixture {
    pub fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Validation(
                "fixture dimension must be positive".into(),
            ));
        }
        for p in &self.points {
            if p.jacobian.nrows() != self.n || p.jacobian.ncols() != self.n {
                return Err(Error::Validation(format!(
                    "jacobian at {} is {}x{}, expected {}x{}",
                    p.label,
                    p.jacobian.nrows(),
                    p.jacobian.ncols(),
                    self.n,
                    self.n
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub label: String,
    pub sign: i8,
    pub lambdas: Vec<f64>,
    pub sector: Sector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorseReport {
    pub m_plus: usize,
    pub m_minus: usize,
    pub chi: i64,
    pub chi_computed: i64,
    pub chi_matches: bool,
    pub points: Vec<PointReport>,
    /// Each positive point carries one even local zero mode and each
    /// negative point one odd one, so genuine even (odd) zero modes number
    /// at most `m_plus` (`m_minus`).
    pub even_zero_modes_at_most: usize,
    pub odd_zero_modes_at_most: usize,
}

fn nondegenerate_det(p: &SingularPoint) -> Result<f64> {
    if !p.jacobian.is_square() || p.jacobian.nrows() == 0 {
        return Err(Error::Validation(format!(
            "jacobian at {} is not square",
            p.label
        )));
    }
    let det = p.jacobian.determinant();
    let scale = max_abs(&p.jacobian);
    if !det.is_finite() || det.abs() <= DEGENERACY_TOL * scale || scale == 0.0 {
        return Err(Error::DegeneratePoint {
            label: p.label.clone(),
            det,
        });
    }
    Ok(det)
}

/// Sign of `det J`.
pub fn point_sign(p: &SingularPoint) -> Result<i8> {
    Ok(if nondegenerate_det(p)? > 0.0 { 1 } else { -1 })
}

fn local_modes(p: &SingularPoint) -> Result<Vec<f64>> {
    nondegenerate_det(p)?;
    let std = StandardForm::Fermion {
        c: p.jacobian.clone(),
        k0: 0.0,
    };
    Ok(diagonalize_fermion(&std)?.lambdas)
}

/// Parity of the number of negative `λ_i` of the jacobian.
pub fn zero_mode_parity(p: &SingularPoint) -> Result<Sector> {
    let negatives = local_modes(p)?.iter().filter(|l| **l < 0.0).count();
    Ok(Sector::from_count(negatives))
}

pub fn poincare_hopf_check(f: &VectorFieldFixture) -> Result<MorseReport> {
    f.check()?;
    let mut points = Vec::with_capacity(f.points.len());
    for p in &f.points {
        let lambdas = local_modes(p)?;
        let negatives = lambdas.iter().filter(|l| **l < 0.0).count();
        points.push(PointReport {
            label: p.label.clone(),
            sign: point_sign(p)?,
            lambdas,
            sector: Sector::from_count(negatives),
        });
    }
    let m_plus = points.iter().filter(|p| p.sign > 0).count();
    let m_minus = points.len() - m_plus;
    let chi_computed = m_plus as i64 - m_minus as i64;
    Ok(MorseReport {
        m_plus,
        m_minus,
        chi: f.chi,
        chi_computed,
        chi_matches: chi_computed == f.chi,
        points,
        even_zero_modes_at_most: m_plus,
        odd_zero_modes_at_most: m_minus,
    })
}

/// `(m, f)` of the `k`-th state on one mode's ladder `0, 2|λ|, 2|λ|, 4|λ|, …`.
fn witten_mode_state(lambda: f64, k: usize) -> (usize, u8) {
    let ground_f = u8::from(lambda < 0.0);
    if k % 2 == 0 {
        (k / 2, ground_f)
    } else {
        ((k - 1) / 2, 1 - ground_f)
    }
}

/// Single-mode energy `|λ|(2m+1) + 2λf − λ`.
pub fn witten_mode_energy(lambda: f64, m: usize, f: u8) -> f64 {
    lambda.abs() * (2 * m + 1) as f64 + 2.0 * lambda * f64::from(f) - lambda
}

/// The `count` lowest levels of the quadratic Witten operator.
pub fn local_witten_spectrum(lambdas: &[f64], count: usize) -> Result<SpectrumResult> {
    if let Some(i) = lambdas.iter().position(|l| *l == 0.0 || !l.is_finite()) {
        return Err(Error::Precondition(format!(
            "lambda_{i} must be finite and nonzero"
        )));
    }
    let level = |i: usize, k: usize| {
        let (m, f) = witten_mode_state(lambdas[i], k);
        witten_mode_energy(lambdas[i], m, f)
    };
    let entries = k_smallest_sums(lambdas.len(), level, count)
        .into_iter()
        .map(|(energy, ks)| {
            let (m, f): (Vec<usize>, Vec<u8>) = ks
                .iter()
                .enumerate()
                .map(|(i, &k)| witten_mode_state(lambdas[i], k))
                .unzip();
            let occupied = f.iter().filter(|x| **x == 1).count();
            SpectrumEntry {
                energy,
                sector: Some(Sector::from_count(occupied)),
                label: Label::Witten { m, f },
            }
        })
        .collect();
    Ok(SpectrumResult {
        entries,
        complete: false,
        bounded_below: true,
    })
}

/// Lowest `count` eigenvalues of the Witten operator on
/// `Λ*Rⁿ ⊗ (truncated oscillators)`, built in the unit-frequency basis so
/// the bosonic part is not diagonal.
pub fn witten_oracle_levels(lambdas: &[f64], cutoff: usize, count: usize) -> Result<Vec<f64>> {
    let n = lambdas.len();
    let fermions = build_fermion_rep(n)?;
    let bosons = build_boson_rep(n, cutoff)?;
    use Ladder::{Annihilate as An, Create as Cr};

    // (λ² X² − Y²)/2 with X = a + a⁺, Y = a − a⁺ is −∂² + λ² z².
    let mut boson_terms = Vec::new();
    for (i, &l) in lambdas.iter().enumerate() {
        let (x2, y2) = (0.5 * l * l, -0.5);
        for (left, right, sx, sy) in [
            (Cr(i), Cr(i), 1.0, 1.0),
            (Cr(i), An(i), 1.0, -1.0),
            (An(i), Cr(i), 1.0, -1.0),
            (An(i), An(i), 1.0, 1.0),
        ] {
            boson_terms.push(Term {
                coef: x2 * sx + y2 * sy,
                left,
                right,
            });
        }
    }
    let fermion_terms: Vec<Term> = lambdas
        .iter()
        .enumerate()
        .map(|(i, &l)| Term {
            coef: 2.0 * l,
            left: Cr(i),
            right: An(i),
        })
        .collect();
    let shift: f64 = -lambdas.iter().sum::<f64>();
    let hb = assemble(&bosons, &boson_terms, 0.0);
    let hf = assemble(&fermions, &fermion_terms, shift);
    let h = CsrMatrix::identity(fermions.dim())
        .kron(&hb)
        .add_scaled(&hf.kron(&CsrMatrix::identity(bosons.dim())), 1.0);
    Ok(lowest_eigenpairs(&h, count, &[])?.values)
}

/// `‖ωω* + ω*ω − ⟨ω,ω⟩ I‖_max` for the wedge `ω = Σ ω_i a_i` and the
/// contraction `ω* = Σ ω_i a_i⁺`.
pub fn lemma1_check(omega: &[f64], rep: &FermionFockRep) -> Result<f64> {
    if omega.len() != rep.n() {
        return Err(Error::Precondition(format!(
            "omega has {} components, representation has {} modes",
            omega.len(),
            rep.n()
        )));
    }
    let dim = rep.dim();
    let mut wedge = Matrix::zeros(dim, dim);
    let mut contraction = Matrix::zeros(dim, dim);
    for (i, &w) in omega.iter().enumerate() {
        wedge += rep.creation(i).to_dense() * w;
        contraction += rep.annihilation(i).to_dense() * w;
    }
    let norm2: f64 = omega.iter().map(|w| w * w).sum();
    let lhs = &wedge * &contraction + &contraction * &wedge;
    Ok(max_abs(&(lhs - Matrix::identity(dim, dim) * norm2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Result {
    pub residual: f64,
    pub constant: f64,
}

/// Compares the standard-form operator with `C = ω_jac` against
/// `A + Aᵗ + B + Bᵗ`, `A = ω_ij a_i a_j⁺`, `B = U_ij a_i a_j`.
pub fn lemma2_check(omega_jac: &Matrix) -> Result<Lemma2Result> {
    lemma2_check_with_factor(omega_jac, LEMMA2_WEDGE_FACTOR)
}

/// [`lemma2_check`] with `U = factor · (ω − ωᵗ)`.
pub fn lemma2_check_with_factor(omega_jac: &Matrix, factor: f64) -> Result<Lemma2Result> {
    if !omega_jac.is_square() {
        return Err(Error::Precondition("jacobian must be square".into()));
    }
    let n = omega_jac.nrows();
    let rep = build_fermion_rep(n)?;
    let direct = build_standard_hamiltonian(
        &StandardForm::Fermion {
            c: omega_jac.clone(),
            k0: 0.0,
        },
        &rep,
    )?
    .to_dense();

    use Ladder::{Annihilate as An, Create as Cr};
    let u = (omega_jac - omega_jac.transpose()) * factor;
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = omega_jac[(i, j)];
            terms.push(Term {
                coef: w,
                left: Cr(i),
                right: An(j),
            });
            terms.push(Term {
                coef: w,
                left: Cr(j),
                right: An(i),
            });
            terms.push(Term {
                coef: u[(i, j)],
                left: Cr(i),
                right: Cr(j),
            });
            terms.push(Term {
                coef: u[(i, j)],
                left: An(j),
                right: An(i),
            });
        }
    }
    let split = assemble(&rep, &terms, 0.0).to_dense();
    let diff = direct - split;
    let dim = rep.dim();
    let constant = diff.trace() / dim as f64;
    let residual = max_abs(&(diff - Matrix::identity(dim, dim) * constant));
    Ok(Lemma2Result { residual, constant })
}

/// Worst lemma residuals over seeded random trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub lemma1_max_residual: f64,
    pub lemma2_max_residual: f64,
    /// Symmetric jacobians, where the wedge part must vanish.
    pub exact_form_max_residual: f64,
    pub max_residual: f64,
}

pub fn lemma_suite(n: usize, seed: u64, trials: usize) -> Result<LemmaReport> {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    let rep = build_fermion_rep(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut l1, mut l2, mut exact) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..trials {
        let w = crate::linalg::gaussian_matrix(&mut rng, n, 1);
        l1 = l1.max(lemma1_check(w.as_slice(), &rep)?);
        let jac = crate::linalg::gaussian_matrix(&mut rng, n, n);
        l2 = l2.max(lemma2_check(&jac)?.residual);
        exact = exact.max(lemma2_check(&sym_part(&jac))?.residual);
    }
    Ok(LemmaReport {
        n,
        seed,
        trials,
        lemma1_max_residual: l1,
        lemma2_max_residual: l2,
        exact_form_max_residual: exact,
        max_residual: l1.max(l2).max(exact),
    })
}
