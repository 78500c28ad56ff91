use nalgebra::SymmetricEigen;

use super::{k_smallest_sums, Label, ModeClass, SpectrumEntry, SpectrumResult};
use crate::conventions::BOSON_LEVEL_COEFFICIENT;
use crate::error::{Error, Result};
use crate::forms::StandardForm;
use crate::linalg::{condition_number, max_off_diagonal, Matrix};

/// Thresholds for the bosonic pencil diagonalization. All but `zero` and
/// `cond_max` are relative to a matrix norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralOptions {
    /// Imaginary parts of `RT` eigenvalues above `imag · ‖RT‖` are non-real.
    pub imag: f64,
    /// Off-diagonal residual bound, relative to `‖T'‖ + ‖R'‖`.
    pub diag: f64,
    /// Zero threshold for `t_i`, `r_i`, relative to `‖T'‖ + ‖R'‖`.
    pub zero: f64,
    /// Eigenvector-matrix condition number above which `RT` counts as defective.
    pub cond_max: f64,
    /// Eigenvalues of `RT` closer than `cluster · ‖RT‖` share an eigenspace.
    pub cluster: f64,
    /// Null-space threshold inside a cluster, relative to `‖RT‖`.
    pub null: f64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            imag: 1e-8,
            diag: 1e-8,
            zero: 1e-10,
            cond_max: 1e8,
            cluster: 1e-6,
            null: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonMode {
    pub t: f64,
    pub r: f64,
    pub class: ModeClass,
}

impl BosonMode {
    /// `t·r`, invariant under rescaling of the mode vector.
    pub fn product(&self) -> f64 {
        self.t * self.r
    }
}

/// Result of diagonalizing a bosonic standard form: with `b` the new
/// operators, `H = Σ_i t_i (b_i + b_i⁺)² + r_i (b_i − b_i⁺)² + k0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonModeData {
    /// `S T Sᵗ = diag(t)`, `S⁻ᵗ R S⁻¹ = diag(r)`, `det S > 0`.
    pub s: Matrix,
    pub modes: Vec<BosonMode>,
    pub k0: f64,
}

impl BosonModeData {
    pub fn n(&self) -> usize {
        self.modes.len()
    }

    /// Largest off-diagonal entry of `S T Sᵗ` and `S⁻ᵗ R S⁻¹`.
    pub fn residual(&self, t: &Matrix, r: &Matrix) -> f64 {
        let (tt, rr) = congruences(&self.s, t, r);
        max_off_diagonal(&tt).max(max_off_diagonal(&rr))
    }
}

fn congruences(s: &Matrix, t: &Matrix, r: &Matrix) -> (Matrix, Matrix) {
    let s_inv = s
        .clone()
        .try_inverse()
        .expect("S is invertible by construction");
    (s * t * s.transpose(), s_inv.transpose() * r * s_inv)
}

fn classify(t: f64, r: f64, zero: f64) -> ModeClass {
    let t_zero = t.abs() <= zero;
    let r_zero = r.abs() <= zero;
    match (t_zero, r_zero) {
        (true, true) => ModeClass::Constant,
        (false, true) => ModeClass::ContinuousQuadratic,
        (true, false) => ModeClass::ContinuousFree,
        _ if t * r < 0.0 => ModeClass::Discrete,
        _ => ModeClass::ContinuousInverted,
    }
}

/// Orthonormal basis (columns) of the right singular vectors of `a`
/// belonging to its `k` smallest singular values, plus the largest of those
/// `k` singular values.
fn smallest_right_singular(a: &Matrix, k: usize) -> (Matrix, f64) {
    let n = a.ncols();
    let svd = a.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let mut basis = Matrix::zeros(n, k);
    let mut worst = 0.0_f64;
    for (col, &idx) in order.iter().take(k).enumerate() {
        worst = worst.max(svd.singular_values[idx]);
        basis.set_column(col, &v_t.row(idx).transpose());
    }
    (basis, worst)
}

/// Orthogonal matrix whose columns diagonalize the symmetric `m`.
fn symmetric_eigenvectors(m: &Matrix) -> Matrix {
    SymmetricEigen::new(crate::linalg::sym_part(m)).eigenvectors
}

/// Diagonalizes a bosonic standard form by a real transformation `S`
/// with `det S > 0`, via the eigenbasis of `M = R·T`.
pub fn diagonalize_boson(std: &StandardForm, opts: &SpectralOptions) -> Result<BosonModeData> {
    let (t, r, k0) = match std {
        StandardForm::Boson { t, r, k0 } => (t, r, *k0),
        StandardForm::Fermion { .. } => {
            return Err(Error::Precondition(
                "expected a bosonic standard form".into(),
            ))
        }
    };
    let n = t.nrows();
    let m = r * t;
    let m_norm = m.norm();

    // Eigenvalues: real check.
    let eigenvalues = m.clone().complex_eigenvalues();
    let max_imag = eigenvalues
        .iter()
        .fold(0.0_f64, |acc, z| acc.max(z.im.abs()));
    if max_imag > opts.imag * m_norm {
        return Err(Error::NonRealSpectrum { max_imag });
    }
    let mut reals: Vec<f64> = eigenvalues.iter().map(|z| z.re).collect();
    reals.sort_by(f64::total_cmp);

    // Clusters of (numerically) equal eigenvalues.
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for mu in reals {
        match clusters.last_mut() {
            Some(c) if (mu - c[c.len() - 1]).abs() <= opts.cluster * m_norm => c.push(mu),
            _ => clusters.push(vec![mu]),
        }
    }

    // Eigenvector columns, cluster by cluster; `spans[c]` = column range.
    let mut e = Matrix::zeros(n, n);
    let mut spans = Vec::with_capacity(clusters.len());
    let mut col = 0;
    for cluster in &clusters {
        let k = cluster.len();
        let mu = cluster.iter().sum::<f64>() / k as f64;
        let shifted = &m - Matrix::identity(n, n) * mu;
        let (mut basis, worst) = smallest_right_singular(&shifted, k);
        if worst > opts.null * m_norm {
            return Err(Error::DefectiveMatrix {
                reason: format!(
                    "eigenvalue {mu:.6e} has algebraic multiplicity {k} but a deficient eigenspace \
                     (singular value {worst:.3e})"
                ),
            });
        }
        if k > 1 {
            // Make T diagonal on the eigenspace.
            let restricted = basis.transpose() * t * &basis;
            basis = &basis * symmetric_eigenvectors(&restricted);
        }
        e.columns_mut(col, k).copy_from(&basis);
        spans.push(col..col + k);
        col += k;
    }

    let cond = condition_number(&e);
    if !cond.is_finite() || cond > opts.cond_max {
        return Err(Error::DefectiveMatrix {
            reason: format!("eigenvector matrix condition number {cond:.3e}"),
        });
    }

    // Inside a cluster the columns with t_i = 0 may still couple through R'.
    let mut s = e.transpose();
    {
        let (tt, rr) = congruences(&s, t, r);
        let zero = opts.zero * (tt.norm() + rr.norm());
        for span in &spans {
            let null_t: Vec<usize> = span.clone().filter(|&i| tt[(i, i)].abs() <= zero).collect();
            if null_t.len() < 2 {
                continue;
            }
            let sub = Matrix::from_fn(null_t.len(), null_t.len(), |a, b| {
                rr[(null_t[a], null_t[b])]
            });
            let g = symmetric_eigenvectors(&sub);
            // Rows of S transform by gᵗ so that R' transforms by gᵗ R' g.
            let rows = Matrix::from_fn(null_t.len(), n, |a, j| s[(null_t[a], j)]);
            let rotated = g.transpose() * rows;
            for (a, &i) in null_t.iter().enumerate() {
                s.set_row(i, &rotated.row(a));
            }
        }
    }

    // Fix the per-mode scaling: |t_i| = |r_i| when both are nonzero,
    // otherwise a unit mode vector.
    let (tt, rr) = congruences(&s, t, r);
    let zero = opts.zero * (tt.norm() + rr.norm());
    for i in 0..n {
        let (ti, ri) = (tt[(i, i)], rr[(i, i)]);
        let alpha = if ti.abs() > zero && ri.abs() > zero {
            (ri.abs() / ti.abs()).powf(0.25)
        } else {
            1.0 / s.row(i).norm()
        };
        let scaled = s.row(i) * alpha;
        s.set_row(i, &scaled);
    }
    if s.determinant() < 0.0 {
        let flipped = -s.row(0);
        s.set_row(0, &flipped);
    }

    let (tt, rr) = congruences(&s, t, r);
    let scale = tt.norm() + rr.norm();
    let residual = max_off_diagonal(&tt).max(max_off_diagonal(&rr));
    if residual > opts.diag * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::DefectiveMatrix {
            reason: format!("simultaneous diagonalization residual {residual:.3e}"),
        });
    }
    let zero = opts.zero * scale;
    let modes = (0..n)
        .map(|i| {
            let (ti, ri) = (tt[(i, i)], rr[(i, i)]);
            BosonMode {
                t: ti,
                r: ri,
                class: classify(ti, ri, zero),
            }
        })
        .collect();
    Ok(BosonModeData { s, modes, k0 })
}

/// Levels `κ · sign(r) · √(−r t) · (m + ½)`, `m = 0..count`.
pub fn boson_mode_levels(t: f64, r: f64, count: usize) -> Result<Vec<f64>> {
    if r == 0.0 || t * r >= 0.0 {
        return Err(Error::NonDiscreteMode(classify(t, r, 0.0)));
    }
    let step = BOSON_LEVEL_COEFFICIENT * r.signum() * (-r * t).sqrt();
    Ok((0..count).map(|m| step * (m as f64 + 0.5)).collect())
}

/// The `k` smallest eigenvalues with their occupation multi-indices.
///
/// A mode with `r > 0` has levels decreasing without bound; the result is
/// then flagged `bounded_below = false` with no entries.
pub fn boson_spectrum(data: &BosonModeData, k: usize) -> Result<SpectrumResult> {
    let classes: Vec<ModeClass> = data.modes.iter().map(|m| m.class).collect();
    if classes.iter().any(|c| *c != ModeClass::Discrete) {
        return Err(Error::ContinuousSpectrum { classes });
    }
    if data.modes.iter().any(|m| m.r > 0.0) {
        return Ok(SpectrumResult {
            entries: Vec::new(),
            complete: false,
            bounded_below: false,
        });
    }
    let steps: Vec<f64> = data
        .modes
        .iter()
        .map(|m| BOSON_LEVEL_COEFFICIENT * m.r.signum() * (-m.r * m.t).sqrt())
        .collect();
    let entries = k_smallest_sums(data.n(), |i, m| steps[i] * (m as f64 + 0.5), k)
        .into_iter()
        .map(|(e, idx)| SpectrumEntry {
            energy: e + data.k0,
            label: Label::Occupations(idx),
            sector: None,
        })
        .collect();
    Ok(SpectrumResult {
        entries,
        complete: false,
        bounded_below: true,
    })
}
