//! Real quadratic forms in creation/annihilation operators, their standard
//! real form, and real Bogolyubov transformations.
//!
//! A form is
//!
//! ```text
//! H = U_ij a_i⁺ a_j⁺ + V_ij (a_i a_j⁺ + a_j a_i⁺) ± U_ij a_i a_j + c
//! ```
//!
//! with `+` for bosons (`U` symmetric) and `−` for fermions (`U`
//! antisymmetric), `V` symmetric. Here `a_i` creates and `a_i⁺` annihilates.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conventions::{BOSON_TRACE_COEFF, FERMION_TRACE_COEFF};
use crate::error::{Error, Result};
use crate::linalg::{
    self, antisym_part, asymmetry, haar_orthogonal, haar_special_orthogonal, max_abs,
    orthogonality_residual, sym_part, symmetry_of_antisym, Matrix,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    Boson,
    Fermion,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistics::Boson => f.write_str("boson"),
            Statistics::Fermion => f.write_str("fermion"),
        }
    }
}

/// Symmetry and canonicality tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub sym: f64,
    pub canon: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sym: 1e-9,
            canon: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Self {
        Tolerances {
            sym: tol,
            canon: tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    pub statistics: Statistics,
    pub u: Matrix,
    pub v: Matrix,
    pub constant: f64,
}

impl QuadraticForm {
    pub fn new(statistics: Statistics, u: Matrix, v: Matrix, constant: f64) -> Self {
        QuadraticForm {
            statistics,
            u,
            v,
            constant,
        }
    }

    pub fn n(&self) -> usize {
        self.v.nrows()
    }

    /// Entrywise sum, used to check linearity of the oracle Hamiltonian.
    pub fn add(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.statistics != other.statistics || self.n() != other.n() {
            return Err(Error::Precondition(
                "forms differ in statistics or mode count".into(),
            ));
        }
        Ok(QuadraticForm::new(
            self.statistics,
            &self.u + &other.u,
            &self.v + &other.v,
            self.constant + other.constant,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub check: String,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} (deviation {:e})", v.check, v.deviation))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks the structural invariants of a form. Never fails; an empty
/// report means the form is valid.
pub fn validate(form: &QuadraticForm, tol: &Tolerances) -> ValidationReport {
    let mut violations = Vec::new();
    let n = form.n();
    if n == 0 {
        violations.push(Violation {
            check: "mode count must be positive".into(),
            deviation: 0.0,
        });
    }
    if form.v.ncols() != n || form.u.nrows() != n || form.u.ncols() != n {
        violations.push(Violation {
            check: "U and V must be n×n".into(),
            deviation: 0.0,
        });
        return ValidationReport { violations };
    }
    let finite =
        form.u.iter().chain(form.v.iter()).all(|x| x.is_finite()) && form.constant.is_finite();
    if !finite {
        violations.push(Violation {
            check: "non-finite entries".into(),
            deviation: f64::INFINITY,
        });
        return ValidationReport { violations };
    }
    let v_dev = asymmetry(&form.v);
    if v_dev > tol.sym {
        violations.push(Violation {
            check: "V not symmetric".into(),
            deviation: v_dev,
        });
    }
    match form.statistics {
        Statistics::Boson => {
            let dev = asymmetry(&form.u);
            if dev > tol.sym {
                violations.push(Violation {
                    check: "U not symmetric".into(),
                    deviation: dev,
                });
            }
        }
        Statistics::Fermion => {
            let dev = symmetry_of_antisym(&form.u);
            if dev > tol.sym {
                violations.push(Violation {
                    check: "U not antisymmetric".into(),
                    deviation: dev,
                });
            }
        }
    }
    ValidationReport { violations }
}

/// The standard real form.
///
/// Bosons: `H = T_ij (a_i + a_i⁺)(a_j + a_j⁺) + R_ij (a_i − a_i⁺)(a_j − a_j⁺) + k0`.
///
/// Fermions: `H = k0 − C_ij (a_i + a_i⁺)(a_j − a_j⁺)`, see
/// [`FERMION_STANDARD_SIGN`](crate::conventions::FERMION_STANDARD_SIGN).
#[derive(Debug, Clone, PartialEq)]
pub enum StandardForm {
    Boson { t: Matrix, r: Matrix, k0: f64 },
    Fermion { c: Matrix, k0: f64 },
}

impl StandardForm {
    pub fn statistics(&self) -> Statistics {
        match self {
            StandardForm::Boson { .. } => Statistics::Boson,
            StandardForm::Fermion { .. } => Statistics::Fermion,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            StandardForm::Boson { t, .. } => t.nrows(),
            StandardForm::Fermion { c, .. } => c.nrows(),
        }
    }

    pub fn k0(&self) -> f64 {
        match self {
            StandardForm::Boson { k0, .. } | StandardForm::Fermion { k0, .. } => *k0,
        }
    }
}

pub fn to_standard(form: &QuadraticForm, tol: &Tolerances) -> Result<StandardForm> {
    let report = validate(form, tol);
    if !report.is_valid() {
        return Err(Error::Validation(report.to_string()));
    }
    let trace_v = form.v.trace();
    Ok(match form.statistics {
        Statistics::Boson => StandardForm::Boson {
            t: (&form.u + &form.v) * 0.5,
            r: (&form.u - &form.v) * 0.5,
            k0: form.constant + BOSON_TRACE_COEFF * trace_v,
        },
        Statistics::Fermion => StandardForm::Fermion {
            c: &form.u + &form.v,
            k0: form.constant + FERMION_TRACE_COEFF * trace_v,
        },
    })
}

/// Inverse of [`to_standard`].
pub fn from_standard(std: &StandardForm) -> QuadraticForm {
    match std {
        StandardForm::Boson { t, r, k0 } => {
            let v = t - r;
            let constant = k0 - BOSON_TRACE_COEFF * v.trace();
            QuadraticForm::new(Statistics::Boson, t + r, v, constant)
        }
        StandardForm::Fermion { c, k0 } => {
            let v = sym_part(c);
            let constant = k0 - FERMION_TRACE_COEFF * v.trace();
            QuadraticForm::new(Statistics::Fermion, antisym_part(c), v, constant)
        }
    }
}

/// Real Bogolyubov transformation `a = P b + Q b⁺`, `a⁺ = Q b + P b⁺`.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovTransform {
    pub statistics: Statistics,
    pub p: Matrix,
    pub q: Matrix,
}

impl BogoliubovTransform {
    pub fn new(statistics: Statistics, p: Matrix, q: Matrix) -> Self {
        BogoliubovTransform { statistics, p, q }
    }

    pub fn identity(statistics: Statistics, n: usize) -> Self {
        BogoliubovTransform::new(statistics, Matrix::identity(n, n), Matrix::zeros(n, n))
    }

    /// Fermionic transform from its orthogonal pair `O_± = Q ± P`.
    pub fn from_orthogonal_pair(o_plus: &Matrix, o_minus: &Matrix) -> Self {
        BogoliubovTransform::new(
            Statistics::Fermion,
            (o_plus - o_minus) * 0.5,
            (o_plus + o_minus) * 0.5,
        )
    }

    /// Bosonic transform from `S = P + Q`; `P − Q = S⁻ᵗ` makes it canonical.
    pub fn from_boson_s(s: &Matrix) -> Result<Self> {
        let s_inv_t = s
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Precondition("S is singular".into()))?
            .transpose();
        Ok(BogoliubovTransform::new(
            Statistics::Boson,
            (s + &s_inv_t) * 0.5,
            (s - &s_inv_t) * 0.5,
        ))
    }

    pub fn n(&self) -> usize {
        self.p.nrows()
    }

    /// `S = P + Q`.
    pub fn s(&self) -> Matrix {
        &self.p + &self.q
    }

    /// `P − Q`.
    pub fn d(&self) -> Matrix {
        &self.p - &self.q
    }

    /// `O_+ = Q + P`.
    pub fn o_plus(&self) -> Matrix {
        &self.q + &self.p
    }

    /// `O_− = Q − P`.
    pub fn o_minus(&self) -> Matrix {
        &self.q - &self.p
    }

    /// Max-norm residual of the canonicality relations.
    pub fn canonical_residual(&self) -> f64 {
        match self.statistics {
            Statistics::Boson => linalg::identity_residual(&(self.s() * self.d().transpose())),
            Statistics::Fermion => {
                orthogonality_residual(&self.o_plus()).max(orthogonality_residual(&self.o_minus()))
            }
        }
    }

    pub fn is_canonical(&self, tol: &Tolerances) -> (bool, f64) {
        let dev = self.canonical_residual();
        (dev <= tol.canon, dev)
    }

    /// Orientation condition: `det(P ± Q) > 0` for bosons,
    /// `det O_± = +1` for fermions.
    pub fn is_positive(&self, tol: &Tolerances) -> bool {
        match self.statistics {
            Statistics::Boson => self.s().determinant() > 0.0 && self.d().determinant() > 0.0,
            Statistics::Fermion => {
                (self.o_plus().determinant() - 1.0).abs() <= tol.canon
                    && (self.o_minus().determinant() - 1.0).abs() <= tol.canon
            }
        }
    }

    /// The transform equivalent to applying `self` first and `then` second.
    pub fn then(&self, then: &BogoliubovTransform) -> Result<BogoliubovTransform> {
        if self.statistics != then.statistics || self.n() != then.n() {
            return Err(Error::Precondition(
                "cannot compose transforms of different statistics or size".into(),
            ));
        }
        Ok(match self.statistics {
            Statistics::Boson => {
                let s = then.s() * self.s();
                let d = then.d() * self.d();
                BogoliubovTransform::new(Statistics::Boson, (&s + &d) * 0.5, (&s - &d) * 0.5)
            }
            Statistics::Fermion => {
                let o_plus = then.o_plus() * self.o_plus();
                let o_minus = self.o_minus() * then.o_minus();
                BogoliubovTransform::from_orthogonal_pair(&o_plus, &o_minus)
            }
        })
    }
}

/// Rewrites the coefficient matrices of a standard form under a canonical
/// transform: `T' = S T Sᵗ`, `R' = S⁻ᵗ R S⁻¹` (bosons), `C' = O_+ C O_−`
/// (fermions). `k0` is unchanged.
pub fn apply_transform(
    std: &StandardForm,
    b: &BogoliubovTransform,
    tol: &Tolerances,
) -> Result<StandardForm> {
    if std.statistics() != b.statistics || std.n() != b.n() {
        return Err(Error::Precondition(format!(
            "transform ({}, n={}) does not match form ({}, n={})",
            b.statistics,
            b.n(),
            std.statistics(),
            std.n()
        )));
    }
    let (canonical, dev) = b.is_canonical(tol);
    if !canonical {
        return Err(Error::Precondition(format!(
            "transform is not canonical (residual {dev:e})"
        )));
    }
    Ok(match std {
        StandardForm::Boson { t, r, k0 } => {
            let s = b.s();
            let s_inv = s
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::Precondition("S = P + Q is singular".into()))?;
            StandardForm::Boson {
                t: &s * t * s.transpose(),
                r: s_inv.transpose() * r * &s_inv,
                k0: *k0,
            }
        }
        StandardForm::Fermion { c, k0 } => StandardForm::Fermion {
            c: b.o_plus() * c * b.o_minus(),
            k0: *k0,
        },
    })
}

/// Largest squeezing exponent used by the bosonic generator.
pub const BOSON_SQUEEZE_MAX: f64 = 0.35;

/// Random canonical transform, deterministic in `seed`.
pub fn random_canonical(
    statistics: Statistics,
    n: usize,
    seed: u64,
    positive: bool,
) -> BogoliubovTransform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_canonical_with(&mut rng, statistics, n, positive)
}

pub fn random_canonical_with<R: Rng + ?Sized>(
    rng: &mut R,
    statistics: Statistics,
    n: usize,
    positive: bool,
) -> BogoliubovTransform {
    assert!(n >= 1, "mode count must be positive");
    match statistics {
        Statistics::Fermion => {
            let (o_plus, o_minus) = if positive {
                (
                    haar_special_orthogonal(rng, n),
                    haar_special_orthogonal(rng, n),
                )
            } else {
                (haar_orthogonal(rng, n), haar_orthogonal(rng, n))
            };
            BogoliubovTransform::from_orthogonal_pair(&o_plus, &o_minus)
        }
        Statistics::Boson => loop {
            let left = if positive {
                haar_special_orthogonal(rng, n)
            } else {
                haar_orthogonal(rng, n)
            };
            let right = haar_special_orthogonal(rng, n);
            let squeeze: Vec<f64> = (0..n)
                .map(|_| {
                    rng.random_range(-BOSON_SQUEEZE_MAX..=BOSON_SQUEEZE_MAX)
                        .exp()
                })
                .collect();
            let s = left * linalg::diag(&squeeze) * right;
            if let Ok(b) = BogoliubovTransform::from_boson_s(&s) {
                if b.canonical_residual() <= 1e-10 {
                    return b;
                }
            }
        },
    }
}

/// Max entrywise deviation between two forms' coefficient data.
pub fn form_distance(a: &QuadraticForm, b: &QuadraticForm) -> f64 {
    max_abs(&(&a.u - &b.u))
        .max(max_abs(&(&a.v - &b.v)))
        .max((a.constant - b.constant).abs())
}
