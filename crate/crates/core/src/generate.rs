//! Seeded generators for random test inputs.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::forms::{
    apply_transform, from_standard, random_canonical_with, QuadraticForm, StandardForm, Statistics,
    Tolerances,
};
use crate::linalg::{antisym_part, diag, gaussian_matrix, haar_orthogonal, sym_part, Matrix};

/// Gaussian `U` (antisymmetrized), `V` (symmetrized) and constant.
pub fn random_fermion_form<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QuadraticForm {
    let u = antisym_part(&gaussian_matrix(rng, n, n));
    let v = sym_part(&gaussian_matrix(rng, n, n));
    let constant: f64 = rng.sample(StandardNormal);
    QuadraticForm::new(Statistics::Fermion, u, v, constant)
}

/// Diagonal discrete modes with `t ∈ [0.5, 1.5]`, `r ∈ [−1.5, −0.5]`,
/// moved by a random positive canonical transform.
pub fn random_bounded_boson_form<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QuadraticForm {
    let t: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..=1.5)).collect();
    let r: Vec<f64> = (0..n).map(|_| rng.random_range(-1.5..=-0.5)).collect();
    let k0 = rng.random_range(-1.0..=1.0);
    let base = StandardForm::Boson {
        t: diag(&t),
        r: diag(&r),
        k0,
    };
    let b = random_canonical_with(rng, Statistics::Boson, n, true);
    let moved = apply_transform(&base, &b, &Tolerances::default())
        .expect("generated transform is canonical");
    from_standard(&moved)
}

/// `O₁ · diag(s) · O₂` with Haar `O₁, O₂ ∈ O(n)` and `s ∈ [0.5, 2]`, so
/// the determinant sign is random and the s-numbers stay moderate.
pub fn random_jacobian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let s: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..=2.0)).collect();
    haar_orthogonal(rng, n) * diag(&s) * haar_orthogonal(rng, n)
}
