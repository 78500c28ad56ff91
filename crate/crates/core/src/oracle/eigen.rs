//! Eigenvalues of oracle matrices: dense for small dimensions, block
//! Davidson for the large truncated boson boxes.

use nalgebra::SymmetricEigen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{asymmetry, Matrix};

use super::sparse::CsrMatrix;

/// Largest dimension handled by the dense eigensolver.
pub const DENSE_LIMIT: usize = 800;

const SYMMETRY_TOL: f64 = 1e-10;

/// Ascending eigenvalues of a symmetric matrix.
pub fn exact_spectrum(m: &Matrix) -> Result<Vec<f64>> {
    Ok(symmetric_eigenpairs(m)?.0)
}

/// Ascending eigenvalues and matching eigenvector columns.
pub fn symmetric_eigenpairs(m: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if !m.is_square() {
        return Err(Error::Precondition("matrix is not square".into()));
    }
    let asym = asymmetry(m);
    if asym > SYMMETRY_TOL {
        return Err(Error::Precondition(format!(
            "matrix is not symmetric (max |A - A^t| = {asym:.3e})"
        )));
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = Matrix::zeros(m.nrows(), m.nrows());
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    Ok((values, vectors))
}

/// Lowest eigenpairs of a sparse symmetric matrix.
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    /// Approximations to the next few eigenvectors, for warm starts.
    pub spare: Vec<Vec<f64>>,
    /// Largest residual norm `‖H x − θ x‖` among the returned pairs.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct DavidsonOptions {
    /// Extra Ritz vectors carried along to speed up convergence.
    pub extra: usize,
    /// Residual tolerance relative to `max(1, |θ|)`.
    pub tol: f64,
    pub max_iter: usize,
    /// Restart once the subspace exceeds `restart · block` vectors.
    pub restart: usize,
    pub seed: u64,
}

impl Default for DavidsonOptions {
    fn default() -> Self {
        DavidsonOptions {
            extra: 4,
            tol: 1e-8,
            max_iter: 400,
            restart: 4,
            seed: 0x5eed,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    // Four independent partial sums let the compiler vectorize.
    let mut acc = [0.0; 4];
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(x, y)| x * y)
        .sum();
    for (x, y) in ca.zip(cb) {
        for l in 0..4 {
            acc[l] += x[l] * y[l];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Orthogonalizes `v` against `basis` (two Gram-Schmidt passes) and
/// normalizes it. Returns false if nothing independent is left.
fn orthonormalize_against(basis: &[Vec<f64>], v: &mut [f64]) -> bool {
    let start = dot(v, v).sqrt();
    if start == 0.0 {
        return false;
    }
    let mut norm = start;
    // A second pass only when the first one cancelled a large share.
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, v);
            axpy(-c, b, v);
        }
        let before = norm;
        norm = dot(v, v).sqrt();
        if norm > 0.5 * before {
            break;
        }
    }
    if norm <= 1e-10 * start {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

/// `k` lowest eigenpairs, dense below [`DENSE_LIMIT`] and Davidson above.
pub fn lowest_eigenpairs(h: &CsrMatrix, k: usize, guess: &[Vec<f64>]) -> Result<Eigenpairs> {
    let opts = DavidsonOptions::default();
    let dim = h.nrows();
    let k = k.min(dim);
    if k == 0 {
        return Ok(Eigenpairs {
            values: Vec::new(),
            vectors: Vec::new(),
            spare: Vec::new(),
            residual: 0.0,
            iterations: 0,
        });
    }
    if dim <= DENSE_LIMIT {
        let (values, vecs) = symmetric_eigenpairs(&h.to_dense())?;
        let column = |j: usize| vecs.column(j).iter().cloned().collect();
        let spare_end = (k + opts.extra).min(dim);
        return Ok(Eigenpairs {
            values: values[..k].to_vec(),
            vectors: (0..k).map(column).collect(),
            spare: (k..spare_end).map(column).collect(),
            residual: 0.0,
            iterations: 0,
        });
    }
    davidson(h, k, guess, &opts)
}

/// Entries per cache block in the multi-vector kernels.
const CHUNK: usize = 2048;

/// `out_j = Σ_i coeffs[(i, j)] · vecs_i`, one pass over the inputs.
fn combine(vecs: &[Vec<f64>], coeffs: &Matrix) -> Vec<Vec<f64>> {
    let dim = vecs.first().map_or(0, Vec::len);
    let mut out = vec![vec![0.0; dim]; coeffs.ncols()];
    for lo in (0..dim).step_by(CHUNK) {
        let hi = (lo + CHUNK).min(dim);
        for (i, v) in vecs.iter().enumerate() {
            let src = &v[lo..hi];
            for (j, o) in out.iter_mut().enumerate() {
                let c = coeffs[(i, j)];
                if c != 0.0 {
                    axpy(c, src, &mut o[lo..hi]);
                }
            }
        }
    }
    out
}

/// `G_ij = ⟨a_i, b_j⟩`, one pass over the inputs. With `upper` only
/// `j ≥ i` is computed and mirrored, for symmetric products.
fn gram(a: &[Vec<f64>], b: &[Vec<f64>], upper: bool) -> Matrix {
    let dim = a.first().map_or(0, Vec::len);
    let mut g = Matrix::zeros(a.len(), b.len());
    for lo in (0..dim).step_by(CHUNK) {
        let hi = (lo + CHUNK).min(dim);
        for (i, x) in a.iter().enumerate() {
            let from = if upper { i } else { 0 };
            for (j, y) in b.iter().enumerate().skip(from) {
                g[(i, j)] += dot(&x[lo..hi], &y[lo..hi]);
            }
        }
    }
    if upper {
        for i in 0..a.len() {
            for j in 0..i.min(b.len()) {
                g[(i, j)] = g[(j, i)];
            }
        }
    }
    g
}

/// Block Davidson with a diagonal preconditioner.
pub fn davidson(
    h: &CsrMatrix,
    k: usize,
    guess: &[Vec<f64>],
    opts: &DavidsonOptions,
) -> Result<Eigenpairs> {
    let dim = h.nrows();
    let block = (k + opts.extra).min(dim);
    let diag = h.diagonal();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut images: Vec<Vec<f64>> = Vec::new();
    // Orthonormalizes candidates against the basis and appends the
    // survivors together with their images.
    let extend = |basis: &mut Vec<Vec<f64>>, images: &mut Vec<Vec<f64>>, cands: Vec<Vec<f64>>| {
        let before = basis.len();
        for mut v in cands {
            if orthonormalize_against(basis, &mut v) {
                basis.push(v);
            }
        }
        images.extend(h.apply_many(&basis[before..]));
        basis.len() - before
    };

    let mut seeds: Vec<Vec<f64>> = guess.iter().take(block).cloned().collect();
    assert!(
        seeds.iter().all(|g| g.len() == dim),
        "guess vector has the wrong length"
    );
    let overlap = gram(&seeds, &seeds, true);
    if seeds.len() == block && (overlap - Matrix::identity(block, block)).abs().max() < 1e-12 {
        // Already orthonormal (e.g. embedded Ritz vectors).
        images = h.apply_many(&seeds);
        basis = std::mem::take(&mut seeds);
    } else {
        extend(&mut basis, &mut images, std::mem::take(&mut seeds));
    }
    // Fill with unit vectors on the smallest diagonal entries plus noise.
    if basis.len() < block {
        let mut by_diag: Vec<usize> = (0..dim).collect();
        by_diag.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
        let mut next = 0;
        while basis.len() < block {
            let missing = block - basis.len();
            let cands: Vec<Vec<f64>> = (0..missing)
                .map(|_| {
                    let mut v: Vec<f64> = (0..dim)
                        .map(|_| 1e-3 * (rng.random::<f64>() - 0.5))
                        .collect();
                    if next < dim {
                        v[by_diag[next]] += 1.0;
                        next += 1;
                    }
                    v
                })
                .collect();
            extend(&mut basis, &mut images, cands);
        }
    }

    let mut worst = f64::INFINITY;
    for iter in 0..opts.max_iter {
        let m = basis.len();
        let g = gram(&basis, &images, true);
        let eig = SymmetricEigen::new(g);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let select = |cols: &[usize]| {
            let mut y = Matrix::zeros(m, cols.len());
            for (j, &c) in cols.iter().enumerate() {
                y.set_column(j, &eig.eigenvectors.column(c));
            }
            y
        };
        let theta: Vec<f64> = order
            .iter()
            .take(block)
            .map(|&c| eig.eigenvalues[c])
            .collect();

        // The wanted pairs first; the rest only if another step follows.
        let y = select(&order[..k]);
        let mut ritz = combine(&basis, &y);
        let mut ritz_images = combine(&images, &y);
        let residual = |x: &[f64], hx: &[f64], t: f64| {
            let mut r = hx.to_vec();
            axpy(-t, x, &mut r);
            r
        };
        let mut residuals: Vec<Vec<f64>> = (0..k)
            .map(|j| residual(&ritz[j], &ritz_images[j], theta[j]))
            .collect();
        let norms: Vec<f64> = residuals.iter().map(|r| dot(r, r).sqrt()).collect();
        worst = norms.iter().cloned().fold(0.0, f64::max);
        let done = |j: usize, norm: f64| norm <= opts.tol * theta[j].abs().max(1.0);
        if (0..k).all(|j| done(j, norms[j])) {
            return Ok(Eigenpairs {
                values: theta[..k].to_vec(),
                vectors: ritz,
                spare: combine(&basis, &select(&order[k..block])),
                residual: worst,
                iterations: iter + 1,
            });
        }
        if block > k {
            let y = select(&order[k..block]);
            let (xs, hxs) = (combine(&basis, &y), combine(&images, &y));
            for (j, (x, hx)) in xs.into_iter().zip(hxs).enumerate() {
                residuals.push(residual(&x, &hx, theta[k + j]));
                ritz.push(x);
                ritz_images.push(hx);
            }
        }

        if m + block > opts.restart * block {
            basis = ritz;
            images = ritz_images;
        }

        let corrections: Vec<Vec<f64>> = residuals
            .into_iter()
            .enumerate()
            .filter(|(j, r)| !done(*j, dot(r, r).sqrt()))
            .map(|(j, mut t)| {
                for (ti, di) in t.iter_mut().zip(&diag) {
                    let mut denom = theta[j] - di;
                    if denom.abs() < 1e-8 {
                        denom = if denom < 0.0 { -1e-8 } else { 1e-8 };
                    }
                    *ti /= denom;
                }
                t
            })
            .collect();
        if extend(&mut basis, &mut images, corrections) == 0 {
            break;
        }
    }
    Err(Error::NoConvergence(format!(
        "residual {worst:.3e} after {} iterations",
        opts.max_iter
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::diag;

    #[test]
    fn dense_examples() {
        assert_eq!(exact_spectrum(&diag(&[2.0, 0.0])).unwrap(), vec![0.0, 2.0]);
        assert_eq!(
            exact_spectrum(&Matrix::identity(4, 4)).unwrap(),
            vec![1.0; 4]
        );
        let bad = Matrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(exact_spectrum(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn davidson_matches_dense() {
        let n = 1200;
        let mut triplets = Vec::new();
        for i in 0..n {
            triplets.push((i, i, (i as f64 * 0.37).sin() * 3.0 + i as f64 * 0.01));
            if i + 1 < n {
                triplets.push((i, i + 1, 0.5));
                triplets.push((i + 1, i, 0.5));
            }
        }
        let h = CsrMatrix::from_triplets(n, n, &triplets);
        let dense = exact_spectrum(&h.to_dense()).unwrap();
        let pairs = lowest_eigenpairs(&h, 6, &[]).unwrap();
        for (a, b) in pairs.values.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }
}
