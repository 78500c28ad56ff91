//! Minimal compressed-sparse-row matrix for the oracle operators.

use crate::linalg::Matrix;

/// Vectors processed together by [`CsrMatrix::apply_many`].
pub const LANES: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<u32>,
    values: Vec<f64>,
}

/// Sorts `(col, value)` pairs and sums duplicates in place; drops exact zeros.
fn merge_row(row: &mut Vec<(u32, f64)>) {
    row.sort_unstable_by_key(|&(c, _)| c);
    let mut out = 0;
    for i in 0..row.len() {
        if out > 0 && row[out - 1].0 == row[i].0 {
            row[out - 1].1 += row[i].1;
        } else {
            row[out] = row[i];
            out += 1;
        }
    }
    row.truncate(out);
    row.retain(|&(_, v)| v != 0.0);
}

/// Row-by-row builder.
#[derive(Debug)]
pub struct CsrBuilder {
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<u32>,
    values: Vec<f64>,
}

impl CsrBuilder {
    pub fn new(ncols: usize) -> Self {
        Self::with_capacity(ncols, 0, 0)
    }

    pub fn with_capacity(ncols: usize, rows: usize, nnz: usize) -> Self {
        assert!(
            ncols <= u32::MAX as usize,
            "column count exceeds u32 index range"
        );
        let mut indptr = Vec::with_capacity(rows + 1);
        indptr.push(0);
        CsrBuilder {
            ncols,
            indptr,
            indices: Vec::with_capacity(nnz),
            values: Vec::with_capacity(nnz),
        }
    }

    /// Appends the next row; entries may be unsorted and repeated.
    pub fn push_row(&mut self, row: &mut Vec<(u32, f64)>) {
        merge_row(row);
        for &(c, v) in row.iter() {
            debug_assert!((c as usize) < self.ncols);
            self.indices.push(c);
            self.values.push(v);
        }
        self.indptr.push(self.indices.len());
    }

    pub fn finish(self) -> CsrMatrix {
        CsrMatrix {
            nrows: self.indptr.len() - 1,
            ncols: self.ncols,
            indptr: self.indptr,
            indices: self.indices,
            values: self.values,
        }
    }
}

impl CsrMatrix {
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut rows: Vec<Vec<(u32, f64)>> = vec![Vec::new(); nrows];
        for &(r, c, v) in triplets {
            rows[r].push((c as u32, v));
        }
        let mut b = CsrBuilder::new(ncols);
        for row in &mut rows {
            b.push_row(row);
        }
        b.finish()
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let triplets: Vec<(usize, usize, f64)> =
            d.iter().enumerate().map(|(i, &v)| (i, i, v)).collect();
        Self::from_triplets(d.len(), d.len(), &triplets)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.indptr[i]..self.indptr[i + 1];
        self.indices[span.clone()]
            .iter()
            .zip(&self.values[span])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).find(|&(c, _)| c == j).map_or(0.0, |(_, v)| v)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.nrows.min(self.ncols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// `y = A x`
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.ncols);
        assert_eq!(y.len(), self.nrows);
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.indptr[i]..self.indptr[i + 1] {
                acc += self.values[k] * x[self.indices[k] as usize];
            }
            *yi = acc;
        }
    }

    /// `A x_v` for several vectors, streaming the matrix once per group of
    /// [`LANES`] vectors.
    pub fn apply_many(&self, xs: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(xs.len());
        for group in xs.chunks(LANES) {
            out.extend(self.apply_group(group));
        }
        out
    }

    fn apply_group(&self, xs: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let p = xs.len();
        debug_assert!(p <= LANES);
        let mut packed = vec![[0.0; LANES]; self.ncols];
        for (v, x) in xs.iter().enumerate() {
            assert_eq!(x.len(), self.ncols);
            for (slot, xi) in packed.iter_mut().zip(x) {
                slot[v] = *xi;
            }
        }
        let mut out = vec![vec![0.0; self.nrows]; p];
        for i in 0..self.nrows {
            let mut acc = [0.0; LANES];
            for k in self.indptr[i]..self.indptr[i + 1] {
                let a = self.values[k];
                let src = &packed[self.indices[k] as usize];
                for l in 0..LANES {
                    acc[l] += a * src[l];
                }
            }
            for (o, a) in out.iter_mut().zip(&acc) {
                o[i] = *a;
            }
        }
        out
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.nrows];
        self.matvec(x, &mut y);
        y
    }

    pub fn transpose(&self) -> CsrMatrix {
        let mut triplets = Vec::with_capacity(self.nnz());
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                triplets.push((j, i, v));
            }
        }
        CsrMatrix::from_triplets(self.ncols, self.nrows, &triplets)
    }

    pub fn scale(&self, s: f64) -> CsrMatrix {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        out
    }

    /// `self + s · other`
    pub fn add_scaled(&self, other: &CsrMatrix, s: f64) -> CsrMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut b = CsrBuilder::new(self.ncols);
        let mut row = Vec::new();
        for i in 0..self.nrows {
            row.clear();
            row.extend(self.row(i).map(|(c, v)| (c as u32, v)));
            row.extend(other.row(i).map(|(c, v)| (c as u32, s * v)));
            b.push_row(&mut row);
        }
        b.finish()
    }

    pub fn matmul(&self, other: &CsrMatrix) -> CsrMatrix {
        assert_eq!(self.ncols, other.nrows);
        let mut b = CsrBuilder::new(other.ncols);
        let mut row = Vec::new();
        for i in 0..self.nrows {
            row.clear();
            for (k, a) in self.row(i) {
                row.extend(other.row(k).map(|(c, v)| (c as u32, a * v)));
            }
            b.push_row(&mut row);
        }
        b.finish()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CsrMatrix) -> CsrMatrix {
        let mut b = CsrBuilder::new(self.ncols * other.ncols);
        let mut row = Vec::new();
        for i in 0..self.nrows {
            for p in 0..other.nrows {
                row.clear();
                for (j, a) in self.row(i) {
                    for (q, v) in other.row(p) {
                        row.push(((j * other.ncols + q) as u32, a * v));
                    }
                }
                b.push_row(&mut row);
            }
        }
        b.finish()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                m[(i, j)] += v;
            }
        }
        m
    }

    /// Largest `|A_ij − A_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let t = self.transpose();
        let diff = self.add_scaled(&t, -1.0);
        diff.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()))
    }
}
