//! Explicit ladder-operator representations on fermionic and truncated
//! bosonic Fock spaces.
//!
//! `a_i` creates and `a_i⁺` annihilates, so the vacuum `Φ` (basis index 0)
//! satisfies `a_i⁺ Φ = 0`.

use crate::conventions::FERMION_STANDARD_SIGN;
use crate::error::{Error, Result};
use crate::forms::{QuadraticForm, StandardForm, Statistics};

use super::sparse::{CsrBuilder, CsrMatrix};

pub const FERMION_MAX_MODES: usize = 12;
pub const FERMION_DIM_GUARD: usize = 1 << FERMION_MAX_MODES;
pub const BOSON_DIM_GUARD: usize = 2_000_000;

/// A single ladder operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    /// `a_i`
    Create(usize),
    /// `a_i⁺`
    Annihilate(usize),
}

impl Ladder {
    /// Transpose of the operator matrix in the real orthonormal basis.
    pub fn adjoint(self) -> Ladder {
        match self {
            Ladder::Create(i) => Ladder::Annihilate(i),
            Ladder::Annihilate(i) => Ladder::Create(i),
        }
    }
}

/// `coef · left · right`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub left: Ladder,
    pub right: Ladder,
}

pub trait FockSpace {
    fn statistics(&self) -> Statistics;
    fn n(&self) -> usize;
    fn dim(&self) -> usize;
    /// Image of basis vector `state` under `a_mode`, if nonzero.
    fn create(&self, mode: usize, state: usize) -> Option<(usize, f64)>;
    /// Image of basis vector `state` under `a_mode⁺`, if nonzero.
    fn annihilate(&self, mode: usize, state: usize) -> Option<(usize, f64)>;

    fn apply(&self, op: Ladder, state: usize) -> Option<(usize, f64)> {
        match op {
            Ladder::Create(i) => self.create(i, state),
            Ladder::Annihilate(i) => self.annihilate(i, state),
        }
    }

    fn matrix(&self, op: Ladder) -> CsrMatrix {
        let dim = self.dim();
        let triplets: Vec<(usize, usize, f64)> = (0..dim)
            .filter_map(|s| self.apply(op, s).map(|(t, v)| (t, s, v)))
            .collect();
        CsrMatrix::from_triplets(dim, dim, &triplets)
    }

    /// Matrix of `a_i`.
    fn creation(&self, i: usize) -> CsrMatrix {
        self.matrix(Ladder::Create(i))
    }

    /// Matrix of `a_i⁺`.
    fn annihilation(&self, i: usize) -> CsrMatrix {
        self.matrix(Ladder::Annihilate(i))
    }
}

/// Exterior algebra `Λ*Rⁿ`; basis index bit `i` set means mode `i` occupied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FermionFockRep {
    n: usize,
}

pub fn build_fermion_rep(n: usize) -> Result<FermionFockRep> {
    if n == 0 {
        return Err(Error::Precondition("need at least one mode".into()));
    }
    if n > FERMION_MAX_MODES {
        return Err(Error::Resource {
            dim: 1usize << n.min(62),
            limit: FERMION_DIM_GUARD,
        });
    }
    Ok(FermionFockRep { n })
}

impl FermionFockRep {
    /// Sign string from occupied modes of lower index.
    fn sign(mode: usize, state: usize) -> f64 {
        if (state & ((1usize << mode) - 1)).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn occupation_count(state: usize) -> usize {
        state.count_ones() as usize
    }
}

impl FockSpace for FermionFockRep {
    fn statistics(&self) -> Statistics {
        Statistics::Fermion
    }

    fn n(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        1 << self.n
    }

    fn create(&self, mode: usize, state: usize) -> Option<(usize, f64)> {
        let bit = 1usize << mode;
        (state & bit == 0).then(|| (state | bit, Self::sign(mode, state)))
    }

    fn annihilate(&self, mode: usize, state: usize) -> Option<(usize, f64)> {
        let bit = 1usize << mode;
        (state & bit != 0).then(|| (state & !bit, Self::sign(mode, state)))
    }
}

/// Truncated symmetric algebra with at most `cutoff` quanta per mode, in the
/// orthonormal basis `a^m Φ / √(m!)`. Mode `i` is the base-`(cutoff+1)`
/// digit of weight `(cutoff+1)^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonFockRep {
    n: usize,
    cutoff: usize,
    strides: Vec<usize>,
    dim: usize,
    /// Occupation of mode `i` in state `s` at `s·n + i`.
    digits: Vec<u16>,
    /// `√m` for `m = 0..=cutoff`.
    roots: Vec<f64>,
}

pub fn build_boson_rep(n: usize, cutoff: usize) -> Result<BosonFockRep> {
    build_boson_rep_with_guard(n, cutoff, BOSON_DIM_GUARD)
}

pub fn build_boson_rep_with_guard(n: usize, cutoff: usize, guard: usize) -> Result<BosonFockRep> {
    if n == 0 || cutoff == 0 {
        return Err(Error::Precondition("need n ≥ 1 and cutoff ≥ 1".into()));
    }
    let base = cutoff + 1;
    let mut strides = Vec::with_capacity(n);
    let mut dim = 1usize;
    for _ in 0..n {
        strides.push(dim);
        dim = match dim.checked_mul(base) {
            Some(d) if d <= guard => d,
            _ => {
                return Err(Error::Resource {
                    dim: base.saturating_pow(n as u32),
                    limit: guard,
                })
            }
        };
    }
    if cutoff > u16::MAX as usize {
        return Err(Error::Precondition("cutoff exceeds 65535".into()));
    }
    let mut digits = vec![0u16; dim * n];
    let mut current = vec![0u16; n];
    for s in 0..dim {
        digits[s * n..(s + 1) * n].copy_from_slice(&current);
        for d in current.iter_mut() {
            if (*d as usize) < cutoff {
                *d += 1;
                break;
            }
            *d = 0;
        }
    }
    Ok(BosonFockRep {
        n,
        cutoff,
        strides,
        dim,
        digits,
        roots: (0..=cutoff).map(|m| (m as f64).sqrt()).collect(),
    })
}

impl BosonFockRep {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn occupation(&self, mode: usize, state: usize) -> usize {
        usize::from(self.digits[state * self.n + mode])
    }

    pub fn occupations(&self, state: usize) -> Vec<usize> {
        (0..self.n).map(|i| self.occupation(i, state)).collect()
    }

    pub fn index_of(&self, occupations: &[usize]) -> Option<usize> {
        if occupations.len() != self.n || occupations.iter().any(|&m| m > self.cutoff) {
            return None;
        }
        Some(
            occupations
                .iter()
                .zip(&self.strides)
                .map(|(m, s)| m * s)
                .sum(),
        )
    }

    /// Pads a vector on a smaller box into this one (zeros on new states).
    pub fn embed_from(&self, smaller: &BosonFockRep, v: &[f64]) -> Vec<f64> {
        assert_eq!(smaller.n, self.n);
        assert!(smaller.cutoff <= self.cutoff);
        let mut out = vec![0.0; self.dim];
        for (s, &x) in v.iter().enumerate() {
            let occ = smaller.occupations(s);
            out[self.index_of(&occ).expect("smaller box fits")] = x;
        }
        out
    }

    /// Basis states with every occupation at most `cutoff − margin`.
    pub fn interior_states(&self, margin: usize) -> Vec<usize> {
        let top = self.cutoff.saturating_sub(margin);
        (0..self.dim)
            .filter(|&s| (0..self.n).all(|i| self.occupation(i, s) <= top))
            .collect()
    }
}

impl FockSpace for BosonFockRep {
    fn statistics(&self) -> Statistics {
        Statistics::Boson
    }

    fn n(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn create(&self, mode: usize, state: usize) -> Option<(usize, f64)> {
        let m = self.occupation(mode, state);
        (m < self.cutoff).then(|| (state + self.strides[mode], self.roots[m + 1]))
    }

    fn annihilate(&self, mode: usize, state: usize) -> Option<(usize, f64)> {
        let m = self.occupation(mode, state);
        (m > 0).then(|| (state - self.strides[mode], self.roots[m]))
    }
}

/// Assembles `constant · I + Σ coef · left · right`.
///
/// Row `s` is `⟨s| left right = (rightᵗ leftᵗ |s⟩)ᵗ`, so rows are built by
/// applying adjoints in reverse order.
pub fn assemble<F: FockSpace + ?Sized>(rep: &F, terms: &[Term], constant: f64) -> CsrMatrix {
    let dim = rep.dim();
    // Distinct targets per row are bounded by the term count.
    let per_row = (terms.len() + 1).min(dim);
    let mut b = CsrBuilder::with_capacity(dim, dim, dim * per_row);
    let mut row: Vec<(u32, f64)> = Vec::new();
    for s in 0..dim {
        row.clear();
        if constant != 0.0 {
            row.push((s as u32, constant));
        }
        for term in terms {
            let Some((mid, x)) = rep.apply(term.left.adjoint(), s) else {
                continue;
            };
            if let Some((col, y)) = rep.apply(term.right.adjoint(), mid) {
                row.push((col as u32, term.coef * x * y));
            }
        }
        b.push_row(&mut row);
    }
    b.finish()
}

fn check_rep<F: FockSpace + ?Sized>(rep: &F, statistics: Statistics, n: usize) -> Result<()> {
    if rep.statistics() != statistics {
        return Err(Error::Precondition(format!(
            "{statistics} form on a {} representation",
            rep.statistics()
        )));
    }
    if rep.n() != n {
        return Err(Error::Precondition(format!(
            "form has {n} modes, representation has {}",
            rep.n()
        )));
    }
    Ok(())
}

/// Ladder terms of `U_ij a_i⁺a_j⁺ + V_ij (a_i a_j⁺ + a_j a_i⁺) ± U_ij a_i a_j`.
pub fn form_terms(form: &QuadraticForm) -> Vec<Term> {
    use Ladder::{Annihilate as An, Create as Cr};
    let n = form.n();
    let pm = match form.statistics {
        Statistics::Boson => 1.0,
        Statistics::Fermion => -1.0,
    };
    let mut terms = Vec::new();
    let mut push = |coef: f64, left, right| {
        if coef != 0.0 {
            terms.push(Term { coef, left, right });
        }
    };
    for i in 0..n {
        for j in 0..n {
            let (u, v) = (form.u[(i, j)], form.v[(i, j)]);
            push(u, An(i), An(j));
            push(v, Cr(i), An(j));
            push(v, Cr(j), An(i));
            push(pm * u, Cr(i), Cr(j));
        }
    }
    terms
}

/// Ladder terms of a standard real form (constant excluded).
pub fn standard_terms(std: &StandardForm) -> Vec<Term> {
    use Ladder::{Annihilate as An, Create as Cr};
    let mut terms = Vec::new();
    let mut push = |coef: f64, left, right| {
        if coef != 0.0 {
            terms.push(Term { coef, left, right });
        }
    };
    match std {
        StandardForm::Boson { t, r, .. } => {
            let n = t.nrows();
            for i in 0..n {
                for j in 0..n {
                    let (tij, rij) = (t[(i, j)], r[(i, j)]);
                    // T (a_i + a_i⁺)(a_j + a_j⁺) + R (a_i − a_i⁺)(a_j − a_j⁺)
                    push(tij + rij, Cr(i), Cr(j));
                    push(tij - rij, Cr(i), An(j));
                    push(tij - rij, An(i), Cr(j));
                    push(tij + rij, An(i), An(j));
                }
            }
        }
        StandardForm::Fermion { c, .. } => {
            let n = c.nrows();
            for i in 0..n {
                for j in 0..n {
                    let s = FERMION_STANDARD_SIGN * c[(i, j)];
                    // (a_i + a_i⁺)(a_j − a_j⁺)
                    push(s, Cr(i), Cr(j));
                    push(-s, Cr(i), An(j));
                    push(s, An(i), Cr(j));
                    push(-s, An(i), An(j));
                }
            }
        }
    }
    terms
}

/// Oracle matrix of a quadratic form. Rows are exact, so the matrix is
/// symmetric up to rounding in the coefficients.
pub fn build_hamiltonian<F: FockSpace + ?Sized>(
    form: &QuadraticForm,
    rep: &F,
) -> Result<CsrMatrix> {
    check_rep(rep, form.statistics, form.n())?;
    Ok(assemble(rep, &form_terms(form), form.constant))
}

/// Oracle matrix of a standard real form.
pub fn build_standard_hamiltonian<F: FockSpace + ?Sized>(
    std: &StandardForm,
    rep: &F,
) -> Result<CsrMatrix> {
    check_rep(rep, std.statistics(), std.n())?;
    Ok(assemble(rep, &standard_terms(std), std.k0()))
}

/// Number operator `Σ a_i a_i⁺`.
pub fn number_operator<F: FockSpace + ?Sized>(rep: &F) -> CsrMatrix {
    let terms: Vec<Term> = (0..rep.n())
        .map(|i| Term {
            coef: 1.0,
            left: Ladder::Create(i),
            right: Ladder::Annihilate(i),
        })
        .collect();
    assemble(rep, &terms, 0.0)
}

/// Even and odd fermion-number projectors.
pub fn parity_sectors<F: FockSpace + ?Sized>(rep: &F) -> Result<(CsrMatrix, CsrMatrix)> {
    if rep.statistics() != Statistics::Fermion {
        return Err(Error::Unsupported(
            "parity sectors need a fermionic representation".into(),
        ));
    }
    let counts = number_operator(rep).diagonal();
    let even: Vec<f64> = counts
        .iter()
        .map(|&c| {
            if (c.round() as i64) % 2 == 0 {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let odd: Vec<f64> = even.iter().map(|e| 1.0 - e).collect();
    Ok((
        CsrMatrix::from_diagonal(&even),
        CsrMatrix::from_diagonal(&odd),
    ))
}

/// Basis indices selected by a diagonal 0/1 projector.
pub fn projector_support(p: &CsrMatrix) -> Vec<usize> {
    p.diagonal()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(i, _)| i)
        .collect()
}
