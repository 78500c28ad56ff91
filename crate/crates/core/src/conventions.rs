//! Calibrated sign and scale conventions.
//!
//! Every constant here is pinned by an oracle test against explicit
//! Fock-space matrices (see `tests/conventions.rs`). See CONVENTIONS.md.
//!
//! Reminder: `a_i` CREATES and `a_i⁺` ANNIHILATES (`a_i⁺ Φ = 0`).

/// Overall sign in front of the fermionic standard form:
/// `H = k0 + FERMION_STANDARD_SIGN · Σ C_ij (a_i + a_i⁺)(a_j − a_j⁺)`, `C = U + V`.
pub const FERMION_STANDARD_SIGN: f64 = -1.0;

/// Coefficient of `Tr V` in the fermionic normal-ordering constant:
/// `k0 = const + FERMION_TRACE_COEFF · Tr V`.
pub const FERMION_TRACE_COEFF: f64 = 1.0;

/// Coefficient of `Tr V` in the bosonic normal-ordering constant:
/// `k0 = const + BOSON_TRACE_COEFF · Tr V`.
pub const BOSON_TRACE_COEFF: f64 = -1.0;

/// Level coefficient κ of a discrete bosonic mode:
/// `λ_m = κ · sign(r) · √(−r t) · (m + ½)`.
pub const BOSON_LEVEL_COEFFICIENT: f64 = -4.0;

/// Wedge-term factor: the 2-form part of `Q` is `Σ U_ij a_i a_j` with
/// `U = LEMMA2_WEDGE_FACTOR · (ω − ωᵗ)`.
pub const LEMMA2_WEDGE_FACTOR: f64 = -0.5;

/// Offset relating the number of `−` signs in a fermionic sign word to the
/// fermion-number parity of the eigenvector: `parity = (#minus + offset) mod 2`.
///
/// A `+` sign marks an occupied normal mode, so the offset equals `n mod 2`.
pub const fn parity_offset(n: usize) -> usize {
    n % 2
}
