//! Every calibrated convention is pinned against explicit Fock-space
//! matrices at one and two modes, and each pin is shown to reject the
//! natural alternative.

mod common;

use common::*;

#[test]
fn fermion_standard_form_sign() {
    for n in 1..=2 {
        let pin = fermion_standard_sign(n);
        assert!(pin.holds(1e-12), "n={n}: {pin:?}");
    }
}

#[test]
fn fermion_standard_form_sign_up_to_six_modes() {
    for n in 3..=6 {
        assert!(fermion_standard_sign(n).calibrated <= 1e-12);
    }
}

#[test]
fn boson_normal_ordering_constant() {
    for n in 1..=2 {
        let pin = boson_trace_constant(n);
        assert!(pin.holds(1e-10), "n={n}: {pin:?}");
    }
}

#[test]
fn boson_level_coefficient_is_minus_four() {
    for n in 1..=2 {
        let pin = boson_level_coefficient(n);
        assert!(pin.holds(1e-8), "n={n}: {pin:?}");
    }
}

#[test]
fn fermion_spectrum_shift_is_k0() {
    for n in 1..=2 {
        let pin = fermion_shift(n);
        assert!(pin.holds(1e-10), "n={n}: {pin:?}");
    }
}

#[test]
fn parity_offset_tracks_mode_count() {
    for n in 1..=2 {
        let pin = parity_offset_pin(n);
        assert_eq!(pin.calibrated, 0.0, "n={n}");
        assert!(pin.alternative > 0.0, "a constant offset survived: {pin:?}");
    }
    assert_eq!(
        parity_mismatches(3, bogoliubov::conventions::parity_offset(3), 9),
        0
    );
}

#[test]
fn wedge_antisymmetrization_factor() {
    for n in 1..=2 {
        let pin = wedge_factor(n);
        // At n = 1 there is no antisymmetric part, so both factors agree.
        if n == 1 {
            assert!(pin.calibrated <= 1e-12);
        } else {
            assert!(pin.holds(1e-12), "n={n}: {pin:?}");
        }
    }
}
