//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::time::Instant;

use bogoliubov::forms::random_canonical_with;
use bogoliubov::generate::{random_bounded_boson_form, random_fermion_form, random_jacobian};
use bogoliubov::io::read_fixture;
use bogoliubov::linalg::{gaussian_matrix, sym_part, Matrix};
use bogoliubov::morse::{
    lemma1_check, lemma2_check, local_witten_spectrum, poincare_hopf_check, witten_oracle_levels,
    zero_mode_parity, SingularPoint,
};
use bogoliubov::oracle::{build_fermion_rep, truncation_stable_spectrum, verify_fermion};
use bogoliubov::spectral::{
    boson_spectrum, diagonalize_boson, diagonalize_fermion, fermion_invariants, fermion_spectrum,
    SpectralOptions,
};
use bogoliubov::{
    apply_transform, to_standard, Error, QuadraticForm, Sector, StandardForm, Statistics,
    Tolerances,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn fermion_suite() -> Vec<QuadraticForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    (0..200)
        .map(|i| random_fermion_form(&mut rng, 1 + i % 8))
        .collect()
}

fn boson_suite() -> Vec<QuadraticForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    (0..50)
        .map(|i| random_bounded_boson_form(&mut rng, 1 + i % 3))
        .collect()
}

fn std_of(form: &QuadraticForm) -> StandardForm {
    to_standard(form, &Tolerances::default()).expect("generated forms are valid")
}

fn boson_energies(std: &StandardForm, k: usize) -> bogoliubov::Result<Vec<f64>> {
    let data = diagonalize_boson(std, &SpectralOptions::default())?;
    Ok(boson_spectrum(&data, k)?.energies())
}

fn criterion_1() -> Outcome {
    let (mut dev, mut mismatches) = (0.0_f64, 0usize);
    for form in fermion_suite() {
        match verify_fermion(&form, 1e-9) {
            Ok(r) => {
                dev = dev.max(r.max_abs_deviation);
                mismatches += r.sector_mismatches;
            }
            Err(e) => return outcome(false, format!("error: {e}")),
        }
    }
    outcome(
        dev <= 1e-9 && mismatches == 0,
        format!("200 forms, n=1..8: max deviation {dev:.2e}, sector mismatches {mismatches}"),
    )
}

fn criterion_2() -> Outcome {
    let mut dev = 0.0_f64;
    for (i, form) in boson_suite().iter().enumerate() {
        let closed = match boson_energies(&std_of(form), 10) {
            Ok(e) => e,
            Err(e) => return outcome(false, format!("form {i}: {e}")),
        };
        let oracle = match truncation_stable_spectrum(form, 60, 10, 1e-6) {
            Ok(s) => s,
            Err(e) => return outcome(false, format!("form {i}: {e}")),
        };
        if oracle.values.len() < 10 {
            return outcome(
                false,
                format!("form {i}: {}", oracle.warning.unwrap_or_default()),
            );
        }
        dev = closed
            .iter()
            .zip(&oracle.values)
            .fold(dev, |m, (a, b)| m.max((a - b).abs()));
    }
    outcome(
        dev <= 1e-6,
        format!("50 forms, n=1..3, cutoff 60: max deviation {dev:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let (mut dev, mut sector_changes) = (0.0_f64, 0usize);
    for form in fermion_suite() {
        let std = std_of(&form);
        let b = random_canonical_with(&mut rng, Statistics::Fermion, form.n(), true);
        let moved = apply_transform(&std, &b, &tol).unwrap();
        let before = fermion_spectrum(&diagonalize_fermion(&std).unwrap()).unwrap();
        let after = fermion_spectrum(&diagonalize_fermion(&moved).unwrap()).unwrap();
        dev = common::max_dev(&before.energies(), &after.energies()).max(dev);
        for sector in [Sector::Even, Sector::Odd] {
            let (x, y) = (
                before.sector_energies(sector),
                after.sector_energies(sector),
            );
            if x.len() != y.len() || common::max_dev(&x, &y) > 1e-8 {
                sector_changes += 1;
            }
        }
    }
    for form in boson_suite() {
        let std = std_of(&form);
        let b = random_canonical_with(&mut rng, Statistics::Boson, form.n(), true);
        let moved = apply_transform(&std, &b, &tol).unwrap();
        match (boson_energies(&std, 10), boson_energies(&moved, 10)) {
            (Ok(x), Ok(y)) => dev = dev.max(common::max_dev(&x, &y)),
            (Err(e), _) | (_, Err(e)) => return outcome(false, format!("error: {e}")),
        }
    }
    outcome(
        dev <= 1e-8 && sector_changes == 0,
        format!("250 forms: max energy change {dev:.2e}, sector changes {sector_changes}"),
    )
}

fn criterion_4() -> Outcome {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let (mut det_dev, mut s_dev) = (0.0_f64, 0.0_f64);
    for i in 0..100 {
        let n = 1 + i % 6;
        let form = random_fermion_form(&mut rng, n);
        let std = std_of(&form);
        let b = random_canonical_with(&mut rng, Statistics::Fermion, n, true);
        let moved = apply_transform(&std, &b, &tol).unwrap();
        let (StandardForm::Fermion { c: c0, .. }, StandardForm::Fermion { c: c1, .. }) =
            (&std, &moved)
        else {
            unreachable!()
        };
        let (a, z) = (fermion_invariants(c0), fermion_invariants(c1));
        det_dev = det_dev.max((a.det - z.det).abs());
        s_dev = s_dev.max(common::max_dev(&a.s_numbers, &z.s_numbers));
    }
    outcome(
        det_dev <= 1e-10 && s_dev <= 1e-10,
        format!("100 transforms: det change {det_dev:.2e}, s-number change {s_dev:.2e}"),
    )
}

fn criterion_5() -> Outcome {
    let opts = SpectralOptions::default();
    let m = |d: &[f64]| Matrix::from_row_slice(2, 2, d);
    let rotation = StandardForm::Boson {
        t: m(&[1.0, 0.0, 0.0, -1.0]),
        r: m(&[0.0, 1.0, 1.0, 0.0]),
        k0: 0.0,
    };
    let jordan = StandardForm::Boson {
        t: m(&[0.0, 1.0, 1.0, 0.0]),
        r: m(&[1.0, 0.0, 0.0, 0.0]),
        k0: 0.0,
    };
    let a = diagonalize_boson(&rotation, &opts);
    let b = diagonalize_boson(&jordan, &opts);
    let ok = matches!(a, Err(Error::NonRealSpectrum { .. }))
        && matches!(b, Err(Error::DefectiveMatrix { .. }));
    let name = |r: &bogoliubov::Result<_>| match r {
        Ok(_) => "Ok".to_string(),
        Err(e) => e.name().to_string(),
    };
    outcome(
        ok,
        format!(
            "rotation pencil -> {}, Jordan pencil -> {}",
            name(&a),
            name(&b)
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let (mut l1, mut l2, mut exact) = (0.0_f64, 0.0_f64, 0.0_f64);
    for i in 0..100 {
        let n = 1 + i % 6;
        let rep = build_fermion_rep(n).unwrap();
        let w = gaussian_matrix(&mut rng, n, 1);
        l1 = l1.max(lemma1_check(w.as_slice(), &rep).unwrap());
        let jac = gaussian_matrix(&mut rng, n, n);
        l2 = l2.max(lemma2_check(&jac).unwrap().residual);
        exact = exact.max(lemma2_check(&sym_part(&jac)).unwrap().residual);
    }
    outcome(
        l1 <= 1e-12 && l2 <= 1e-12 && exact <= 1e-12,
        format!(
            "100 inputs each, n<=6: lemma 1 {l1:.2e}, lemma 2 {l2:.2e}, symmetric case {exact:.2e}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let (mut bad_zero, mut bad_parity, mut oracle_dev, mut oracle_runs) = (0, 0, 0.0_f64, 0);
    for i in 0..100 {
        let n = 1 + i % 6;
        let jacobian = random_jacobian(&mut rng, n);
        let det = jacobian.determinant();
        let point = SingularPoint {
            label: format!("p{i}"),
            jacobian: jacobian.clone(),
        };
        let lambdas = diagonalize_fermion(&StandardForm::Fermion {
            c: jacobian,
            k0: 0.0,
        })
        .unwrap()
        .lambdas;
        let levels = local_witten_spectrum(&lambdas, 2 * n + 2).unwrap();
        let zeros: Vec<_> = levels
            .entries
            .iter()
            .filter(|e| e.energy.abs() <= 1e-9)
            .collect();
        if zeros.len() != 1 {
            bad_zero += 1;
            continue;
        }
        let parity = zero_mode_parity(&point).unwrap();
        if (parity == Sector::Even) != (det > 0.0) || zeros[0].sector != Some(parity) {
            bad_parity += 1;
        }
        if n <= 2 {
            let closed = local_witten_spectrum(&lambdas, 8).unwrap().energies();
            match witten_oracle_levels(&lambdas, 40, 8) {
                Ok(levels) => oracle_dev = oracle_dev.max(common::max_dev(&closed, &levels)),
                Err(e) => return outcome(false, format!("oracle: {e}")),
            }
            oracle_runs += 1;
        }
    }
    outcome(
        bad_zero == 0 && bad_parity == 0 && oracle_dev <= 1e-6,
        format!(
            "100 jacobians: non-unique zero modes {bad_zero}, parity failures {bad_parity}, \
             tensor oracle ({oracle_runs} runs) max deviation {oracle_dev:.2e}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let load = |name: &str| {
        let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(path).expect("fixture present");
        poincare_hopf_check(&read_fixture(&text).unwrap()).unwrap()
    };
    let (s, t) = (load("sphere.json"), load("torus.json"));
    let ok = (s.chi, s.m_plus, s.m_minus, s.chi_matches) == (2, 2, 0, true)
        && (t.chi, t.m_plus, t.m_minus, t.chi_matches) == (0, 2, 2, true);
    outcome(
        ok,
        format!(
            "sphere m+={} m-={} chi={}; torus m+={} m-={} chi={}",
            s.m_plus, s.m_minus, s.chi_computed, t.m_plus, t.m_minus, t.chi_computed
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=2 {
        let checks = [
            (
                "fermion sign",
                common::fermion_standard_sign(n).holds(1e-12),
            ),
            (
                "boson constant",
                common::boson_trace_constant(n).holds(1e-10),
            ),
            (
                "level coefficient",
                common::boson_level_coefficient(n).holds(1e-8),
            ),
            ("fermion shift", common::fermion_shift(n).holds(1e-10)),
            ("parity offset", {
                let p = common::parity_offset_pin(n);
                p.calibrated == 0.0 && p.alternative > 0.0
            }),
            ("wedge factor", {
                let p = common::wedge_factor(n);
                if n == 1 {
                    p.calibrated <= 1e-12
                } else {
                    p.holds(1e-12)
                }
            }),
        ];
        failures.extend(
            checks
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(name, _)| format!("{name} (n={n})")),
        );
    }
    let doc = format!("{}/../../CONVENTIONS.md", env!("CARGO_MANIFEST_DIR"));
    let documented = std::fs::read_to_string(doc)
        .map(|t| t.contains("κ = −4") && t.contains("κ = −2"))
        .unwrap_or(false);
    if !documented {
        failures.push("CONVENTIONS.md does not record κ = −4 against κ = −2".into());
    }
    let detail = if failures.is_empty() {
        "6 conventions pinned at n=1,2; level coefficient documented".to_string()
    } else {
        format!("failed: {}", failures.join(", "))
    };
    outcome(failures.is_empty(), detail)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("fermionic oracle equivalence", criterion_1),
        ("bosonic oracle equivalence", criterion_2),
        ("isospectrality under positive transforms", criterion_3),
        ("invariant completeness", criterion_4),
        ("non-real and defective pencils", criterion_5),
        ("wedge/contraction lemma residuals", criterion_6),
        ("local zero modes", criterion_7),
        ("Poincare-Hopf fixtures", criterion_8),
        ("convention pins", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {verdict} {name}: {} [{:.1}s]",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
