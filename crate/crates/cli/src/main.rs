//! `bogo`: JSON in, JSON out front end for the `bogoliubov` library.
//!
//! Exit codes: 0 success, 1 validation or assertion failure, 2 mathematical
//! or resource error, 3 unreadable or malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bogoliubov::generate::{random_bounded_boson_form, random_fermion_form};
use bogoliubov::io::{
    read_fixture, read_form, to_json, BosonModeJson, FermionModeJson, FormFile, SpectrumJson,
};
use bogoliubov::morse::{lemma_suite, poincare_hopf_check};
use bogoliubov::oracle::verify;
use bogoliubov::spectral::{
    boson_spectrum, diagonalize_boson, diagonalize_fermion, fermion_spectrum, SpectralOptions,
};
use bogoliubov::{to_standard, validate, Error, QuadraticForm, Statistics, Tolerances};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Residual ceiling for `bogo lemmas`.
const LEMMA_TOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(
    name = "bogo",
    version,
    about = "Quadratic forms in creation and annihilation operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the symmetry constraints of a form file.
    Validate {
        form: PathBuf,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Normal modes of a form.
    Diagonalize {
        form: PathBuf,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Exact energies: all 2^n for fermions, the lowest --count for bosons.
    Spectrum {
        form: PathBuf,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[command(flatten)]
        tol: TolArg,
    },
    /// Compare closed-form energies with a brute-force Fock-space computation.
    Verify {
        form: PathBuf,
        /// Boson quanta per mode; stability is checked against twice this.
        #[arg(long, default_value_t = 60, value_parser = positive_usize)]
        cutoff: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Comparison tolerance [default: 1e-9 for fermions, 1e-6 for bosons].
        #[arg(long, value_parser = positive_f64)]
        tol: Option<f64>,
    },
    /// Signs, zero-mode parities and the Euler characteristic of a fixture.
    Morse { fixture: PathBuf },
    /// Residuals of the wedge/contraction identities on random inputs.
    Lemmas {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// A random valid form file (fermionic, or bounded-below bosonic).
    Generate {
        #[arg(long, value_enum)]
        statistics: StatArg,
        #[arg(long, value_parser = positive_usize)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct TolArg {
    /// Symmetry and canonicality tolerance.
    #[arg(long = "tol", value_parser = positive_f64)]
    value: Option<f64>,
}

impl TolArg {
    fn tolerances(&self) -> Tolerances {
        self.value
            .map_or_else(Tolerances::default, Tolerances::uniform)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StatArg {
    Boson,
    Fermion,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(x) => Ok(x),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Io { path: PathBuf, message: String },
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

#[derive(Serialize)]
struct ErrorPayload {
    error: &'static str,
    message: String,
}

impl Failure {
    fn payload(&self) -> ErrorPayload {
        match self {
            Failure::Io { path, message } => ErrorPayload {
                error: "Io",
                message: format!("{}: {message}", path.display()),
            },
            Failure::Lib(e) => ErrorPayload {
                error: e.name(),
                message: e.to_string(),
            },
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Io { .. } | Failure::Lib(Error::Parse(_)) => 3,
            Failure::Lib(Error::Validation(_) | Error::Precondition(_)) => 1,
            Failure::Lib(_) => 2,
        }
    }
}

/// A finished command: the JSON document and whether its checks held.
struct Outcome {
    json: String,
    ok: bool,
}

impl Outcome {
    fn ok<T: Serialize>(value: &T) -> Self {
        Outcome::check(value, true)
    }

    fn check<T: Serialize>(value: &T, ok: bool) -> Self {
        Outcome {
            json: to_json(value),
            ok,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn load_form(path: &Path) -> Result<QuadraticForm, Failure> {
    Ok(read_form(&read(path)?)?)
}

#[derive(Serialize)]
struct ValidateJson {
    valid: bool,
    violations: Vec<bogoliubov::forms::Violation>,
}

#[derive(Serialize)]
#[serde(tag = "statistics", rename_all = "lowercase")]
enum ModesJson {
    Boson(BosonModeJson),
    Fermion(FermionModeJson),
}

fn spectrum_of(
    form: &QuadraticForm,
    count: usize,
    tol: &Tolerances,
) -> Result<SpectrumJson, Failure> {
    let std = to_standard(form, tol)?;
    let result = match form.statistics {
        Statistics::Boson => boson_spectrum(
            &diagonalize_boson(&std, &SpectralOptions::default())?,
            count,
        )?,
        Statistics::Fermion => fermion_spectrum(&diagonalize_fermion(&std)?)?,
    };
    Ok(SpectrumJson::from(&result))
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate { form, tol } => {
            let report = validate(&load_form(form)?, &tol.tolerances());
            let valid = report.is_valid();
            Ok(Outcome::check(
                &ValidateJson {
                    valid,
                    violations: report.violations,
                },
                valid,
            ))
        }
        Command::Diagonalize { form, tol } => {
            let form = load_form(form)?;
            let std = to_standard(&form, &tol.tolerances())?;
            let modes = match form.statistics {
                Statistics::Boson => ModesJson::Boson(BosonModeJson::from(&diagonalize_boson(
                    &std,
                    &SpectralOptions::default(),
                )?)),
                Statistics::Fermion => {
                    ModesJson::Fermion(FermionModeJson::from(&diagonalize_fermion(&std)?))
                }
            };
            Ok(Outcome::ok(&modes))
        }
        Command::Spectrum { form, count, tol } => {
            let form = load_form(form)?;
            Ok(Outcome::ok(&spectrum_of(&form, *count, &tol.tolerances())?))
        }
        Command::Verify {
            form,
            cutoff,
            count,
            tol,
        } => {
            let form = load_form(form)?;
            let tol = tol.unwrap_or(match form.statistics {
                Statistics::Fermion => 1e-9,
                Statistics::Boson => 1e-6,
            });
            let report = verify(&form, *cutoff, *count, tol)?;
            if let Some(w) = &report.warning {
                eprintln!("warning: {w}");
            }
            Ok(Outcome::check(&report, report.passed(tol)))
        }
        Command::Morse { fixture } => {
            let report = poincare_hopf_check(&read_fixture(&read(fixture)?)?)?;
            Ok(Outcome::check(&report, report.chi_matches))
        }
        Command::Lemmas { n, seed, trials } => {
            let report = lemma_suite(*n, *seed, *trials)?;
            Ok(Outcome::check(&report, report.max_residual <= LEMMA_TOL))
        }
        Command::Generate {
            statistics,
            n,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let form = match statistics {
                StatArg::Boson => random_bounded_boson_form(&mut rng, *n),
                StatArg::Fermion => random_fermion_form(&mut rng, *n),
            };
            Ok(Outcome::ok(&FormFile::from(&form)))
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Malformed arguments count as a validation failure.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let out = cli.out.as_deref();
    let result = run(&cli.command).and_then(|o| emit(&o.json, out).map(|()| o.ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            let payload = failure.payload();
            eprintln!("error: {}", payload.message);
            let code = failure.code();
            // The payload goes wherever results go; if that fails, stdout.
            if emit(&to_json(&payload), out).is_err() {
                print!("{}", to_json(&payload));
            }
            ExitCode::from(code)
        }
    }
}
