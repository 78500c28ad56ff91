//! JSON file formats. Matrices are arrays of rows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{BogoliubovTransform, QuadraticForm, Statistics};
use crate::linalg::{from_rows, to_rows, Matrix};
use crate::morse::{SingularPoint, VectorFieldFixture};
use crate::spectral::{BosonModeData, FermionModeData, ModeClass, Sector, SpectrumResult};

fn matrix(rows: Vec<Vec<f64>>, n: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Validation(format!("{what} must be {n}x{n}")));
    }
    if n == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    Ok(from_rows(&rows))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub statistics: Statistics,
    pub n: usize,
    #[serde(rename = "U")]
    pub u: Vec<Vec<f64>>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<f64>>,
    #[serde(rename = "const", default)]
    pub constant: f64,
}

impl FormFile {
    pub fn into_form(self) -> Result<QuadraticForm> {
        let u = matrix(self.u, self.n, "U")?;
        let v = matrix(self.v, self.n, "V")?;
        Ok(QuadraticForm::new(self.statistics, u, v, self.constant))
    }
}

impl From<&QuadraticForm> for FormFile {
    fn from(f: &QuadraticForm) -> Self {
        FormFile {
            statistics: f.statistics,
            n: f.n(),
            u: to_rows(&f.u),
            v: to_rows(&f.v),
            constant: f.constant,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformFile {
    pub statistics: Statistics,
    pub n: usize,
    #[serde(rename = "P")]
    pub p: Vec<Vec<f64>>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<f64>>,
}

impl TransformFile {
    pub fn into_transform(self) -> Result<BogoliubovTransform> {
        let p = matrix(self.p, self.n, "P")?;
        let q = matrix(self.q, self.n, "Q")?;
        Ok(BogoliubovTransform::new(self.statistics, p, q))
    }
}

impl From<&BogoliubovTransform> for TransformFile {
    fn from(b: &BogoliubovTransform) -> Self {
        TransformFile {
            statistics: b.statistics,
            n: b.n(),
            p: to_rows(&b.p),
            q: to_rows(&b.q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeJson {
    pub t: f64,
    pub r: f64,
    pub class: ModeClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BosonModeJson {
    pub modes: Vec<ModeJson>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<f64>>,
    pub k0: f64,
}

impl From<&BosonModeData> for BosonModeJson {
    fn from(d: &BosonModeData) -> Self {
        BosonModeJson {
            modes: d
                .modes
                .iter()
                .map(|m| ModeJson {
                    t: m.t,
                    r: m.r,
                    class: m.class,
                })
                .collect(),
            s: to_rows(&d.s),
            k0: d.k0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermionModeJson {
    pub lambdas: Vec<f64>,
    #[serde(rename = "O_plus")]
    pub o_plus: Vec<Vec<f64>>,
    #[serde(rename = "O_minus")]
    pub o_minus: Vec<Vec<f64>>,
    pub k0: f64,
    pub sign_ambiguous: bool,
}

impl From<&FermionModeData> for FermionModeJson {
    fn from(d: &FermionModeData) -> Self {
        FermionModeJson {
            lambdas: d.lambdas.clone(),
            o_plus: to_rows(&d.o_plus),
            o_minus: to_rows(&d.o_minus),
            k0: d.k0,
            sign_ambiguous: d.sign_ambiguous,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub energy: f64,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sector: Option<Sector>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub entries: Vec<EntryJson>,
    pub complete: bool,
    pub bounded_below: bool,
}

impl From<&SpectrumResult> for SpectrumJson {
    fn from(s: &SpectrumResult) -> Self {
        SpectrumJson {
            entries: s
                .entries
                .iter()
                .map(|e| EntryJson {
                    energy: e.energy,
                    label: e.label.to_string(),
                    sector: e.sector,
                })
                .collect(),
            complete: s.complete,
            bounded_below: s.bounded_below,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub label: String,
    pub jacobian: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub n: usize,
    pub chi: i64,
    pub points: Vec<PointJson>,
}

impl FixtureFile {
    pub fn into_fixture(self) -> Result<VectorFieldFixture> {
        let n = self.n;
        let points = self
            .points
            .into_iter()
            .map(|p| {
                let what = format!("jacobian of {}", p.label);
                Ok(SingularPoint {
                    jacobian: matrix(p.jacobian, n, &what)?,
                    label: p.label,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let fixture = VectorFieldFixture {
            n,
            chi: self.chi,
            points,
        };
        fixture.check()?;
        Ok(fixture)
    }
}

impl From<&VectorFieldFixture> for FixtureFile {
    fn from(f: &VectorFieldFixture) -> Self {
        FixtureFile {
            n: f.n,
            chi: f.chi,
            points: f
                .points
                .iter()
                .map(|p| PointJson {
                    label: p.label.clone(),
                    jacobian: to_rows(&p.jacobian),
                })
                .collect(),
        }
    }
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_form(text: &str) -> Result<QuadraticForm> {
    parse_json::<FormFile>(text)?.into_form()
}

pub fn read_transform(text: &str) -> Result<BogoliubovTransform> {
    parse_json::<TransformFile>(text)?.into_transform()
}

pub fn read_fixture(text: &str) -> Result<VectorFieldFixture> {
    parse_json::<FixtureFile>(text)?.into_fixture()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
