//! Committed high-precision reference values and their evaluation.
//!
//! Fixture files live in `fixtures/<suite>.json` at the workspace root, or
//! in the directory named by `HYPERFNS_FIXTURES`. Numbers are stored as
//! decimal strings; a record's operation is the part of its `case_id`
//! before the first dot.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Deserialize;
use serde_json::Value;

use crate::eisenstein::{eisenstein_closed, eisenstein_regularized, eisenstein_series, c_function, EtaVector, Eisenstein};
use crate::error::{Error, Result};
use crate::fourier::{fourier_transform, Profile, QuadratureConfig, RadialProfile};
use crate::hcseries::{b_coeffs, cs_coeffs, gamma_coeffs, gamma_tilde, phi_series};
use crate::space::{KType, Orbit, Space};
use crate::specfun::{hyp2f1_nonpos, log_gamma};
use crate::value::{rel_diff, C64};

pub const ENV_VAR: &str = "HYPERFNS_FIXTURES";
pub const SUITES: [&str; 4] = ["specfun", "hcseries", "eisenstein", "fourier"];

/// Tolerance for values obtained as limits at poles.
pub const POLE_LIMIT_TOL: f64 = 1e-6;
pub const DEFAULT_TOL: f64 = 1e-10;

pub fn fixture_dir() -> PathBuf {
    match std::env::var_os(ENV_VAR) {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")),
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct DecimalComplex {
    pub re: String,
    pub im: String,
}

impl DecimalComplex {
    pub fn to_c64(&self) -> Result<C64> {
        Ok(C64::new(parse(&self.re)?, parse(&self.im)?))
    }
}

fn parse(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Fixture(format!("not a decimal: {s:?}")))
}

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureRecord {
    pub case_id: String,
    pub inputs: BTreeMap<String, Value>,
    pub expected: DecimalComplex,
    pub digits: u32,
    pub formula_ref: String,
}

#[derive(Debug, Clone, Deserialize)]
struct FixtureFile {
    records: Vec<FixtureRecord>,
}

pub fn load_suite(name: &str) -> Result<Vec<FixtureRecord>> {
    let path = fixture_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
    let file: FixtureFile =
        serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
    Ok(file.records)
}

impl FixtureRecord {
    pub fn op(&self) -> &str {
        self.case_id.split('.').next().unwrap_or("")
    }

    fn input(&self, name: &str) -> Result<&Value> {
        self.inputs.get(name).ok_or_else(|| Error::Fixture(format!("{}: missing input {name}", self.case_id)))
    }

    pub fn real(&self, name: &str) -> Result<f64> {
        match self.input(name)? {
            Value::String(s) => parse(s),
            other => Err(Error::Fixture(format!("{}: {name} is not a scalar: {other}", self.case_id))),
        }
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        let x = self.real(name)?;
        if x.fract() != 0.0 {
            return Err(Error::Fixture(format!("{}: {name} = {x} is not an integer", self.case_id)));
        }
        Ok(x as i64)
    }

    pub fn complex(&self, name: &str) -> Result<C64> {
        decode_complex(self.input(name)?).ok_or_else(|| Error::Fixture(format!("{}: {name} is not complex", self.case_id)))
    }

    pub fn complex_list(&self, name: &str) -> Result<Vec<C64>> {
        match self.input(name)? {
            Value::Array(items) => items
                .iter()
                .map(|v| decode_complex(v).ok_or_else(|| Error::Fixture(format!("{}: bad entry in {name}", self.case_id))))
                .collect(),
            _ => Err(Error::Fixture(format!("{}: {name} is not a list", self.case_id))),
        }
    }

    pub fn text(&self, name: &str) -> Result<&str> {
        self.input(name)?.as_str().ok_or_else(|| Error::Fixture(format!("{}: {name} is not text", self.case_id)))
    }

    pub fn expected(&self) -> Result<C64> {
        self.expected.to_c64()
    }

    pub fn tolerance(&self) -> f64 {
        if self.case_id.contains("at_pole") {
            POLE_LIMIT_TOL
        } else {
            DEFAULT_TOL
        }
    }

    fn space(&self) -> Result<Space> {
        Space::new(self.int("p")? as u32, self.int("q")? as u32)
    }

    fn ktype(&self) -> Result<Option<KType>> {
        if !self.inputs.contains_key("k") {
            return Ok(None);
        }
        let (k, l) = (self.int("k")? as i32, self.int("l")? as i32);
        Ok(if k == 0 && l == 0 { None } else { Some(KType::new(k, l)) })
    }

    fn eta(&self, space: &Space) -> Result<(EtaVector, Orbit)> {
        let eta = EtaVector::new(space, self.complex_list("eta")?)?;
        let w = match self.text("w")? {
            "+" => Orbit::Plus,
            "-" => Orbit::Minus,
            other => return Err(Error::Fixture(format!("{}: bad orbit {other}", self.case_id))),
        };
        Ok((eta, w))
    }
}

fn decode_complex(v: &Value) -> Option<C64> {
    match v {
        Value::Object(m) => {
            let re = parse(m.get("re")?.as_str()?).ok()?;
            let im = parse(m.get("im")?.as_str()?).ok()?;
            Some(C64::new(re, im))
        }
        Value::String(s) => parse(s).ok().map(|x| C64::new(x, 0.0)),
        _ => None,
    }
}

/// Absolute quadrature target used to reproduce transform fixtures.
pub const FOURIER_TARGET: f64 = 1e-14;

/// Space, K-type, profile, λ and η of a `fourier_transform` record.
pub fn fourier_inputs(rec: &FixtureRecord) -> Result<(Space, Option<KType>, RadialProfile, C64, EtaVector)> {
    let s = rec.space()?;
    let (a, b) = (rec.real("a")?, rec.real("b")?);
    let prof = match rec.text("profile")? {
        "smooth_bump" => Profile::smooth_bump(a, b)?,
        "polynomial_bump" => Profile::polynomial_bump(a, b)?,
        other => return Err(Error::Fixture(format!("{}: unknown profile {other}", rec.case_id))),
    };
    let eta = EtaVector::new(&s, rec.complex_list("eta")?)?;
    Ok((s, rec.ktype()?, RadialProfile::uniform(&s, prof), rec.complex("lambda")?, eta))
}

/// Recompute a fixture value with this crate.
pub fn evaluate(rec: &FixtureRecord) -> Result<C64> {
    let op = rec.op();
    let value = match op {
        "log_gamma" => log_gamma(rec.complex("z")?)?,
        "hyp2f1" => hyp2f1_nonpos(rec.complex("a")?, rec.complex("b")?, rec.complex("c")?, rec.real("z")?)?.value,
        "c_function" => c_function(&rec.space()?, rec.ktype()?, rec.complex("lambda")?).value,
        "b_coeff" => {
            let m = rec.int("m")? as usize;
            C64::new(b_coeffs(&rec.space()?, m)[m], 0.0)
        }
        "gamma_tilde" | "gamma_coeff" => {
            let m = rec.int("m")? as usize;
            let (s, kt, lam) = (rec.space()?, rec.ktype()?, rec.complex("lambda")?);
            let table = if op == "gamma_tilde" { gamma_tilde(&s, kt, lam, m) } else { gamma_coeffs(&s, kt, lam, m) };
            table.values[m]
        }
        "cosh_expansion" => {
            let (t, n) = (rec.real("t")?, rec.int("n_max")? as usize);
            let (c, _) = cs_coeffs(n);
            C64::new(c.iter().enumerate().map(|(m, cm)| cm * (-(m as f64) * t).exp()).sum(), 0.0)
        }
        "phi_series" => phi_series(&rec.space()?, rec.ktype()?, rec.complex("lambda")?, rec.real("t")?, 1e-16)?.value,
        "eisenstein" => {
            let s = rec.space()?;
            let (eta, w) = rec.eta(&s)?;
            Eisenstein::new(s, rec.ktype()?, rec.complex("lambda")?).eval(rec.real("t")?)?.scale(eta.get(w)).value
        }
        "eisenstein_closed" | "eisenstein_series" => {
            let s = rec.space()?;
            let (eta, w) = rec.eta(&s)?;
            let f = if op == "eisenstein_closed" { eisenstein_closed } else { eisenstein_series };
            f(&s, rec.ktype()?, rec.complex("lambda")?, &eta, w, rec.real("t")?)?.value
        }
        "eisenstein_regularized" => {
            let s = rec.space()?;
            let (eta, w) = rec.eta(&s)?;
            eisenstein_regularized(&s, rec.ktype()?, rec.real("R")?, rec.complex("lambda0")?, &eta, w, rec.real("t")?)?
                .value
        }
        "fourier_transform" => {
            let (s, kt, f, lam, eta) = fourier_inputs(rec)?;
            fourier_transform(&s, kt, &f, lam, &eta, &QuadratureConfig::default().with_target(FOURIER_TARGET))?.value
        }
        other => return Err(Error::Fixture(format!("{}: unknown operation {other}", rec.case_id))),
    };
    Ok(value)
}

/// Outcome of reproducing one fixture.
#[derive(Debug, Clone)]
pub struct Conformance {
    pub case_id: String,
    pub expected: C64,
    pub got: Option<C64>,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub error: Option<String>,
}

/// Exact zeros are matched absolutely, everything else relatively.
pub fn check(rec: &FixtureRecord) -> Conformance {
    let tol = rec.tolerance();
    let expected = rec.expected();
    let got = evaluate(rec);
    let (expected, got, error) = match (expected, got) {
        (Ok(e), Ok(g)) => (e, Some(g), None),
        (Ok(e), Err(err)) | (Err(err), Ok(e)) => (e, None, Some(err.to_string())),
        (Err(err), Err(_)) => (C64::new(f64::NAN, 0.0), None, Some(err.to_string())),
    };
    let rel_err = match got {
        Some(g) if expected == C64::new(0.0, 0.0) => g.norm(),
        Some(g) => rel_diff(g, expected),
        None => f64::INFINITY,
    };
    let pass = error.is_none() && rel_err <= if expected == C64::new(0.0, 0.0) { 1e-14 } else { tol };
    Conformance { case_id: rec.case_id.clone(), expected, got, rel_err, tol, pass, error }
}
