//! Invariant suites shared by `hyperfns verify` and the test suites.
//!
//! Each check evaluates one property over a grid or a seeded sample and
//! reports the worst observed metric against its tolerance.

mod eisenstein;
mod fourier;
mod hcseries;
mod specfun;

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::eisenstein::{pole_catalog, CatalogSet};
use crate::error::Error;
use crate::fixtures;
use crate::space::{KType, Space};
use crate::value::C64;

pub use self::eisenstein::{
    asymptotic_limit, c_product, catalog_scan, classify_empirics, conjugation, dual_route, functional_equation,
    growth_envelope, jacobi_identity, GrowthGrid, GROWTH_CHECK_GRID, GROWTH_FIT_GRID, ode_residual_eisenstein, unitary_axis, GROWTH_M,
};
pub use self::fourier::{ktype_consistency, measure_consistency, quadrature_convergence, transform_symmetry};
pub use self::hcseries::{gamma_pole_containment, gamma_regularized_bound, k_invariant_reduction, ode_residual_phi, GAMMA_REG_M};
pub use self::specfun::{overlap_pfaff_inversion, overlap_series_pfaff};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Outcome of one invariant over its sample.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub pass: bool,
    /// Largest observed metric (relative error, residual, ...).
    pub worst: f64,
    pub tol: f64,
    pub samples: usize,
    /// Samples whose evaluation failed outright.
    pub errors: usize,
    pub detail: String,
}

impl Check {
    /// Whether the check would pass under a different tolerance.
    pub fn passes_at(&self, tol: f64) -> bool {
        self.errors == 0 && self.samples > 0 && self.worst <= tol
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}/{}: worst {:.3e} (tol {:.1e}, n = {})",
            if self.pass { "PASS" } else { "FAIL" },
            self.suite,
            self.name,
            self.worst,
            self.tol,
            self.samples
        )?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

/// Running maximum of a metric, with the location of the worst sample and
/// any evaluation errors met along the way.
#[derive(Debug, Default)]
pub struct Tally {
    worst: f64,
    at: String,
    samples: usize,
    errors: Vec<String>,
    n_errors: usize,
}

impl Tally {
    pub fn new() -> Self {
        Tally::default()
    }

    pub fn record(&mut self, metric: f64, at: impl FnOnce() -> String) {
        self.samples += 1;
        // NaN counts as a failure.
        if !(metric <= self.worst) {
            self.worst = if metric.is_nan() { f64::INFINITY } else { metric };
            self.at = at();
        }
    }

    pub fn error(&mut self, err: Error, at: impl FnOnce() -> String) {
        self.samples += 1;
        self.n_errors += 1;
        if self.errors.len() < 3 {
            self.errors.push(format!("{} ({err})", at()));
        } else if self.errors.len() == 3 {
            self.errors.push("...".into());
        }
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn finish(self, name: &str, tol: f64) -> Check {
        let pass = self.n_errors == 0 && self.samples > 0 && self.worst <= tol;
        let mut detail = if self.at.is_empty() { String::new() } else { format!("at {}", self.at) };
        if self.samples == 0 {
            detail = "no samples".into();
        }
        if !self.errors.is_empty() {
            detail = format!("{detail} errors: {}", self.errors.join("; "));
        }
        Check {
            suite: String::new(),
            name: name.into(),
            pass,
            worst: self.worst,
            tol,
            samples: self.samples,
            errors: self.n_errors,
            detail,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Specfun,
    Hcseries,
    Routes,
    Identities,
    Asymptotics,
    Jacobi,
    Classify,
    Catalog,
    Fourier,
    Fixtures,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Specfun,
        Suite::Hcseries,
        Suite::Routes,
        Suite::Identities,
        Suite::Asymptotics,
        Suite::Jacobi,
        Suite::Classify,
        Suite::Catalog,
        Suite::Fourier,
        Suite::Fixtures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Hcseries => "hcseries",
            Suite::Routes => "routes",
            Suite::Identities => "identities",
            Suite::Asymptotics => "asymptotics",
            Suite::Jacobi => "jacobi",
            Suite::Classify => "classify",
            Suite::Catalog => "catalog",
            Suite::Fourier => "fourier",
            Suite::Fixtures => "fixtures",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|x| x.name() == s)
    }
}

/// Restrictions applied to every suite. Without a space each suite uses
/// its own default list.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub space: Option<Space>,
    pub ktype: Option<KType>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { space: None, ktype: None, seed: DEFAULT_SEED }
    }
}

impl VerifyOptions {
    fn spaces(&self, default: &[(u32, u32)]) -> Vec<Space> {
        match self.space {
            Some(s) => vec![s],
            None => default.iter().map(|&(p, q)| Space::new(p, q).expect("default spaces are valid")).collect(),
        }
    }

    /// The K-types to exercise on a space: the requested one if valid there,
    /// else the defaults that are valid.
    fn ktypes(&self, space: &Space, default: &[(i32, i32)]) -> Vec<KType> {
        let cands: Vec<KType> = match self.ktype {
            Some(k) => vec![k],
            None => default.iter().map(|&(k, l)| KType::new(k, l)).collect(),
        };
        cands.into_iter().filter(|k| k.validate(space).is_ok()).collect()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const GRID_VALUES: [f64; 5] = [-2.5, -1.25, 0.0, 1.25, 2.5];
pub const GRID_T: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
/// Radius of the excluded annuli around catalog points.
pub const GRID_EXCLUSION: f64 = 0.05;

/// Distance from λ to the nearest point where E°, c or the series
/// coefficients of ±λ are singular or vanish.
pub fn singular_distance(space: &Space, ktype: Option<KType>, lambda: C64) -> f64 {
    let cat = pole_catalog(space, ktype);
    let mut d = [CatalogSet::EPoles, CatalogSet::CPoles, CatalogSet::CZeros, CatalogSet::EZeros]
        .iter()
        .map(|&w| cat.distance(w, lambda))
        .fold(f64::INFINITY, f64::min);
    let half = (2.0 * lambda.re).round() / 2.0;
    d = d.min((lambda - half).norm());
    d
}

/// The 5×5 grid {−2.5, −1.25, 0, 1.25, 2.5}² less the annuli around
/// singular points.
pub fn lambda_grid(space: &Space, ktype: Option<KType>) -> Vec<C64> {
    let mut out = Vec::new();
    for &re in &GRID_VALUES {
        for &im in &GRID_VALUES {
            let lam = C64::new(re, im);
            if singular_distance(space, ktype, lam) >= GRID_EXCLUSION {
                out.push(lam);
            }
        }
    }
    out
}

fn fixture_checks() -> Vec<Check> {
    fixtures::SUITES
        .iter()
        .map(|&suite| {
            let mut tally = Tally::new();
            match fixtures::load_suite(suite) {
                Ok(records) => {
                    for rec in &records {
                        let c = fixtures::check(rec);
                        // Records carry different tolerances; the metric is the error in
                        // units of the record's own tolerance.
                        match c.error {
                            Some(e) => tally.error(Error::Fixture(e), || c.case_id.clone()),
                            None => {
                                let limit = if c.expected == C64::new(0.0, 0.0) { 1e-14 } else { c.tol };
                                tally.record(c.rel_err / limit, || c.case_id.clone());
                            }
                        }
                    }
                }
                Err(e) => tally.error(e, || suite.to_string()),
            }
            tally.finish(suite, 1.0)
        })
        .collect()
}

/// Run one suite.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<Check> {
    const ROUTE_SPACES: [(u32, u32); 4] = [(2, 1), (3, 2), (5, 3), (7, 2)];
    const IDENTITY_SPACES: [(u32, u32); 6] = [(2, 1), (4, 1), (3, 2), (5, 3), (7, 2), (3, 3)];
    const KTYPES: [(i32, i32); 3] = [(1, 0), (0, 2), (2, 1)];
    let mut rng = rng(opts.seed);
    let mut checks = match suite {
        Suite::Specfun => {
            let spaces = opts.spaces(&ROUTE_SPACES);
            vec![overlap_series_pfaff(&spaces), overlap_pfaff_inversion(&spaces)]
        }
        Suite::Hcseries => {
            let spaces = opts.spaces(&ROUTE_SPACES);
            let with_k: Vec<(Space, KType)> =
                spaces.iter().flat_map(|s| opts.ktypes(s, &KTYPES).into_iter().map(move |k| (*s, k))).collect();
            vec![
                ode_residual_phi(&spaces, &with_k),
                gamma_pole_containment(&spaces, &[10, 20, 40]),
                gamma_regularized_bound(&spaces, 200),
                k_invariant_reduction(&spaces),
            ]
        }
        Suite::Routes => {
            let spaces = opts.spaces(&ROUTE_SPACES);
            let with_k: Vec<(Space, KType)> =
                spaces.iter().flat_map(|s| opts.ktypes(s, &KTYPES).into_iter().map(move |k| (*s, k))).collect();
            vec![dual_route(&spaces, None), ode_residual_eisenstein(&spaces, &with_k)]
        }
        Suite::Identities => {
            let spaces = opts.spaces(&IDENTITY_SPACES);
            vec![
                functional_equation(&spaces, opts.ktype, 200, &mut rng),
                conjugation(&spaces, opts.ktype, 200, &mut rng),
                c_product(&spaces, opts.ktype, 200, &mut rng),
                unitary_axis(&spaces, opts.ktype),
            ]
        }
        Suite::Asymptotics => {
            let spaces = opts.spaces(&IDENTITY_SPACES);
            vec![asymptotic_limit(&spaces, opts.ktype), growth_envelope(&spaces, opts.ktype, 3.0, &GROWTH_CHECK_GRID)]
        }
        Suite::Jacobi => {
            let spaces: Vec<Space> = opts.spaces(&[(2, 3), (3, 3)]).into_iter().filter(|s| s.p <= s.q).collect();
            vec![jacobi_identity(&spaces)]
        }
        Suite::Classify => {
            let spaces = opts.spaces(&[(3, 2), (7, 2)]);
            classify_empirics(&spaces, opts.ktype, 5.0, 20, &mut rng)
        }
        Suite::Catalog => match opts.space {
            Some(s) => vec![catalog_scan(&[(s, opts.ktype)])],
            None => {
                let sp = |p, q| Space::new(p, q).expect("valid");
                vec![catalog_scan(&[
                    (sp(3, 2), None),
                    (sp(5, 3), None),
                    (sp(7, 3), None),
                    (sp(3, 1), Some(KType::new(0, 4))),
                ])]
            }
        },
        Suite::Fourier => {
            let spaces = opts.spaces(&[(3, 2), (4, 1), (5, 3)]);
            vec![
                transform_symmetry(&spaces, opts.ktype),
                quadrature_convergence(),
                ktype_consistency(&spaces),
                measure_consistency(&spaces),
            ]
        }
        Suite::Fixtures => fixture_checks(),
    };
    for c in &mut checks {
        c.suite = suite.name().into();
    }
    checks
}
