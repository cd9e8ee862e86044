use std::io::{self, BufWriter, Write};

use rayon::prelude::*;
use serde_json::{json, Value};

use hyperfns::eisenstein::{
    c_function, classify_bounded, p_r_poly, pole_catalog, Boundedness, CatalogSet, Eisenstein, EtaVector, Regularized,
};
use hyperfns::fourier::{
    fourier_transform, fourier_transform_regularized, hy_ratio, paley_wiener_check, plancherel_check, rl_decay_profile,
    Profile, QuadratureConfig, RadialProfile,
};
use hyperfns::hcseries::{gamma_coeffs, gamma_tilde};
use hyperfns::verify::{run_suite, Suite, VerifyOptions};
use hyperfns::{EvalResult, KType, Orbit, Space, Status, C64};

use crate::output::{Cell, Csv};
use crate::parse::ComplexList;
use crate::{Cli, Command, Failure, Harness, Kind, Method, ProfileKind};

type Out = BufWriter<io::StdoutLock<'static>>;

fn stdout() -> Out {
    BufWriter::new(io::stdout().lock())
}

fn status_str(s: Status) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn c_json(z: C64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn print_json(out: &mut Out, v: &Value) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::Domain(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

/// Ordered parallel map on a pool of `jobs` threads; `init` builds the
/// per-worker state (evaluators with coefficient caches).
fn par_map<T, R, S, I, F>(jobs: usize, items: &[T], init: I, f: F) -> Result<Vec<R>, Failure>
where
    T: Sync,
    R: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> hyperfns::Result<R> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Domain(e.to_string()))?;
    pool.install(|| items.par_iter().map_init(&init, |state, item| f(state, item)).collect::<hyperfns::Result<Vec<R>>>())
        .map_err(Failure::from)
}

fn eta_vector(space: &Space, eta: &Option<ComplexList>) -> Result<EtaVector, Failure> {
    match eta {
        Some(v) => EtaVector::new(space, v.0.clone()).map_err(|e| Failure::Usage(e.to_string())),
        None => Ok(EtaVector::ones(space)),
    }
}

fn orbit(space: &Space, s: &str) -> Result<Orbit, Failure> {
    let w = match s {
        "+" => Orbit::Plus,
        "-" => Orbit::Minus,
        _ => return Err(Failure::Usage(format!("orbit must be + or -, got {s:?}"))),
    };
    if !space.orbits().contains(&w) {
        return Err(Failure::Usage(format!("{space} has no orbit {s}")));
    }
    Ok(w)
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let jobs = cli.jobs;
    let json = cli.json;
    match cli.command {
        Command::Eval { space, lambda, t, method, eta, orbit: w, big_r } => {
            let (space, ktype) = space.resolve().map_err(Failure::Usage)?;
            let eta = eta_vector(&space, &eta)?;
            let eta_w = eta.get(orbit(&space, &w)?);
            eval(jobs, json, space, ktype, lambda, &t.0, method, eta_w, big_r)
        }
        Command::Coeffs { space, lambda, n_max, kind } => {
            let (space, ktype) = space.resolve().map_err(Failure::Usage)?;
            let table = match kind {
                Kind::Gamma => gamma_coeffs(&space, ktype, lambda, n_max),
                Kind::GammaTilde => gamma_tilde(&space, ktype, lambda, n_max),
            };
            let mut out = stdout();
            if json {
                return print_json(&mut out, &table.to_json());
            }
            let mut csv = Csv::new(&mut out, &["m", "value_re", "value_im", "regular"])?;
            for (m, (v, r)) in table.values.iter().zip(&table.regular).enumerate() {
                csv.row(&[Cell::I(m as i64), Cell::F(v.re), Cell::F(v.im), Cell::S(r.to_string())])?;
            }
            Ok(())
        }
        Command::Cfun { space, lambdas } => {
            let (space, ktype) = space.resolve().map_err(Failure::Usage)?;
            let pts = lambdas.points().map_err(Failure::Usage)?;
            let vals = par_map(jobs, &pts, || (), |_, l| Ok(c_function(&space, ktype, *l)))?;
            spectral_table(json, &pts, &vals)
        }
        Command::Poles { space, big_r, window } => {
            let (space, ktype) = space.resolve().map_err(Failure::Usage)?;
            poles(json, space, ktype, big_r, window)
        }
        Command::Classify { space, big_r, lambda } => {
            let (space, ktype) = space.resolve().map_err(Failure::Usage)?;
            let class = classify_bounded(&space, ktype, big_r, lambda)?;
            let caveat = (class == Boundedness::Undetermined).then_some(
                "lambda0 is in the exceptional integer set; boundedness is not decided at this point",
            );
            let mut out = stdout();
            if json {
                return print_json(&mut out, &json!({"class": class.as_str(), "caveat": caveat}));
            }
            writeln!(out, "{class}")?;
            if let Some(c) = caveat {
                eprintln!("note: {c}");
            }
            Ok(())
        }
        Command::Fourier {
            space,
            profile,
            a,
            b,
            lambdas,
            eta,
            big_r,
            harness,
            r,
            lambda0,
            xi_max,
            heights,
            n,
            target,
        } => {
            let (space, ktype) = space.resolve().map_err(Failure::Usage)?;
            let prof = match profile {
                ProfileKind::SmoothBump => Profile::smooth_bump(a, b),
                ProfileKind::PolynomialBump => Profile::polynomial_bump(a, b),
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            let f = RadialProfile::uniform(&space, prof);
            let eta = eta_vector(&space, &eta)?;
            if !(target > 0.0) {
                return Err(Failure::Usage("--target must be positive".into()));
            }
            let quad = QuadratureConfig::default().with_target(target);
            let mut out = stdout();
            match harness {
                None => {
                    let pts = lambdas.points().map_err(Failure::Usage)?;
                    let vals = par_map(jobs, &pts, || (), |_, l| match big_r {
                        Some(rr) => fourier_transform_regularized(&space, ktype, &f, rr, *l, &eta, &quad),
                        None => fourier_transform(&space, ktype, &f, *l, &eta, &quad),
                    })?;
                    drop(out);
                    spectral_table(json, &pts, &vals)
                }
                Some(Harness::Plancherel) => {
                    if ktype.is_some() {
                        return Err(Failure::Usage("the Plancherel harness is K-invariant".into()));
                    }
                    let rep = plancherel_check(&space, &f, &eta, xi_max, &quad)?;
                    print_json(&mut out, &rep.to_json())
                }
                Some(Harness::Hy) => {
                    let rr = big_r.unwrap_or(space.rho_f64().ceil() + 2.0);
                    let rep = hy_ratio(&space, ktype, &f, r, lambda0, rr, &eta, xi_max, &quad)?;
                    print_json(&mut out, &rep.to_json())
                }
                Some(Harness::Rl) => {
                    let heights = heights.0;
                    let vals = rl_decay_profile(&space, ktype, &f, r, lambda0, &heights, &eta, &quad)?;
                    if json {
                        let rows: Vec<Value> =
                            heights.iter().zip(&vals).map(|(x, v)| json!({"xi": x, "value": v})).collect();
                        return print_json(&mut out, &Value::Array(rows));
                    }
                    let mut csv = Csv::new(&mut out, &["xi", "abs_value"])?;
                    for (x, v) in heights.iter().zip(&vals) {
                        csv.row(&[Cell::F(*x), Cell::F(*v)])?;
                    }
                    Ok(())
                }
                Some(Harness::Pw) => {
                    if ktype.is_some() {
                        return Err(Failure::Usage("the Paley–Wiener harness is K-invariant".into()));
                    }
                    let rr = big_r.unwrap_or(3.0);
                    let grid = pw_grid(rr);
                    let fit = paley_wiener_check(&space, &f, n, rr, &grid, &eta, &quad)?;
                    print_json(&mut out, &serde_json::to_value(fit).map_err(|e| Failure::Domain(e.to_string()))?)
                }
            }
        }
        Command::Verify { suite, p, q, k, l, seed } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::parse(&suite).ok_or_else(|| {
                    let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                    Failure::Usage(format!("unknown suite {suite:?}; choose all or one of {}", names.join(", ")))
                })?]
            };
            let space = match (p, q) {
                (Some(p), Some(q)) => Some(Space::new(p, q).map_err(|e| Failure::Usage(e.to_string()))?),
                _ => None,
            };
            let ktype = match (k, l) {
                (Some(k), Some(l)) => {
                    let kt = KType::new(k, l);
                    if let Some(s) = &space {
                        kt.validate(s).map_err(|e| Failure::Usage(e.to_string()))?;
                    }
                    Some(kt)
                }
                _ => None,
            };
            let opts = VerifyOptions { space, ktype, seed };
            let mut out = stdout();
            let mut failed = Vec::new();
            let mut all = Vec::new();
            for s in suites {
                for c in run_suite(s, &opts) {
                    if !json {
                        writeln!(out, "{c}")?;
                        out.flush()?;
                    }
                    if !c.pass {
                        failed.push(format!("{}/{}", c.suite, c.name));
                    }
                    all.push(c);
                }
            }
            if json {
                print_json(&mut out, &serde_json::to_value(&all).map_err(|e| Failure::Domain(e.to_string()))?)?;
            }
            out.flush()?;
            if failed.is_empty() { Ok(()) } else { Err(Failure::Verify(failed)) }
        }
    }
}

/// λ grid in a*(R) for the Paley–Wiener fit: Re λ ∈ [−6, min(R, 6)], |Im λ| ≤ 6.
fn pw_grid(r: f64) -> Vec<C64> {
    let mut g = Vec::new();
    for i in 0..=24 {
        let re = -6.0 + 0.5 * i as f64;
        if re > r {
            break;
        }
        for j in -6..=6 {
            g.push(C64::new(re, j as f64 + 0.25));
        }
    }
    g
}

fn spectral_table(json: bool, pts: &[C64], vals: &[EvalResult]) -> Result<(), Failure> {
    let mut out = stdout();
    if json {
        let rows: Vec<Value> = pts
            .iter()
            .zip(vals)
            .map(|(l, v)| json!({"lambda": c_json(*l), "value": c_json(v.value), "abs_err": v.abs_err, "status": v.status}))
            .collect();
        return print_json(&mut out, &Value::Array(rows));
    }
    let mut csv = Csv::new(&mut out, &["lambda_re", "lambda_im", "value_re", "value_im", "abs_err", "status"])?;
    for (l, v) in pts.iter().zip(vals) {
        csv.row(&[
            Cell::F(l.re),
            Cell::F(l.im),
            Cell::F(v.value.re),
            Cell::F(v.value.im),
            Cell::F(v.abs_err),
            Cell::S(status_str(v.status)),
        ])?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn eval(
    jobs: usize,
    json: bool,
    space: Space,
    ktype: Option<KType>,
    lambda: C64,
    ts: &[f64],
    method: Method,
    eta_w: C64,
    big_r: Option<f64>,
) -> Result<(), Failure> {
    if let Some(rr) = big_r {
        if !matches!(method, Method::Auto) {
            return Err(Failure::Usage("--R evaluates the regularized integral; drop --method".into()));
        }
        Regularized::new(space, ktype, rr, lambda)?;
        let vals = par_map(
            jobs,
            ts,
            || Regularized::new(space, ktype, rr, lambda),
            |reg, t| Ok(reg.as_mut().map_err(|e| e.clone())?.eval(*t)?.scale(eta_w)),
        )?;
        return t_table(json, ts, &vals);
    }
    let route = move |e: &mut Eisenstein, t: f64, m: Method| -> hyperfns::Result<EvalResult> {
        Ok(match m {
            Method::Closed => e.closed(t)?,
            Method::Series => e.series(t)?,
            _ => e.eval(t)?,
        }
        .scale(eta_w))
    };
    if method != Method::Both {
        let vals = par_map(jobs, ts, || Eisenstein::new(space, ktype, lambda), |e, t| route(e, *t, method))?;
        return t_table(json, ts, &vals);
    }
    // The series route is undefined near t = 0 and at poles of its
    // coefficients; those rows keep the closed value and report NaN.
    let pairs = par_map(
        jobs,
        ts,
        || Eisenstein::new(space, ktype, lambda),
        |e, t| Ok((route(e, *t, Method::Closed)?, route(e, *t, Method::Series).ok())),
    )?;
    let mut out = stdout();
    let nan = EvalResult::new(C64::new(f64::NAN, f64::NAN), f64::NAN, Status::Regular);
    let disc = |a: &EvalResult, b: &Option<EvalResult>| match b {
        Some(b) => hyperfns::value::rel_diff(a.value, b.value),
        None => f64::NAN,
    };
    if json {
        let rows: Vec<Value> = ts
            .iter()
            .zip(&pairs)
            .map(|(t, (a, b))| {
                let d = disc(a, b);
                json!({
                    "t": t,
                    "closed": a.to_json(),
                    "series": b.map(|b| b.to_json()),
                    "discrepancy": if d.is_nan() { Value::Null } else { json!(d) },
                })
            })
            .collect();
        return print_json(&mut out, &Value::Array(rows));
    }
    let mut csv = Csv::new(
        &mut out,
        &["t", "closed_re", "closed_im", "closed_err", "series_re", "series_im", "series_err", "discrepancy"],
    )?;
    for (t, (a, b)) in ts.iter().zip(&pairs) {
        let s = b.unwrap_or(nan);
        csv.row(&[
            Cell::F(*t),
            Cell::F(a.value.re),
            Cell::F(a.value.im),
            Cell::F(a.abs_err),
            Cell::F(s.value.re),
            Cell::F(s.value.im),
            Cell::F(s.abs_err),
            Cell::F(disc(a, b)),
        ])?;
    }
    Ok(())
}

fn t_table(json: bool, ts: &[f64], vals: &[EvalResult]) -> Result<(), Failure> {
    let mut out = stdout();
    if json {
        let rows: Vec<Value> = ts
            .iter()
            .zip(vals)
            .map(|(t, v)| json!({"t": t, "value": c_json(v.value), "abs_err": v.abs_err, "status": v.status}))
            .collect();
        return print_json(&mut out, &Value::Array(rows));
    }
    let mut csv = Csv::new(&mut out, &["t", "value_re", "value_im", "abs_err", "status"])?;
    for (t, v) in ts.iter().zip(vals) {
        csv.row(&[Cell::F(*t), Cell::F(v.value.re), Cell::F(v.value.im), Cell::F(v.abs_err), Cell::S(status_str(v.status))])?;
    }
    Ok(())
}

fn poles(json: bool, space: Space, ktype: Option<KType>, big_r: Option<f64>, window: (f64, f64)) -> Result<(), Failure> {
    let cat = pole_catalog(&space, ktype);
    let pr = big_r.map(|r| p_r_poly(&space, ktype, r));
    let mut out = stdout();
    if json {
        let mut v = json!({"catalog": cat.to_json()});
        if let Some(p) = &pr {
            v["p_r_roots"] = json!(p.roots.iter().map(|h| h.to_f64()).collect::<Vec<_>>());
            v["p_r_degree"] = json!(p.degree());
        }
        return print_json(&mut out, &v);
    }
    let mut csv = Csv::new(&mut out, &["set", "lambda"])?;
    let sets = [
        (CatalogSet::EPoles, "e_poles"),
        (CatalogSet::CPoles, "c_poles"),
        (CatalogSet::CZeros, "c_zeros"),
        (CatalogSet::EZeros, "e_zeros"),
    ];
    for (set, name) in sets {
        let mut pts: Vec<f64> =
            cat.set(set).iter().flat_map(|p| p.window(window.0, window.1)).map(|h| h.to_f64()).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        for x in pts {
            csv.row(&[Cell::S(name.into()), Cell::F(x)])?;
        }
    }
    if let Some(p) = pr {
        for h in &p.roots {
            csv.row(&[Cell::S("p_r_roots".into()), Cell::F(h.to_f64())])?;
        }
    }
    Ok(())
}
