use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::value::{EvalResult, Status, C64};

/// Hard cap on the number of panels in one adaptive integration.
pub const MAX_PANELS: usize = 4096;

/// Gauss–Legendre nodes and weights on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// n-point rule, nodes by Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n > 0);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..(n + 1) / 2 {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// ∫_a^b f by this rule, with ∫|f| and the propagated sample error.
    pub fn apply<F: FnMut(f64) -> Result<(C64, f64)>>(&self, a: f64, b: f64, f: &mut F) -> Result<(C64, f64, f64)> {
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        let mut sum = C64::new(0.0, 0.0);
        let mut abs_sum = 0.0;
        let mut err_sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let (v, e) = f(mid + half * x)?;
            sum += v * *w;
            abs_sum += v.norm() * w;
            err_sum += e * w;
        }
        let h = half.abs();
        Ok((sum * half, abs_sum * h, err_sum * h))
    }
}

/// (P_n(x), P_n'(x)).
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

fn cached_rule(n: usize) -> &'static GaussLegendre {
    static G16: OnceLock<GaussLegendre> = OnceLock::new();
    static G32: OnceLock<GaussLegendre> = OnceLock::new();
    match n {
        16 => G16.get_or_init(|| GaussLegendre::new(16)),
        32 => G32.get_or_init(|| GaussLegendre::new(32)),
        _ => Box::leak(Box::new(GaussLegendre::new(n))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Initial number of equal panels per smooth piece.
    pub panels: usize,
    /// Nodes of the main rule; the error indicator uses half as many.
    pub nodes_per_panel: usize,
    pub target_abs_err: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { panels: 4, nodes_per_panel: 32, target_abs_err: 1e-12 }
    }
}

impl QuadratureConfig {
    pub fn with_target(mut self, target_abs_err: f64) -> Self {
        self.target_abs_err = target_abs_err;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.panels == 0 || self.nodes_per_panel < 2 || !(self.target_abs_err > 0.0) {
            return Err(Error::InvalidParameters(format!("bad quadrature config {self:?}")));
        }
        Ok(())
    }
}

/// Result of an adaptive integration, with the largest |f| seen at a node.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: C64,
    pub abs_err: f64,
    pub panels: usize,
    pub max_abs: f64,
}

impl Integral {
    pub fn result(&self) -> EvalResult {
        EvalResult::new(self.value, self.abs_err, Status::Regular)
    }
}

/// Adaptive composite Gauss–Legendre over [a, b], split first at the given
/// breakpoints (where f may have kinks).
///
/// Each panel is integrated with the n- and n/2-point rules; the difference
/// is the panel error indicator. A panel is accepted when its indicator is
/// below its share of the target, or below the rounding level of the panel
/// sum; otherwise it is bisected.
pub fn integrate<F: FnMut(f64) -> Result<C64>>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    integrate_noisy(|x| Ok((f(x)?, 0.0)), a, b, breakpoints, cfg)
}

/// [`integrate`] for an integrand returning (value, absolute error). Panels
/// are not refined below the accumulated error of their samples, which
/// is added to the reported estimate.
pub fn integrate_noisy<F: FnMut(f64) -> Result<(C64, f64)>>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    cfg.validate()?;
    let zero = Integral { value: C64::new(0.0, 0.0), abs_err: 0.0, panels: 0, max_abs: 0.0 };
    if !(b > a) {
        return Ok(zero);
    }
    let hi = cached_rule(cfg.nodes_per_panel);
    let lo = cached_rule((cfg.nodes_per_panel / 2).max(1));

    let mut cuts = vec![a];
    cuts.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    cuts.push(b);
    cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    cuts.dedup();

    let mut stack = Vec::new();
    for w in cuts.windows(2) {
        let h = (w[1] - w[0]) / cfg.panels as f64;
        for i in 0..cfg.panels {
            stack.push((w[0] + i as f64 * h, w[0] + (i + 1) as f64 * h));
        }
    }
    let total = b - a;
    let mut out = zero;
    let mut max_abs = 0.0f64;
    let mut count = stack.len();
    let mut tracked = |x: f64| -> Result<(C64, f64)> {
        let v = f(x)?;
        max_abs = max_abs.max(v.0.norm());
        Ok(v)
    };
    while let Some((x0, x1)) = stack.pop() {
        let (vh, abs_h, err_h) = hi.apply(x0, x1, &mut tracked)?;
        let (vl, _, err_l) = lo.apply(x0, x1, &mut tracked)?;
        let est = (vh - vl).norm();
        let share = cfg.target_abs_err * (x1 - x0) / total;
        let floor = 64.0 * f64::EPSILON * abs_h + 2.0 * (err_h + err_l);
        if est <= share.max(floor) || (x1 - x0) < 1e-12 * total {
            out.value += vh;
            out.abs_err += est.min(share.max(floor)) + err_h;
            out.panels += 1;
            continue;
        }
        count += 1;
        if count > MAX_PANELS {
            return Err(Error::QuadratureBudgetExceeded(MAX_PANELS));
        }
        let mid = 0.5 * (x0 + x1);
        stack.push((mid, x1));
        stack.push((x0, mid));
    }
    out.max_abs = max_abs;
    Ok(out)
}
