//! Pasting S-modules into an approximation of a continuous target.
//!
//! Knots are placed so that the target oscillates by at most half the local
//! tolerance between neighbours; each knot interval then gets one monotone
//! transition between the sampled values. Because every transition stays
//! between its endpoint values, `|y − φ|` on an interval is bounded by the
//! oscillation of `φ` there.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::funcparse::{EvalError, Expr};
use crate::smodule::{SModule, SModuleError, MAX_ORDER};

/// Default number of probe points per subinterval.
pub const DEFAULT_PROBES: usize = 64;
/// Refinement stops with an error beyond this many knots.
pub const MAX_KNOTS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ApproxError {
    #[error("interval [{0}, {1}] is empty or not finite")]
    BadInterval(f64, f64),
    #[error("target evaluation failed at x = {x}: {source}")]
    Target { x: f64, source: EvalError },
    #[error("tolerance must be positive, got {value} at x = {x}")]
    NonPositiveTolerance { x: f64, value: f64 },
    #[error(
        "knot refinement failed; worst subinterval [{lo}, {hi}] has oscillation {oscillation} against tolerance {eps}"
    )]
    RefinementFailed { lo: f64, hi: f64, oscillation: f64, eps: f64 },
    #[error("need at least {min} probe points, got {got}")]
    TooFewProbes { min: usize, got: usize },
    #[error(transparent)]
    Module(#[from] SModuleError),
    #[error("malformed solution: {0}")]
    Malformed(String),
}

/// A real function of one variable that may fail to evaluate.
pub trait ScalarFn: Send + Sync {
    fn eval(&self, x: f64) -> Result<f64, EvalError>;
}

impl ScalarFn for Expr {
    fn eval(&self, x: f64) -> Result<f64, EvalError> {
        Expr::eval(self, x)
    }
}

/// Plain closure adapter.
pub struct FnTarget<F>(pub F);

impl<F: Fn(f64) -> f64 + Send + Sync> ScalarFn for FnTarget<F> {
    fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = (self.0)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }
}

/// Samples joined by straight lines; constant beyond the first and last abscissa.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tabulated {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Tabulated {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, ApproxError> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(ApproxError::Malformed("need at least two (x, y) samples of equal length".into()));
        }
        if xs.iter().chain(&ys).any(|v| !v.is_finite()) {
            return Err(ApproxError::Malformed("samples must be finite".into()));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(ApproxError::Malformed("sample abscissae must be strictly increasing".into()));
        }
        Ok(Tabulated { xs, ys })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }
}

impl ScalarFn for Tabulated {
    fn eval(&self, x: f64) -> Result<f64, EvalError> {
        if !x.is_finite() {
            return Err(EvalError::NonFinite);
        }
        let i = self.xs.partition_point(|&v| v <= x);
        if i == 0 {
            return Ok(self.ys[0]);
        }
        if i == self.xs.len() {
            return Ok(*self.ys.last().unwrap());
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }
}

/// Constant or spatially varying tolerance.
#[derive(Clone)]
pub enum Tolerance {
    Constant(f64),
    Function(Arc<dyn ScalarFn>),
}

impl Tolerance {
    pub fn at(&self, x: f64) -> Result<f64, ApproxError> {
        let v = match self {
            Tolerance::Constant(v) => *v,
            Tolerance::Function(f) => f.eval(x).map_err(|source| ApproxError::Target { x, source })?,
        };
        if v > 0.0 {
            Ok(v)
        } else {
            Err(ApproxError::NonPositiveTolerance { x, value: v })
        }
    }
}

impl fmt::Debug for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Constant(v) => write!(f, "Constant({v})"),
            Tolerance::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// What to approximate: `φ` on `[a, b]` within `ε(x)`.
#[derive(Clone)]
pub struct TargetSpec {
    phi: Arc<dyn ScalarFn>,
    a: f64,
    b: f64,
    eps: Tolerance,
    probes: usize,
    max_knots: usize,
}

impl fmt::Debug for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetSpec")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("eps", &self.eps)
            .field("probes", &self.probes)
            .field("max_knots", &self.max_knots)
            .finish_non_exhaustive()
    }
}

impl TargetSpec {
    pub fn new(phi: Arc<dyn ScalarFn>, a: f64, b: f64, eps: Tolerance) -> Result<Self, ApproxError> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(ApproxError::BadInterval(a, b));
        }
        if let Tolerance::Constant(v) = eps {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ApproxError::NonPositiveTolerance { x: a, value: v });
            }
        }
        Ok(TargetSpec { phi, a, b, eps, probes: DEFAULT_PROBES, max_knots: MAX_KNOTS })
    }

    /// Target given as a closure, constant tolerance.
    pub fn from_fn<F>(phi: F, a: f64, b: f64, eps: f64) -> Result<Self, ApproxError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(Arc::new(FnTarget(phi)), a, b, Tolerance::Constant(eps))
    }

    /// Target and tolerance given as parsed expressions.
    pub fn from_exprs(phi: Expr, a: f64, b: f64, eps: Expr) -> Result<Self, ApproxError> {
        let eps = if eps.is_constant() {
            let v = eps.eval(0.0).map_err(|source| ApproxError::Target { x: a, source })?;
            Tolerance::Constant(v)
        } else {
            Tolerance::Function(Arc::new(eps))
        };
        Self::new(Arc::new(phi), a, b, eps)
    }

    /// Probe points per subinterval used to estimate oscillation.
    pub fn with_probes(mut self, probes: usize) -> Result<Self, ApproxError> {
        if probes < 2 {
            return Err(ApproxError::TooFewProbes { min: 2, got: probes });
        }
        self.probes = probes;
        Ok(self)
    }

    /// Lowers the knot cap below [`MAX_KNOTS`].
    pub fn with_max_knots(mut self, max_knots: usize) -> Self {
        self.max_knots = max_knots.clamp(2, MAX_KNOTS);
        self
    }

    /// Same target with every tolerance multiplied by `factor`.
    pub fn scaled_tolerance(&self, factor: f64) -> Self {
        let eps = match &self.eps {
            Tolerance::Constant(v) => Tolerance::Constant(v * factor),
            Tolerance::Function(f) => {
                let f = f.clone();
                Tolerance::Function(Arc::new(ScaledFn(f, factor)))
            }
        };
        TargetSpec { eps, ..self.clone() }
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn probes(&self) -> usize {
        self.probes
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.eps
    }

    pub fn phi(&self, x: f64) -> Result<f64, ApproxError> {
        self.phi.eval(x).map_err(|source| ApproxError::Target { x, source })
    }

    pub fn eps(&self, x: f64) -> Result<f64, ApproxError> {
        self.eps.at(x)
    }
}

struct ScaledFn(Arc<dyn ScalarFn>, f64);

impl ScalarFn for ScaledFn {
    fn eval(&self, x: f64) -> Result<f64, EvalError> {
        Ok(self.0.eval(x)? * self.1)
    }
}

/// A knot `(x, φ(x))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub x: f64,
    pub v: f64,
}

/// Probe statistics of one subinterval.
#[derive(Debug, Clone, Copy)]
struct Probe {
    oscillation: f64,
    min_eps: f64,
}

fn probe(t: &TargetSpec, lo: f64, hi: f64, count: usize) -> Result<Probe, ApproxError> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut min_eps = f64::INFINITY;
    for j in 0..count {
        let x = if j + 1 == count {
            hi
        } else {
            lo + (hi - lo) * j as f64 / (count - 1) as f64
        };
        let v = t.phi(x)?;
        min = min.min(v);
        max = max.max(v);
        min_eps = min_eps.min(t.eps(x)?);
    }
    Ok(Probe { oscillation: max - min, min_eps })
}

/// Oscillation of `φ` on `[lo, hi]` estimated with `count` equispaced probes.
pub fn probed_oscillation(t: &TargetSpec, lo: f64, hi: f64, count: usize) -> Result<f64, ApproxError> {
    Ok(probe(t, lo, hi, count)?.oscillation)
}

/// Chooses knots by bisecting every subinterval whose probed oscillation
/// exceeds half the smallest probed tolerance on it.
pub fn plan_knots(t: &TargetSpec) -> Result<Vec<Knot>, ApproxError> {
    let (a, b) = t.interval();
    let mut accepted = vec![a];
    // Stack of pending intervals, popped left-first so accepted ends stay sorted.
    let mut pending = vec![(a, b)];
    while let Some((lo, hi)) = pending.pop() {
        let p = probe(t, lo, hi, t.probes())?;
        let mid = 0.5 * (lo + hi);
        if p.oscillation <= 0.5 * p.min_eps {
            accepted.push(hi);
            continue;
        }
        // Either the cap is reached or the interval is below floating-point resolution.
        if accepted.len() + pending.len() + 2 > t.max_knots || !(lo < mid && mid < hi) {
            return Err(worst_failure(t, lo, hi, p, &pending)?);
        }
        pending.push((mid, hi));
        pending.push((lo, mid));
    }
    accepted
        .into_iter()
        .map(|x| Ok(Knot { x, v: t.phi(x)? }))
        .collect()
}

fn worst_failure(
    t: &TargetSpec,
    lo: f64,
    hi: f64,
    p: Probe,
    pending: &[(f64, f64)],
) -> Result<ApproxError, ApproxError> {
    let mut worst = (lo, hi, p);
    let ratio = |p: &Probe| p.oscillation / p.min_eps;
    for &(l, h) in pending {
        let q = probe(t, l, h, t.probes())?;
        if ratio(&q) > ratio(&worst.2) {
            worst = (l, h, q);
        }
    }
    Ok(ApproxError::RefinementFailed {
        lo: worst.0,
        hi: worst.1,
        oscillation: worst.2.oscillation,
        eps: worst.2.min_eps,
    })
}

/// The pasted solution: contiguous S-modules sharing one exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SolutionRecord", into = "SolutionRecord")]
pub struct PiecewiseSolution {
    n: u32,
    a: f64,
    b: f64,
    segments: Vec<SModule>,
}

#[derive(Serialize, Deserialize)]
struct SolutionRecord {
    n: u32,
    interval: [f64; 2],
    segments: Vec<SModule>,
}

impl From<PiecewiseSolution> for SolutionRecord {
    fn from(s: PiecewiseSolution) -> Self {
        SolutionRecord { n: s.n, interval: [s.a, s.b], segments: s.segments }
    }
}

impl TryFrom<SolutionRecord> for PiecewiseSolution {
    type Error = ApproxError;
    fn try_from(r: SolutionRecord) -> Result<Self, Self::Error> {
        PiecewiseSolution::from_segments(r.n, r.interval[0], r.interval[1], r.segments)
    }
}

/// Abutting host endpoints must agree to this tolerance.
pub const PARTITION_TOL: f64 = 1e-12;

impl PiecewiseSolution {
    /// Checks that the segments partition `[a, b]` and share exponent `n`.
    /// Value continuity is not enforced here; certification reports it.
    pub fn from_segments(n: u32, a: f64, b: f64, segments: Vec<SModule>) -> Result<Self, ApproxError> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(ApproxError::BadInterval(a, b));
        }
        let first = segments
            .first()
            .ok_or_else(|| ApproxError::Malformed("solution has no segments".into()))?;
        let last = segments.last().unwrap();
        let tol = |x: f64| PARTITION_TOL * x.abs().max(1.0);
        if (first.x_lo() - a).abs() > tol(a) || (last.x_hi() - b).abs() > tol(b) {
            return Err(ApproxError::Malformed("segments do not span the interval".into()));
        }
        for (i, s) in segments.iter().enumerate() {
            if s.exponent() != n {
                return Err(ApproxError::Malformed(format!("segment {i} has exponent {} != {n}", s.exponent())));
            }
        }
        for (i, w) in segments.windows(2).enumerate() {
            if (w[0].x_hi() - w[1].x_lo()).abs() > tol(w[1].x_lo()) {
                return Err(ApproxError::Malformed(format!("gap between segments {i} and {}", i + 1)));
            }
        }
        Ok(PiecewiseSolution { n, a, b, segments })
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn segments(&self) -> &[SModule] {
        &self.segments
    }

    pub fn knot_count(&self) -> usize {
        self.segments.len() + 1
    }

    /// Interior junction abscissae (right ends of all but the last segment).
    pub fn junctions(&self) -> impl Iterator<Item = f64> + '_ {
        self.segments[..self.segments.len() - 1].iter().map(|s| s.x_hi())
    }

    /// Index of the segment whose host interval contains `x` (clamped).
    pub fn segment_index(&self, x: f64) -> usize {
        let i = self.segments.partition_point(|s| s.x_hi() < x);
        i.min(self.segments.len() - 1)
    }

    /// `y(x)`. Outside `[a, b]` the solution is continued by constants.
    pub fn value(&self, x: f64) -> f64 {
        self.segments[self.segment_index(x)].value(x)
    }

    /// `[y, y′, y″, y‴, y⁗]` at `x`.
    pub fn jet(&self, x: f64) -> [f64; MAX_ORDER + 1] {
        self.segments[self.segment_index(x)].jet(x)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serializes")
    }
}

/// One transition per knot interval, `n` shared by all segments.
pub fn build_from_knots(knots: &[Knot], n: u32) -> Result<PiecewiseSolution, ApproxError> {
    if knots.len() < 2 {
        return Err(ApproxError::Malformed("need at least two knots".into()));
    }
    let segments = knots
        .windows(2)
        .map(|w| SModule::transition(w[0].x, w[1].x, w[0].v, w[1].v, n))
        .collect::<Result<Vec<_>, _>>()?;
    PiecewiseSolution::from_segments(n, knots[0].x, knots[knots.len() - 1].x, segments)
}

/// Plans knots for `t` and pastes one S-module per knot interval.
pub fn build_solution(t: &TargetSpec, n: u32) -> Result<PiecewiseSolution, ApproxError> {
    crate::smodule::BumpProfile::get(n)?;
    let knots = plan_knots(t)?;
    build_from_knots(&knots, n)
}

/// Sampled error statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub max_abs_err: f64,
    pub mean_abs_err: f64,
    pub max_rel_err: f64,
    pub mean_rel_err: f64,
    pub argmax_x: f64,
    pub knots: usize,
    pub grid_size: usize,
    pub pass: bool,
}

/// A row of the sample dump: `x, y, phi, abs_err`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
    pub abs_err: f64,
}

/// `grid_size` uniformly spaced points from `a` to `b` inclusive.
pub fn uniform_grid(a: f64, b: f64, grid_size: usize) -> impl Iterator<Item = f64> {
    let last = grid_size.max(2) - 1;
    (0..=last).map(move |i| if i == last { b } else { a + (b - a) * i as f64 / last as f64 })
}

pub fn sample(sol: &PiecewiseSolution, t: &TargetSpec, grid_size: usize) -> Result<Vec<Sample>, ApproxError> {
    let (a, b) = t.interval();
    uniform_grid(a, b, grid_size)
        .map(|x| {
            let y = sol.value(x);
            let phi = t.phi(x)?;
            Ok(Sample { x, y, phi, abs_err: (y - phi).abs() })
        })
        .collect()
}

/// Measures `|y − φ|` and `|y − φ|/ε` on a uniform grid; passes iff
/// `|y − φ| < ε` at every grid point.
pub fn error_report(sol: &PiecewiseSolution, t: &TargetSpec, grid_size: usize) -> Result<ErrorReport, ApproxError> {
    let samples = sample(sol, t, grid_size)?;
    let mut max_abs: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    let mut sum_abs = 0.0;
    let mut sum_rel = 0.0;
    let mut argmax = samples[0].x;
    for s in &samples {
        let rel = s.abs_err / t.eps(s.x)?;
        if s.abs_err > max_abs {
            max_abs = s.abs_err;
            argmax = s.x;
        }
        max_rel = max_rel.max(rel);
        sum_abs += s.abs_err;
        sum_rel += rel;
    }
    let count = samples.len() as f64;
    Ok(ErrorReport {
        max_abs_err: max_abs,
        mean_abs_err: sum_abs / count,
        max_rel_err: max_rel,
        mean_rel_err: sum_rel / count,
        argmax_x: argmax,
        knots: sol.knot_count(),
        grid_size: samples.len(),
        pass: max_rel < 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcparse::parse;

    #[test]
    fn constant_target_gives_two_knots() {
        let t = TargetSpec::from_fn(|_| 5.0, 0.0, 1.0, 1e-6).unwrap();
        let k = plan_knots(&t).unwrap();
        assert_eq!(k, vec![Knot { x: 0.0, v: 5.0 }, Knot { x: 1.0, v: 5.0 }]);
        let sol = build_solution(&t, 4).unwrap();
        assert_eq!(sol.segments().len(), 1);
        assert!(sol.segments()[0].is_constant());
        let r = error_report(&sol, &t, 1000).unwrap();
        assert_eq!(r.max_abs_err, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn identity_subintervals_are_short() {
        let t = TargetSpec::from_fn(|x| x, 0.0, 1.0, 0.1).unwrap();
        let k = plan_knots(&t).unwrap();
        for w in k.windows(2) {
            assert!(w[1].x - w[0].x <= 0.05);
        }
        assert_eq!(k.first().unwrap().x, 0.0);
        assert_eq!(k.last().unwrap().x, 1.0);
    }

    #[test]
    fn knots_strictly_increase_and_interpolate() {
        let t = TargetSpec::from_fn(|x| (3.0 * x).sin() + 0.3 * x, -1.0, 2.0, 0.02).unwrap();
        let k = plan_knots(&t).unwrap();
        for w in k.windows(2) {
            assert!(w[0].x < w[1].x);
        }
        let sol = build_from_knots(&k, 4).unwrap();
        for kn in &k {
            assert!((sol.value(kn.x) - kn.v).abs() < 1e-9);
        }
    }

    #[test]
    fn knot_cap_reports_worst_subinterval() {
        let t = TargetSpec::from_fn(|x| x * x, 0.0, 1.0, 1e-4).unwrap().with_max_knots(64);
        match plan_knots(&t) {
            Err(ApproxError::RefinementFailed { lo, hi, oscillation, eps }) => {
                assert!(lo < hi);
                assert!(oscillation > 0.5 * eps);
            }
            other => panic!("expected refinement failure, got {other:?}"),
        }
    }

    #[test]
    fn discontinuous_target_fails_instead_of_looping() {
        let t = TargetSpec::from_fn(|x| if x < 0.3 { 0.0 } else { 1.0 }, 0.0, 1.0, 0.1).unwrap();
        match plan_knots(&t) {
            Err(ApproxError::RefinementFailed { lo, hi, .. }) => assert!(lo <= 0.3 && 0.3 <= hi),
            other => panic!("expected refinement failure, got {other:?}"),
        }
    }

    #[test]
    fn tolerance_validation() {
        assert!(matches!(
            TargetSpec::from_fn(|x| x, 0.0, 1.0, -1.0),
            Err(ApproxError::NonPositiveTolerance { .. })
        ));
        assert!(matches!(TargetSpec::from_fn(|x| x, 1.0, 1.0, 0.1), Err(ApproxError::BadInterval(..))));
        let t = TargetSpec::from_exprs(parse("x").unwrap(), -1.0, 1.0, parse("x").unwrap()).unwrap();
        assert!(matches!(plan_knots(&t), Err(ApproxError::NonPositiveTolerance { .. })));
    }

    #[test]
    fn variable_tolerance_refines_where_tight() {
        let phi = parse("x").unwrap();
        let eps = parse("0.01+x").unwrap();
        let t = TargetSpec::from_exprs(phi, 0.0, 1.0, eps).unwrap();
        let k = plan_knots(&t).unwrap();
        let first = k[1].x - k[0].x;
        let last = k[k.len() - 1].x - k[k.len() - 2].x;
        assert!(first < last);
        let sol = build_solution(&t, 4).unwrap();
        assert!(error_report(&sol, &t, 5000).unwrap().pass);
    }

    #[test]
    fn tabulated_target() {
        let tab = Tabulated::new(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 1.0]).unwrap();
        assert_eq!(ScalarFn::eval(&tab, 0.5).unwrap(), 1.0);
        assert_eq!(ScalarFn::eval(&tab, 1.5).unwrap(), 1.5);
        assert_eq!(ScalarFn::eval(&tab, -1.0).unwrap(), 0.0);
        assert_eq!(ScalarFn::eval(&tab, 3.0).unwrap(), 1.0);
        let t = TargetSpec::new(Arc::new(tab), 0.0, 2.0, Tolerance::Constant(0.05)).unwrap();
        let sol = build_solution(&t, 5).unwrap();
        assert!(error_report(&sol, &t, 4001).unwrap().pass);
        assert!(Tabulated::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn malformed_segment_lists_are_rejected() {
        let s1 = SModule::transition(0.0, 1.0, 0.0, 1.0, 4).unwrap();
        let s2 = SModule::transition(1.5, 2.0, 1.0, 0.0, 4).unwrap();
        assert!(PiecewiseSolution::from_segments(4, 0.0, 2.0, vec![s1.clone(), s2]).is_err());
        assert!(PiecewiseSolution::from_segments(4, 0.0, 2.0, vec![]).is_err());
        let s3 = SModule::transition(1.0, 2.0, 1.0, 0.0, 5).unwrap();
        assert!(PiecewiseSolution::from_segments(4, 0.0, 2.0, vec![s1, s3]).is_err());
    }

    #[test]
    fn json_shape() {
        let t = TargetSpec::from_fn(|x| x * x, 0.0, 1.0, 0.2).unwrap();
        let sol = build_solution(&t, 4).unwrap();
        let v: serde_json::Value = serde_json::from_str(&sol.to_json()).unwrap();
        assert_eq!(v["n"], 4);
        assert_eq!(v["interval"], serde_json::json!([0.0, 1.0]));
        assert_eq!(v["segments"].as_array().unwrap().len(), sol.segments().len());
        let back: PiecewiseSolution = serde_json::from_value(v).unwrap();
        assert_eq!(back, sol);
    }
}
