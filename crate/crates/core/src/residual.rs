//! Left-hand sides of the ADEs in play, evaluated on jets.
//!
//! All of (B), (D1), (D2) and the limit equation are sums of the three
//! monomials `y⁗y′²`, `y‴y″y′`, `y″³`. Each has derivative-order weight 6, so
//! under `x ↦ αx + β` the residual scales by `α⁶` and the zero set is preserved.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::PiecewiseSolution;
use crate::smodule::MAX_ORDER;

/// Absolute floor for the normalizing scale; flat points have all monomials zero.
pub const SCALE_FLOOR: f64 = 1e-30;
/// Normalized (B)-residual a constructed solution must stay below.
pub const CERTIFY_RESIDUAL_TOL: f64 = 1e-8;
/// Relative value gap allowed at a junction.
pub const JUNCTION_VALUE_TOL: f64 = 1e-10;
/// Allowed size of one-sided derivatives of orders `1..=min(n−2, 4)` at junctions.
pub const JUNCTION_FLATNESS_TOL: f64 = 1e-9;

/// `y` and its first four derivatives at `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JetPoint {
    pub x: f64,
    pub y: f64,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
    pub y4: f64,
}

impl JetPoint {
    pub fn from_array(x: f64, j: [f64; MAX_ORDER + 1]) -> Self {
        JetPoint { x, y: j[0], y1: j[1], y2: j[2], y3: j[3], y4: j[4] }
    }

    /// Jet of `λ·y`.
    pub fn scaled(&self, lambda: f64) -> Self {
        JetPoint {
            x: self.x,
            y: lambda * self.y,
            y1: lambda * self.y1,
            y2: lambda * self.y2,
            y3: lambda * self.y3,
            y4: lambda * self.y4,
        }
    }

    /// Jet of `x ↦ y(αx + β)` at the preimage of `self.x`.
    pub fn reparametrized(&self, alpha: f64, beta: f64) -> Self {
        let a2 = alpha * alpha;
        JetPoint {
            x: (self.x - beta) / alpha,
            y: self.y,
            y1: alpha * self.y1,
            y2: a2 * self.y2,
            y3: a2 * alpha * self.y3,
            y4: a2 * a2 * self.y4,
        }
    }

    /// `y⁽ᵏ⁾ = eᵗ` for every k: the jet of `exp` at `t`.
    pub fn exponential(t: f64) -> Self {
        let e = t.exp();
        JetPoint { x: t, y: e, y1: e, y2: e, y3: e, y4: e }
    }

    pub fn is_finite(&self) -> bool {
        [self.x, self.y, self.y1, self.y2, self.y3, self.y4].iter().all(|v| v.is_finite())
    }

    /// `(y⁗y′², y‴y″y′, y″³)`.
    fn monomials(&self) -> [f64; 3] {
        [self.y4 * self.y1 * self.y1, self.y3 * self.y2 * self.y1, self.y2 * self.y2 * self.y2]
    }
}

/// An equation of the form `p·y⁗y′² + q·y‴y″y′ + r·y″³ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeTerm {
    pub coeffs: [f64; 3],
}

impl ThreeTerm {
    /// `y⁗y′² − 3y‴y″y′ + 2(1 − n⁻²)y″³`
    pub fn universal(n: u32) -> Self {
        let n = n as f64;
        ThreeTerm { coeffs: [1.0, -3.0, 2.0 * (1.0 - 1.0 / (n * n))] }
    }

    pub fn d1(n: u32) -> Self {
        let n = n as f64;
        ThreeTerm { coeffs: [n * n, 3.0 * n * (1.0 - n), 2.0 * n * n - 3.0 * n + 1.0] }
    }

    pub fn d2(n: u32) -> Self {
        let n = n as f64;
        ThreeTerm { coeffs: [n, 2.0 - 3.0 * n, 2.0 * (n - 1.0)] }
    }

    pub fn limit() -> Self {
        ThreeTerm { coeffs: [1.0, -3.0, 2.0] }
    }

    pub fn residual(&self, j: &JetPoint) -> f64 {
        let m = j.monomials();
        self.coeffs[0] * m[0] + self.coeffs[1] * m[1] + self.coeffs[2] * m[2]
    }

    /// Largest absolute term.
    pub fn scale(&self, j: &JetPoint) -> f64 {
        let m = j.monomials();
        (0..3).map(|i| (self.coeffs[i] * m[i]).abs()).fold(0.0, f64::max)
    }

    pub fn normalized(&self, j: &JetPoint) -> f64 {
        self.residual(j) / self.scale(j).max(SCALE_FLOOR)
    }
}

pub fn residual_b(j: &JetPoint, n: u32) -> f64 {
    ThreeTerm::universal(n).residual(j)
}

pub fn residual_d1(j: &JetPoint, n: u32) -> f64 {
    ThreeTerm::d1(n).residual(j)
}

pub fn residual_d2(j: &JetPoint, n: u32) -> f64 {
    ThreeTerm::d2(n).residual(j)
}

/// `y⁗y′² − 3y‴y″y′ + 2y″³`, grouped as `(m₀ − m₁) − 2(m₁ − m₂)` so that
/// jets with equal monomials cancel exactly.
pub fn residual_limit(j: &JetPoint) -> f64 {
    let [m0, m1, m2] = j.monomials();
    (m0 - m1) - 2.0 * (m1 - m2)
}

fn r_terms(j: &JetPoint) -> [f64; 7] {
    let (y1, y2, y3, y4) = (j.y1, j.y2, j.y3, j.y4);
    let y1_2 = y1 * y1;
    let y1_3 = y1_2 * y1;
    let y1_4 = y1_2 * y1_2;
    let y2_2 = y2 * y2;
    let y2_3 = y2_2 * y2;
    let y2_4 = y2_2 * y2_2;
    [
        3.0 * y1_4 * y2 * y4 * y4,
        -4.0 * y1_4 * y3 * y3 * y4,
        6.0 * y1_3 * y2_2 * y3 * y4,
        24.0 * y1_2 * y2_4 * y4,
        -12.0 * y1_3 * y2 * y3 * y3 * y3,
        -29.0 * y1_2 * y2_3 * y3 * y3,
        12.0 * y2_4 * y2_3,
    ]
}

/// Rubel's seven-term degree-7 equation.
pub fn residual_r(j: &JetPoint) -> f64 {
    r_terms(j).iter().sum()
}

pub fn residual_r_scale(j: &JetPoint) -> f64 {
    r_terms(j).iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// Residual of (B) at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointResidual {
    pub x: f64,
    pub raw: f64,
    pub scale: f64,
    pub normalized: f64,
}

impl PointResidual {
    pub fn of_b(j: &JetPoint, n: u32) -> Self {
        let eq = ThreeTerm::universal(n);
        let raw = eq.residual(j);
        let scale = eq.scale(j);
        PointResidual { x: j.x, raw, scale, normalized: raw / scale.max(SCALE_FLOOR) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub count: usize,
    pub max_normalized: f64,
    pub mean_normalized: f64,
    pub max_raw: f64,
    pub argmax_x: f64,
}

/// Smoothness bookkeeping at interior junctions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JunctionSummary {
    pub count: usize,
    /// Largest `|y_left − y_right| / max(1, |y|)`.
    pub max_value_gap: f64,
    /// Largest `|y⁽ᵏ⁾|` over both one-sided jets, k in `1..=min(n−2, 4)`.
    pub max_flat_derivative: f64,
    /// Largest `|y⁽ᵏ⁾_left − y⁽ᵏ⁾_right|` over k in `1..=3`, relative to the
    /// largest `|y⁽ᵏ⁾|` on the two adjacent segments (floored at 1).
    pub max_derivative_mismatch: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub n: u32,
    pub points_per_segment: usize,
    pub summary: ResidualSummary,
    pub junctions: JunctionSummary,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub per_point: Option<Vec<PointResidual>>,
}

impl ResidualReport {
    pub fn without_points(mut self) -> Self {
        self.per_point = None;
        self
    }
}

/// Summarizes (B)-residuals of arbitrary jets.
pub fn summarize(jets: &[JetPoint], n: u32) -> (ResidualSummary, Vec<PointResidual>) {
    let per_point: Vec<PointResidual> = jets.par_iter().map(|j| PointResidual::of_b(j, n)).collect();
    let mut max_norm: f64 = 0.0;
    let mut max_raw: f64 = 0.0;
    let mut argmax = per_point.first().map_or(f64::NAN, |p| p.x);
    let mut sum = 0.0;
    for p in &per_point {
        let a = p.normalized.abs();
        if a > max_norm || a.is_nan() {
            max_norm = if a.is_nan() { f64::INFINITY } else { a };
            argmax = p.x;
        }
        max_raw = max_raw.max(p.raw.abs());
        sum += a;
    }
    let count = per_point.len();
    let summary = ResidualSummary {
        count,
        max_normalized: max_norm,
        mean_normalized: if count == 0 { 0.0 } else { sum / count as f64 },
        max_raw,
        argmax_x: argmax,
    };
    (summary, per_point)
}

/// The jets certification looks at: `points` interior points per segment
/// plus both one-sided jets at every junction and the two outer ends.
pub fn certification_jets(sol: &PiecewiseSolution, points: usize) -> Vec<JetPoint> {
    let segs = sol.segments();
    let mut jets = Vec::with_capacity(segs.len() * (points + 2));
    for s in segs {
        let (lo, hi) = (s.x_lo(), s.x_hi());
        jets.push(JetPoint::from_array(lo, s.jet(lo)));
        for j in 0..points {
            let x = lo + (hi - lo) * (j + 1) as f64 / (points + 1) as f64;
            jets.push(JetPoint::from_array(x, s.jet(x)));
        }
        jets.push(JetPoint::from_array(hi, s.jet(hi)));
    }
    jets
}

fn segment_derivative_scale(s: &crate::smodule::SModule, order: usize) -> f64 {
    // |Y^(k)| = |γ| α^(k-1) |g^(k-1)|; bound |g^(k-1)| by sampling its polynomial.
    let p = s.profile();
    let k = p.half_width();
    let mut peak: f64 = 0.0;
    for i in 0..=64 {
        let u = -k + 2.0 * k * i as f64 / 64.0;
        peak = peak.max(p.derivative(u, order - 1).unwrap_or(0.0).abs());
    }
    s.gamma().abs() * s.alpha().powi(order as i32 - 1) * peak
}

pub fn junction_summary(sol: &PiecewiseSolution) -> JunctionSummary {
    let n = sol.exponent() as usize;
    let flat_top = n.saturating_sub(2).min(MAX_ORDER);
    let mut out = JunctionSummary {
        count: 0,
        max_value_gap: 0.0,
        max_flat_derivative: 0.0,
        max_derivative_mismatch: 0.0,
    };
    for w in sol.segments().windows(2) {
        let (left, right) = (&w[0], &w[1]);
        let x = right.x_lo();
        let jl = left.jet(left.x_hi());
        let jr = right.jet(x);
        out.count += 1;
        let gap = (jl[0] - jr[0]).abs() / jl[0].abs().max(jr[0].abs()).max(1.0);
        out.max_value_gap = out.max_value_gap.max(gap);
        for k in 1..=flat_top {
            out.max_flat_derivative = out.max_flat_derivative.max(jl[k].abs()).max(jr[k].abs());
        }
        for k in 1..=3 {
            let scale = segment_derivative_scale(left, k)
                .max(segment_derivative_scale(right, k))
                .max(1.0);
            out.max_derivative_mismatch = out.max_derivative_mismatch.max((jl[k] - jr[k]).abs() / scale);
        }
    }
    out
}

/// Evaluates the exact jet of `sol` and reports normalized (B)-residuals and
/// junction smoothness. Passes iff the normalized residual stays at or below
/// [`CERTIFY_RESIDUAL_TOL`] and junctions are continuous and flat.
pub fn certify(sol: &PiecewiseSolution, points: usize) -> ResidualReport {
    certify_jets(sol, &certification_jets(sol, points.max(1)), points.max(1))
}

/// Like [`certify`] but on caller-supplied jets (e.g. with injected faults).
pub fn certify_jets(sol: &PiecewiseSolution, jets: &[JetPoint], points: usize) -> ResidualReport {
    let n = sol.exponent();
    let (summary, per_point) = summarize(jets, n);
    let junctions = junction_summary(sol);
    let pass = summary.max_normalized <= CERTIFY_RESIDUAL_TOL
        && junctions.max_value_gap <= JUNCTION_VALUE_TOL
        && junctions.max_flat_derivative <= JUNCTION_FLATNESS_TOL;
    ResidualReport {
        n,
        points_per_segment: points,
        summary,
        junctions,
        pass,
        per_point: Some(per_point),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jet(y1: f64, y2: f64, y3: f64, y4: f64) -> JetPoint {
        JetPoint { x: 0.0, y: 0.0, y1, y2, y3, y4 }
    }

    #[test]
    fn constant_and_linear_jets_vanish() {
        for n in [4, 7] {
            for j in [jet(0.0, 0.0, 0.0, 0.0), jet(2.5, 0.0, 0.0, 0.0)] {
                assert_eq!(residual_b(&j, n), 0.0);
                assert_eq!(residual_d1(&j, n), 0.0);
                assert_eq!(residual_d2(&j, n), 0.0);
                assert_eq!(residual_limit(&j), 0.0);
                assert_eq!(residual_r(&j), 0.0);
                assert_eq!(PointResidual::of_b(&j, n).normalized, 0.0);
            }
        }
    }

    #[test]
    fn exponential_jet() {
        for n in [4u32, 5, 10] {
            for t in [-1.0, 0.0, 0.7] {
                let j = JetPoint::exponential(t);
                let e3 = (3.0 * t).exp();
                let nf = n as f64;
                let b = residual_b(&j, n);
                assert!((b - (-2.0 / (nf * nf)) * e3).abs() <= 1e-12 * e3 * 2.0 / (nf * nf));
                assert!(residual_d2(&j, n).abs() <= 1e-12 * e3);
                assert!((residual_d1(&j, n) - e3).abs() <= 1e-12 * e3 * nf * nf);
                assert_eq!(residual_limit(&j), 0.0);
            }
        }
    }

    #[test]
    fn d1_at_n_one_is_single_term() {
        assert_eq!(ThreeTerm::d1(1).coeffs, [1.0, 0.0, 0.0]);
        let j = jet(1.5, 0.3, -0.2, 2.0);
        assert_eq!(residual_d1(&j, 1), 2.0 * 1.5 * 1.5);
    }

    #[test]
    fn large_n_approaches_limit() {
        let j = jet(0.4, -1.3, 0.9, 2.2);
        let n = 1_000_000u32;
        let diff = (residual_b(&j, n) - residual_limit(&j)).abs();
        let y2c = j.y2.powi(3).abs();
        assert!(diff <= 3e-12 * y2c);
        let nf = n as f64;
        assert!((diff - 2.0 / (nf * nf) * y2c).abs() <= 1e-15 * y2c.max(1.0));
    }

    #[test]
    fn homogeneity_in_amplitude() {
        let j = jet(0.4, -1.3, 0.9, 2.2);
        for lambda in [0.5, 3.0, -2.0] {
            let lhs = residual_b(&j.scaled(lambda), 5);
            let rhs = lambda.powi(3) * residual_b(&j, 5);
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
        }
    }

    #[test]
    fn rubel_residual_matches_expanded_form() {
        let j = jet(0.7, -0.4, 1.1, 0.3);
        let (a, b, c, d) = (j.y1, j.y2, j.y3, j.y4);
        let expected = 3.0 * a.powi(4) * b * d.powi(2) - 4.0 * a.powi(4) * c.powi(2) * d
            + 6.0 * a.powi(3) * b.powi(2) * c * d
            + 24.0 * a.powi(2) * b.powi(4) * d
            - 12.0 * a.powi(3) * b * c.powi(3)
            - 29.0 * a.powi(2) * b.powi(3) * c.powi(2)
            + 12.0 * b.powi(7);
        let got = residual_r(&j);
        assert!((got - expected).abs() <= 1e-12 * residual_r_scale(&j));
    }

    #[test]
    fn floor_prevents_division_by_zero() {
        let p = PointResidual::of_b(&jet(0.0, 0.0, 0.0, 5.0), 4);
        assert_eq!(p.normalized, 0.0);
        assert_eq!(p.scale, 0.0);
    }
}
