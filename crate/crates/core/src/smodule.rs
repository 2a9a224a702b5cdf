//! S-modules: smooth monotone transitions built from `g(u) = cnⁿ(u, 1/2)`.
//!
//! On its host interval `[x_lo, x_hi]` an S-module is
//!
//! ```text
//! Y(x) = δ + γ ∫_{x_lo}^{x} g(α t + β) dt,     α x_lo + β = −K,  α x_hi + β = K
//! ```
//!
//! and it is constant outside. `cn` has a simple zero at `±K`, so `g` vanishes
//! there together with its first `n − 1` derivatives; the zero extension is
//! therefore `Cⁿ` and still solves the ODE.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elliptic::{complete_k, jacobi_sncndn, EllipticParam, EllipticTriple};
use crate::quadrature::GaussLegendre;

/// Smallest admissible exponent.
pub const MIN_EXPONENT: u32 = 4;
/// Largest exponent accepted by the constructive path.
pub const MAX_EXPONENT: u32 = 16;
/// Default exponent for transitions.
pub const DEFAULT_EXPONENT: u32 = 4;
/// Highest derivative order of `g` (and of `Y`) that is available in closed form.
pub const MAX_ORDER: usize = 4;

const TABLE_CELLS: usize = 2048;
const GL_ORDER: usize = 20;
const GL_PANELS: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SModuleError {
    #[error("exponent n = {0} is outside {MIN_EXPONENT}..={MAX_EXPONENT}")]
    ExponentOutOfRange(u32),
    #[error("derivative order {0} is not supported (max {MAX_ORDER})")]
    UnsupportedOrder(usize),
    #[error("empty or reversed interval [{0}, {1}]")]
    BadInterval(f64, f64),
    #[error("non-finite value in transition endpoints")]
    NonFinite,
    #[error("inconsistent placement: {0}")]
    Inconsistent(String),
}

/// Closed-form derivatives of `cnⁿ(u | m)` written as polynomials in `cn`.
///
/// Even orders are `P_k(cn)`, odd orders are `sn·dn·Q_k(cn)`. Stepping uses
/// only the derivative rules of sn, cn, dn and the two Pythagorean identities:
///
/// ```text
/// Q_{k+1} = −P_k'
/// P_{k+1} = c(1 − 2m + 2mc²) Q_k − (1 − c²)(1 − m + mc²) Q_k'
/// ```
#[derive(Debug, Clone)]
pub struct CnPowerJet {
    n: u32,
    m: EllipticParam,
    // polys[k][e] is the coefficient of c^e in the order-k polynomial.
    polys: Vec<Vec<f64>>,
}

impl CnPowerJet {
    /// Derivatives up to `max_order` of `cnⁿ`. Requires `max_order ≤ n` so that
    /// every exponent stays nonnegative.
    pub fn new(n: u32, m: EllipticParam, max_order: usize) -> Self {
        assert!(max_order <= n as usize, "order {max_order} exceeds exponent {n}");
        let mv = m.value();
        let mut p = vec![0.0; n as usize + 1];
        p[n as usize] = 1.0;
        let mut polys = vec![p];
        for k in 0..max_order {
            let prev = &polys[k];
            let next = if k % 2 == 0 {
                derivative(prev).into_iter().map(|v| -v).collect()
            } else {
                let dq = derivative(prev);
                let mut out = vec![0.0; prev.len() + 3];
                for (e, &q) in prev.iter().enumerate() {
                    out[e + 1] += (1.0 - 2.0 * mv) * q;
                    out[e + 3] += 2.0 * mv * q;
                }
                for (e, &q) in dq.iter().enumerate() {
                    out[e] -= (1.0 - mv) * q;
                    out[e + 2] -= (2.0 * mv - 1.0) * q;
                    out[e + 4] += mv * q;
                }
                trim(out)
            };
            polys.push(next);
        }
        CnPowerJet { n, m, polys }
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn param(&self) -> EllipticParam {
        self.m
    }

    pub fn max_order(&self) -> usize {
        self.polys.len() - 1
    }

    /// Coefficients of the order-`k` polynomial in `cn`, lowest power first.
    pub fn poly(&self, order: usize) -> &[f64] {
        &self.polys[order]
    }

    /// The order-`k` derivative of `cnⁿ` at the point described by `t`.
    pub fn eval(&self, t: &EllipticTriple, order: usize) -> f64 {
        let p = horner(&self.polys[order], t.c);
        if order % 2 == 1 {
            t.s * t.d * p
        } else {
            p
        }
    }

    /// All orders `0..=max_order` at once.
    pub fn eval_all(&self, t: &EllipticTriple, out: &mut [f64]) {
        for (k, slot) in out.iter_mut().enumerate().take(self.polys.len()) {
            *slot = self.eval(t, k);
        }
    }
}

fn derivative(p: &[f64]) -> Vec<f64> {
    if p.len() <= 1 {
        return vec![0.0];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(e, &v)| e as f64 * v)
        .collect()
}

fn trim(mut p: Vec<f64>) -> Vec<f64> {
    while p.len() > 1 && *p.last().unwrap() == 0.0 {
        p.pop();
    }
    p
}

fn horner(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

/// `∫_{−K}^{K} cnⁿ(t, 1/2) dt`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Mass(f64);

impl Mass {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Everything about `g = cnⁿ(·, 1/2)` that does not depend on placement:
/// the half-width `K`, closed-form derivatives, and a cumulative integral table.
#[derive(Debug)]
pub struct BumpProfile {
    n: u32,
    k: f64,
    jet: CnPowerJet,
    h: f64,
    cumulative: Vec<f64>,
    slopes: Vec<f64>,
}

impl BumpProfile {
    fn build(n: u32) -> Self {
        let m = EllipticParam::HALF;
        let k = complete_k(m);
        let jet = CnPowerJet::new(n, m, MAX_ORDER);
        let gl = GaussLegendre::new(GL_ORDER);
        let h = 2.0 * k / TABLE_CELLS as f64;
        let node = |i: usize| if i == TABLE_CELLS { k } else { -k + h * i as f64 };
        let g = |u: f64| {
            let t = jacobi_sncndn(u, m).expect("finite node");
            jet.eval(&t, 0)
        };

        let mut cumulative = Vec::with_capacity(TABLE_CELLS + 1);
        let mut slopes = Vec::with_capacity(TABLE_CELLS + 1);
        let mut acc = 0.0;
        cumulative.push(0.0);
        for i in 0..TABLE_CELLS {
            acc += gl.integrate(g, node(i), node(i + 1), 1);
            cumulative.push(acc);
        }
        for i in 0..=TABLE_CELLS {
            slopes.push(g(node(i)).max(0.0));
        }
        fritsch_carlson(&cumulative, &mut slopes, h);
        BumpProfile { n, k, jet, h, cumulative, slopes }
    }

    /// Shared profile for exponent `n`, built on first use.
    pub fn get(n: u32) -> Result<Arc<BumpProfile>, SModuleError> {
        static PROFILES: [OnceLock<Arc<BumpProfile>>; (MAX_EXPONENT - MIN_EXPONENT + 1) as usize] =
            [const { OnceLock::new() }; (MAX_EXPONENT - MIN_EXPONENT + 1) as usize];
        check_exponent(n)?;
        let slot = &PROFILES[(n - MIN_EXPONENT) as usize];
        Ok(slot.get_or_init(|| Arc::new(BumpProfile::build(n))).clone())
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    /// `K(1/2)`, half the support width.
    pub fn half_width(&self) -> f64 {
        self.k
    }

    pub fn mass(&self) -> Mass {
        Mass(self.cumulative[TABLE_CELLS])
    }

    pub fn jet(&self) -> &CnPowerJet {
        &self.jet
    }

    /// `g⁽ᵏ⁾(u)` with zero extension outside `[−K, K]`.
    pub fn derivative(&self, u: f64, order: usize) -> Result<f64, SModuleError> {
        if order > MAX_ORDER {
            return Err(SModuleError::UnsupportedOrder(order));
        }
        if !(u.abs() <= self.k) {
            return Ok(0.0);
        }
        let t = jacobi_sncndn(u, EllipticParam::HALF).map_err(|_| SModuleError::NonFinite)?;
        Ok(self.jet.eval(&t, order))
    }

    /// `∫_{−K}^{u} g` from the cumulative table (monotone cubic Hermite).
    pub fn partial_integral(&self, u: f64) -> f64 {
        if u <= -self.k {
            return 0.0;
        }
        if u >= self.k {
            return self.cumulative[TABLE_CELLS];
        }
        let pos = (u + self.k) / self.h;
        let i = (pos.floor() as usize).min(TABLE_CELLS - 1);
        let t = (pos - i as f64).clamp(0.0, 1.0);
        let (f0, f1) = (self.cumulative[i], self.cumulative[i + 1]);
        let (d0, d1) = (self.slopes[i], self.slopes[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = 3.0 * t2 - 2.0 * t3;
        let h11 = t3 - t2;
        f0 + (f1 - f0) * h01 + self.h * (d0 * h10 + d1 * h11)
    }

    /// `∫_{−K}^{u} g` by direct Gauss–Legendre quadrature (20 points, 8 panels).
    pub fn partial_integral_direct(&self, u: f64) -> f64 {
        let u = u.clamp(-self.k, self.k);
        let gl = GaussLegendre::new(GL_ORDER);
        gl.integrate(
            |v| {
                let t = jacobi_sncndn(v, EllipticParam::HALF).expect("finite");
                self.jet.eval(&t, 0)
            },
            -self.k,
            u,
            GL_PANELS,
        )
    }
}

/// Limits Hermite slopes so every cell interpolant is monotone.
fn fritsch_carlson(values: &[f64], slopes: &mut [f64], h: f64) {
    for i in 0..values.len() - 1 {
        let secant = (values[i + 1] - values[i]) / h;
        if secant <= 0.0 {
            slopes[i] = 0.0;
            slopes[i + 1] = 0.0;
            continue;
        }
        let a = slopes[i] / secant;
        let b = slopes[i + 1] / secant;
        let r = a * a + b * b;
        if r > 9.0 {
            let tau = 3.0 / r.sqrt();
            slopes[i] = tau * a * secant;
            slopes[i + 1] = tau * b * secant;
        }
    }
}

fn check_exponent(n: u32) -> Result<(), SModuleError> {
    if (MIN_EXPONENT..=MAX_EXPONENT).contains(&n) {
        Ok(())
    } else {
        Err(SModuleError::ExponentOutOfRange(n))
    }
}

/// Order-`order` derivative of `cnⁿ(·, 1/2)` at `x`, zero outside `[−K, K]`.
pub fn eval_g_derivs(x: f64, n: u32, order: usize) -> Result<f64, SModuleError> {
    BumpProfile::get(n)?.derivative(x, order)
}

/// `M(n) = ∫_{−K}^{K} cnⁿ(t, 1/2) dt`.
pub fn mass(n: u32) -> Result<Mass, SModuleError> {
    Ok(BumpProfile::get(n)?.mass())
}

/// One placed transition. Immutable; evaluation is read-only.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "SModuleRecord", into = "SModuleRecord")]
pub struct SModule {
    n: u32,
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    x_lo: f64,
    x_hi: f64,
    profile: Arc<BumpProfile>,
}

/// Wire form of an [`SModule`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SModuleRecord {
    pub n: u32,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub x_lo: f64,
    pub x_hi: f64,
}

impl From<SModule> for SModuleRecord {
    fn from(s: SModule) -> Self {
        s.record()
    }
}

impl TryFrom<SModuleRecord> for SModule {
    type Error = SModuleError;

    fn try_from(r: SModuleRecord) -> Result<Self, Self::Error> {
        let profile = BumpProfile::get(r.n)?;
        let fields = [r.alpha, r.beta, r.gamma, r.delta, r.x_lo, r.x_hi];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(SModuleError::NonFinite);
        }
        if !(r.x_lo < r.x_hi) {
            return Err(SModuleError::BadInterval(r.x_lo, r.x_hi));
        }
        if !(r.alpha > 0.0) {
            return Err(SModuleError::Inconsistent(format!("alpha = {} must be positive", r.alpha)));
        }
        let k = profile.half_width();
        let tol = 1e-10 * (1.0f64).max(r.beta.abs()).max((r.alpha * r.x_lo).abs());
        let lo = r.alpha * r.x_lo + r.beta;
        let hi = r.alpha * r.x_hi + r.beta;
        if (lo + k).abs() > tol || (hi - k).abs() > tol {
            return Err(SModuleError::Inconsistent(format!(
                "alpha*x + beta maps [{}, {}] to [{lo}, {hi}], expected [-{k}, {k}]",
                r.x_lo, r.x_hi
            )));
        }
        Ok(SModule {
            n: r.n,
            alpha: r.alpha,
            beta: r.beta,
            gamma: r.gamma,
            delta: r.delta,
            x_lo: r.x_lo,
            x_hi: r.x_hi,
            profile,
        })
    }
}

impl std::fmt::Debug for SModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.record().fmt(f)
    }
}

impl PartialEq for SModule {
    fn eq(&self, other: &Self) -> bool {
        self.record() == other.record()
    }
}

impl SModule {
    /// Transition on `[x0, x1]` from `y0` to `y1`. Equal endpoint values give
    /// the constant module (`γ = 0`).
    pub fn transition(x0: f64, x1: f64, y0: f64, y1: f64, n: u32) -> Result<Self, SModuleError> {
        let profile = BumpProfile::get(n)?;
        if ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(SModuleError::NonFinite);
        }
        if !(x0 < x1) {
            return Err(SModuleError::BadInterval(x0, x1));
        }
        let k = profile.half_width();
        let alpha = 2.0 * k / (x1 - x0);
        let beta = -k - alpha * x0;
        let gamma = if y0 == y1 {
            0.0
        } else {
            alpha * (y1 - y0) / profile.mass().value()
        };
        Ok(SModule { n, alpha, beta, gamma, delta: y0, x_lo: x0, x_hi: x1, profile })
    }

    pub fn record(&self) -> SModuleRecord {
        SModuleRecord {
            n: self.n,
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            delta: self.delta,
            x_lo: self.x_lo,
            x_hi: self.x_hi,
        }
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn x_lo(&self) -> f64 {
        self.x_lo
    }
    pub fn x_hi(&self) -> f64 {
        self.x_hi
    }
    pub fn profile(&self) -> &BumpProfile {
        &self.profile
    }

    pub fn is_constant(&self) -> bool {
        self.gamma == 0.0
    }

    /// `Y(x_lo)`.
    pub fn start_value(&self) -> f64 {
        self.delta
    }

    /// `Y(x_hi) = δ + γ·M(n)/α`.
    pub fn end_value(&self) -> f64 {
        self.delta + self.gamma * self.profile.mass().value() / self.alpha
    }

    /// Support coordinate `u = αx + β`, computed as `α(x − x_lo) − K`.
    #[inline]
    pub fn local_coordinate(&self, x: f64) -> f64 {
        self.alpha * (x - self.x_lo) - self.profile.half_width()
    }

    /// The order-`order` derivative of `Y` at `x`.
    pub fn eval(&self, x: f64, order: usize) -> Result<f64, SModuleError> {
        if order > MAX_ORDER {
            return Err(SModuleError::UnsupportedOrder(order));
        }
        Ok(self.jet(x)[order])
    }

    /// `[Y, Y′, Y″, Y‴, Y⁗]` at `x`. Derivatives are exactly zero outside the host interval.
    pub fn jet(&self, x: f64) -> [f64; MAX_ORDER + 1] {
        let mut out = [0.0; MAX_ORDER + 1];
        if x < self.x_lo {
            out[0] = self.start_value();
            return out;
        }
        if x > self.x_hi {
            out[0] = self.end_value();
            return out;
        }
        let u = self.local_coordinate(x).clamp(-self.profile.k, self.profile.k);
        out[0] = if x == self.x_hi {
            self.end_value()
        } else {
            self.delta + self.gamma / self.alpha * self.profile.partial_integral(u)
        };
        if self.gamma == 0.0 {
            return out;
        }
        let t = jacobi_sncndn(u, EllipticParam::HALF).expect("finite coordinate");
        let mut g = [0.0; MAX_ORDER];
        for (k, slot) in g.iter_mut().enumerate() {
            *slot = self.profile.jet.eval(&t, k);
        }
        let mut scale = self.gamma;
        for k in 1..=MAX_ORDER {
            out[k] = scale * g[k - 1];
            scale *= self.alpha;
        }
        out
    }

    /// `Y(x)` only; cheaper than [`SModule::jet`].
    pub fn value(&self, x: f64) -> f64 {
        if x < self.x_lo {
            self.start_value()
        } else if x >= self.x_hi {
            self.end_value()
        } else {
            let u = self.local_coordinate(x).clamp(-self.profile.k, self.profile.k);
            self.delta + self.gamma / self.alpha * self.profile.partial_integral(u)
        }
    }
}

/// Builds the transition from `(x0, y0)` to `(x1, y1)`.
pub fn make_transition(x0: f64, x1: f64, y0: f64, y1: f64, n: u32) -> Result<SModule, SModuleError> {
    SModule::transition(x0, x1, y0, y1, n)
}
