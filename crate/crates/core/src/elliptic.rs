//! Jacobi elliptic functions sn, cn, dn and the complete elliptic integral K.
//!
//! **Parameter convention.** Every public function takes the *parameter* `m`
//! (so that `dn² + m·sn² = 1`), not the modulus `k`. The two are related by
//! `m = k²`. Only `0 ≤ m < 1` is supported.
//!
//! Both K(m) and (sn, cn, dn) are computed from the descending AGM / Landen
//! sequence `a₀ = 1, b₀ = √(1−m), c₀ = √m`:
//!
//! ```text
//! a_{k+1} = (a_k + b_k)/2,  b_{k+1} = √(a_k b_k),  c_{k+1} = (a_k − b_k)/2
//! K(m)    = π / (2 a_N)
//! φ_N     = 2^N a_N x,  sin(2φ_{k−1} − φ_k) = (c_k / a_k) sin φ_k
//! sn = sin φ₀, cn = cos φ₀, dn = √(1 − m + m·cn²)
//! ```

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on AGM steps. Convergence is quadratic so this is never reached
/// for m < 1 in double precision.
const MAX_AGM_STEPS: usize = 32;

/// Relative stopping threshold on |a_k − b_k|.
const AGM_TOL: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EllipticError {
    #[error("elliptic parameter m = {0} is outside [0, 1)")]
    ParameterOutOfRange(f64),
    #[error("argument x = {0} is not finite")]
    NonFiniteArgument(f64),
}

/// The elliptic parameter `m ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EllipticParam(f64);

impl EllipticParam {
    /// The parameter used by the S-module construction.
    pub const HALF: EllipticParam = EllipticParam(0.5);
    pub const ZERO: EllipticParam = EllipticParam(0.0);

    pub fn new(m: f64) -> Result<Self, EllipticError> {
        if (0.0..1.0).contains(&m) {
            Ok(Self(m))
        } else {
            Err(EllipticError::ParameterOutOfRange(m))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Complementary parameter `1 − m`.
    #[inline]
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for EllipticParam {
    type Error = EllipticError;
    fn try_from(m: f64) -> Result<Self, Self::Error> {
        Self::new(m)
    }
}

impl From<EllipticParam> for f64 {
    fn from(m: EllipticParam) -> f64 {
        m.0
    }
}

/// Values of (sn, cn, dn) at a common argument and parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticTriple {
    pub s: f64,
    pub c: f64,
    pub d: f64,
}

impl EllipticTriple {
    pub const ORIGIN: EllipticTriple = EllipticTriple { s: 0.0, c: 1.0, d: 1.0 };

    /// `sn² + cn² − 1`
    pub fn pythagorean_defect(&self) -> f64 {
        self.s * self.s + self.c * self.c - 1.0
    }

    /// `dn² + m·sn² − 1`
    pub fn modular_defect(&self, m: EllipticParam) -> f64 {
        self.d * self.d + m.value() * self.s * self.s - 1.0
    }
}

/// The AGM sequence for a given parameter. `ratios[k] = c_k / a_k` for
/// `k = 1..=steps`; `a_n` is the converged mean.
struct AgmSequence {
    ratios: [f64; MAX_AGM_STEPS + 1],
    steps: usize,
    a_n: f64,
}

impl AgmSequence {
    fn new(m: EllipticParam) -> Self {
        let mut ratios = [0.0; MAX_AGM_STEPS + 1];
        let mut a = 1.0_f64;
        let mut b = m.complement().sqrt();
        let mut steps = 0;
        while steps < MAX_AGM_STEPS && (a - b).abs() > AGM_TOL * a {
            let c = 0.5 * (a - b);
            let a_next = 0.5 * (a + b);
            b = (a * b).sqrt();
            a = a_next;
            steps += 1;
            ratios[steps] = c / a;
        }
        AgmSequence { ratios, steps, a_n: a }
    }
}

/// Complete elliptic integral of the first kind, the quarter period of sn and cn.
///
/// `K(0) = π/2`, strictly increasing in `m`, unbounded as `m → 1`.
pub fn complete_k(m: EllipticParam) -> f64 {
    if m.value() == 0.0 {
        return FRAC_PI_2;
    }
    FRAC_PI_2 / AgmSequence::new(m).a_n
}

/// Evaluates `(sn, cn, dn)(x | m)`.
///
/// The argument is first reduced modulo the real period `4K(m)`. For `m = 0`
/// this returns `(sin x, cos x, 1)` using the platform trigonometric
/// functions directly, so no reduction error enters.
pub fn jacobi_sncndn(x: f64, m: EllipticParam) -> Result<EllipticTriple, EllipticError> {
    if !x.is_finite() {
        return Err(EllipticError::NonFiniteArgument(x));
    }
    if m.value() == 0.0 {
        let (s, c) = x.sin_cos();
        return Ok(EllipticTriple { s, c, d: 1.0 });
    }
    let agm = AgmSequence::new(m);
    let quarter = FRAC_PI_2 / agm.a_n;
    let period = 4.0 * quarter;
    let reduced = x - period * (x / period).round();
    Ok(sncndn_reduced(reduced, m, &agm))
}

fn sncndn_reduced(x: f64, m: EllipticParam, agm: &AgmSequence) -> EllipticTriple {
    if agm.steps == 0 {
        // m below the AGM resolution; the sequence is already converged.
        let (s, c) = x.sin_cos();
        let d = (m.complement() + m.value() * c * c).sqrt();
        return EllipticTriple { s, c, d };
    }
    // Backward recurrence of amplitudes φ_N → φ_0.
    let mut phi = (1u64 << agm.steps) as f64 * agm.a_n * x;
    for k in (1..=agm.steps).rev() {
        phi = 0.5 * (phi + (agm.ratios[k] * phi.sin()).asin());
    }
    let (s, c) = phi.sin_cos();
    // cos φ₀ / cos(φ₁ − φ₀) is 0/0 at odd multiples of K; use the sum of
    // nonnegative terms (1 − m) + m·cn² = 1 − m·sn² instead.
    let d = (m.complement() + m.value() * c * c).sqrt();
    EllipticTriple { s, c, d }
}

/// `(sn′, cn′, dn′) = (cn·dn, −sn·dn, −m·sn·cn)`, computed from the triple.
pub fn jacobi_derivatives(t: &EllipticTriple, m: EllipticParam) -> (f64, f64, f64) {
    (t.c * t.d, -t.s * t.d, -m.value() * t.s * t.c)
}
