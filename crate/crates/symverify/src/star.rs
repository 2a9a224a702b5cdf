//! Substitution of `g = cnⁿ` into
//!
//! ```text
//! (*)  n·g‴·g² + b·g″·g′·g + c·g′³
//! ```
//!
//! and reduction to `monomial × (A0 + A2·cn² + A4·cn⁴)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::element::{ElementPoly, ElementRing, Exponent, Monomial};
use crate::poly::{NLaurent, NRatio, PolyN};
use crate::SymError;

/// `g, g′, g″, g‴` in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct GDerivatives {
    pub g: ElementPoly,
    pub g1: ElementPoly,
    pub g2: ElementPoly,
    pub g3: ElementPoly,
}

/// Exact reduced forms of the first derivatives of `g = cnⁿ(·, m)`.
pub fn symbolic_g_derivatives(ring: &ElementRing) -> GDerivatives {
    let g = ElementPoly::c_exp(ring.exponent().g_exponent());
    let g1 = ring.derive(&g);
    let g2 = ring.derive(&g1);
    let g3 = ring.derive(&g2);
    GDerivatives { g, g1, g2, g3 }
}

/// Coefficients of `cn⁰, cn², cn⁴` in the reduced cofactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCoeffs {
    pub a0: PolyN,
    pub a2: PolyN,
    pub a4: PolyN,
}

impl IdentityCoeffs {
    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a2.is_zero() && self.a4.is_zero()
    }

    pub fn as_array(&self) -> [&PolyN; 3] {
        [&self.a0, &self.a2, &self.a4]
    }

    fn map(&self, f: impl Fn(&PolyN) -> PolyN) -> Self {
        IdentityCoeffs { a0: f(&self.a0), a2: f(&self.a2), a4: f(&self.a4) }
    }

    /// `Some(r)` with `self = r · other` for a rational function `r`; `None`
    /// when not proportional. Two zero triples give `Some(0)`.
    pub fn ratio_to(&self, other: &IdentityCoeffs) -> Option<NRatio> {
        let pairs: Vec<(&PolyN, &PolyN)> = self.as_array().into_iter().zip(other.as_array()).collect();
        let mut ratio: Option<NRatio> = None;
        for (a, b) in &pairs {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (false, true) => return None,
                (true, false) if !self.is_zero() => return None,
                _ => {}
            }
            let r = NRatio::new((*a).clone(), (*b).clone());
            match &ratio {
                None => ratio = Some(r),
                Some(prev) if prev.same_as(&r) => {}
                Some(_) => return None,
            }
        }
        Some(ratio.unwrap_or_else(|| NRatio::poly(PolyN::zero())))
    }
}

impl fmt::Display for IdentityCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*cn^2 + ({})*cn^4", self.a0, self.a2, self.a4)
    }
}

/// Coefficients `b` and `c` of (*) as rational functions `num / nᵏ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCoeffs {
    pub b: NLaurent,
    pub c: NLaurent,
}

impl StarCoeffs {
    pub fn new(b: NLaurent, c: NLaurent) -> Self {
        StarCoeffs { b, c }
    }

    pub fn constants(b: BigRational, c: BigRational) -> Self {
        StarCoeffs { b: NLaurent::constant(b), c: NLaurent::constant(c) }
    }

    /// Power of `n` that clears both denominators.
    pub fn clearing_power(&self) -> u32 {
        self.b.den_pow.max(self.c.den_pow)
    }

    /// `nᵏ·b` and `nᵏ·c` for the clearing power `k`.
    fn cleared(&self) -> (PolyN, PolyN) {
        let k = self.clearing_power();
        (
            &self.b.num * &PolyN::n_pow(k - self.b.den_pow),
            &self.c.num * &PolyN::n_pow(k - self.c.den_pow),
        )
    }
}

impl fmt::Display for StarCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b = {}, c = {}", self.b, self.c)
    }
}

/// The reduced form of (*).
#[derive(Debug, Clone)]
pub struct StarReduction {
    /// `k` such that the expression was multiplied by `nᵏ`.
    pub cleared_n_power: u32,
    /// Power `v` of `n` divided out of every coefficient.
    pub n_factor: u32,
    pub monomial: Monomial,
    pub coeffs: IdentityCoeffs,
    /// The full reduced expression, before factoring.
    pub expression: ElementPoly,
}

impl StarReduction {
    /// Whether the cofactor, and hence (*), is identically zero.
    pub fn vanishes(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn factor_string(&self) -> String {
        match self.n_factor {
            0 => self.monomial.to_string(),
            1 => format!("n*{}", self.monomial),
            v => format!("n^{v}*{}", self.monomial),
        }
    }
}

/// Substitutes `g = cnⁿ` into (*) and factors the result.
pub fn reduce_star(ring: &ElementRing, coeffs: &StarCoeffs) -> Result<StarReduction, SymError> {
    let exponent = ring.exponent();
    let (b, c) = coeffs.cleared();
    let (b, c) = (exponent.specialize(&b), exponent.specialize(&c));
    let k = coeffs.clearing_power();
    let n = exponent.as_poly();
    let n_cleared = &n * &exponent.specialize(&PolyN::n_pow(k));

    let GDerivatives { g, g1, g2, g3 } = symbolic_g_derivatives(ring);
    let t1 = ring.mul(&ring.mul(&g3, &g), &g).scale(&n_cleared);
    let t2 = ring.mul(&ring.mul(&g2, &g1), &g).scale(&b);
    let t3 = ring.mul(&ring.mul(&g1, &g1), &g1).scale(&c);
    let expression = ring.reduce(&(&(&t1 + &t2) + &t3));

    if expression.is_zero() {
        return Ok(StarReduction {
            cleared_n_power: k,
            n_factor: 0,
            monomial: Monomial::ONE,
            coeffs: IdentityCoeffs { a0: PolyN::zero(), a2: PolyN::zero(), a4: PolyN::zero() },
            expression,
        });
    }

    let (monomial, quotient) = ring.split_common_monomial(&expression)?;
    let mut by_power = [PolyN::zero(), PolyN::zero(), PolyN::zero()];
    for (m, v) in quotient.terms() {
        let slot = match (m.s, m.c.n_mult, m.c.offset, m.d) {
            (0, 0, 0, 0) => 0,
            (0, 0, 2, 0) => 1,
            (0, 0, 4, 0) => 2,
            _ => {
                return Err(SymError::Structural(format!(
                    "cofactor term {m} is not in span(1, cn^2, cn^4); expression = {expression}"
                )))
            }
        };
        by_power[slot] = v.clone();
    }
    let n_factor = match exponent {
        Exponent::Integer(_) => 0,
        Exponent::Symbolic => by_power.iter().filter_map(PolyN::n_valuation).min().unwrap_or(0),
    };
    let [a0, a2, a4] = by_power;
    let coeffs = IdentityCoeffs { a0, a2, a4 }.map(|p| p.div_n_pow(n_factor));
    Ok(StarReduction { cleared_n_power: k, n_factor, monomial, coeffs, expression })
}

/// The closed-form quadratic in `cn²`, multiplied by the same `nᵏ` that
/// clears the denominators of `b` and `c`:
///
/// ```text
/// A0 =  (1−m)·[2 − b + (b+c−3)·n + n²]
/// A2 =  (2m−1)·n·(b + c + n)
/// A4 = −m·[2 + b + (b+c+3)·n + n²]
/// ```
pub fn closed_form_quadratic(m: &BigRational, exponent: Exponent, coeffs: &StarCoeffs) -> IdentityCoeffs {
    let k = coeffs.clearing_power();
    let (b, c) = coeffs.cleared();
    let nk = PolyN::n_pow(k);
    let n = PolyN::n();
    let n2 = &n * &n;
    let konst = |v: i64| &nk * &PolyN::from_int(v);
    let bc = &b + &c;
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());

    let a0 = &(&(&konst(2) - &b) + &(&n * &(&bc - &konst(3)))) + &(&nk * &n2);
    let a2 = &n * &(&bc + &(&nk * &n));
    let a4 = &(&(&konst(2) + &b) + &(&n * &(&bc + &konst(3)))) + &(&nk * &n2);

    let raw = IdentityCoeffs {
        a0: a0.scale(&(&one - m)),
        a2: a2.scale(&(&two * m - &one)),
        a4: a4.scale(&-m.clone()),
    };
    raw.map(|p| exponent.specialize(p))
}

/// Ratio of the reduced cofactor to [`closed_form_quadratic`].
pub fn proportionality(ring: &ElementRing, coeffs: &StarCoeffs) -> Result<Option<NRatio>, SymError> {
    let red = reduce_star(ring, coeffs)?;
    let expected = closed_form_quadratic(ring.m(), ring.exponent(), coeffs);
    Ok(red.coeffs.ratio_to(&expected))
}

/// True when `r` is a nonzero rational constant.
pub fn is_nonzero_constant(r: &NRatio) -> bool {
    r.as_constant().is_some_and(|c| !c.is_zero())
}
