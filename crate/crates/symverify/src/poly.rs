//! Univariate polynomials in the exponent symbol `n` with exact rational
//! coefficients, and ratios of them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `Σ cᵢ nⁱ`, lowest degree first, never with a trailing zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyN {
    coeffs: Vec<BigRational>,
}

impl PolyN {
    pub fn zero() -> Self {
        PolyN { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The symbol `n` itself.
    pub fn n() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(int(v))
    }

    /// `Σ coeffs[i]·nⁱ` from small integers.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyN { coeffs }
    }

    /// `nᵏ`
    pub fn n_pow(k: u32) -> Self {
        let mut coeffs = vec![BigRational::zero(); k as usize + 1];
        coeffs[k as usize] = BigRational::one();
        PolyN { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest `v` with `nᵛ | self`; `None` for the zero polynomial.
    pub fn n_valuation(&self) -> Option<u32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|v| v as u32)
    }

    /// Exact division by `nᵏ`; requires `k ≤ n_valuation`.
    pub fn div_n_pow(&self, k: u32) -> Self {
        debug_assert!(self.is_zero() || self.n_valuation().unwrap() >= k);
        Self::from_coeffs(self.coeffs.iter().skip(k as usize).cloned().collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_f64(&self, n: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * n + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for PolyN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("n")?,
                _ => write!(f, "n^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolyN {
    type Output = PolyN;
    fn add(self, rhs: &PolyN) -> PolyN {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyN::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyN {
    type Output = PolyN;
    fn sub(self, rhs: &PolyN) -> PolyN {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyN::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &PolyN {
    type Output = PolyN;
    fn mul(self, rhs: &PolyN) -> PolyN {
        if self.is_zero() || rhs.is_zero() {
            return PolyN::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyN::from_coeffs(out)
    }
}

impl Neg for &PolyN {
    type Output = PolyN;
    fn neg(self) -> PolyN {
        PolyN { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for PolyN {
            type Output = PolyN;
            fn $method(self, rhs: PolyN) -> PolyN {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&PolyN> for PolyN {
            type Output = PolyN;
            fn $method(self, rhs: &PolyN) -> PolyN {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyN {
    type Output = PolyN;
    fn neg(self) -> PolyN {
        -&self
    }
}

/// `num / den` as a rational function of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NRatio {
    pub num: PolyN,
    pub den: PolyN,
}

/// Behaviour of an [`NRatio`] as `n → ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(BigRational),
    Unbounded,
}

impl NRatio {
    pub fn new(num: PolyN, den: PolyN) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        NRatio { num, den }
    }

    pub fn poly(p: PolyN) -> Self {
        NRatio { num: p, den: PolyN::one() }
    }

    /// `p / nᵏ`
    pub fn over_n_pow(p: PolyN, k: u32) -> Self {
        NRatio { num: p, den: PolyN::n_pow(k) }
    }

    /// Leading-term limit as `n → ∞`.
    pub fn limit(&self) -> Limit {
        let dd = self.den.degree().expect("nonzero denominator");
        match self.num.degree() {
            None => Limit::Finite(BigRational::zero()),
            Some(dn) => match dn.cmp(&dd) {
                Ordering::Less => Limit::Finite(BigRational::zero()),
                Ordering::Equal => Limit::Finite(self.num.leading() / self.den.leading()),
                Ordering::Greater => Limit::Unbounded,
            },
        }
    }

    /// Same rational function (cross-multiplication).
    pub fn same_as(&self, other: &NRatio) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn mul(&self, other: &NRatio) -> NRatio {
        NRatio { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    /// Cancels a common power of `n` and makes the denominator monic.
    pub fn simplified(&self) -> NRatio {
        if self.num.is_zero() {
            return NRatio::poly(PolyN::zero());
        }
        if let Some(c) = self.as_constant() {
            return NRatio::poly(PolyN::constant(c));
        }
        let v = self.num.n_valuation().unwrap_or(0).min(self.den.n_valuation().unwrap_or(0));
        let lead = self.den.leading().recip();
        NRatio { num: self.num.div_n_pow(v).scale(&lead), den: self.den.div_n_pow(v).scale(&lead) }
    }

    /// `Some(c)` when the ratio is the constant `c`.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        let c = self.num.leading() / self.den.leading();
        (self.num == self.den.scale(&c)).then_some(c)
    }
}

impl fmt::Display for NRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == PolyN::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// A Laurent monomial denominator: `num / nᵏ`. This is the only shape of
/// rational coefficient the reduction needs, since `1/n` is cleared by
/// multiplying through by a power of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NLaurent {
    pub num: PolyN,
    pub den_pow: u32,
}

impl NLaurent {
    pub fn poly(num: PolyN) -> Self {
        NLaurent { num, den_pow: 0 }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::poly(PolyN::constant(c))
    }

    pub fn over_n_pow(num: PolyN, den_pow: u32) -> Self {
        NLaurent { num, den_pow }
    }

    pub fn as_ratio(&self) -> NRatio {
        NRatio::over_n_pow(self.num.clone(), self.den_pow)
    }

    /// `self + c` for a rational constant `c`.
    pub fn plus_constant(&self, c: &BigRational) -> Self {
        let shifted = &PolyN::n_pow(self.den_pow) * &PolyN::constant(c.clone());
        NLaurent { num: &self.num + &shifted, den_pow: self.den_pow }
    }
}

impl fmt::Display for NLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den_pow {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "({}) / n", self.num),
            k => write!(f, "({}) / n^{k}", self.num),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(PolyN::from_ints(&[1, -3, 2]).to_string(), "2*n^2 - 3*n + 1");
        assert_eq!(PolyN::from_ints(&[0, -1]).to_string(), "-n");
        assert_eq!(PolyN::zero().to_string(), "0");
        assert_eq!(PolyN::constant(rat(-1, 2)).to_string(), "-1/2");
        assert_eq!((&PolyN::n() * &PolyN::constant(rat(3, 2))).to_string(), "3/2*n");
    }

    #[test]
    fn arithmetic() {
        let a = PolyN::from_ints(&[1, 1]);
        let b = PolyN::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, PolyN::from_ints(&[-1, 0, 1]));
        assert_eq!(&a - &a, PolyN::zero());
        assert_eq!((&a + &b).degree(), Some(1));
        assert_eq!(PolyN::from_ints(&[0, 0, 3, 1]).n_valuation(), Some(2));
        assert_eq!(PolyN::from_ints(&[0, 0, 3, 1]).div_n_pow(2), PolyN::from_ints(&[3, 1]));
        assert_eq!(a.eval(&int(4)), int(5));
    }

    #[test]
    fn limits() {
        let r = NRatio::over_n_pow(PolyN::from_ints(&[-2, 0, 2]), 2);
        assert_eq!(r.limit(), Limit::Finite(int(2)));
        assert_eq!(NRatio::over_n_pow(PolyN::from_ints(&[1]), 1).limit(), Limit::Finite(int(0)));
        assert_eq!(NRatio::poly(PolyN::n()).limit(), Limit::Unbounded);
    }

    #[test]
    fn constant_ratio_detection() {
        let p = PolyN::from_ints(&[1, 2]);
        let r = NRatio::new(p.scale(&rat(-3, 4)), p.clone());
        assert_eq!(r.as_constant(), Some(rat(-3, 4)));
        assert_eq!(NRatio::new(PolyN::n(), p).as_constant(), None);
    }
}
