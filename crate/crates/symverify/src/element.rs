//! Polynomials in the generators `s = sn`, `c = cn`, `d = dn` with
//! coefficients in `Q[n]`, reduced modulo
//!
//! ```text
//! s² → 1 − c²,    d² → 1 − m + m·c²
//! ```
//!
//! The exponent of `c` may contain the symbol `n` (so `g = cⁿ` can be handled
//! for symbolic `n`): it is stored as `k·n + offset`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::PolyN;
use crate::SymError;

/// Exponent `n_mult·n + offset` of `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CExp {
    pub n_mult: u32,
    pub offset: i64,
}

impl CExp {
    pub const ZERO: CExp = CExp { n_mult: 0, offset: 0 };

    pub fn shifted(self, by: i64) -> CExp {
        CExp { n_mult: self.n_mult, offset: self.offset + by }
    }

    fn plus(self, o: CExp) -> CExp {
        CExp { n_mult: self.n_mult + o.n_mult, offset: self.offset + o.offset }
    }

    fn minus(self, o: CExp) -> CExp {
        CExp { n_mult: self.n_mult - o.n_mult, offset: self.offset - o.offset }
    }

    /// The exponent as an element of `Q[n]`, using `n_value` for the symbol.
    fn as_poly(self, n_value: &PolyN) -> PolyN {
        &n_value.scale(&BigRational::from_integer(self.n_mult.into()))
            + &PolyN::constant(BigRational::from_integer(self.offset.into()))
    }
}

impl fmt::Display for CExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.n_mult, self.offset) {
            (0, o) => write!(f, "{o}"),
            (k, 0) => write!(f, "{}n", if k == 1 { String::new() } else { k.to_string() }),
            (k, o) => {
                let lead = if k == 1 { String::new() } else { k.to_string() };
                if o < 0 {
                    write!(f, "{lead}n-{}", -o)
                } else {
                    write!(f, "{lead}n+{o}")
                }
            }
        }
    }
}

/// `sᵃ · c^e · dᵇ`
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub s: u32,
    pub c: CExp,
    pub d: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { s: 0, c: CExp::ZERO, d: 0 };

    pub fn new(s: u32, c: CExp, d: u32) -> Self {
        Monomial { s, c, d }
    }

    /// `c^(k)` for a plain integer power.
    pub fn c_pow(k: i64) -> Self {
        Monomial { s: 0, c: CExp { n_mult: 0, offset: k }, d: 0 }
    }

    pub fn is_canonical(&self) -> bool {
        self.s < 2 && self.d < 2
    }

    fn times(self, o: Monomial) -> Monomial {
        Monomial { s: self.s + o.s, c: self.c.plus(o.c), d: self.d + o.d }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.s {
            0 => {}
            1 => parts.push("sn".to_string()),
            k => parts.push(format!("sn^{k}")),
        }
        if self.c != CExp::ZERO {
            if self.c.n_mult == 0 && self.c.offset == 1 {
                parts.push("cn".to_string());
            } else if self.c.n_mult == 0 && self.c.offset >= 0 {
                parts.push(format!("cn^{}", self.c.offset));
            } else {
                parts.push(format!("cn^({})", self.c));
            }
        }
        match self.d {
            0 => {}
            1 => parts.push("dn".to_string()),
            k => parts.push(format!("dn^{k}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Finite sum of `coefficient · monomial`; no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ElementPoly {
    terms: BTreeMap<Monomial, PolyN>,
}

impl ElementPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Monomial::ONE, PolyN::one())
    }

    pub fn term(m: Monomial, coeff: PolyN) -> Self {
        let mut p = Self::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn s() -> Self {
        Self::term(Monomial::new(1, CExp::ZERO, 0), PolyN::one())
    }

    pub fn c() -> Self {
        Self::term(Monomial::c_pow(1), PolyN::one())
    }

    pub fn d() -> Self {
        Self::term(Monomial::new(0, CExp::ZERO, 1), PolyN::one())
    }

    /// `c^(n·n_mult + offset)`
    pub fn c_exp(e: CExp) -> Self {
        Self::term(Monomial::new(0, e, 0), PolyN::one())
    }

    pub fn constant(c: PolyN) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PolyN)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> PolyN {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: PolyN) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &PolyN) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.keys().all(Monomial::is_canonical)
    }

    /// Numerical value at `(s, c, d)` with the symbol set to `n`
    /// (assumed integral whenever a `c` exponent mentions it).
    pub fn eval(&self, s: f64, c: f64, d: f64, n: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, coef)| {
                let ce = m.c.n_mult as f64 * n + m.c.offset as f64;
                coef.eval_f64(n) * s.powi(m.s as i32) * c.powi(ce.round() as i32) * d.powi(m.d as i32)
            })
            .sum()
    }

    /// Exact value at rational `(s, c, d, n)`, for testing identities off the
    /// elliptic curve. Only valid when all `c` exponents are plain integers.
    pub fn eval_exact(&self, s: &BigRational, c: &BigRational, d: &BigRational, n: &BigRational) -> BigRational {
        let pow = |b: &BigRational, e: i64| -> BigRational {
            if e >= 0 {
                num_traits::pow(b.clone(), e as usize)
            } else {
                num_traits::pow(b.recip(), (-e) as usize)
            }
        };
        let mut acc = BigRational::zero();
        for (m, coef) in &self.terms {
            assert_eq!(m.c.n_mult, 0, "exact evaluation needs integer exponents");
            acc += coef.eval(n) * pow(s, m.s as i64) * pow(c, m.c.offset) * pow(d, m.d as i64);
        }
        acc
    }
}

impl fmt::Display for ElementPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, coef)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "({coef})")?;
            } else if coef.is_constant() && coef.coeff(0).is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({coef})*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &ElementPoly {
    type Output = ElementPoly;
    fn add(self, rhs: &ElementPoly) -> ElementPoly {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(*m, v.clone());
        }
        out
    }
}

impl Sub for &ElementPoly {
    type Output = ElementPoly;
    fn sub(self, rhs: &ElementPoly) -> ElementPoly {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(*m, -v);
        }
        out
    }
}

impl Neg for &ElementPoly {
    type Output = ElementPoly;
    fn neg(self) -> ElementPoly {
        ElementPoly { terms: self.terms.iter().map(|(m, v)| (*m, -v)).collect() }
    }
}

/// Plain polynomial product, no reduction.
impl Mul for &ElementPoly {
    type Output = ElementPoly;
    fn mul(self, rhs: &ElementPoly) -> ElementPoly {
        let mut out = ElementPoly::zero();
        for (ma, va) in &self.terms {
            for (mb, vb) in &rhs.terms {
                out.add_term(ma.times(*mb), va * vb);
            }
        }
        out
    }
}

/// How the symbol in `g = c^n` is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    /// `n` stays a symbol; coefficients are genuine polynomials in `n`.
    Symbolic,
    /// `n` is this integer; all coefficients are constants.
    Integer(u32),
}

impl Exponent {
    /// The value the coefficient ring uses for `n`.
    pub fn as_poly(self) -> PolyN {
        match self {
            Exponent::Symbolic => PolyN::n(),
            Exponent::Integer(k) => PolyN::from_int(k as i64),
        }
    }

    /// Substitutes the integer value into `p` when the exponent is fixed.
    pub fn specialize(self, p: &PolyN) -> PolyN {
        match self {
            Exponent::Symbolic => p.clone(),
            Exponent::Integer(k) => PolyN::constant(p.eval(&BigRational::from_integer(k.into()))),
        }
    }

    /// Exponent of `c` in `g = cⁿ`.
    pub fn g_exponent(self) -> CExp {
        match self {
            Exponent::Symbolic => CExp { n_mult: 1, offset: 0 },
            Exponent::Integer(k) => CExp { n_mult: 0, offset: k as i64 },
        }
    }
}

/// The quotient ring for a fixed parameter `m`: reduction and the derivation
/// `s′ = c·d`, `c′ = −s·d`, `d′ = −m·s·c`.
#[derive(Debug, Clone)]
pub struct ElementRing {
    m: BigRational,
    exponent: Exponent,
}

impl ElementRing {
    pub fn new(m: BigRational, exponent: Exponent) -> Result<Self, SymError> {
        if m.is_negative() || m > BigRational::one() {
            return Err(SymError::ParameterOutOfRange(m.to_string()));
        }
        if let Exponent::Integer(k) = exponent {
            if k < 4 {
                return Err(SymError::ExponentTooSmall(k));
            }
        }
        Ok(ElementRing { m, exponent })
    }

    pub fn m(&self) -> &BigRational {
        &self.m
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    /// Rewrites to the canonical form (no `s²`, no `d²`).
    pub fn reduce(&self, p: &ElementPoly) -> ElementPoly {
        let one_minus_m = PolyN::constant(BigRational::one() - &self.m);
        let m = PolyN::constant(self.m.clone());
        let mut out = ElementPoly::zero();
        let mut work: Vec<(Monomial, PolyN)> = p.terms.iter().map(|(k, v)| (*k, v.clone())).collect();
        while let Some((mono, coef)) = work.pop() {
            if mono.s >= 2 {
                let base = Monomial { s: mono.s - 2, ..mono };
                work.push((base, coef.clone()));
                work.push((Monomial { c: base.c.shifted(2), ..base }, -coef));
            } else if mono.d >= 2 {
                let base = Monomial { d: mono.d - 2, ..mono };
                work.push((base, &coef * &one_minus_m));
                work.push((Monomial { c: base.c.shifted(2), ..base }, &coef * &m));
            } else {
                out.add_term(mono, coef);
            }
        }
        out
    }

    /// Reduced product.
    pub fn mul(&self, a: &ElementPoly, b: &ElementPoly) -> ElementPoly {
        self.reduce(&(a * b))
    }

    /// Formal derivative with respect to the elliptic argument, reduced.
    pub fn derive(&self, p: &ElementPoly) -> ElementPoly {
        let n_value = self.exponent.as_poly();
        let m = PolyN::constant(self.m.clone());
        let mut out = ElementPoly::zero();
        for (mono, coef) in &p.terms {
            if mono.s > 0 {
                let k = PolyN::from_int(mono.s as i64);
                out.add_term(
                    Monomial { s: mono.s - 1, c: mono.c.shifted(1), d: mono.d + 1 },
                    &k * coef,
                );
            }
            let ce = mono.c.as_poly(&n_value);
            if !ce.is_zero() {
                out.add_term(
                    Monomial { s: mono.s + 1, c: mono.c.shifted(-1), d: mono.d + 1 },
                    -(&ce * coef),
                );
            }
            if mono.d > 0 {
                let k = PolyN::from_int(mono.d as i64);
                out.add_term(
                    Monomial { s: mono.s + 1, c: mono.c.shifted(1), d: mono.d - 1 },
                    -(&(&k * &m) * coef),
                );
            }
        }
        self.reduce(&out)
    }

    /// Largest monomial dividing every term, and the quotient.
    pub fn split_common_monomial(&self, p: &ElementPoly) -> Result<(Monomial, ElementPoly), SymError> {
        let mut iter = p.terms.keys();
        let first = *iter.next().ok_or_else(|| SymError::Structural("zero expression has no factor".into()))?;
        let mut common = first;
        for m in iter {
            if m.c.n_mult != common.c.n_mult {
                return Err(SymError::Structural(format!(
                    "terms carry different symbolic powers of cn: {} vs {}",
                    m.c, common.c
                )));
            }
            common.s = common.s.min(m.s);
            common.d = common.d.min(m.d);
            common.c.offset = common.c.offset.min(m.c.offset);
        }
        let quotient = ElementPoly {
            terms: p
                .terms
                .iter()
                .map(|(m, v)| {
                    (Monomial { s: m.s - common.s, c: m.c.minus(common.c), d: m.d - common.d }, v.clone())
                })
                .collect(),
        };
        Ok((common, quotient))
    }
}

/// Integer power `cᵏ` with exponent checked to fit an `i32` for evaluation.
pub fn fits_i32(e: &CExp, n: u32) -> bool {
    (e.n_mult as i64 * n as i64 + e.offset).to_i32().is_some()
}
