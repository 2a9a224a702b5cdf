//! The three-row solution table and the large-`n` limit of the equations.

use num_rational::BigRational;
use serde::Serialize;

use crate::element::{ElementRing, Exponent};
use crate::poly::{int, rat, Limit, NLaurent, NRatio, PolyN};
use crate::star::{reduce_star, StarCoeffs};
use crate::SymError;

/// Integer exponents checked in addition to the symbolic one.
pub const CHECKED_EXPONENTS: std::ops::RangeInclusive<u32> = 4..=64;

/// A parameter value together with the coefficients `(b, c)` claimed to
/// make (*) vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub label: String,
    pub m: BigRational,
    pub coeffs: StarCoeffs,
}

impl TableRow {
    pub fn new(label: impl Into<String>, m: BigRational, coeffs: StarCoeffs) -> Self {
        TableRow { label: label.into(), m, coeffs }
    }

    /// `m = 0:   b = 2−3n,  c = 2(n−1)`
    /// `m = 1/2: b = −3n,   c = 2(n−1/n)`
    /// `m = 1:   b = −2−3n, c = 2(n+1)`
    pub fn standard_rows() -> Vec<TableRow> {
        let p = PolyN::from_ints;
        vec![
            TableRow::new(
                "m=0, b=2-3n, c=2(n-1)",
                int(0),
                StarCoeffs::new(NLaurent::poly(p(&[2, -3])), NLaurent::poly(p(&[-2, 2]))),
            ),
            TableRow::new(
                "m=1/2, b=-3n, c=2(n-1/n)",
                rat(1, 2),
                StarCoeffs::new(NLaurent::poly(p(&[0, -3])), NLaurent::over_n_pow(p(&[-2, 0, 2]), 1)),
            ),
            TableRow::new(
                "m=1, b=-2-3n, c=2(n+1)",
                int(1),
                StarCoeffs::new(NLaurent::poly(p(&[-2, -3])), NLaurent::poly(p(&[2, 2]))),
            ),
        ]
    }

    /// The same row with `b` replaced by `b + delta`.
    pub fn with_b_shift(&self, delta: &BigRational) -> TableRow {
        let b = self.coeffs.b.plus_constant(delta);
        TableRow {
            label: format!("{} [b shifted by {delta}]", self.label),
            m: self.m.clone(),
            coeffs: StarCoeffs::new(b, self.coeffs.c.clone()),
        }
    }

    /// Coefficient triple `(n, b, c)` on `(y⁗y′², y‴y″y′, y″³)` of the
    /// equation satisfied by `y` with `y′ = g`.
    pub fn ode_triple(&self) -> Triple {
        Triple::new([NRatio::poly(PolyN::n()), self.coeffs.b.as_ratio(), self.coeffs.c.as_ratio()])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub label: String,
    pub m: String,
    pub b: String,
    pub c: String,
    pub symbolic_zero: bool,
    /// Integer exponents in [`CHECKED_EXPONENTS`] where the cofactor is nonzero.
    pub failing_exponents: Vec<u32>,
    /// The nonzero cofactor for symbolic `n`, if any.
    pub residual: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowCheck>,
    pub pass: bool,
}

pub fn check_solution_table() -> Result<TableReport, SymError> {
    check_solution_table_with(&TableRow::standard_rows())
}

pub fn check_solution_table_with(rows: &[TableRow]) -> Result<TableReport, SymError> {
    let mut checks = Vec::with_capacity(rows.len());
    for row in rows {
        let sym = reduce_star(&ElementRing::new(row.m.clone(), Exponent::Symbolic)?, &row.coeffs)?;
        let mut failing = Vec::new();
        for n in CHECKED_EXPONENTS {
            let red = reduce_star(&ElementRing::new(row.m.clone(), Exponent::Integer(n))?, &row.coeffs)?;
            if !red.vanishes() {
                failing.push(n);
            }
        }
        let residual = (!sym.vanishes()).then(|| format!("{} * [{}]", sym.factor_string(), sym.coeffs));
        let pass = sym.vanishes() && failing.is_empty();
        checks.push(RowCheck {
            label: row.label.clone(),
            m: row.m.to_string(),
            b: row.coeffs.b.to_string(),
            c: row.coeffs.c.to_string(),
            symbolic_zero: sym.vanishes(),
            failing_exponents: failing,
            residual,
            pass,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(TableReport { rows: checks, pass })
}

/// Coefficients on `(y⁗y′², y‴y″y′, y″³)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triple(pub [NRatio; 3]);

impl Triple {
    pub fn new(c: [NRatio; 3]) -> Self {
        Triple(c)
    }

    /// `(1, −3, 2(1 − n⁻²))`
    pub fn universal() -> Self {
        Triple([
            NRatio::poly(PolyN::one()),
            NRatio::poly(PolyN::from_int(-3)),
            NRatio::over_n_pow(PolyN::from_ints(&[-2, 0, 2]), 2),
        ])
    }

    /// `(n², 3n(1−n), 2n²−3n+1)`
    pub fn d1() -> Self {
        Triple([
            NRatio::poly(PolyN::from_ints(&[0, 0, 1])),
            NRatio::poly(PolyN::from_ints(&[0, 3, -3])),
            NRatio::poly(PolyN::from_ints(&[1, -3, 2])),
        ])
    }

    /// `(n, 2−3n, 2(n−1))`
    pub fn d2() -> Self {
        Triple([
            NRatio::poly(PolyN::n()),
            NRatio::poly(PolyN::from_ints(&[2, -3])),
            NRatio::poly(PolyN::from_ints(&[-2, 2])),
        ])
    }

    /// Every entry divided by `nᵏ`.
    pub fn over_n_pow(&self, k: u32) -> Self {
        let d = NRatio::over_n_pow(PolyN::one(), k);
        Triple(self.0.clone().map(|r| r.mul(&d)))
    }

    pub fn limits(&self) -> [Limit; 3] {
        self.0.clone().map(|r| r.limit())
    }

    /// `Some(λ)` with `self = λ · other`, `λ` a rational function of `n`.
    pub fn factor_over(&self, other: &Triple) -> Option<NRatio> {
        let i = other.0.iter().position(|r| !r.num.is_zero())?;
        let lambda = NRatio::new(&self.0[i].num * &other.0[i].den, &self.0[i].den * &other.0[i].num);
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| a.same_as(&lambda.mul(b)))
            .then(|| lambda.simplified())
    }

    fn strings(&self) -> [String; 3] {
        self.0.clone().map(|r| r.simplified().to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitRow {
    pub name: String,
    pub coefficients: [String; 3],
    pub limit: Vec<String>,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitReport {
    pub rows: Vec<LimitRow>,
    pub expected: [i64; 3],
    pub pass: bool,
}

/// Coefficient triples of the three equations, normalised so that the
/// leading coefficient is comparable, and their limits as `n → ∞`.
pub fn limit_coefficients() -> LimitReport {
    let expected = [1i64, -3, 2];
    let entries = [
        ("B", Triple::universal()),
        ("D1/n^2", Triple::d1().over_n_pow(2)),
        ("D2/n", Triple::d2().over_n_pow(1)),
    ];
    let rows: Vec<LimitRow> = entries
        .into_iter()
        .map(|(name, t)| {
            let limits = t.limits();
            let matches = limits.iter().zip(expected).all(|(l, e)| *l == Limit::Finite(int(e)));
            LimitRow {
                name: name.to_string(),
                coefficients: t.strings(),
                limit: limits
                    .iter()
                    .map(|l| match l {
                        Limit::Finite(v) => v.to_string(),
                        Limit::Unbounded => "unbounded".to_string(),
                    })
                    .collect(),
                matches,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.matches);
    LimitReport { rows, expected, pass }
}

#[derive(Debug, Clone, Serialize)]
pub struct Correspondence {
    pub row: String,
    pub equation: String,
    /// The factor `λ(n)` with `row = λ · equation`, if one exists.
    pub factor: Option<String>,
}

/// Which of `B`, `D1`, `D2` each table row's ODE is a multiple of.
pub fn row_correspondence(rows: &[TableRow]) -> Vec<Correspondence> {
    let eqs = [("B", Triple::universal()), ("D1", Triple::d1()), ("D2", Triple::d2())];
    let mut out = Vec::new();
    for row in rows {
        let t = row.ode_triple();
        for (name, eq) in &eqs {
            out.push(Correspondence {
                row: row.label.clone(),
                equation: name.to_string(),
                factor: t.factor_over(eq).map(|f| f.to_string()),
            });
        }
    }
    out
}
