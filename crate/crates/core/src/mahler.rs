//! Mahler measure, Weil height and the modified Mahler measure for numbers of
//! degree at most two.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{is_perfect_square, Int, Rat};
use crate::error::{Error, Result};
use crate::quad::{QuadPoly, QuadSurd};

/// An exact Mahler measure. Always real and at least 1.
///
/// Values over a real quadratic field live in that field; values over an
/// imaginary field are integers. Comparing two irrational values from
/// different fields is refused (`partial_cmp` returns `None`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MahlerValue(QuadSurd);

impl MahlerValue {
    pub(crate) fn new_unchecked(value: QuadSurd) -> Self {
        debug_assert!(value.is_real());
        MahlerValue(value)
    }

    /// A bound given as an arbitrary real surd, e.g. `M + δ`; must be ≥ 1.
    pub fn try_new(value: QuadSurd) -> Result<Self> {
        if !value.is_real() {
            return Err(Error::NotReal(value.to_string()));
        }
        if value.try_cmp(&QuadSurd::one())? == Ordering::Less {
            return Err(Error::InvalidArgument(format!("{value} is below 1")));
        }
        Ok(MahlerValue(value))
    }

    pub fn one() -> Self {
        MahlerValue(QuadSurd::one())
    }

    pub fn from_int(n: impl Into<Int>) -> Self {
        MahlerValue(QuadSurd::from_int(n))
    }

    pub fn value(&self) -> &QuadSurd {
        &self.0
    }

    pub fn into_value(self) -> QuadSurd {
        self.0
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.0.try_cmp(&other.0)
    }

    pub fn floor(&self) -> Int {
        self.0.floor().expect("Mahler values are real")
    }

    pub fn decimal(&self, digits: usize) -> String {
        self.0.decimal_expand(digits).expect("Mahler values are real")
    }
}

impl PartialOrd for MahlerValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for MahlerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Weil height stored as the pair `(M, degree)` with `H = M^(1/degree)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightValue {
    pub measure: MahlerValue,
    pub degree: u32,
}

impl HeightValue {
    /// `H²` as an exact real value.
    pub fn squared(&self) -> QuadSurd {
        match self.degree {
            1 => self.measure.value() * self.measure.value(),
            _ => self.measure.value().clone(),
        }
    }

    /// Compares `M₁^d₂` against `M₂^d₁`.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        let lhs = self.measure.value().pow_u(other.degree as u64);
        let rhs = other.measure.value().pow_u(self.degree as u64);
        lhs.try_cmp(&rhs)
    }
}

/// Modified Mahler measure together with the root of unity realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MBarResult {
    pub measure: MahlerValue,
    pub witness_zeta: QuadSurd,
    /// `witness_zeta · input`, whose Mahler measure equals `measure`.
    pub reduced: QuadSurd,
}

fn max_one_abs(x: &QuadSurd) -> Result<QuadSurd> {
    let a = x.abs()?;
    Ok(if a.try_cmp(&QuadSurd::one())? == Ordering::Greater { a } else { QuadSurd::one() })
}

/// Mahler measure of `a2 x² + a1 x + a0` for arbitrary integer coefficients,
/// reducible or not. The polynomial must be nonconstant.
pub fn mahler_coeffs(a2: &Int, a1: &Int, a0: &Int) -> Result<MahlerValue> {
    if a2.is_zero() {
        if a1.is_zero() {
            return Err(Error::InvalidPolynomial("constant polynomial".into()));
        }
        let m = a1.abs().max(a0.abs());
        return Ok(MahlerValue::from_int(m));
    }
    let d = a1 * a1 - Int::from(4) * a2 * a0;
    if d.is_negative() {
        // Both roots have modulus² = a0/a2.
        return Ok(MahlerValue::from_int(a2.abs().max(a0.abs())));
    }
    let two_a: Int = a2 * 2;
    let roots = match is_perfect_square(&d) {
        Some(r) => vec![
            QuadSurd::from_rat(Rat::new(-a1 + &r, two_a.clone())),
            QuadSurd::from_rat(Rat::new(-a1 - &r, two_a)),
        ],
        None => {
            let plus = QuadSurd::from_parts(-a1.clone(), Int::one(), d, two_a)?;
            let minus = plus.conjugate();
            vec![plus, minus]
        }
    };
    let mut m = QuadSurd::from_int(a2.abs());
    for r in &roots {
        m = m.try_mul(&max_one_abs(r)?)?;
    }
    Ok(MahlerValue(m))
}

/// Mahler measure of a polynomial of degree 1 or 2.
pub fn mahler_poly(f: &QuadPoly) -> MahlerValue {
    let (a2, a1, a0) = f.coeffs();
    mahler_coeffs(a2, a1, a0).expect("QuadPoly is nonconstant")
}

/// Mahler measure of a nonzero algebraic number of degree at most two.
pub fn mahler_surd(x: &QuadSurd) -> Result<MahlerValue> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    if let Some(r) = x.as_rational() {
        return Ok(MahlerValue::from_int(r.numer().abs().max(r.denom().clone())));
    }
    Ok(mahler_poly(&x.minimal_polynomial()))
}

pub fn weil_height(x: &QuadSurd) -> Result<HeightValue> {
    Ok(HeightValue { measure: mahler_surd(x)?, degree: x.degree() as u32 })
}

/// Modified Mahler measure, `min M(ζx)` over roots of unity `ζ`.
///
/// Only `Q(i)` and `Q(√−3)` contain roots of unity beyond ±1, so every other
/// input is its own minimizer.
pub fn mbar(x: &QuadSurd) -> Result<MBarResult> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    let identity = || -> Result<MBarResult> {
        Ok(MBarResult { measure: mahler_surd(x)?, witness_zeta: QuadSurd::one(), reduced: x.clone() })
    };
    let Some(k) = x.k() else {
        return identity();
    };
    let kv = k.value();
    let (a, b) = (x.a(), x.b());
    let zeta = if kv == &Int::from(-1) && a.is_zero() {
        // b·i → b
        QuadSurd::new(Rat::zero(), -Rat::one(), k.clone())
    } else if kv == &Int::from(-3) && a.abs() == b.abs() {
        // a(1 ± √−3) → 2a, using the sixth root of unity (1 ∓ √−3)/2
        let half = Rat::new(Int::one(), Int::from(2));
        let sign = if a == b { -Rat::one() } else { Rat::one() };
        QuadSurd::new(half.clone(), half * sign, k.clone())
    } else {
        return identity();
    };
    let reduced = zeta.try_mul(x)?;
    debug_assert!(reduced.is_rational());
    Ok(MBarResult { measure: mahler_surd(&reduced)?, witness_zeta: zeta, reduced })
}
