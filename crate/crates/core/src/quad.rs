//! Exact arithmetic in `Q(√k)`.
//!
//! [`QuadSurd`] is the one number type used throughout the crate: rationals are
//! the degenerate `b = 0` case and carry no field tag, so a rational combines
//! freely with any quadratic surd. Two irrational surds only combine when they
//! share the same squarefree `k`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{floor_div, is_perfect_square, squarefree_decompose, Int, Rat};
use crate::error::{Error, Result};

/// A squarefree integer other than 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquarefreeK(Int);

impl SquarefreeK {
    pub fn new(k: Int) -> Result<Self> {
        if k.is_zero() || k.is_one() {
            return Err(Error::InvalidArgument(format!("k = {k} does not define a quadratic field")));
        }
        let (s, _) = squarefree_decompose(&k)?;
        if s != k {
            return Err(Error::InvalidArgument(format!("k = {k} is not squarefree")));
        }
        Ok(SquarefreeK(k))
    }

    pub fn from_i64(k: i64) -> Result<Self> {
        Self::new(Int::from(k))
    }

    pub fn value(&self) -> &Int {
        &self.0
    }

    pub fn is_real(&self) -> bool {
        self.0.is_positive()
    }

    /// Discriminant of the maximal order: `k` when `k ≡ 1 mod 4`, else `4k`.
    pub fn field_discriminant(&self) -> Int {
        if self.0.mod_floor(&Int::from(4)).is_one() {
            self.0.clone()
        } else {
            &self.0 * 4
        }
    }
}

impl fmt::Display for SquarefreeK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field a surd lives in; `None` is `Q`.
pub type FieldTag = Option<SquarefreeK>;

fn field_name(k: &FieldTag) -> String {
    match k {
        None => "Q".to_string(),
        Some(k) => format!("Q(sqrt({k}))"),
    }
}

/// Finds the field shared by every value, rejecting two distinct quadratic fields.
pub fn common_field<'a>(values: impl IntoIterator<Item = &'a QuadSurd>) -> Result<FieldTag> {
    let mut field: FieldTag = None;
    for v in values {
        if let Some(k) = &v.k {
            match &field {
                None => field = Some(k.clone()),
                Some(f) if f != k => {
                    return Err(Error::MixedFields(field_name(&field), field_name(&v.k)))
                }
                _ => {}
            }
        }
    }
    Ok(field)
}

/// `a + b√k` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: Rat,
    b: Rat,
    // None exactly when b == 0
    k: FieldTag,
}

impl QuadSurd {
    pub fn new(a: Rat, b: Rat, k: SquarefreeK) -> Self {
        if b.is_zero() {
            QuadSurd { a, b, k: None }
        } else {
            QuadSurd { a, b, k: Some(k) }
        }
    }

    fn with_tag(a: Rat, b: Rat, k: FieldTag) -> Self {
        match k {
            Some(k) => Self::new(a, b, k),
            None => {
                debug_assert!(b.is_zero());
                Self::from_rat(a)
            }
        }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadSurd { a, b: Rat::zero(), k: None }
    }

    pub fn from_int(n: impl Into<Int>) -> Self {
        Self::from_rat(Rat::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rat(Rat::new(Int::from(n), Int::from(d)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `(p + q√n)/r` for arbitrary nonzero integer `n`; square factors of `n`
    /// are pulled out.
    pub fn from_parts(p: Int, q: Int, n: Int, r: Int) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = Rat::new(p, r.clone());
        if q.is_zero() || n.is_zero() {
            return Ok(Self::from_rat(a));
        }
        let (s, f) = squarefree_decompose(&n)?;
        let b = Rat::new(q * f, r);
        if s.is_one() {
            return Ok(Self::from_rat(a + b));
        }
        Ok(Self::new(a, b, SquarefreeK::new(s)?))
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn k(&self) -> Option<&SquarefreeK> {
        self.k.as_ref()
    }

    pub fn field(&self) -> &FieldTag {
        &self.k
    }

    pub fn is_rational(&self) -> bool {
        self.k.is_none()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.a.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.k.as_ref().is_none_or(SquarefreeK::is_real)
    }

    pub fn degree(&self) -> usize {
        if self.is_rational() {
            1
        } else {
            2
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadSurd { a: self.a.clone(), b: -&self.b, k: self.k.clone() }
    }

    fn k_rat(&self) -> Rat {
        self.k.as_ref().map_or_else(Rat::zero, |k| Rat::from_integer(k.0.clone()))
    }

    /// `a² − b²k`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * self.k_rat()
    }

    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    fn compatible(&self, other: &Self) -> Result<FieldTag> {
        match (&self.k, &other.k) {
            (Some(x), Some(y)) if x != y => {
                Err(Error::MixedFields(field_name(&self.k), field_name(&other.k)))
            }
            (Some(x), _) | (None, Some(x)) => Ok(Some(x.clone())),
            (None, None) => Ok(None),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let k = self.compatible(other)?;
        Ok(Self::with_tag(&self.a + &other.a, &self.b + &other.b, k))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let k = self.compatible(other)?;
        Ok(Self::with_tag(&self.a - &other.a, &self.b - &other.b, k))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let k = self.compatible(other)?;
        let kr = k.as_ref().map_or_else(Rat::zero, |k| Rat::from_integer(k.0.clone()));
        let a = &self.a * &other.a + &self.b * &other.b * kr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::with_tag(a, b, k))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::with_tag(&self.a / &n, -&self.b / &n, self.k.clone()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::with_tag(&self.a * r, &self.b * r, if r.is_zero() { None } else { self.k.clone() })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow_u(e.unsigned_abs()))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Power with an arbitrary-size exponent.
    pub fn pow_big(&self, e: &Int) -> Result<Self> {
        let base = if e.is_negative() { self.inverse()? } else { self.clone() };
        let mut e = e.abs();
        let mut acc = Self::one();
        let mut sq = base;
        let two = Int::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = &acc * &sq;
            }
            e = e.div_floor(&two);
            if !e.is_zero() {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Writes the value as `(p + q√k)/r` with integers, `r > 0`, `gcd(p, q, r) = 1`.
    pub fn integer_parts(&self) -> (Int, Int, Int) {
        let r = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&r / self.a.denom());
        let q = self.b.numer() * (&r / self.b.denom());
        (p, q, r)
    }

    /// Exact sign of a real value.
    pub fn sign(&self) -> Result<Ordering> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        let sa = self.a.cmp(&Rat::zero());
        let sb = self.b.cmp(&Rat::zero());
        if sb == Ordering::Equal || sa == sb {
            return Ok(if sa == Ordering::Equal { sb } else { sa });
        }
        if sa == Ordering::Equal {
            return Ok(sb);
        }
        let a2 = &self.a * &self.a;
        let b2k = &self.b * &self.b * self.k_rat();
        // a² ≠ b²k because k is not a square.
        Ok(if a2 > b2k { sa } else { sb })
    }

    pub fn signum(&self) -> Result<i8> {
        Ok(match self.sign()? {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        })
    }

    /// Exact comparison of two real values in compatible fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.try_sub(other)?.sign()
    }

    pub fn abs(&self) -> Result<Self> {
        Ok(if self.sign()? == Ordering::Less { -self } else { self.clone() })
    }

    /// Squared complex modulus `|x|²`. For imaginary fields this is the norm;
    /// for real values it is `x²`.
    pub fn modulus_squared(&self) -> Self {
        if self.is_real() {
            self * self
        } else {
            Self::from_rat(self.norm())
        }
    }

    /// Exact floor of a real value.
    pub fn floor(&self) -> Result<Int> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        let (p, q, r) = self.integer_parts();
        let Some(k) = &self.k else {
            return Ok(floor_div(&p, &r));
        };
        let t = (&q * &q * &k.0).sqrt();
        // q√k lies strictly between consecutive integers.
        if q.is_positive() {
            Ok(floor_div(&(p + t), &r))
        } else {
            Ok(floor_div(&(p - t - 1), &r))
        }
    }

    /// Correctly rounded decimal expansion with `digits` places; exact ties
    /// round toward positive infinity.
    pub fn decimal_expand(&self, digits: usize) -> Result<String> {
        let scale = Rat::from_integer(num_traits::pow(Int::from(10), digits));
        let half = Rat::new(Int::one(), Int::from(2));
        let shifted = self.scale(&scale).try_add(&Self::from_rat(half))?;
        let n = shifted.floor()?;
        let neg = n.is_negative();
        let digits_str = n.abs().to_string();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if digits == 0 {
            out.push_str(&digits_str);
            return Ok(out);
        }
        let padded = if digits_str.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - digits_str.len()), digits_str)
        } else {
            digits_str
        };
        let (int_part, frac) = padded.split_at(padded.len() - digits);
        out.push_str(int_part);
        out.push('.');
        out.push_str(frac);
        Ok(out)
    }

    /// Double-precision approximation of a real value.
    pub fn to_f64(&self) -> Result<f64> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        let s = self.decimal_expand(20)?;
        Ok(s.parse::<f64>().unwrap_or(f64::NAN))
    }

    /// Content-one integer polynomial with positive leading coefficient
    /// vanishing at this value.
    pub fn minimal_polynomial(&self) -> QuadPoly {
        match &self.k {
            None => {
                // n x − m
                QuadPoly::from_coeffs_unchecked(
                    Int::zero(),
                    self.a.denom().clone(),
                    -self.a.numer().clone(),
                )
            }
            Some(_) => {
                // x² − tr x + norm, cleared of denominators
                let tr = self.trace();
                let n = self.norm();
                let den = tr.denom().lcm(n.denom());
                let a1 = -(tr.numer() * (&den / tr.denom()));
                let a0 = n.numer() * (&den / n.denom());
                QuadPoly::normalized(den, a1, a0).expect("nonzero leading coefficient")
            }
        }
    }

    /// Multiplicative order when this is a root of unity. The only torsion in
    /// quadratic fields is ±1, ±i and the primitive third and sixth roots.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        let half = Rat::new(Int::one(), Int::from(2));
        match &self.k {
            None => {
                if self.a.is_one() {
                    Some(1)
                } else if self.a == -Rat::one() {
                    Some(2)
                } else {
                    None
                }
            }
            Some(k) if k.0 == Int::from(-1) => {
                (self.a.is_zero() && self.b.abs().is_one()).then_some(4)
            }
            Some(k) if k.0 == Int::from(-3) => {
                if self.b.abs() != half {
                    None
                } else if self.a == half {
                    Some(6)
                } else if self.a == -half.clone() {
                    Some(3)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.root_of_unity_order().is_some()
    }

    /// `d·x = A + B√k` with integer `A`, `B` and the positive integer `d`.
    /// `A + B√k` is then an algebraic integer.
    pub fn integral_multiple(&self) -> (Int, Int, Int) {
        self.integer_parts()
    }
}

impl Add for &QuadSurd {
    type Output = QuadSurd;
    fn add(self, rhs: &QuadSurd) -> QuadSurd {
        self.try_add(rhs).expect("surd addition across fields")
    }
}

impl Sub for &QuadSurd {
    type Output = QuadSurd;
    fn sub(self, rhs: &QuadSurd) -> QuadSurd {
        self.try_sub(rhs).expect("surd subtraction across fields")
    }
}

impl Mul for &QuadSurd {
    type Output = QuadSurd;
    fn mul(self, rhs: &QuadSurd) -> QuadSurd {
        self.try_mul(rhs).expect("surd multiplication across fields")
    }
}

impl Div for &QuadSurd {
    type Output = QuadSurd;
    fn div(self, rhs: &QuadSurd) -> QuadSurd {
        self.try_div(rhs).expect("surd division across fields or by zero")
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd { a: -&self.a, b: -&self.b, k: self.k.clone() }
    }
}

impl Neg for QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        -&self
    }
}

fn sqrt_term(q: &Int, k: &SquarefreeK) -> String {
    if q.is_one() {
        format!("sqrt({k})")
    } else {
        format!("{q}*sqrt({k})")
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(k) = &self.k else {
            return write!(f, "{}", self.a);
        };
        let (p, q, r) = self.integer_parts();
        let num = if p.is_zero() {
            let sign = if q.is_negative() { "-" } else { "" };
            format!("{sign}{}", sqrt_term(&q.abs(), k))
        } else {
            let op = if q.is_negative() { '-' } else { '+' };
            format!("{p}{op}{}", sqrt_term(&q.abs(), k))
        };
        match (r.is_one(), p.is_zero()) {
            (true, _) => write!(f, "{num}"),
            (false, true) => write!(f, "{num}/{r}"),
            (false, false) => write!(f, "({num})/{r}"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn unsigned(&mut self) -> Result<Int> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse::<Int>().expect("digits parse"))
    }

    fn signed(&mut self) -> Result<Int> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let n = self.unsigned()?;
        Ok(if neg { -n } else { n })
    }

    fn at_sqrt(&mut self) -> bool {
        self.peek();
        self.s[self.pos..].starts_with(b"sqrt")
    }

    fn sqrt_arg(&mut self) -> Result<Int> {
        self.pos += 4;
        self.expect(b'(')?;
        let n = self.signed()?;
        self.expect(b')')?;
        Ok(n)
    }

    // A signed sum of at most one integer term and one sqrt term.
    fn sum(&mut self) -> Result<(Int, Int, Int, usize)> {
        let mut p: Option<Int> = None;
        let mut sq: Option<(Int, Int)> = None;
        let mut terms = 0;
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            first = false;
            let term_pos = self.pos;
            let (coef, rad) = if self.at_sqrt() {
                (Int::one(), Some(self.sqrt_arg()?))
            } else {
                let c = self.unsigned()?;
                if self.eat(b'*') {
                    if !self.at_sqrt() {
                        return self.err("expected 'sqrt(' after '*'");
                    }
                    (c, Some(self.sqrt_arg()?))
                } else {
                    (c, None)
                }
            };
            let coef = if neg { -coef } else { coef };
            match rad {
                Some(n) => {
                    if sq.is_some() {
                        return Err(Error::Parse { pos: term_pos, msg: "more than one sqrt term".into() });
                    }
                    sq = Some((coef, n));
                }
                None => {
                    if p.is_some() {
                        return Err(Error::Parse { pos: term_pos, msg: "more than one integer term".into() });
                    }
                    p = Some(coef);
                }
            }
            terms += 1;
        }
        let (q, n) = sq.unwrap_or((Int::zero(), Int::zero()));
        Ok((p.unwrap_or_default(), q, n, terms))
    }

    fn surd(&mut self) -> Result<QuadSurd> {
        let save = self.pos;
        let outer_neg = self.eat(b'-');
        let (p, q, n, terms) = if self.eat(b'(') {
            let parts = self.sum()?;
            self.expect(b')')?;
            if outer_neg {
                (-parts.0, -parts.1, parts.2, 1)
            } else {
                (parts.0, parts.1, parts.2, 1)
            }
        } else {
            self.pos = save;
            self.sum()?
        };
        let r = if self.eat(b'/') {
            if terms > 1 {
                return self.err("parenthesize the numerator before dividing");
            }
            let r = self.signed()?;
            if r.is_zero() {
                return self.err("zero denominator");
            }
            r
        } else {
            Int::one()
        };
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        let (p, q, r) = if r.is_negative() { (-p, -q, -r) } else { (p, q, r) };
        if !q.is_zero() && n.is_zero() {
            return self.err("sqrt(0) is not allowed");
        }
        QuadSurd::from_parts(p, q, n, r)
    }
}

impl FromStr for QuadSurd {
    type Err = Error;

    /// Accepts `(p ± q*sqrt(k))/r`, optionally negated as `-(…)/r`, its unparenthesized single-term forms,
    /// and plain rationals `m/n`.
    fn from_str(s: &str) -> Result<Self> {
        Parser { s: s.as_bytes(), pos: 0 }.surd()
    }
}

/// Integer polynomial `a2 x² + a1 x + a0` of degree 1 or 2 with content 1,
/// positive leading coefficient, and (in degree 2) a non-square discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadPoly {
    a2: Int,
    a1: Int,
    a0: Int,
}

impl QuadPoly {
    /// Validates the coefficients without rescaling them.
    pub fn new(a2: Int, a1: Int, a0: Int) -> Result<Self> {
        let p = Self::normalized(a2.clone(), a1.clone(), a0.clone())?;
        if p.a2 != a2 || p.a1 != a1 || p.a0 != a0 {
            return Err(Error::InvalidPolynomial(format!(
                "({a2}, {a1}, {a0}) is not primitive with positive leading coefficient"
            )));
        }
        Ok(p)
    }

    pub fn from_i64(a2: i64, a1: i64, a0: i64) -> Result<Self> {
        Self::new(Int::from(a2), Int::from(a1), Int::from(a0))
    }

    /// Divides out the content and fixes the leading sign.
    pub fn normalized(a2: Int, a1: Int, a0: Int) -> Result<Self> {
        if a2.is_zero() && a1.is_zero() {
            return Err(Error::InvalidPolynomial("constant polynomial".into()));
        }
        let g = a2.gcd(&a1).gcd(&a0);
        let lead = if a2.is_zero() { &a1 } else { &a2 };
        let g = if lead.is_negative() { -g } else { g };
        let p = QuadPoly { a2: &a2 / &g, a1: &a1 / &g, a0: &a0 / &g };
        if !p.a2.is_zero() && is_perfect_square(&p.discriminant()).is_some() {
            return Err(Error::InvalidPolynomial(format!(
                "({}, {}, {}) is reducible over Q",
                p.a2, p.a1, p.a0
            )));
        }
        Ok(p)
    }

    pub(crate) fn from_coeffs_unchecked(a2: Int, a1: Int, a0: Int) -> Self {
        QuadPoly { a2, a1, a0 }
    }

    pub fn coeffs(&self) -> (&Int, &Int, &Int) {
        (&self.a2, &self.a1, &self.a0)
    }

    pub fn degree(&self) -> usize {
        if self.a2.is_zero() {
            1
        } else {
            2
        }
    }

    pub fn discriminant(&self) -> Int {
        &self.a1 * &self.a1 - Int::from(4) * &self.a2 * &self.a0
    }

    /// Squarefree part of the discriminant: the `k` with roots in `Q(√k)`.
    pub fn field_k(&self) -> Option<SquarefreeK> {
        if self.degree() == 1 {
            return None;
        }
        let (s, _) = squarefree_decompose(&self.discriminant()).ok()?;
        SquarefreeK::new(s).ok()
    }

    /// The roots: `(−a1 + √D)/(2a2)` first, then its conjugate. Degree 1
    /// polynomials have a single rational root.
    pub fn roots(&self) -> Vec<QuadSurd> {
        if self.degree() == 1 {
            return vec![QuadSurd::from_rat(Rat::new(-self.a0.clone(), self.a1.clone()))];
        }
        let two_a = &self.a2 * 2;
        let plus = QuadSurd::from_parts(-self.a1.clone(), Int::one(), self.discriminant(), two_a)
            .expect("nonzero denominator");
        let minus = plus.conjugate();
        vec![plus, minus]
    }

    /// Evaluates the polynomial at a surd.
    pub fn eval(&self, x: &QuadSurd) -> QuadSurd {
        let c = |n: &Int| QuadSurd::from_int(n.clone());
        &(&(&c(&self.a2) * x) + &c(&self.a1)) * x + c(&self.a0).clone()
    }
}

impl Add<QuadSurd> for QuadSurd {
    type Output = QuadSurd;
    fn add(self, rhs: QuadSurd) -> QuadSurd {
        &self + &rhs
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a2, self.a1, self.a0)
    }
}

/// Fundamental unit `ε > 1` of the maximal order of a real quadratic field.
///
/// Walks the continued fraction of `θ = −ω'`, where `ω` generates the maximal
/// order (`√k`, or `(1+√k)/2` when `k ≡ 1 mod 4`); each convergent `x/y` is a
/// candidate for the unit `x + yω` and the first one of norm ±1 is returned.
pub fn fundamental_unit(k: &SquarefreeK) -> Result<QuadSurd> {
    if !k.is_real() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} < 0: the unit group of an imaginary quadratic field is finite"
        )));
    }
    let kv = k.value().clone();
    let half = Rat::new(Int::one(), Int::from(2));
    let one_mod_four = kv.mod_floor(&Int::from(4)).is_one();
    let omega = if one_mod_four {
        QuadSurd::new(half.clone(), half.clone(), k.clone())
    } else {
        QuadSurd::new(Rat::zero(), Rat::one(), k.clone())
    };
    let mut theta = -omega.conjugate();
    let (mut h1, mut h2) = (Int::one(), Int::zero());
    let (mut g1, mut g2) = (Int::zero(), Int::one());
    let shift = (&kv - 1) / 4;
    for _ in 0..1_000_000 {
        let a = theta.floor()?;
        let h = &a * &h1 + &h2;
        let g = &a * &g1 + &g2;
        let norm = if one_mod_four {
            &h * &h + &h * &g - &shift * &g * &g
        } else {
            &h * &h - &kv * &g * &g
        };
        if norm.abs().is_one() && g.is_positive() {
            let unit = &QuadSurd::from_int(h) + &omega.scale(&Rat::from_integer(g));
            return Ok(unit);
        }
        h2 = std::mem::replace(&mut h1, h);
        g2 = std::mem::replace(&mut g1, g);
        theta = (&theta - &QuadSurd::from_int(a)).inverse()?;
    }
    Err(Error::Resource(format!("no fundamental unit found for k = {k}")))
}
