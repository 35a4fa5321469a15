//! Enumeration of the points of degree one and two whose Mahler measure is at
//! most a given bound, and the ordered list the minimal-index scan consumes.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::mahler::{mahler_coeffs, mahler_surd, mbar, MBarResult, MahlerValue};
use crate::quad::{FieldTag, QuadPoly, QuadSurd, SquarefreeK};

/// Default cap on `⌊M(α)⌋` for enumeration.
pub const DEFAULT_GUARD: u64 = 10_000;

/// Which root of its minimal polynomial an entry is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Rational,
    /// `(−b + √D)/(2a)`
    Plus,
    /// `(−b − √D)/(2a)`
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSetEntry {
    pub value: QuadSurd,
    pub minpoly: QuadPoly,
    pub mbar: MBarResult,
    pub degree: u32,
    pub branch: Branch,
}

impl BSetEntry {
    pub fn rational(r: Rat) -> Result<Self> {
        let value = QuadSurd::from_rat(r);
        Ok(BSetEntry {
            minpoly: value.minimal_polynomial(),
            mbar: mbar(&value)?,
            value,
            degree: 1,
            branch: Branch::Rational,
        })
    }

    /// Both roots of an irreducible quadratic, `Plus` first.
    pub fn roots_of(poly: &QuadPoly) -> Result<[Self; 2]> {
        let roots = poly.roots();
        let make = |value: &QuadSurd, branch| -> Result<Self> {
            Ok(BSetEntry {
                value: value.clone(),
                minpoly: poly.clone(),
                mbar: mbar(value)?,
                degree: 2,
                branch,
            })
        };
        Ok([make(&roots[0], Branch::Plus)?, make(&roots[1], Branch::Minus)?])
    }

    pub fn measure(&self) -> &MahlerValue {
        &self.mbar.measure
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let (a2, a1, a0) = self.minpoly.coeffs();
        json!({
            "value": self.value.to_string(),
            "minpoly": [int_json(a2), int_json(a1), int_json(a0)],
            "mbar": {
                "exact": self.mbar.measure.to_string(),
                "decimal": self.mbar.measure.decimal(digits),
            },
        })
    }
}

pub(crate) fn int_json(n: &Int) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// Total order: modified measure, then degree, then minimal polynomial
/// coefficients, then root branch.
pub fn entry_order(x: &BSetEntry, y: &BSetEntry) -> Ordering {
    x.mbar
        .measure
        .try_cmp(&y.mbar.measure)
        .expect("B-set measures share one field")
        .then(x.degree.cmp(&y.degree))
        .then_with(|| x.minpoly.cmp(&y.minpoly))
        .then(x.branch.cmp(&y.branch))
}

/// The set `B` for one `α`, sorted by [`entry_order`].
#[derive(Debug, Clone)]
pub struct OrderedBSet {
    pub entries: Vec<BSetEntry>,
    pub alpha: QuadSurd,
    pub field_k: FieldTag,
}

impl OrderedBSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every entry together with its negative.
    pub fn pm_closure(&self) -> HashSet<QuadSurd> {
        self.entries.iter().flat_map(|e| [e.value.clone(), -&e.value]).collect()
    }

    pub fn to_json(&self, digits: usize) -> Value {
        Value::Array(self.entries.iter().map(|e| e.to_json(digits)).collect())
    }
}

fn check_guard(bound: &MahlerValue, guard: u64) -> Result<i64> {
    let floor = bound.floor();
    match floor.to_u64() {
        Some(f) if f <= guard => Ok(f as i64),
        _ => Err(Error::Resource(format!(
            "enumeration bound floor(M) = {floor} exceeds the guard {guard}"
        ))),
    }
}

/// Positive rationals `m/n` in lowest terms with `max(m, n) ≤ bound`, ordered
/// by denominator and then numerator.
pub fn enumerate_b1(bound: &MahlerValue) -> Vec<Rat> {
    enumerate_b1_guarded(bound, u64::MAX).expect("unguarded")
}

pub fn enumerate_b1_guarded(bound: &MahlerValue, guard: u64) -> Result<Vec<Rat>> {
    let f = check_guard(bound, guard)?;
    let mut out = Vec::new();
    for n in 1..=f {
        for m in 1..=f {
            if m.gcd(&n) == 1 {
                out.push(Rat::new(Int::from(m), Int::from(n)));
            }
        }
    }
    Ok(out)
}

/// A polynomial kept by the degree-two scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B2Hit {
    pub poly: QuadPoly,
    pub measure: MahlerValue,
}

fn is_square_i64(n: i64) -> bool {
    n >= 0 && {
        let r = n.sqrt();
        r * r == n
    }
}

/// Scans `1 ≤ a ≤ ⌊M⌋`, `0 ≤ b ≤ ⌊2M⌋`, `|c| ≤ ⌊M⌋` and keeps the irreducible
/// primitive `ax² + bx + c` with roots in `Q(√k)` and measure at most `bound`.
/// Hits come back in loop order (`a`, then `b`, then `c`).
pub fn scan_b2(k: &SquarefreeK, bound: &MahlerValue, guard: u64) -> Result<Vec<B2Hit>> {
    let f = check_guard(bound, guard)?;
    let b_max = MahlerValue::new_unchecked(bound.value().scale(&Rat::from_integer(Int::from(2))))
        .floor()
        .to_i64()
        .expect("bounded by the guard");
    // |b² − 4ac| ≤ 8f² fits comfortably, so a k outside i64 can never match.
    let Some(kv) = k.value().to_i64() else {
        return Ok(Vec::new());
    };
    let rows: Vec<Result<Vec<B2Hit>>> = (1..=f)
        .into_par_iter()
        .map(|a| {
            let mut hits = Vec::new();
            for b in 0..=b_max {
                for c in -f..=f {
                    let d = b * b - 4 * a * c;
                    if is_square_i64(d) || a.gcd(&b).gcd(&c) != 1 {
                        continue;
                    }
                    if d % kv != 0 || !is_square_i64(d / kv) {
                        continue;
                    }
                    let (ai, bi, ci) = (Int::from(a), Int::from(b), Int::from(c));
                    let m = mahler_coeffs(&ai, &bi, &ci)?;
                    if m.try_cmp(bound)? != Ordering::Greater {
                        hits.push(B2Hit { poly: QuadPoly::new(ai, bi, ci)?, measure: m });
                    }
                }
            }
            Ok(hits)
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

fn check_alpha_poly(minpoly: &QuadPoly, k: &SquarefreeK) -> Result<()> {
    if minpoly.degree() != 2 {
        return Err(Error::InvalidPolynomial(format!("{minpoly} is not quadratic")));
    }
    match minpoly.field_k() {
        Some(fk) if &fk == k => Ok(()),
        other => Err(Error::InvalidArgument(format!(
            "k = {k} does not match the discriminant field {}",
            other.map_or("Q".to_string(), |f| f.to_string())
        ))),
    }
}

/// Degree-two points of `Q(√k)` with measure at most `M(minpoly)`, both roots
/// of each kept polynomial, in loop order.
pub fn enumerate_b2(minpoly: &QuadPoly, k: &SquarefreeK) -> Result<Vec<BSetEntry>> {
    check_alpha_poly(minpoly, k)?;
    let bound = crate::mahler::mahler_poly(minpoly);
    enumerate_b2_bounded(k, &bound, DEFAULT_GUARD)
}

pub fn enumerate_b2_bounded(k: &SquarefreeK, bound: &MahlerValue, guard: u64) -> Result<Vec<BSetEntry>> {
    let hits = scan_b2(k, bound, guard)?;
    let mut out = Vec::with_capacity(hits.len() * 2);
    for h in hits {
        out.extend(BSetEntry::roots_of(&h.poly)?);
    }
    Ok(out)
}

/// Text listing of the degree-two scan: one `(a, b, c) -- <measure>` line per
/// kept polynomial, measures printed with `digits` decimal places.
pub fn b2list_compat(a: &Int, b: &Int, c: &Int, k: &Int, digits: usize) -> Result<String> {
    b2list_compat_guarded(a, b, c, k, digits, DEFAULT_GUARD)
}

pub fn b2list_compat_guarded(a: &Int, b: &Int, c: &Int, k: &Int, digits: usize, guard: u64) -> Result<String> {
    let poly = QuadPoly::normalized(a.clone(), b.clone(), c.clone())?;
    let k = SquarefreeK::new(k.clone())?;
    check_alpha_poly(&poly, &k)?;
    let bound = crate::mahler::mahler_poly(&poly);
    let mut out = String::new();
    for hit in scan_b2(&k, &bound, guard)? {
        let (x, y, z) = hit.poly.coeffs();
        out.push_str(&format!("({x}, {y}, {z}) -- {}\n", hit.measure.decimal(digits)));
    }
    Ok(out)
}

/// `B = B′ ∪ B″` for a nonzero, non-torsion `α` of degree at most two, sorted.
pub fn build_ordered_bset(alpha: &QuadSurd, guard: u64) -> Result<OrderedBSet> {
    if alpha.is_zero() {
        return Err(Error::Zero);
    }
    if alpha.is_root_of_unity() {
        return Err(Error::InvalidArgument(format!("{alpha} is a root of unity")));
    }
    let bound = mahler_surd(alpha)?;
    let mut entries = enumerate_b1_guarded(&bound, guard)?
        .into_iter()
        .map(BSetEntry::rational)
        .collect::<Result<Vec<_>>>()?;
    if let Some(k) = alpha.k() {
        entries.extend(enumerate_b2_bounded(k, &bound, guard)?);
    }
    entries.sort_by(entry_order);
    Ok(OrderedBSet { entries, alpha: alpha.clone(), field_k: alpha.field().clone() })
}
