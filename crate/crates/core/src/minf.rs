//! The ultrametric Mahler measure `M∞`.
//!
//! For `α` of degree at most two the ordered set `B` is finite and explicit;
//! `M∞(α)` is the modified measure of the first entry `b_J` such that some
//! positive power of `α` lies in `⟨b₁, …, b_J⟩` modulo torsion.

use std::time::Instant;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{factorize, largest_prime_of, Int, LargestPrime, Rat};
use crate::bset::{build_ordered_bset, BSetEntry, OrderedBSet, DEFAULT_GUARD};
use crate::error::{Error, Result};
use crate::group::{member_mod_torsion, MembershipWitness, RelationContext, DEFAULT_BIT_LIMIT};
use crate::mahler::{mahler_surd, MahlerValue};
use crate::quad::{QuadPoly, QuadSurd};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinfOptions {
    /// Cap on `⌊M(α)⌋` for the B-set enumeration.
    pub guard: u64,
    /// Cap on intermediate coordinate bit length in the lattice stage.
    pub bit_limit: u64,
}

impl Default for MinfOptions {
    fn default() -> Self {
        MinfOptions { guard: DEFAULT_GUARD, bit_limit: DEFAULT_BIT_LIMIT }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timings {
    pub bset_ms: f64,
    pub scan_ms: f64,
}

#[derive(Debug, Clone)]
pub struct MinfResult {
    pub input: QuadSurd,
    pub value: MahlerValue,
    /// 1-based position of `b_J` in `bset`.
    pub j_index: Option<usize>,
    pub b_j: Option<BSetEntry>,
    pub witness: Option<MembershipWitness>,
    pub bset: Option<OrderedBSet>,
    pub timings: Timings,
}

impl MinfResult {
    fn root_of_unity(input: &QuadSurd) -> Self {
        MinfResult {
            input: input.clone(),
            value: MahlerValue::one(),
            j_index: None,
            b_j: None,
            witness: None,
            bset: None,
            timings: Timings::default(),
        }
    }

    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "input": self.input.to_string(),
            "value": { "exact": self.value.to_string(), "decimal": self.value.decimal(digits) },
            "j_index": self.j_index,
            "b_j": self.b_j.as_ref().map(|e| {
                let j = e.to_json(digits);
                json!({ "value": j["value"], "minpoly": j["minpoly"], "mbar": j["mbar"] })
            }),
            "witness": self.witness.as_ref().map(MembershipWitness::to_json),
            "bset_size": self.bset.as_ref().map(OrderedBSet::len),
            "timings": { "bset_ms": self.timings.bset_ms, "scan_ms": self.timings.scan_ms },
        })
    }
}

pub fn minf(alpha: &QuadSurd) -> Result<MinfResult> {
    minf_with(alpha, &MinfOptions::default())
}

pub fn minf_with(alpha: &QuadSurd, opts: &MinfOptions) -> Result<MinfResult> {
    if alpha.is_zero() {
        return Err(Error::Zero);
    }
    if alpha.is_root_of_unity() {
        return Ok(MinfResult::root_of_unity(alpha));
    }
    let t0 = Instant::now();
    let bset = build_ordered_bset(alpha, opts.guard)?;
    let t1 = Instant::now();
    let (j, witness) = scan_entries(alpha, &bset.entries, opts)?;
    let t2 = Instant::now();
    let b_j = bset.entries[j - 1].clone();
    Ok(MinfResult {
        input: alpha.clone(),
        value: b_j.mbar.measure.clone(),
        j_index: Some(j),
        b_j: Some(b_j),
        witness: Some(witness),
        bset: Some(bset),
        timings: Timings {
            bset_ms: (t1 - t0).as_secs_f64() * 1e3,
            scan_ms: (t2 - t1).as_secs_f64() * 1e3,
        },
    })
}

// Incremental row space over Q of valuation vectors.
#[derive(Default)]
struct RationalSpan {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl RationalSpan {
    fn reduce(&self, v: &[Int]) -> Vec<Rat> {
        let mut v: Vec<Rat> = v.iter().cloned().map(Rat::from_integer).collect();
        for (piv, row) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = &v[*piv] / &row[*piv];
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        v
    }

    fn insert(&mut self, v: &[Int]) {
        let r = self.reduce(v);
        if let Some(piv) = r.iter().position(|x| !x.is_zero()) {
            self.rows.push((piv, r));
        }
    }

    fn contains(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Finds the minimal `J` over the given entry order. Returns `J` (1-based)
/// and a witness using only the first `J` entries.
///
/// The valuation matrix is built once for `α` and all entries; each step
/// extends a rational row space by one valuation vector. Only when `α`'s
/// valuation vector enters that span is the exact lattice computed, since
/// membership modulo torsion implies it. Outside real quadratic fields the
/// span condition is also sufficient.
pub fn scan_entries(alpha: &QuadSurd, entries: &[BSetEntry], opts: &MinfOptions) -> Result<(usize, MembershipWitness)> {
    let mut gens = Vec::with_capacity(entries.len() + 1);
    gens.push(alpha.clone());
    gens.extend(entries.iter().map(|e| e.value.clone()));
    let ctx = RelationContext::new(gens, opts.bit_limit)?;
    let real = ctx.fundamental_unit().is_some();
    let mut span = RationalSpan::default();
    for j in 1..=entries.len() {
        span.insert(&ctx.valuations[j]);
        if !span.contains(&ctx.valuations[0]) {
            continue;
        }
        match ctx.member_prefix(j + 1)? {
            Some(w) => return Ok((j, w)),
            None if real => continue,
            None => {
                return Err(Error::Verification(format!(
                    "valuations of {alpha} lie in the span of the first {j} entries but no relation was found"
                )))
            }
        }
    }
    Err(Error::Verification(format!("no prefix of the B-set captures {alpha}")))
}

/// Reference scan: recomputes the membership test from scratch for each `J`.
pub fn scan_entries_naive(alpha: &QuadSurd, entries: &[BSetEntry]) -> Result<(usize, MembershipWitness)> {
    let values: Vec<QuadSurd> = entries.iter().map(|e| e.value.clone()).collect();
    for j in 1..=values.len() {
        if let Some(w) = member_mod_torsion(alpha, &values[..j])? {
            return Ok((j, w));
        }
    }
    Err(Error::Verification(format!("no prefix of the B-set captures {alpha}")))
}

/// `M∞` of a nonzero rational: its largest prime factor (1 for ±1). With
/// `with_witness`, also returns `r·sign = ∏ p^e` over those primes.
pub fn minf_rational(r: &Rat, with_witness: bool) -> Result<MinfResult> {
    let input = QuadSurd::from_rat(r.clone());
    let p = match largest_prime_of(r)? {
        LargestPrime::Unit => return Ok(MinfResult::root_of_unity(&input)),
        LargestPrime::Prime(p) => p,
    };
    let witness = if with_witness {
        let mut bases = Vec::new();
        let mut exps = Vec::new();
        for (q, e) in factorize(r.numer())?.factors {
            bases.push(QuadSurd::from_int(q));
            exps.push(Int::from(e));
        }
        for (q, e) in factorize(r.denom())?.factors {
            bases.push(QuadSurd::from_int(q));
            exps.push(-Int::from(e));
        }
        let sign = if r < &Rat::zero() { -1 } else { 1 };
        let zeta = QuadSurd::from_int(sign);
        let order = if sign < 0 { 2 } else { 1 };
        Some(MembershipWitness { s: Int::one(), zeta, zeta_order: order, bases, exps })
    } else {
        None
    };
    Ok(MinfResult {
        input,
        value: MahlerValue::from_int(p.clone()),
        j_index: None,
        b_j: Some(BSetEntry::rational(Rat::from_integer(p))?),
        witness,
        bset: None,
        timings: Timings::default(),
    })
}

/// The number `minf` works on for an integer polynomial given highest degree
/// first: the root of a linear polynomial, or the `(−b + √D)/(2a)` root of an
/// irreducible quadratic.
pub fn root_of_coeffs(coeffs: &[Int]) -> Result<QuadSurd> {
    let first = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
    let c = &coeffs[first..];
    match c.len() {
        0 | 1 => Err(Error::InvalidPolynomial("constant polynomial".into())),
        2 => {
            if c[1].is_zero() {
                return Err(Error::InvalidArgument("the root is zero".into()));
            }
            Ok(QuadSurd::from_rat(Rat::new(-c[1].clone(), c[0].clone())))
        }
        3 => {
            let poly = QuadPoly::normalized(c[0].clone(), c[1].clone(), c[2].clone())?;
            if poly.coeffs().2.is_zero() {
                return Err(Error::InvalidPolynomial("x divides the polynomial".into()));
            }
            Ok(poly.roots().swap_remove(0))
        }
        n => Err(Error::OutOfScope(n - 1)),
    }
}

/// Upper bound check `M∞(α) ≤ M(α)`.
pub fn within_mahler_bound(result: &MinfResult) -> Result<bool> {
    let m = mahler_surd(&result.input)?;
    Ok(result.value.try_cmp(&m)? != std::cmp::Ordering::Greater)
}
