//! Multiplicative relations modulo torsion among elements of one field
//! `Q(√k)` (or `Q`).
//!
//! A product `∏ gⱼ^eⱼ` is torsion exactly when it has valuation zero at every
//! finite place and, in a real quadratic field, its unit part is `±1`. The
//! first condition is an integer kernel of the valuation matrix; the second
//! expresses each kernel unit as `±ε^m` against the fundamental unit and takes
//! the kernel of the resulting linear form. No ideal arithmetic or class group
//! information is needed.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{factorize, int_valuation, kronecker, ln_abs, padic_sqrt, rat_valuation, Int};
use crate::error::{Error, Result};
use crate::lattice::{echelon, hnf, left_kernel_sparse, KeyedRow, SparseVec};
use crate::quad::{common_field, fundamental_unit, FieldTag, QuadSurd};

/// Default cap on the bit length of intermediate surd coordinates.
pub const DEFAULT_BIT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaceKind {
    /// A prime of `Q` itself (all generators rational).
    Rational,
    Split,
    Inert,
    Ramified,
}

/// A finite place of `Q(√k)` (or `Q`) above the rational prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePlace {
    pub p: Int,
    pub kind: PlaceKind,
    /// Which of the two conjugate places for a split prime; 0 otherwise.
    pub branch: u8,
    /// `√k mod p^precision` for split places (negated on branch 1); 0 otherwise.
    pub hensel_root: Int,
    pub precision: u32,
}

/// The places above each prime in `primes`. Split primes yield two places
/// carrying a Hensel root of `k` modulo `p^precision`.
pub fn places_for(field: &FieldTag, primes: &[Int], precision: u32) -> Vec<PrimePlace> {
    let mut out = Vec::new();
    for p in primes {
        let Some(k) = field else {
            out.push(PrimePlace {
                p: p.clone(),
                kind: PlaceKind::Rational,
                branch: 0,
                hensel_root: Int::zero(),
                precision: 0,
            });
            continue;
        };
        let kind = match kronecker(&k.field_discriminant(), p) {
            0 => PlaceKind::Ramified,
            1 => PlaceKind::Split,
            _ => PlaceKind::Inert,
        };
        if kind != PlaceKind::Split {
            out.push(PrimePlace { p: p.clone(), kind, branch: 0, hensel_root: Int::zero(), precision: 0 });
            continue;
        }
        let precision = precision.max(1);
        let root = padic_sqrt(k.value(), p, precision).expect("k is a p-adic square at split p");
        let modulus = num_traits::pow(p.clone(), precision as usize);
        for branch in 0..2u8 {
            let hensel_root = if branch == 0 { root.clone() } else { (&modulus - &root).mod_floor(&modulus) };
            out.push(PrimePlace { p: p.clone(), kind, branch, hensel_root, precision });
        }
    }
    out
}

/// Rational primes at which `x` can have nonzero valuation.
pub fn support_primes(x: &QuadSurd) -> Result<BTreeSet<Int>> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    let n = x.norm();
    let (_, _, d) = x.integer_parts();
    let mut out = BTreeSet::new();
    for m in [n.numer(), n.denom(), &d] {
        if !m.is_zero() {
            out.extend(factorize(m)?.factors.into_iter().map(|(p, _)| p));
        }
    }
    Ok(out)
}

/// Exact valuation `v_P(x)`, normalized so that `v_P` is surjective onto `Z`.
pub fn valuation(x: &QuadSurd, place: &PrimePlace) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    let p = &place.p;
    match place.kind {
        PlaceKind::Rational => match x.as_rational() {
            Some(r) => Ok(rat_valuation(r, p)),
            None => Err(Error::InvalidArgument(format!("{x} is not rational"))),
        },
        PlaceKind::Ramified => Ok(rat_valuation(&x.norm(), p)),
        PlaceKind::Inert => Ok(rat_valuation(&x.norm(), p) / 2),
        PlaceKind::Split => {
            let Some(k) = x.k().map(|k| k.value().clone()) else {
                return Ok(rat_valuation(x.a(), p));
            };
            let (a, b, d) = x.integer_parts();
            let ny = &a * &a - &b * &b * &k;
            // v_P(a + b√k) ≤ v_p(N) < n, so the residue mod p^n is exact.
            let n = int_valuation(&ny, p) + 1;
            let modulus = num_traits::pow(p.clone(), n as usize);
            let root = if place.precision >= n {
                place.hensel_root.mod_floor(&modulus)
            } else {
                let mut r = padic_sqrt(&k, p, n)
                    .ok_or_else(|| Error::InvalidArgument(format!("{p} does not split")))?;
                if place.branch == 1 {
                    r = (&modulus - r).mod_floor(&modulus);
                }
                r
            };
            let image = (a + b * root).mod_floor(&modulus);
            let num_v = int_valuation(&image, p) as i64;
            Ok(num_v - int_valuation(&d, p) as i64)
        }
    }
}

/// Valuations of `x` at each place, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationVector {
    pub places: Vec<PrimePlace>,
    pub exps: Vec<i64>,
}

pub fn valuation_vector(x: &QuadSurd, places: &[PrimePlace]) -> Result<ValuationVector> {
    let exps = places.iter().map(|pl| valuation(x, pl)).collect::<Result<Vec<_>>>()?;
    Ok(ValuationVector { places: places.to_vec(), exps })
}

fn check_bits(x: &QuadSurd, limit: u64) -> Result<()> {
    let (p, q, r) = x.integer_parts();
    let bits = p.bits().max(q.bits()).max(r.bits());
    if bits > limit {
        return Err(Error::Resource(format!(
            "intermediate value needs {bits} bits, above the limit of {limit}"
        )));
    }
    Ok(())
}

fn guarded_pow(x: &QuadSurd, e: &Int, limit: u64) -> Result<QuadSurd> {
    // Cheap pre-check: the result needs roughly |e|·bits(x) bits.
    let (p, q, r) = x.integer_parts();
    let bits = p.bits().max(q.bits()).max(r.bits()).max(1);
    let est = e.abs().to_u64().unwrap_or(u64::MAX).saturating_mul(bits);
    if est > limit.saturating_mul(2) {
        return Err(Error::Resource(format!(
            "power {x}^{e} would need about {est} bits, above the limit of {limit}"
        )));
    }
    let y = x.pow_big(e)?;
    check_bits(&y, limit)?;
    Ok(y)
}

/// Exact `∏ basesᵢ^expsᵢ` with the bit-length guard applied at every step.
pub fn eval_product(bases: &[QuadSurd], exps: &SparseVec, limit: u64) -> Result<QuadSurd> {
    let mut acc = QuadSurd::one();
    for (i, e) in exps.iter() {
        let term = guarded_pow(&bases[*i], e, limit)?;
        acc = acc.try_mul(&term)?;
        check_bits(&acc, limit)?;
    }
    Ok(acc)
}

/// For a unit `u` of a real quadratic field, the `m` with `u = ±ε^m`.
fn unit_exponent(u: &QuadSurd, eps: &QuadSurd, ln_eps: f64, limit: u64) -> Result<i64> {
    if u.abs()?.is_one() {
        return Ok(0);
    }
    let (w, sign) = if u.abs()?.try_cmp(&QuadSurd::one())? == std::cmp::Ordering::Less {
        (u.inverse()?, -1)
    } else {
        (u.clone(), 1)
    };
    // w > 1 has a conjugate of modulus < 1, so p and q share a sign.
    let (p, q, r) = w.integer_parts();
    let kf = w.k().map_or(0.0, |k| k.value().to_f64().unwrap_or(f64::INFINITY));
    let shift = p.bits().max(q.bits()).saturating_sub(60);
    let ps = (p.abs() >> shift).to_f64().unwrap_or(0.0);
    let qs = (q.abs() >> shift).to_f64().unwrap_or(0.0);
    let ln_w = (ps + qs * kf.sqrt()).ln() + shift as f64 * std::f64::consts::LN_2 - ln_abs(&r);
    let guess = (ln_w / ln_eps).round() as i64;
    for m in [guess, guess - 1, guess + 1] {
        if m < 1 {
            continue;
        }
        let pm = guarded_pow(eps, &Int::from(m), limit)?;
        let ratio = w.try_div(&pm)?;
        if ratio.abs()?.is_one() {
            return Ok(sign * m);
        }
    }
    Err(Error::Verification(format!("{u} is not ± a power of {eps}")))
}

/// Integer exponent vectors `e` with `∏ gⱼ^eⱼ` a root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    pub generators: Vec<QuadSurd>,
    /// Hermite normal form basis.
    pub basis: Vec<Vec<Int>>,
}

/// Shared state for relation computations over a fixed generator list:
/// field, places, valuation rows and (for real fields) the fundamental unit.
#[derive(Debug, Clone)]
pub struct RelationContext {
    pub generators: Vec<QuadSurd>,
    pub field: FieldTag,
    pub places: Vec<PrimePlace>,
    pub valuations: Vec<Vec<Int>>,
    unit: Option<(QuadSurd, f64)>,
    pub bit_limit: u64,
}

impl RelationContext {
    pub fn new(generators: Vec<QuadSurd>, bit_limit: u64) -> Result<Self> {
        let field = common_field(&generators)?;
        let mut primes = BTreeSet::new();
        for g in &generators {
            primes.extend(support_primes(g)?);
        }
        let primes: Vec<Int> = primes.into_iter().collect();
        // Precision just above the largest norm valuation seen at each prime.
        let mut precision: HashMap<Int, u32> = HashMap::new();
        for g in &generators {
            let (a, b, d) = g.integer_parts();
            let k = field.as_ref().map_or_else(Int::zero, |k| k.value().clone());
            let ny = &a * &a - &b * &b * k;
            for p in &primes {
                let v = int_valuation(&ny, p).max(int_valuation(&d, p)) + 1;
                let e = precision.entry(p.clone()).or_insert(1);
                *e = (*e).max(v);
            }
        }
        let mut places = Vec::new();
        for p in &primes {
            places.extend(places_for(&field, std::slice::from_ref(p), precision[p]));
        }
        let valuations = generators
            .iter()
            .map(|g| {
                places
                    .iter()
                    .map(|pl| valuation(g, pl).map(Int::from))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = match &field {
            Some(k) if k.is_real() => {
                let eps = fundamental_unit(k)?;
                let ln = eps.to_f64()?.ln();
                Some((eps, ln))
            }
            _ => None,
        };
        Ok(RelationContext { generators, field, places, valuations, unit, bit_limit })
    }

    pub fn fundamental_unit(&self) -> Option<&QuadSurd> {
        self.unit.as_ref().map(|(e, _)| e)
    }

    /// Generators of the relation lattice among the first `n` generators (not
    /// reduced), as sparse vectors of length `n`.
    pub fn relations_prefix(&self, n: usize) -> Result<Vec<SparseVec>> {
        let stage1 = left_kernel_sparse(&self.valuations[..n]);
        let Some((eps, ln_eps)) = &self.unit else {
            return Ok(stage1);
        };
        let gens = &self.generators[..n];
        let mut rows = Vec::with_capacity(stage1.len());
        for v in stage1 {
            let u = eval_product(gens, &v, self.bit_limit)?;
            let m = unit_exponent(&u, eps, *ln_eps, self.bit_limit)?;
            rows.push(KeyedRow { key: vec![Int::from(m)], tail: v });
        }
        let rank = echelon(&mut rows).len();
        Ok(rows.drain(rank..).map(|r| r.tail).collect())
    }

    pub fn relation_lattice(&self) -> Result<RelationLattice> {
        let n = self.generators.len();
        let rels = self.relations_prefix(n)?;
        let dense: Vec<Vec<Int>> = rels.iter().map(|v| v.to_dense(n)).collect();
        let basis = hnf(&dense);
        for row in &basis {
            let t = eval_product(&self.generators, &SparseVec::from_dense(row), self.bit_limit)?;
            if !t.is_root_of_unity() {
                return Err(Error::Verification(format!("relation {row:?} evaluates to {t}")));
            }
        }
        Ok(RelationLattice { generators: self.generators.clone(), basis })
    }

    /// Membership of generator 0 in the span of generators `1..n` modulo
    /// torsion, with the smallest positive exponent `s`.
    pub fn member_prefix(&self, n: usize) -> Result<Option<MembershipWitness>> {
        let rels = self.relations_prefix(n)?;
        let mut rows: Vec<KeyedRow> = rels
            .into_iter()
            .map(|v| KeyedRow { key: vec![v.get(0)], tail: v })
            .collect();
        if echelon(&mut rows).is_empty() {
            return Ok(None);
        }
        let rel = &rows[0].tail;
        let s = rows[0].key[0].clone();
        let bases = self.generators[1..n].to_vec();
        let exps: Vec<Int> = (1..n).map(|i| -rel.get(i)).collect();
        let alpha = &self.generators[0];
        let rhs = eval_product(&bases, &SparseVec::from_dense(&exps), self.bit_limit)?;
        let lhs = guarded_pow(alpha, &s, self.bit_limit)?;
        let zeta = rhs.try_div(&lhs)?;
        let order = zeta.root_of_unity_order().ok_or_else(|| {
            Error::Verification(format!("relation leaves the non-torsion factor {zeta}"))
        })?;
        let w = MembershipWitness { s, zeta, zeta_order: order, bases, exps };
        if !w.verify(alpha, self.bit_limit)? {
            return Err(Error::Verification("membership witness does not verify".into()));
        }
        Ok(Some(w))
    }
}

/// The relation lattice of `gens`, HNF basis, every vector verified exactly.
pub fn relation_lattice(gens: &[QuadSurd]) -> Result<RelationLattice> {
    RelationContext::new(gens.to_vec(), DEFAULT_BIT_LIMIT)?.relation_lattice()
}

/// `α^s · ζ = ∏ basesᵢ^expsᵢ` with `ζ` a root of unity of order `zeta_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWitness {
    pub s: Int,
    pub zeta: QuadSurd,
    pub zeta_order: u32,
    pub bases: Vec<QuadSurd>,
    pub exps: Vec<Int>,
}

impl MembershipWitness {
    pub fn verify(&self, alpha: &QuadSurd, limit: u64) -> Result<bool> {
        let lhs = guarded_pow(alpha, &self.s, limit)?.try_mul(&self.zeta)?;
        let rhs = eval_product(&self.bases, &SparseVec::from_dense(&self.exps), limit)?;
        Ok(lhs == rhs && self.zeta.root_of_unity_order() == Some(self.zeta_order))
    }

    /// Exponents for an exact (torsion-free) identity `α^s' = ∏ bᵢ^eᵢ'`,
    /// obtained by raising the witness to the order of `ζ`.
    pub fn exact_power(&self) -> (Int, Vec<Int>) {
        let ord = Int::from(self.zeta_order);
        (&self.s * &ord, self.exps.iter().map(|e| e * &ord).collect())
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .bases
            .iter()
            .zip(&self.exps)
            .filter(|(_, e)| !e.is_zero())
            .map(|(b, e)| json!({ "base": b.to_string(), "exp": crate::bset::int_json(e) }))
            .collect();
        json!({
            "s": crate::bset::int_json(&self.s),
            "zeta": { "order": self.zeta_order, "value": self.zeta.to_string() },
            "factors": factors,
        })
    }
}

impl std::fmt::Display for MembershipWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = if self.s.is_one() { "alpha".to_string() } else { format!("alpha^{}", self.s) };
        let lhs = if self.zeta.is_one() { s } else { format!("{s} * ({})", self.zeta) };
        let rhs: Vec<String> = self
            .bases
            .iter()
            .zip(&self.exps)
            .filter(|(_, e)| !e.is_zero())
            .map(|(b, e)| if e.is_one() { format!("({b})") } else { format!("({b})^{e}") })
            .collect();
        let rhs = if rhs.is_empty() { "1".to_string() } else { rhs.join(" * ") };
        write!(f, "{lhs} = {rhs}")
    }
}

/// Whether some positive power of `alpha` lies in the group generated by
/// `gens` modulo torsion; the witness uses the smallest such power.
pub fn member_mod_torsion(alpha: &QuadSurd, gens: &[QuadSurd]) -> Result<Option<MembershipWitness>> {
    if alpha.is_zero() {
        return Err(Error::Zero);
    }
    let mut all = Vec::with_capacity(gens.len() + 1);
    all.push(alpha.clone());
    all.extend_from_slice(gens);
    let ctx = RelationContext::new(all, DEFAULT_BIT_LIMIT)?;
    ctx.member_prefix(gens.len() + 1)
}
