#![allow(dead_code)]

use std::cmp::Ordering;

use minf::arith::{Int, Rat};
use minf::quad::{QuadPoly, QuadSurd};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn s(text: &str) -> QuadSurd {
    text.parse().unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const FIELDS: [i64; 10] = [-1, -2, -3, -5, -7, 2, 3, 5, 6, 21];

pub fn random_surd(rng: &mut ChaCha8Rng, k: i64, coef: i64) -> QuadSurd {
    loop {
        let p = rng.gen_range(-coef..=coef);
        let q = rng.gen_range(-coef..=coef);
        let r = rng.gen_range(1..=coef);
        let x = QuadSurd::from_parts(int(p), int(q), int(k), int(r)).unwrap();
        if !x.is_zero() {
            return x;
        }
    }
}

/// An irreducible primitive quadratic with positive leading coefficient.
pub fn random_quadratic(rng: &mut ChaCha8Rng, coef: i64) -> QuadPoly {
    loop {
        let a2 = rng.gen_range(1..=coef);
        let a1 = rng.gen_range(-coef..=coef);
        let a0 = rng.gen_range(-coef..=coef);
        if let Ok(p) = QuadPoly::from_i64(a2, a1, a0) {
            if p.degree() == 2 {
                return p;
            }
        }
    }
}

/// Roots of unity of `Q(√k)`, listed directly.
pub fn roots_of_unity(k: Option<i64>) -> Vec<QuadSurd> {
    let mut out = vec![s("1"), s("-1")];
    match k {
        Some(-1) => out.extend([s("sqrt(-1)"), s("-sqrt(-1)")]),
        Some(-3) => out.extend(
            ["(1+sqrt(-3))/2", "(1-sqrt(-3))/2", "(-1+sqrt(-3))/2", "(-1-sqrt(-3))/2"].map(s),
        ),
        _ => {}
    }
    out
}

pub fn k_of(x: &QuadSurd) -> Option<i64> {
    x.k().map(|k| k.value().to_i64().unwrap())
}

/// Mahler measure of `a2 x² + a1 x + a0` from floating-point roots.
pub fn float_mahler(a2: i64, a1: i64, a0: i64) -> f64 {
    let (a2, a1, a0) = (a2 as f64, a1 as f64, a0 as f64);
    if a2 == 0.0 {
        if a1 == 0.0 {
            return a0.abs();
        }
        return a1.abs() * (a0 / a1).abs().max(1.0);
    }
    let d = a1 * a1 - 4.0 * a2 * a0;
    let moduli = if d < 0.0 {
        let m = (a0 / a2).abs().sqrt();
        [m, m]
    } else {
        let sq = d.sqrt();
        // stable pair: one root from the quadratic formula, the other from Vieta
        let sgn = if a1 < 0.0 { -1.0 } else { 1.0 };
        let q = -0.5 * (a1 + sgn * sq);
        let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a2, a0 / q) };
        [r1.abs(), r2.abs()]
    };
    a2.abs() * moduli.iter().map(|m| m.max(1.0)).product::<f64>()
}

/// Squarefree part by trial division, independent of the library routine.
pub fn squarefree_part(mut n: i64) -> i64 {
    let sign = n.signum();
    n = n.abs();
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    sign * out * n
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn pow_signed(x: &QuadSurd, e: i64) -> QuadSurd {
    x.pow(e).unwrap()
}

/// Smallest `s ≥ 1` with `α^s·ζ = ∏ gᵢ^{eᵢ}` for some root of unity `ζ`,
/// searching `s ≤ s_max` and every `eᵢ ∈ [−box, box]`.
pub fn brute_membership(alpha: &QuadSurd, gens: &[QuadSurd], s_max: i64, bx: i64) -> Option<i64> {
    let powers: Vec<Vec<QuadSurd>> =
        gens.iter().map(|g| (-bx..=bx).map(|e| pow_signed(g, e)).collect()).collect();
    let mut products = vec![QuadSurd::one()];
    for table in &powers {
        let mut next = Vec::with_capacity(products.len() * table.len());
        for p in &products {
            for t in table {
                next.push(p.try_mul(t).unwrap());
            }
        }
        products = next;
    }
    for sp in 1..=s_max {
        let a = pow_signed(alpha, sp);
        for p in &products {
            if p.try_div(&a).unwrap().is_root_of_unity() {
                return Some(sp);
            }
        }
    }
    None
}

/// `⌊(A + B√k)/C⌋` for `C > 0`, by bisection on exact integer comparisons.
pub fn floor_surd(a: &Int, b: &Int, k: &Int, c: &Int) -> Int {
    // x ≤ (A + B√k)/C  ⟺  xC − A ≤ B√k
    let le = |x: &Int| -> bool {
        let lhs = x * c - a;
        if k.is_zero() || b.is_zero() {
            return lhs <= Int::zero();
        }
        let lhs_neg = lhs < Int::zero();
        let b_neg = b < &Int::zero();
        match (lhs_neg, b_neg) {
            (true, false) => true,
            (false, true) => false,
            (false, false) => &lhs * &lhs <= b * b * k,
            (true, true) => &lhs * &lhs >= b * b * k,
        }
    };
    let mut lo = Int::from(-1);
    while !le(&lo) {
        lo *= 2;
    }
    let mut hi = Int::one();
    while le(&hi) {
        hi *= 2;
    }
    // le(lo) holds, le(hi) fails
    while &hi - &lo > Int::one() {
        let mid: Int = (&lo + &hi) / 2;
        if le(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Correctly rounded `digits`-place decimal of a real surd via [`floor_surd`].
pub fn decimal_oracle(x: &QuadSurd, digits: u32) -> String {
    let (p, q, r) = x.integer_parts();
    let k = x.k().map(|k| k.value().clone()).unwrap_or_else(Int::zero);
    let scale = num_traits::pow(Int::from(10), digits as usize);
    // ⌊x·10^d + 1/2⌋ = ⌊(2p·10^d + r + 2q·10^d·√k) / 2r⌋
    let n = floor_surd(&(Int::from(2) * &p * &scale + &r), &(Int::from(2) * &q * &scale), &k, &(Int::from(2) * &r));
    let neg = n < Int::zero();
    let mag = if neg { -n } else { n };
    let text = format!("{:0>width$}", mag.to_string(), width = digits as usize + 1);
    let (ip, fp) = text.split_at(text.len() - digits as usize);
    format!("{}{ip}.{fp}", if neg { "-" } else { "" })
}

pub fn cmp_f64(x: f64, y: f64) -> Ordering {
    x.partial_cmp(&y).unwrap()
}
