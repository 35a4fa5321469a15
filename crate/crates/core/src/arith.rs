//! Arbitrary-precision integers and rationals plus the elementary
//! number-theoretic predicates used by the rest of the crate.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type Int = BigInt;
/// Rationals are always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

const TRIAL_LIMIT: u32 = 1_000_000;
const RHO_SEED: u64 = 0x6d61_686c_6572;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.then_some(i as u32))
            .collect()
    })
}

/// Prime factorization `sign * prod(p^e)` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(Int, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Int {
        let mut acc = Int::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &Int> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn largest_prime(&self) -> Option<&Int> {
        self.factors.last().map(|(p, _)| p)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.sign);
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Miller-Rabin with the first thirteen prime bases. Deterministic below
/// 3.3e24, which covers every input this crate produces at desk scale.
pub fn is_prime(n: &Int) -> bool {
    if n < &Int::from(2) {
        return false;
    }
    if let Some(small) = n.to_u32() {
        if small <= TRIAL_LIMIT {
            return small_primes().binary_search(&small).is_ok();
        }
    }
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for &b in &BASES {
        if (n % b).is_zero() {
            return false;
        }
    }
    let one = Int::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut r = 0u32;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for &b in &BASES {
        let mut x = Int::from(b).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho; `n` odd composite.
fn rho(n: &Int, rng: &mut ChaCha8Rng) -> Int {
    loop {
        let c = Int::from(rng.gen_range(1u64..u64::MAX)) % n;
        let mut y = Int::from(rng.gen_range(2u64..u64::MAX)) % n;
        let m = 128usize;
        let mut g = Int::one();
        let mut r = 1usize;
        let mut q = Int::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let f = |v: &Int| (v * v + &c) % n;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}

fn split_large(n: Int, rng: &mut ChaCha8Rng, out: &mut Vec<Int>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = is_perfect_square(&n) {
        split_large(r.clone(), rng, out);
        split_large(r, rng, out);
        return;
    }
    let d = rho(&n, rng);
    let other = &n / &d;
    split_large(d, rng, out);
    split_large(other, rng, out);
}

/// Exact prime factorization of a nonzero integer.
pub fn factorize(n: &Int) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut factors: Vec<(Int, u32)> = Vec::new();
    for &p in small_primes() {
        let pb = Int::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    if !rest.is_one() {
        let bound = Int::from(TRIAL_LIMIT) * Int::from(TRIAL_LIMIT);
        if rest < bound {
            factors.push((rest, 1));
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(RHO_SEED);
            let mut big = Vec::new();
            split_large(rest, &mut rng, &mut big);
            big.sort();
            for p in big {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    Ok(Factorization { sign, factors })
}

/// Returns the nonnegative square root when `n` is a perfect square.
pub fn is_perfect_square(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    // Squares are 0, 1, 4 or 9 mod 16.
    let low = (n % 16u32).to_u32().unwrap_or(0);
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Writes `n = s * f^2` with `s` squarefree (same sign as `n`) and `f >= 1`.
pub fn squarefree_decompose(n: &Int) -> Result<(Int, Int)> {
    let fac = factorize(n)?;
    let mut s = Int::from(fac.sign);
    let mut f = Int::one();
    for (p, e) in &fac.factors {
        if e % 2 == 1 {
            s *= p;
        }
        f *= num_traits::pow(p.clone(), (*e / 2) as usize);
    }
    Ok((s, f))
}

/// Largest prime appearing in a nonzero rational, or `Unit` for `±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LargestPrime {
    Unit,
    Prime(Int),
}

pub fn largest_prime_of(r: &Rat) -> Result<LargestPrime> {
    if r.is_zero() {
        return Err(Error::Zero);
    }
    let num = factorize(r.numer())?;
    let den = factorize(r.denom())?;
    let best = num
        .largest_prime()
        .into_iter()
        .chain(den.largest_prime())
        .max()
        .cloned();
    Ok(best.map_or(LargestPrime::Unit, LargestPrime::Prime))
}

/// `p`-adic valuation of a nonzero integer.
pub fn int_valuation(n: &Int, p: &Int) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn rat_valuation(r: &Rat, p: &Int) -> i64 {
    int_valuation(r.numer(), p) as i64 - int_valuation(r.denom(), p) as i64
}

/// Kronecker symbol `(d / p)` for a prime `p`.
pub fn kronecker(d: &Int, p: &Int) -> i8 {
    if p == &Int::from(2) {
        if d.is_even() {
            return 0;
        }
        let r = d.mod_floor(&Int::from(8)).to_u8().unwrap_or(0);
        return if r == 1 || r == 7 { 1 } else { -1 };
    }
    let a = d.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

// Tonelli-Shanks for an odd prime; `a` must be a nonzero quadratic residue.
fn sqrt_mod_prime(a: &Int, p: &Int) -> Option<Int> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(Int::zero());
    }
    if kronecker(&a, p) != 1 {
        return None;
    }
    let one = Int::one();
    let p1 = p - &one;
    let mut q = p1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = Int::from(2);
    while kronecker(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = (&tt * &tt) % p;
            i += 1;
        }
        let b = c.modpow(&(Int::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

/// A square root of `k` modulo `p^n` that is congruent to a genuine `p`-adic
/// square root modulo `p^n`. Requires `p` prime not dividing `k` and `k` a
/// `p`-adic square (for `p = 2`, `k ≡ 1 mod 8`).
pub fn padic_sqrt(k: &Int, p: &Int, n: u32) -> Option<Int> {
    let two = Int::from(2);
    if p == &two {
        if k.mod_floor(&Int::from(8)) != Int::one() {
            return None;
        }
        // s^2 ≡ k mod 2^m pins a 2-adic root mod 2^(m-1).
        let target = n + 1;
        let mut s = Int::one();
        let mut m = 3u32;
        while m < target {
            let modulus = Int::one() << (m + 1);
            if !(&s * &s - k).mod_floor(&modulus).is_zero() {
                s += Int::one() << (m - 1);
            }
            m += 1;
        }
        return Some(s.mod_floor(&(Int::one() << n.max(1))));
    }
    let mut s = sqrt_mod_prime(k, p)?;
    if s.is_zero() {
        return None;
    }
    let mut prec = 1u32;
    while prec < n {
        prec = (prec * 2).min(n);
        let modulus = num_traits::pow(p.clone(), prec as usize);
        let inv = mod_inverse(&(&s * 2u32), &modulus)?;
        s = (&s - (&s * &s - k) * inv).mod_floor(&modulus);
    }
    Some(s)
}

/// Natural logarithm of `|n|` for arbitrarily large integers.
pub fn ln_abs(n: &Int) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Floor division with a positive divisor.
pub fn floor_div(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

pub fn sign_of_int(n: &Int) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
