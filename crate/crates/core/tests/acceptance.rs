//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. All comparisons are exact unless a tolerance is
//! stated next to the check.

mod common;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use minf::arith::{rat_valuation, Int};
use minf::bset::{b2list_compat, build_ordered_bset, enumerate_b2_bounded, BSetEntry, DEFAULT_GUARD};
use minf::group::{member_mod_torsion, places_for, support_primes, valuation, PlaceKind, DEFAULT_BIT_LIMIT};
use minf::mahler::{mahler_coeffs, mahler_surd, mbar, MahlerValue};
use minf::minf::{minf, minf_rational, scan_entries, MinfOptions};
use minf::quad::{fundamental_unit, QuadPoly, QuadSurd, SquarefreeK};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Relative tolerance for float-vs-exact Mahler agreement.
const FLOAT_TOL: f64 = 1e-9;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !($cond) {
            return Err(format!($($fmt)+));
        }
    };
}

fn c1_minf_of_four() -> Check {
    let r = minf(&s("4")).map_err(|e| e.to_string())?;
    ensure!(r.value.value() == &s("2"), "value {}", r.value);
    let w = r.witness.ok_or("no witness")?;
    ensure!(w.verify(&s("4"), DEFAULT_BIT_LIMIT).unwrap(), "witness does not verify");
    let used: Vec<(String, String)> = w
        .bases
        .iter()
        .zip(&w.exps)
        .filter(|(_, e)| !e.is_zero())
        .map(|(b, e)| (b.to_string(), e.to_string()))
        .collect();
    ensure!(w.s.is_one() && w.zeta.is_one(), "s = {}, zeta = {}", w.s, w.zeta);
    ensure!(used == [("2".to_string(), "2".to_string())], "factors {used:?}");
    Ok("M∞(4) = 2, 4 = 2^2".into())
}

fn c2_b_of_four() -> Check {
    let set = build_ordered_bset(&s("4"), DEFAULT_GUARD).map_err(|e| e.to_string())?;
    let got = set.pm_closure();
    let mut want = HashSet::new();
    for t in ["1", "2", "3", "4", "1/2", "3/2", "1/3", "2/3", "4/3", "1/4", "3/4"] {
        want.insert(s(t));
        want.insert(-s(t));
    }
    ensure!(want.len() == 22, "display has {} elements", want.len());
    ensure!(got == want, "closure differs: {} elements", got.len());
    Ok("22 elements".into())
}

fn c3_b2list() -> Check {
    let out = b2list_compat(&int(1), &int(-5), &int(1), &int(21), 27).map_err(|e| e.to_string())?;
    let want = "(1, 3, -3) -- 3.791287847477920003294023597\n\
                (1, 5, 1) -- 4.791287847477920003294023597\n\
                (3, 3, -1) -- 3.791287847477920003294023597\n";
    ensure!(out == want, "got\n{out}");
    Ok("byte-exact".into())
}

fn c4_quadratic_unit() -> Check {
    let alpha = s("(5+sqrt(21))/2");
    let r = minf(&alpha).map_err(|e| e.to_string())?;
    ensure!(r.value.value() == &s("(3+sqrt(21))/2"), "value {}", r.value);
    let b = r.b_j.as_ref().ok_or("no b_J")?;
    ensure!(b.minpoly == QuadPoly::from_i64(1, 3, -3).unwrap(), "b_J minpoly {}", b.minpoly);
    let w = r.witness.as_ref().ok_or("no witness")?;
    ensure!(w.verify(&alpha, DEFAULT_BIT_LIMIT).unwrap(), "witness does not verify");
    // the expected factorization α = 3⁻¹·(−(3+√21)/2)², checked independently of the pipeline
    let expected = s("1/3").try_mul(&s("-(3+sqrt(21))/2").pow(2).unwrap()).unwrap();
    ensure!(expected == alpha, "3^-1 * (-(3+sqrt(21))/2)^2 = {expected}");
    // and it agrees with the returned witness: b_J·(−(3+√21)/2) = −3
    ensure!(b.value.try_mul(&s("-(3+sqrt(21))/2")).unwrap() == s("-3"), "b_J = {}", b.value);
    ensure!(r.value.decimal(27) == "3.791287847477920003294023597", "decimal {}", r.value.decimal(27));
    Ok(format!("J = {} of {}, witness {w}", r.j_index.unwrap(), r.bset.as_ref().unwrap().len()))
}

fn c5_rational_oracle() -> Check {
    let mut n_checked = 0;
    for d in 1..=20i64 {
        for n in -20..=20i64 {
            if n == 0 || gcd(n, d) != 1 {
                continue;
            }
            let r = rat(n, d);
            let x = QuadSurd::from_rat(r.clone());
            let full = minf(&x).map_err(|e| format!("{r}: {e}"))?;
            let fast = minf_rational(&r, false).map_err(|e| format!("{r}: {e}"))?;
            ensure!(full.value == fast.value, "{r}: {} vs {}", full.value, fast.value);
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} rationals (both signs)"))
}

fn c6_mbar_spots() -> Check {
    let two_i = s("2*sqrt(-1)");
    ensure!(mbar(&two_i).unwrap().measure.value() == &s("2"), "mbar(2i)");
    ensure!(mahler_surd(&two_i).unwrap().value() == &s("4"), "M(2i)");
    ensure!(mbar(&s("1+sqrt(-3)")).unwrap().measure.value() == &s("2"), "mbar(1+sqrt(-3))");
    ensure!(mbar(&s("1-sqrt(-3)")).unwrap().measure.value() == &s("2"), "mbar(1-sqrt(-3))");
    Ok("mbar(2i) = 2, M(2i) = 4, mbar(1+sqrt(-3)) = 2".into())
}

fn c7_gap() -> Check {
    let mut g = rng(701);
    let mut done = 0;
    let mut entries = 0;
    while done < 50 {
        let p = random_quadratic(&mut g, 12);
        let alpha = p.roots()[0].clone();
        let m = mahler_surd(&alpha).unwrap();
        if m.value().to_f64().unwrap() > 50.0 {
            continue;
        }
        let k = alpha.k().unwrap().clone();
        let mv = m.value();
        // 1/(16 M^4)
        let m4 = mv.pow(4).unwrap();
        let delta = m4.scale(&rat(16, 1)).inverse().unwrap();
        let widened = MahlerValue::try_new(mv.try_add(&delta).unwrap()).unwrap();
        let key = |e: &BSetEntry| e.value.clone();
        let a: Vec<QuadSurd> = enumerate_b2_bounded(&k, &m, DEFAULT_GUARD).unwrap().iter().map(key).collect();
        let b: Vec<QuadSurd> = enumerate_b2_bounded(&k, &widened, DEFAULT_GUARD).unwrap().iter().map(key).collect();
        ensure!(a == b, "{p}: {} vs {} entries", a.len(), b.len());
        entries += a.len();
        done += 1;
    }
    Ok(format!("50 quadratics, {entries} entries unchanged"))
}

fn c8_properties() -> Check {
    let mut g = rng(801);
    let mut notes = Vec::new();

    // field axioms
    for _ in 0..2000 {
        let k = FIELDS[g.gen_range(0..FIELDS.len())];
        let (x, y, z) = (random_surd(&mut g, k, 40), random_surd(&mut g, k, 40), random_surd(&mut g, k, 40));
        ensure!(&(&x * &y) * &z == &x * &(&y * &z), "associativity {x} {y} {z}");
        ensure!(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), "distributivity {x} {y} {z}");
        ensure!(&x * &y == &y * &x && &x + &y == &y + &x, "commutativity {x} {y}");
        ensure!((&x * &x.inverse().unwrap()).is_one(), "inverse {x}");
    }
    notes.push("field axioms");

    // valuation homomorphism and norm consistency
    for _ in 0..500 {
        let k = FIELDS[g.gen_range(0..FIELDS.len())];
        let (x, y) = (random_surd(&mut g, k, 60), random_surd(&mut g, k, 60));
        let xy = x.try_mul(&y).unwrap();
        let mut primes: Vec<Int> = support_primes(&x).unwrap().into_iter().collect();
        primes.extend(support_primes(&y).unwrap());
        primes.sort();
        primes.dedup();
        let field = minf::quad::common_field([&x, &y]).unwrap();
        let places = places_for(&field, &primes, 6);
        for pl in &places {
            let (vx, vy) = (valuation(&x, pl).unwrap(), valuation(&y, pl).unwrap());
            ensure!(valuation(&xy, pl).unwrap() == vx + vy, "v({x}*{y}) at {}", pl.p);
        }
        for p in &primes {
            let total: i64 = places
                .iter()
                .filter(|pl| &pl.p == p)
                .map(|pl| if pl.kind == PlaceKind::Inert { 2 } else { 1 } * valuation(&x, pl).unwrap())
                .sum();
            ensure!(total == rat_valuation(&x.norm(), p), "norm consistency {x} at {p}");
        }
    }
    notes.push("valuations");

    // fundamental-unit minimality: no smaller y solves the norm equation
    for k in 2..=100i64 {
        if squarefree_part(k) != k {
            continue;
        }
        let eps = fundamental_unit(&SquarefreeK::from_i64(k).unwrap()).unwrap();
        ensure!(eps.norm().abs().is_one(), "N(eps_{k}) = {}", eps.norm());
        let (_, q, r) = eps.integer_parts();
        let y_half = (Int::from(2) * q / r).to_u64().unwrap_or(u64::MAX);
        for y in 1..y_half.min(20_001) {
            for delta in [-4i64, 4] {
                let x2 = (k as u64 * y * y) as i64 + delta;
                let x = (x2.max(0) as f64).sqrt().round() as i64;
                let ok = x > 0 && x * x == x2 && if k % 4 == 1 { (x + y as i64) % 2 == 0 } else { x % 2 == 0 && y % 2 == 0 };
                ensure!(!ok, "k = {k}: smaller unit ({x} + {y}*sqrt({k}))/2");
            }
        }
    }
    notes.push("unit minimality k <= 100");

    // mbar(α) ≤ mbar(α^L)
    for _ in 0..300 {
        let k = FIELDS[g.gen_range(0..FIELDS.len())];
        let x = random_surd(&mut g, k, 12);
        let base = mbar(&x).unwrap().measure;
        for l in 2..=4 {
            let ml = mbar(&x.pow(l).unwrap()).unwrap().measure;
            ensure!(base.try_cmp(&ml).unwrap() != Ordering::Greater, "mbar({x}) > mbar({x}^{l})");
        }
    }
    notes.push("integer powers");

    // well-definedness, Galois, tie order, witness exactness
    let opts = MinfOptions::default();
    for _ in 0..20 {
        let p = random_quadratic(&mut g, 6);
        let alpha = p.roots()[g.gen_range(0..2)].clone();
        if mahler_surd(&alpha).unwrap().value().to_f64().unwrap() > 20.0 || alpha.is_root_of_unity() {
            continue;
        }
        let r = minf(&alpha).unwrap();
        let w = r.witness.as_ref().unwrap();
        ensure!(w.verify(&alpha, DEFAULT_BIT_LIMIT).unwrap(), "witness for {alpha}");
        let mut others = vec![-alpha.clone(), alpha.inverse().unwrap(), alpha.conjugate()];
        others.extend(roots_of_unity(k_of(&alpha)).iter().map(|z| z.try_mul(&alpha).unwrap()));
        for y in others {
            ensure!(minf(&y).unwrap().value == r.value, "minf({y}) != minf({alpha})");
        }
        let mut entries = r.bset.as_ref().unwrap().entries.clone();
        let mut start = 0;
        while start < entries.len() {
            let mut end = start + 1;
            while end < entries.len() && entries[end].mbar.measure == entries[start].mbar.measure {
                end += 1;
            }
            entries[start..end].shuffle(&mut g);
            start = end;
        }
        let (j, _) = scan_entries(&alpha, &entries, &opts).unwrap();
        ensure!(entries[j - 1].mbar.measure == r.value, "tie shuffle changed minf({alpha})");
    }
    notes.push("minf invariances and witnesses");

    // float vs exact Mahler, 10^4 random quadratics
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let (a2, a1, a0) = (g.gen_range(1i64..=100), g.gen_range(-100i64..=100), g.gen_range(-100i64..=100));
        let exact = mahler_coeffs(&int(a2), &int(a1), &int(a0)).unwrap().value().to_f64().unwrap();
        let f = float_mahler(a2, a1, a0);
        let rel = (exact - f).abs() / f.max(1.0);
        worst = worst.max(rel);
        ensure!(rel.le(&FLOAT_TOL), "({a2}, {a1}, {a0}): exact {exact} vs float {f}");
    }
    notes.push("float agreement");
    Ok(format!("{}; worst float rel. error {worst:.1e}", notes.join(", ")))
}

fn c9_membership_oracle() -> Check {
    let mut g = rng(901);
    let primes = [2i64, 3, 5, 7];
    let small = |g: &mut rand_chacha::ChaCha8Rng, spread: i64| -> QuadSurd {
        let mut x = QuadSurd::one();
        for p in primes {
            if g.gen_bool(0.5) {
                let e = g.gen_range(-spread..=spread);
                x = x.try_mul(&QuadSurd::from_int(p).pow(e).unwrap()).unwrap();
            }
        }
        if g.gen_bool(0.3) {
            x = -x;
        }
        x
    };
    let (mut hits, mut misses) = (0, 0);
    for case in 0..200 {
        let m = g.gen_range(1..=3);
        let mut gens: Vec<QuadSurd> = (0..m).map(|_| small(&mut g, 3)).collect();
        let alpha = loop {
            let a = small(&mut g, 2);
            if !a.is_root_of_unity() {
                break a;
            }
        };
        if g.gen_bool(0.5) {
            // plant α^s0 = g_last · ∏ g_i^{e_i}
            let s0 = g.gen_range(1..=3);
            let mut last = alpha.pow(s0).unwrap();
            for gi in &gens[..m - 1] {
                last = last.try_div(&gi.pow(g.gen_range(-2..=2)).unwrap()).unwrap();
            }
            gens[m - 1] = last;
        }
        let fast = member_mod_torsion(&alpha, &gens).map_err(|e| format!("case {case}: {e}"))?;
        let brute = brute_membership(&alpha, &gens, 6, 6);
        match &fast {
            None => ensure!(brute.is_none(), "case {case}: {alpha} in {gens:?}, brute s = {brute:?}"),
            Some(w) => {
                ensure!(w.verify(&alpha, DEFAULT_BIT_LIMIT).unwrap(), "case {case}: witness fails");
                let s_fast = w.s.to_i64().unwrap();
                let in_box = s_fast <= 6 && w.exps.iter().all(|e| e.abs() <= Int::from(6));
                if in_box {
                    ensure!(brute == Some(s_fast), "case {case}: {alpha} in {gens:?}: s = {s_fast}, brute {brute:?}");
                } else {
                    ensure!(brute.is_none_or(|b| b >= s_fast), "case {case}: brute found smaller s");
                }
            }
        }
        if fast.is_some() {
            hits += 1;
        } else {
            misses += 1;
        }
    }
    Ok(format!("200 instances ({hits} members, {misses} non-members)"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 M∞(4) = 2 with witness 4 = 2^2", c1_minf_of_four),
        ("2 ± closure of B(4) has the 22 displayed elements", c2_b_of_four),
        ("3 b2list(1, -5, 1, 21) byte-exact", c3_b2list),
        ("4 M∞((5+√21)/2) = (3+√21)/2, J on x^2+3x-3", c4_quadratic_unit),
        ("5 minf = minf_rational for max(|m|,|n|) <= 20", c5_rational_oracle),
        ("6 mbar spot values", c6_mbar_spots),
        ("7 gap property on 50 quadratics with M <= 50", c7_gap),
        ("8 property suites", c8_properties),
        ("9 brute-force membership oracle, 200 instances", c9_membership_oracle),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}  [{detail}] ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}  [{why}] ({ms} ms)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
