//! Seeded invariant suites. Each suite returns one record; the first
//! failing sample is kept as a witness.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::expr::{parse_expr, Expr};
use crate::fields::{fp_with_omega, CubeTest, CycloField, CycloRat, Field, PrimeField};
use crate::poly::{Poly, PolyRing, RatFuncField};
use crate::report::{CheckRecord, Mode, Status};
use crate::sampling::{distinct_primes, rng_for, DEFAULT_PRIME_RANGE};
use crate::tower::Tower;

pub const AXIOM_SAMPLES: usize = 200;
pub const POLY_SAMPLES: usize = 20;
pub const CUBE_SAMPLES: usize = 12;
pub const CUBE_PRIMES: usize = 20;
pub const TOWER_INVERSIONS: usize = 50;
pub const ROUND_TRIP_CORPUS: usize = 300;

fn record(name: &str, anchor: &str, mode: Mode, seed: u64, checked: usize, failures: Vec<Value>) -> CheckRecord {
    CheckRecord::new(name, anchor, mode, Status::from_bool(failures.is_empty()))
        .with_detail(json!({"samples": checked, "failures": failures.len()}))
        .with_witnesses(failures.into_iter().take(1).collect())
        .with_seed(seed)
}

pub fn random_cyclo<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> CycloRat {
    let mut q = || BigRational::new(BigInt::from(rng.random_range(-bound..=bound)), BigInt::from(rng.random_range(1..=bound)));
    CycloRat::new(q(), q())
}

/// Axioms on sampled triples; returns a description of the first failure.
pub fn axioms_hold<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<(), &'static str> {
    let checks: [(&str, bool); 7] = [
        ("commutativity", f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a)),
        ("associativity of +", f.add(&f.add(a, b), c) == f.add(a, &f.add(b, c))),
        ("associativity of *", f.mul(&f.mul(a, b), c) == f.mul(a, &f.mul(b, c))),
        ("distributivity", f.mul(a, &f.add(b, c)) == f.add(&f.mul(a, b), &f.mul(a, c))),
        ("identities", f.add(a, &f.zero()) == *a && f.mul(a, &f.one()) == *a),
        ("additive inverse", f.is_zero(&f.add(a, &f.neg(a)))),
        ("multiplicative inverse", f.is_zero(a) || f.inv(a).is_ok_and(|i| f.is_one(&f.mul(a, &i)))),
    ];
    if let Some((what, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(what);
    }
    let w = f.omega();
    if !f.is_zero(&f.add(&f.add(&f.mul(&w, &w), &w), &f.one())) {
        return Err("omega^2 + omega + 1");
    }
    Ok(())
}

pub fn field_axioms(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "selftest/field_axioms");
    let primes = distinct_primes(&mut rng, 3, DEFAULT_PRIME_RANGE.0, DEFAULT_PRIME_RANGE.1);
    let mut failures = Vec::new();
    let mut checked = 0;
    for _ in 0..AXIOM_SAMPLES {
        let [a, b, c] = [0; 3].map(|_| random_cyclo(&mut rng, 50));
        if let Err(what) = axioms_hold(&CycloField, &a, &b, &c) {
            failures.push(json!({"field": "Q(omega)", "law": what, "a": a.to_string(), "b": b.to_string(), "c": c.to_string()}));
        }
        for &p in &primes {
            let fp = fp_with_omega(p).expect("sampled primes are 1 mod 3");
            let [x, y, z] = [0; 3].map(|_| fp.sample(&mut rng));
            if let Err(what) = axioms_hold(&fp, &x, &y, &z) {
                failures.push(json!({"field": format!("F_{p}"), "law": what, "a": x, "b": y, "c": z}));
            }
            // reduction is a ring homomorphism wherever denominators survive
            if let (Some(ra), Some(rb)) = (a.reduce_mod(&fp), b.reduce_mod(&fp)) {
                let sum = CycloField.add(&a, &b).reduce_mod(&fp);
                let prod = CycloField.mul(&a, &b).reduce_mod(&fp);
                if sum != Some(fp.add(&ra, &rb)) || prod != Some(fp.mul(&ra, &rb)) {
                    failures.push(json!({"field": format!("F_{p}"), "law": "reduction homomorphism", "a": a.to_string(), "b": b.to_string()}));
                }
            }
            checked += 1;
        }
        checked += 1;
    }
    record("selftest/field_axioms", "field axioms", Mode::Exact, seed, checked, failures)
}

pub fn random_poly<F: Field, R: Rng + ?Sized>(
    r: &PolyRing<F>,
    rng: &mut R,
    terms: usize,
    max_deg: u32,
    coeff: &mut impl FnMut(&mut R) -> F::Elem,
) -> Poly<F> {
    let n = r.nvars();
    r.from_terms((0..terms).map(|_| {
        let exps: Vec<u32> = (0..n).map(|_| rng.random_range(0..=max_deg)).collect();
        (exps, coeff(rng))
    }))
}

fn nonzero_poly<F: Field, R: Rng + ?Sized>(
    r: &PolyRing<F>,
    rng: &mut R,
    terms: usize,
    max_deg: u32,
    coeff: &mut impl FnMut(&mut R) -> F::Elem,
) -> Poly<F> {
    loop {
        let p = random_poly(r, rng, terms, max_deg, coeff);
        if !p.is_constant() {
            return p;
        }
    }
}

/// gcd divides both inputs and absorbs a planted common factor; squarefree
/// output multiplies back to the input.
pub fn gcd_squarefree_holds<F: Field>(r: &PolyRing<F>, a: &Poly<F>, b: &Poly<F>, c: &Poly<F>) -> Result<(), &'static str> {
    let (ac, bc) = (r.mul(a, c), r.mul(b, c));
    let g = r.gcd(&ac, &bc);
    if !r.divides(&g, &ac) || !r.divides(&g, &bc) {
        return Err("gcd does not divide its inputs");
    }
    if !r.divides(c, &g) {
        return Err("gcd misses the common factor");
    }
    let l = r.lcm(&ac, &bc);
    if r.monic(&r.mul(&g, &l)) != r.monic(&r.mul(&ac, &bc)) {
        return Err("gcd * lcm is not associate to the product");
    }
    let target = r.mul(&r.mul(&r.pow(a, 2), b), &r.pow(c, 3));
    let sf = r.squarefree(&target).map_err(|_| "squarefree failed")?;
    if r.expand(&sf) != target {
        return Err("squarefree factors do not multiply back");
    }
    Ok(())
}

pub fn gcd_squarefree(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "selftest/gcd_squarefree");
    let q = PolyRing::new(CycloField, &["s", "t"]);
    let fp = fp_with_omega(distinct_primes(&mut rng, 1, DEFAULT_PRIME_RANGE.0, DEFAULT_PRIME_RANGE.1)[0]).unwrap();
    let m = PolyRing::new(fp.clone(), &["s", "t"]);
    let mut failures = Vec::new();
    for i in 0..POLY_SAMPLES {
        let mut cq = |rng: &mut ChaCha8Rng| CycloRat::from_int(rng.random_range(-9..=9));
        let [a, b, c] = [0; 3].map(|_| nonzero_poly(&q, &mut rng, 3, 2, &mut cq));
        if let Err(what) = gcd_squarefree_holds(&q, &a, &b, &c) {
            failures.push(json!({"sample": i, "ring": "Q(omega)[s,t]", "law": what,
                "a": q.display(&a).to_string(), "b": q.display(&b).to_string(), "c": q.display(&c).to_string()}));
        }
        let mut cp = |rng: &mut ChaCha8Rng| fp.sample(rng);
        let [a, b, c] = [0; 3].map(|_| nonzero_poly(&m, &mut rng, 3, 2, &mut cp));
        if let Err(what) = gcd_squarefree_holds(&m, &a, &b, &c) {
            failures.push(json!({"sample": i, "ring": format!("F_{}[s,t]", fp.p()), "law": what,
                "a": m.display(&a).to_string(), "b": m.display(&b).to_string(), "c": m.display(&c).to_string()}));
        }
    }
    record("selftest/gcd_squarefree", "gcd and squarefree", Mode::Exact, seed, 2 * POLY_SAMPLES, failures)
}

/// Cube tests in Q(omega)(s,t) against cube tests of specializations.
/// A cube must specialize to cubes everywhere; a non-cube must be refuted
/// by some (prime, point).
pub fn cube_oracle(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "selftest/cube_oracle");
    let ring = PolyRing::new(CycloField, &["s", "t"]);
    let k = RatFuncField::new(ring.clone());
    let primes = distinct_primes(&mut rng, CUBE_PRIMES, DEFAULT_PRIME_RANGE.0, DEFAULT_PRIME_RANGE.1);
    let fields: Vec<PrimeField> = primes.iter().map(|&p| fp_with_omega(p).unwrap()).collect();
    let mut failures = Vec::new();
    let mut coeff = |rng: &mut ChaCha8Rng| CycloRat::from_int(rng.random_range(1..=9));
    for i in 0..CUBE_SAMPLES {
        let g = k.fraction(nonzero_poly(&ring, &mut rng, 3, 2, &mut coeff), nonzero_poly(&ring, &mut rng, 2, 2, &mut coeff))
            .expect("nonzero denominator");
        let cube = k.pow(&g, 3);
        // a linear factor to the first power breaks cube-ness
        let lin = ring.add(&ring.var(rng.random_range(0..2usize)), &ring.from_i64(rng.random_range(1..=9)));
        let non_cube = k.mul(&cube, &k.from_poly(lin));
        for (value, expect_cube) in [(cube, true), (non_cube, false)] {
            let test = k.is_cube(&value).expect("nonzero");
            if test != CubeTest::Cube && expect_cube || test != CubeTest::NotCube && !expect_cube {
                failures.push(json!({"sample": i, "law": "exact cube test", "value": k.display(&value).to_string(), "test": format!("{test:?}")}));
                continue;
            }
            let mut refuted = None;
            for fp in &fields {
                let pt = [fp.sample(&mut rng), fp.sample(&mut rng)];
                let Some(v) = k.eval_mod_p(&value, fp, &pt) else { continue };
                if v == 0 {
                    continue;
                }
                if fp.is_cube(&v).unwrap() == CubeTest::NotCube {
                    refuted = Some(json!({"prime": fp.p(), "point": pt, "value": v}));
                    break;
                }
            }
            match (expect_cube, refuted) {
                (true, Some(w)) => failures.push(json!({"sample": i, "law": "cube specializes to a non-cube", "witness": w})),
                (false, None) => failures.push(json!({"sample": i, "law": "non-cube never refuted", "value": k.display(&value).to_string()})),
                _ => {}
            }
        }
    }
    record("selftest/cube_oracle", "cube test under specialization", Mode::Modular, seed, 2 * CUBE_SAMPLES, failures)
}

/// `inv(a) * a = 1` for random sparse elements of the four-curve tower:
/// a constant plus up to two terms in two of the four generators. Dense
/// elements have norms of degree up to 1296 and are out of reach.
pub fn tower_inversion(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "selftest/tower_inversion");
    let t = Tower::new(CycloField, 4);
    let k = t.field();
    let q = t.coeffs();
    let mut failures = Vec::new();
    let mut done = 0;
    while done < TOWER_INVERSIONS {
        let i = rng.random_range(1..=4);
        let j = (i + rng.random_range(0..3)) % 4 + 1;
        let mut a = k.from_i64(rng.random_range(-5..=5));
        for _ in 0..rng.random_range(1..=2) {
            let m = k.mul(&k.pow(&t.y(i), rng.random_range(0..6)), &k.pow(&t.y(j), rng.random_range(0..6)));
            let mut c = q.constant(CycloRat::from_int(rng.random_range(-5..=5)));
            if rng.random_range(0..3) == 0 {
                c = q.mul(&c, &q.var([i, j][rng.random_range(0..2)] - 1));
            }
            a = k.add(&a, &k.mul(&m, &t.coeff(c)));
        }
        if k.is_zero(&a) {
            continue;
        }
        done += 1;
        match k.inv(&a) {
            Ok(b) if k.is_one(&k.mul(&a, &b)) => {}
            Ok(_) => failures.push(json!({"sample": done, "law": "inv(a) * a != 1", "a": k.display(&a).to_string()})),
            Err(e) => failures.push(json!({"sample": done, "law": "inversion failed", "error": e.to_string(), "a": k.display(&a).to_string()})),
        }
    }
    record("selftest/tower_inversion", "tower inversion", Mode::Exact, seed, TOWER_INVERSIONS, failures)
}

pub const CORPUS_VARS: [&str; 3] = ["s3", "s4", "x"];

pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> Expr {
    let leaf = depth == 0 || rng.random_range(0..4) == 0;
    if leaf {
        return match rng.random_range(0..5) {
            0 => Expr::Omega,
            1 | 2 => Expr::Int(rng.random_range(0u32..200).into()),
            _ => Expr::Var(CORPUS_VARS[rng.random_range(0..CORPUS_VARS.len())].to_string()),
        };
    }
    let op = rng.random_range(0..7);
    let mut sub = || Box::new(random_expr(rng, depth - 1));
    match op {
        0 => Expr::Add(sub(), sub()),
        1 => Expr::Sub(sub(), sub()),
        2 => Expr::Mul(sub(), sub()),
        3 => {
            let (a, b) = (sub(), sub());
            let b = if matches!(&*b, Expr::Int(n) if *n == 0u32.into()) { Box::new(Expr::Int(1u32.into())) } else { b };
            Expr::Div(a, b)
        }
        4 => {
            let e = sub();
            Expr::Pow(e, rng.random_range(0..6))
        }
        _ => Expr::Neg(sub()),
    }
}

pub fn round_trips(e: &Expr) -> bool {
    parse_expr(&e.to_string(), &CORPUS_VARS).is_ok_and(|back| back == *e)
}

pub fn parse_round_trip(seed: u64) -> CheckRecord {
    let mut rng = rng_for(seed, "selftest/parse_round_trip");
    let failures = (0..ROUND_TRIP_CORPUS)
        .map(|_| random_expr(&mut rng, 5))
        .filter(|e| !round_trips(e))
        .map(|e| json!({"printed": e.to_string(), "ast": format!("{e:?}")}))
        .collect();
    record("selftest/parse_round_trip", "parse and print", Mode::Exact, seed, ROUND_TRIP_CORPUS, failures)
}

pub fn run_all(seed: u64) -> Vec<CheckRecord> {
    let suites: [fn(u64) -> CheckRecord; 5] = [field_axioms, gcd_squarefree, cube_oracle, tower_inversion, parse_round_trip];
    use rayon::prelude::*;
    suites.par_iter().map(|s| s(seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::DEFAULT_SEED;

    #[test]
    fn suites_pass_under_the_default_seed() {
        for r in run_all(DEFAULT_SEED) {
            assert_eq!(r.status, Status::Verified, "{}: {}", r.name, serde_json::to_string(&r.witnesses).unwrap());
        }
    }

    #[test]
    fn broken_inverse_is_caught() {
        let fp = fp_with_omega(7).unwrap();
        assert!(axioms_hold(&fp, &3, &4, &5).is_ok());
        #[derive(Clone, Debug, PartialEq)]
        struct Bad(PrimeField);
        impl Field for Bad {
            type Elem = u64;
            fn zero(&self) -> u64 { 0 }
            fn one(&self) -> u64 { 1 }
            fn is_zero(&self, a: &u64) -> bool { *a == 0 }
            fn add(&self, a: &u64, b: &u64) -> u64 { self.0.add(a, b) }
            fn neg(&self, a: &u64) -> u64 { self.0.neg(a) }
            fn mul(&self, a: &u64, b: &u64) -> u64 { self.0.mul(a, b) }
            fn inv(&self, a: &u64) -> Result<u64, crate::fields::FieldError> { Ok(*a) }
            fn from_i64(&self, n: i64) -> u64 { self.0.from_i64(n) }
            fn omega(&self) -> u64 { self.0.omega() }
            fn characteristic(&self) -> u64 { 7 }
            fn fmt_elem(&self, a: &u64, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result { write!(f, "{a}") }
        }
        assert_eq!(axioms_hold(&Bad(fp), &3, &4, &5), Err("multiplicative inverse"));
    }
}
