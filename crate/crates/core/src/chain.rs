//! The coordinate chain on a product of the curves `y^6 = x^2 (x - 1)`.
//!
//! Starting from `x_i, y_i` the chain defines
//!
//! ```text
//! t_i = y_i / y_1        u_i = (x_1 / x_i) t_i^3
//! v_i = 1 / u_i          w_i = t_i / u_i
//! s_i = (v_i - 1) / (v_2 - 1)
//! ```
//!
//! and a sequence of relations between them, each stated with
//! denominators cleared. The same code evaluates the relations exactly in
//! the tower field, at points of `V(F_p)`, or on degree bounds, through
//! [`ChainAlgebra`].

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::fields::{fp_with_omega, CycloField, Field, FieldError, PrimeField};
use crate::report::{CheckRecord, Mode, RunConfig, Status};
use crate::sampling::{distinct_primes, rng_for, RESAMPLE_BUDGET};
use crate::tower::{sample_curve_point, CurvePoint, Tower};

/// The operations the chain needs.
pub trait ChainAlgebra: Sync {
    type Elem: Clone + Send + Sync;

    fn int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError>;

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        (0..e).fold(self.int(1), |acc, _| self.mul(&acc, a))
    }
}

impl<F: Field> ChainAlgebra for F {
    type Elem = F::Elem;

    fn int(&self, n: i64) -> Self::Elem {
        self.from_i64(n)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Field::add(self, a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Field::sub(self, a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Field::mul(self, a, b)
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Field::div(self, a, b)
    }
    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        Field::pow(self, a, e as u64)
    }
}

/// Upper bounds on the weighted degrees of a numerator and denominator,
/// with `x` of weight 2 and `y` of weight 1 (pole orders at each point at
/// infinity of the curve).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBound {
    pub num: u64,
    pub den: u64,
}

pub struct DegreeAlgebra;

impl ChainAlgebra for DegreeAlgebra {
    type Elem = DegreeBound;

    fn int(&self, _n: i64) -> DegreeBound {
        DegreeBound { num: 0, den: 0 }
    }
    fn add(&self, a: &DegreeBound, b: &DegreeBound) -> DegreeBound {
        DegreeBound {
            num: (a.num + b.den).max(b.num + a.den),
            den: a.den + b.den,
        }
    }
    fn sub(&self, a: &DegreeBound, b: &DegreeBound) -> DegreeBound {
        self.add(a, b)
    }
    fn mul(&self, a: &DegreeBound, b: &DegreeBound) -> DegreeBound {
        DegreeBound {
            num: a.num + b.num,
            den: a.den + b.den,
        }
    }
    fn div(&self, a: &DegreeBound, b: &DegreeBound) -> Result<DegreeBound, FieldError> {
        Ok(DegreeBound {
            num: a.num + b.den,
            den: a.den + b.num,
        })
    }
}

/// The named elements of the chain. Vectors are indexed by the curve
/// number `i`; entries below the first defined index repeat a filler.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainEnv<E> {
    pub n: usize,
    x: Vec<E>,
    y: Vec<E>,
    t: Vec<E>,
    u: Vec<E>,
    v: Vec<E>,
    w: Vec<E>,
    s: Vec<E>,
}

impl<E> ChainEnv<E> {
    pub fn x(&self, i: usize) -> &E {
        &self.x[i]
    }
    pub fn y(&self, i: usize) -> &E {
        &self.y[i]
    }
    pub fn t(&self, i: usize) -> &E {
        assert!(i >= 2);
        &self.t[i]
    }
    pub fn u(&self, i: usize) -> &E {
        assert!(i >= 2);
        &self.u[i]
    }
    pub fn v(&self, i: usize) -> &E {
        assert!(i >= 2);
        &self.v[i]
    }
    pub fn w(&self, i: usize) -> &E {
        assert!(i >= 2);
        &self.w[i]
    }
    pub fn s(&self, i: usize) -> &E {
        assert!(i >= 3);
        &self.s[i]
    }

    /// The derived elements by name (`t2`, `u3`, `s4`, ...).
    pub fn named(&self) -> Vec<(String, &E)> {
        let mut out = Vec::new();
        for i in 2..=self.n {
            out.push((format!("t{i}"), &self.t[i]));
            out.push((format!("u{i}"), &self.u[i]));
            out.push((format!("v{i}"), &self.v[i]));
            out.push((format!("w{i}"), &self.w[i]));
        }
        for i in 3..=self.n {
            out.push((format!("s{i}"), &self.s[i]));
        }
        out
    }

    pub fn get(&self, name: &str) -> Option<&E> {
        let (head, idx) = name.split_at(1);
        let i: usize = idx.parse().ok()?;
        if i == 0 || i > self.n {
            return None;
        }
        match head {
            "x" => Some(&self.x[i]),
            "y" => Some(&self.y[i]),
            "t" | "u" | "v" | "w" if i >= 2 => Some(match head {
                "t" => &self.t[i],
                "u" => &self.u[i],
                "v" => &self.v[i],
                _ => &self.w[i],
            }),
            "s" if i >= 3 => Some(&self.s[i]),
            _ => None,
        }
    }
}

/// Builds the chain from `x_1..x_n`, `y_1..y_n` (passed 0-based).
pub fn build_env<A: ChainAlgebra>(
    alg: &A,
    x: Vec<A::Elem>,
    y: Vec<A::Elem>,
) -> Result<ChainEnv<A::Elem>, FieldError> {
    let n = x.len();
    assert!(n >= 3 && y.len() == n, "the chain needs at least three curves");
    let fill = alg.int(0);
    let mut xs = vec![fill.clone()];
    xs.extend(x);
    let mut ys = vec![fill.clone()];
    ys.extend(y);
    let one = alg.int(1);
    let mut t = vec![fill.clone(); 2];
    let mut u = t.clone();
    let mut v = t.clone();
    let mut w = t.clone();
    for i in 2..=n {
        let ti = alg.div(&ys[i], &ys[1])?;
        let ui = alg.div(&alg.mul(&xs[1], &alg.pow(&ti, 3)), &xs[i])?;
        let vi = alg.div(&one, &ui)?;
        w.push(alg.mul(&ti, &vi));
        t.push(ti);
        u.push(ui);
        v.push(vi);
    }
    let mut s = vec![fill.clone(); 3];
    let v2m1 = alg.sub(&v[2], &one);
    for vi in &v[3..] {
        s.push(alg.div(&alg.sub(vi, &one), &v2m1)?);
    }
    Ok(ChainEnv {
        n,
        x: xs,
        y: ys,
        t,
        u,
        v,
        w,
        s,
    })
}

/// A cleared relation: `value` should be zero.
#[derive(Clone, Debug)]
pub struct Relation<E> {
    pub name: String,
    pub anchor: &'static str,
    pub value: E,
}

/// The groups of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainCheck {
    /// The relations of one lemma of the chain, numbered 1 to 5.
    Lemma(u8),
    /// Back-substitution formulas recovering the original coordinates.
    Roundtrip,
    /// The two relations of the five-curve chain.
    FiveCurves,
    /// Elements asserted nonzero along the way.
    Nonzero,
}

impl ChainCheck {
    pub const FOUR_CURVES: [ChainCheck; 7] = [
        ChainCheck::Lemma(1),
        ChainCheck::Lemma(2),
        ChainCheck::Lemma(3),
        ChainCheck::Lemma(4),
        ChainCheck::Lemma(5),
        ChainCheck::Roundtrip,
        ChainCheck::Nonzero,
    ];
}

/// `w_j^3 - 1`.
fn cube_minus_one<A: ChainAlgebra>(alg: &A, a: &A::Elem) -> A::Elem {
    alg.sub(&alg.pow(a, 3), &alg.int(1))
}

/// `(s_a - s_b) s_a s_b (w_2^3 - 1) - (s_a - 1) s_a (w_b^3 - 1) + (s_b - 1) s_b (w_a^3 - 1)`.
fn cubic_relation<A: ChainAlgebra>(alg: &A, env: &ChainEnv<A::Elem>, a: usize, b: usize) -> A::Elem {
    let one = alg.int(1);
    let (sa, sb) = (env.s(a), env.s(b));
    let lhs = alg.mul(
        &alg.mul(&alg.mul(&alg.sub(sa, sb), sa), sb),
        &cube_minus_one(alg, env.w(2)),
    );
    let ta = alg.mul(&alg.mul(&alg.sub(sa, &one), sa), &cube_minus_one(alg, env.w(b)));
    let tb = alg.mul(&alg.mul(&alg.sub(sb, &one), sb), &cube_minus_one(alg, env.w(a)));
    alg.add(&alg.sub(&lhs, &ta), &tb)
}

pub fn relations<A: ChainAlgebra>(
    alg: &A,
    env: &ChainEnv<A::Elem>,
    check: ChainCheck,
) -> Result<Vec<Relation<A::Elem>>, FieldError> {
    let n = env.n;
    let one = alg.int(1);
    let x1 = env.x(1);
    let x1m1 = alg.sub(x1, &one);
    let mut out = Vec::new();
    let mut push = |name: String, anchor: &'static str, value: A::Elem| out.push(Relation { name, anchor, value });
    match check {
        ChainCheck::Lemma(1) => {
            // t_i^6 x_1^2 (x_1 - 1) = x_i^2 (x_i - 1)
            let c1 = alg.mul(&alg.pow(x1, 2), &x1m1);
            for i in 2..=n {
                let xi = env.x(i);
                let ci = alg.mul(&alg.pow(xi, 2), &alg.sub(xi, &one));
                push(format!("lemma1/t{i}"), "Lemma 1", alg.sub(&alg.mul(&alg.pow(env.t(i), 6), &c1), &ci));
            }
        }
        ChainCheck::Lemma(2) => {
            // u_i (u_i^2 (x_1 - 1) + 1) = x_1 t_i^3
            for i in 2..=n {
                let ui = env.u(i);
                let inner = alg.add(&alg.mul(&alg.pow(ui, 2), &x1m1), &one);
                let rhs = alg.mul(x1, &alg.pow(env.t(i), 3));
                push(format!("lemma2/u{i}"), "Lemma 2", alg.sub(&alg.mul(ui, &inner), &rhs));
            }
        }
        ChainCheck::Lemma(3) => {
            // (u_2 - t_2^3)(u_i^3 - u_i) = (u_i - t_i^3)(u_2^3 - u_2)
            let d = |i: usize| alg.sub(env.u(i), &alg.pow(env.t(i), 3));
            let e = |i: usize| alg.sub(&alg.pow(env.u(i), 3), env.u(i));
            for i in 3..=n {
                let value = alg.sub(&alg.mul(&d(2), &e(i)), &alg.mul(&d(i), &e(2)));
                push(format!("lemma3/u2_u{i}"), "Lemma 3", value);
            }
        }
        ChainCheck::Lemma(4) => {
            // (v_i^2 - 1)(w_2^3 - 1) = (v_2^2 - 1)(w_i^3 - 1)
            let sq = |i: usize| alg.sub(&alg.pow(env.v(i), 2), &one);
            for i in 3..=n {
                let value = alg.sub(
                    &alg.mul(&sq(i), &cube_minus_one(alg, env.w(2))),
                    &alg.mul(&sq(2), &cube_minus_one(alg, env.w(i))),
                );
                push(format!("lemma4/v2_v{i}"), "Lemma 4", value);
            }
        }
        ChainCheck::Lemma(5) => {
            push("lemma5/cubic".into(), "Lemma 5", cubic_relation(alg, env, 3, 4));
        }
        ChainCheck::Lemma(k) => panic!("no lemma {k} in the chain"),
        ChainCheck::FiveCurves => {
            assert!(n >= 5, "the five-curve relations need n >= 5");
            for b in 4..=5 {
                push(format!("five/cubic_s3_s{b}"), "n=5 Lemma", cubic_relation(alg, env, 3, b));
            }
        }
        ChainCheck::Roundtrip => {
            for i in 2..=n {
                // x_i = u_i^2 (x_1 - 1) + 1
                let rhs = alg.add(&alg.mul(&alg.pow(env.u(i), 2), &x1m1), &one);
                push(format!("roundtrip/x{i}"), "Lemma 2 proof", alg.sub(env.x(i), &rhs));
                // 1/x_1 - 1 = (u_i - t_i^3)/(u_i^3 - u_i)
                let ui = env.u(i);
                let value = alg.sub(
                    &alg.mul(&alg.sub(&one, x1), &alg.sub(&alg.pow(ui, 3), ui)),
                    &alg.mul(x1, &alg.sub(ui, &alg.pow(env.t(i), 3))),
                );
                push(format!("roundtrip/x1_from_u{i}"), "Lemma 3 proof", value);
            }
            // (v_2 - 1)/2 = (-s_3 (w_2^3 - 1) + (w_3^3 - 1)) / (s_3^2 (w_2^3 - 1) - (w_3^3 - 1))
            let (c2, c3) = (cube_minus_one(alg, env.w(2)), cube_minus_one(alg, env.w(3)));
            let s3 = env.s(3);
            let num = alg.add(&alg.sub(&alg.int(0), &alg.mul(s3, &c2)), &c3);
            let den = alg.sub(&alg.mul(&alg.pow(s3, 2), &c2), &c3);
            let value = alg.sub(
                &alg.mul(&alg.sub(env.v(2), &one), &den),
                &alg.mul(&alg.int(2), &num),
            );
            push("roundtrip/v2".into(), "Lemma 5 proof", value);
            // rebuild everything from s_3.., w_2..
            let v2 = alg.add(&one, &alg.div(&alg.mul(&alg.int(2), &num), &den)?);
            push("roundtrip/rebuild_v2".into(), "Lemma 5 proof", alg.sub(&v2, env.v(2)));
            let mut us = vec![alg.int(0); n + 1];
            let mut ts = us.clone();
            for i in 2..=n {
                let vi = if i == 2 {
                    v2.clone()
                } else {
                    let vi = alg.add(&one, &alg.mul(env.s(i), &alg.sub(&v2, &one)));
                    push(format!("roundtrip/rebuild_v{i}"), "Lemma 5 proof", alg.sub(&vi, env.v(i)));
                    vi
                };
                us[i] = alg.div(&one, &vi)?;
                ts[i] = alg.mul(env.w(i), &us[i]);
                push(format!("roundtrip/rebuild_u{i}"), "Lemma 4 proof", alg.sub(&us[i], env.u(i)));
                push(format!("roundtrip/rebuild_t{i}"), "Lemma 4 proof", alg.sub(&ts[i], env.t(i)));
            }
            let (u2, t2) = (&us[2], &ts[2]);
            let u2c = alg.pow(u2, 3);
            let x1r = alg.div(&alg.sub(&u2c, u2), &alg.sub(&u2c, &alg.pow(t2, 3)))?;
            push("roundtrip/rebuild_x1".into(), "Lemma 3 proof", alg.sub(&x1r, x1));
            let x1rm1 = alg.sub(&x1r, &one);
            for (i, ui) in us.iter().enumerate().skip(2) {
                let xi = alg.add(&alg.mul(&alg.pow(ui, 2), &x1rm1), &one);
                push(format!("roundtrip/rebuild_x{i}"), "Lemma 2 proof", alg.sub(&xi, env.x(i)));
            }
        }
        ChainCheck::Nonzero => {
            // not relations: these values must be nonzero
            for i in 2..=n {
                let ui = env.u(i);
                push(format!("nonzero/u{i}"), "Lemma 2 proof", ui.clone());
                push(format!("nonzero/t{i}^3"), "Lemma 2 proof", alg.pow(env.t(i), 3));
                push(format!("nonzero/u{i}^3-u{i}"), "Lemma 3 proof", alg.sub(&alg.pow(ui, 3), ui));
                push(format!("nonzero/v{i}-1"), "Lemma 5 proof", alg.sub(env.v(i), &one));
            }
            let c2 = cube_minus_one(alg, env.w(2));
            push("nonzero/w2^3-1".into(), "Lemma 5 proof", c2.clone());
            for i in 3..=n {
                let si = env.s(i);
                let value = alg.add(&alg.sub(&alg.int(0), &alg.mul(&alg.pow(si, 2), &c2)), &cube_minus_one(alg, env.w(i)));
                push(format!("nonzero/w{i}^3-1-s{i}^2(w2^3-1)"), "Lemma 5 proof", value);
            }
        }
    }
    Ok(out)
}

fn is_nonzero_check(check: ChainCheck) -> bool {
    check == ChainCheck::Nonzero
}

/// Sampling parameters for modular checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    pub n: usize,
    pub samples: usize,
    pub prime_range: (u64, u64),
    pub seed: u64,
}

/// One evaluation point with the chain evaluated there.
#[derive(Clone, Debug)]
pub struct ChainSample {
    pub point: CurvePoint,
    pub env: ChainEnv<u64>,
}

impl ChainSample {
    pub fn fp(&self) -> PrimeField {
        self.point.fp
    }

    fn witness(&self) -> Value {
        serde_json::to_value(&self.point).expect("point serializes")
    }
}

/// Evaluation points for every sample, each on its own prime. Points where
/// a chain denominator vanishes are resampled; `None` marks a sample whose
/// budget ran out.
pub fn chain_samples(opts: &SampleOptions) -> Vec<Option<ChainSample>> {
    let (lo, hi) = opts.prime_range;
    let primes = distinct_primes(&mut rng_for(opts.seed, "chain/primes"), opts.samples, lo, hi);
    primes
        .par_iter()
        .enumerate()
        .map(|(k, &p)| {
            let fp = fp_with_omega(p).expect("sampled primes are 1 mod 3");
            let mut rng = rng_for(opts.seed, &format!("chain/point/{k}"));
            for _ in 0..RESAMPLE_BUDGET {
                let Some(point) = sample_curve_point(fp, opts.n, &mut rng) else { continue };
                let Ok(env) = build_env(&fp, point.x.clone(), point.y.clone()) else { continue };
                // the round trip divides by further elements
                if relations(&fp, &env, ChainCheck::Roundtrip).is_err() {
                    continue;
                }
                return Some(ChainSample { point, env });
            }
            None
        })
        .collect()
}

/// Heuristic per-sample probability that a nonzero numerator of weighted
/// degree `w` vanishes at a random point of `V(F_p)`: at most `3w` zeros
/// on each curve among about `p` points.
fn per_sample_bound(w: u64, p: u64) -> f64 {
    (3 * w) as f64 / p as f64
}

pub fn degree_bounds(n: usize, check: ChainCheck) -> BTreeMap<String, DegreeBound> {
    let x = vec![DegreeBound { num: 2, den: 0 }; n];
    let y = vec![DegreeBound { num: 1, den: 0 }; n];
    let env = build_env(&DegreeAlgebra, x, y).expect("degree tracking never fails");
    relations(&DegreeAlgebra, &env, check)
        .expect("degree tracking never fails")
        .into_iter()
        .map(|r| (r.name, r.value))
        .collect()
}

pub fn verify_modular(opts: &SampleOptions, checks: &[ChainCheck]) -> Vec<CheckRecord> {
    let samples = chain_samples(opts);
    verify_on_samples(opts, checks, &samples)
}

pub fn verify_on_samples(
    opts: &SampleOptions,
    checks: &[ChainCheck],
    samples: &[Option<ChainSample>],
) -> Vec<CheckRecord> {
    let good: Vec<&ChainSample> = samples.iter().flatten().collect();
    let missing = samples.len() - good.len();
    let p_min = good.iter().map(|s| s.fp().p()).min().unwrap_or(1);
    let mut out = Vec::new();
    for &check in checks {
        let bounds = degree_bounds(opts.n, check);
        let per_point: Vec<Vec<Relation<u64>>> = good
            .iter()
            .map(|s| {
                let fp = s.fp();
                relations(&fp, &s.env, check).expect("sample was screened")
            })
            .collect();
        let names: Vec<(String, &'static str)> = match per_point.first() {
            Some(rs) => rs.iter().map(|r| (r.name.clone(), r.anchor)).collect(),
            None => Vec::new(),
        };
        for (k, (name, anchor)) in names.into_iter().enumerate() {
            let values: Vec<u64> = per_point.iter().map(|rs| rs[k].value).collect();
            let witnesses: Vec<Value> = good.iter().map(|s| s.witness()).collect();
            let w = bounds.get(&name).map_or(0, |b| b.num);
            let (status, summary, failure_bound) = if is_nonzero_check(check) {
                match values.iter().position(|&v| v != 0) {
                    Some(j) => (
                        Status::Verified,
                        format!("nonzero at p = {}", good[j].fp().p()),
                        None,
                    ),
                    None => (Status::Refuted, format!("zero at all {} points", good.len()), None),
                }
            } else {
                match values.iter().position(|&v| v != 0) {
                    Some(j) => (
                        Status::Refuted,
                        format!("nonzero ({}) at p = {}", values[j], good[j].fp().p()),
                        None,
                    ),
                    None => {
                        let bound = per_sample_bound(w, p_min).min(1.0).powi(good.len() as i32);
                        (
                            Status::Verified,
                            format!("zero at {} points", good.len()),
                            Some(bound),
                        )
                    }
                }
            };
            let status = if missing > 0 && status == Status::Verified && !is_nonzero_check(check) {
                Status::Inconclusive
            } else {
                status
            };
            let witnesses = match status {
                Status::Refuted if !is_nonzero_check(check) => {
                    let j = values.iter().position(|&v| v != 0).unwrap();
                    vec![json!({"point": good[j].witness(), "value": values[j]})]
                }
                _ => witnesses,
            };
            out.push(
                CheckRecord::new(name, anchor, Mode::Modular, status)
                    .with_witnesses(witnesses)
                    .with_seed(opts.seed)
                    .with_detail(json!({
                        "summary": summary,
                        "samples": good.len(),
                        "failed_samples": missing,
                        "weighted_degree": w,
                        "failure_bound": failure_bound,
                    })),
            );
        }
    }
    out
}

/// Exact evaluation in the tower over `Q(omega)`.
pub fn verify_exact(n: usize, checks: &[ChainCheck], seed: u64) -> Vec<CheckRecord> {
    let tower = Tower::new(CycloField, n);
    let k = tower.field();
    let x = (1..=n).map(|i| tower.x(i)).collect();
    let y = (1..=n).map(|i| tower.y(i)).collect();
    let env = build_env(k, x, y).expect("chain denominators are nonzero in the tower");
    let invariant: Vec<String> = env
        .named()
        .into_iter()
        .filter(|(_, e)| !tower.is_invariant(e))
        .map(|(name, _)| name)
        .collect();
    let mut out: Vec<CheckRecord> = checks
        .par_iter()
        .flat_map_iter(|&check| {
            let rels = relations(k, &env, check).expect("chain denominators are nonzero in the tower");
            rels.into_iter().map(move |r| (check, r))
        })
        .map(|(check, r)| {
            let zero = k.is_zero(&r.value);
            let mut rng = rng_for(seed, &format!("exact/{}", r.name));
            let ok = if is_nonzero_check(check) { !zero } else { zero };
            let mut rec = CheckRecord::new(r.name.clone(), r.anchor, Mode::Exact, Status::from_bool(ok))
                .with_seed(seed);
            let summary = if zero {
                "normal form is zero".to_string()
            } else {
                format!("normal form has {} terms", r.value.len())
            };
            if !zero {
                // an F_p point where the value is visibly nonzero
                let w = tower.nonzero_witness(&r.value, &mut rng);
                if let Some((pt, v)) = w.point {
                    rec = rec.with_witnesses(vec![json!({"point": pt, "value": v})]);
                }
            }
            rec.with_detail(json!({ "summary": summary, "terms": r.value.len() }))
        })
        .collect();
    out.push(
        CheckRecord::new("invariance/env", "g-action", Mode::Exact, Status::from_bool(invariant.is_empty()))
            .with_detail(json!({
                "summary": if invariant.is_empty() {
                    "every named element is g-invariant".to_string()
                } else {
                    format!("not invariant: {}", invariant.join(", "))
                },
            })),
    );
    out
}

/// A relation perturbed by `coefficient * prod(factors)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mutation {
    pub relation: String,
    pub coefficient: i64,
    pub factors: Vec<String>,
}

impl Mutation {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, relation_names: &[String], element_names: &[String]) -> Self {
        let relation = relation_names[rng.random_range(0..relation_names.len())].clone();
        let k = rng.random_range(1..=3);
        let factors = (0..k)
            .map(|_| element_names[rng.random_range(0..element_names.len())].clone())
            .collect();
        Mutation {
            relation,
            coefficient: rng.random_range(1..=1000),
            factors,
        }
    }

    /// The perturbed relation evaluated on `env`.
    pub fn apply<A: ChainAlgebra>(&self, alg: &A, env: &ChainEnv<A::Elem>, rels: &[Relation<A::Elem>]) -> A::Elem {
        let base = &rels.iter().find(|r| r.name == self.relation).expect("known relation").value;
        let m = self
            .factors
            .iter()
            .fold(alg.int(self.coefficient), |acc, f| alg.mul(&acc, env.get(f).expect("known element")));
        alg.add(base, &m)
    }
}

/// Perturbs the relations of `check` at random and reports how many of
/// the perturbed versions the modular checker refutes.
pub fn mutation_test(
    opts: &SampleOptions,
    check: ChainCheck,
    runs: usize,
    samples: &[Option<ChainSample>],
) -> CheckRecord {
    let good: Vec<&ChainSample> = samples.iter().flatten().collect();
    let Some(first) = good.first() else {
        return CheckRecord::new("mutation", "mutation test", Mode::Modular, Status::Inconclusive);
    };
    let fp0 = first.fp();
    let rel_names: Vec<String> = relations(&fp0, &first.env, check)
        .expect("sample was screened")
        .into_iter()
        .map(|r| r.name)
        .collect();
    let elem_names: Vec<String> = first.env.named().into_iter().map(|(n, _)| n).collect();
    let mut refuted = 0;
    let mut witnesses = Vec::new();
    for run in 0..runs {
        let mut rng = rng_for(opts.seed, &format!("mutation/{run}"));
        let m = Mutation::random(&mut rng, &rel_names, &elem_names);
        let hit = good.iter().find_map(|s| {
            let fp = s.fp();
            let rels = relations(&fp, &s.env, check).expect("sample was screened");
            let v = m.apply(&fp, &s.env, &rels);
            (v != 0).then(|| (s.witness(), v))
        });
        let entry = json!({
            "run": run,
            "relation": m.relation,
            "coefficient": m.coefficient,
            "factors": m.factors,
            "refuted_at": hit.as_ref().map(|(p, v)| json!({"point": p, "value": v})),
        });
        if hit.is_some() {
            refuted += 1;
        }
        witnesses.push(entry);
    }
    // at least 95% of the perturbations must be caught
    let ok = refuted * 20 >= runs * 19;
    CheckRecord::new(
        format!("mutation/{}", check_label(check)),
        "mutation test",
        Mode::Modular,
        Status::from_bool(ok),
    )
    .with_seed(opts.seed)
    .with_witnesses(witnesses)
    .with_detail(json!({
        "summary": format!("{refuted}/{runs} perturbed relations refuted"),
        "refuted": refuted,
        "runs": runs,
    }))
}

pub fn check_label(check: ChainCheck) -> String {
    match check {
        ChainCheck::Lemma(k) => format!("lemma{k}"),
        ChainCheck::Roundtrip => "roundtrip".into(),
        ChainCheck::FiveCurves => "five".into(),
        ChainCheck::Nonzero => "nonzero".into(),
    }
}

/// Perturbed relations tried per check group in modular mode.
pub const MUTATION_RUNS: usize = 20;

/// The checks that apply to `n` curves: the lemma chain for four, the
/// two closing relations for five.
pub fn checks_for(n: usize) -> &'static [ChainCheck] {
    const FIVE: [ChainCheck; 2] = [ChainCheck::FiveCurves, ChainCheck::Nonzero];
    if n >= 5 {
        &FIVE
    } else {
        &ChainCheck::FOUR_CURVES
    }
}

/// Every record of `verify lemmas`: exact normal forms, or modular
/// specializations followed by mutation tests on the same samples.
pub fn lemma_records(config: &RunConfig) -> Vec<CheckRecord> {
    let checks = checks_for(config.n);
    match config.mode {
        Mode::Exact => verify_exact(config.n, checks, config.seed),
        Mode::Modular => {
            let opts = SampleOptions {
                n: config.n,
                samples: config.samples,
                prime_range: config.prime_range,
                seed: config.seed,
            };
            let samples = chain_samples(&opts);
            let mut out = verify_on_samples(&opts, checks, &samples);
            out.extend(
                checks
                    .par_iter()
                    .filter(|&&c| !is_nonzero_check(c))
                    .map(|&c| mutation_test(&opts, c, MUTATION_RUNS, &samples))
                    .collect::<Vec<_>>(),
            );
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_definitions() {
        let tower = Tower::new(CycloField, 4);
        let k = tower.field();
        let env = build_env(k, (1..=4).map(|i| tower.x(i)).collect(), (1..=4).map(|i| tower.y(i)).collect()).unwrap();
        assert!(tower.is_invariant(env.t(2)));
        assert_eq!(Field::mul(k, env.v(2), env.u(2)), k.one());
        assert_eq!(env.w(2), &Field::mul(k, env.t(2), env.v(2)));
        for (_, e) in env.named() {
            assert!(tower.is_invariant(e));
        }
    }

    #[test]
    fn lemma_one_exact() {
        let recs = verify_exact(4, &[ChainCheck::Lemma(1), ChainCheck::Lemma(5)], 1);
        assert!(recs.iter().all(|r| r.status == Status::Verified), "{recs:#?}");
    }

    #[test]
    fn five_curves_modular_and_mutations() {
        let opts = SampleOptions {
            n: 5,
            samples: 20,
            prime_range: (10_000, 1_000_000),
            seed: 3,
        };
        let samples = chain_samples(&opts);
        let recs = verify_on_samples(&opts, &[ChainCheck::FiveCurves, ChainCheck::Nonzero], &samples);
        assert!(recs.iter().all(|r| r.status == Status::Verified), "{recs:#?}");
        let m = mutation_test(&opts, ChainCheck::FiveCurves, 20, &samples);
        assert_eq!(m.status, Status::Verified);
    }

    #[test]
    fn degree_bounds_are_finite() {
        let b = degree_bounds(4, ChainCheck::Lemma(1));
        assert!(b.values().all(|d| d.num > 0));
    }
}
