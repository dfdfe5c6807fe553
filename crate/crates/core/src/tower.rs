//! The function field of a product of the curves `y^6 = x^2 (x - 1)`.
//!
//! Elements live on the basis `y_1^m_1 ... y_n^m_n` with `0 <= m_i <= 5`
//! and flat rational-function coefficients in `x_1..x_n`. Generators are
//! numbered from 1.

use rand::Rng;
use serde::Serialize;

use crate::ext::{BinomialExt, ExtElem};
use crate::fields::{Field, PrimeField, ReduceModP};
use crate::poly::{PolyRing, RatFunc, RatFuncField};
use crate::sampling::{random_prime_1_mod_3, DEFAULT_PRIME_RANGE, RESAMPLE_BUDGET};

pub type TowerElem<E> = ExtElem<RatFunc<E>>;

#[derive(Clone, Debug, PartialEq)]
pub struct Tower<F: Field> {
    n: usize,
    field: BinomialExt<RatFuncField<F>>,
    /// `(-omega)^j` for `j = 0..6`.
    eta_powers: Vec<RatFunc<F::Elem>>,
}

impl<F: Field> Tower<F> {
    pub fn new(base: F, n: usize) -> Self {
        assert!(n >= 1, "the tower needs at least one curve");
        let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
        let ring = PolyRing::new(base, &xs);
        let coeffs = RatFuncField::new(ring.clone());
        let radicands = (0..n)
            .map(|i| {
                let x = ring.var(i);
                coeffs.from_poly(ring.mul(&ring.mul(&x, &x), &ring.sub(&x, &ring.one())))
            })
            .collect();
        let eta = coeffs.neg(&coeffs.omega());
        let eta_powers = (0..6).map(|j| coeffs.pow(&eta, j)).collect();
        Tower {
            n,
            field: BinomialExt::new(coeffs, 6, radicands, &ys),
            eta_powers,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The field itself, for arithmetic.
    pub fn field(&self) -> &BinomialExt<RatFuncField<F>> {
        &self.field
    }

    pub fn coeffs(&self) -> &RatFuncField<F> {
        self.field.base()
    }

    pub fn x(&self, i: usize) -> TowerElem<F::Elem> {
        self.field.embed(self.coeffs().var(i - 1))
    }

    pub fn y(&self, i: usize) -> TowerElem<F::Elem> {
        self.field.gen(i - 1)
    }

    pub fn coeff(&self, c: RatFunc<F::Elem>) -> TowerElem<F::Elem> {
        self.field.embed(c)
    }

    /// The automorphism `y_i -> -omega y_i` applied `k` times.
    pub fn apply_g(&self, a: &TowerElem<F::Elem>, k: i64) -> TowerElem<F::Elem> {
        let k = k.rem_euclid(6) as u32;
        if k == 0 {
            return a.clone();
        }
        self.field.map_terms(a, |e| {
            let m: u32 = e.iter().map(|&x| x as u32).sum();
            self.eta_powers[(k * m % 6) as usize].clone()
        })
    }

    /// True iff every basis monomial has total degree divisible by 6.
    pub fn is_invariant(&self, a: &TowerElem<F::Elem>) -> bool {
        a.terms().all(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>() % 6 == 0)
    }

    pub fn specialize(&self, a: &TowerElem<F::Elem>, pt: &CurvePoint) -> Option<u64>
    where
        F: ReduceModP,
    {
        let fp = &pt.fp;
        let mut acc = 0;
        for (e, c) in a.terms() {
            let mut t = self.coeffs().eval_mod_p(c, fp, &pt.x)?;
            for (i, &m) in e.iter().enumerate() {
                if m > 0 {
                    t = fp.mul(&t, &fp.pow(&pt.y[i], m as u64));
                }
            }
            acc = fp.add(&acc, &t);
        }
        Some(acc)
    }

    /// Decides `a != 0` from the normal form and looks for a point of
    /// `V(F_p)` where `a` is visibly nonzero.
    pub fn nonzero_witness<R: Rng + ?Sized>(&self, a: &TowerElem<F::Elem>, rng: &mut R) -> NonzeroWitness
    where
        F: ReduceModP,
    {
        let nonzero = !self.field.is_zero(a);
        if !nonzero {
            return NonzeroWitness { nonzero, point: None };
        }
        let (lo, hi) = DEFAULT_PRIME_RANGE;
        for _ in 0..RESAMPLE_BUDGET {
            let fp = crate::fields::fp_with_omega(random_prime_1_mod_3(rng, lo, hi)).expect("p = 1 mod 3");
            let Some(pt) = sample_curve_point(fp, self.n, rng) else { continue };
            if let Some(v) = self.specialize(a, &pt) {
                if v != 0 {
                    return NonzeroWitness {
                        nonzero,
                        point: Some((pt, v)),
                    };
                }
            }
        }
        NonzeroWitness { nonzero, point: None }
    }
}

/// A point of `V(F_p)`: `y_i^6 = x_i^2 (x_i - 1)` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvePoint {
    #[serde(rename = "p", serialize_with = "ser_prime")]
    pub fp: PrimeField,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

fn ser_prime<S: serde::Serializer>(fp: &PrimeField, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(fp.p())
}

impl CurvePoint {
    pub fn is_on_curves(&self) -> bool {
        let fp = &self.fp;
        self.x.iter().zip(&self.y).all(|(&x, &y)| {
            let x2 = fp.mul(&x, &x);
            fp.pow(&y, 6) == fp.mul(&x2, &fp.sub(&x, &1))
        })
    }
}

/// Samples `x_i` uniformly outside `{0, 1}` and takes a random sixth root
/// of `x_i^2 (x_i - 1)` when it exists.
pub fn sample_curve_point<R: Rng + ?Sized>(fp: PrimeField, n: usize, rng: &mut R) -> Option<CurvePoint> {
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let mut found = None;
        for _ in 0..RESAMPLE_BUDGET {
            let xi = rng.random_range(2..fp.p());
            let c = fp.mul(&fp.mul(&xi, &xi), &fp.sub(&xi, &1));
            let roots = fp.kth_roots(c, 6);
            if !roots.is_empty() {
                found = Some((xi, roots[rng.random_range(0..roots.len())]));
                break;
            }
        }
        let (xi, yi) = found?;
        x.push(xi);
        y.push(yi);
    }
    Some(CurvePoint { fp, x, y })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NonzeroWitness {
    pub nonzero: bool,
    /// The point and the nonzero value found there.
    pub point: Option<(CurvePoint, u64)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{fp_with_omega, CycloField};
    use crate::sampling::rng_for;

    fn tower() -> Tower<CycloField> {
        Tower::new(CycloField, 4)
    }

    fn c1(t: &Tower<CycloField>) -> TowerElem<crate::fields::CycloRat> {
        let k = t.field();
        let x = t.x(1);
        k.mul(&k.mul(&x, &x), &k.sub(&x, &k.one()))
    }

    #[test]
    fn sixth_power_reduces() {
        let t = tower();
        let k = t.field();
        let y1 = t.y(1);
        assert_eq!(k.mul(&y1, &k.pow(&y1, 5)), c1(&t));
        assert_eq!(k.pow(&k.pow(&y1, 3), 2), c1(&t));
        let y12 = k.mul(&t.y(1), &t.y(2));
        assert_eq!(y12.len(), 1);
        assert_eq!(y12.coeff(&[1, 1, 0, 0]), Some(&t.coeffs().one()));
    }

    #[test]
    fn inverses() {
        let t = tower();
        let k = t.field();
        let y1 = t.y(1);
        let inv = k.inv(&y1).unwrap();
        assert_eq!(inv, k.div(&k.pow(&y1, 5), &c1(&t)).unwrap());
        assert_eq!(k.inv(&t.x(1)).unwrap(), t.coeff(t.coeffs().inv(&t.coeffs().var(0)).unwrap()));
        let t2 = k.div(&t.y(2), &y1).unwrap();
        assert_eq!(k.mul(&k.inv(&t2).unwrap(), &t2), k.one());
        let mixed = k.add(&k.add(&t.y(1), &k.mul(&t.y(2), &t.x(3))), &k.one());
        assert_eq!(k.mul(&k.inv(&mixed).unwrap(), &mixed), k.one());
    }

    #[test]
    fn g_action() {
        let t = tower();
        let k = t.field();
        let y1 = t.y(1);
        let minus_omega = k.neg(&k.omega());
        assert_eq!(t.apply_g(&y1, 1), k.mul(&minus_omega, &y1));
        let t2 = k.div(&t.y(2), &y1).unwrap();
        assert!(t.is_invariant(&t2));
        assert!(!t.is_invariant(&y1));
        assert!(t.is_invariant(&t.x(1)));
        let a = k.add(&t2, &k.mul(&y1, &t.y(3)));
        assert_eq!(t.apply_g(&a, 6), a);
        assert_eq!(t.is_invariant(&a), t.apply_g(&a, 1) == a);
    }

    #[test]
    fn witnesses_live_on_the_curves() {
        let t = tower();
        let k = t.field();
        let mut rng = rng_for(7, "tower");
        let u = k.mul(&t.x(1), &k.pow(&k.div(&t.y(2), &t.y(1)).unwrap(), 3));
        let u = k.div(&u, &t.x(2)).unwrap();
        let w = t.nonzero_witness(&k.sub(&k.pow(&u, 3), &u), &mut rng);
        assert!(w.nonzero);
        let (pt, v) = w.point.unwrap();
        assert!(pt.is_on_curves());
        assert_ne!(v, 0);
        let z = t.nonzero_witness(&k.sub(&u, &u), &mut rng);
        assert!(!z.nonzero && z.point.is_none());
        let fp = fp_with_omega(10009).unwrap();
        assert!(sample_curve_point(fp, 4, &mut rng).unwrap().is_on_curves());
    }
}
